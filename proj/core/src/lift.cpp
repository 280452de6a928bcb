#include "rharmonic/lift.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <stdexcept>

namespace rharmonic {

LiftReport make_lift_report(Point point, Complex lhs, Complex rhs,
                            double scale) {
  LiftReport rep;
  rep.point = std::move(point);
  rep.lhs = lhs;
  rep.rhs = rhs;
  rep.scale = scale;
  rep.rel_residual = std::abs(lhs - rhs) / std::max(scale, 1.0);
  return rep;
}

std::string LiftReport::to_json() const {
  std::string pts;
  char buf[128];
  for (double c : point) {
    if (!pts.empty()) pts += ",";
    std::snprintf(buf, sizeof(buf), "%.17g", c);
    pts += buf;
  }
  std::string out = "{\"point\":[" + pts + "]";
  auto emit = [&](const char* name, Complex v) {
    std::snprintf(buf, sizeof(buf), ",\"%s\":[%.17g,%.17g]", name, v.real(),
                  v.imag());
    out += buf;
  };
  emit("lhs", lhs);
  emit("rhs", rhs);
  std::snprintf(buf, sizeof(buf), ",\"scale\":%.17g,\"rel_residual\":%.17g}",
                scale, rel_residual);
  out += buf;
  return out;
}

Point project_hyperbolic(const Point& y) {
  const double q = -lorentz_product(y, y);
  if (q <= 0.0 || y[0] <= 0.0)
    throw std::domain_error("project_hyperbolic: point outside U^{n+1}");
  const double s = 1.0 / std::sqrt(q);
  Point out(y.size());
  for (std::size_t k = 0; k < y.size(); ++k) out[k] = y[k] * s;
  return out;
}

std::vector<Jet> project_hyperbolic_jets(std::span<const Jet> y) {
  const Jet q = -lorentz_product_jet(y);
  const Complex q0 = q.value();
  if (q0.imag() == 0.0 && q0.real() <= 0.0)
    throw std::domain_error("project_hyperbolic: point outside U^{n+1}");
  const Jet s = jet_pow(q, -0.5);
  std::vector<Jet> out;
  out.reserve(y.size());
  for (const auto& yk : y) out.push_back(yk * s);
  return out;
}

Point project_sphere(const Point& y) {
  double n2 = 0.0;
  for (double c : y) n2 += c * c;
  if (n2 == 0.0) throw std::domain_error("project_sphere: zero vector");
  const double s = 1.0 / std::sqrt(n2);
  Point out(y.size());
  for (std::size_t k = 0; k < y.size(); ++k) out[k] = y[k] * s;
  return out;
}

std::vector<Jet> project_sphere_jets(std::span<const Jet> y) {
  Jet n2(y[0].dim(), y[0].order());
  for (const auto& yk : y) n2 += yk * yk;
  if (n2.value() == 0.0)
    throw std::domain_error("project_sphere: zero vector");
  const Jet s = jet_pow(n2, -0.5);
  std::vector<Jet> out;
  out.reserve(y.size());
  for (const auto& yk : y) out.push_back(yk * s);
  return out;
}

namespace {

/// Shared weighted-operator recursion: T_0 = f_hat, T_k = w * Op(T_{k-1}),
/// with w and Op supplied per model. Each step consumes two jet orders.
template <typename WeightFn, typename OpFn>
std::vector<Complex> weighted_recursion(const ScalarField& f_hat,
                                        const Point& y, int r, double* scale,
                                        WeightFn&& weight, OpFn&& op) {
  if (r < 1) throw std::invalid_argument("lift recursion: r must be >= 1");
  const auto coords = coordinate_jets(y, 2 * r);
  Jet t = f_hat.evaluate(coords);
  // Largest intermediate magnitude, jet coefficients included: see the scale
  // note in iterated_tension.
  double s = t.max_abs_coeff();
  std::vector<Complex> out;
  out.reserve(r);
  for (int k = 1; k <= r; ++k) {
    Jet applied = op(t);
    std::vector<Jet> level;
    level.reserve(coords.size());
    for (const auto& c : coords) level.push_back(c.truncated(applied.order()));
    t = weight(level) * applied;
    s = std::max(s, t.max_abs_coeff());
    out.push_back(t.value());
  }
  if (scale) *scale = s;
  return out;
}

}  // namespace

std::vector<Complex> ambient_tension_hyperbolic(const ScalarField& f_hat,
                                                const Point& y, int r,
                                                double* scale) {
  if (lorentz_product(y, y) >= 0.0 || y[0] <= 0.0)
    throw std::domain_error("ambient_tension_hyperbolic: point outside U^{n+1}");
  return weighted_recursion(
      f_hat, y, r, scale,
      [](std::span<const Jet> level) { return -lorentz_product_jet(level); },
      [](const Jet& t) { return apply_dalembert(t); });
}

std::vector<Complex> ambient_tension_sphere(const ScalarField& f_hat,
                                            const Point& y, int r,
                                            double* scale) {
  return weighted_recursion(
      f_hat, y, r, scale,
      [](std::span<const Jet> level) {
        Jet n2(level[0].dim(), level[0].order());
        for (const auto& yk : level) n2 += yk * yk;
        return n2;
      },
      [](const Jet& t) { return apply_flat_laplacian(t); });
}

LiftSequence lift_sequence_hyperbolic(const ScalarField& f_hat, int n,
                                      const Point& y, int r) {
  if (static_cast<int>(y.size()) != n + 1)
    throw std::invalid_argument("lift_sequence_hyperbolic: bad ambient dim");
  LiftSequence seq;
  double ambient_scale = 0.0;
  seq.rhs = ambient_tension_hyperbolic(f_hat, y, r, &ambient_scale);

  // Intrinsic side: transport f_hat to the upper-half model through the
  // inverse of Psi (which lands on the hyperboloid, where f_hat restricts to
  // the function under test) and iterate the chart Laplace-Beltrami operator.
  ScalarField transported;
  transported.dim = n;
  transported.evaluate = [&f_hat](std::span<const Jet> chart_coords) {
    const auto ambient = psi_inverse_jets(chart_coords);
    return f_hat.evaluate(ambient);
  };
  const Point chart_point = psi_isometry(project_hyperbolic(y));
  const TensionSequence intrinsic =
      iterated_tension(upper_half_chart(n), transported, chart_point, r);
  seq.lhs = intrinsic.taus;
  seq.scale = std::max(ambient_scale, intrinsic.scale);
  return seq;
}

LiftReport check_lift_hyperbolic(const ScalarField& f_hat, int n,
                                 const Point& y, int r) {
  const LiftSequence seq = lift_sequence_hyperbolic(f_hat, n, y, r);
  return make_lift_report(y, seq.lhs.back(), seq.rhs.back(), seq.scale);
}

LiftReport check_lift_sphere(const ScalarField& f_hat, const Point& y, int r) {
  double scale = 0.0;
  const auto rhs = ambient_tension_sphere(f_hat, y, r, &scale);
  return make_lift_report(y, Complex{0.0, 0.0}, rhs.back(), scale);
}

ScalarField pullback_through_sphere_projection(const ScalarField& f_ambient) {
  ScalarField out;
  out.dim = f_ambient.dim;
  out.evaluate = [f_ambient](std::span<const Jet> y) {
    return f_ambient.evaluate(project_sphere_jets(y));
  };
  return out;
}

ScalarField pullback_through_hyperbolic_projection(
    const ScalarField& f_ambient) {
  ScalarField out;
  out.dim = f_ambient.dim;
  out.evaluate = [f_ambient](std::span<const Jet> y) {
    return f_ambient.evaluate(project_hyperbolic_jets(y));
  };
  return out;
}

}  // namespace rharmonic
