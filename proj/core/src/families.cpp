#include "rharmonic/families.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace rharmonic {

namespace {

constexpr double kOnSurfaceTol = 1e-10;

using MonomialMap = HarmonicSeed::MonomialMap;

/// Coefficientwise Euclidean Laplacian of a monomial map.
MonomialMap laplacian_poly(const MonomialMap& poly, int vars) {
  MonomialMap out;
  for (const auto& [mono, c] : poly) {
    for (int i = 0; i < vars; ++i) {
      const int e = mono[i];
      if (e < 2) continue;
      auto lower = mono;
      lower[i] -= 2;
      auto [it, inserted] =
          out.emplace(lower, c * static_cast<double>(e * (e - 1)));
      if (!inserted) it->second += c * static_cast<double>(e * (e - 1));
      if (it->second == 0.0) out.erase(it);
    }
  }
  return out;
}

Jet int_power(const Jet& base, int e) {
  Jet out = Jet::constant(base.dim(), base.order(), 1.0);
  for (int i = 0; i < e; ++i) out = out * base;
  return out;
}

}  // namespace

HarmonicSeed::HarmonicSeed(std::string id, int vars, MonomialMap poly)
    : id_(std::move(id)), vars_(vars), poly_(std::move(poly)) {
  if (vars_ < 1) throw std::invalid_argument("HarmonicSeed: vars must be >= 1");
  bool non_constant = false;
  for (auto it = poly_.begin(); it != poly_.end();) {
    if (static_cast<int>(it->first.size()) != vars_)
      throw std::invalid_argument("HarmonicSeed: monomial arity mismatch");
    if (it->second == 0.0) {
      it = poly_.erase(it);
      continue;
    }
    if (total_degree(it->first) > 0) non_constant = true;
    ++it;
  }
  if (!non_constant)
    throw std::invalid_argument("HarmonicSeed: polynomial is constant");
  if (!laplacian_poly(poly_, vars_).empty())
    throw std::invalid_argument("HarmonicSeed: polynomial is not harmonic");
}

Complex HarmonicSeed::at(const std::vector<Complex>& x) const {
  if (static_cast<int>(x.size()) != vars_)
    throw std::invalid_argument("HarmonicSeed::at: arity mismatch");
  Complex sum = 0.0;
  for (const auto& [mono, c] : poly_) {
    Complex v = c;
    for (int i = 0; i < vars_; ++i)
      for (int e = 0; e < mono[i]; ++e) v *= x[i];
    sum += v;
  }
  return sum;
}

Jet HarmonicSeed::evaluate(std::span<const Jet> x) const {
  if (static_cast<int>(x.size()) != vars_)
    throw std::invalid_argument("HarmonicSeed::evaluate: arity mismatch");
  Jet sum(x[0].dim(), x[0].order());
  for (const auto& [mono, c] : poly_) {
    Jet v = Jet::constant(x[0].dim(), x[0].order(), c);
    for (int i = 0; i < vars_; ++i)
      if (mono[i] > 0) v = v * int_power(x[i], mono[i]);
    sum += v;
  }
  return sum;
}

std::string HarmonicSeed::render() const {
  std::string out;
  for (const auto& [mono, c] : poly_) {
    if (!out.empty()) out += " + ";
    char buf[64];
    if (c.imag() == 0.0)
      std::snprintf(buf, sizeof(buf), "%g", c.real());
    else
      std::snprintf(buf, sizeof(buf), "(%g%+gi)", c.real(), c.imag());
    out += buf;
    for (std::size_t i = 0; i < mono.size(); ++i) {
      if (mono[i] == 0) continue;
      out += "*x" + std::to_string(i + 1);
      if (mono[i] > 1) out += "^" + std::to_string(mono[i]);
    }
  }
  return out.empty() ? "0" : out;
}

std::vector<HarmonicSeed> seed_catalog(int n) {
  if (n < 2) throw std::invalid_argument("seed_catalog: n must be >= 2");
  const int vars = n - 1;
  std::vector<HarmonicSeed> seeds;

  for (int i = 0; i < vars; ++i) {
    MonomialMap poly;
    std::vector<int> mono(vars, 0);
    mono[i] = 1;
    poly.emplace(mono, 1.0);
    seeds.emplace_back("coord:" + std::to_string(i + 1), vars, std::move(poly));
  }

  if (vars >= 2) {
    {
      MonomialMap poly;
      std::vector<int> mono(vars, 0);
      mono[0] = 1;
      mono[1] = 1;
      poly.emplace(mono, 1.0);
      seeds.emplace_back("prod:12", vars, std::move(poly));
    }
    // Re/Im((x1 + i x2)^k): binomial expansion, i^j picks the component.
    for (int k = 2; k <= 4; ++k) {
      MonomialMap re_poly, im_poly;
      double binom = 1.0;
      for (int j = 0; j <= k; ++j) {
        std::vector<int> mono(vars, 0);
        mono[0] = k - j;
        mono[1] = j;
        const Complex ij = std::pow(Complex{0.0, 1.0}, j);
        const double re = binom * std::round(ij.real());
        const double im = binom * std::round(ij.imag());
        if (re != 0.0) re_poly.emplace(mono, re);
        if (im != 0.0) im_poly.emplace(mono, im);
        binom = binom * (k - j) / (j + 1);
      }
      seeds.emplace_back("re_zk:" + std::to_string(k), vars, std::move(re_poly));
      seeds.emplace_back("im_zk:" + std::to_string(k), vars, std::move(im_poly));
    }
  }
  return seeds;
}

HarmonicSeed seed_by_id(int n, const std::string& id) {
  for (auto& s : seed_catalog(n))
    if (s.id() == id) return s;
  throw std::invalid_argument("seed_by_id: unknown seed id '" + id + "'");
}

void FamilySpec::validate() const {
  if (n < 2) throw std::invalid_argument("FamilySpec: n must be >= 2");
  if (r < 1) throw std::invalid_argument("FamilySpec: r must be >= 1");
  if (a == 0.0 && b == 0.0)
    throw std::invalid_argument("FamilySpec: (a, b) must be nonzero");
  if (seed.vars() != n - 1)
    throw std::invalid_argument("FamilySpec: seed arity must be n - 1");
}

ScalarField upper_half_field(const FamilySpec& spec) {
  spec.validate();
  const LogPolynomial pr = spec.radial();
  const HarmonicSeed seed = spec.seed;
  ScalarField f;
  f.dim = spec.n;
  f.evaluate = [pr, seed](std::span<const Jet> coords) {
    const Complex t0 = coords[0].value();
    if (t0.imag() == 0.0 && t0.real() <= 0.0)
      throw std::domain_error("upper_half_field: t <= 0");
    return pr.evaluate_jet(coords[0]) *
           seed.evaluate(coords.subspan(1));
  };
  return f;
}

double lorentz_product(const Point& x, const Point& y) {
  if (x.size() != y.size() || x.empty())
    throw std::invalid_argument("lorentz_product: size mismatch");
  double s = -x[0] * y[0];
  for (std::size_t k = 1; k < x.size(); ++k) s += x[k] * y[k];
  return s;
}

Jet lorentz_product_jet(std::span<const Jet> y) {
  Jet s = -(y[0] * y[0]);
  for (std::size_t k = 1; k < y.size(); ++k) s += y[k] * y[k];
  return s;
}

Point psi_isometry(const Point& y) {
  if (std::abs(lorentz_product(y, y) + 1.0) > kOnSurfaceTol)
    throw std::domain_error("psi_isometry: point not on the hyperboloid");
  if (y[0] <= 0.0) throw std::domain_error("psi_isometry: y0 must be positive");
  const double denom = y[0] + y[1];
  if (denom == 0.0) throw std::domain_error("psi_isometry: y0 + y1 vanishes");
  Point out(y.size() - 1);
  out[0] = 2.0 / denom;
  for (std::size_t j = 2; j < y.size(); ++j) out[j - 1] = 2.0 * y[j] / denom;
  return out;
}

std::vector<Jet> psi_inverse_jets(std::span<const Jet> chart_coords) {
  // From t = 2/(y0+y1), x_j = t y_{j+1} and the unit Lorentz norm:
  //   y0 + y1 = 2/t,   y0 - y1 = (t^2 + |x|^2) / (2t).
  const Jet& t = chart_coords[0];
  Jet x2(t.dim(), t.order());
  for (std::size_t j = 1; j < chart_coords.size(); ++j)
    x2 += chart_coords[j] * chart_coords[j];
  const Jet inv_t = jet_recip(t);
  const Jet s = inv_t * Complex{2.0, 0.0};
  const Jet d = (t * t + x2) * inv_t * Complex{0.5, 0.0};
  std::vector<Jet> y;
  y.reserve(chart_coords.size() + 1);
  y.push_back((s + d) * Complex{0.5, 0.0});
  y.push_back((s - d) * Complex{0.5, 0.0});
  for (std::size_t j = 1; j < chart_coords.size(); ++j)
    y.push_back(chart_coords[j] * inv_t);
  return y;
}

namespace {

void require_light_cone(const Point& y) {
  if (lorentz_product(y, y) >= 0.0 || y[0] <= 0.0)
    throw std::domain_error("point outside the light-cone set U^{n+1}");
  if (y[0] + y[1] == 0.0) throw std::domain_error("y0 + y1 vanishes");
}

}  // namespace

Point phi_map(const Point& y) {
  require_light_cone(y);
  const double q = -lorentz_product(y, y);
  const double denom = y[0] + y[1];
  Point out(y.size() - 1);
  out[0] = 2.0 * std::sqrt(q) / denom;
  for (std::size_t j = 2; j < y.size(); ++j) out[j - 1] = 2.0 * y[j] / denom;
  return out;
}

std::vector<Jet> phi_map_jets(std::span<const Jet> y) {
  const Jet q = -lorentz_product_jet(y);
  const Complex q0 = q.value();
  if (q0.imag() == 0.0 && q0.real() <= 0.0)
    throw std::domain_error("phi_map: point outside the light cone");
  const Jet inv_denom = jet_recip(y[0] + y[1]);
  std::vector<Jet> out;
  out.reserve(y.size() - 1);
  out.push_back(jet_sqrt(q) * inv_denom * Complex{2.0, 0.0});
  for (std::size_t j = 2; j < y.size(); ++j)
    out.push_back(y[j] * inv_denom * Complex{2.0, 0.0});
  return out;
}

ScalarField hyperboloid_field(const FamilySpec& spec) {
  spec.validate();
  const LogPolynomial pr = spec.radial();
  const HarmonicSeed seed = spec.seed;
  ScalarField f;
  f.dim = spec.n + 1;
  f.evaluate = [pr, seed](std::span<const Jet> y) {
    const auto chart = phi_map_jets(y);
    return pr.evaluate_jet(chart[0]) *
           seed.evaluate(std::span<const Jet>(chart).subspan(1));
  };
  return f;
}

ScalarField sphere_field(const FamilySpec& spec) {
  spec.validate();
  const LogPolynomial pr = spec.radial();
  const HarmonicSeed seed = spec.seed;
  ScalarField f;
  f.dim = spec.n + 1;
  // Coordinates are (y1, ..., y_{n+1}) at indices 0..n.
  f.evaluate = [pr, seed](std::span<const Jet> y) {
    const Jet z = y[1] + Complex{0.0, 1.0} * y[0];
    if (z.value() == 0.0)
      throw std::domain_error("sphere_field: y2 + i y1 vanishes");
    const Jet inv_z = jet_recip(z);
    Jet norm2(y[0].dim(), y[0].order());
    for (const auto& yk : y) norm2 += yk * yk;
    if (norm2.value() == 0.0)
      throw std::domain_error("sphere_field: zero ambient point");
    const Jet radial_arg = jet_sqrt(norm2) * inv_z * Complex{2.0, 0.0};
    std::vector<Jet> seed_args;
    seed_args.reserve(y.size() - 2);
    for (std::size_t j = 2; j < y.size(); ++j)
      seed_args.push_back(y[j] * inv_z * Complex{2.0, 0.0});
    return pr.evaluate_jet(radial_arg) * seed.evaluate(seed_args);
  };
  return f;
}

}  // namespace rharmonic
