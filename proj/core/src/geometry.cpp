#include "rharmonic/geometry.hpp"

#include <algorithm>
#include <stdexcept>

namespace rharmonic {

Complex ScalarField::at(const Point& p) const {
  return evaluate(coordinate_jets(p, 0)).value();
}

std::vector<Jet> coordinate_jets(const Point& p, int order) {
  std::vector<Jet> jets;
  jets.reserve(p.size());
  const int dim = static_cast<int>(p.size());
  for (int i = 0; i < dim; ++i)
    jets.push_back(Jet::variable(dim, order, i, p[i]));
  return jets;
}

namespace {

std::vector<Jet> truncate_all(std::span<const Jet> jets, int order) {
  std::vector<Jet> out;
  out.reserve(jets.size());
  for (const auto& j : jets) out.push_back(j.truncated(order));
  return out;
}

}  // namespace

MetricChart upper_half_chart(int n) {
  if (n < 2) throw std::invalid_argument("upper_half_chart: n must be >= 2");
  MetricChart chart;
  chart.dim = n;
  chart.inverse_metric = [n](std::span<const Jet> coords) {
    const Jet t2 = coords[0] * coords[0];
    std::vector<Jet> g(static_cast<std::size_t>(n) * n,
                       Jet(n, coords[0].order()));
    for (int i = 0; i < n; ++i) g[static_cast<std::size_t>(i) * n + i] = t2;
    return g;
  };
  chart.volume_density = [n](std::span<const Jet> coords) {
    return jet_pow(coords[0], -static_cast<double>(n));
  };
  chart.admissible = [](const Point& p) { return p[0] > 0.0; };
  return chart;
}

MetricChart euclidean_chart(int m) {
  if (m < 1) throw std::invalid_argument("euclidean_chart: m must be >= 1");
  MetricChart chart;
  chart.dim = m;
  chart.inverse_metric = [m](std::span<const Jet> coords) {
    const int order = coords[0].order();
    std::vector<Jet> g(static_cast<std::size_t>(m) * m, Jet(m, order));
    for (int i = 0; i < m; ++i)
      g[static_cast<std::size_t>(i) * m + i] = Jet::constant(m, order, 1.0);
    return g;
  };
  chart.volume_density = [m](std::span<const Jet> coords) {
    return Jet::constant(m, coords[0].order(), 1.0);
  };
  chart.admissible = [](const Point&) { return true; };
  return chart;
}

Jet apply_tension(const MetricChart& chart, std::span<const Jet> coords,
                  const Jet& field_jet) {
  const int p = field_jet.order();
  if (p < 2)
    throw std::invalid_argument("apply_tension: jet order too small");
  const int dim = chart.dim;

  // tau(f) = (1/rho) sum_j d_j( sum_i g^{ij} rho d_i f ),  rho = sqrt|g|.
  // Jet arithmetic differentiates the inner products exactly.
  const auto inner_coords = truncate_all(coords, p - 1);
  const Jet rho = chart.volume_density(inner_coords);
  const auto ginv = chart.inverse_metric(inner_coords);

  std::vector<Jet> df;
  df.reserve(dim);
  for (int i = 0; i < dim; ++i) df.push_back(field_jet.derivative(i));

  Jet sum(dim, p - 2);
  for (int j = 0; j < dim; ++j) {
    Jet flux_j(dim, p - 1);
    for (int i = 0; i < dim; ++i)
      flux_j += ginv[static_cast<std::size_t>(i) * dim + j] * rho * df[i];
    sum += flux_j.derivative(j);
  }
  return sum * jet_recip(rho.truncated(p - 2));
}

Complex laplace_beltrami(const MetricChart& chart, const ScalarField& f,
                         const Point& p) {
  if (!chart.admissible(p))
    throw std::domain_error("laplace_beltrami: point outside chart domain");
  const auto coords = coordinate_jets(p, 2);
  return apply_tension(chart, coords, f.evaluate(coords)).value();
}

TensionSequence iterated_tension(const MetricChart& chart, const ScalarField& f,
                                 const Point& p, int r) {
  if (r < 1) throw std::invalid_argument("iterated_tension: r must be >= 1");
  if (!chart.admissible(p))
    throw std::domain_error("iterated_tension: point outside chart domain");
  const auto coords = coordinate_jets(p, 2 * r);
  Jet field_jet = f.evaluate(coords);

  TensionSequence seq;
  // S = largest intermediate magnitude: high-order jet coefficients bound the
  // cancellation the iteration can suffer, so residuals are judged against
  // them rather than against the (possibly tiny) final values.
  seq.scale = field_jet.max_abs_coeff();
  for (int k = 1; k <= r; ++k) {
    const auto level_coords = truncate_all(coords, field_jet.order());
    field_jet = apply_tension(chart, level_coords, field_jet);
    seq.scale = std::max(seq.scale, field_jet.max_abs_coeff());
    seq.taus.push_back(field_jet.value());
  }
  return seq;
}

Jet apply_dalembert(const Jet& field_jet) {
  if (field_jet.order() < 2)
    throw std::invalid_argument("apply_dalembert: jet order too small");
  Jet sum = -(field_jet.derivative(0).derivative(0));
  for (int k = 1; k < field_jet.dim(); ++k)
    sum += field_jet.derivative(k).derivative(k);
  return sum;
}

Complex dalembert(const ScalarField& f, const Point& p) {
  const auto coords = coordinate_jets(p, 2);
  return apply_dalembert(f.evaluate(coords)).value();
}

Jet apply_flat_laplacian(const Jet& field_jet) {
  if (field_jet.order() < 2)
    throw std::invalid_argument("apply_flat_laplacian: jet order too small");
  Jet sum = field_jet.derivative(0).derivative(0);
  for (int k = 1; k < field_jet.dim(); ++k)
    sum += field_jet.derivative(k).derivative(k);
  return sum;
}

}  // namespace rharmonic
