#pragma once

#include <functional>
#include <span>
#include <vector>

#include "rharmonic/jet.hpp"

namespace rharmonic {

/// A point in chart (or ambient) coordinates.
using Point = std::vector<double>;

/// Complex-valued scalar field, evaluable on jets so that arbitrary-order
/// derivatives at a point are available through the jet coefficients.
/// `evaluate` must preserve dim and order and must map constant jets to a
/// constant jet.
struct ScalarField {
  int dim;
  std::function<Jet(std::span<const Jet>)> evaluate;

  Complex at(const Point& p) const;
};

/// Coordinate chart with inverse metric and volume density evaluable on jets.
/// The flat Lorentzian ambient is handled by `dalembert` directly, not by a
/// chart of this type.
struct MetricChart {
  int dim;
  /// Row-major dim x dim matrix of g^{ij} jets.
  std::function<std::vector<Jet>(std::span<const Jet>)> inverse_metric;
  /// sqrt(|g|), strictly positive on the chart domain.
  std::function<Jet(std::span<const Jet>)> volume_density;
  std::function<bool(const Point&)> admissible;
};

/// Upper-half space model of H^n: coordinates (t, x_1, ..., x_{n-1}), t > 0,
/// metric (dt^2 + sum dx_i^2) / t^2.
MetricChart upper_half_chart(int n);

/// Flat R^m with the identity metric.
MetricChart euclidean_chart(int m);

/// Coordinate jets of the chart variables at `p`, each of the given order.
std::vector<Jet> coordinate_jets(const Point& p, int order);

/// One application of the Laplace-Beltrami operator at the jet level:
/// takes the field jet F (order p) together with the coordinate jets it was
/// evaluated on, returns the jet of tau(f) at order p - 2.
Jet apply_tension(const MetricChart& chart, std::span<const Jet> coords,
                  const Jet& field_jet);

/// tau(f) at a point.
Complex laplace_beltrami(const MetricChart& chart, const ScalarField& f,
                         const Point& p);

struct TensionSequence {
  std::vector<Complex> taus;  // tau^1 .. tau^r at the point
  double scale;               // largest intermediate jet coefficient magnitude
};

/// [tau^1(f), ..., tau^r(f)] at `p`, computed by repeated jet-level
/// application of tau. Requires jets of order 2r, consumed two per step.
TensionSequence iterated_tension(const MetricChart& chart, const ScalarField& f,
                                 const Point& p, int r);

/// Flat wave operator on Minkowski ambient coordinates (y_0 time-like):
/// -d^2/dy_0^2 + sum_k d^2/dy_k^2, at the jet level (order drops by 2).
Jet apply_dalembert(const Jet& field_jet);

Complex dalembert(const ScalarField& f, const Point& p);

/// Flat Laplacian sum_k d^2/dy_k^2 at the jet level (order drops by 2).
Jet apply_flat_laplacian(const Jet& field_jet);

}  // namespace rharmonic
