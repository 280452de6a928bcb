#pragma once

#include <vector>

#include "rharmonic/families.hpp"
#include "rharmonic/geometry.hpp"

namespace rharmonic {

/// One instance of a lift identity at an ambient point: intrinsic side,
/// ambient side, and the residual relative to the largest intermediate
/// magnitude.
struct LiftReport {
  Point point;
  Complex lhs;
  Complex rhs;
  double scale;
  double rel_residual;

  std::string to_json() const;
};

LiftReport make_lift_report(Point point, Complex lhs, Complex rhs,
                            double scale);

/// Radial projection onto the hyperboloid: y / sqrt(-(y,y)_L).
/// Requires (y,y)_L < 0 and y0 > 0.
Point project_hyperbolic(const Point& y);
std::vector<Jet> project_hyperbolic_jets(std::span<const Jet> y);

/// Radial projection onto the unit sphere: y / |y|. Requires y != 0.
Point project_sphere(const Point& y);
std::vector<Jet> project_sphere_jets(std::span<const Jet> y);

struct LiftSequence {
  std::vector<Complex> lhs;  // intrinsic tau^k, k = 1..r (when computable)
  std::vector<Complex> rhs;  // ambient recursive expression, k = 1..r
  double scale;
};

/// Ambient side of the hyperboloid lift identity: starting from the ambient
/// representative f_hat, repeatedly multiply by the weight -(y,y)_L and apply
/// the d'Alembert operator. Entry k approximates tau^k(f) at the projected
/// point.
std::vector<Complex> ambient_tension_hyperbolic(const ScalarField& f_hat,
                                                const Point& y, int r,
                                                double* scale = nullptr);

/// Sphere counterpart with weight |y|^2 and the flat Laplacian.
std::vector<Complex> ambient_tension_sphere(const ScalarField& f_hat,
                                            const Point& y, int r,
                                            double* scale = nullptr);

/// Both sides of the hyperboloid lift identity for k = 1..r. The intrinsic
/// side transports f_hat to the upper-half model through the inverse of Psi
/// and iterates the Laplace-Beltrami operator there; the ambient side is the
/// weighted d'Alembert recursion. f_hat must be an ambient field on M^{n+1}
/// whose restriction to the hyperboloid is the function under test.
LiftSequence lift_sequence_hyperbolic(const ScalarField& f_hat, int n,
                                      const Point& y, int r);

LiftReport check_lift_hyperbolic(const ScalarField& f_hat, int n,
                                 const Point& y, int r);

/// Sphere check: no independent intrinsic side is available without
/// spherical coordinates, so the report certifies the ambient recursion
/// against zero (lhs = 0 is the r-harmonicity claim under test).
LiftReport check_lift_sphere(const ScalarField& f_hat, const Point& y, int r);

/// Degree-0 homogeneous ambient representative f . project of a field given
/// on ambient coordinates (used for eigenfunction cross-checks).
ScalarField pullback_through_sphere_projection(const ScalarField& f_ambient);
ScalarField pullback_through_hyperbolic_projection(const ScalarField& f_ambient);

}  // namespace rharmonic
