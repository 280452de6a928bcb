#pragma once

#include <map>
#include <string>
#include <vector>

#include "rharmonic/geometry.hpp"
#include "rharmonic/log_poly.hpp"

namespace rharmonic {

/// Complex-coefficient polynomial in `vars` real variables with vanishing
/// Euclidean Laplacian; the multiplier h of every product field. Being a
/// polynomial, its complex-analytic extension is literal substitution of
/// complex (or jet) arguments.
class HarmonicSeed {
 public:
  using MonomialMap = std::map<std::vector<int>, Complex>;

  /// Throws unless the polynomial is non-constant and exactly harmonic.
  HarmonicSeed(std::string id, int vars, MonomialMap poly);

  const std::string& id() const { return id_; }
  int vars() const { return vars_; }
  const MonomialMap& poly() const { return poly_; }

  Complex at(const std::vector<Complex>& x) const;
  Jet evaluate(std::span<const Jet> x) const;

  std::string render() const;

 private:
  std::string id_;
  int vars_;
  MonomialMap poly_;
};

/// Catalog of harmonic seeds on R^{n-1}, addressable by stable ids:
/// "coord:i" for each coordinate, and when n-1 >= 2 also "prod:12" (x1 x2)
/// and "re_zk:k" / "im_zk:k" for Re/Im((x1 + i x2)^k), k = 2..4.
std::vector<HarmonicSeed> seed_catalog(int n);

/// Lookup by id; throws if absent from seed_catalog(n).
HarmonicSeed seed_by_id(int n, const std::string& id);

/// Selects one member of the function families: dimension n, order r,
/// radial coefficients (a, b) with (a, b) != (0, 0), and a harmonic seed
/// on R^{n-1}.
struct FamilySpec {
  int n;
  int r;
  Complex a;
  Complex b;
  HarmonicSeed seed;

  void validate() const;
  LogPolynomial radial() const { return build_pr(n, r, a, b); }
};

/// f(t, x) = p_r(t) h(x) on the upper-half space chart.
ScalarField upper_half_field(const FamilySpec& spec);

/// Isometry from the hyperboloid model to the upper-half space:
/// y -> 2 (1/(y0+y1), y2/(y0+y1), ..., yn/(y0+y1)).
Point psi_isometry(const Point& y);

/// Inverse of psi_isometry, as jets, landing on the hyperboloid.
std::vector<Jet> psi_inverse_jets(std::span<const Jet> chart_coords);

/// Composition Psi . (radial projection): defined on the light-cone interior
/// U^{n+1}, scale-invariant along rays.
Point phi_map(const Point& y);
std::vector<Jet> phi_map_jets(std::span<const Jet> y);

/// Ambient representative of the hyperboloid-model field: the upper-half
/// field pulled back through Phi. Defined on U^{n+1} minus {y0 + y1 = 0}.
ScalarField hyperboloid_field(const FamilySpec& spec);

/// Ambient representative of the sphere-model field on R^{n+1}:
/// p_r(2|y|/(y2 + i y1)) h(2 y3/(y2 + i y1), ...), with the seed evaluated
/// at complex arguments. Admissibility requires y2 + i y1 != 0 and the
/// radial argument off the principal branch cut.
ScalarField sphere_field(const FamilySpec& spec);

/// Minkowski product -x0 y0 + sum_{k>=1} xk yk.
double lorentz_product(const Point& x, const Point& y);
Jet lorentz_product_jet(std::span<const Jet> y);

}  // namespace rharmonic
