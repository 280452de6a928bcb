#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "rharmonic/families.hpp"
#include "rharmonic/geometry.hpp"
#include "rharmonic/lift.hpp"

namespace rharmonic {

enum class Space { upper_half, hyperboloid, sphere };

std::string to_string(Space space);
Space space_from_string(const std::string& name);

/// Deterministic point sampler: identical (plan, rng_seed) reproduces the
/// same points bit-for-bit. Margins keep samples away from the singular loci
/// of the constructions.
struct SamplePlan {
  Space space = Space::upper_half;
  int count = 100;
  std::uint64_t rng_seed = 0;

  double t_min = 0.1, t_max = 10.0;  // upper-half t window
  double x_range = 3.0;
  double radius_min = 0.5, radius_max = 2.0;  // ambient radii
  double y01_clearance = 0.1;                 // |y0 + y1|
  double z_clearance = 0.2;                   // |y2 + i y1|
  double branch_clearance = 0.1;              // radians off the log cut
};

/// Admissible sample points for the plan; n is the intrinsic dimension.
std::vector<Point> sample_points(const SamplePlan& plan, int n);

struct Tolerances {
  double jet_residual = 1e-8;     // |tau^r| / S on jets
  double sphere_residual = 1e-7;  // sphere ambient recursion
  double fd_residual = 1e-3;      // nested finite differences
  double properness = 1e-6;       // |tau^{r-1}| / S floor
  double symbolic = 1e-12;        // coefficient cancellation
};

struct VerifyReport {
  int n = 0;
  int r = 0;
  Complex a, b;
  std::string seed_id;
  Space space = Space::upper_half;
  bool symbolic_pass = false;
  double max_rel_residual_r = 0.0;
  double max_abs_tau_prev = 0.0;
  double scale = 0.0;
  bool properness = false;
  int points_used = 0;
  int points_excluded = 0;
  bool passed = false;

  std::string to_json() const;
  std::string to_text() const;
  std::string to_csv() const;
};

/// Runs the symbolic radial check, the numerical residual scan at the plan's
/// points, and the properness scan, and aggregates the results.
VerifyReport verify(const FamilySpec& spec, Space space, const SamplePlan& plan,
                    const Tolerances& tol = {});

/// tau^k(f) at a point via nested second-order central differences of the
/// divergence-form expansion of the operator; independent of the jet path.
/// k in {1, 2}; relative steps 1e-4 (k = 1) and 1e-3 (outer level of k = 2).
Complex finite_difference_oracle(const MetricChart& chart, const ScalarField& f,
                                 const Point& p, int k);

/// Rectangular grid over two coordinate axes, remaining coordinates fixed.
struct GridSpec {
  int axis0 = 0, axis1 = 1;
  double min0 = 0.0, max0 = 1.0;
  int count0 = 10;
  double min1 = 0.0, max1 = 1.0;
  int count1 = 10;
  std::vector<double> fixed;  // values for all coordinates not on an axis
};

struct GridResult {
  int rows_written = 0;
  int rows_inadmissible = 0;
};

/// CSV value grid: header "coords..., re_f, im_f, re_tau1, im_tau1, ...",
/// rows lexicographic in grid indices, floats with 17 significant digits.
/// Inadmissible cells keep their coordinates and leave value fields empty.
GridResult grid_export(const FamilySpec& spec, Space space,
                       const GridSpec& grid, const std::string& path);

/// Thread cap honoring the RHARMONIC_THREADS environment variable.
int max_threads();

/// Index-parallel map; results land in caller-owned slots so reductions stay
/// order-independent.
void parallel_for(int count, const std::function<void(int)>& fn);

}  // namespace rharmonic
