// Acceptance suite: end-to-end checks of the r-harmonic family toolkit.
// Each criterion prints exactly one PASS/FAIL line; the exit code is the
// number of failed criteria.

#include <chrono>
#include <cmath>
#include <complex>
#include <cstdio>
#include <fstream>
#include <functional>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "rharmonic/families.hpp"
#include "rharmonic/lift.hpp"
#include "rharmonic/log_poly.hpp"
#include "rharmonic/verify.hpp"

using namespace rharmonic;

namespace {

struct Failure {
  std::string detail;
};

class Checker {
 public:
  void expect(bool ok, const std::string& detail) {
    if (!ok && failures_.size() < 3) failures_.push_back({detail});
    if (!ok) ++fail_count_;
    ++total_;
  }
  bool ok() const { return fail_count_ == 0; }
  std::string summary() const {
    std::string s = std::to_string(total_ - fail_count_) + "/" +
                    std::to_string(total_) + " checks";
    for (const auto& f : failures_) s += "; " + f.detail;
    return s;
  }

 private:
  std::vector<Failure> failures_;
  int fail_count_ = 0;
  int total_ = 0;
};

std::string fmt(double x) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.3g", x);
  return buf;
}

Complex random_complex(std::mt19937_64& rng) {
  std::uniform_real_distribution<double> u(-2.0, 2.0);
  return {u(rng), u(rng)};
}

std::string slurp(const std::string& path) {
  std::ifstream f(path, std::ios::binary);
  std::stringstream ss;
  ss << f.rdbuf();
  return ss.str();
}

// ---------------------------------------------------------------------------
// 1. Golden biharmonic family on the 4-dimensional upper-half space:
//    f = (a + b t^3) log(t) x1 must satisfy tau(f) = -3 (a - b t^3) x1 and
//    tau^2(f) = 0, at 100+ sampled points, with random complex (a, b).

bool criterion_biharmonic_golden(Checker& ck) {
  std::mt19937_64 rng(1001);
  const Complex a = random_complex(rng);
  const Complex b = random_complex(rng);
  const FamilySpec spec{4, 2, a, b, seed_by_id(4, "coord:1")};
  const auto field = upper_half_field(spec);
  const auto chart = upper_half_chart(4);

  SamplePlan plan;
  plan.space = Space::upper_half;
  plan.count = 120;
  plan.rng_seed = 17;
  const auto points = sample_points(plan, 4);

  for (const auto& p : points) {
    const auto seq = iterated_tension(chart, field, p, 2);
    const double s = std::max(seq.scale, 1.0);
    const double t3 = p[0] * p[0] * p[0];
    const Complex golden = -3.0 * (a - b * t3) * p[1];
    const double ref = std::max(std::abs(golden), 1.0);
    ck.expect(std::abs(seq.taus[0] - golden) <= 1e-9 * ref,
              "tau^1 mismatch " + fmt(std::abs(seq.taus[0] - golden) / ref));
    ck.expect(std::abs(seq.taus[1]) <= 1e-8 * s,
              "tau^2 residual " + fmt(std::abs(seq.taus[1]) / s));
  }
  return ck.ok();
}

// ---------------------------------------------------------------------------
// 2. Symbolic sweep: the radial factor (a + b t^{n-1})(log t)^{r-1} is
//    annihilated by exactly r applications of t^2 d^2/dt^2 - (n-2) t d/dt,
//    for n = 2..8, r = 1..5, five random coefficient pairs each.

bool criterion_symbolic_sweep(Checker& ck) {
  std::mt19937_64 rng(1002);
  for (int n = 2; n <= 8; ++n) {
    for (int r = 1; r <= 5; ++r) {
      for (int trial = 0; trial < 5; ++trial) {
        const Complex a = random_complex(rng);
        Complex b = random_complex(rng);
        if (std::abs(a) + std::abs(b) < 1e-3) b = 1.0;
        LogPolynomial q = build_pr(n, r, a, b);
        LogPolynomial prev = q;
        for (int k = 0; k < r; ++k) {
          prev = q;
          q = tension_1d(q, n);
        }
        const std::string tag =
            " (n=" + std::to_string(n) + ", r=" + std::to_string(r) + ")";
        ck.expect(q.is_zero_within(1e-12), "nonzero after r steps" + tag);
        ck.expect(!prev.is_zero_within(1e-12), "vanished early" + tag);
      }
    }
  }
  return ck.ok();
}

// ---------------------------------------------------------------------------
// 3. Right-inverse law: applying the radial tension operator to the integral
//    operator's output recovers the input, for 100 random log-polynomials
//    and arbitrary integration constants, n = 2..6.

bool criterion_right_inverse(Checker& ck) {
  std::mt19937_64 rng(1003);
  std::uniform_int_distribution<int> kd(-4, 4);
  std::uniform_int_distribution<int> md(0, 3);
  std::uniform_int_distribution<int> nt(1, 5);
  for (int trial = 0; trial < 100; ++trial) {
    const int n = 2 + trial % 5;
    LogPolynomial p;
    const int terms = nt(rng);
    for (int j = 0; j < terms; ++j) p.add_term(kd(rng), md(rng), random_complex(rng));
    if (p.is_zero()) p.add_term(0, 0, 1.0);
    const LogPolynomial back =
        tension_1d(integral_operator(p, n, random_complex(rng),
                                     random_complex(rng)),
                   n);
    const LogPolynomial diff = back - p;
    const double rel =
        diff.max_abs_coeff() / std::max(p.max_abs_coeff(), 1.0);
    ck.expect(rel <= 1e-9, "recovery error " + fmt(rel) + " at n=" +
                               std::to_string(n));
  }
  return ck.ok();
}

// ---------------------------------------------------------------------------
// 4. Hyperboloid duality: the intrinsic tension iterates of the family field
//    agree with the weighted d'Alembert recursion on ambient points, and both
//    vanish at level r, for n = 2..4, r = 1..3, 50+ points each.

bool criterion_hyperboloid_lift(Checker& ck) {
  for (int n = 2; n <= 4; ++n) {
    for (int r = 1; r <= 3; ++r) {
      const FamilySpec spec{n, r, Complex{0.7, -1.1}, Complex{-0.3, 0.9},
                            seed_by_id(n, "coord:1")};
      const auto fhat = hyperboloid_field(spec);
      SamplePlan plan;
      plan.space = Space::hyperboloid;
      plan.count = 50;
      plan.rng_seed = 400 + 10 * n + r;
      const auto points = sample_points(plan, n);
      const std::string tag =
          " (n=" + std::to_string(n) + ", r=" + std::to_string(r) + ")";
      for (const auto& y : points) {
        const auto seq = lift_sequence_hyperbolic(fhat, n, y, r);
        const double s = std::max(seq.scale, 1.0);
        for (int k = 0; k < r; ++k)
          ck.expect(std::abs(seq.lhs[k] - seq.rhs[k]) <= 1e-8 * s,
                    "side mismatch at level " + std::to_string(k + 1) + tag);
        ck.expect(std::abs(seq.lhs[r - 1]) <= 1e-8 * s,
                  "intrinsic tau^r nonzero" + tag);
        ck.expect(std::abs(seq.rhs[r - 1]) <= 1e-8 * s,
                  "ambient tau^r nonzero" + tag);
      }
    }
  }
  return ck.ok();
}

// ---------------------------------------------------------------------------
// 5. Sphere duality: the weighted flat-Laplacian recursion annihilates the
//    ambient sphere field at level r while level r-1 stays away from zero,
//    for n = 2..5, r = 1..3, 50+ admissible points each.

bool criterion_sphere_duality(Checker& ck) {
  for (int n = 2; n <= 5; ++n) {
    for (int r = 1; r <= 3; ++r) {
      const FamilySpec spec{n, r, Complex{1.2, 0.4}, Complex{0.6, -0.8},
                            seed_by_id(n, "coord:1")};
      const auto fhat = sphere_field(spec);
      SamplePlan plan;
      plan.space = Space::sphere;
      plan.count = 50;
      plan.rng_seed = 500 + 10 * n + r;
      const auto points = sample_points(plan, n);
      const std::string tag =
          " (n=" + std::to_string(n) + ", r=" + std::to_string(r) + ")";
      double best_prev_ratio = 0.0;
      for (const auto& y : points) {
        double scale = 0.0;
        const auto taus = ambient_tension_sphere(fhat, y, r, &scale);
        const double s =
            std::max(std::max(scale, std::abs(fhat.at(y))), 1.0);
        ck.expect(std::abs(taus[r - 1]) <= 1e-7 * s,
                  "tau^r residual " + fmt(std::abs(taus[r - 1]) / s) + tag);
        const double prev =
            r >= 2 ? std::abs(taus[r - 2]) : std::abs(fhat.at(y));
        best_prev_ratio = std::max(best_prev_ratio, prev / s);
      }
      ck.expect(best_prev_ratio > 1e-6,
                "tau^(r-1) vanishes everywhere" + tag);
    }
  }
  return ck.ok();
}

// ---------------------------------------------------------------------------
// 6. Eigenfunction cross-check on S^3: for harmonic polynomials of degree
//    k <= 3, the weighted recursion must reproduce tau(f) = lambda_k f where
//    lambda_k is measured by the finite-difference oracle, not hard-coded.

bool criterion_sphere_eigenfunctions(Checker& ck) {
  struct Case {
    int degree;
    ScalarField poly;
  };
  std::vector<Case> cases;
  {
    ScalarField p1;
    p1.dim = 4;
    p1.evaluate = [](std::span<const Jet> y) {
      return y[0] * Complex{1.0, 0.0};
    };
    cases.push_back({1, p1});
    ScalarField p2;
    p2.dim = 4;
    p2.evaluate = [](std::span<const Jet> y) { return y[0] * y[1]; };
    cases.push_back({2, p2});
    ScalarField p3;
    p3.dim = 4;
    p3.evaluate = [](std::span<const Jet> y) {
      return y[0] * y[0] * y[1] - y[2] * y[2] * y[1];
    };
    cases.push_back({3, p3});
  }

  const auto flat = euclidean_chart(4);
  std::mt19937_64 rng(1006);
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  for (const auto& c : cases) {
    const auto fhat = pullback_through_sphere_projection(c.poly);
    // Measure the eigenvalue with finite differences at a reference point:
    // tau(f) on the sphere lifts to |y|^2 Delta(f . pi) in the ambient space.
    const Point ref{0.9, 0.4, -0.3, 0.7};
    double ref_n2 = 0.0;
    for (double v : ref) ref_n2 += v * v;
    const Complex lap_fd = finite_difference_oracle(flat, fhat, ref, 1);
    const Complex f_ref = c.poly.at(project_sphere(ref));
    const Complex lambda_fd = ref_n2 * lap_fd / f_ref;
    const std::string tag = " (degree " + std::to_string(c.degree) + ")";
    ck.expect(std::abs(lambda_fd.imag()) <= 1e-6 * std::abs(lambda_fd),
              "eigenvalue not real" + tag);

    for (int trial = 0; trial < 10; ++trial) {
      Point y{u(rng), u(rng), u(rng), u(rng)};
      double n2 = 0.0;
      for (double v : y) n2 += v * v;
      if (n2 < 0.25) continue;
      const auto rhs = ambient_tension_sphere(fhat, y, 1);
      const Complex f_here = c.poly.at(project_sphere(y));
      const Complex expected = lambda_fd * f_here;
      const double s = std::max(std::abs(expected), 1.0);
      ck.expect(std::abs(rhs[0] - expected) <= 1e-6 * s,
                "eigenvalue relation off by " +
                    fmt(std::abs(rhs[0] - expected) / s) + tag);
    }
  }
  return ck.ok();
}

// ---------------------------------------------------------------------------
// 7. Jet arithmetic vs finite differences: the divergence-form operator
//    computed through jets matches the nested central-difference oracle on
//    20 random log-polynomial-times-polynomial fields per chart.

bool criterion_fd_oracle(Checker& ck) {
  std::mt19937_64 rng(1007);
  std::uniform_int_distribution<int> kd(-2, 3);
  std::uniform_int_distribution<int> md(0, 2);
  std::uniform_int_distribution<int> ed(0, 2);
  std::uniform_real_distribution<double> pt(0.6, 2.5);
  std::uniform_real_distribution<double> px(-1.5, 1.5);

  auto random_field = [&](int dim, bool with_log) {
    LogPolynomial radial;
    for (int j = 0; j < 3; ++j)
      radial.add_term(kd(rng), with_log ? md(rng) : 0, random_complex(rng));
    if (radial.is_zero()) radial.add_term(1, 0, 1.0);
    std::vector<int> exps(dim - 1);
    for (auto& e : exps) e = ed(rng);
    ScalarField f;
    f.dim = dim;
    f.evaluate = [radial, exps](std::span<const Jet> c) {
      Jet out = radial.evaluate_jet(c[0]);
      for (std::size_t i = 0; i < exps.size(); ++i)
        for (int e = 0; e < exps[i]; ++e) out = out * c[i + 1];
      return out;
    };
    return f;
  };

  struct ChartCase {
    const char* name;
    MetricChart chart;
    bool with_log;
  };
  std::vector<ChartCase> charts;
  charts.push_back({"hyperbolic", upper_half_chart(3), true});
  charts.push_back({"flat", euclidean_chart(3), false});

  for (const auto& cc : charts) {
    for (int trial = 0; trial < 20; ++trial) {
      const auto f = random_field(3, cc.with_log);
      Point p{pt(rng), px(rng), px(rng)};
      const Complex jet_val = laplace_beltrami(cc.chart, f, p);
      const Complex fd_val = finite_difference_oracle(cc.chart, f, p, 1);
      const double s = std::max(std::abs(jet_val), 1.0);
      ck.expect(std::abs(jet_val - fd_val) <= 1e-5 * s,
                std::string("oracle disagrees on ") + cc.name + " chart by " +
                    fmt(std::abs(jet_val - fd_val) / s));
    }
  }
  return ck.ok();
}

// ---------------------------------------------------------------------------
// 8. Determinism: repeated verification runs and grid exports with the same
//    seeds produce byte-identical reports and files.

bool criterion_determinism(Checker& ck) {
  const FamilySpec spec{3, 2, Complex{0.5, 1.5}, Complex{1.0, -0.25},
                        seed_by_id(3, "coord:1")};
  SamplePlan plan;
  plan.space = Space::upper_half;
  plan.count = 40;
  plan.rng_seed = 99;
  const auto rep1 = verify(spec, Space::upper_half, plan);
  const auto rep2 = verify(spec, Space::upper_half, plan);
  ck.expect(rep1.to_json() == rep2.to_json(), "verify reports differ");
  ck.expect(rep1.passed, "verification run failed");

  GridSpec grid;
  grid.axis0 = 0;
  grid.axis1 = 1;
  grid.min0 = 0.5;
  grid.max0 = 4.0;
  grid.count0 = 12;
  grid.min1 = -2.0;
  grid.max1 = 2.0;
  grid.count1 = 12;
  grid.fixed = {0.5};
  grid_export(spec, Space::upper_half, grid, "acceptance_grid_1.csv");
  grid_export(spec, Space::upper_half, grid, "acceptance_grid_2.csv");
  const std::string g1 = slurp("acceptance_grid_1.csv");
  ck.expect(!g1.empty(), "grid export produced no data");
  ck.expect(g1 == slurp("acceptance_grid_2.csv"), "grid exports differ");
  return ck.ok();
}

}  // namespace

int main() {
  struct Entry {
    const char* name;
    std::function<bool(Checker&)> fn;
    double budget_s;  // 0 = no timing requirement
  };
  const std::vector<Entry> entries = {
      {"biharmonic golden family on the 4-dim upper-half space",
       criterion_biharmonic_golden, 5.0},
      {"symbolic radial sweep n=2..8, r=1..5", criterion_symbolic_sweep, 2.0},
      {"integral operator right-inverse law", criterion_right_inverse, 0.0},
      {"hyperboloid model duality", criterion_hyperboloid_lift, 0.0},
      {"sphere model duality", criterion_sphere_duality, 0.0},
      {"sphere eigenfunction cross-check", criterion_sphere_eigenfunctions,
       0.0},
      {"jet arithmetic vs finite-difference oracle", criterion_fd_oracle, 0.0},
      {"deterministic verification and grid export", criterion_determinism,
       0.0},
  };

  int failures = 0;
  for (std::size_t i = 0; i < entries.size(); ++i) {
    const auto& e = entries[i];
    Checker ck;
    const auto start = std::chrono::steady_clock::now();
    bool ok = false;
    std::string error;
    try {
      ok = e.fn(ck);
    } catch (const std::exception& ex) {
      error = std::string("exception: ") + ex.what();
    }
    const double elapsed =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - start)
            .count();
    if (e.budget_s > 0.0 && elapsed > e.budget_s) {
      ok = false;
      error = "exceeded " + fmt(e.budget_s) + "s budget";
    }
    std::string detail = error.empty() ? ck.summary() : error;
    std::printf("[%zu/%zu] %s  %s  (%.2fs; %s)\n", i + 1, entries.size(),
                ok ? "PASS" : "FAIL", e.name, elapsed, detail.c_str());
    if (!ok) ++failures;
  }
  return failures;
}
