// Command-line driver: builds family members from flags, runs the symbolic
// and numerical r-harmonicity checks, and emits reports and value grids.

#include <cstdio>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>

#include <CLI11.hpp>

#include "rharmonic/families.hpp"
#include "rharmonic/log_poly.hpp"
#include "rharmonic/verify.hpp"

namespace {

using rharmonic::Complex;

// Accepts "2", "-1.5", "i", "-i", "2i", "1+2i", "3e-2-0.5i".
Complex parse_complex(std::string s) {
  std::erase(s, ' ');
  if (s.empty()) throw CLI::ValidationError("empty complex literal");
  auto to_double = [](const std::string& part) {
    std::size_t used = 0;
    const double v = std::stod(part, &used);
    if (used != part.size())
      throw CLI::ValidationError("bad complex literal component '" + part + "'");
    return v;
  };
  if (s.back() != 'i') return {to_double(s), 0.0};
  s.pop_back();
  if (s.empty() || s == "+") return {0.0, 1.0};
  if (s == "-") return {0.0, -1.0};
  for (std::size_t pos = s.size() - 1; pos >= 1; --pos) {
    if ((s[pos] == '+' || s[pos] == '-') && s[pos - 1] != 'e' &&
        s[pos - 1] != 'E') {
      const std::string re = s.substr(0, pos);
      std::string im = s.substr(pos);
      if (im == "+") im = "1";
      if (im == "-") im = "-1";
      return {to_double(re), to_double(im)};
    }
  }
  return {0.0, to_double(s)};
}

std::vector<double> parse_doubles(const std::string& s) {
  std::vector<double> out;
  std::stringstream ss(s);
  std::string item;
  while (std::getline(ss, item, ',')) {
    if (item.empty()) continue;
    out.push_back(std::stod(item));
  }
  return out;
}

struct AxisRange {
  double lo, hi;
  int count;
};

AxisRange parse_axis(const std::string& s) {
  AxisRange r{};
  if (std::sscanf(s.c_str(), "%lf:%lf:%d", &r.lo, &r.hi, &r.count) != 3)
    throw CLI::ValidationError("axis range must be lo:hi:count, got '" + s +
                               "'");
  return r;
}

void write_output(const std::string& out_path, const std::string& content) {
  if (out_path.empty()) {
    std::cout << content;
    return;
  }
  std::ofstream f(out_path, std::ios::binary);
  if (!f) throw CLI::ValidationError("cannot open output file " + out_path);
  f << content;
}

struct CommonOpts {
  int n = 4;
  int r = 2;
  std::string a = "1";
  std::string b = "1";
  std::string seed_id = "coord:1";
  std::string space = "upper_half";
  std::string format = "text";
  std::string out;

  void attach(CLI::App* cmd, bool with_space = true) {
    cmd->add_option("--n", n, "dimension n (>= 2)");
    cmd->add_option("--r", r, "harmonicity order r (>= 1)");
    cmd->add_option("--a", a, "radial coefficient a, complex literal re+imi");
    cmd->add_option("--b", b, "radial coefficient b, complex literal re+imi");
    cmd->add_option("--seed-id", seed_id, "harmonic seed id (see `seeds`)");
    if (with_space)
      cmd->add_option("--space", space,
                      "upper_half | hyperboloid | sphere");
    cmd->add_option("--format", format, "text | json | csv");
    cmd->add_option("--out", out, "output file (default: stdout)");
  }

  rharmonic::FamilySpec spec() const {
    return {n, r, parse_complex(a), parse_complex(b),
            rharmonic::seed_by_id(n, seed_id)};
  }
};

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"explicit proper r-harmonic function families on H^n, the "
               "Minkowski hyperboloid and S^n, with symbolic and numerical "
               "verification"};
  app.set_config("--config", "", "plain-text config file with key = value lines");
  app.require_subcommand(1);

  // ---- seeds ----
  auto* seeds_cmd = app.add_subcommand("seeds", "list the harmonic seed catalog");
  int seeds_n = 4;
  std::string seeds_format = "text";
  std::string seeds_out;
  seeds_cmd->add_option("--n", seeds_n, "dimension n (seeds live on R^{n-1})");
  seeds_cmd->add_option("--format", seeds_format, "text | json");
  seeds_cmd->add_option("--out", seeds_out, "output file (default: stdout)");

  // ---- verify ----
  auto* verify_cmd =
      app.add_subcommand("verify", "run symbolic + numerical r-harmonicity checks");
  CommonOpts vo;
  int points = 100;
  std::uint64_t rng_seed = 0;
  double tol = 0.0;
  vo.attach(verify_cmd);
  verify_cmd->add_option("--points", points, "number of sample points");
  verify_cmd->add_option("--rng-seed", rng_seed, "sampler seed");
  verify_cmd->add_option("--tol", tol,
                         "override the jet residual tolerance (0 = default)");

  // ---- eval ----
  auto* eval_cmd =
      app.add_subcommand("eval", "evaluate f and tau^1..tau^r at one point");
  CommonOpts eo;
  std::string point_str;
  eo.attach(eval_cmd);
  eval_cmd->add_option("--point", point_str, "comma-separated coordinates")
      ->required();

  // ---- grid ----
  auto* grid_cmd = app.add_subcommand("grid", "export a CSV value grid");
  CommonOpts go;
  std::string axis0_str = "0.5:5:10", axis1_str = "-2:2:10";
  std::string axes_str = "0,1";
  std::string fix_str;
  go.attach(grid_cmd);
  grid_cmd->add_option("--grid0", axis0_str, "first axis range lo:hi:count");
  grid_cmd->add_option("--grid1", axis1_str, "second axis range lo:hi:count");
  grid_cmd->add_option("--axes", axes_str, "coordinate indices of the two axes");
  grid_cmd->add_option("--fix", fix_str,
                       "comma-separated values for the remaining coordinates");

  CLI11_PARSE(app, argc, argv);

  try {
    if (*seeds_cmd) {
      std::string content;
      const auto catalog = rharmonic::seed_catalog(seeds_n);
      if (seeds_format == "json") {
        content = "[";
        for (std::size_t i = 0; i < catalog.size(); ++i) {
          if (i) content += ",";
          content += "{\"id\":\"" + catalog[i].id() + "\",\"poly\":\"" +
                     catalog[i].render() + "\"}";
        }
        content += "]\n";
      } else {
        for (const auto& s : catalog)
          content += s.id() + "\t" + s.render() + "\n";
      }
      write_output(seeds_out, content);
      return 0;
    }

    if (*verify_cmd) {
      const auto spec = vo.spec();
      const auto space = rharmonic::space_from_string(vo.space);
      rharmonic::SamplePlan plan;
      plan.space = space;
      plan.count = points;
      plan.rng_seed = rng_seed;
      rharmonic::Tolerances tols;
      if (tol > 0.0) {
        tols.jet_residual = tol;
        tols.sphere_residual = tol;
      }
      const auto rep = rharmonic::verify(spec, space, plan, tols);
      std::string content;
      if (vo.format == "json") content = rep.to_json() + "\n";
      else if (vo.format == "csv") content = rep.to_csv();
      else content = rep.to_text();
      write_output(vo.out, content);
      return rep.passed ? 0 : 1;
    }

    if (*eval_cmd) {
      const auto spec = eo.spec();
      const auto space = rharmonic::space_from_string(eo.space);
      const rharmonic::Point p = parse_doubles(point_str);
      rharmonic::ScalarField field;
      std::vector<Complex> taus;
      if (space == rharmonic::Space::upper_half) {
        field = rharmonic::upper_half_field(spec);
        taus = rharmonic::iterated_tension(rharmonic::upper_half_chart(spec.n),
                                           field, p, spec.r)
                   .taus;
      } else if (space == rharmonic::Space::hyperboloid) {
        field = rharmonic::hyperboloid_field(spec);
        taus = rharmonic::ambient_tension_hyperbolic(field, p, spec.r);
      } else {
        field = rharmonic::sphere_field(spec);
        taus = rharmonic::ambient_tension_sphere(field, p, spec.r);
      }
      const Complex fv = field.at(p);
      std::string content;
      char buf[128];
      if (eo.format == "json") {
        std::snprintf(buf, sizeof(buf), "{\"f\":[%.17g,%.17g],\"tau\":[",
                      fv.real(), fv.imag());
        content = buf;
        for (std::size_t k = 0; k < taus.size(); ++k) {
          if (k) content += ",";
          std::snprintf(buf, sizeof(buf), "[%.17g,%.17g]", taus[k].real(),
                        taus[k].imag());
          content += buf;
        }
        content += "]}\n";
      } else {
        std::snprintf(buf, sizeof(buf), "f      = %.17g %+.17gi\n", fv.real(),
                      fv.imag());
        content = buf;
        for (std::size_t k = 0; k < taus.size(); ++k) {
          std::snprintf(buf, sizeof(buf), "tau^%zu = %.17g %+.17gi\n", k + 1,
                        taus[k].real(), taus[k].imag());
          content += buf;
        }
      }
      write_output(eo.out, content);
      return 0;
    }

    if (*grid_cmd) {
      const auto spec = go.spec();
      const auto space = rharmonic::space_from_string(go.space);
      if (go.out.empty())
        throw CLI::ValidationError("grid requires --out");
      const auto a0 = parse_axis(axis0_str);
      const auto a1 = parse_axis(axis1_str);
      const auto axes = parse_doubles(axes_str);
      if (axes.size() != 2) throw CLI::ValidationError("--axes needs 2 indices");
      rharmonic::GridSpec grid;
      grid.axis0 = static_cast<int>(axes[0]);
      grid.axis1 = static_cast<int>(axes[1]);
      grid.min0 = a0.lo; grid.max0 = a0.hi; grid.count0 = a0.count;
      grid.min1 = a1.lo; grid.max1 = a1.hi; grid.count1 = a1.count;
      grid.fixed = fix_str.empty() ? std::vector<double>{} : parse_doubles(fix_str);
      const int dim = (space == rharmonic::Space::upper_half) ? spec.n : spec.n + 1;
      grid.fixed.resize(static_cast<std::size_t>(dim - 2), 0.0);
      const auto res = rharmonic::grid_export(spec, space, grid, go.out);
      std::cerr << res.rows_written << " rows written, "
                << res.rows_inadmissible << " inadmissible\n";
      return 0;
    }
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
  return 0;
}
