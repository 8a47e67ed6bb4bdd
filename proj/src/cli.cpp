#include "umbilic/cli.hpp"

#include <CLI11.hpp>
#include <fstream>
#include <iostream>
#include <sstream>

#include "umbilic/report_io.hpp"
#include "umbilic/umbilics.hpp"
#include "umbilic/verify.hpp"

namespace umbilic::cli {
namespace {

std::string fmt(double value) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.17g", value);
  return buf;
}

struct Staging {
  std::optional<std::string> family;
  std::optional<int> n, m;
  std::optional<double> lambda, r0, r1, R0, epsilon;
  std::optional<int> grid, samples;
  std::optional<std::uint64_t> seed;
  std::optional<std::string> out, config;
};

void add_common_options(CLI::App* cmd, Staging& s) {
  cmd->add_option("--family", s.family, "flat | sphere")
      ->check(CLI::IsMember({"flat", "sphere"}));
  cmd->add_option("--n", s.n, "flat family holomorphic exponent");
  cmd->add_option("--m", s.m, "flat family antiholomorphic exponent (>= 1)");
  cmd->add_option("--lambda", s.lambda, "perturbation amplitude");
  cmd->add_option("--r0-inner", s.r0, "flat family inner radius");
  cmd->add_option("--r1", s.r1, "flat family outer (support) radius");
  cmd->add_option("--R0", s.R0, "sphere family radius");
  cmd->add_option("--epsilon", s.epsilon, "L2 budget / bump extent");
  cmd->add_option("--grid", s.grid, "scan grid resolution");
  cmd->add_option("--samples", s.samples, "residual sample count");
  cmd->add_option("--seed", s.seed, "sample RNG seed");
  cmd->add_option("--out", s.out, "output file path");
  cmd->add_option("--config", s.config, "key=value config file");
}

RunConfig resolve(const Staging& s) {
  RunConfig config;
  if (s.config) {
    std::ifstream file(*s.config);
    if (!file) throw InvalidParamsError("cannot open config file " + *s.config);
    std::ostringstream text;
    text << file.rdbuf();
    config = RunConfig::parse_text(text.str());
  }
  if (s.family) config.family = *s.family;
  if (s.n) config.n = *s.n;
  if (s.m) config.m = *s.m;
  if (s.lambda) config.lambda = *s.lambda;
  if (s.r0) config.r0 = *s.r0;
  if (s.r1) config.r1 = *s.r1;
  if (s.R0) config.R0 = *s.R0;
  if (s.epsilon) config.epsilon = *s.epsilon;
  if (s.grid) config.grid = *s.grid;
  if (s.samples) config.samples = *s.samples;
  if (s.seed) config.seed = *s.seed;
  if (s.out) config.out = *s.out;
  return config;
}

std::string default_out(const RunConfig& config, const std::string& fallback) {
  return config.out.empty() ? fallback : config.out;
}

int cmd_verify(const RunConfig& config, std::ostream& out) {
  ResidualReport report;
  if (config.family == "flat") {
    report = run_residual_suite(config.flat_params(), config.samples, config.seed);
  } else {
    report = run_residual_suite(config.sphere_params(), config.samples, config.seed);
  }
  write_file_atomic(default_out(config, "verify_report.csv"),
                    residual_report_csv(report));
  out << residual_report_text(report);
  return report.all_pass() ? 0 : 1;
}

int cmd_index(const RunConfig& config, std::ostream& out) {
  UmbilicReport report;
  SurfaceFamily family;
  if (config.family == "flat") {
    family = SurfaceFamily::Flat;
    const FlatFamilyParams params = config.flat_params();
    const SurfaceChart chart = flat_surface_chart(params);
    const double extent = 0.9 * params.r0;
    report = umbilic_scan(chart, Region{-extent, extent, -extent, extent},
                          config.grid);
  } else {
    family = SurfaceFamily::Sphere;
    report = sphere_umbilic_scan(config.sphere_params(), config.grid);
  }
  write_file_atomic(default_out(config, "index_report.csv"),
                    umbilic_report_csv(report));
  out << umbilic_report_text(report, family);
  return 0;
}

int cmd_budget(const RunConfig& config, std::ostream& out) {
  if (!(config.epsilon > 0.0)) throw InvalidParamsError("epsilon must be > 0");
  BudgetReport report;
  QuadratureCheck check;
  double lambda_max = 0.0;
  if (config.family == "flat") {
    lambda_max = lambda_budget_flat(config.epsilon);
    FlatFamilyParams params = config.flat_params();
    params.lambda = config.lambda.value_or(lambda_max);
    params.validate();
    report = flat_budget_report(params);
    check = flat_family_l2_check(params);
  } else {
    lambda_max = lambda_budget_sphere(config.epsilon, config.R0);
    SphereFamilyParams params = config.sphere_params();
    params.lambda = config.lambda.value_or(lambda_max);
    params.validate();
    report = sphere_budget_report(params);
    check = sphere_family_l2_check(params);
  }
  out << "lambda budget (max admissible): " << fmt(lambda_max) << "\n";
  out << budget_report_text(report, config.family);
  out << "  quadrature 16 vs 32 relative difference " << fmt(check.relative_diff)
      << "\n";
  if (!check.converged) {
    out << "  warning: quadrature refinements differ by more than 1e-6 relative\n";
  }
  write_file_atomic(default_out(config, "budget_report.csv"),
                    budget_report_csv(report, config.family));
  return report.satisfied ? 0 : 1;
}

int cmd_foliation(const RunConfig& config, std::ostream& out) {
  SurfaceChart chart;
  Region region;
  UmbilicReport umbilics;
  SurfaceFamily family;
  if (config.family == "flat") {
    family = SurfaceFamily::Flat;
    const FlatFamilyParams params = config.flat_params();
    chart = flat_surface_chart(params);
    const double extent = 0.9 * params.r0;
    region = Region{-extent, extent, -extent, extent};
    umbilics = umbilic_scan(chart, region, std::min(config.grid, 100));
  } else {
    family = SurfaceFamily::Sphere;
    const SphereFamilyParams params = config.sphere_params();
    chart = sphere_surface_chart(params, ChartLabel::Antipodal);
    region = Region{-1.0, 1.0, -1.0, 1.0};
    UmbilicReport both = sphere_umbilic_scan(params, std::min(config.grid, 100));
    umbilics.totally_umbilic = both.totally_umbilic;
    for (const auto& p : both.points) {
      if (p.chart == ChartLabel::Antipodal) umbilics.points.push_back(p);
    }
  }

  FoliationOptions options;
  options.region = region;
  options.step = (region.umax - region.umin) / 400.0;
  options.max_steps = 1500;
  for (const auto& p : umbilics.points) options.stop_points.push_back(p.location);

  std::vector<Complex> seeds;
  if (umbilics.points.empty() || umbilics.totally_umbilic) {
    for (int i = 1; i < 8; ++i) {
      const double v = region.vmin + (region.vmax - region.vmin) * i / 8.0;
      seeds.emplace_back(region.umin + 0.05 * (region.umax - region.umin), v);
    }
  } else {
    const double ring = (region.umax - region.umin) / 6.0;
    for (const auto& p : umbilics.points) {
      for (int k = 0; k < 8; ++k) {
        const double angle = 2.0 * 3.14159265358979323846 * (k + 0.35) / 8.0;
        seeds.push_back(p.location +
                        ring * Complex{std::cos(angle), std::sin(angle)});
      }
    }
  }

  const auto curves = trace_foliation(chart, seeds, options);
  const std::string path = default_out(config, "foliation.svg");
  write_file_atomic(path, foliation_svg(curves, umbilics, region));
  out << umbilic_report_text(umbilics, family);
  out << "wrote " << path << " (" << curves.size() << " curves)\n";
  return 0;
}

}  // namespace

FlatFamilyParams RunConfig::flat_params() const {
  FlatFamilyParams params;
  params.n = n;
  params.m = m;
  params.lambda = lambda.value_or(params.lambda);
  params.r0 = r0;
  params.r1 = r1;
  params.epsilon = epsilon;
  params.validate();
  return params;
}

SphereFamilyParams RunConfig::sphere_params() const {
  SphereFamilyParams params;
  params.lambda = lambda.value_or(params.lambda);
  params.R0 = R0;
  params.epsilon = epsilon;
  params.validate();
  return params;
}

std::string RunConfig::serialize() const {
  std::ostringstream s;
  s << "family=" << family << "\n";
  s << "n=" << n << "\n";
  s << "m=" << m << "\n";
  if (lambda) s << "lambda=" << fmt(*lambda) << "\n";
  s << "r0=" << fmt(r0) << "\n";
  s << "r1=" << fmt(r1) << "\n";
  s << "R0=" << fmt(R0) << "\n";
  s << "epsilon=" << fmt(epsilon) << "\n";
  s << "grid=" << grid << "\n";
  s << "samples=" << samples << "\n";
  s << "seed=" << seed << "\n";
  if (!out.empty()) s << "out=" << out << "\n";
  return s.str();
}

RunConfig RunConfig::parse_text(const std::string& text) {
  RunConfig config;
  std::istringstream in(text);
  std::string line;
  int line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.empty() || line[0] == '#') continue;
    const auto eq = line.find('=');
    if (eq == std::string::npos) {
      throw InvalidParamsError("config line " + std::to_string(line_no) +
                               ": expected key=value");
    }
    const std::string key = line.substr(0, eq);
    const std::string value = line.substr(eq + 1);
    try {
      if (key == "family") {
        if (value != "flat" && value != "sphere") throw std::invalid_argument(value);
        config.family = value;
      } else if (key == "n") {
        config.n = std::stoi(value);
      } else if (key == "m") {
        config.m = std::stoi(value);
      } else if (key == "lambda") {
        config.lambda = std::stod(value);
      } else if (key == "r0") {
        config.r0 = std::stod(value);
      } else if (key == "r1") {
        config.r1 = std::stod(value);
      } else if (key == "R0") {
        config.R0 = std::stod(value);
      } else if (key == "epsilon") {
        config.epsilon = std::stod(value);
      } else if (key == "grid") {
        config.grid = std::stoi(value);
      } else if (key == "samples") {
        config.samples = std::stoi(value);
      } else if (key == "seed") {
        config.seed = std::stoull(value);
      } else if (key == "out") {
        config.out = value;
      } else {
        throw InvalidParamsError("config line " + std::to_string(line_no) +
                                 ": unknown key '" + key + "'");
      }
    } catch (const InvalidParamsError&) {
      throw;
    } catch (const std::exception&) {
      throw InvalidParamsError("config line " + std::to_string(line_no) +
                               ": invalid value for '" + key + "'");
    }
  }
  return config;
}

int run_cli(const std::vector<std::string>& args, std::ostream& out,
            std::ostream& err) {
  CLI::App app{"umbilic-lab: metric perturbation constructions, umbilic index "
               "computation and identity verification"};
  app.require_subcommand(1);

  Staging sv, si, sb, sf;
  CLI::App* verify = app.add_subcommand("verify", "run the residual identity suite");
  add_common_options(verify, sv);
  CLI::App* index = app.add_subcommand("index", "locate umbilics and compute indices");
  add_common_options(index, si);
  CLI::App* budget = app.add_subcommand("budget", "lambda budget and numeric L2 check");
  add_common_options(budget, sb);
  CLI::App* foliation =
      app.add_subcommand("foliation", "trace principal foliation to SVG");
  add_common_options(foliation, sf);

  // CLI11 wants argv in reverse order for its vector overload.
  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e, out, err);
  } catch (const CLI::ParseError& e) {
    app.exit(e, out, err);
    return 2;
  }

  try {
    if (verify->parsed()) return cmd_verify(resolve(sv), out);
    if (index->parsed()) return cmd_index(resolve(si), out);
    if (budget->parsed()) return cmd_budget(resolve(sb), out);
    if (foliation->parsed()) return cmd_foliation(resolve(sf), out);
  } catch (const InvalidParamsError& e) {
    err << "error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return 1;
  }
  return 2;
}

int run_cli(int argc, const char* const* argv) {
  std::vector<std::string> args;
  for (int i = 1; i < argc; ++i) args.emplace_back(argv[i]);
  return run_cli(args, std::cout, std::cerr);
}

}  // namespace umbilic::cli
