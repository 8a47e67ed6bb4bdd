#include "umbilic/verify.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <sstream>

#include "umbilic/quadrature.hpp"

namespace umbilic {
namespace {

constexpr double kPi = 3.14159265358979323846;

Complex ipow(Complex z, int k) {
  Complex out{1.0, 0.0};
  for (int i = 0; i < k; ++i) out *= z;
  return out;
}

double tolerance_for(const std::string& name) {
  // Algebraic identities are held to 1e-10, the normal-tangency contraction
  // to 1e-9, derivative-pipeline closed forms to 1e-8.
  if (name == "test6a") return 1e-9;
  static const char* algebraic[] = {"testeqn2", "testeqn3", "testeqn9", "testeqn10"};
  for (const char* a : algebraic) {
    if (name == a) return 1e-10;
  }
  if (name.rfind("testeqn", 0) == 0) return 1e-8;
  return 1e-10;
}

class ResidualAccumulator {
 public:
  void update(const std::string& name, double residual) {
    auto& cur = max_[name];
    cur = std::max(cur, std::abs(residual));
  }

  ResidualReport finish(std::string family, std::string provenance,
                        std::uint64_t seed, int samples) const {
    ResidualReport report;
    report.family = std::move(family);
    report.provenance = std::move(provenance);
    report.seed = seed;
    for (const auto& [name, value] : max_) {
      ResidualEntry e;
      e.name = name;
      e.max_residual = value;
      e.tolerance = tolerance_for(name);
      e.pass = value < e.tolerance;
      e.sample_count = samples;
      report.entries.push_back(e);
    }
    std::sort(report.entries.begin(), report.entries.end(),
              [](const ResidualEntry& a, const ResidualEntry& b) { return a.name < b.name; });
    return report;
  }

 private:
  std::map<std::string, double> max_;
};

// Frame residuals shared by both families: orthonormality of (e0, e1, e2),
// the null normalization of (e+, e-), and tangency of the symmetrized form.
void frame_residuals(ResidualAccumulator& acc, const SurfaceChart& chart, Complex w,
                     SampleRng& rng, bool with_generic_tangent) {
  const ChartPoint p = chart.embed(w);
  const Eigen::Matrix3d g = chart.metric.components(p);
  const Eigen::Vector3d e0 = unit_normal(chart, w);
  const Eigen::Vector3d e1 = frame_e1(chart, w);
  const Eigen::Vector3d e2 = frame_e2(chart, w);
  const Eigen::Vector3cd ep = null_frame_plus(chart, w);
  const Eigen::Vector3cd em = null_frame_minus(chart, w);
  const Eigen::Vector3d ge0 = g * e0;
  const Eigen::Matrix3cd gc = g.cast<Complex>();

  if (with_generic_tangent) {
    Eigen::Vector3d x(rng.uniform(-1.0, 1.0), rng.uniform(-1.0, 1.0), 0.0);
    if (x.norm() < 1e-3) x = Eigen::Vector3d(1.0, 0.0, 0.0);
    x.normalize();
    acc.update("test1a", x.dot(ge0));
    acc.update("test1b", 1.0 - e0.dot(ge0));
  }
  acc.update("test1", e1.dot(ge0));
  acc.update("test2", e2.dot(ge0));
  acc.update("test3", e1.dot(g * e2));
  acc.update("test4", 1.0 - e1.dot(g * e1));
  acc.update("test5", 1.0 - e2.dot(g * e2));
  acc.update("test3a", std::abs(Complex(ep.transpose() * gc * ep)));
  acc.update("test4a", std::abs(1.0 - Complex(ep.transpose() * gc * em)));
  acc.update("test5a", std::abs(Complex(em.transpose() * gc * em)));

  const Eigen::Matrix3d a = symmetrized_second_form(chart, w);
  acc.update("test6a", (a * e0).cwiseAbs().maxCoeff());
}

}  // namespace

bool ResidualReport::all_pass() const {
  for (const auto& e : entries) {
    if (!e.pass) return false;
  }
  return true;
}

const ResidualEntry* ResidualReport::find(const std::string& name) const {
  for (const auto& e : entries) {
    if (e.name == name) return &e;
  }
  return nullptr;
}

std::vector<std::string> residual_names_flat() {
  return {"test1",     "test1a",    "test1b",     "test2",      "test3",
          "test3a",    "test4",     "test4a",     "test5",      "test5a",
          "test6a",    "testeqn2",  "testeqn3",   "testeqn6a",  "testeqn6ab",
          "testeqn6b", "testeqn8"};
}

std::vector<std::string> residual_names_sphere() {
  return {"test1",       "test2",      "test3",      "test3a",     "test4",
          "test4a",      "test5",      "test5a",     "test6a",     "testeqn10",
          "testeqn13",   "testeqn13b", "testeqn14",  "testeqn15a",
          "testeqn15ab", "testeqn15b", "testeqn16b", "testeqn17",  "testeqn9"};
}

ResidualReport run_residual_suite(const FlatFamilyParams& params, int sample_points,
                                  std::uint64_t seed) {
  params.validate();
  const SurfaceChart chart = flat_surface_chart(params);
  const MetricField& g = chart.metric;
  const MetricField& g0 = *g.reference();
  SampleRng rng(seed);
  ResidualAccumulator acc;

  for (int s = 0; s < sample_points; ++s) {
    // Closed-form targets assume the un-tapered monomial, so sample strictly
    // inside |z| < r0 on the surface t = 0.
    const Complex z = rng.uniform_disc(0.95 * params.r0);
    const ChartPoint p = chart.embed(z);
    const Eigen::Matrix3d gm = g.components(p);
    const Eigen::Matrix3d g0m = g0.components(p);
    const Complex b = chart.beta.value(z);
    const Complex bw = chart.beta.d_w(z);
    const Complex bwb = chart.beta.d_wbar(z);
    const double bb = std::norm(b);
    const double q = std::sqrt(1.0 - bb);

    acc.update("testeqn2", 0.25 * (1.0 - bb) - metric_det(gm));
    acc.update("testeqn3", 2.0 * bb - pointwise_deviation(gm, g0m));

    frame_residuals(acc, chart, z, rng, /*with_generic_tangent=*/true);

    const NullFormComponents nf = null_form_components(chart, z);
    acc.update("testeqn6a", std::abs(nf.sigma - 2.0 * std::conj(bwb) / q));
    acc.update("testeqn6ab", std::abs(nf.sigma_bar - 2.0 * bwb / q));
    acc.update("testeqn6b", std::abs(nf.rho - 2.0 * bw.real() / q));

    const double r2mn = std::pow(std::abs(z), 2.0 * (params.m + params.n));
    const Complex monomial = 2.0 * params.m * params.lambda * ipow(z, params.m - 1) *
                             ipow(std::conj(z), params.n) /
                             std::sqrt(1.0 - params.lambda * params.lambda * r2mn);
    acc.update("testeqn8", std::abs(nf.sigma - monomial));
  }

  std::ostringstream prov;
  prov << "flat n=" << params.n << " m=" << params.m << " lambda=" << params.lambda
       << " r0=" << params.r0 << " r1=" << params.r1 << " epsilon=" << params.epsilon;
  return acc.finish("flat", prov.str(), seed, sample_points);
}

ResidualReport run_residual_suite(const SphereFamilyParams& params, int sample_points,
                                  std::uint64_t seed) {
  params.validate();
  const SurfaceChart primary = sphere_surface_chart(params, ChartLabel::Primary);
  const SurfaceChart antipodal = sphere_surface_chart(params, ChartLabel::Antipodal);
  const MetricField& g = primary.metric;
  const MetricField& g0 = *g.reference();
  const double R0 = params.R0;
  const double lambda = params.lambda;
  SampleRng rng(seed);
  ResidualAccumulator acc;

  for (int s = 0; s < sample_points; ++s) {
    const Complex xi = rng.uniform_disc(2.0);
    const ChartPoint p = primary.embed(xi);
    const Eigen::Matrix3d gm = g.components(p);
    const Eigen::Matrix3d g0m = g0.components(p);
    const Complex b = primary.beta.value(xi);
    const Complex bw = primary.beta.d_w(xi);
    const Complex bwb = primary.beta.d_wbar(xi);
    const double bb = std::norm(b);
    const double q = std::sqrt(1.0 - bb);
    const double w = 1.0 + std::norm(xi);

    acc.update("testeqn9",
               4.0 * std::pow(R0, 4) * (1.0 - bb) / std::pow(w, 4) - metric_det(gm));
    acc.update("testeqn10", 2.0 * bb - pointwise_deviation(gm, g0m));

    frame_residuals(acc, primary, xi, rng, /*with_generic_tangent=*/false);

    const NullFormComponents nf = null_form_components(primary, xi);
    // d/dxi [(1 + xi xibar) betabar] = xibar betabar + w conj(d beta/d xibar)
    const Complex sig_cf =
        (std::conj(xi) * std::conj(b) + w * std::conj(bwb)) / (R0 * q);
    const Complex sigb_cf = (xi * b + w * bwb) / (R0 * q);
    acc.update("testeqn13", std::abs(nf.sigma - sig_cf));
    acc.update("testeqn13b", std::abs(nf.sigma_bar - sigb_cf));
    // rho = -[4 - w^2 (d(beta/w)/dxi + d(betabar/w)/dxibar)] / (2 R0 q)
    const double bracket =
        4.0 - 2.0 * w * bw.real() + 2.0 * (b * std::conj(xi)).real();
    acc.update("testeqn14", std::abs(nf.rho + bracket / (2.0 * R0 * q)));

    const double det_term = std::pow(w, 4) - lambda * lambda * std::norm(xi);
    const double sqrt_det = std::sqrt(det_term);
    acc.update("testeqn15a", std::abs(nf.sigma - lambda / (R0 * sqrt_det)));
    acc.update("testeqn15ab", std::abs(nf.sigma_bar - lambda / (R0 * sqrt_det)));
    const double re_xi2 = (xi * xi).real();
    acc.update("testeqn15b",
               std::abs(nf.rho + (2.0 * w * w + 3.0 * lambda * re_xi2) / (R0 * sqrt_det)));
    const Complex kappa = nf.rho * nf.rho - nf.sigma * nf.sigma_bar;
    const double kappa_cf = (2.0 * w * w + lambda * (1.0 + 3.0 * re_xi2)) *
                            (2.0 * w * w - lambda * (1.0 - 3.0 * re_xi2)) /
                            (R0 * R0 * det_term);
    acc.update("testeqn17", std::abs(kappa - kappa_cf));
  }

  for (int s = 0; s < sample_points; ++s) {
    const Complex xp = rng.uniform_disc(2.0);
    const NullFormComponents nf = null_form_components(antipodal, xp);
    const double wp = 1.0 + std::norm(xp);
    const double det_term =
        std::pow(wp, 4) - lambda * lambda * std::pow(std::norm(xp), 3);
    const Complex cf = lambda * ipow(std::conj(xp), 4) / (R0 * std::sqrt(det_term));
    acc.update("testeqn16b", std::abs(nf.sigma - cf));
  }

  std::ostringstream prov;
  prov << "sphere lambda=" << params.lambda << " R0=" << params.R0
       << " epsilon=" << params.epsilon;
  ResidualReport report = acc.finish("sphere", prov.str(), seed, sample_points);
  report.notes.push_back(
      "testeqn16b: antipodal beta taken as -lambda xi'^3/(1+xi' xibar')^2, the "
      "unique form the chart transition of the dR cross term produces; the "
      "power-3 variant does not pull the metric back consistently and is "
      "treated as a typo.");
  report.notes.push_back("testeqn14: evaluated as the identity for rho.");
  return report;
}

double integrate_l2(const MetricField& g, const MetricField& g0,
                    const DiscCylinderDomain& domain, int order) {
  std::vector<double> rbreaks = domain.radial_breaks;
  if (rbreaks.empty()) rbreaks = {0.0, domain.radius};
  std::vector<double> tbreaks = domain.transverse_breaks;
  if (tbreaks.empty()) tbreaks = {domain.t_min, domain.t_max};

  const GaussLegendre rule = gauss_legendre(order);
  auto nodes_on = [&rule](double a, double b, std::vector<double>& xs,
                          std::vector<double>& ws) {
    const double mid = 0.5 * (a + b), half = 0.5 * (b - a);
    for (std::size_t i = 0; i < rule.nodes.size(); ++i) {
      xs.push_back(mid + half * rule.nodes[i]);
      ws.push_back(half * rule.weights[i]);
    }
  };

  std::vector<double> rx, rw, tx, tw, ax, aw;
  for (std::size_t i = 0; i + 1 < rbreaks.size(); ++i)
    nodes_on(rbreaks[i], rbreaks[i + 1], rx, rw);
  for (std::size_t i = 0; i + 1 < tbreaks.size(); ++i)
    nodes_on(tbreaks[i], tbreaks[i + 1], tx, tw);
  nodes_on(0.0, 2.0 * kPi, ax, aw);

  double total = 0.0;
  for (std::size_t it = 0; it < tx.size(); ++it) {
    for (std::size_t ir = 0; ir < rx.size(); ++ir) {
      for (std::size_t ia = 0; ia < ax.size(); ++ia) {
        const double r = rx[ir];
        const ChartPoint p(r * std::cos(ax[ia]), r * std::sin(ax[ia]), tx[it]);
        const double dev = pointwise_deviation(g, g0, p);
        const double measure = std::sqrt(g0.components(p).determinant());
        total += tw[it] * rw[ir] * aw[ia] * dev * measure * r;
      }
    }
  }
  return total;
}

double integrate_l2(const MetricField& g_primary, const MetricField& g_antipodal,
                    const MetricField& g0, const SphericalShellDomain& domain,
                    int order) {
  std::vector<double> rbreaks = domain.radial_breaks;
  if (rbreaks.empty()) rbreaks = {domain.R_lo, domain.R_hi};

  const GaussLegendre rule = gauss_legendre(order);
  auto nodes_on = [&rule](double a, double b, std::vector<double>& xs,
                          std::vector<double>& ws) {
    const double mid = 0.5 * (a + b), half = 0.5 * (b - a);
    for (std::size_t i = 0; i < rule.nodes.size(); ++i) {
      xs.push_back(mid + half * rule.nodes[i]);
      ws.push_back(half * rule.weights[i]);
    }
  };

  std::vector<double> Rx, Rw, sx, sw, ax, aw;
  for (std::size_t i = 0; i + 1 < rbreaks.size(); ++i)
    nodes_on(rbreaks[i], rbreaks[i + 1], Rx, Rw);
  nodes_on(0.0, 1.0, sx, sw);  // each chart integrates its unit disc
  nodes_on(0.0, 2.0 * kPi, ax, aw);

  double total = 0.0;
  for (const MetricField* field : {&g_primary, &g_antipodal}) {
    for (std::size_t iR = 0; iR < Rx.size(); ++iR) {
      for (std::size_t is = 0; is < sx.size(); ++is) {
        for (std::size_t ia = 0; ia < ax.size(); ++ia) {
          const double s = sx[is];
          const ChartPoint p(s * std::cos(ax[ia]), s * std::sin(ax[ia]), Rx[iR]);
          const double dev = pointwise_deviation(*field, g0, p);
          const double measure = std::sqrt(g0.components(p).determinant());
          total += Rw[iR] * sw[is] * aw[ia] * dev * measure * s;
        }
      }
    }
  }
  return total;
}

double flat_family_l2(const FlatFamilyParams& params, int order) {
  const MetricField g = build_flat_metric(params);
  DiscCylinderDomain domain;
  domain.radius = params.r1;
  domain.t_min = -params.epsilon / 2.0;
  domain.t_max = params.epsilon / 2.0;
  domain.radial_breaks = {0.0, params.r0, params.r1};
  domain.transverse_breaks = {-params.epsilon / 2.0, -params.epsilon / 4.0,
                              params.epsilon / 4.0, params.epsilon / 2.0};
  return integrate_l2(g, *g.reference(), domain, order);
}

double sphere_family_l2(const SphereFamilyParams& params, int order) {
  const MetricField gp = build_sphere_metric(params, ChartLabel::Primary);
  const MetricField ga = build_sphere_metric(params, ChartLabel::Antipodal);
  SphericalShellDomain domain;
  domain.R_lo = params.R0 - params.epsilon / 2.0;
  domain.R_hi = params.R0 + params.epsilon / 2.0;
  domain.radial_breaks = {params.R0 - params.epsilon / 2.0,
                          params.R0 - params.epsilon / 4.0,
                          params.R0 + params.epsilon / 4.0,
                          params.R0 + params.epsilon / 2.0};
  return integrate_l2(gp, ga, *gp.reference(), domain, order);
}

namespace {

QuadratureCheck make_check(double coarse, double fine) {
  QuadratureCheck check;
  check.coarse = coarse;
  check.value = fine;
  check.relative_diff =
      std::abs(fine) > 1e-300 ? std::abs(fine - coarse) / std::abs(fine) : 0.0;
  check.converged = check.relative_diff < 1e-6;
  return check;
}

}  // namespace

QuadratureCheck flat_family_l2_check(const FlatFamilyParams& params, int order) {
  return make_check(flat_family_l2(params, order), flat_family_l2(params, 2 * order));
}

QuadratureCheck sphere_family_l2_check(const SphereFamilyParams& params, int order) {
  return make_check(sphere_family_l2(params, order),
                    sphere_family_l2(params, 2 * order));
}

BudgetReport flat_budget_report(const FlatFamilyParams& params, int order) {
  BudgetReport report;
  report.lambda_used = params.lambda;
  report.epsilon_target = params.epsilon;
  report.numeric_l2 = flat_family_l2(params, order);
  report.closed_form_bound =
      2.0 * params.lambda * params.lambda * params.epsilon * kPi;
  report.tight_bound = report.closed_form_bound;
  report.satisfied = report.numeric_l2 <= report.epsilon_target &&
                     report.numeric_l2 <= report.closed_form_bound;
  return report;
}

BudgetReport sphere_budget_report(const SphereFamilyParams& params, int order) {
  BudgetReport report;
  report.lambda_used = params.lambda;
  report.epsilon_target = params.epsilon;
  report.numeric_l2 = sphere_family_l2(params, order);
  const double common = kPi * params.epsilon * params.lambda * params.lambda *
                        (12.0 * params.R0 * params.R0 + params.epsilon * params.epsilon);
  report.closed_form_bound = (27.0 / 128.0) * common;
  // The shell volume integral of R^2 carries a 1/3 the chained bound drops.
  report.tight_bound = (9.0 / 128.0) * common;
  report.satisfied = report.numeric_l2 <= report.epsilon_target &&
                     report.numeric_l2 <= report.tight_bound &&
                     report.numeric_l2 <= report.closed_form_bound;
  return report;
}

ConvexityScanResult convexity_scan(const SphereFamilyParams& params, int grid) {
  ConvexityScanResult result;
  result.min_kappa = std::numeric_limits<double>::infinity();
  for (ChartLabel label : {ChartLabel::Primary, ChartLabel::Antipodal}) {
    const SurfaceChart chart = sphere_surface_chart(params, label);
    for (int i = 0; i <= grid; ++i) {
      for (int j = 0; j <= grid; ++j) {
        const Complex xi{-1.05 + 2.1 * i / grid, -1.05 + 2.1 * j / grid};
        const double kappa = second_fundamental_components(chart, xi).kappa;
        if (kappa < result.min_kappa) {
          result.min_kappa = kappa;
          result.argmin = xi;
          result.chart = label;
        }
      }
    }
  }
  return result;
}

Theorem1Report verify_theorem1(HalfInteger k, double epsilon) {
  Theorem1Report report;
  report.requested_index = k;
  FlatFamilyParams params;
  if (k.twice >= 0) {
    params.n = k.twice;
    params.m = 1;
  } else {
    params.n = 0;
    params.m = 1 - k.twice;
  }
  params.lambda = lambda_budget_flat(epsilon);
  params.epsilon = epsilon;
  params.validate();
  report.params = params;

  const SurfaceChart chart = flat_surface_chart(params);
  report.index = umbilic_index(chart, Complex{0.0, 0.0}, params.r0 / 2.0);
  report.index_matches = report.index.index == k;
  report.budget = flat_budget_report(params);
  report.passed = report.index_matches && report.budget.satisfied;
  return report;
}

Theorem2Report verify_theorem2(double epsilon, double R0, int grid) {
  Theorem2Report report;
  SphereFamilyParams params;
  params.lambda = lambda_budget_sphere(epsilon, R0);
  params.R0 = R0;
  params.epsilon = epsilon;
  params.validate();
  report.params = params;

  report.umbilics = sphere_umbilic_scan(params, grid);
  report.convexity = convexity_scan(params, 200);
  report.budget = sphere_budget_report(params);

  const bool single = report.umbilics.points.size() == 1;
  const bool south_pole =
      single && report.umbilics.points[0].chart == ChartLabel::Antipodal &&
      std::abs(report.umbilics.points[0].location) < 1e-2;
  const bool index_two = single && report.umbilics.points[0].index == HalfInteger{4};
  report.passed = single && south_pole && index_two &&
                  report.convexity.min_kappa > 0.0 && report.budget.satisfied;
  return report;
}

std::uint64_t SampleRng::next() {
  // splitmix64: identical streams on every platform.
  state_ += 0x9e3779b97f4a7c15ULL;
  std::uint64_t z = state_;
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

double SampleRng::uniform(double a, double b) {
  const double u = (next() >> 11) * 0x1.0p-53;
  return a + (b - a) * u;
}

Complex SampleRng::uniform_disc(double radius) {
  const double r = radius * std::sqrt(uniform(0.0, 1.0));
  const double theta = uniform(0.0, 2.0 * kPi);
  return {r * std::cos(theta), r * std::sin(theta)};
}

}  // namespace umbilic
