#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "umbilic/families.hpp"
#include "umbilic/verify.hpp"

using namespace umbilic;

namespace {
constexpr double kPi = 3.14159265358979323846;

// Real Jacobian of the antipodal coordinate change xi(xi') on the chart pair,
// extended by the identity in R.
Eigen::Matrix3d antipodal_jacobian(Complex xp) {
  const double u = xp.real(), v = xp.imag();
  const double rho2 = u * u + v * v;
  const double rho4 = rho2 * rho2;
  Eigen::Matrix3d j = Eigen::Matrix3d::Zero();
  j(0, 0) = (u * u - v * v) / rho4;
  j(0, 1) = 2.0 * u * v / rho4;
  j(1, 0) = 2.0 * u * v / rho4;
  j(1, 1) = (v * v - u * u) / rho4;
  j(2, 2) = 1.0;
  return j;
}

}  // namespace

TEST_CASE("beta_flat piecewise definition") {
  FlatFamilyParams params;
  params.n = 1;
  params.m = 1;
  params.lambda = 0.5;

  CHECK(beta_flat(params, Complex{0.0, 0.0}) == Complex{0.0, 0.0});
  CHECK(beta_flat(params, Complex{0.95, 0.0}) == Complex{0.0, 0.0});
  CHECK(beta_flat(params, Complex{-0.7, 0.6}) == Complex{0.0, 0.0});
  CHECK(std::abs(beta_flat(params, Complex{0.2, 0.0}) - Complex{0.02, 0.0}) < 1e-16);

  // |beta| <= lambda everywhere, exactly zero outside r1
  params.n = 0;
  params.m = 3;
  SampleRng rng(5);
  for (int i = 0; i < 500; ++i) {
    const Complex z = rng.uniform_disc(1.2);
    const double mag = std::abs(beta_flat(params, z));
    CHECK(mag <= params.lambda * (1.0 + 1e-14));
    if (std::abs(z) >= params.r1) CHECK(mag == 0.0);
  }
}

TEST_CASE("beta_flat is C^1 across the taper junctions") {
  FlatFamilyParams params;
  params.n = 2;
  params.m = 1;
  params.lambda = 0.4;
  const BetaField field = flat_beta_field(params);
  for (double r : {params.r0, params.r1}) {
    for (double arg : {0.3, 2.1}) {
      const Complex dir{std::cos(arg), std::sin(arg)};
      const Complex lo = (r - 1e-9) * dir;
      const Complex hi = (r + 1e-9) * dir;
      CHECK(std::abs(field.value(hi) - field.value(lo)) < 1e-8);
      CHECK(std::abs(field.d_w(hi) - field.d_w(lo)) < 1e-6);
      CHECK(std::abs(field.d_wbar(hi) - field.d_wbar(lo)) < 1e-6);
    }
  }
}

TEST_CASE("beta field Wirtinger derivatives match finite differences") {
  FlatFamilyParams params;
  params.n = 2;
  params.m = 2;
  params.lambda = 0.6;
  const BetaField flat = flat_beta_field(params);
  SphereFamilyParams sp;
  sp.lambda = 0.8;
  const BetaField sphere = sphere_beta_field(sp);
  const BetaField anti = sphere_beta_field_antipodal(sp);

  const double h = 1e-6;
  SampleRng rng(17);
  for (const BetaField* f : {&flat, &sphere, &anti}) {
    for (int i = 0; i < 40; ++i) {
      const Complex w = rng.uniform_disc(1.4);
      const Complex du =
          (f->value(w + Complex{h, 0}) - f->value(w - Complex{h, 0})) / (2 * h);
      const Complex dv =
          (f->value(w + Complex{0, h}) - f->value(w - Complex{0, h})) / (2 * h);
      // d/dw = (d/du - i d/dv)/2, d/dwbar = (d/du + i d/dv)/2
      const Complex dw = 0.5 * (du - Complex{0, 1} * dv);
      const Complex dwb = 0.5 * (du + Complex{0, 1} * dv);
      CHECK(std::abs(f->d_w(w) - dw) < 1e-7);
      CHECK(std::abs(f->d_wbar(w) - dwb) < 1e-7);
    }
  }
}

TEST_CASE("beta_sphere values and supremum") {
  SphereFamilyParams params;
  params.lambda = 0.9;

  CHECK(beta_sphere(params, Complex{0.0, 0.0}) == Complex{0.0, 0.0});

  const double target = (27.0 / 256.0) * params.lambda * params.lambda;
  const Complex xi_max{1.0 / std::sqrt(3.0), 0.0};
  CHECK(std::norm(beta_sphere(params, xi_max)) ==
        doctest::Approx(target).epsilon(1e-14));

  double sup = 0.0;
  for (int i = 0; i <= 10000; ++i) {
    const double r = 3.0 * i / 10000.0;
    sup = std::max(sup, std::norm(beta_sphere(params, Complex{r, 0.0})));
  }
  CHECK(sup <= target);
  CHECK(sup >= target * (1.0 - 1e-6));

  // decay like lambda/|xi|^3 at large |xi|
  const Complex far{100.0, 0.0};
  const double ratio =
      std::abs(beta_sphere(params, far)) * std::pow(std::abs(far), 3) / params.lambda;
  CHECK(ratio == doctest::Approx(1.0).epsilon(3e-4));
}

TEST_CASE("antipodal beta: closed form equals the chart transition") {
  SphereFamilyParams params;
  params.lambda = 0.7;
  auto primary = [&params](Complex xi) { return beta_sphere(params, xi); };

  CHECK(beta_antipodal(params, Complex{0.0, 0.0}) == Complex{0.0, 0.0});

  SampleRng rng(23);
  for (int i = 0; i < 50; ++i) {
    Complex xp = rng.uniform_disc(2.0);
    if (std::abs(xp) < 0.05) xp += Complex{0.1, 0.1};
    const Complex via_transition = antipodal_transition(primary, xp);
    CHECK(std::abs(via_transition - beta_antipodal(params, xp)) < 1e-10);
    // |beta| is a scalar under the chart change
    CHECK(std::abs(std::abs(via_transition) -
                   std::abs(beta_sphere(params, antipodal_coordinate(xp)))) < 1e-12);
  }

  params.lambda = 0.0;
  for (int i = 0; i < 5; ++i) {
    CHECK(beta_antipodal(params, rng.uniform_disc(1.0)) == Complex{0.0, 0.0});
  }
}

TEST_CASE("sphere atlas: metrics agree under chart pull-back") {
  SphereFamilyParams params;
  params.lambda = 0.8;
  params.R0 = 1.3;
  const MetricField gp = build_sphere_metric(params, ChartLabel::Primary);
  const MetricField ga = build_sphere_metric(params, ChartLabel::Antipodal);

  SampleRng rng(31);
  for (int i = 0; i < 50; ++i) {
    Complex xp = rng.uniform_disc(1.8);
    if (std::abs(xp) < 0.2) xp += Complex{0.4, 0.0};
    const Complex xi = antipodal_coordinate(xp);
    // R in the bump plateau and in the transition band
    const double R = (i % 2 == 0) ? params.R0 : params.R0 + 0.3 * params.epsilon;
    const Eigen::Matrix3d j = antipodal_jacobian(xp);
    const Eigen::Matrix3d pulled =
        j.transpose() * gp.components(ChartPoint(xi.real(), xi.imag(), R)) * j;
    const Eigen::Matrix3d direct = ga.components(ChartPoint(xp.real(), xp.imag(), R));
    CHECK((pulled - direct).cwiseAbs().maxCoeff() < 1e-9);
  }
}

TEST_CASE("beta_from_sphere_components reads the perturbation back") {
  SphereFamilyParams params;
  params.lambda = 0.6;
  const MetricField g = build_sphere_metric(params);
  const Complex xi{0.4, -0.7};
  const Eigen::Matrix3d gm = g.components(ChartPoint(xi.real(), xi.imag(), params.R0));
  CHECK(std::abs(beta_from_sphere_components(gm, xi, params.R0) -
                 beta_sphere(params, xi)) < 1e-14);
}

TEST_CASE("bump profile values, symmetry and smooth junctions") {
  const BumpProfile profile(0.025, 0.05);

  CHECK(bump(profile, 0.0) == 1.0);
  CHECK(bump(profile, 0.01) == 1.0);
  CHECK(bump(profile, 0.05) == 0.0);
  CHECK(bump(profile, -0.08) == 0.0);
  CHECK(bump(profile, -0.01) == 1.0);

  const double mid = 0.0375;
  const double v = profile.value(mid + 0.004);
  CHECK(v > 0.0);
  CHECK(v < 1.0);
  // mollifier ratio is symmetric about the band midpoint
  CHECK(profile.value(mid + 0.004) + profile.value(mid - 0.004) ==
        doctest::Approx(1.0).epsilon(1e-14));

  // 0 <= profile <= 1, exact plateaus
  for (int i = 0; i <= 200; ++i) {
    const double x = 0.08 * i / 200.0;
    const double p = profile.value(x);
    CHECK(p >= 0.0);
    CHECK(p <= 1.0);
    if (x <= 0.025) CHECK(p == 1.0);
    if (x >= 0.05) CHECK(p == 0.0);
  }

  // one-sided first derivatives vanish at both junctions
  const double h = 1e-4;
  CHECK(std::abs(profile.value(0.025 + h) - profile.value(0.025)) / h < 1e-6);
  CHECK(std::abs(profile.value(0.05) - profile.value(0.05 - h)) / h < 1e-6);

  // closed-form derivative against central differences mid-band
  for (double x : {0.030, 0.0375, 0.045}) {
    const double fd = (profile.value(x + 1e-7) - profile.value(x - 1e-7)) / 2e-7;
    CHECK(profile.derivative(x) == doctest::Approx(fd).epsilon(1e-5));
  }
}

TEST_CASE("build_flat_metric: reference, induced metric and support") {
  FlatFamilyParams params;
  params.n = 1;
  params.m = 1;
  params.lambda = 0.5;

  FlatFamilyParams zero = params;
  zero.lambda = 0.0;
  const MetricField g0 = build_flat_metric(zero);
  SampleRng rng(3);
  for (int i = 0; i < 20; ++i) {
    const ChartPoint p(rng.uniform(-1, 1), rng.uniform(-1, 1), rng.uniform(-1, 1));
    CHECK((g0.components(p) - Eigen::Matrix3d::Identity()).cwiseAbs().maxCoeff() ==
          0.0);
  }

  const MetricField g = build_flat_metric(params);
  const BetaField beta = flat_beta_field(params);
  for (int i = 0; i < 50; ++i) {
    const Complex z = rng.uniform_disc(0.45);
    const ChartPoint p(z.real(), z.imag(), 0.0);
    const double dev = pointwise_deviation(g, *g.reference(), p);
    CHECK(dev == doctest::Approx(2.0 * std::norm(beta.value(z))).epsilon(1e-12));
    CHECK(dev <= 2.0 * params.lambda * params.lambda + 1e-15);
    // the induced metric on t = 0 stays dz dzbar
    const Eigen::Matrix3d gm = g.components(p);
    CHECK(std::abs(gm(0, 0) - 1.0) < 1e-15);
    CHECK(std::abs(gm(1, 1) - 1.0) < 1e-15);
    CHECK(std::abs(gm(0, 1)) < 1e-15);
  }
  CHECK(pointwise_deviation(g, *g.reference(), ChartPoint(0.2, 0.1, 0.051)) == 0.0);
}

TEST_CASE("build_flat_metric validates parameters") {
  FlatFamilyParams params;
  params.lambda = 1.5;
  CHECK_THROWS_WITH_AS(build_flat_metric(params), "lambda must be < 1",
                       InvalidParamsError);
  params.lambda = 0.5;
  params.r0 = 0.9;
  params.r1 = 0.5;
  CHECK_THROWS_AS(build_flat_metric(params), InvalidParamsError);
  params.r0 = 0.5;
  params.r1 = 0.9;
  params.m = 0;
  CHECK_THROWS_AS(build_flat_metric(params), InvalidParamsError);
}

TEST_CASE("build_sphere_metric: reference, determinant and induced metric") {
  SphereFamilyParams params;
  params.lambda = 0.0;
  const MetricField g0 = build_sphere_metric(params);
  const ChartPoint p0(0.3, 0.4, 2.0);
  const double w = 1.0 + 0.25;
  Eigen::Matrix3d expected = Eigen::Matrix3d::Zero();
  expected(0, 0) = expected(1, 1) = 4.0 * 4.0 / (w * w);
  expected(2, 2) = 1.0;
  CHECK((g0.components(p0) - expected).cwiseAbs().maxCoeff() < 1e-15);

  params.lambda = 0.9;
  const MetricField g = build_sphere_metric(params);
  const BetaField beta = sphere_beta_field(params);
  SampleRng rng(13);
  for (int i = 0; i < 50; ++i) {
    const Complex xi = rng.uniform_disc(2.0);
    const ChartPoint p(xi.real(), xi.imag(), params.R0);
    const double ww = 1.0 + std::norm(xi);
    const double bb = std::norm(beta.value(xi));
    CHECK(metric_det(g, p) ==
          doctest::Approx(4.0 * std::pow(params.R0, 4) * (1.0 - bb) /
                          std::pow(ww, 4))
              .epsilon(1e-12));
    const double dev = pointwise_deviation(g, *g.reference(), p);
    CHECK(dev == doctest::Approx(2.0 * bb).epsilon(1e-12));
    CHECK(dev <= 2.0 * (27.0 / 256.0) * params.lambda * params.lambda + 1e-15);
    // induced round metric on R = R0 is untouched
    const Eigen::Matrix3d gm = g.components(p);
    CHECK(std::abs(gm(0, 0) - 4.0 * params.R0 * params.R0 / (ww * ww)) < 1e-14);
    CHECK(std::abs(gm(0, 1)) == 0.0);
  }

  params.lambda = 3.2;  // lambda^2 > 256/27
  CHECK_THROWS_AS(build_sphere_metric(params), InvalidParamsError);
}

TEST_CASE("lambda budgets") {
  // flat: epsilon cancels, the cap is 1/sqrt(2 pi)
  const double expected = 1.0 / std::sqrt(2.0 * kPi);
  CHECK(lambda_budget_flat(0.1) == doctest::Approx(expected).epsilon(1e-15));
  CHECK(lambda_budget_flat(7.0) == lambda_budget_flat(0.001));
  const double lf = lambda_budget_flat(0.3);
  CHECK(2.0 * lf * lf * 0.3 * kPi == doctest::Approx(0.3).epsilon(1e-14));

  // sphere: closed form, saturates its own bound, capped at 1
  const double ls = lambda_budget_sphere(0.1, 1.0);
  CHECK(ls == doctest::Approx(0.3545).epsilon(3e-4));
  CHECK(2.0 * (27.0 / 256.0) * kPi * 0.1 * ls * ls * (12.0 + 0.01) ==
        doctest::Approx(0.1).epsilon(1e-13));
  CHECK(lambda_budget_sphere(0.1, 50.0) < 0.01);
  CHECK(lambda_budget_sphere(0.1, 50.0) < lambda_budget_sphere(0.1, 1.0));
  CHECK(lambda_budget_sphere(1.0, 0.01) == 1.0);

  CHECK_THROWS_AS(lambda_budget_flat(0.0), InvalidParamsError);
  CHECK_THROWS_AS(lambda_budget_sphere(0.1, 0.0), InvalidParamsError);
}
