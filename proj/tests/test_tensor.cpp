#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "umbilic/families.hpp"
#include "umbilic/tensor.hpp"
#include "umbilic/verify.hpp"

using namespace umbilic;

namespace {

// Flat-form metric with a spatially constant beta, for pinning the printed
// component formulas at a chosen beta value.
MetricField constant_beta_flat_metric(Complex b) {
  BetaField field;
  field.value = [b](Complex) { return b; };
  field.d_w = [](Complex) { return Complex{0.0, 0.0}; };
  field.d_wbar = [](Complex) { return Complex{0.0, 0.0}; };
  return build_flat_metric_from_beta(field);
}

// Cofactor-expansion inverse, independent of the library path.
Eigen::Matrix3d adjugate_inverse(const Eigen::Matrix3d& m) {
  Eigen::Matrix3d adj;
  for (int i = 0; i < 3; ++i) {
    for (int j = 0; j < 3; ++j) {
      const int r0 = (i + 1) % 3, r1 = (i + 2) % 3;
      const int c0 = (j + 1) % 3, c1 = (j + 2) % 3;
      adj(j, i) = m(r0, c0) * m(r1, c1) - m(r0, c1) * m(r1, c0);
    }
  }
  return adj / m.determinant();
}

}  // namespace

TEST_CASE("metric_inverse on identity and scalar matrices") {
  const Eigen::Matrix3d id = Eigen::Matrix3d::Identity();
  CHECK((metric_inverse(id) - id).cwiseAbs().maxCoeff() == 0.0);

  const Eigen::Matrix3d two = 2.0 * id;
  CHECK((metric_inverse(two) - 0.5 * id).cwiseAbs().maxCoeff() < 1e-15);
}

TEST_CASE("metric_inverse of the flat-family matrix at beta = 0.6") {
  const MetricField g = constant_beta_flat_metric(Complex{0.6, 0.0});
  const Eigen::Matrix3d gm = g.components(ChartPoint(0.1, 0.2, 0.0));
  CHECK(metric_det(gm) == doctest::Approx((1.0 - 0.36) / 4.0).epsilon(1e-14));

  const Eigen::Matrix3d inv = metric_inverse(gm);
  CHECK((gm * inv - Eigen::Matrix3d::Identity()).cwiseAbs().maxCoeff() < 1e-12);
  CHECK((inv - adjugate_inverse(gm)).cwiseAbs().maxCoeff() < 1e-12);
  // the perturbation mixes the (x, t) block only
  CHECK(inv(1, 0) == 0.0);
  CHECK(inv(0, 0) == doctest::Approx(1.0 / 0.64));
  CHECK(inv(0, 2) == doctest::Approx(-0.6 / 0.64));
}

TEST_CASE("metric_inverse rejects singular matrices") {
  Eigen::Matrix3d g = Eigen::Matrix3d::Identity();
  g(2, 2) = 0.0;
  g(0, 2) = g(2, 0) = 0.0;
  g(1, 1) = 0.0;
  CHECK_THROWS_AS(metric_inverse(g), SingularMetricError);
  const MetricField degenerate = constant_beta_flat_metric(Complex{1.0, 0.0});
  CHECK_THROWS_AS(metric_inverse(degenerate.components(ChartPoint(0, 0, 0))),
                  SingularMetricError);
}

TEST_CASE("metric_det in the complex-coordinate convention") {
  const MetricField g = constant_beta_flat_metric(Complex{0.3, 0.4});
  CHECK(metric_det(g, ChartPoint(0.5, -0.2, 0.0)) ==
        doctest::Approx(0.1875).epsilon(1e-14));

  FlatFamilyParams flat;
  flat.lambda = 0.0;
  CHECK(metric_det(build_flat_metric(flat), ChartPoint(0.3, 0.1, 0.0)) ==
        doctest::Approx(0.25).epsilon(1e-14));

  SphereFamilyParams sphere;
  sphere.lambda = 0.0;
  CHECK(metric_det(build_sphere_metric(sphere), ChartPoint(0.0, 0.0, 1.0)) ==
        doctest::Approx(4.0).epsilon(1e-14));
}

TEST_CASE("christoffel vanishes for the unperturbed flat family") {
  FlatFamilyParams params;
  params.lambda = 0.0;
  const MetricField g = build_flat_metric(params);
  const ChristoffelArray gamma = christoffel(g, ChartPoint(0.4, -0.3, 0.02));
  for (int k = 0; k < 3; ++k) {
    CHECK(gamma.gamma[k].cwiseAbs().maxCoeff() == 0.0);
  }
}

TEST_CASE("christoffel of the round sphere metric at the pole") {
  SphereFamilyParams params;
  params.lambda = 0.0;
  const MetricField g = build_sphere_metric(params);
  const ChristoffelArray gamma = christoffel(g, ChartPoint(0.0, 0.0, 1.0));
  // Gamma^R_uu = -(1/2) d_R g_uu = -4 R / W^2; the complex-index component
  // Gamma^R_{xi xibar} = (Gamma^R_uu + Gamma^R_vv)/4 = -2 at R = 1, xi = 0.
  CHECK(gamma(2, 0, 0) == doctest::Approx(-4.0).epsilon(1e-12));
  CHECK(gamma(2, 1, 1) == doctest::Approx(-4.0).epsilon(1e-12));
  const double complex_component = 0.25 * (gamma(2, 0, 0) + gamma(2, 1, 1));
  CHECK(complex_component == doctest::Approx(-2.0).epsilon(1e-12));

  // cross-check against central differences of the metric itself
  const ChristoffelArray fd =
      christoffel(g.components(ChartPoint(0.0, 0.0, 1.0)),
                  g.finite_difference_partials(ChartPoint(0.0, 0.0, 1.0), 1e-5));
  for (int k = 0; k < 3; ++k) {
    CHECK((gamma.gamma[k] - fd.gamma[k]).cwiseAbs().maxCoeff() < 1e-7);
  }
}

TEST_CASE("christoffel symmetry and finite-difference oracle at random points") {
  FlatFamilyParams flat;
  flat.n = 2;
  flat.m = 1;
  flat.lambda = 0.4;
  const MetricField gf = build_flat_metric(flat);
  SphereFamilyParams sphere;
  sphere.lambda = 0.7;
  const MetricField gs = build_sphere_metric(sphere);

  SampleRng rng(2024);
  for (int i = 0; i < 25; ++i) {
    const Complex z = rng.uniform_disc(0.45);
    const ChartPoint pf(z.real(), z.imag(), rng.uniform(-0.02, 0.02));
    const ChristoffelArray cf = christoffel(gf, pf);
    const ChristoffelArray cf_fd =
        christoffel(gf.components(pf), gf.finite_difference_partials(pf, 1e-5));
    const Complex xi = rng.uniform_disc(1.5);
    const ChartPoint ps(xi.real(), xi.imag(), rng.uniform(0.99, 1.01));
    const ChristoffelArray cs = christoffel(gs, ps);
    const ChristoffelArray cs_fd =
        christoffel(gs.components(ps), gs.finite_difference_partials(ps, 1e-5));
    for (int k = 0; k < 3; ++k) {
      CHECK((cf.gamma[k] - cf.gamma[k].transpose()).cwiseAbs().maxCoeff() == 0.0);
      CHECK((cs.gamma[k] - cs.gamma[k].transpose()).cwiseAbs().maxCoeff() == 0.0);
      CHECK((cf.gamma[k] - cf_fd.gamma[k]).cwiseAbs().maxCoeff() < 1e-7);
      CHECK((cs.gamma[k] - cs_fd.gamma[k]).cwiseAbs().maxCoeff() < 1e-7);
    }
  }
}

TEST_CASE("pointwise deviation identities") {
  FlatFamilyParams flat;
  flat.lambda = 0.5;
  const MetricField gf = build_flat_metric(flat);
  CHECK(pointwise_deviation(gf, gf, ChartPoint(0.2, 0.1, 0.0)) == 0.0);

  const MetricField gconst = constant_beta_flat_metric(Complex{0.3, 0.4});
  CHECK(pointwise_deviation(gconst, *gconst.reference(), ChartPoint(0, 0, 0)) ==
        doctest::Approx(0.5).epsilon(1e-14));

  SphereFamilyParams sphere;
  sphere.lambda = 1.3;
  const MetricField gs = build_sphere_metric(sphere);
  const BetaField beta = sphere_beta_field(sphere);
  SampleRng rng(7);
  for (int i = 0; i < 100; ++i) {
    const Complex xi = rng.uniform_disc(2.5);
    const ChartPoint p(xi.real(), xi.imag(), sphere.R0);  // Psi = 1 on the surface
    CHECK(pointwise_deviation(gs, *gs.reference(), p) ==
          doctest::Approx(2.0 * std::norm(beta.value(xi))).epsilon(1e-12));
  }
}

TEST_CASE("pointwise deviation follows the transverse bump") {
  FlatFamilyParams params;
  params.n = 1;
  params.m = 1;
  params.lambda = 0.5;
  params.epsilon = 0.1;
  const MetricField g = build_flat_metric(params);
  const BetaField beta = flat_beta_field(params);
  const BumpProfile psi(params.epsilon / 4.0, params.epsilon / 2.0);
  const Complex z{0.3, 0.1};

  // outside the bump support the metric is exactly flat
  CHECK(pointwise_deviation(g, *g.reference(), ChartPoint(z.real(), z.imag(), 0.06)) ==
        0.0);
  // inside the transition band the deviation is 2 Psi^2 |beta|^2
  const double t = 0.035;
  const double expected =
      2.0 * psi.value(t) * psi.value(t) * std::norm(beta.value(z));
  CHECK(pointwise_deviation(g, *g.reference(), ChartPoint(z.real(), z.imag(), t)) ==
        doctest::Approx(expected).epsilon(1e-12));
}

TEST_CASE("metric symmetry and positive determinant at random points") {
  FlatFamilyParams flat;
  flat.n = 3;
  flat.m = 2;
  flat.lambda = 0.8;
  const MetricField gf = build_flat_metric(flat);
  SphereFamilyParams sphere;
  sphere.lambda = 2.0;
  const MetricField gs = build_sphere_metric(sphere);

  SampleRng rng(11);
  for (int i = 0; i < 100; ++i) {
    const Complex z = rng.uniform_disc(1.2);
    const ChartPoint pf(z.real(), z.imag(), rng.uniform(-0.1, 0.1));
    const Eigen::Matrix3d mf = gf.components(pf);
    CHECK((mf - mf.transpose()).cwiseAbs().maxCoeff() < 1e-14);
    CHECK(metric_det(mf) > 0.0);

    const Complex xi = rng.uniform_disc(2.0);
    const ChartPoint ps(xi.real(), xi.imag(), rng.uniform(0.8, 1.2));
    const Eigen::Matrix3d ms = gs.components(ps);
    CHECK((ms - ms.transpose()).cwiseAbs().maxCoeff() < 1e-14);
    CHECK(metric_det(ms) > 0.0);
  }
}

TEST_CASE("closed-form partials agree with central differences at O(h^2)") {
  // Wide bump bands keep the third derivatives moderate, so h in {1e-3, 1e-4}
  // sits inside the asymptotic window of the central difference.
  FlatFamilyParams flat;
  flat.n = 2;
  flat.m = 1;
  flat.lambda = 0.5;
  flat.epsilon = 2.0;
  const MetricField gf = build_flat_metric(flat);
  // a point with the radial taper and the transverse bump both active
  const ChartPoint pf(0.68, 0.12, 0.75);

  SphereFamilyParams sphere;
  sphere.lambda = 0.9;
  sphere.epsilon = 2.0;
  const MetricField gs = build_sphere_metric(sphere);
  const ChartPoint ps(0.4, -0.3, 1.75);

  for (const auto& [field, point] : {std::pair{&gf, pf}, std::pair{&gs, ps}}) {
    const MetricPartials exact = field->partials(point);
    double err[2];
    const double steps[2] = {1e-3, 1e-4};
    for (int s = 0; s < 2; ++s) {
      const MetricPartials fd = field->finite_difference_partials(point, steps[s]);
      double e = 0.0;
      for (int k = 0; k < 3; ++k) {
        e = std::max(e, (exact[k] - fd[k]).cwiseAbs().maxCoeff());
      }
      err[s] = e;
    }
    CHECK(err[0] > 0.0);
    CHECK(err[1] < err[0] / 25.0);  // O(h^2): a decade in h buys ~100x
  }
}

TEST_CASE("christoffel propagates the singular-matrix error") {
  const MetricField degenerate = constant_beta_flat_metric(Complex{1.0, 0.0});
  CHECK_THROWS_AS(christoffel(degenerate, ChartPoint(0, 0, 0)), SingularMetricError);
}
