#include "umbilic/families.hpp"

#include <cmath>

namespace umbilic {
namespace {

constexpr double kPi = 3.14159265358979323846;

double mollifier(double s) { return s > 0.0 ? std::exp(-1.0 / s) : 0.0; }

double mollifier_derivative(double s) {
  return s > 0.0 ? std::exp(-1.0 / s) / (s * s) : 0.0;
}

Complex ipow(Complex z, int k) {
  Complex out{1.0, 0.0};
  for (int i = 0; i < k; ++i) out *= z;
  return out;
}

}  // namespace

BumpProfile::BumpProfile(double inner, double outer) : inner_(inner), outer_(outer) {
  if (!(0.0 <= inner && inner < outer)) {
    throw InvalidParamsError("bump profile requires 0 <= inner < outer");
  }
}

// The mollifier argument is normalized to the band, u = (x - inner)/(outer -
// inner), so the transition shape is independent of the band width. The raw
// E(outer - x) form sharpens into a near-step on narrow bands and starves
// fixed-order quadrature.
double BumpProfile::value(double x) const {
  if (x <= inner_) return 1.0;
  if (x >= outer_) return 0.0;
  const double u = (x - inner_) / (outer_ - inner_);
  const double a = mollifier(1.0 - u);
  const double b = mollifier(u);
  return a / (a + b);
}

double BumpProfile::derivative(double x) const {
  if (x <= inner_ || x >= outer_) return 0.0;
  const double u = (x - inner_) / (outer_ - inner_);
  const double a = mollifier(1.0 - u);
  const double b = mollifier(u);
  const double da = mollifier_derivative(1.0 - u);
  const double db = mollifier_derivative(u);
  const double denom = (a + b) * (a + b);
  return -(da * b + a * db) / (denom * (outer_ - inner_));
}

double bump(const BumpProfile& profile, double x) { return profile.value(std::abs(x)); }

void FlatFamilyParams::validate() const {
  if (n < 0) throw InvalidParamsError("n must be >= 0");
  if (m < 1) throw InvalidParamsError("m must be >= 1");
  if (lambda < 0.0) throw InvalidParamsError("lambda must be >= 0");
  if (lambda >= 1.0) throw InvalidParamsError("lambda must be < 1");
  if (!(0.0 < r0 && r0 < r1 && r1 < 1.0)) {
    throw InvalidParamsError("require 0 < r0 < r1 < 1");
  }
  if (!(epsilon > 0.0)) throw InvalidParamsError("epsilon must be > 0");
}

void SphereFamilyParams::validate() const {
  if (lambda < 0.0) throw InvalidParamsError("lambda must be >= 0");
  if (lambda * lambda > 256.0 / 27.0) {
    throw InvalidParamsError("lambda^2 must be <= 4^4/3^3 (Riemannian bound)");
  }
  if (!(R0 > 0.0)) throw InvalidParamsError("R0 must be > 0");
  if (!(epsilon > 0.0)) throw InvalidParamsError("epsilon must be > 0");
}

Complex beta_flat(const FlatFamilyParams& params, Complex z) {
  return flat_beta_field(params).value(z);
}

BetaField flat_beta_field(const FlatFamilyParams& params) {
  const int n = params.n;
  const int m = params.m;
  const double lambda = params.lambda;
  const BumpProfile phi(params.r0, params.r1);

  auto monomial = [n, m, lambda](Complex z) {
    return lambda * ipow(z, n) * ipow(std::conj(z), m);
  };
  // Wirtinger derivatives of the monomial.
  auto mono_dz = [n, m, lambda](Complex z) {
    if (n == 0) return Complex{0.0, 0.0};
    return lambda * double(n) * ipow(z, n - 1) * ipow(std::conj(z), m);
  };
  auto mono_dzbar = [n, m, lambda](Complex z) {
    if (m == 0) return Complex{0.0, 0.0};
    return lambda * double(m) * ipow(z, n) * ipow(std::conj(z), m - 1);
  };

  BetaField field;
  field.value = [phi, monomial](Complex z) {
    const double r = std::abs(z);
    if (r >= phi.outer()) return Complex{0.0, 0.0};
    if (r <= phi.inner()) return monomial(z);
    return phi.value(r) * monomial(z);
  };
  field.d_w = [phi, monomial, mono_dz](Complex z) {
    const double r = std::abs(z);
    if (r >= phi.outer()) return Complex{0.0, 0.0};
    if (r <= phi.inner()) return mono_dz(z);
    // d|z|/dz = zbar / (2|z|)
    return phi.value(r) * mono_dz(z) +
           phi.derivative(r) * (std::conj(z) / (2.0 * r)) * monomial(z);
  };
  field.d_wbar = [phi, monomial, mono_dzbar](Complex z) {
    const double r = std::abs(z);
    if (r >= phi.outer()) return Complex{0.0, 0.0};
    if (r <= phi.inner()) return mono_dzbar(z);
    return phi.value(r) * mono_dzbar(z) +
           phi.derivative(r) * (z / (2.0 * r)) * monomial(z);
  };
  return field;
}

Complex beta_sphere(const SphereFamilyParams& params, Complex xi) {
  const double w = 1.0 + std::norm(xi);
  return params.lambda * std::conj(xi) / (w * w);
}

BetaField sphere_beta_field(const SphereFamilyParams& params) {
  const double lambda = params.lambda;
  BetaField field;
  field.value = [lambda](Complex xi) {
    const double w = 1.0 + std::norm(xi);
    return lambda * std::conj(xi) / (w * w);
  };
  field.d_w = [lambda](Complex xi) {
    const double w = 1.0 + std::norm(xi);
    const Complex xb = std::conj(xi);
    return -2.0 * lambda * xb * xb / (w * w * w);
  };
  field.d_wbar = [lambda](Complex xi) {
    const double w = 1.0 + std::norm(xi);
    return lambda * (1.0 - std::norm(xi)) / (w * w * w);
  };
  return field;
}

Complex beta_antipodal(const SphereFamilyParams& params, Complex xi_prime) {
  const double w = 1.0 + std::norm(xi_prime);
  return -params.lambda * ipow(xi_prime, 3) / (w * w);
}

BetaField sphere_beta_field_antipodal(const SphereFamilyParams& params) {
  const double lambda = params.lambda;
  BetaField field;
  field.value = [lambda](Complex xp) {
    const double w = 1.0 + std::norm(xp);
    return -lambda * ipow(xp, 3) / (w * w);
  };
  field.d_w = [lambda](Complex xp) {
    const double w = 1.0 + std::norm(xp);
    return -lambda * ipow(xp, 2) * (3.0 + std::norm(xp)) / (w * w * w);
  };
  field.d_wbar = [lambda](Complex xp) {
    const double w = 1.0 + std::norm(xp);
    return 2.0 * lambda * ipow(xp, 4) / (w * w * w);
  };
  return field;
}

Complex antipodal_coordinate(Complex xi) { return -1.0 / std::conj(xi); }

Complex antipodal_transition(const std::function<Complex(Complex)>& beta,
                             Complex xi_prime) {
  const Complex xi = -1.0 / std::conj(xi_prime);
  return (xi_prime / std::conj(xi_prime)) * std::conj(beta(xi));
}

MetricField flat_reference_metric() {
  return MetricField(
      [](const ChartPoint&) { return Eigen::Matrix3d::Identity().eval(); },
      [](const ChartPoint&) {
        MetricPartials dg;
        for (auto& m : dg) m.setZero();
        return dg;
      });
}

namespace {

double bump_value(const std::optional<BumpProfile>& psi, double center, double x) {
  return psi ? psi->value(std::abs(x - center)) : 1.0;
}

double bump_slope(const std::optional<BumpProfile>& psi, double center, double x) {
  if (!psi) return 0.0;
  return (x >= center ? 1.0 : -1.0) * psi->derivative(std::abs(x - center));
}

}  // namespace

MetricField build_flat_metric_from_beta(const BetaField& beta,
                                        std::optional<BumpProfile> psi) {
  auto eval = [beta, psi](const ChartPoint& p) {
    const Complex z{p[0], p[1]};
    const Complex b = bump_value(psi, 0.0, p[2]) * beta.value(z);
    Eigen::Matrix3d g = Eigen::Matrix3d::Identity();
    g(0, 2) = g(2, 0) = b.real();
    g(1, 2) = g(2, 1) = b.imag();
    return g;
  };
  auto partials = [beta, psi](const ChartPoint& p) {
    const Complex z{p[0], p[1]};
    const double psi_t = bump_value(psi, 0.0, p[2]);
    const double dpsi_t = bump_slope(psi, 0.0, p[2]);
    const Complex b = beta.value(z);
    const Complex bw = beta.d_w(z);
    const Complex bwb = beta.d_wbar(z);
    const Complex db_dx = bw + bwb;
    const Complex db_dy = Complex{0.0, 1.0} * (bw - bwb);

    MetricPartials dg;
    for (auto& m : dg) m.setZero();
    dg[0](0, 2) = dg[0](2, 0) = psi_t * db_dx.real();
    dg[0](1, 2) = dg[0](2, 1) = psi_t * db_dx.imag();
    dg[1](0, 2) = dg[1](2, 0) = psi_t * db_dy.real();
    dg[1](1, 2) = dg[1](2, 1) = psi_t * db_dy.imag();
    dg[2](0, 2) = dg[2](2, 0) = dpsi_t * b.real();
    dg[2](1, 2) = dg[2](2, 1) = dpsi_t * b.imag();
    return dg;
  };
  return MetricField(eval, partials,
                     std::make_shared<const MetricField>(flat_reference_metric()));
}

MetricField build_flat_metric(const FlatFamilyParams& params) {
  params.validate();
  return build_flat_metric_from_beta(
      flat_beta_field(params),
      BumpProfile(params.epsilon / 4.0, params.epsilon / 2.0));
}

MetricField sphere_reference_metric() {
  // std::norm keeps the summation order identical to the perturbed builder,
  // so the lambda = 0 family reproduces this field bit-exactly.
  auto eval = [](const ChartPoint& p) {
    const double w = 1.0 + std::norm(Complex{p[0], p[1]});
    const double R = p[2];
    Eigen::Matrix3d g = Eigen::Matrix3d::Zero();
    g(0, 0) = g(1, 1) = 4.0 * R * R / (w * w);
    g(2, 2) = 1.0;
    return g;
  };
  auto partials = [](const ChartPoint& p) {
    const double w = 1.0 + std::norm(Complex{p[0], p[1]});
    const double R = p[2];
    MetricPartials dg;
    for (auto& m : dg) m.setZero();
    const double w3 = w * w * w;
    dg[0](0, 0) = dg[0](1, 1) = -16.0 * R * R * p[0] / w3;
    dg[1](0, 0) = dg[1](1, 1) = -16.0 * R * R * p[1] / w3;
    dg[2](0, 0) = dg[2](1, 1) = 8.0 * R / (w * w);
    return dg;
  };
  return MetricField(eval, partials);
}

MetricField build_sphere_metric_from_beta(const BetaField& beta,
                                          std::optional<BumpProfile> psi,
                                          double psi_center) {
  auto eval = [beta, psi, psi_center](const ChartPoint& p) {
    const Complex xi{p[0], p[1]};
    const double w = 1.0 + std::norm(xi);
    const double R = p[2];
    const double psi_R = bump_value(psi, psi_center, R);
    const Complex b = beta.value(xi);
    Eigen::Matrix3d g = Eigen::Matrix3d::Zero();
    g(0, 0) = g(1, 1) = 4.0 * R * R / (w * w);
    g(2, 2) = 1.0;
    const double c = 2.0 * R * psi_R / w;
    g(0, 2) = g(2, 0) = c * b.real();
    g(1, 2) = g(2, 1) = c * b.imag();
    return g;
  };
  auto partials = [beta, psi, psi_center](const ChartPoint& p) {
    const Complex xi{p[0], p[1]};
    const double u = p[0], v = p[1], R = p[2];
    const double w = 1.0 + std::norm(xi);
    const double w2 = w * w, w3 = w2 * w;
    const double psi_R = bump_value(psi, psi_center, R);
    const double dpsi_R = bump_slope(psi, psi_center, R);
    const Complex b = beta.value(xi);
    const Complex bw = beta.d_w(xi);
    const Complex bwb = beta.d_wbar(xi);
    const Complex db_du = bw + bwb;
    const Complex db_dv = Complex{0.0, 1.0} * (bw - bwb);

    MetricPartials dg;
    for (auto& m : dg) m.setZero();
    dg[0](0, 0) = dg[0](1, 1) = -16.0 * R * R * u / w3;
    dg[1](0, 0) = dg[1](1, 1) = -16.0 * R * R * v / w3;
    dg[2](0, 0) = dg[2](1, 1) = 8.0 * R / w2;

    // d/du of 2 R Psi beta / w  =  2 R Psi (w db - 2 u b) / w^2, etc.
    const Complex cross_du = 2.0 * R * psi_R * (w * db_du - 2.0 * u * b) / w2;
    const Complex cross_dv = 2.0 * R * psi_R * (w * db_dv - 2.0 * v * b) / w2;
    const Complex cross_dR = 2.0 * (psi_R + R * dpsi_R) * b / w;
    dg[0](0, 2) = dg[0](2, 0) = cross_du.real();
    dg[0](1, 2) = dg[0](2, 1) = cross_du.imag();
    dg[1](0, 2) = dg[1](2, 0) = cross_dv.real();
    dg[1](1, 2) = dg[1](2, 1) = cross_dv.imag();
    dg[2](0, 2) = dg[2](2, 0) = cross_dR.real();
    dg[2](1, 2) = dg[2](2, 1) = cross_dR.imag();
    return dg;
  };
  return MetricField(eval, partials,
                     std::make_shared<const MetricField>(sphere_reference_metric()));
}

MetricField build_sphere_metric(const SphereFamilyParams& params, ChartLabel chart) {
  params.validate();
  const BetaField beta = (chart == ChartLabel::Primary)
                             ? sphere_beta_field(params)
                             : sphere_beta_field_antipodal(params);
  return build_sphere_metric_from_beta(
      beta, BumpProfile(params.epsilon / 4.0, params.epsilon / 2.0), params.R0);
}

double lambda_budget_flat(double epsilon) {
  if (!(epsilon > 0.0)) throw InvalidParamsError("epsilon must be > 0");
  return std::min(1.0 / std::sqrt(2.0 * kPi), 1.0);
}

double lambda_budget_sphere(double epsilon, double R0) {
  if (!(epsilon > 0.0)) throw InvalidParamsError("epsilon must be > 0");
  if (!(R0 > 0.0)) throw InvalidParamsError("R0 must be > 0");
  const double raw =
      std::sqrt(128.0 / (27.0 * kPi * (12.0 * R0 * R0 + epsilon * epsilon)));
  return std::min(raw, 1.0);
}

Complex beta_from_sphere_components(const Eigen::Matrix3d& g, Complex xi, double R,
                                    double psi) {
  const double w = 1.0 + std::norm(xi);
  return Complex{g(0, 2), g(1, 2)} * w / (2.0 * R * psi);
}

}  // namespace umbilic
