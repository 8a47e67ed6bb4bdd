#ifndef UMBILIC_FAMILIES_HPP
#define UMBILIC_FAMILIES_HPP

#include <complex>
#include <functional>
#include <memory>
#include <optional>

#include "umbilic/tensor.hpp"

namespace umbilic {

using Complex = std::complex<double>;

/// Smooth bump profile: identically 1 on [0, inner], identically 0 on
/// [outer, inf), mollifier transition in between. Built from the standard
/// exponential ratio E(1-u) / (E(1-u) + E(u)) with E(s) = exp(-1/s) and
/// u the position across the band, so the transition shape is the same for
/// every band width.
class BumpProfile {
 public:
  BumpProfile(double inner, double outer);

  double inner() const { return inner_; }
  double outer() const { return outer_; }
  double value(double x) const;
  double derivative(double x) const;

 private:
  double inner_;
  double outer_;
};

/// A complex perturbation field on a surface coordinate w, together with its
/// Wirtinger derivatives d/dw and d/dwbar. The two families provide these in
/// closed form so the shape pipeline is exact to rounding.
struct BetaField {
  std::function<Complex(Complex)> value;
  std::function<Complex(Complex)> d_w;
  std::function<Complex(Complex)> d_wbar;
};

enum class ChartLabel { Primary, Antipodal };

struct FlatFamilyParams {
  int n = 1;
  int m = 1;
  double lambda = 0.3;
  double r0 = 0.5;
  double r1 = 0.9;
  double epsilon = 0.1;

  /// Throws InvalidParamsError unless n >= 0, m >= 1, 0 <= lambda < 1,
  /// 0 < r0 < r1 < 1 and epsilon > 0.
  void validate() const;
};

struct SphereFamilyParams {
  double lambda = 0.5;
  double R0 = 1.0;
  double epsilon = 0.1;

  /// Throws InvalidParamsError unless lambda^2 <= 4^4/3^3 (the Riemannian
  /// bound for sup |beta|^2 = 3^3/4^4 lambda^2), R0 > 0 and epsilon > 0.
  void validate() const;
};

/// Piecewise beta of the planar family: lambda z^n zbar^m inside |z| <= r0,
/// bump-tapered on the annulus r0 <= |z| <= r1, zero outside.
Complex beta_flat(const FlatFamilyParams& params, Complex z);
BetaField flat_beta_field(const FlatFamilyParams& params);

/// beta(xi, xibar) = lambda xibar / (1 + xi xibar)^2. sup |beta|^2 is
/// 3^3/4^4 lambda^2, attained on |xi|^2 = 1/3.
Complex beta_sphere(const SphereFamilyParams& params, Complex xi);
BetaField sphere_beta_field(const SphereFamilyParams& params);

/// The same perturbation seen from the antipodal coordinate xi' = -1/xibar:
/// -lambda xi'^3 / (1 + xi' xibar')^2, the closed form obtained by pushing
/// the metric through the coordinate change.
Complex beta_antipodal(const SphereFamilyParams& params, Complex xi_prime);
BetaField sphere_beta_field_antipodal(const SphereFamilyParams& params);

/// Transition rule for the dR cross term under xi' = -1/xibar:
/// beta'(xi') = (xi'/xibar') conj(beta(-1/conj(xi'))). Undefined at xi' = 0;
/// family closed forms extend smoothly there.
Complex antipodal_transition(const std::function<Complex(Complex)>& beta,
                             Complex xi_prime);

/// Antipodal coordinate change on the sphere, xi' = -1/conj(xi) (involutive).
Complex antipodal_coordinate(Complex xi);

/// Bump value on a two-sided band: profile applied to |x - center|.
double bump(const BumpProfile& profile, double x);

/// Metric ds^2 = dz dzbar + dt^2 + Psi(t) [betabar dz + beta dzbar] dt in
/// real coordinates (Re z, Im z, t). Psi is the transverse bump with bands
/// at epsilon/4 and epsilon/2. Carries closed-form partials and the flat
/// reference metric.
MetricField build_flat_metric(const FlatFamilyParams& params);

/// Same metric shape for a user-supplied beta; no Psi when the profile is
/// absent (the perturbation then extends over all t).
MetricField build_flat_metric_from_beta(const BetaField& beta,
                                        std::optional<BumpProfile> psi = {});

/// Sphere-form metric for a user-supplied beta on one coordinate patch;
/// the radial bump (when present) is centred at psi_center.
MetricField build_sphere_metric_from_beta(const BetaField& beta,
                                          std::optional<BumpProfile> psi = {},
                                          double psi_center = 0.0);

/// Metric ds^2 = dR^2 + 2R^2/(1+xi xibar)^2 dxi dxibar
///             + R Psi(R)/(1+xi xibar) (betabar dxi + beta dxibar) dR
/// in real coordinates (Re xi, Im xi, R), on the requested chart of the
/// two-chart atlas. Psi is radial, centred at R0.
MetricField build_sphere_metric(const SphereFamilyParams& params,
                                ChartLabel chart = ChartLabel::Primary);

/// Unperturbed (lambda = 0) companions.
MetricField flat_reference_metric();
MetricField sphere_reference_metric();

/// Largest lambda with 2 lambda^2 epsilon pi <= epsilon and lambda < 1,
/// i.e. 1/sqrt(2 pi) independent of epsilon.
double lambda_budget_flat(double epsilon);

/// Largest lambda with 2 (3^3/4^4) epsilon pi lambda^2 (12 R0^2 + eps^2)
/// <= epsilon, capped at 1 by the strict-convexity requirement:
/// min(sqrt(2^7 / (3^3 pi (12 R0^2 + eps^2))), 1).
double lambda_budget_sphere(double epsilon, double R0);

/// Reads beta back out of sphere-chart metric components:
/// beta = (g_uR + i g_vR) (1 + |xi|^2) / (2 R Psi). Test/oracle helper for
/// chart-transition checks; pass psi = 1 for unbumped shells.
Complex beta_from_sphere_components(const Eigen::Matrix3d& g, Complex xi,
                                    double R, double psi = 1.0);

}  // namespace umbilic

#endif
