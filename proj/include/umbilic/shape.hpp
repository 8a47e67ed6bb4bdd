#ifndef UMBILIC_SHAPE_HPP
#define UMBILIC_SHAPE_HPP

#include <array>
#include <complex>

#include "umbilic/families.hpp"
#include "umbilic/tensor.hpp"

namespace umbilic {

enum class SurfaceFamily { Flat, Sphere };

/// A totally geodesic-in-coordinates surface chart: the flat family embeds
/// (w = u + iv) |-> (u, v, 0), the sphere family (u, v) |-> (u, v, R0) on the
/// primary or antipodal coordinate patch. Carries the ambient metric and the
/// perturbation field, from which the adapted frame (e0, e+, e-) is built.
struct SurfaceChart {
  SurfaceFamily family = SurfaceFamily::Flat;
  ChartLabel chart = ChartLabel::Primary;
  double R0 = 1.0;
  MetricField metric;
  BetaField beta;
  bool fd_normal_derivatives = false;
  double fd_step = 1e-5;

  ChartPoint embed(Complex w) const {
    const double x3 = (family == SurfaceFamily::Flat) ? 0.0 : R0;
    return ChartPoint(w.real(), w.imag(), x3);
  }
};

SurfaceChart flat_surface_chart(const FlatFamilyParams& params);
SurfaceChart sphere_surface_chart(const SphereFamilyParams& params,
                                  ChartLabel chart = ChartLabel::Primary);

/// Charts over user-supplied perturbation fields (unbumped metrics).
SurfaceChart flat_chart_from_beta(const BetaField& beta);
SurfaceChart sphere_chart_from_beta(const BetaField& beta, double R0,
                                    ChartLabel label = ChartLabel::Primary);

/// sigma = A(e+, e+), rho = A(e+, e-), kappa = rho^2 - |sigma|^2, in the
/// symmetrized pipeline convention A_ij = g_jk S_i^k + g_ik S_j^k (so the
/// round sphere has rho = -2/R0 and kappa = 4/R0^2).
struct ShapeData {
  Complex sigma{0.0, 0.0};
  double rho = 0.0;
  double kappa = 0.0;
};

/// Raw complex pipeline output before reality is enforced on rho.
struct NullFormComponents {
  Complex sigma;
  Complex sigma_bar;
  Complex rho;
};

/// Orthonormal tangent frame in chart components.
Eigen::Vector3d frame_e1(const SurfaceChart& chart, Complex w);
Eigen::Vector3d frame_e2(const SurfaceChart& chart, Complex w);

/// Null combinations e+/- = (e1 -/+ i e2) / sqrt(2).
Eigen::Vector3cd null_frame_plus(const SurfaceChart& chart, Complex w);
Eigen::Vector3cd null_frame_minus(const SurfaceChart& chart, Complex w);

/// Unit normal with positive transverse component. Throws
/// DegenerateNormalError when 1 - |beta|^2 <= 0.
Eigen::Vector3d unit_normal(const SurfaceChart& chart, Complex w);

/// d e0 / du and d e0 / dv along the surface coordinates, closed-form from
/// the beta field Wirtinger derivatives unless the chart requests central
/// differences.
std::array<Eigen::Vector3d, 2> normal_surface_derivatives(const SurfaceChart& chart,
                                                          Complex w);

/// Projected shape operator S_i^j = -P_i^k P_l^j (d_k e0^l + Gamma^l_kp e0^p)
/// with P the tangential projector. Annihilates the normal on both slots.
Eigen::Matrix3d shape_operator(const SurfaceChart& chart, Complex w);

/// Symmetrized second fundamental form A_ij = g_jk S_i^k + g_ik S_j^k.
Eigen::Matrix3d symmetrized_second_form(const SurfaceChart& chart, Complex w);

NullFormComponents null_form_components(const SurfaceChart& chart, Complex w);
ShapeData second_fundamental_components(const SurfaceChart& chart, Complex w);

/// Shear component only (hot path for scans and winding loops).
Complex surface_sigma(const SurfaceChart& chart, Complex w);

}  // namespace umbilic

#endif
