#include "umbilic/shape.hpp"

#include <cmath>

namespace umbilic {
namespace {

constexpr double kSqrt2 = 1.41421356237309504880;

// Scale of the tangent frame: 1 for the plane, (1+|w|^2)/(2 R0) on the sphere.
double frame_scale(const SurfaceChart& chart, Complex w) {
  if (chart.family == SurfaceFamily::Flat) return 1.0;
  return (1.0 + std::norm(w)) / (2.0 * chart.R0);
}

struct NormalTerms {
  Complex b;
  double q;       // sqrt(1 - |b|^2)
  double scale;   // frame scale c
};

NormalTerms normal_terms(const SurfaceChart& chart, Complex w) {
  const Complex b = chart.beta.value(w);
  const double one_minus = 1.0 - std::norm(b);
  if (one_minus <= 1e-14) {
    throw DegenerateNormalError("1 - |beta|^2 <= 0 at w = (" +
                                std::to_string(w.real()) + ", " +
                                std::to_string(w.imag()) + ")");
  }
  return {b, std::sqrt(one_minus), frame_scale(chart, w)};
}

}  // namespace

SurfaceChart flat_surface_chart(const FlatFamilyParams& params) {
  SurfaceChart chart;
  chart.family = SurfaceFamily::Flat;
  chart.chart = ChartLabel::Primary;
  chart.metric = build_flat_metric(params);
  chart.beta = flat_beta_field(params);
  return chart;
}

SurfaceChart sphere_surface_chart(const SphereFamilyParams& params, ChartLabel label) {
  SurfaceChart chart;
  chart.family = SurfaceFamily::Sphere;
  chart.chart = label;
  chart.R0 = params.R0;
  chart.metric = build_sphere_metric(params, label);
  chart.beta = (label == ChartLabel::Primary) ? sphere_beta_field(params)
                                              : sphere_beta_field_antipodal(params);
  return chart;
}

SurfaceChart flat_chart_from_beta(const BetaField& beta) {
  SurfaceChart chart;
  chart.family = SurfaceFamily::Flat;
  chart.metric = build_flat_metric_from_beta(beta);
  chart.beta = beta;
  return chart;
}

SurfaceChart sphere_chart_from_beta(const BetaField& beta, double R0,
                                    ChartLabel label) {
  SurfaceChart chart;
  chart.family = SurfaceFamily::Sphere;
  chart.chart = label;
  chart.R0 = R0;
  chart.metric = build_sphere_metric_from_beta(beta);
  chart.beta = beta;
  return chart;
}

Eigen::Vector3d frame_e1(const SurfaceChart& chart, Complex w) {
  return {frame_scale(chart, w), 0.0, 0.0};
}

Eigen::Vector3d frame_e2(const SurfaceChart& chart, Complex w) {
  return {0.0, frame_scale(chart, w), 0.0};
}

Eigen::Vector3cd null_frame_plus(const SurfaceChart& chart, Complex w) {
  const Eigen::Vector3d e1 = frame_e1(chart, w);
  const Eigen::Vector3d e2 = frame_e2(chart, w);
  return (e1.cast<Complex>() - Complex{0.0, 1.0} * e2.cast<Complex>()) / kSqrt2;
}

Eigen::Vector3cd null_frame_minus(const SurfaceChart& chart, Complex w) {
  const Eigen::Vector3d e1 = frame_e1(chart, w);
  const Eigen::Vector3d e2 = frame_e2(chart, w);
  return (e1.cast<Complex>() + Complex{0.0, 1.0} * e2.cast<Complex>()) / kSqrt2;
}

Eigen::Vector3d unit_normal(const SurfaceChart& chart, Complex w) {
  const NormalTerms nt = normal_terms(chart, w);
  return Eigen::Vector3d(-nt.scale * nt.b.real(), -nt.scale * nt.b.imag(), 1.0) / nt.q;
}

std::array<Eigen::Vector3d, 2> normal_surface_derivatives(const SurfaceChart& chart,
                                                          Complex w) {
  if (chart.fd_normal_derivatives) {
    const double h = chart.fd_step;
    std::array<Eigen::Vector3d, 2> out;
    out[0] = (unit_normal(chart, w + Complex{h, 0.0}) -
              unit_normal(chart, w - Complex{h, 0.0})) /
             (2.0 * h);
    out[1] = (unit_normal(chart, w + Complex{0.0, h}) -
              unit_normal(chart, w - Complex{0.0, h})) /
             (2.0 * h);
    return out;
  }

  const NormalTerms nt = normal_terms(chart, w);
  const Complex bw = chart.beta.d_w(w);
  const Complex bwb = chart.beta.d_wbar(w);
  const Complex db_du = bw + bwb;
  const Complex db_dv = Complex{0.0, 1.0} * (bw - bwb);
  const double dc_du =
      (chart.family == SurfaceFamily::Flat) ? 0.0 : w.real() / chart.R0;
  const double dc_dv =
      (chart.family == SurfaceFamily::Flat) ? 0.0 : w.imag() / chart.R0;

  const Eigen::Vector3d unnorm(-nt.scale * nt.b.real(), -nt.scale * nt.b.imag(), 1.0);
  std::array<Eigen::Vector3d, 2> out;
  const Complex b_d[2] = {db_du, db_dv};
  const double c_d[2] = {dc_du, dc_dv};
  for (int d = 0; d < 2; ++d) {
    // q_d = -Re(conj(b) b_d) / q
    const double q_d = -(std::conj(nt.b) * b_d[d]).real() / nt.q;
    const Eigen::Vector3d unnorm_d(
        -(c_d[d] * nt.b.real() + nt.scale * b_d[d].real()),
        -(c_d[d] * nt.b.imag() + nt.scale * b_d[d].imag()), 0.0);
    out[d] = unnorm_d / nt.q - unnorm * (q_d / (nt.q * nt.q));
  }
  return out;
}

Eigen::Matrix3d shape_operator(const SurfaceChart& chart, Complex w) {
  const ChartPoint x = chart.embed(w);
  const Eigen::Matrix3d g = chart.metric.components(x);
  const ChristoffelArray gamma = christoffel(g, chart.metric.partials(x));
  const Eigen::Vector3d e0 = unit_normal(chart, w);
  const auto dN = normal_surface_derivatives(chart, w);

  // S1_i^j = d_i e0^j + Gamma^j_ik e0^k; the normal field is extended
  // transverse-independently, so d_i vanishes for the transverse index.
  Eigen::Matrix3d s1;
  for (int i = 0; i < 3; ++i) {
    for (int j = 0; j < 3; ++j) {
      double val = (i < 2) ? dN[i][j] : 0.0;
      for (int k = 0; k < 3; ++k) val += gamma.gamma[j](i, k) * e0[k];
      s1(i, j) = val;
    }
  }

  const Eigen::Vector3d g_e0 = g * e0;
  Eigen::Matrix3d proj;
  for (int i = 0; i < 3; ++i) {
    for (int j = 0; j < 3; ++j) {
      proj(i, j) = (i == j ? 1.0 : 0.0) - g_e0[i] * e0[j];
    }
  }
  return -(proj * s1 * proj);
}

Eigen::Matrix3d symmetrized_second_form(const SurfaceChart& chart, Complex w) {
  const ChartPoint x = chart.embed(w);
  const Eigen::Matrix3d g = chart.metric.components(x);
  const Eigen::Matrix3d s = shape_operator(chart, w);
  const Eigen::Matrix3d sg = s * g;
  return sg + sg.transpose();
}

NullFormComponents null_form_components(const SurfaceChart& chart, Complex w) {
  const Eigen::Matrix3d a = symmetrized_second_form(chart, w);
  const Eigen::Vector3cd ep = null_frame_plus(chart, w);
  const Eigen::Vector3cd em = null_frame_minus(chart, w);
  const Eigen::Matrix3cd ac = a.cast<Complex>();
  NullFormComponents out;
  out.sigma = ep.transpose() * ac * ep;
  out.sigma_bar = em.transpose() * ac * em;
  out.rho = em.transpose() * ac * ep;
  return out;
}

ShapeData second_fundamental_components(const SurfaceChart& chart, Complex w) {
  const NullFormComponents nf = null_form_components(chart, w);
  ShapeData out;
  out.sigma = nf.sigma;
  out.rho = nf.rho.real();
  out.kappa = out.rho * out.rho - std::norm(nf.sigma);
  return out;
}

Complex surface_sigma(const SurfaceChart& chart, Complex w) {
  return null_form_components(chart, w).sigma;
}

}  // namespace umbilic
