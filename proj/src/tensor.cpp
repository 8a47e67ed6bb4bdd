#include "umbilic/tensor.hpp"

#include <cmath>

namespace umbilic {

MetricPartials MetricField::partials(const ChartPoint& p) const {
  if (partials_) return partials_(p);
  return finite_difference_partials(p, fd_step_scale);
}

MetricPartials MetricField::finite_difference_partials(const ChartPoint& p,
                                                       double step_scale) const {
  MetricPartials out;
  for (int k = 0; k < 3; ++k) {
    const double h = step_scale * std::max(1.0, std::abs(p[k]));
    ChartPoint fwd = p, bwd = p;
    fwd[k] += h;
    bwd[k] -= h;
    out[k] = (eval_(fwd) - eval_(bwd)) / (2.0 * h);
  }
  return out;
}

Eigen::Matrix3d metric_inverse(const Eigen::Matrix3d& g) {
  const double det = g.determinant();
  if (std::abs(det) < 1e-14) {
    throw SingularMetricError("metric component matrix is singular (|det| = " +
                              std::to_string(std::abs(det)) + ")");
  }
  return g.inverse();
}

double metric_det(const Eigen::Matrix3d& g_components) {
  return 0.25 * g_components.determinant();
}

double metric_det(const MetricField& g, const ChartPoint& p) {
  return metric_det(g.components(p));
}

ChristoffelArray christoffel(const Eigen::Matrix3d& g, const MetricPartials& dg) {
  const Eigen::Matrix3d ginv = metric_inverse(g);
  ChristoffelArray out;
  for (int k = 0; k < 3; ++k) out.gamma[k].setZero();
  for (int i = 0; i < 3; ++i) {
    for (int j = i; j < 3; ++j) {
      for (int k = 0; k < 3; ++k) {
        double sum = 0.0;
        for (int p = 0; p < 3; ++p) {
          sum += ginv(k, p) * (dg[i](j, p) + dg[j](p, i) - dg[p](i, j));
        }
        out.gamma[k](i, j) = 0.5 * sum;
        out.gamma[k](j, i) = out.gamma[k](i, j);
      }
    }
  }
  return out;
}

ChristoffelArray christoffel(const MetricField& g, const ChartPoint& p) {
  return christoffel(g.components(p), g.partials(p));
}

double pointwise_deviation(const Eigen::Matrix3d& g, const Eigen::Matrix3d& g0) {
  const Eigen::Matrix3d diff = g - g0;
  const Eigen::Matrix3d m = metric_inverse(g0) * diff;
  return (m * m).trace();
}

double pointwise_deviation(const MetricField& g, const MetricField& g0,
                           const ChartPoint& p) {
  return pointwise_deviation(g.components(p), g0.components(p));
}

}  // namespace umbilic
