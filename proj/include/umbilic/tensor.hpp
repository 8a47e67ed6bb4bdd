#ifndef UMBILIC_TENSOR_HPP
#define UMBILIC_TENSOR_HPP

#include <Eigen/Dense>
#include <array>
#include <functional>
#include <memory>

#include "umbilic/errors.hpp"

namespace umbilic {

// Chart coordinates are real triples (x1, x2, x3). The two metric families
// encode a complex pair in the first two slots: the flat family uses
// (Re z, Im z, t), the spherical family (Re xi, Im xi, R).
using ChartPoint = Eigen::Vector3d;

// partials[k](i, j) = d g_ij / d x^k
using MetricPartials = std::array<Eigen::Matrix3d, 3>;

// gamma[k](i, j) = Gamma^k_ij, symmetric in (i, j)
struct ChristoffelArray {
  std::array<Eigen::Matrix3d, 3> gamma;

  double operator()(int k, int i, int j) const { return gamma[k](i, j); }
};

/// An evaluable Riemannian metric on a 3-chart: components, first partials
/// (closed-form where available, central differences otherwise), and an
/// optional reference metric for deviation computations. Immutable after
/// construction and safe for concurrent evaluation.
class MetricField {
 public:
  using Eval = std::function<Eigen::Matrix3d(const ChartPoint&)>;
  using EvalPartials = std::function<MetricPartials(const ChartPoint&)>;

  MetricField() = default;
  MetricField(Eval eval, EvalPartials partials = nullptr,
              std::shared_ptr<const MetricField> reference = nullptr)
      : eval_(std::move(eval)),
        partials_(std::move(partials)),
        reference_(std::move(reference)) {}

  Eigen::Matrix3d components(const ChartPoint& p) const { return eval_(p); }

  /// Closed-form partials when provided; otherwise central differences with
  /// per-coordinate step h = fd_step_scale * max(1, |x^k|).
  MetricPartials partials(const ChartPoint& p) const;

  /// Finite-difference partials regardless of any closed form (oracle use).
  MetricPartials finite_difference_partials(const ChartPoint& p, double step_scale) const;

  bool has_closed_form_partials() const { return static_cast<bool>(partials_); }
  const MetricField* reference() const { return reference_.get(); }
  std::shared_ptr<const MetricField> reference_ptr() const { return reference_; }

  static constexpr double fd_step_scale = 1e-5;

 private:
  Eval eval_;
  EvalPartials partials_;
  std::shared_ptr<const MetricField> reference_;
};

/// Inverse of a symmetric 3x3 component matrix. Throws SingularMetricError
/// when |det| < 1e-14 (a degenerate, non-Riemannian point).
Eigen::Matrix3d metric_inverse(const Eigen::Matrix3d& g);

/// Determinant of the component matrix in the complex-coordinate convention
/// of the two families: both charts pair (x1, x2) into one complex coordinate,
/// and the constant Jacobian of that change scales the real-coordinate
/// determinant by exactly 1/4.
double metric_det(const MetricField& g, const ChartPoint& p);
double metric_det(const Eigen::Matrix3d& g_components);

/// Gamma^k_ij = 1/2 g^{kp} (d_i g_jp + d_j g_pi - d_p g_ij).
ChristoffelArray christoffel(const MetricField& g, const ChartPoint& p);
ChristoffelArray christoffel(const Eigen::Matrix3d& g, const MetricPartials& dg);

/// |g - g0|^2 = (g_ij - g0_ij)(g_kl - g0_kl) g0^ik g0^jl, a scalar.
double pointwise_deviation(const MetricField& g, const MetricField& g0, const ChartPoint& p);
double pointwise_deviation(const Eigen::Matrix3d& g, const Eigen::Matrix3d& g0);

}  // namespace umbilic

#endif
