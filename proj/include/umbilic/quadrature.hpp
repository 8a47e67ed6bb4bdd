#ifndef UMBILIC_QUADRATURE_HPP
#define UMBILIC_QUADRATURE_HPP

#include <functional>
#include <vector>

namespace umbilic {

/// Gauss-Legendre rule on [-1, 1].
struct GaussLegendre {
  std::vector<double> nodes;
  std::vector<double> weights;
};

GaussLegendre gauss_legendre(int order);

double integrate_1d(const std::function<double(double)>& f, double a, double b,
                    int order);

/// Panel-wise rule: one Gauss-Legendre rule of the given order per interval
/// between consecutive break points (breaks must be sorted).
double integrate_1d_panels(const std::function<double(double)>& f,
                           const std::vector<double>& breaks, int order);

}  // namespace umbilic

#endif
