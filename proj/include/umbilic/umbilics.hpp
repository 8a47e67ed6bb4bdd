#ifndef UMBILIC_UMBILICS_HPP
#define UMBILIC_UMBILICS_HPP

#include <functional>
#include <string>
#include <vector>

#include "umbilic/shape.hpp"

namespace umbilic {

/// Exact half-integer, stored as twice its value.
struct HalfInteger {
  int twice = 0;

  double value() const { return 0.5 * twice; }
  std::string str() const;
  friend bool operator==(const HalfInteger&, const HalfInteger&) = default;
};

/// Winding number of a nonvanishing loop of complex values: total unwrapped
/// phase change / 2pi, snapped to the nearest integer (within 0.1). Throws
/// ZeroOnLoopError if any sample is within zero_tolerance of 0 (relative
/// floor 1e-13 of the loop maximum), UndersampledLoopError if adjacent
/// samples jump by >= pi, IndexSnapError if the estimate will not snap.
int winding_number(const std::function<Complex(double)>& field, int samples,
                   double zero_tolerance = 0.0);

struct IndexResult {
  HalfInteger index;
  double radius = 0.0;
  int samples = 0;
  int interior_zero_clusters = 0;
  bool multiple_zero_warning = false;
};

/// Index of an isolated umbilic: -W/2 where W is the counterclockwise winding
/// of sigma around the loop (calibrated so sigma = z^n zbar^m has index
/// (m-n)/2). Doubles the sample count on undersampling, up to 11520. A
/// sub-grid scan of the disc counts candidate zero clusters and raises the
/// multiple-zero warning if more than one is present.
IndexResult umbilic_index(const SurfaceChart& chart, Complex center, double radius,
                          int initial_samples = 720);

struct Region {
  double umin = -1.0, umax = 1.0, vmin = -1.0, vmax = 1.0;

  bool contains(Complex w) const {
    return w.real() >= umin && w.real() <= umax && w.imag() >= vmin &&
           w.imag() <= vmax;
  }
};

struct UmbilicPoint {
  Complex location;
  HalfInteger index;
  double loop_radius = 0.0;
  int loop_samples = 0;
  ChartLabel chart = ChartLabel::Primary;
  bool multiple_zero_warning = false;
};

struct UmbilicReport {
  std::vector<UmbilicPoint> points;
  bool totally_umbilic = false;

  HalfInteger total_index() const;
};

/// Grid scan for zeros of sigma with bisection-style refinement of candidate
/// cells. Detection threshold is 1e-8 of the |sigma| scale on the region
/// boundary; a region whose sigma vanishes identically is flagged as totally
/// umbilic instead of being reported pointwise.
UmbilicReport umbilic_scan(const SurfaceChart& chart, const Region& region, int grid);

/// Two-chart scan of the sphere family, deduplicated through the antipodal
/// transition (candidates are compared as points of the round sphere).
UmbilicReport sphere_umbilic_scan(const SphereFamilyParams& params, int grid);

/// Unit sphere position of a chart coordinate (used for deduplication).
Eigen::Vector3d sphere_position(Complex coord, ChartLabel chart);

struct PrincipalDirections {
  double angle = 0.0;            // first direction against e1, in (-pi/2, pi/2]
  Eigen::Vector2d dir1{1.0, 0.0};  // components in the (e1, e2) frame
  Eigen::Vector2d dir2{0.0, 1.0};
};

/// Unoriented principal direction pair at angle -arg(sigma)/2 from e1.
/// Throws UmbilicPointError when |sigma| < tol * max(1, |rho|).
PrincipalDirections principal_directions(const SurfaceChart& chart, Complex w,
                                         double tol = 1e-12);

using Polyline = std::vector<Complex>;

struct FoliationOptions {
  Region region;
  double step = 0.01;
  int max_steps = 2000;
  int branch = 0;  // 0: -arg(sigma)/2 branch, 1: orthogonal branch
  std::vector<Complex> stop_points;
  double stop_distance = 0.0;  // defaults to 2 * step when <= 0
  std::vector<Complex> seed_directions;  // optional initial alignment per seed
};

/// Integrates the principal-direction line field with fixed-step midpoint
/// stepping, sign-aligning every evaluation with the previous direction.
/// Where sigma is below tolerance the previous direction is kept (straight
/// coordinate lines on a totally umbilic chart).
std::vector<Polyline> trace_foliation(const SurfaceChart& chart,
                                      const std::vector<Complex>& seeds,
                                      const FoliationOptions& options);

}  // namespace umbilic

#endif
