#include "umbilic/umbilics.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace umbilic {
namespace {

constexpr double kPi = 3.14159265358979323846;
constexpr double kTwoPi = 2.0 * kPi;
constexpr int kMaxLoopSamples = 11520;

Complex unit_dir(double angle) { return {std::cos(angle), std::sin(angle)}; }

}  // namespace

std::string HalfInteger::str() const {
  if (twice % 2 == 0) return std::to_string(twice / 2);
  return std::to_string(twice) + "/2";
}

int winding_number(const std::function<Complex(double)>& field, int samples,
                   double zero_tolerance) {
  if (samples < 4) throw UndersampledLoopError("need at least 4 loop samples");
  std::vector<Complex> values(samples);
  double max_abs = 0.0;
  for (int k = 0; k < samples; ++k) {
    values[k] = field(kTwoPi * k / samples);
    max_abs = std::max(max_abs, std::abs(values[k]));
  }
  const double floor_tol = std::max(zero_tolerance, 1e-13 * max_abs);
  for (int k = 0; k < samples; ++k) {
    if (std::abs(values[k]) <= floor_tol) {
      throw ZeroOnLoopError("loop passes within zero tolerance of a field zero");
    }
  }
  double total = 0.0;
  for (int k = 0; k < samples; ++k) {
    const double jump = std::arg(values[(k + 1) % samples] / values[k]);
    if (std::abs(jump) >= kPi - 1e-2) {
      throw UndersampledLoopError("adjacent phase jump >= pi; increase samples");
    }
    total += jump;
  }
  const double raw = total / kTwoPi;
  const double snapped = std::round(raw);
  if (std::abs(raw - snapped) > 0.1) {
    throw IndexSnapError("winding estimate " + std::to_string(raw) +
                         " is not within 0.1 of an integer");
  }
  return static_cast<int>(snapped);
}

namespace {

// Counts 4-connected clusters of sub-threshold |sigma| cells inside the disc.
int interior_zero_clusters(const SurfaceChart& chart, Complex center, double radius,
                           double threshold) {
  constexpr int n = 25;
  std::vector<int> mask(n * n, 0);
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) {
      const double x = -radius + 2.0 * radius * i / (n - 1);
      const double y = -radius + 2.0 * radius * j / (n - 1);
      if (x * x + y * y > radius * radius * 0.98) continue;
      const Complex w = center + Complex{x, y};
      if (std::abs(surface_sigma(chart, w)) < threshold) mask[i * n + j] = 1;
    }
  }
  int clusters = 0;
  std::vector<int> stack;
  for (int s = 0; s < n * n; ++s) {
    if (mask[s] != 1) continue;
    ++clusters;
    stack.push_back(s);
    mask[s] = 2;
    while (!stack.empty()) {
      const int cur = stack.back();
      stack.pop_back();
      const int i = cur / n, j = cur % n;
      const int di[4] = {1, -1, 0, 0};
      const int dj[4] = {0, 0, 1, -1};
      for (int d = 0; d < 4; ++d) {
        const int ii = i + di[d], jj = j + dj[d];
        if (ii < 0 || ii >= n || jj < 0 || jj >= n) continue;
        if (mask[ii * n + jj] == 1) {
          mask[ii * n + jj] = 2;
          stack.push_back(ii * n + jj);
        }
      }
    }
  }
  return clusters;
}

}  // namespace

IndexResult umbilic_index(const SurfaceChart& chart, Complex center, double radius,
                          int initial_samples) {
  IndexResult result;
  result.radius = radius;

  double loop_min = std::numeric_limits<double>::infinity();
  auto field = [&](double theta) {
    const Complex s = surface_sigma(chart, center + radius * unit_dir(theta));
    loop_min = std::min(loop_min, std::abs(s));
    return s;
  };

  int samples = initial_samples;
  for (;;) {
    loop_min = std::numeric_limits<double>::infinity();
    try {
      const int w = winding_number(field, samples);
      result.index = HalfInteger{-w};
      result.samples = samples;
      break;
    } catch (const UndersampledLoopError&) {
      if (samples * 2 > kMaxLoopSamples) throw;
      samples *= 2;
    }
  }

  result.interior_zero_clusters =
      interior_zero_clusters(chart, center, radius, 0.5 * loop_min);
  result.multiple_zero_warning = result.interior_zero_clusters > 1;
  return result;
}

HalfInteger UmbilicReport::total_index() const {
  int twice = 0;
  for (const auto& p : points) twice += p.index.twice;
  return HalfInteger{twice};
}

namespace {

// Shrinks a box around the |sigma| minimum; 7x7 sampling, halving each pass.
Complex refine_zero(const SurfaceChart& chart, Complex center, double half_width,
                    int iterations) {
  constexpr int n = 7;
  Complex best = center;
  for (int it = 0; it < iterations; ++it) {
    double best_val = std::numeric_limits<double>::infinity();
    Complex next = best;
    for (int i = 0; i < n; ++i) {
      for (int j = 0; j < n; ++j) {
        const Complex w = best + Complex{-half_width + 2.0 * half_width * i / (n - 1),
                                         -half_width + 2.0 * half_width * j / (n - 1)};
        const double val = std::abs(surface_sigma(chart, w));
        if (val < best_val) {
          best_val = val;
          next = w;
        }
      }
    }
    best = next;
    half_width *= 0.5;
  }
  return best;
}

}  // namespace

UmbilicReport umbilic_scan(const SurfaceChart& chart, const Region& region, int grid) {
  UmbilicReport report;
  const int n = grid + 1;
  const double du = (region.umax - region.umin) / grid;
  const double dv = (region.vmax - region.vmin) / grid;

  std::vector<double> abs_sigma(n * n);
  double global_max = 0.0;
  double boundary_max = 0.0;
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) {
      const Complex w{region.umin + du * i, region.vmin + dv * j};
      const double val = std::abs(surface_sigma(chart, w));
      abs_sigma[i * n + j] = val;
      global_max = std::max(global_max, val);
      if (i == 0 || j == 0 || i == n - 1 || j == n - 1) {
        boundary_max = std::max(boundary_max, val);
      }
    }
  }

  if (global_max < 1e-12) {
    report.totally_umbilic = true;
    return report;
  }
  const double scale = boundary_max > 1e-12 ? boundary_max : global_max;
  const double tol = 1e-8 * scale;

  int below = 0;
  for (double v : abs_sigma) below += (v < tol);
  if (below > n * n / 2) {
    report.totally_umbilic = true;
    return report;
  }

  // Local minima below threshold are zero candidates.
  std::vector<Complex> candidates;
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) {
      const double val = abs_sigma[i * n + j];
      if (val >= tol) continue;
      bool is_min = true;
      for (int a = -1; a <= 1 && is_min; ++a) {
        for (int b = -1; b <= 1 && is_min; ++b) {
          const int ii = i + a, jj = j + b;
          if (ii < 0 || ii >= n || jj < 0 || jj >= n) continue;
          if (abs_sigma[ii * n + jj] < val) is_min = false;
        }
      }
      if (is_min) {
        candidates.emplace_back(region.umin + du * i, region.vmin + dv * j);
      }
    }
  }

  const double cell = std::max(du, dv);
  std::vector<Complex> refined;
  for (const Complex& c : candidates) {
    const Complex zero = refine_zero(chart, c, cell, 30);
    bool duplicate = false;
    for (const Complex& r : refined) {
      if (std::abs(r - zero) < 3.0 * cell) duplicate = true;
    }
    if (!duplicate) refined.push_back(zero);
  }
  std::sort(refined.begin(), refined.end(), [](Complex a, Complex b) {
    return a.real() != b.real() ? a.real() < b.real() : a.imag() < b.imag();
  });

  for (const Complex& zero : refined) {
    const double radius = 2.0 * cell;
    const IndexResult idx = umbilic_index(chart, zero, radius);
    UmbilicPoint point;
    point.location = zero;
    point.index = idx.index;
    point.loop_radius = radius;
    point.loop_samples = idx.samples;
    point.chart = chart.chart;
    point.multiple_zero_warning = idx.multiple_zero_warning;
    report.points.push_back(point);
  }
  return report;
}

Eigen::Vector3d sphere_position(Complex coord, ChartLabel chart) {
  const double w = 1.0 + std::norm(coord);
  if (chart == ChartLabel::Primary) {
    return Eigen::Vector3d(2.0 * coord.real(), 2.0 * coord.imag(),
                           1.0 - std::norm(coord)) /
           w;
  }
  return Eigen::Vector3d(-2.0 * coord.real(), -2.0 * coord.imag(),
                         std::norm(coord) - 1.0) /
         w;
}

UmbilicReport sphere_umbilic_scan(const SphereFamilyParams& params, int grid) {
  // Overlapping square patches; each chart keeps candidates up to |xi| = 1.05
  // and the pair is deduplicated on the round sphere.
  const Region patch{-1.15, 1.15, -1.15, 1.15};
  const SurfaceChart primary = sphere_surface_chart(params, ChartLabel::Primary);
  const SurfaceChart antipodal = sphere_surface_chart(params, ChartLabel::Antipodal);

  const UmbilicReport rp = umbilic_scan(primary, patch, grid);
  const UmbilicReport ra = umbilic_scan(antipodal, patch, grid);

  UmbilicReport combined;
  combined.totally_umbilic = rp.totally_umbilic && ra.totally_umbilic;
  if (combined.totally_umbilic) return combined;

  auto add_unique = [&combined](const UmbilicPoint& p) {
    if (std::abs(p.location) > 1.05) return;
    const Eigen::Vector3d pos = sphere_position(p.location, p.chart);
    for (const auto& q : combined.points) {
      if ((sphere_position(q.location, q.chart) - pos).norm() < 1e-3) return;
    }
    combined.points.push_back(p);
  };
  for (const auto& p : rp.points) add_unique(p);
  for (const auto& p : ra.points) add_unique(p);
  return combined;
}

PrincipalDirections principal_directions(const SurfaceChart& chart, Complex w,
                                         double tol) {
  const ShapeData sd = second_fundamental_components(chart, w);
  if (std::abs(sd.sigma) < tol * std::max(1.0, std::abs(sd.rho))) {
    throw UmbilicPointError("principal directions undefined at an umbilic point");
  }
  double angle = -std::arg(sd.sigma) / 2.0;
  while (angle <= -kPi / 2.0) angle += kPi;
  while (angle > kPi / 2.0) angle -= kPi;
  PrincipalDirections out;
  out.angle = angle;
  out.dir1 = {std::cos(angle), std::sin(angle)};
  out.dir2 = {-std::sin(angle), std::cos(angle)};
  return out;
}

namespace {

// Line-field direction as a unit coordinate velocity; falls back to the
// previous direction below tolerance (totally umbilic charts).
Complex foliation_direction(const SurfaceChart& chart, Complex w, int branch,
                            Complex previous) {
  const Complex sigma = surface_sigma(chart, w);
  Complex dir;
  if (std::abs(sigma) < 1e-13) {
    dir = (previous == Complex{0.0, 0.0}) ? Complex{1.0, 0.0} : previous;
  } else {
    double angle = -std::arg(sigma) / 2.0 + branch * kPi / 2.0;
    dir = unit_dir(angle);
  }
  if (previous != Complex{0.0, 0.0} &&
      (std::conj(previous) * dir).real() < 0.0) {
    dir = -dir;
  }
  return dir / std::abs(dir);
}

}  // namespace

std::vector<Polyline> trace_foliation(const SurfaceChart& chart,
                                      const std::vector<Complex>& seeds,
                                      const FoliationOptions& options) {
  const double stop_dist =
      options.stop_distance > 0.0 ? options.stop_distance : 2.0 * options.step;
  std::vector<Polyline> curves;
  curves.reserve(seeds.size());
  for (std::size_t s = 0; s < seeds.size(); ++s) {
    Polyline curve;
    Complex w = seeds[s];
    Complex prev =
        s < options.seed_directions.size() ? options.seed_directions[s] : Complex{0.0, 0.0};
    curve.push_back(w);
    for (int step = 0; step < options.max_steps; ++step) {
      Complex d1, d2, next;
      try {
        d1 = foliation_direction(chart, w, options.branch, prev);
        d2 = foliation_direction(chart, w + 0.5 * options.step * d1, options.branch, d1);
        next = w + options.step * d2;
      } catch (const DegenerateNormalError&) {
        break;
      }
      if (!options.region.contains(next)) break;
      bool near_stop = false;
      for (const Complex& p : options.stop_points) {
        if (std::abs(next - p) < stop_dist) near_stop = true;
      }
      curve.push_back(next);
      prev = d2;
      w = next;
      if (near_stop) break;
    }
    curves.push_back(std::move(curve));
  }
  return curves;
}

}  // namespace umbilic
