#ifndef UMBILIC_VERIFY_HPP
#define UMBILIC_VERIFY_HPP

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "umbilic/families.hpp"
#include "umbilic/umbilics.hpp"

namespace umbilic {

struct ResidualEntry {
  std::string name;
  double max_residual = 0.0;
  double tolerance = 0.0;
  bool pass = false;
  int sample_count = 0;
};

/// Numeric re-run of the computer-algebra identity checks: every entry is a
/// residual that must vanish to tolerance at seeded random sample points.
struct ResidualReport {
  std::string family;
  std::string provenance;
  std::uint64_t seed = 0;
  std::vector<ResidualEntry> entries;  // sorted by name
  std::vector<std::string> notes;

  bool all_pass() const;
  const ResidualEntry* find(const std::string& name) const;
};

ResidualReport run_residual_suite(const FlatFamilyParams& params, int sample_points,
                                  std::uint64_t seed);
ResidualReport run_residual_suite(const SphereFamilyParams& params, int sample_points,
                                  std::uint64_t seed);

/// Identity-check names covered per family; the union of the two is the full
/// suite and the pair of reports must cover it exactly once each.
std::vector<std::string> residual_names_flat();
std::vector<std::string> residual_names_sphere();

struct BudgetReport {
  double numeric_l2 = 0.0;
  double closed_form_bound = 0.0;  // closed-form bound the budget was derived from
  double tight_bound = 0.0;  // sharper shell-volume bound (sphere family)
  double epsilon_target = 0.0;
  double lambda_used = 0.0;
  bool satisfied = false;
};

/// Disc x interval in (radial, angular, transverse) adapted coordinates.
/// Break points split the radial / transverse panels at bump junctions.
struct DiscCylinderDomain {
  double radius = 1.0;
  double t_min = -0.5;
  double t_max = 0.5;
  std::vector<double> radial_breaks;      // defaults to {0, radius}
  std::vector<double> transverse_breaks;  // defaults to {t_min, t_max}
};

/// Shell R_lo <= R <= R_hi around the sphere family surface; the angular
/// integral runs over both charts of the atlas, split at |xi| = 1.
struct SphericalShellDomain {
  double R_lo = 0.0;
  double R_hi = 1.0;
  std::vector<double> radial_breaks;  // defaults to {R_lo, R_hi}
};

double integrate_l2(const MetricField& g, const MetricField& g0,
                    const DiscCylinderDomain& domain, int order);
double integrate_l2(const MetricField& g_primary, const MetricField& g_antipodal,
                    const MetricField& g0, const SphericalShellDomain& domain,
                    int order);

/// Family wrappers with bump-junction panel splits built in.
double flat_family_l2(const FlatFamilyParams& params, int order);
double sphere_family_l2(const SphereFamilyParams& params, int order);

struct QuadratureCheck {
  double value = 0.0;        // finer rule (2 x order)
  double coarse = 0.0;       // base order
  double relative_diff = 0.0;
  bool converged = false;    // relative diff < 1e-6
};

QuadratureCheck flat_family_l2_check(const FlatFamilyParams& params, int order = 16);
QuadratureCheck sphere_family_l2_check(const SphereFamilyParams& params, int order = 16);

BudgetReport flat_budget_report(const FlatFamilyParams& params, int order = 16);
BudgetReport sphere_budget_report(const SphereFamilyParams& params, int order = 16);

struct ConvexityScanResult {
  double min_kappa = 0.0;
  Complex argmin{0.0, 0.0};
  ChartLabel chart = ChartLabel::Primary;
};

/// Grid minimum of kappa = rho^2 - sigma sigmabar over both charts.
ConvexityScanResult convexity_scan(const SphereFamilyParams& params, int grid);

struct Theorem1Report {
  HalfInteger requested_index;
  FlatFamilyParams params;
  BudgetReport budget;
  IndexResult index;
  bool index_matches = false;
  bool passed = false;
};

/// Picks (n, m) with (n - m + 1)/2 = k and m >= 1, lambda from the flat
/// budget, then checks the umbilic index at the origin and the L2 budget.
Theorem1Report verify_theorem1(HalfInteger k, double epsilon);

struct Theorem2Report {
  SphereFamilyParams params;
  BudgetReport budget;
  UmbilicReport umbilics;
  ConvexityScanResult convexity;
  bool passed = false;
};

/// Lambda from the sphere budget; the two-chart scan must find a single
/// umbilic of index 2 = chi(S^2), the convexity minimum must be positive and
/// the L2 integral within epsilon.
Theorem2Report verify_theorem2(double epsilon, double R0, int grid = 200);

/// Deterministic uniform sampling (explicit bit mapping, reproducible across
/// standard library implementations).
class SampleRng {
 public:
  explicit SampleRng(std::uint64_t seed) : state_(seed ? seed : 0x9e3779b97f4a7c15ULL) {}

  double uniform(double a, double b);
  Complex uniform_disc(double radius);

 private:
  std::uint64_t next();
  std::uint64_t state_;
};

}  // namespace umbilic

#endif
