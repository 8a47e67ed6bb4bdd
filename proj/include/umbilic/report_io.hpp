#ifndef UMBILIC_REPORT_IO_HPP
#define UMBILIC_REPORT_IO_HPP

#include <string>

#include "umbilic/umbilics.hpp"
#include "umbilic/verify.hpp"

namespace umbilic {

std::string residual_report_csv(const ResidualReport& report);
std::string residual_report_text(const ResidualReport& report);

std::string umbilic_report_csv(const UmbilicReport& report);
std::string umbilic_report_text(const UmbilicReport& report, SurfaceFamily family);

std::string budget_report_csv(const BudgetReport& report, const std::string& family);
std::string budget_report_text(const BudgetReport& report, const std::string& family);

/// Foliation polylines with umbilic markers and index labels mapped onto a
/// fixed viewBox.
std::string foliation_svg(const std::vector<Polyline>& curves,
                          const UmbilicReport& umbilics, const Region& region);

/// Writes via a temporary file and renames into place, so failed commands
/// never leave partial output behind.
void write_file_atomic(const std::string& path, const std::string& content);

}  // namespace umbilic

#endif
