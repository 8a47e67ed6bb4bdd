#include "umbilic/report_io.hpp"

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>

namespace umbilic {
namespace {

const char* kHeader = "# umbilic-lab report v1\n";

std::string fmt(double value) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.17g", value);
  return buf;
}

std::string fmt6(double value) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.6g", value);
  return buf;
}

}  // namespace

std::string residual_report_csv(const ResidualReport& report) {
  std::ostringstream out;
  out << kHeader;
  out << "# family=" << report.family << " seed=" << report.seed << " "
      << report.provenance << "\n";
  for (const auto& note : report.notes) out << "# note: " << note << "\n";
  out << "name,max_residual,tolerance,pass\n";
  for (const auto& e : report.entries) {
    out << e.name << "," << fmt(e.max_residual) << "," << fmt(e.tolerance) << ","
        << (e.pass ? "1" : "0") << "\n";
  }
  return out.str();
}

std::string residual_report_text(const ResidualReport& report) {
  std::ostringstream out;
  out << "residual suite [" << report.provenance << "], seed " << report.seed << "\n";
  for (const auto& e : report.entries) {
    out << "  " << (e.pass ? "pass" : "FAIL") << "  " << e.name << "  max residual "
        << fmt6(e.max_residual) << "  (tol " << fmt6(e.tolerance) << ", "
        << e.sample_count << " samples)\n";
  }
  for (const auto& note : report.notes) out << "  note: " << note << "\n";
  out << (report.all_pass() ? "all residuals vanish to tolerance\n"
                            : "RESIDUAL FAILURES PRESENT\n");
  return out.str();
}

std::string umbilic_report_csv(const UmbilicReport& report) {
  std::ostringstream out;
  out << kHeader;
  out << "chart,re,im,index,loop_radius,loop_samples,multiple_zero_warning\n";
  if (report.totally_umbilic) {
    out << "# totally umbilic region: indices undefined, no point list\n";
    return out.str();
  }
  for (const auto& p : report.points) {
    out << (p.chart == ChartLabel::Primary ? "primary" : "antipodal") << ","
        << fmt(p.location.real()) << "," << fmt(p.location.imag()) << ","
        << p.index.str() << "," << fmt(p.loop_radius) << "," << p.loop_samples << ","
        << (p.multiple_zero_warning ? "1" : "0") << "\n";
  }
  return out.str();
}

std::string umbilic_report_text(const UmbilicReport& report, SurfaceFamily family) {
  std::ostringstream out;
  if (report.totally_umbilic) {
    out << "totally umbilic region: sigma vanishes identically, no isolated "
           "umbilic points\n";
    return out.str();
  }
  if (report.points.empty()) {
    out << "no umbilic points found\n";
    return out.str();
  }
  for (const auto& p : report.points) {
    const bool at_origin = std::abs(p.location) < 1e-6;
    if (family == SurfaceFamily::Flat) {
      if (at_origin) {
        out << "origin: index " << p.index.str() << "\n";
      } else {
        out << "z=(" << fmt6(p.location.real()) << ", " << fmt6(p.location.imag())
            << "): index " << p.index.str() << "\n";
      }
    } else {
      const bool south_pole = p.chart == ChartLabel::Antipodal && std::abs(p.location) < 1e-2;
      if (south_pole) {
        out << "south pole (xi'=0): index " << p.index.str();
      } else {
        out << (p.chart == ChartLabel::Primary ? "xi=(" : "xi'=(")
            << fmt6(p.location.real()) << ", " << fmt6(p.location.imag())
            << "): index " << p.index.str();
      }
      out << "\n";
    }
    if (p.multiple_zero_warning) {
      out << "  warning: more than one candidate zero inside the index loop\n";
    }
  }
  if (family == SurfaceFamily::Sphere) {
    out << "total=" << report.total_index().str() << "=chi(S^2)\n";
  }
  return out.str();
}

std::string budget_report_csv(const BudgetReport& report, const std::string& family) {
  std::ostringstream out;
  out << kHeader;
  out << "family,lambda_used,epsilon_target,numeric_l2,closed_form_bound,tight_bound,"
         "satisfied\n";
  out << family << "," << fmt(report.lambda_used) << "," << fmt(report.epsilon_target)
      << "," << fmt(report.numeric_l2) << "," << fmt(report.closed_form_bound) << ","
      << fmt(report.tight_bound) << "," << (report.satisfied ? "1" : "0") << "\n";
  return out.str();
}

std::string budget_report_text(const BudgetReport& report, const std::string& family) {
  std::ostringstream out;
  out << family << " family L2 budget\n";
  out << "  lambda used      " << fmt6(report.lambda_used) << "\n";
  out << "  numeric  |g-g0|^2 integral  " << fmt(report.numeric_l2) << "\n";
  out << "  closed-form bound           " << fmt(report.closed_form_bound) << "\n";
  if (report.tight_bound != report.closed_form_bound) {
    out << "  tight shell bound           " << fmt(report.tight_bound) << "\n";
  }
  out << "  epsilon target              " << fmt(report.epsilon_target) << "\n";
  out << "  " << (report.satisfied ? "within budget" : "BUDGET VIOLATION") << "\n";
  return out.str();
}

std::string foliation_svg(const std::vector<Polyline>& curves,
                          const UmbilicReport& umbilics, const Region& region) {
  const double size = 800.0;
  const double margin = 20.0;
  const double su = (size - 2 * margin) / (region.umax - region.umin);
  const double sv = (size - 2 * margin) / (region.vmax - region.vmin);
  auto px = [&](Complex w) {
    const double x = margin + (w.real() - region.umin) * su;
    const double y = size - margin - (w.imag() - region.vmin) * sv;
    return std::pair<double, double>{x, y};
  };

  std::ostringstream out;
  out << "<svg xmlns=\"http://www.w3.org/2000/svg\" viewBox=\"0 0 " << size << " "
      << size << "\">\n";
  out << "<rect width=\"" << size << "\" height=\"" << size
      << "\" fill=\"white\"/>\n";
  for (const auto& curve : curves) {
    if (curve.size() < 2) continue;
    out << "<polyline fill=\"none\" stroke=\"#2060a0\" stroke-width=\"1\" points=\"";
    for (const auto& w : curve) {
      const auto [x, y] = px(w);
      out << fmt6(x) << "," << fmt6(y) << " ";
    }
    out << "\"/>\n";
  }
  for (const auto& p : umbilics.points) {
    const auto [x, y] = px(p.location);
    out << "<circle cx=\"" << fmt6(x) << "\" cy=\"" << fmt6(y)
        << "\" r=\"5\" fill=\"#c03020\"/>\n";
    out << "<text x=\"" << fmt6(x + 8) << "\" y=\"" << fmt6(y - 8)
        << "\" font-size=\"16\" fill=\"#c03020\">" << p.index.str() << "</text>\n";
  }
  out << "</svg>\n";
  return out.str();
}

void write_file_atomic(const std::string& path, const std::string& content) {
  const std::string tmp = path + ".tmp";
  {
    std::ofstream file(tmp, std::ios::binary | std::ios::trunc);
    if (!file) throw std::runtime_error("cannot open " + tmp + " for writing");
    file << content;
    if (!file.good()) throw std::runtime_error("write failed for " + tmp);
  }
  std::filesystem::rename(tmp, path);
}

}  // namespace umbilic
