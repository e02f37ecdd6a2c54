#include "revroles/report.hpp"

#include <algorithm>
#include <cstdio>
#include <vector>

#include "revroles/errors.hpp"

namespace revroles {

namespace {

std::string fixed3(double value) {
  char buf[48];
  std::snprintf(buf, sizeof(buf), "%.3f", value);
  return buf;
}

// Two-row table: header cells over value cells, columns padded to width.
std::string render_two_row_table(const std::string& corner_top,
                                 const std::string& corner_bottom,
                                 const std::vector<std::string>& headers,
                                 const std::vector<std::string>& values) {
  std::vector<std::size_t> widths(headers.size());
  for (std::size_t i = 0; i < headers.size(); ++i)
    widths[i] = std::max(headers[i].size(), values[i].size());
  const std::size_t corner_width =
      std::max(corner_top.size(), corner_bottom.size());

  const auto render_row = [&](const std::string& corner,
                              const std::vector<std::string>& cells) {
    std::string row = corner;
    row.append(corner_width - corner.size(), ' ');
    for (std::size_t i = 0; i < cells.size(); ++i) {
      row += " | ";
      row += cells[i];
      row.append(widths[i] - cells[i].size(), ' ');
    }
    row += "\n";
    return row;
  };
  return render_row(corner_top, headers) + render_row(corner_bottom, values);
}

}  // namespace

std::string significance_stars(double p_value) {
  if (p_value < 0.001) return "***";
  if (p_value < 0.01) return "**";
  if (p_value < 0.05) return "*";
  return "";
}

std::string format_r_p(double r, double p) {
  return fixed3(r) + "(" + fixed3(p) + ")";
}

std::string render_report(const ValidationReport& report) {
  if (report.role_partial.empty())
    fail(ErrorCode::Format, "report must have at least one role");
  if (report.k < 1)
    fail(ErrorCode::Format, "report must have k >= 1 roles");

  std::string out;
  std::vector<std::string> notes;

  out += "Variance across editors for each revision purpose (N=" +
         std::to_string(report.n) + ")\n";
  if (report.purpose_r2.empty()) {
    out += "  (no purposes present in the corpus)\n";
  } else {
    std::vector<std::string> headers;
    std::vector<std::string> values;
    for (const PurposeFit& fit : report.purpose_r2) {
      headers.emplace_back(to_string(fit.purpose));
      if (fit.fit) {
        values.push_back(fixed3(fit.fit->r_squared) +
                         significance_stars(fit.p_value));
      } else {
        values.emplace_back("n/a");
        notes.push_back(std::string(to_string(fit.purpose)) + ": " + fit.flag);
      }
    }
    out += render_two_row_table("Purpose", "R^2-value", headers, values);
  }
  for (const SkippedPurpose& skipped : report.skipped_purposes)
    out += "  skipped " + std::string(to_string(skipped.purpose)) + ": " +
           skipped.reason + "\n";
  for (const std::string& note : notes) out += "  note " + note + "\n";
  out += "\n";

  out += "Partial correlations between role probabilities and Score2 "
         "controlling Score1 (N=" +
         std::to_string(report.n) + ")\n";
  if (report.score_corr.r && report.score_corr.p) {
    out += "  Score1 vs Score2: " +
           format_r_p(*report.score_corr.r, *report.score_corr.p) + "\n";
  } else if (!report.score_corr.flag.empty()) {
    out += "  Score1 vs Score2: n/a (" + report.score_corr.flag + ")\n";
  }

  std::vector<std::string> headers;
  std::vector<std::string> values;
  std::vector<std::string> role_notes;
  for (const RolePartialEntry& entry : report.role_partial) {
    headers.push_back(entry.label.empty() ? "Topic " + std::to_string(entry.role)
                                          : entry.label);
    if (entry.result) {
      values.push_back(format_r_p(entry.result->r, entry.result->p_value));
    } else {
      values.emplace_back("n/a");
      role_notes.push_back(headers.back() + ": " + entry.flag);
    }
  }
  out += render_two_row_table("Editor Roles", "Corr(p-value)", headers, values);
  for (const std::string& note : role_notes) out += "  note " + note + "\n";
  return out;
}

}  // namespace revroles
