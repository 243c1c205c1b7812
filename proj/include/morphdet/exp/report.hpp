#ifndef MORPHDET_EXP_REPORT_HPP
#define MORPHDET_EXP_REPORT_HPP

#include <string>
#include <vector>

#include "morphdet/exp/vuln.hpp"
#include "morphdet/metrics/scores.hpp"

namespace morphdet {

// One detector-table row (mirrors the evaluation summary CSV layout).
struct ReportRow {
  std::string database;
  std::string detector;
  double eer = 0.0;          // fraction
  double frr_at_far10 = 0.0; // fraction
};

// CSV with header "database,detector,eer_percent,frr_at_far10_percent";
// numbers are rendered as percentages with 2 decimals only here, all
// other outputs keep full precision.
void write_report_csv(const std::vector<ReportRow>& rows,
                      const std::string& path);

// Summary JSON written by eval-detector / run-vuln; report reads these
// back to assemble the CSV table.
void write_summary_json(const EvalSummary& summary, const std::string& database,
                        const std::string& detector, const std::string& path);
ReportRow read_summary_json(const std::string& path);

// Deterministic SVG: overlaid step histograms (genuine, zero-effort,
// attack) with a vertical EER-threshold marker.
void write_histogram_svg(const VulnHistogram& hist, double threshold,
                         const std::string& path);

void write_histogram_csv(const VulnHistogram& hist, const std::string& path);

}  // namespace morphdet

#endif
