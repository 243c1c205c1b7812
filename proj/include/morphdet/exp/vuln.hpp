#ifndef MORPHDET_EXP_VULN_HPP
#define MORPHDET_EXP_VULN_HPP

#include <string>
#include <vector>

#include "morphdet/exp/manifest.hpp"
#include "morphdet/metrics/score_io.hpp"
#include "morphdet/metrics/scores.hpp"

namespace morphdet {

struct VulnHistogram {
  double lo = -1.0;
  double hi = 1.0;
  std::vector<long> genuine;
  std::vector<long> zero_effort;
  std::vector<long> attack;
};

struct VulnRunResult {
  EvalSummary summary;  // licit metrics plus attack_far
  VulnScoreSet scores;
  std::vector<ScoreLine> licit_lines;
  std::vector<ScoreLine> attack_lines;
  VulnHistogram histogram;
};

// Licit protocol -> EER and its threshold; tampered protocol -> attack
// FAR at that threshold; histograms of the three score populations over
// [-1, 1].
VulnRunResult run_vulnerability_experiment(const DatasetManifest& manifest,
                                           int bins = 40);

// Writes licit/attack score files, a summary JSON, a histogram CSV and
// a histogram SVG into out_dir.
void write_vuln_outputs(const VulnRunResult& result,
                        const std::string& out_dir,
                        const std::string& label = "vuln");

}  // namespace morphdet

#endif
