#ifndef MORPHDET_METRICS_SCORES_HPP
#define MORPHDET_METRICS_SCORES_HPP

#include <optional>
#include <vector>

namespace morphdet {

// Verification scores under the fixed polarity "higher score => accept".
struct ScoreSet {
  std::vector<double> genuine;
  std::vector<double> impostor;
};

// Licit scores plus attack-probe scores of the tampered scenario.
struct VulnScoreSet {
  ScoreSet licit;
  std::vector<double> attack;
};

struct EvalSummary {
  double eer = 0.0;
  double eer_threshold = 0.0;
  double far_at_threshold = 0.0;
  double frr_at_threshold = 0.0;
  double frr_at_far10 = 0.0;
  std::optional<double> attack_far;
};

struct EerResult {
  double eer = 0.0;
  double threshold = 0.0;
  double far = 0.0;
  double frr = 0.0;
};

struct FrrAtFarResult {
  double frr = 0.0;
  double threshold = 0.0;
  double far = 0.0;
};

struct DetPoint {
  double threshold = 0.0;
  double far = 0.0;
  double frr = 0.0;
};

// Accept rule: score >= theta.
double far_at(const ScoreSet& s, double theta);
double frr_at(const ScoreSet& s, double theta);

// Candidate threshold grid shared by eer / frr_at_far / det_points:
// sorted unique scores of both lists, midpoints between consecutive
// unique scores, plus one value above the maximum (max + 1) so a
// zero-FAR operating point always exists.
std::vector<double> candidate_thresholds(const ScoreSet& s);

// Discrete EER: sweep the candidate grid, pick the threshold minimizing
// |FAR - FRR|, ties broken by smaller (FAR+FRR)/2, then smaller theta;
// EER = (FAR + FRR) / 2 at that threshold.
EerResult eer(const ScoreSet& s);

// Smallest candidate threshold with FAR <= far_target; returns FRR there.
FrrAtFarResult frr_at_far(const ScoreSet& s, double far_target = 0.10);

// Fraction of attack scores accepted at the licit EER threshold.
double vulnerability_far(const VulnScoreSet& v);

// Uniform-width bins over [lo, hi]; right-open except the last bin.
// Out-of-range scores are dropped.
std::vector<long> histogram(const std::vector<double>& scores, int bins,
                            double lo, double hi);

// (FAR, FRR) at every candidate threshold, in increasing threshold order.
std::vector<DetPoint> det_points(const ScoreSet& s);

// EER + threshold + FRR@FAR10% in one pass.
EvalSummary summarize(const ScoreSet& s, double far_target = 0.10);

}  // namespace morphdet

#endif
