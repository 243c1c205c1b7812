#include "morphdet/metrics/scores.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace morphdet {

namespace {

void require_nonempty(const ScoreSet& s) {
  if (s.genuine.empty() || s.impostor.empty()) {
    throw std::invalid_argument("ScoreSet: genuine and impostor must be non-empty");
  }
  for (double v : s.genuine) {
    if (!std::isfinite(v)) throw std::invalid_argument("ScoreSet: non-finite genuine score");
  }
  for (double v : s.impostor) {
    if (!std::isfinite(v)) throw std::invalid_argument("ScoreSet: non-finite impostor score");
  }
}

// FAR/FRR at theta over pre-sorted ascending score lists, O(log n).
double far_sorted(const std::vector<double>& imp, double theta) {
  auto it = std::lower_bound(imp.begin(), imp.end(), theta);
  return static_cast<double>(imp.end() - it) / static_cast<double>(imp.size());
}

double frr_sorted(const std::vector<double>& gen, double theta) {
  auto it = std::lower_bound(gen.begin(), gen.end(), theta);
  return static_cast<double>(it - gen.begin()) / static_cast<double>(gen.size());
}

}  // namespace

double far_at(const ScoreSet& s, double theta) {
  require_nonempty(s);
  long n = 0;
  for (double v : s.impostor) {
    if (v >= theta) ++n;
  }
  return static_cast<double>(n) / static_cast<double>(s.impostor.size());
}

double frr_at(const ScoreSet& s, double theta) {
  require_nonempty(s);
  long n = 0;
  for (double v : s.genuine) {
    if (v < theta) ++n;
  }
  return static_cast<double>(n) / static_cast<double>(s.genuine.size());
}

std::vector<double> candidate_thresholds(const ScoreSet& s) {
  require_nonempty(s);
  std::vector<double> u;
  u.reserve(s.genuine.size() + s.impostor.size());
  u.insert(u.end(), s.genuine.begin(), s.genuine.end());
  u.insert(u.end(), s.impostor.begin(), s.impostor.end());
  std::sort(u.begin(), u.end());
  u.erase(std::unique(u.begin(), u.end()), u.end());

  std::vector<double> cand;
  cand.reserve(2 * u.size());
  for (std::size_t i = 0; i < u.size(); ++i) {
    cand.push_back(u[i]);
    if (i + 1 < u.size()) cand.push_back(0.5 * (u[i] + u[i + 1]));
  }
  cand.push_back(u.back() + 1.0);
  return cand;
}

EerResult eer(const ScoreSet& s) {
  const std::vector<double> cand = candidate_thresholds(s);
  std::vector<double> gen = s.genuine;
  std::vector<double> imp = s.impostor;
  std::sort(gen.begin(), gen.end());
  std::sort(imp.begin(), imp.end());

  EerResult best;
  double best_diff = -1.0;
  for (double theta : cand) {
    const double far = far_sorted(imp, theta);
    const double frr = frr_sorted(gen, theta);
    const double diff = std::fabs(far - frr);
    const double avg = 0.5 * (far + frr);
    // Candidates are visited in increasing order, so strict improvement
    // keeps the smallest theta among ties.
    if (best_diff < 0.0 || diff < best_diff ||
        (diff == best_diff && avg < 0.5 * (best.far + best.frr))) {
      best_diff = diff;
      best.threshold = theta;
      best.far = far;
      best.frr = frr;
    }
  }
  best.eer = 0.5 * (best.far + best.frr);
  return best;
}

FrrAtFarResult frr_at_far(const ScoreSet& s, double far_target) {
  if (far_target <= 0.0 || far_target >= 1.0) {
    throw std::invalid_argument("frr_at_far: far_target outside (0,1)");
  }
  const std::vector<double> cand = candidate_thresholds(s);
  std::vector<double> gen = s.genuine;
  std::vector<double> imp = s.impostor;
  std::sort(gen.begin(), gen.end());
  std::sort(imp.begin(), imp.end());

  for (double theta : cand) {
    const double far = far_sorted(imp, theta);
    if (far <= far_target) {
      return {frr_sorted(gen, theta), theta, far};
    }
  }
  // Unreachable: the above-max candidate has FAR 0.
  throw std::logic_error("frr_at_far: no candidate threshold found");
}

double vulnerability_far(const VulnScoreSet& v) {
  if (v.attack.empty()) {
    throw std::invalid_argument("vulnerability_far: attack list empty");
  }
  const double theta = eer(v.licit).threshold;
  long n = 0;
  for (double a : v.attack) {
    if (a >= theta) ++n;
  }
  return static_cast<double>(n) / static_cast<double>(v.attack.size());
}

std::vector<long> histogram(const std::vector<double>& scores, int bins,
                            double lo, double hi) {
  if (bins < 1) throw std::invalid_argument("histogram: bins < 1");
  if (!(lo < hi)) throw std::invalid_argument("histogram: lo must be < hi");
  std::vector<long> counts(static_cast<std::size_t>(bins), 0);
  const double width = (hi - lo) / bins;
  for (double v : scores) {
    if (v < lo || v > hi) continue;
    int b = static_cast<int>((v - lo) / width);
    if (b >= bins) b = bins - 1;  // v == hi lands in the last bin
    ++counts[static_cast<std::size_t>(b)];
  }
  return counts;
}

std::vector<DetPoint> det_points(const ScoreSet& s) {
  const std::vector<double> cand = candidate_thresholds(s);
  std::vector<double> gen = s.genuine;
  std::vector<double> imp = s.impostor;
  std::sort(gen.begin(), gen.end());
  std::sort(imp.begin(), imp.end());

  std::vector<DetPoint> pts;
  pts.reserve(cand.size());
  for (double theta : cand) {
    pts.push_back({theta, far_sorted(imp, theta), frr_sorted(gen, theta)});
  }
  return pts;
}

EvalSummary summarize(const ScoreSet& s, double far_target) {
  EvalSummary out;
  const EerResult e = eer(s);
  out.eer = e.eer;
  out.eer_threshold = e.threshold;
  out.far_at_threshold = e.far;
  out.frr_at_threshold = e.frr;
  out.frr_at_far10 = frr_at_far(s, far_target).frr;
  return out;
}

}  // namespace morphdet
