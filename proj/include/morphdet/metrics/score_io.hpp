#ifndef MORPHDET_METRICS_SCORE_IO_HPP
#define MORPHDET_METRICS_SCORE_IO_HPP

#include <string>
#include <vector>

#include "morphdet/metrics/scores.hpp"

namespace morphdet {

// One verification trial. A trial is genuine iff claimed == truth.
// Attack trials carry a literal "attack" marker as a fifth column.
struct ScoreLine {
  std::string claimed;
  std::string truth;
  std::string probe;
  double score = 0.0;
  bool attack = false;
};

// Score files are whitespace-separated text, one line per trial:
//   <claimed-identity> <true-identity> <probe-id> <score> [attack]
// Scores are written with enough digits to round-trip exactly.
void write_score_file(const std::vector<ScoreLine>& lines,
                      const std::string& path);
std::vector<ScoreLine> read_score_file(const std::string& path);

// Splits licit lines into genuine/impostor by claimed == truth; attack
// lines go to the attack list.
VulnScoreSet to_vuln_score_set(const std::vector<ScoreLine>& lines);
ScoreSet to_score_set(const std::vector<ScoreLine>& lines);

std::string format_score(double v);

}  // namespace morphdet

#endif
