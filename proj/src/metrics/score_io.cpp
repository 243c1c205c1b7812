#include "morphdet/metrics/score_io.hpp"

#include <cstdio>
#include <fstream>
#include <sstream>
#include <stdexcept>

namespace morphdet {

std::string format_score(double v) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

void write_score_file(const std::vector<ScoreLine>& lines,
                      const std::string& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("score file: cannot open " + path);
  for (const ScoreLine& l : lines) {
    out << l.claimed << ' ' << l.truth << ' ' << l.probe << ' '
        << format_score(l.score);
    if (l.attack) out << " attack";
    out << '\n';
  }
  if (!out) throw std::runtime_error("score file: write failed for " + path);
}

std::vector<ScoreLine> read_score_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("score file: cannot open " + path);
  std::vector<ScoreLine> lines;
  std::string raw;
  std::size_t lineno = 0;
  while (std::getline(in, raw)) {
    ++lineno;
    if (raw.empty()) continue;
    std::istringstream ss(raw);
    ScoreLine l;
    std::string marker;
    if (!(ss >> l.claimed >> l.truth >> l.probe >> l.score)) {
      throw std::runtime_error("score file: bad line " +
                               std::to_string(lineno) + " in " + path);
    }
    if (ss >> marker) {
      if (marker != "attack") {
        throw std::runtime_error("score file: unexpected marker '" + marker +
                                 "' at line " + std::to_string(lineno));
      }
      l.attack = true;
    }
    lines.push_back(std::move(l));
  }
  return lines;
}

ScoreSet to_score_set(const std::vector<ScoreLine>& lines) {
  ScoreSet s;
  for (const ScoreLine& l : lines) {
    if (l.attack) continue;
    if (l.claimed == l.truth) {
      s.genuine.push_back(l.score);
    } else {
      s.impostor.push_back(l.score);
    }
  }
  return s;
}

VulnScoreSet to_vuln_score_set(const std::vector<ScoreLine>& lines) {
  VulnScoreSet v;
  v.licit = to_score_set(lines);
  for (const ScoreLine& l : lines) {
    if (l.attack) v.attack.push_back(l.score);
  }
  return v;
}

}  // namespace morphdet
