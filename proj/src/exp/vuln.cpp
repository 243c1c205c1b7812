#include "morphdet/exp/vuln.hpp"

#include <filesystem>
#include <stdexcept>

#include "morphdet/exp/report.hpp"
#include "morphdet/verify/protocol.hpp"

namespace fs = std::filesystem;

namespace morphdet {

VulnRunResult run_vulnerability_experiment(const DatasetManifest& manifest,
                                           int bins) {
  if (bins < 1) {
    throw std::invalid_argument("run_vulnerability_experiment: bins < 1");
  }
  const EmbeddingStore store = load_embedding_store(manifest);

  VulnRunResult result;
  result.licit_lines = run_licit_protocol(manifest, store);
  result.attack_lines = run_tampered_protocol(manifest, store);
  if (result.attack_lines.empty()) {
    throw std::runtime_error(
        "run_vulnerability_experiment: manifest has no attack videos");
  }

  result.scores.licit = to_score_set(result.licit_lines);
  for (const auto& l : result.attack_lines) {
    result.scores.attack.push_back(l.score);
  }

  result.summary = summarize(result.scores.licit);
  result.summary.attack_far = vulnerability_far(result.scores);

  result.histogram.lo = -1.0;
  result.histogram.hi = 1.0;
  result.histogram.genuine =
      histogram(result.scores.licit.genuine, bins, -1.0, 1.0);
  result.histogram.zero_effort =
      histogram(result.scores.licit.impostor, bins, -1.0, 1.0);
  result.histogram.attack = histogram(result.scores.attack, bins, -1.0, 1.0);
  return result;
}

void write_vuln_outputs(const VulnRunResult& result, const std::string& out_dir,
                        const std::string& label) {
  fs::create_directories(out_dir);
  const fs::path dir(out_dir);
  write_score_file(result.licit_lines, (dir / (label + "_licit.scores")).string());
  write_score_file(result.attack_lines,
                   (dir / (label + "_attack.scores")).string());
  write_summary_json(result.summary, label, "embedding-cosine",
                     (dir / (label + "_summary.json")).string());
  write_histogram_csv(result.histogram,
                      (dir / (label + "_histogram.csv")).string());
  write_histogram_svg(result.histogram, result.summary.eer_threshold,
                      (dir / (label + "_histogram.svg")).string());
}

}  // namespace morphdet
