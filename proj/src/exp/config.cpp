#include "morphdet/exp/config.hpp"

#include <fstream>
#include <stdexcept>

#include <nlohmann/json.hpp>

using nlohmann::json;

namespace morphdet {

DetectorKind detector_kind_from_string(const std::string& s) {
  if (s == "pixels-pca-lda") return DetectorKind::kPixelsPcaLda;
  if (s == "iqm-pca-lda") return DetectorKind::kIqmPcaLda;
  if (s == "iqm-svm") return DetectorKind::kIqmSvm;
  throw std::invalid_argument("unknown detector kind '" + s + "'");
}

std::string detector_kind_to_string(DetectorKind k) {
  switch (k) {
    case DetectorKind::kPixelsPcaLda: return "pixels-pca-lda";
    case DetectorKind::kIqmPcaLda: return "iqm-pca-lda";
    case DetectorKind::kIqmSvm: return "iqm-svm";
  }
  return "iqm-svm";
}

void ExperimentConfig::validate() const {
  if (retained_variance <= 0.0 || retained_variance > 1.0) {
    throw std::invalid_argument("config: retained_variance outside (0,1]");
  }
  if (svm_c <= 0.0) throw std::invalid_argument("config: svm_c must be > 0");
  if (frames_per_video < 1) {
    throw std::invalid_argument("config: frames_per_video must be >= 1");
  }
  if (reference.sigma <= 0.0 || reference.ksize < 3 ||
      reference.ksize % 2 == 0) {
    throw std::invalid_argument("config: bad reference blur parameters");
  }
  if (pixels_max_dim < 8) {
    throw std::invalid_argument("config: pixels_max_dim too small");
  }
  if (quality != "all" && quality != "LQ" && quality != "HQ") {
    throw std::invalid_argument("config: quality must be LQ, HQ or all");
  }
}

ExperimentConfig load_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("config: cannot open " + path);
  json j;
  try {
    in >> j;
  } catch (const json::exception& e) {
    throw std::runtime_error("config: malformed JSON in " + path + ": " +
                             e.what());
  }
  ExperimentConfig cfg;
  if (j.contains("detector")) {
    cfg.detector = detector_kind_from_string(j["detector"].get<std::string>());
  }
  cfg.retained_variance = j.value("retained_variance", cfg.retained_variance);
  cfg.svm_c = j.value("svm_c", cfg.svm_c);
  cfg.frames_per_video = j.value("frames_per_video", cfg.frames_per_video);
  cfg.reference.sigma = j.value("reference_sigma", cfg.reference.sigma);
  cfg.reference.ksize = j.value("reference_ksize", cfg.reference.ksize);
  cfg.pixels_max_dim = j.value("pixels_max_dim", cfg.pixels_max_dim);
  cfg.quality = j.value("quality", cfg.quality);
  cfg.validate();
  return cfg;
}

void save_config(const ExperimentConfig& cfg, const std::string& path) {
  json j;
  j["detector"] = detector_kind_to_string(cfg.detector);
  j["retained_variance"] = cfg.retained_variance;
  j["svm_c"] = cfg.svm_c;
  j["frames_per_video"] = cfg.frames_per_video;
  j["reference_sigma"] = cfg.reference.sigma;
  j["reference_ksize"] = cfg.reference.ksize;
  j["pixels_max_dim"] = cfg.pixels_max_dim;
  j["quality"] = cfg.quality;
  std::ofstream out(path);
  if (!out) throw std::runtime_error("config: cannot open " + path);
  out << j.dump(2) << '\n';
}

}  // namespace morphdet
