#ifndef MORPHDET_EXP_CONFIG_HPP
#define MORPHDET_EXP_CONFIG_HPP

#include <string>

#include "morphdet/iqm/measures.hpp"

namespace morphdet {

enum class DetectorKind { kPixelsPcaLda, kIqmPcaLda, kIqmSvm };

DetectorKind detector_kind_from_string(const std::string& s);
std::string detector_kind_to_string(DetectorKind k);

// Tunables of a detector experiment. Defaults follow the documented
// recipes: 99% retained variance for the pixel detector, 95% for
// IQM+PCA+LDA, C = 1 for the SVM, 20 scored frames per video.
struct ExperimentConfig {
  DetectorKind detector = DetectorKind::kIqmSvm;
  double retained_variance = 0.95;
  double svm_c = 1.0;
  int frames_per_video = 20;
  ReferenceParams reference;
  // Pixel features are grayscale raveled crops; frames larger than
  // pixels_max_dim per side are rejected to keep PCA tractable.
  int pixels_max_dim = 64;
  // Which fake-video quality feeds the negative class: "LQ", "HQ" or
  // "all" (pooled).
  std::string quality = "all";

  void validate() const;
};

// JSON file mirroring the struct; missing keys keep their defaults.
// CLI flags override loaded values (handled by the CLI layer).
ExperimentConfig load_config(const std::string& path);
void save_config(const ExperimentConfig& cfg, const std::string& path);

}  // namespace morphdet

#endif
