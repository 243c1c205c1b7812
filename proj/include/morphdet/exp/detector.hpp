#ifndef MORPHDET_EXP_DETECTOR_HPP
#define MORPHDET_EXP_DETECTOR_HPP

#include <map>
#include <string>
#include <vector>

#include "morphdet/exp/config.hpp"
#include "morphdet/exp/manifest.hpp"
#include "morphdet/exp/split.hpp"
#include "morphdet/iqm/feature_io.hpp"
#include "morphdet/learn/lda.hpp"
#include "morphdet/learn/pca.hpp"
#include "morphdet/learn/standardizer.hpp"
#include "morphdet/learn/svm.hpp"
#include "morphdet/metrics/score_io.hpp"
#include "morphdet/metrics/scores.hpp"

namespace morphdet {

// n uniformly spaced frame indices: floor(i * frame_count / n) for
// i in 0..n-1. Videos with fewer than n frames use all frames.
std::vector<std::size_t> sample_frame_indices(std::size_t frame_count, int n);

// Per-frame feature rows for one video (all frames, manifest order).
// kind selects raveled grayscale pixel crops or IQM vectors.
std::vector<std::vector<double>> video_features(const DatasetManifest& manifest,
                                                const SubjectEntry& subject,
                                                const VideoEntry& video,
                                                DetectorKind kind,
                                                const ExperimentConfig& cfg);

// Trained detector: preprocessing plus classifier, scored per frame.
// Higher score means more likely an untampered original.
struct DetectorModel {
  DetectorKind kind = DetectorKind::kIqmSvm;
  std::size_t feature_dim = 0;
  StandardizerModel standardizer;  // iqm-svm
  PcaModel pca;                    // *-pca-lda
  LdaModel lda;
  SvmModel svm;

  double score(const std::vector<double>& features) const;
};

DetectorModel train_detector(const ExperimentConfig& cfg,
                             const std::vector<std::vector<double>>& originals,
                             const std::vector<std::vector<double>>& morphs);

// Detector model container: magic "MDDETEC1", u32 version, u32 detector
// kind, u32 feature dim, then the embedded sub-model payloads.
void save_detector(const DetectorModel& m, const std::string& path);
DetectorModel load_detector(const std::string& path);

// Per-video feature tables keyed "<subject>/<video>", as produced by
// the extract-features command; used instead of recomputing features
// when provided.
using FeatureCache = std::map<std::string, FeatureTable>;

struct DetectorRunResult {
  DetectorModel model;
  EvalSummary summary;
  std::vector<ScoreLine> test_scores;  // one line per test video
  long train_original_frames = 0;
  long train_morph_frames = 0;
  std::vector<std::string> train_subjects_used;
};

// Full recipe: per-frame features on sampled frames, fit on Train
// subjects (originals positive, deep morphs negative), per-video Test
// score = mean per-frame score, EER and FRR@FAR10% over the Test
// videos. Training never sees Test subjects; the subjects actually used
// are recorded in the result for auditing. Score lines use claimed
// "original" with truth "original" or "morph".
DetectorRunResult run_detector_experiment(const ExperimentConfig& cfg,
                                          const DatasetManifest& manifest,
                                          const SplitPlan& split,
                                          const FeatureCache* cache = nullptr);

// Scores the Test side only, with an already trained model.
DetectorRunResult eval_detector(const ExperimentConfig& cfg,
                                const DatasetManifest& manifest,
                                const SplitPlan& split,
                                const DetectorModel& model,
                                const FeatureCache* cache = nullptr);

}  // namespace morphdet

#endif
