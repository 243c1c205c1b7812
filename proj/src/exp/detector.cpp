#include "morphdet/exp/detector.hpp"

#include <algorithm>
#include <cstring>
#include <fstream>
#include <set>
#include <stdexcept>

#include "morphdet/iqm/measures.hpp"
#include "morphdet/learn/model_io.hpp"
#include "morphdet/raster/netpbm.hpp"

namespace morphdet {

namespace {

constexpr char kDetectorMagic[8] = {'M', 'D', 'D', 'E', 'T', 'E', 'C', '1'};
constexpr std::uint32_t kDetectorVersion = 1;

bool quality_selected(QualityTag q, const std::string& wanted) {
  if (wanted == "all") return true;
  if (wanted == "LQ") return q == QualityTag::kLq;
  return q == QualityTag::kHq;
}

bool is_original(const VideoEntry& v) { return v.role != VideoRole::kAttack; }

std::string video_key(const SubjectEntry& s, const VideoEntry& v) {
  return s.id + "/" + v.id;
}

// Sampled per-frame rows for one video, from the cache when available.
std::vector<std::vector<double>> sampled_rows(const DatasetManifest& manifest,
                                              const SubjectEntry& subject,
                                              const VideoEntry& video,
                                              const ExperimentConfig& cfg,
                                              const FeatureCache* cache) {
  std::vector<std::vector<double>> rows;
  if (cache != nullptr) {
    const auto it = cache->find(video_key(subject, video));
    if (it == cache->end()) {
      throw std::runtime_error("detector: no cached features for " +
                               video_key(subject, video));
    }
    rows = it->second.rows;
  } else {
    rows = video_features(manifest, subject, video, cfg.detector, cfg);
  }
  const auto idx = sample_frame_indices(rows.size(), cfg.frames_per_video);
  std::vector<std::vector<double>> sampled;
  sampled.reserve(idx.size());
  for (std::size_t i : idx) sampled.push_back(rows[i]);
  return sampled;
}

}  // namespace

std::vector<std::size_t> sample_frame_indices(std::size_t frame_count, int n) {
  if (frame_count == 0) {
    throw std::invalid_argument("sample_frame_indices: empty video");
  }
  if (n < 1) throw std::invalid_argument("sample_frame_indices: n < 1");
  std::vector<std::size_t> idx;
  if (frame_count <= static_cast<std::size_t>(n)) {
    idx.resize(frame_count);
    for (std::size_t i = 0; i < frame_count; ++i) idx[i] = i;
    return idx;
  }
  idx.reserve(static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i) {
    idx.push_back(static_cast<std::size_t>(i) * frame_count /
                  static_cast<std::size_t>(n));
  }
  return idx;
}

std::vector<std::vector<double>> video_features(const DatasetManifest& manifest,
                                                const SubjectEntry& subject,
                                                const VideoEntry& video,
                                                DetectorKind kind,
                                                const ExperimentConfig& cfg) {
  if (video.frames.empty()) {
    throw std::runtime_error("detector: video " + video_key(subject, video) +
                             " has no frames");
  }
  std::vector<std::vector<double>> rows;
  rows.reserve(video.frames.size());
  for (std::size_t f = 0; f < video.frames.size(); ++f) {
    const RasterImage frame = read_netpbm(manifest.resolve(video.frames[f]));
    const auto bbox = video.bbox_for_frame(f);
    if (kind == DetectorKind::kPixelsPcaLda) {
      const RasterImage region = bbox ? crop(frame, *bbox) : frame;
      if (region.width > cfg.pixels_max_dim ||
          region.height > cfg.pixels_max_dim) {
        throw std::runtime_error(
            "detector: pixel crop exceeds pixels_max_dim for " +
            video_key(subject, video));
      }
      rows.push_back(to_grayscale(region).data);
    } else {
      rows.push_back(extract_iqm(frame, bbox, cfg.reference).values);
    }
  }
  return rows;
}

double DetectorModel::score(const std::vector<double>& features) const {
  if (features.size() != feature_dim) {
    throw std::invalid_argument("detector: feature dimension mismatch");
  }
  switch (kind) {
    case DetectorKind::kPixelsPcaLda:
    case DetectorKind::kIqmPcaLda:
      return lda_score(lda, pca_project(pca, features));
    case DetectorKind::kIqmSvm:
      return svm_score(svm, standardize(standardizer, features));
  }
  throw std::logic_error("detector: unknown kind");
}

DetectorModel train_detector(const ExperimentConfig& cfg,
                             const std::vector<std::vector<double>>& originals,
                             const std::vector<std::vector<double>>& morphs) {
  if (originals.empty() || morphs.empty()) {
    throw std::invalid_argument("train_detector: both classes required");
  }
  DetectorModel m;
  m.kind = cfg.detector;
  m.feature_dim = originals[0].size();

  if (cfg.detector == DetectorKind::kIqmSvm) {
    std::vector<std::vector<double>> X;
    std::vector<int> y;
    X.reserve(originals.size() + morphs.size());
    for (const auto& r : originals) {
      X.push_back(r);
      y.push_back(1);
    }
    for (const auto& r : morphs) {
      X.push_back(r);
      y.push_back(-1);
    }
    m.standardizer = fit_standardizer(X);
    for (auto& r : X) r = standardize(m.standardizer, r);
    m.svm = fit_linear_svm(X, y, cfg.svm_c);
    return m;
  }

  std::vector<std::vector<double>> pooled;
  pooled.reserve(originals.size() + morphs.size());
  pooled.insert(pooled.end(), originals.begin(), originals.end());
  pooled.insert(pooled.end(), morphs.begin(), morphs.end());
  m.pca = fit_pca(pooled, cfg.retained_variance);

  std::vector<std::vector<double>> pos, neg;
  pos.reserve(originals.size());
  neg.reserve(morphs.size());
  for (const auto& r : originals) pos.push_back(pca_project(m.pca, r));
  for (const auto& r : morphs) neg.push_back(pca_project(m.pca, r));
  m.lda = fit_lda(pos, neg);
  return m;
}

void save_detector(const DetectorModel& m, const std::string& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("detector model: cannot open " + path);
  out.write(kDetectorMagic, 8);
  io_put_u32(out, kDetectorVersion);
  io_put_u32(out, static_cast<std::uint32_t>(m.kind));
  io_put_u32(out, static_cast<std::uint32_t>(m.feature_dim));
  if (m.kind == DetectorKind::kIqmSvm) {
    write_model(out, m.standardizer);
    write_model(out, m.svm);
  } else {
    write_model(out, m.pca);
    write_model(out, m.lda);
  }
  if (!out) throw std::runtime_error("detector model: write failed " + path);
}

DetectorModel load_detector(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("detector model: cannot open " + path);
  char magic[8];
  in.read(magic, 8);
  if (!in || std::memcmp(magic, kDetectorMagic, 8) != 0) {
    throw std::runtime_error("detector model: bad magic in " + path);
  }
  if (io_get_u32(in) != kDetectorVersion) {
    throw std::runtime_error("detector model: unsupported version");
  }
  DetectorModel m;
  m.kind = static_cast<DetectorKind>(io_get_u32(in));
  m.feature_dim = io_get_u32(in);
  if (m.kind == DetectorKind::kIqmSvm) {
    m.standardizer = read_standardizer(in);
    m.svm = read_svm(in);
  } else {
    m.pca = read_pca(in);
    m.lda = read_lda(in);
  }
  return m;
}

DetectorRunResult run_detector_experiment(const ExperimentConfig& cfg,
                                          const DatasetManifest& manifest,
                                          const SplitPlan& split,
                                          const FeatureCache* cache) {
  cfg.validate();
  check_split(split, manifest);

  std::vector<std::vector<double>> train_orig, train_morph;
  std::set<std::string> used_subjects;
  for (const auto& subject : manifest.subjects) {
    if (!split.is_train(subject.id)) continue;
    for (const auto& video : subject.videos) {
      if (!is_original(video) &&
          !quality_selected(video.quality, cfg.quality)) {
        continue;
      }
      auto rows = sampled_rows(manifest, subject, video, cfg, cache);
      auto& dst = is_original(video) ? train_orig : train_morph;
      for (auto& r : rows) dst.push_back(std::move(r));
      used_subjects.insert(subject.id);
    }
  }
  // Split-leakage audit: every subject that contributed training rows
  // must be on the train side.
  for (const auto& id : used_subjects) {
    if (split.is_test(id)) {
      throw std::runtime_error("detector: split leakage, test subject '" + id +
                               "' reached training");
    }
  }
  if (train_orig.empty() || train_morph.empty()) {
    throw std::runtime_error(
        "detector: training needs both original and morph videos on the "
        "train side");
  }

  DetectorRunResult result;
  result.model = train_detector(cfg, train_orig, train_morph);
  result.train_original_frames = static_cast<long>(train_orig.size());
  result.train_morph_frames = static_cast<long>(train_morph.size());
  result.train_subjects_used.assign(used_subjects.begin(),
                                    used_subjects.end());

  const DetectorRunResult eval =
      eval_detector(cfg, manifest, split, result.model, cache);
  result.summary = eval.summary;
  result.test_scores = eval.test_scores;
  return result;
}

DetectorRunResult eval_detector(const ExperimentConfig& cfg,
                                const DatasetManifest& manifest,
                                const SplitPlan& split,
                                const DetectorModel& model,
                                const FeatureCache* cache) {
  cfg.validate();
  check_split(split, manifest);
  if (model.kind != cfg.detector) {
    throw std::runtime_error("detector: model kind does not match config");
  }

  DetectorRunResult result;
  result.model = model;
  ScoreSet set;
  for (const auto& subject : manifest.subjects) {
    if (!split.is_test(subject.id)) continue;
    for (const auto& video : subject.videos) {
      if (!is_original(video) &&
          !quality_selected(video.quality, cfg.quality)) {
        continue;
      }
      const auto rows = sampled_rows(manifest, subject, video, cfg, cache);
      double mean = 0.0;
      for (const auto& r : rows) mean += model.score(r);
      mean /= static_cast<double>(rows.size());

      ScoreLine line;
      line.claimed = "original";
      line.truth = is_original(video) ? "original" : "morph";
      line.probe = subject.id + "/" + video.id;
      line.score = mean;
      result.test_scores.push_back(std::move(line));
      (is_original(video) ? set.genuine : set.impostor).push_back(mean);
    }
  }
  if (set.genuine.empty() || set.impostor.empty()) {
    throw std::runtime_error(
        "detector: test side needs both original and morph videos");
  }
  std::sort(result.test_scores.begin(), result.test_scores.end(),
            [](const ScoreLine& a, const ScoreLine& b) {
              if (a.truth != b.truth) return a.truth < b.truth;
              return a.probe < b.probe;
            });
  result.summary = summarize(set);
  return result;
}

}  // namespace morphdet
