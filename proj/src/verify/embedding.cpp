#include "morphdet/verify/embedding.hpp"

#include <cmath>
#include <stdexcept>

namespace morphdet {

namespace {
constexpr double kNormEps = 1e-12;
}

double cosine_similarity(const std::vector<double>& a,
                         const std::vector<double>& b) {
  if (a.size() != b.size() || a.empty()) {
    throw std::invalid_argument("cosine_similarity: dimension mismatch");
  }
  double ab = 0.0, aa = 0.0, bb = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    ab += a[i] * b[i];
    aa += a[i] * a[i];
    bb += b[i] * b[i];
  }
  if (aa < kNormEps || bb < kNormEps) {
    throw std::invalid_argument("cosine_similarity: zero-norm vector");
  }
  double s = ab / (std::sqrt(aa) * std::sqrt(bb));
  if (s > 1.0) s = 1.0;
  if (s < -1.0) s = -1.0;
  return s;
}

SubjectModel enroll(const std::string& subject_id,
                    const std::vector<Embedding>& embeddings) {
  if (embeddings.empty()) {
    throw std::invalid_argument("enroll: no embeddings for " + subject_id);
  }
  const std::size_t dim = embeddings[0].values.size();
  SubjectModel model;
  model.subject_id = subject_id;
  model.mean.assign(dim, 0.0);
  for (const Embedding& e : embeddings) {
    if (e.values.size() != dim) {
      throw std::invalid_argument("enroll: mixed embedding dimensions for " +
                                  subject_id);
    }
    for (std::size_t i = 0; i < dim; ++i) model.mean[i] += e.values[i];
    if (!e.video_id.empty() &&
        (model.enrollment_videos.empty() ||
         model.enrollment_videos.back() != e.video_id)) {
      model.enrollment_videos.push_back(e.video_id);
    }
  }
  double norm = 0.0;
  for (std::size_t i = 0; i < dim; ++i) {
    model.mean[i] /= static_cast<double>(embeddings.size());
    norm += model.mean[i] * model.mean[i];
  }
  if (norm < kNormEps) {
    throw std::invalid_argument("enroll: zero-norm model for " + subject_id);
  }
  return model;
}

double score_probe(const SubjectModel& model,
                   const std::vector<Embedding>& probe_frames) {
  if (probe_frames.empty()) {
    throw std::invalid_argument("score_probe: empty probe");
  }
  const std::size_t dim = probe_frames[0].values.size();
  std::vector<double> mean(dim, 0.0);
  for (const Embedding& e : probe_frames) {
    if (e.values.size() != dim) {
      throw std::invalid_argument("score_probe: mixed embedding dimensions");
    }
    for (std::size_t i = 0; i < dim; ++i) mean[i] += e.values[i];
  }
  for (double& v : mean) v /= static_cast<double>(probe_frames.size());
  return cosine_similarity(model.mean, mean);
}

}  // namespace morphdet
