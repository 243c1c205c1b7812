#ifndef MORPHDET_VERIFY_EMBEDDING_HPP
#define MORPHDET_VERIFY_EMBEDDING_HPP

#include <string>
#include <vector>

namespace morphdet {

// One face-descriptor vector, precomputed upstream (e.g. a CNN layer
// output). Dimension is fixed per experiment.
struct Embedding {
  std::vector<double> values;
  std::string subject_id;
  std::string video_id;
  std::string frame_id;
};

// Per-subject enrollment model: the mean embedding over the enrollment
// frames.
struct SubjectModel {
  std::string subject_id;
  std::vector<double> mean;
  std::vector<std::string> enrollment_videos;
};

// a.b / (|a||b|), in [-1, 1]. Throws on dimension mismatch or a
// zero-norm input.
double cosine_similarity(const std::vector<double>& a,
                         const std::vector<double>& b);

// Arithmetic mean of the embeddings; throws on empty or mixed-dimension
// input and on a zero-norm mean.
SubjectModel enroll(const std::string& subject_id,
                    const std::vector<Embedding>& embeddings);

// Probe representation = mean of the frame embeddings; the score is
// cosine_similarity(model.mean, probe mean).
double score_probe(const SubjectModel& model,
                   const std::vector<Embedding>& probe_frames);

}  // namespace morphdet

#endif
