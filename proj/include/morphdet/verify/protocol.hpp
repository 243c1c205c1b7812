#ifndef MORPHDET_VERIFY_PROTOCOL_HPP
#define MORPHDET_VERIFY_PROTOCOL_HPP

#include <map>
#include <string>
#include <vector>

#include "morphdet/exp/manifest.hpp"
#include "morphdet/metrics/score_io.hpp"
#include "morphdet/verify/embedding.hpp"

namespace morphdet {

// Read-only per-video embedding access, keyed "<subject>/<video>".
// load_embedding_store materializes every embedding file referenced by
// the manifest; missing files are reported together before aborting.
using EmbeddingStore = std::map<std::string, std::vector<Embedding>>;

EmbeddingStore load_embedding_store(const DatasetManifest& manifest);

// Enrollment models for every subject with enroll videos (mean of all
// their enrollment frames).
std::map<std::string, SubjectModel> enroll_all(const DatasetManifest& manifest,
                                               const EmbeddingStore& store);

// Licit scenario: each subject's probe videos against the subject's own
// model (genuine) and against every other enrolled subject's model
// (zero-effort impostor). Lines are sorted by claimed id, true id,
// probe id so reruns are byte-identical.
std::vector<ScoreLine> run_licit_protocol(const DatasetManifest& manifest,
                                          const EmbeddingStore& store);

// Tampered scenario: each attack video scored against its claimed
// (target) subject's licit model; results carry the attack marker.
std::vector<ScoreLine> run_tampered_protocol(const DatasetManifest& manifest,
                                             const EmbeddingStore& store);

}  // namespace morphdet

#endif
