#include "morphdet/verify/protocol.hpp"

#include <algorithm>
#include <stdexcept>

#include "morphdet/verify/store.hpp"

namespace morphdet {

namespace {

std::string store_key(const std::string& subject, const std::string& video) {
  return subject + "/" + video;
}

const std::vector<Embedding>& embeddings_for(const EmbeddingStore& store,
                                             const std::string& subject,
                                             const std::string& video) {
  const auto it = store.find(store_key(subject, video));
  if (it == store.end()) {
    throw std::runtime_error("protocol: no embeddings for " +
                             store_key(subject, video));
  }
  return it->second;
}

void sort_lines(std::vector<ScoreLine>& lines) {
  std::sort(lines.begin(), lines.end(),
            [](const ScoreLine& a, const ScoreLine& b) {
              if (a.claimed != b.claimed) return a.claimed < b.claimed;
              if (a.truth != b.truth) return a.truth < b.truth;
              return a.probe < b.probe;
            });
}

}  // namespace

EmbeddingStore load_embedding_store(const DatasetManifest& manifest) {
  EmbeddingStore store;
  std::vector<std::string> missing;
  for (const auto& subject : manifest.subjects) {
    for (const auto& video : subject.videos) {
      if (video.embedding.empty()) continue;
      try {
        const auto frames =
            read_embedding_file(manifest.resolve(video.embedding));
        std::vector<Embedding> embs;
        embs.reserve(frames.size());
        for (std::size_t i = 0; i < frames.size(); ++i) {
          embs.push_back(
              {frames[i], subject.id, video.id, std::to_string(i)});
        }
        store[store_key(subject.id, video.id)] = std::move(embs);
      } catch (const std::exception& e) {
        missing.push_back(store_key(subject.id, video.id) + ": " + e.what());
      }
    }
  }
  if (!missing.empty()) {
    std::string msg = "protocol: embedding load failures:";
    for (const auto& m : missing) msg += "\n  " + m;
    throw std::runtime_error(msg);
  }
  return store;
}

std::map<std::string, SubjectModel> enroll_all(const DatasetManifest& manifest,
                                               const EmbeddingStore& store) {
  std::map<std::string, SubjectModel> models;
  for (const auto& subject : manifest.subjects) {
    std::vector<Embedding> enrollment;
    for (const auto& video : subject.videos) {
      if (video.role != VideoRole::kEnroll) continue;
      const auto& embs = embeddings_for(store, subject.id, video.id);
      enrollment.insert(enrollment.end(), embs.begin(), embs.end());
    }
    if (!enrollment.empty()) {
      models[subject.id] = enroll(subject.id, enrollment);
    }
  }
  return models;
}

std::vector<ScoreLine> run_licit_protocol(const DatasetManifest& manifest,
                                          const EmbeddingStore& store) {
  const auto models = enroll_all(manifest, store);
  if (models.empty()) {
    throw std::runtime_error("protocol: no subject has enrollment videos");
  }
  std::vector<ScoreLine> lines;
  for (const auto& subject : manifest.subjects) {
    for (const auto& video : subject.videos) {
      if (video.role != VideoRole::kProbe) continue;
      const auto& embs = embeddings_for(store, subject.id, video.id);
      for (const auto& [model_id, model] : models) {
        ScoreLine l;
        l.claimed = model_id;
        l.truth = subject.id;
        l.probe = video.id;
        l.score = score_probe(model, embs);
        lines.push_back(std::move(l));
      }
    }
  }
  sort_lines(lines);
  return lines;
}

std::vector<ScoreLine> run_tampered_protocol(const DatasetManifest& manifest,
                                             const EmbeddingStore& store) {
  const auto models = enroll_all(manifest, store);
  std::vector<ScoreLine> lines;
  for (const auto& subject : manifest.subjects) {
    for (const auto& video : subject.videos) {
      if (video.role != VideoRole::kAttack) continue;
      const auto it = models.find(video.attack_target);
      if (it == models.end()) {
        throw std::runtime_error("protocol: attack video " + subject.id + "/" +
                                 video.id + " claims unknown subject '" +
                                 video.attack_target + "'");
      }
      const auto& embs = embeddings_for(store, subject.id, video.id);
      ScoreLine l;
      l.claimed = video.attack_target;
      l.truth = subject.id;
      l.probe = video.id;
      l.score = score_probe(it->second, embs);
      l.attack = true;
      lines.push_back(std::move(l));
    }
  }
  sort_lines(lines);
  return lines;
}

}  // namespace morphdet
