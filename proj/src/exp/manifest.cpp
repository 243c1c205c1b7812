#include "morphdet/exp/manifest.hpp"

#include <filesystem>
#include <fstream>
#include <set>
#include <stdexcept>

#include <nlohmann/json.hpp>

namespace fs = std::filesystem;
using nlohmann::json;

namespace morphdet {

namespace {

VideoRole role_from_string(const std::string& s) {
  if (s == "enroll") return VideoRole::kEnroll;
  if (s == "probe") return VideoRole::kProbe;
  if (s == "attack") return VideoRole::kAttack;
  throw std::runtime_error("manifest: unknown role '" + s + "'");
}

std::string role_to_string(VideoRole r) {
  switch (r) {
    case VideoRole::kEnroll: return "enroll";
    case VideoRole::kProbe: return "probe";
    case VideoRole::kAttack: return "attack";
  }
  return "probe";
}

QualityTag quality_from_string(const std::string& s) {
  if (s == "original") return QualityTag::kOriginal;
  if (s == "LQ") return QualityTag::kLq;
  if (s == "HQ") return QualityTag::kHq;
  throw std::runtime_error("manifest: unknown quality '" + s + "'");
}

std::string quality_to_string(QualityTag q) {
  switch (q) {
    case QualityTag::kOriginal: return "original";
    case QualityTag::kLq: return "LQ";
    case QualityTag::kHq: return "HQ";
  }
  return "original";
}

BBox bbox_from_json(const json& j) {
  if (!j.is_array() || j.size() != 4) {
    throw std::runtime_error("manifest: bbox must be [x, y, w, h]");
  }
  return {j[0].get<int>(), j[1].get<int>(), j[2].get<int>(), j[3].get<int>()};
}

}  // namespace

std::optional<BBox> VideoEntry::bbox_for_frame(std::size_t frame_index) const {
  if (bboxes.empty()) return std::nullopt;
  if (bboxes.size() == 1) return bboxes[0];
  if (frame_index < bboxes.size()) return bboxes[frame_index];
  return std::nullopt;
}

const SubjectEntry* DatasetManifest::find_subject(const std::string& id) const {
  for (const auto& s : subjects) {
    if (s.id == id) return &s;
  }
  return nullptr;
}

std::string DatasetManifest::resolve(const std::string& relative_path) const {
  if (relative_path.empty() || fs::path(relative_path).is_absolute() ||
      base_dir.empty()) {
    return relative_path;
  }
  return (fs::path(base_dir) / relative_path).string();
}

const char* manifest_error_name(ManifestErrorCode code) {
  switch (code) {
    case ManifestErrorCode::kBadSchema: return "bad-schema";
    case ManifestErrorCode::kDuplicateSubject: return "duplicate-subject";
    case ManifestErrorCode::kDuplicateVideo: return "duplicate-video";
    case ManifestErrorCode::kOverlappingRoles: return "overlapping-roles";
    case ManifestErrorCode::kDanglingAttackTarget:
      return "dangling-attack-target";
    case ManifestErrorCode::kMissingFile: return "missing-file";
    case ManifestErrorCode::kBadBBoxCount: return "bad-bbox-count";
  }
  return "unknown";
}

DatasetManifest load_manifest(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("manifest: cannot open " + path);
  json j;
  try {
    in >> j;
  } catch (const json::exception& e) {
    throw std::runtime_error("manifest: malformed JSON in " + path + ": " +
                             e.what());
  }

  DatasetManifest m;
  m.base_dir = fs::path(path).parent_path().string();
  m.schema_version = j.value("schema_version", 1);
  if (m.schema_version != 1) {
    throw std::runtime_error("manifest: unsupported schema_version");
  }
  if (!j.contains("subjects") || !j["subjects"].is_array()) {
    throw std::runtime_error("manifest: missing subjects array");
  }
  for (const json& js : j["subjects"]) {
    SubjectEntry subject;
    subject.id = js.at("id").get<std::string>();
    for (const json& jv : js.value("videos", json::array())) {
      VideoEntry v;
      v.id = jv.at("id").get<std::string>();
      v.role = role_from_string(jv.value("role", "probe"));
      v.quality = quality_from_string(jv.value("quality", "original"));
      for (const json& f : jv.value("frames", json::array())) {
        v.frames.push_back(f.get<std::string>());
      }
      if (jv.contains("bbox")) v.bboxes.push_back(bbox_from_json(jv["bbox"]));
      if (jv.contains("bboxes")) {
        for (const json& b : jv["bboxes"]) {
          v.bboxes.push_back(bbox_from_json(b));
        }
      }
      v.embedding = jv.value("embedding", "");
      v.attack_target = jv.value("attack_target", "");
      subject.videos.push_back(std::move(v));
    }
    m.subjects.push_back(std::move(subject));
  }
  return m;
}

std::vector<ManifestError> validate_manifest(const DatasetManifest& m) {
  std::vector<ManifestError> errors;
  std::set<std::string> subject_ids;

  for (const auto& subject : m.subjects) {
    if (!subject_ids.insert(subject.id).second) {
      errors.push_back({ManifestErrorCode::kDuplicateSubject, subject.id});
    }
  }
  for (const auto& subject : m.subjects) {
    std::set<std::string> enroll_ids, probe_ids, all_ids;
    for (const auto& v : subject.videos) {
      if (!all_ids.insert(v.id).second) {
        errors.push_back(
            {ManifestErrorCode::kDuplicateVideo, subject.id + "/" + v.id});
      }
      if (v.role == VideoRole::kEnroll) enroll_ids.insert(v.id);
      if (v.role == VideoRole::kProbe) probe_ids.insert(v.id);
      if (v.role == VideoRole::kAttack) {
        if (v.attack_target.empty() || !m.find_subject(v.attack_target)) {
          errors.push_back({ManifestErrorCode::kDanglingAttackTarget,
                            subject.id + "/" + v.id + " -> '" +
                                v.attack_target + "'"});
        }
      }
      if (!v.bboxes.empty() && v.bboxes.size() != 1 &&
          v.bboxes.size() != v.frames.size()) {
        errors.push_back(
            {ManifestErrorCode::kBadBBoxCount, subject.id + "/" + v.id});
      }
      for (const auto& frame : v.frames) {
        if (!fs::exists(m.resolve(frame))) {
          errors.push_back({ManifestErrorCode::kMissingFile, frame});
        }
      }
      if (!v.embedding.empty() && !fs::exists(m.resolve(v.embedding))) {
        errors.push_back({ManifestErrorCode::kMissingFile, v.embedding});
      }
    }
    for (const auto& id : enroll_ids) {
      if (probe_ids.count(id)) {
        errors.push_back(
            {ManifestErrorCode::kOverlappingRoles, subject.id + "/" + id});
      }
    }
  }
  return errors;
}

void save_manifest(const DatasetManifest& m, const std::string& path) {
  json j;
  j["schema_version"] = m.schema_version;
  j["subjects"] = json::array();
  for (const auto& subject : m.subjects) {
    json js;
    js["id"] = subject.id;
    js["videos"] = json::array();
    for (const auto& v : subject.videos) {
      json jv;
      jv["id"] = v.id;
      jv["role"] = role_to_string(v.role);
      jv["quality"] = quality_to_string(v.quality);
      jv["frames"] = v.frames;
      if (v.bboxes.size() == 1) {
        jv["bbox"] = {v.bboxes[0].x, v.bboxes[0].y, v.bboxes[0].w,
                      v.bboxes[0].h};
      } else if (!v.bboxes.empty()) {
        json arr = json::array();
        for (const auto& b : v.bboxes) arr.push_back({b.x, b.y, b.w, b.h});
        jv["bboxes"] = arr;
      }
      if (!v.embedding.empty()) jv["embedding"] = v.embedding;
      if (!v.attack_target.empty()) jv["attack_target"] = v.attack_target;
      js["videos"].push_back(std::move(jv));
    }
    j["subjects"].push_back(std::move(js));
  }
  std::ofstream out(path);
  if (!out) throw std::runtime_error("manifest: cannot open " + path);
  out << j.dump(2) << '\n';
  if (!out) throw std::runtime_error("manifest: write failed " + path);
}

}  // namespace morphdet
