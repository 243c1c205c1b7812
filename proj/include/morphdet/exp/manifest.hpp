#ifndef MORPHDET_EXP_MANIFEST_HPP
#define MORPHDET_EXP_MANIFEST_HPP

#include <optional>
#include <string>
#include <vector>

#include "morphdet/raster/image.hpp"

namespace morphdet {

enum class VideoRole { kEnroll, kProbe, kAttack };
enum class QualityTag { kOriginal, kLq, kHq };

struct VideoEntry {
  std::string id;
  VideoRole role = VideoRole::kProbe;
  QualityTag quality = QualityTag::kOriginal;
  std::vector<std::string> frames;     // image file paths
  std::vector<BBox> bboxes;            // empty, one shared, or per frame
  std::string embedding;               // optional embedding file path
  std::string attack_target;           // attack videos only

  std::optional<BBox> bbox_for_frame(std::size_t frame_index) const;
};

struct SubjectEntry {
  std::string id;
  std::vector<VideoEntry> videos;
};

// Declarative dataset description: subjects, videos, frame files,
// optional bboxes and embeddings, roles and quality tags. Paths are
// resolved relative to the manifest file location.
struct DatasetManifest {
  int schema_version = 1;
  std::string base_dir;
  std::vector<SubjectEntry> subjects;

  const SubjectEntry* find_subject(const std::string& id) const;
  std::string resolve(const std::string& relative_path) const;
};

// Validation failures carry a distinct stable code.
enum class ManifestErrorCode {
  kBadSchema,
  kDuplicateSubject,
  kDuplicateVideo,
  kOverlappingRoles,
  kDanglingAttackTarget,
  kMissingFile,
  kBadBBoxCount,
};

struct ManifestError {
  ManifestErrorCode code;
  std::string detail;
};

const char* manifest_error_name(ManifestErrorCode code);

// Parses the JSON manifest; throws std::runtime_error on malformed JSON
// or schema violations.
DatasetManifest load_manifest(const std::string& path);

// Eager validation: duplicate ids, per-subject enroll/probe overlap,
// dangling attack targets, missing referenced files, bbox count
// mismatches. Empty result means the manifest is usable.
std::vector<ManifestError> validate_manifest(const DatasetManifest& m);

void save_manifest(const DatasetManifest& m, const std::string& path);

}  // namespace morphdet

#endif
