#ifndef MORPHDET_IQM_FEATURE_IO_HPP
#define MORPHDET_IQM_FEATURE_IO_HPP

#include <string>
#include <vector>

#include "morphdet/iqm/registry.hpp"

namespace morphdet {

// Feature tables hold one row per frame. Rows are IQM vectors in
// registry order, or raveled pixel features for the pixel detector.
struct FeatureTable {
  std::vector<std::string> column_names;
  std::vector<std::string> frame_ids;
  std::vector<std::vector<double>> rows;
};

// CSV layout: header "frame_id,<col...>", one row per frame. Values are
// written with round-trip precision.
void write_feature_csv(const FeatureTable& t, const std::string& path);
FeatureTable read_feature_csv(const std::string& path);

// Compact binary layout (all integers and reals little-endian):
//   magic "MDFEAT01" (8 bytes)
//   u32 version, u64 registry hash (0 when columns are not the IQM
//   registry), u32 row count, u32 column count
//   per row: u32 frame-id length, frame-id bytes, column doubles
void write_feature_bin(const FeatureTable& t, const std::string& path);
FeatureTable read_feature_bin(const std::string& path);

}  // namespace morphdet

#endif
