#ifndef MORPHDET_IQM_REGISTRY_HPP
#define MORPHDET_IQM_REGISTRY_HPP

#include <cstdint>
#include <string>
#include <vector>

namespace morphdet {

// Versioned registry of image-quality measures. The order is the
// feature-vector layout and is frozen: appending new measures bumps the
// version, reordering is forbidden.
constexpr int kIqmRegistryVersion = 1;

const std::vector<std::string>& iqm_registry_names();
std::size_t iqm_registry_size();

// Index of a measure name in registry order; throws on unknown name.
std::size_t iqm_registry_index(const std::string& name);

// FNV-1a over the comma-joined names; identifies the registry layout in
// binary feature files.
std::uint64_t iqm_registry_hash();

// Feature vector in registry order for one frame.
struct IqmVector {
  std::string source_frame;
  std::vector<double> values;
};

}  // namespace morphdet

#endif
