#include "morphdet/iqm/registry.hpp"

#include <stdexcept>

namespace morphdet {

const std::vector<std::string>& iqm_registry_names() {
  static const std::vector<std::string> names = {
      // full-reference, gray
      "mse", "psnr", "snr", "sc", "md", "ad", "nae", "ramd", "lmse", "nxc",
      // full-reference, color
      "mas", "mams",
      // full-reference, edge / corner / spectral / gradient / structural
      "ted", "tcd", "sme", "spe", "gme", "gpe", "ssim",
      // no-reference
      "hlfi", "blur_crete", "blur_marziliano", "specularity_ratio",
      "chroma_moment_1", "chroma_moment_2", "chroma_moment_3",
      "chroma_moment_4", "chroma_moment_5", "chroma_moment_6",
      "color_diversity"};
  return names;
}

std::size_t iqm_registry_size() { return iqm_registry_names().size(); }

std::size_t iqm_registry_index(const std::string& name) {
  const auto& names = iqm_registry_names();
  for (std::size_t i = 0; i < names.size(); ++i) {
    if (names[i] == name) return i;
  }
  throw std::invalid_argument("iqm registry: unknown measure '" + name + "'");
}

std::uint64_t iqm_registry_hash() {
  std::uint64_t h = 14695981039346656037ull;
  bool first = true;
  for (const std::string& name : iqm_registry_names()) {
    if (!first) {
      h ^= static_cast<std::uint64_t>(',');
      h *= 1099511628211ull;
    }
    first = false;
    for (char c : name) {
      h ^= static_cast<std::uint64_t>(static_cast<unsigned char>(c));
      h *= 1099511628211ull;
    }
  }
  return h;
}

}  // namespace morphdet
