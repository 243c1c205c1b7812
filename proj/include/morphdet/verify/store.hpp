#ifndef MORPHDET_VERIFY_STORE_HPP
#define MORPHDET_VERIFY_STORE_HPP

#include <string>
#include <vector>

namespace morphdet {

// Per-video embedding files. Binary layout (little-endian):
//   magic "MDEMBED1" (8 bytes), u32 version, u32 dim, u32 frame count,
//   then frame_count * dim f64 values, frame-major.
// A CSV fallback (one frame per row, dim columns) is accepted when the
// magic is absent.
void write_embedding_file(const std::vector<std::vector<double>>& frames,
                          const std::string& path);
std::vector<std::vector<double>> read_embedding_file(const std::string& path);

}  // namespace morphdet

#endif
