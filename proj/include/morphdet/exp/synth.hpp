#ifndef MORPHDET_EXP_SYNTH_HPP
#define MORPHDET_EXP_SYNTH_HPP

#include <cstdint>
#include <random>
#include <string>

#include "morphdet/exp/manifest.hpp"

namespace morphdet {

// Deterministic RNG used by the corpus generator: mt19937_64 output is
// fully specified by the standard, and uniform/gaussian draws are
// derived here explicitly because std::normal_distribution and friends
// are implementation-defined.
struct Rng {
  explicit Rng(std::uint64_t seed) : engine_(seed) {}

  std::uint64_t next_u64() { return engine_(); }
  double uniform() {  // [0, 1)
    return static_cast<double>(engine_() >> 11) * 0x1.0p-53;
  }
  double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }
  double gaussian();  // Box-Muller, mean 0 std 1

 private:
  std::mt19937_64 engine_;
  bool have_spare_ = false;
  double spare_ = 0.0;
};

// Dataset-free test corpus: textured "original" videos per subject plus
// degraded "fake" counterparts (Gaussian blur sigma in [1,2] and
// additive noise sigma in [2,6]), written as PPM frames with a manifest
// and synthetic per-video embeddings. Subjects are paired; each fake
// video claims the pair partner.
struct SynthParams {
  int subjects = 16;
  int enroll_videos = 2;
  int probe_videos = 8;
  int attack_videos = 10;
  int frames_per_video = 24;
  int frame_size = 32;
  int embedding_dim = 64;
  std::uint64_t seed = 1;
};

// Generates the corpus under out_dir and returns the manifest (also
// written to out_dir/manifest.json).
DatasetManifest generate_synth_corpus(const SynthParams& params,
                                      const std::string& out_dir);

}  // namespace morphdet

#endif
