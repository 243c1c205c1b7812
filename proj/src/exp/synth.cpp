#include "morphdet/exp/synth.hpp"

#include <cmath>
#include <cstdio>
#include <filesystem>
#include <stdexcept>
#include <vector>

#include "morphdet/raster/filters.hpp"
#include "morphdet/raster/netpbm.hpp"
#include "morphdet/verify/store.hpp"

namespace fs = std::filesystem;

namespace morphdet {

double Rng::gaussian() {
  if (have_spare_) {
    have_spare_ = false;
    return spare_;
  }
  double u1 = uniform();
  while (u1 <= 1e-300) u1 = uniform();
  const double u2 = uniform();
  const double r = std::sqrt(-2.0 * std::log(u1));
  have_spare_ = true;
  spare_ = r * std::sin(2.0 * M_PI * u2);
  return r * std::cos(2.0 * M_PI * u2);
}

namespace {

// Per-subject texture recipe: a few random sinusoidal gratings per
// channel plus a fixed high-frequency dither pattern, so originals have
// real fine detail for the blur to destroy.
struct SubjectTexture {
  double base[3];
  double amp[3][4];
  double fx[4], fy[4], phase[4];
  double dither_amp = 18.0;
  std::uint64_t dither_key = 0;
};

SubjectTexture make_texture(Rng& rng) {
  SubjectTexture t;
  for (int c = 0; c < 3; ++c) t.base[c] = rng.uniform(70.0, 180.0);
  for (int k = 0; k < 4; ++k) {
    t.fx[k] = rng.uniform(0.5, 4.0);
    t.fy[k] = rng.uniform(0.5, 4.0);
    t.phase[k] = rng.uniform(0.0, 2.0 * M_PI);
    for (int c = 0; c < 3; ++c) t.amp[c][k] = rng.uniform(5.0, 30.0);
  }
  t.dither_key = rng.next_u64() | 1;
  return t;
}

// Deterministic pixel hash in [-1, 1]; gives every subject a static
// fine-grain pattern.
double dither(std::uint64_t key, int x, int y) {
  std::uint64_t h = key;
  h ^= static_cast<std::uint64_t>(x) * 0x9e3779b97f4a7c15ull;
  h = (h ^ (h >> 30)) * 0xbf58476d1ce4e5b9ull;
  h ^= static_cast<std::uint64_t>(y) * 0x94d049bb133111ebull;
  h = (h ^ (h >> 27)) * 0x2545f4914f6cdd1dull;
  h ^= h >> 31;
  return static_cast<double>(h >> 11) * 0x1.0p-53 * 2.0 - 1.0;
}

RasterImage render_frame(const SubjectTexture& t, int size, double shift_x,
                         double shift_y, double gain, Rng& rng,
                         double sensor_noise) {
  RasterImage img(size, size, 3);
  for (int y = 0; y < size; ++y) {
    for (int x = 0; x < size; ++x) {
      const double u = (x + shift_x) / static_cast<double>(size);
      const double v = (y + shift_y) / static_cast<double>(size);
      const double d = t.dither_amp * dither(t.dither_key, x, y);
      for (int c = 0; c < 3; ++c) {
        double val = t.base[c] + d;
        for (int k = 0; k < 4; ++k) {
          val += t.amp[c][k] *
                 std::sin(2.0 * M_PI * (t.fx[k] * u + t.fy[k] * v) +
                          t.phase[k]);
        }
        val = gain * val + sensor_noise * rng.gaussian();
        img.at(x, y, c) = std::clamp(val, 0.0, 255.0);
      }
    }
  }
  return img;
}

RasterImage degrade(const RasterImage& frame, double blur_sigma, int blur_ksize,
                    double noise_sigma, Rng& rng) {
  RasterImage out = gaussian_blur_color(frame, blur_sigma, blur_ksize);
  for (double& v : out.data) {
    v = std::clamp(v + noise_sigma * rng.gaussian(), 0.0, 255.0);
  }
  return out;
}

std::string frame_name(int f) {
  char buf[16];
  std::snprintf(buf, sizeof(buf), "%03d.ppm", f);
  return buf;
}

std::vector<double> embedding_center(Rng& rng, int dim) {
  std::vector<double> c(dim);
  double norm = 0.0;
  for (double& v : c) {
    v = rng.gaussian();
    norm += v * v;
  }
  norm = std::sqrt(norm);
  for (double& v : c) v /= norm;
  return c;
}

std::vector<std::vector<double>> embedding_frames(
    const std::vector<double>& center, int count, double noise, Rng& rng) {
  const double per_coord = noise / std::sqrt(static_cast<double>(center.size()));
  std::vector<std::vector<double>> frames(count, center);
  for (auto& f : frames) {
    for (double& v : f) v += per_coord * rng.gaussian();
  }
  return frames;
}

}  // namespace

DatasetManifest generate_synth_corpus(const SynthParams& params,
                                      const std::string& out_dir) {
  if (params.subjects < 2 || params.subjects % 2 != 0) {
    throw std::invalid_argument(
        "synth corpus: subjects must be even and >= 2 (subjects are paired)");
  }
  if (params.frame_size < 16) {
    throw std::invalid_argument("synth corpus: frame_size too small");
  }
  fs::create_directories(out_dir);
  const fs::path root(out_dir);

  Rng rng(params.seed);
  DatasetManifest manifest;

  std::vector<SubjectTexture> textures;
  std::vector<std::vector<double>> centers;
  std::vector<std::string> subject_ids;
  for (int s = 0; s < params.subjects; ++s) {
    char sid[16];
    std::snprintf(sid, sizeof(sid), "s%02d", s);
    subject_ids.push_back(sid);
    textures.push_back(make_texture(rng));
    centers.push_back(embedding_center(rng, params.embedding_dim));
  }

  for (int s = 0; s < params.subjects; ++s) {
    SubjectEntry subject;
    subject.id = subject_ids[static_cast<std::size_t>(s)];
    const SubjectTexture& tex = textures[static_cast<std::size_t>(s)];
    const int partner = s % 2 == 0 ? s + 1 : s - 1;

    const int total_orig = params.enroll_videos + params.probe_videos;
    for (int v = 0; v < total_orig + params.attack_videos; ++v) {
      const bool is_attack = v >= total_orig;
      VideoEntry video;
      char vid[16];
      std::snprintf(vid, sizeof(vid), "%s%02d", is_attack ? "a" : "v",
                    is_attack ? v - total_orig : v);
      video.id = vid;
      video.role = is_attack ? VideoRole::kAttack
                   : (v < params.enroll_videos ? VideoRole::kEnroll
                                               : VideoRole::kProbe);
      video.quality =
          is_attack ? (rng.uniform() < 0.5 ? QualityTag::kLq : QualityTag::kHq)
                    : QualityTag::kOriginal;
      if (is_attack) {
        video.attack_target = subject_ids[static_cast<std::size_t>(partner)];
      }

      const fs::path vdir =
          fs::path("frames") / subject.id / video.id;
      fs::create_directories(root / vdir);

      // Per-video camera conditions, shared by both classes so raw
      // brightness never separates originals from fakes.
      const double gain = rng.uniform(0.85, 1.15);
      const double base_shift_x = rng.uniform(0.0, 8.0);
      const double base_shift_y = rng.uniform(0.0, 8.0);
      const double blur_sigma = rng.uniform(1.0, 2.0);
      const double noise_sigma = rng.uniform(2.0, 6.0);

      for (int f = 0; f < params.frames_per_video; ++f) {
        const double sx = base_shift_x + 0.3 * f;
        const double sy = base_shift_y + 0.1 * f;
        RasterImage frame =
            render_frame(tex, params.frame_size, sx, sy, gain, rng, 1.0);
        if (is_attack) frame = degrade(frame, blur_sigma, 7, noise_sigma, rng);
        const fs::path rel = vdir / frame_name(f);
        write_netpbm(frame, (root / rel).string());
        video.frames.push_back(rel.string());
      }

      // Synthetic embeddings: originals cluster around the subject;
      // attacks land near the claimed target with a per-video pull back
      // toward the source identity.
      std::vector<std::vector<double>> embs;
      if (is_attack) {
        const double lambda = rng.uniform(0.05, 0.45);
        std::vector<double> mix(centers[static_cast<std::size_t>(s)].size());
        for (std::size_t i = 0; i < mix.size(); ++i) {
          mix[i] = (1.0 - lambda) *
                       centers[static_cast<std::size_t>(partner)][i] +
                   lambda * centers[static_cast<std::size_t>(s)][i];
        }
        embs = embedding_frames(mix, params.frames_per_video, 0.25, rng);
      } else {
        embs = embedding_frames(centers[static_cast<std::size_t>(s)],
                                params.frames_per_video, 0.10, rng);
      }
      const fs::path emb_rel =
          fs::path("embeddings") / (subject.id + "_" + video.id + ".emb");
      fs::create_directories(root / "embeddings");
      write_embedding_file(embs, (root / emb_rel).string());
      video.embedding = emb_rel.string();

      subject.videos.push_back(std::move(video));
    }
    manifest.subjects.push_back(std::move(subject));
  }

  manifest.base_dir = out_dir;
  save_manifest(manifest, (root / "manifest.json").string());
  return manifest;
}

}  // namespace morphdet
