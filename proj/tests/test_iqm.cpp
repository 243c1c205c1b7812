#include "doctest.h"

#include <cmath>
#include <map>

#include "iqm_oracle.hpp"
#include "morphdet/iqm/measures.hpp"
#include "morphdet/iqm/registry.hpp"
#include "morphdet/raster/filters.hpp"
#include "oracles.hpp"

using namespace morphdet;

namespace {

RasterImage textured_frame(int w, int h, int channels, oracle::TestRng& rng) {
  RasterImage img(w, h, channels);
  const double fx = rng.uniform(0.5, 3.0);
  const double fy = rng.uniform(0.5, 3.0);
  for (int y = 0; y < h; ++y) {
    for (int x = 0; x < w; ++x) {
      for (int c = 0; c < channels; ++c) {
        const double v = 128.0 +
                         60.0 * std::sin(2.0 * M_PI *
                                         (fx * x / w + fy * y / h) +
                                         c) +
                         rng.uniform(-25.0, 25.0);
        img.at(x, y, c) = std::clamp(v, 0.0, 255.0);
      }
    }
  }
  return img;
}

std::map<std::string, double> as_map(const IqmVector& vec) {
  std::map<std::string, double> m;
  const auto& names = iqm_registry_names();
  for (std::size_t i = 0; i < names.size(); ++i) m[names[i]] = vec.values[i];
  return m;
}

double rel_err(double got, double want) {
  return std::fabs(got - want) / std::max(1.0, std::fabs(want));
}

}  // namespace

TEST_CASE("registry is fixed, ordered and hashable") {
  const auto& names = iqm_registry_names();
  CHECK(names.size() == 30);
  CHECK(names.front() == "mse");
  CHECK(names.back() == "color_diversity");
  CHECK(iqm_registry_index("ssim") == 18);
  CHECK_THROWS_AS(iqm_registry_index("nope"), std::invalid_argument);
  CHECK(iqm_registry_hash() == iqm_registry_hash());
  CHECK(iqm_registry_hash() != 0);
}

TEST_CASE("make_reference blurs: checkerboard loses gradient energy") {
  RasterImage board(8, 8, 1);
  for (int y = 0; y < 8; ++y) {
    for (int x = 0; x < 8; ++x) board.at(x, y) = ((x + y) % 2) ? 255.0 : 0.0;
  }
  const RasterImage ref = make_reference(board, {});
  auto grad_sum = [](const RasterImage& img) {
    double s = 0.0;
    for (double m : sobel_gradients(img).magnitude) s += m;
    return s;
  };
  CHECK(grad_sum(ref) < grad_sum(board));
  CHECK(ref.width == board.width);
  CHECK(ref.height == board.height);

  RasterImage constant(8, 8, 1, 55.0);
  const RasterImage cref = make_reference(constant, {});
  for (double v : cref.data) CHECK(v == doctest::Approx(55.0).epsilon(1e-13));
}

TEST_CASE("full-reference identity case") {
  oracle::TestRng rng(101);
  const RasterImage img = textured_frame(12, 12, 1, rng);
  const auto ms = full_reference_measures(img, img);
  std::map<std::string, double> m(ms.begin(), ms.end());
  CHECK(m["mse"] == 0.0);
  CHECK(m["md"] == 0.0);
  CHECK(m["ad"] == 0.0);
  CHECK(m["nae"] == 0.0);
  CHECK(m["sc"] == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(m["nxc"] == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(m["ssim"] == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(m["ted"] == 0.0);
  CHECK(m["tcd"] == 0.0);
  CHECK(m["psnr"] == 100.0);  // capped
  CHECK(m["mas"] == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(m["mams"] == doctest::Approx(1.0).epsilon(1e-12));
}

TEST_CASE("full-reference constant offset case") {
  RasterImage I(2, 2, 1, 0.0);
  RasterImage R(2, 2, 1, 2.0);
  const auto ms = full_reference_measures(I, R);
  std::map<std::string, double> m(ms.begin(), ms.end());
  CHECK(m["mse"] == doctest::Approx(4.0));
  CHECK(m["md"] == doctest::Approx(2.0));
  CHECK(m["ad"] == doctest::Approx(-2.0));
}

TEST_CASE("every measure matches its direct-formula oracle") {
  oracle::TestRng rng(103);
  const ReferenceParams params;
  for (int trial = 0; trial < 20; ++trial) {
    const int w = 8 + static_cast<int>(rng.uniform() * 25);
    const int h = 8 + static_cast<int>(rng.uniform() * 25);
    const RasterImage frame = textured_frame(w, h, 3, rng);
    const IqmVector vec = extract_iqm(frame, std::nullopt, params);
    const auto got = as_map(vec);
    const auto want =
        iqm_oracle::all_measures(frame, params.sigma, params.ksize);
    for (const auto& [name, value] : want) {
      INFO("measure ", name, " size ", w, "x", h);
      CHECK(rel_err(got.at(name), value) < 1e-9);
    }
  }
}

TEST_CASE("no-reference degenerate images") {
  RasterImage black(10, 10, 3, 0.0);
  const auto mb = no_reference_measures(black);
  std::map<std::string, double> b(mb.begin(), mb.end());
  CHECK(b["specularity_ratio"] == 0.0);
  CHECK(b["chroma_moment_3"] == 0.0);  // saturation mean
  CHECK(b["chroma_moment_4"] == 0.0);  // saturation std

  RasterImage white(10, 10, 3, 255.0);
  const auto mw = no_reference_measures(white);
  std::map<std::string, double> w(mw.begin(), mw.end());
  CHECK(w["specularity_ratio"] == 1.0);
}

TEST_CASE("blur metric orders sharp vs blurred") {
  RasterImage board(16, 16, 1);
  for (int y = 0; y < 16; ++y) {
    for (int x = 0; x < 16; ++x) {
      board.at(x, y) = ((x / 2 + y / 2) % 2) ? 230.0 : 20.0;
    }
  }
  const RasterImage blurred = gaussian_blur(board, 2.0, 9);
  auto crete = [](const RasterImage& img) {
    const auto ms = no_reference_measures(img);
    for (const auto& [n, v] : ms) {
      if (n == "blur_crete") return v;
    }
    return -1.0;
  };
  const double sharp_score = crete(board);
  const double blur_score = crete(blurred);
  CHECK(blur_score > sharp_score);
  CHECK(sharp_score >= 0.0);
  CHECK(blur_score <= 1.0);
}

TEST_CASE("extract_iqm is deterministic, total and finite") {
  oracle::TestRng rng(107);
  const RasterImage frame = textured_frame(20, 16, 3, rng);
  const IqmVector a = extract_iqm(frame);
  const IqmVector b = extract_iqm(frame);
  CHECK(a.values.size() == iqm_registry_size());
  CHECK(a.values == b.values);  // bit-identical
  for (double v : a.values) CHECK(std::isfinite(v));

  // constant frame: degenerate sentinels everywhere, still finite
  RasterImage constant(16, 16, 3, 111.0);
  const IqmVector c = extract_iqm(constant);
  const auto m = as_map(c);
  CHECK(m.at("mse") == 0.0);
  CHECK(m.at("ssim") == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(m.at("blur_crete") == 1.0);
  CHECK(m.at("blur_marziliano") == 0.0);
  CHECK(m.at("ted") == 0.0);
  for (double v : c.values) CHECK(std::isfinite(v));
}

TEST_CASE("extract_iqm crops when a bbox is given") {
  oracle::TestRng rng(109);
  const RasterImage frame = textured_frame(24, 24, 3, rng);
  const BBox box{4, 6, 12, 10};
  const IqmVector with_box = extract_iqm(frame, box);
  const IqmVector direct = extract_iqm(crop(frame, box));
  CHECK(with_box.values == direct.values);
}

TEST_CASE("mse against a noisy copy recovers the noise variance") {
  oracle::TestRng rng(113);
  RasterImage img(32, 32, 1, 128.0);
  const double sigma = 5.0;
  RasterImage noisy = img;
  for (double& v : noisy.data) {
    v = std::clamp(v + sigma * rng.gaussian(), 0.0, 255.0);
  }
  const auto ms = full_reference_measures(img, noisy);
  for (const auto& [name, value] : ms) {
    if (name == "mse") {
      CHECK(value > 0.0);
      CHECK(value == doctest::Approx(sigma * sigma).epsilon(0.15));
    }
  }
}

TEST_CASE("mse grows monotonically with the noise level of the copy") {
  for (std::uint64_t seed : {1ull, 2ull, 3ull}) {
    oracle::TestRng rng(seed);
    RasterImage base(24, 24, 1, 120.0);
    for (double& v : base.data) v += rng.uniform(-20.0, 20.0);
    double prev = -1.0;
    for (double sigma : {1.0, 2.0, 4.0, 8.0}) {
      oracle::TestRng noise_rng(seed * 1000 + 7);
      RasterImage noisy = base;
      for (double& v : noisy.data) {
        v = std::clamp(v + sigma * noise_rng.gaussian(), 0.0, 255.0);
      }
      const auto ms = full_reference_measures(base, noisy);
      for (const auto& [name, value] : ms) {
        if (name == "mse") {
          CHECK(value >= prev);
          prev = value;
        }
      }
    }
  }
}

TEST_CASE("nae and md are invariant under joint horizontal flip") {
  oracle::TestRng rng(127);
  const RasterImage I = textured_frame(14, 11, 1, rng);
  const RasterImage R = gaussian_blur(I, 1.0, 5);
  auto flip = [](const RasterImage& img) {
    RasterImage out = img;
    for (int y = 0; y < img.height; ++y) {
      for (int x = 0; x < img.width; ++x) {
        out.at(x, y) = img.at(img.width - 1 - x, y);
      }
    }
    return out;
  };
  const auto a = full_reference_measures(I, R);
  const auto b = full_reference_measures(flip(I), flip(R));
  std::map<std::string, double> ma(a.begin(), a.end());
  std::map<std::string, double> mb(b.begin(), b.end());
  CHECK(ma["nae"] == doctest::Approx(mb["nae"]).epsilon(1e-12));
  CHECK(ma["md"] == doctest::Approx(mb["md"]).epsilon(1e-12));
}

TEST_CASE("dimension mismatch is rejected") {
  RasterImage a(8, 8, 1, 1.0);
  RasterImage b(9, 8, 1, 1.0);
  CHECK_THROWS_AS(full_reference_measures(a, b), std::invalid_argument);
}
