#include "morphdet/raster/filters.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace morphdet {

namespace {

inline int clamp_coord(int v, int lo, int hi) {
  return v < lo ? lo : (v > hi ? hi : v);
}

// Edge-replicated sample of a gray image.
inline double sample(const RasterImage& img, int x, int y) {
  return img.at(clamp_coord(x, 0, img.width - 1),
                clamp_coord(y, 0, img.height - 1));
}

void require_gray(const RasterImage& img, const char* op) {
  if (img.channels != 1) {
    throw std::invalid_argument(std::string(op) + ": expects a gray image");
  }
}

}  // namespace

std::vector<double> gaussian_kernel(double sigma, int ksize) {
  if (sigma <= 0.0) throw std::invalid_argument("gaussian_kernel: sigma <= 0");
  if (ksize < 3 || ksize % 2 == 0) {
    throw std::invalid_argument("gaussian_kernel: ksize must be odd >= 3");
  }
  std::vector<double> k(static_cast<std::size_t>(ksize) * ksize);
  const int r = ksize / 2;
  double sum = 0.0;
  for (int dy = -r; dy <= r; ++dy) {
    for (int dx = -r; dx <= r; ++dx) {
      double w = std::exp(-(dx * dx + dy * dy) / (2.0 * sigma * sigma));
      k[static_cast<std::size_t>(dy + r) * ksize + (dx + r)] = w;
      sum += w;
    }
  }
  for (double& w : k) w /= sum;
  return k;
}

RasterImage gaussian_blur(const RasterImage& img, double sigma, int ksize) {
  require_gray(img, "gaussian_blur");
  const std::vector<double> k = gaussian_kernel(sigma, ksize);
  const int r = ksize / 2;
  RasterImage out(img.width, img.height, 1);
  for (int y = 0; y < img.height; ++y) {
    for (int x = 0; x < img.width; ++x) {
      // Accumulate relative to the center sample: flat regions come out
      // bit-exact even though the normalized weights only sum to 1 up
      // to rounding.
      const double center = img.at(x, y);
      double acc = center;
      for (int dy = -r; dy <= r; ++dy) {
        for (int dx = -r; dx <= r; ++dx) {
          acc += k[static_cast<std::size_t>(dy + r) * ksize + (dx + r)] *
                 (sample(img, x + dx, y + dy) - center);
        }
      }
      out.at(x, y) = std::clamp(acc, 0.0, 255.0);
    }
  }
  return out;
}

RasterImage gaussian_blur_color(const RasterImage& img, double sigma,
                                int ksize) {
  if (img.channels == 1) return gaussian_blur(img, sigma, ksize);
  const std::vector<double> k = gaussian_kernel(sigma, ksize);
  const int r = ksize / 2;
  RasterImage out(img.width, img.height, img.channels);
  for (int y = 0; y < img.height; ++y) {
    for (int x = 0; x < img.width; ++x) {
      for (int c = 0; c < img.channels; ++c) {
        const double center = img.at(x, y, c);
        double acc = center;
        for (int dy = -r; dy <= r; ++dy) {
          for (int dx = -r; dx <= r; ++dx) {
            acc += k[static_cast<std::size_t>(dy + r) * ksize + (dx + r)] *
                   (img.at(clamp_coord(x + dx, 0, img.width - 1),
                           clamp_coord(y + dy, 0, img.height - 1), c) -
                    center);
          }
        }
        out.at(x, y, c) = std::clamp(acc, 0.0, 255.0);
      }
    }
  }
  return out;
}

GradientField sobel_gradients(const RasterImage& img) {
  require_gray(img, "sobel_gradients");
  if (img.width < 3 || img.height < 3) {
    throw std::invalid_argument("sobel_gradients: image smaller than 3x3");
  }
  GradientField g;
  g.width = img.width;
  g.height = img.height;
  g.magnitude.resize(static_cast<std::size_t>(img.width) * img.height);
  g.phase.resize(g.magnitude.size());
  for (int y = 0; y < img.height; ++y) {
    for (int x = 0; x < img.width; ++x) {
      const double p00 = sample(img, x - 1, y - 1);
      const double p10 = sample(img, x, y - 1);
      const double p20 = sample(img, x + 1, y - 1);
      const double p01 = sample(img, x - 1, y);
      const double p21 = sample(img, x + 1, y);
      const double p02 = sample(img, x - 1, y + 1);
      const double p12 = sample(img, x, y + 1);
      const double p22 = sample(img, x + 1, y + 1);
      const double gx = (p20 + 2.0 * p21 + p22) - (p00 + 2.0 * p01 + p02);
      const double gy = (p02 + 2.0 * p12 + p22) - (p00 + 2.0 * p10 + p20);
      const std::size_t i = static_cast<std::size_t>(y) * img.width + x;
      g.magnitude[i] = std::sqrt(gx * gx + gy * gy);
      g.phase[i] = (gx == 0.0 && gy == 0.0) ? 0.0 : std::atan2(gy, gx);
    }
  }
  return g;
}

std::vector<double> laplacian_response(const RasterImage& img) {
  require_gray(img, "laplacian_response");
  if (img.width < 3 || img.height < 3) {
    throw std::invalid_argument("laplacian_response: image smaller than 3x3");
  }
  std::vector<double> out(static_cast<std::size_t>(img.width) * img.height);
  for (int y = 0; y < img.height; ++y) {
    for (int x = 0; x < img.width; ++x) {
      out[static_cast<std::size_t>(y) * img.width + x] =
          sample(img, x, y - 1) + sample(img, x - 1, y) +
          sample(img, x + 1, y) + sample(img, x, y + 1) -
          4.0 * img.at(x, y);
    }
  }
  return out;
}

}  // namespace morphdet
