#include "morphdet/raster/harris.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <vector>

#include "morphdet/raster/filters.hpp"

namespace morphdet {

namespace {

constexpr double kWindowSigma = 1.0;
constexpr int kWindowSize = 5;

// Smooths an arbitrary real plane with the Harris Gaussian window,
// edge replication.
std::vector<double> smooth_plane(const std::vector<double>& p, int w, int h) {
  const std::vector<double> kern = gaussian_kernel(kWindowSigma, kWindowSize);
  const int r = kWindowSize / 2;
  std::vector<double> out(p.size());
  for (int y = 0; y < h; ++y) {
    for (int x = 0; x < w; ++x) {
      double acc = 0.0;
      for (int dy = -r; dy <= r; ++dy) {
        for (int dx = -r; dx <= r; ++dx) {
          const int sx = std::clamp(x + dx, 0, w - 1);
          const int sy = std::clamp(y + dy, 0, h - 1);
          acc += kern[static_cast<std::size_t>(dy + r) * kWindowSize +
                      (dx + r)] *
                 p[static_cast<std::size_t>(sy) * w + sx];
        }
      }
      out[static_cast<std::size_t>(y) * w + x] = acc;
    }
  }
  return out;
}

}  // namespace

int harris_corner_count(const RasterImage& img, double k,
                        double rel_threshold) {
  if (img.channels != 1) {
    throw std::invalid_argument("harris_corner_count: expects a gray image");
  }
  if (k < 0.02 || k > 0.08) {
    throw std::invalid_argument("harris_corner_count: k outside [0.02, 0.08]");
  }
  if (rel_threshold <= 0.0 || rel_threshold >= 1.0) {
    throw std::invalid_argument(
        "harris_corner_count: rel_threshold outside (0,1)");
  }

  const int w = img.width;
  const int h = img.height;
  const std::size_t n = static_cast<std::size_t>(w) * h;

  // Raw gradients, recomputed here to get signed gx/gy (GradientField
  // only exposes magnitude/phase).
  std::vector<double> ixx(n), iyy(n), ixy(n);
  for (int y = 0; y < h; ++y) {
    for (int x = 0; x < w; ++x) {
      auto s = [&](int sx, int sy) {
        return img.at(std::clamp(sx, 0, w - 1), std::clamp(sy, 0, h - 1));
      };
      const double gx = (s(x + 1, y - 1) + 2.0 * s(x + 1, y) + s(x + 1, y + 1)) -
                        (s(x - 1, y - 1) + 2.0 * s(x - 1, y) + s(x - 1, y + 1));
      const double gy = (s(x - 1, y + 1) + 2.0 * s(x, y + 1) + s(x + 1, y + 1)) -
                        (s(x - 1, y - 1) + 2.0 * s(x, y - 1) + s(x + 1, y - 1));
      const std::size_t i = static_cast<std::size_t>(y) * w + x;
      ixx[i] = gx * gx;
      iyy[i] = gy * gy;
      ixy[i] = gx * gy;
    }
  }
  ixx = smooth_plane(ixx, w, h);
  iyy = smooth_plane(iyy, w, h);
  ixy = smooth_plane(ixy, w, h);

  std::vector<double> resp(n);
  double max_resp = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    const double tr = ixx[i] + iyy[i];
    resp[i] = ixx[i] * iyy[i] - ixy[i] * ixy[i] - k * tr * tr;
    max_resp = std::max(max_resp, resp[i]);
  }
  if (max_resp <= 0.0) return 0;  // flat or edge-only image

  const double thr = rel_threshold * max_resp;
  int count = 0;
  for (int y = 0; y < h; ++y) {
    for (int x = 0; x < w; ++x) {
      const std::size_t i = static_cast<std::size_t>(y) * w + x;
      if (resp[i] < thr) continue;
      // Local maximum over the 8-neighborhood; ties on equal plateaus
      // are broken by raster order so each plateau counts once.
      bool is_max = true;
      for (int dy = -1; dy <= 1 && is_max; ++dy) {
        for (int dx = -1; dx <= 1 && is_max; ++dx) {
          if (dx == 0 && dy == 0) continue;
          const int nx = x + dx;
          const int ny = y + dy;
          if (nx < 0 || ny < 0 || nx >= w || ny >= h) continue;
          const double nv = resp[static_cast<std::size_t>(ny) * w + nx];
          if (nv > resp[i]) is_max = false;
          const bool earlier = (ny < y) || (ny == y && nx < x);
          if (nv == resp[i] && earlier) is_max = false;
        }
      }
      if (is_max) ++count;
    }
  }
  return count;
}

}  // namespace morphdet
