#ifndef MORPHDET_RASTER_FILTERS_HPP
#define MORPHDET_RASTER_FILTERS_HPP

#include <vector>

#include "morphdet/raster/image.hpp"

namespace morphdet {

// Magnitude/phase planes of an image gradient. Phase is in (-pi, pi].
struct GradientField {
  int width = 0;
  int height = 0;
  std::vector<double> magnitude;
  std::vector<double> phase;

  double mag(int x, int y) const {
    return magnitude[static_cast<std::size_t>(y) * width + x];
  }
  double ph(int x, int y) const {
    return phase[static_cast<std::size_t>(y) * width + x];
  }
};

// Sampled 2-D Gaussian, normalized to sum 1. ksize must be odd >= 3,
// sigma > 0.
std::vector<double> gaussian_kernel(double sigma, int ksize);

// Gaussian smoothing with edge-replication borders. Gray input only.
RasterImage gaussian_blur(const RasterImage& img, double sigma, int ksize);

// Per-channel Gaussian smoothing; same border policy.
RasterImage gaussian_blur_color(const RasterImage& img, double sigma,
                                int ksize);

// Standard 3x3 Sobel masks applied as sliding correlation with
// edge-replication borders. Requires dims >= 3x3.
GradientField sobel_gradients(const RasterImage& img);

// Correlation with [[0,1,0],[1,-4,1],[0,1,0]], edge replication.
std::vector<double> laplacian_response(const RasterImage& img);

}  // namespace morphdet

#endif
