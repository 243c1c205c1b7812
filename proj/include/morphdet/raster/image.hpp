#ifndef MORPHDET_RASTER_IMAGE_HPP
#define MORPHDET_RASTER_IMAGE_HPP

#include <cstddef>
#include <vector>

namespace morphdet {

// Raster image with real-valued samples in [0, 255].
// Data is row-major and channel-interleaved: sample (x, y, c) lives at
// ((y * width) + x) * channels + c. Loaders quantize only on write, so
// filter chains keep full double precision.
struct RasterImage {
  int width = 0;
  int height = 0;
  int channels = 1;  // 1 = gray, 3 = RGB
  std::vector<double> data;

  RasterImage() = default;
  RasterImage(int w, int h, int ch, double fill = 0.0);

  double& at(int x, int y, int c = 0) {
    return data[(static_cast<std::size_t>(y) * width + x) * channels + c];
  }
  double at(int x, int y, int c = 0) const {
    return data[(static_cast<std::size_t>(y) * width + x) * channels + c];
  }

  std::size_t sample_count() const { return data.size(); }
  bool is_gray() const { return channels == 1; }

  // Checks dimensions, data length and that every sample is finite in
  // [0, 255]. Throws std::invalid_argument on violation.
  void validate() const;
};

struct BBox {
  int x = 0;
  int y = 0;
  int w = 0;
  int h = 0;
};

// BT.601 luma; single-channel input passes through unchanged.
RasterImage to_grayscale(const RasterImage& img);

// Exact sub-rectangle copy. The bbox must lie fully inside the image.
RasterImage crop(const RasterImage& img, const BBox& bbox);

}  // namespace morphdet

#endif
