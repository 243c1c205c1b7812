#include "morphdet/raster/image.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

namespace morphdet {

RasterImage::RasterImage(int w, int h, int ch, double fill)
    : width(w), height(h), channels(ch) {
  if (w <= 0 || h <= 0 || (ch != 1 && ch != 3)) {
    throw std::invalid_argument("RasterImage: bad dimensions " +
                                std::to_string(w) + "x" + std::to_string(h) +
                                "x" + std::to_string(ch));
  }
  data.assign(static_cast<std::size_t>(w) * h * ch, fill);
}

void RasterImage::validate() const {
  if (width <= 0 || height <= 0 || (channels != 1 && channels != 3)) {
    throw std::invalid_argument("RasterImage: bad dimensions");
  }
  if (data.size() != static_cast<std::size_t>(width) * height * channels) {
    throw std::invalid_argument("RasterImage: data length mismatch");
  }
  for (double v : data) {
    if (!std::isfinite(v) || v < 0.0 || v > 255.0) {
      throw std::invalid_argument("RasterImage: sample outside [0,255]");
    }
  }
}

RasterImage to_grayscale(const RasterImage& img) {
  if (img.channels == 1) return img;
  RasterImage out(img.width, img.height, 1);
  for (int y = 0; y < img.height; ++y) {
    for (int x = 0; x < img.width; ++x) {
      out.at(x, y) = 0.299 * img.at(x, y, 0) + 0.587 * img.at(x, y, 1) +
                     0.114 * img.at(x, y, 2);
    }
  }
  return out;
}

RasterImage crop(const RasterImage& img, const BBox& bbox) {
  if (bbox.w <= 0 || bbox.h <= 0 || bbox.x < 0 || bbox.y < 0 ||
      bbox.x + bbox.w > img.width || bbox.y + bbox.h > img.height) {
    throw std::invalid_argument("crop: bbox outside image bounds");
  }
  RasterImage out(bbox.w, bbox.h, img.channels);
  for (int y = 0; y < bbox.h; ++y) {
    for (int x = 0; x < bbox.w; ++x) {
      for (int c = 0; c < img.channels; ++c) {
        out.at(x, y, c) = img.at(bbox.x + x, bbox.y + y, c);
      }
    }
  }
  return out;
}

}  // namespace morphdet
