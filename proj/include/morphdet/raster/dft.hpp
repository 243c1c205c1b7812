#ifndef MORPHDET_RASTER_DFT_HPP
#define MORPHDET_RASTER_DFT_HPP

#include <cstddef>
#include <vector>

#include "morphdet/raster/image.hpp"

namespace morphdet {

// Forward unnormalized 2-D DFT of a gray image. The input is zero-padded
// to the next power of two per axis (the padded size is part of the
// transform definition), so Parseval reads:
//   sum |x|^2 = (1 / (spec_width * spec_height)) * sum |X|^2.
struct SpectrumPlane {
  int src_width = 0;   // original image dims
  int src_height = 0;
  int spec_width = 0;  // padded dims (powers of two)
  int spec_height = 0;
  std::vector<double> re;
  std::vector<double> im;

  std::size_t bins() const { return re.size(); }
  double magnitude(std::size_t i) const;
  double phase(std::size_t i) const;  // atan2(im, re), 0 for the zero bin
};

SpectrumPlane dft2(const RasterImage& img);

int next_pow2(int n);

}  // namespace morphdet

#endif
