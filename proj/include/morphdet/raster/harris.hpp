#ifndef MORPHDET_RASTER_HARRIS_HPP
#define MORPHDET_RASTER_HARRIS_HPP

#include "morphdet/raster/image.hpp"

namespace morphdet {

// Harris corner counting: Sobel gradients, gradient products smoothed
// with a Gaussian window (sigma 1, 5x5), response det(M) - k*trace(M)^2.
// Counts local maxima (8-neighborhood, raster-order tie break) whose
// response is >= rel_threshold * global max. A flat or cornerless image
// yields 0.
int harris_corner_count(const RasterImage& img, double k = 0.04,
                        double rel_threshold = 0.01);

}  // namespace morphdet

#endif
