#ifndef MORPHDET_RASTER_NETPBM_HPP
#define MORPHDET_RASTER_NETPBM_HPP

#include <string>

#include "morphdet/raster/image.hpp"

namespace morphdet {

// Binary Netpbm: P5 (8-bit gray) and P6 (8-bit RGB), maxval 255.
// Reading accepts '#' comments in the header; writing quantizes samples
// with round-to-nearest and clamps to [0, 255].
RasterImage read_netpbm(const std::string& path);
void write_netpbm(const RasterImage& img, const std::string& path);

}  // namespace morphdet

#endif
