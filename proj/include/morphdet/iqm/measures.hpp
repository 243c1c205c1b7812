#ifndef MORPHDET_IQM_MEASURES_HPP
#define MORPHDET_IQM_MEASURES_HPP

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "morphdet/iqm/registry.hpp"
#include "morphdet/raster/image.hpp"

namespace morphdet {

// Blur parameters of the self-reference image for full-reference
// measures.
struct ReferenceParams {
  double sigma = 0.5;
  int ksize = 3;
};

using MeasureList = std::vector<std::pair<std::string, double>>;

// The blurred self-reference: gaussian_blur(img, sigma, ksize).
RasterImage make_reference(const RasterImage& gray, const ReferenceParams& params);

// Full-reference measures over a gray image/reference pair. mas and
// mams are angular measures over RGB pixel vectors: they use the color
// pair when given, otherwise the gray pair is treated as monochrome
// RGB. Throws on dimension mismatch.
MeasureList full_reference_measures(const RasterImage& img,
                                    const RasterImage& ref,
                                    const RasterImage* color_img = nullptr,
                                    const RasterImage* color_ref = nullptr);

// No-reference measures. Color input preferred; a gray image is treated
// as RGB with equal channels where a measure is color-intrinsic.
MeasureList no_reference_measures(const RasterImage& img);

// Full pipeline for one frame: optional crop, grayscale, blurred
// reference, full-reference + no-reference measures assembled in
// registry order. Deterministic and total: output length equals the
// registry size and every value is finite.
IqmVector extract_iqm(const RasterImage& frame,
                      const std::optional<BBox>& bbox = std::nullopt,
                      const ReferenceParams& params = {});

}  // namespace morphdet

#endif
