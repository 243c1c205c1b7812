#include "morphdet/iqm/measures.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>
#include <unordered_map>

#include "morphdet/raster/dft.hpp"
#include "morphdet/raster/filters.hpp"
#include "morphdet/raster/harris.hpp"

namespace morphdet {

namespace {

constexpr double kDenomEps = 1e-12;
constexpr double kPsnrCap = 100.0;
constexpr double kEdgeRelThreshold = 0.1;   // binarized Sobel edge maps
constexpr double kSpecularLuma = 0.95 * 255.0;
constexpr double kHlfiRadiusFactor = 0.15;
constexpr double kCreteBlurSigma = 2.0;     // strong re-blur for blur_crete
constexpr int kCreteBlurKsize = 9;
constexpr int kSsimWindow = 8;
const double kSsimC1 = (0.01 * 255.0) * (0.01 * 255.0);
const double kSsimC2 = (0.03 * 255.0) * (0.03 * 255.0);

double safe_ratio(double num, double den) {
  return den < kDenomEps ? 0.0 : num / den;
}

// Wraps an angle difference to (-pi, pi].
double wrap_angle(double d) {
  double w = std::fmod(d + M_PI, 2.0 * M_PI);
  if (w <= 0.0) w += 2.0 * M_PI;
  return w - M_PI;
}

struct DiffStats {
  double sum_sq_diff = 0.0;
  double sum_diff = 0.0;
  double sum_abs_diff = 0.0;
  double max_abs_diff = 0.0;
  double sum_i_sq = 0.0;
  double sum_r_sq = 0.0;
  double sum_abs_i = 0.0;
  double sum_ir = 0.0;
  std::size_t n = 0;
};

DiffStats diff_stats(const RasterImage& img, const RasterImage& ref) {
  DiffStats st;
  st.n = img.data.size();
  for (std::size_t i = 0; i < st.n; ++i) {
    const double a = img.data[i];
    const double b = ref.data[i];
    const double d = a - b;
    st.sum_sq_diff += d * d;
    st.sum_diff += d;
    st.sum_abs_diff += std::fabs(d);
    st.max_abs_diff = std::max(st.max_abs_diff, std::fabs(d));
    st.sum_i_sq += a * a;
    st.sum_r_sq += b * b;
    st.sum_abs_i += std::fabs(a);
    st.sum_ir += a * b;
  }
  return st;
}

// Mean of the 10 largest absolute differences (all of them when the
// image has fewer than 10 pixels).
double ramd(const RasterImage& img, const RasterImage& ref) {
  std::vector<double> diffs(img.data.size());
  for (std::size_t i = 0; i < diffs.size(); ++i) {
    diffs[i] = std::fabs(img.data[i] - ref.data[i]);
  }
  const std::size_t k = std::min<std::size_t>(10, diffs.size());
  std::partial_sort(diffs.begin(), diffs.begin() + k, diffs.end(),
                    std::greater<double>());
  double s = 0.0;
  for (std::size_t i = 0; i < k; ++i) s += diffs[i];
  return s / static_cast<double>(k);
}

// True when the 3x3 kernel operations are defined for the image; the
// toy cases below that size fall back to sentinel values.
bool kernel_sized(const RasterImage& img) {
  return img.width >= 3 && img.height >= 3;
}

double lmse(const RasterImage& img, const RasterImage& ref) {
  if (!kernel_sized(img)) return 0.0;
  const std::vector<double> li = laplacian_response(img);
  const std::vector<double> lr = laplacian_response(ref);
  double num = 0.0, den = 0.0;
  for (std::size_t i = 0; i < li.size(); ++i) {
    const double d = li[i] - lr[i];
    num += d * d;
    den += li[i] * li[i];
  }
  return safe_ratio(num, den);
}

// Per-image binarized Sobel edge map: magnitude strictly above
// kEdgeRelThreshold times that image's max magnitude.
std::vector<bool> edge_map(const RasterImage& img) {
  const GradientField g = sobel_gradients(img);
  double mx = 0.0;
  for (double m : g.magnitude) mx = std::max(mx, m);
  std::vector<bool> e(g.magnitude.size(), false);
  if (mx < kDenomEps) return e;
  const double thr = kEdgeRelThreshold * mx;
  for (std::size_t i = 0; i < e.size(); ++i) e[i] = g.magnitude[i] > thr;
  return e;
}

double ted(const RasterImage& img, const RasterImage& ref) {
  if (!kernel_sized(img)) return 0.0;
  const std::vector<bool> ei = edge_map(img);
  const std::vector<bool> er = edge_map(ref);
  std::size_t diff = 0;
  for (std::size_t i = 0; i < ei.size(); ++i) {
    if (ei[i] != er[i]) ++diff;
  }
  return static_cast<double>(diff) / static_cast<double>(ei.size());
}

double tcd(const RasterImage& img, const RasterImage& ref) {
  const int ci = harris_corner_count(img);
  const int cr = harris_corner_count(ref);
  const int mx = std::max(ci, cr);
  if (mx == 0) return 0.0;
  return static_cast<double>(std::abs(ci - cr)) / static_cast<double>(mx);
}

void spectral_measures(const RasterImage& img, const RasterImage& ref,
                       double* sme, double* spe) {
  const SpectrumPlane fi = dft2(img);
  const SpectrumPlane fr = dft2(ref);
  double sm = 0.0, sp = 0.0;
  for (std::size_t i = 0; i < fi.bins(); ++i) {
    const double dm = fi.magnitude(i) - fr.magnitude(i);
    sm += dm * dm;
    const double dp = wrap_angle(fi.phase(i) - fr.phase(i));
    sp += dp * dp;
  }
  *sme = sm / static_cast<double>(fi.bins());
  *spe = sp / static_cast<double>(fi.bins());
}

void gradient_measures(const RasterImage& img, const RasterImage& ref,
                       double* gme, double* gpe) {
  if (!kernel_sized(img)) {
    *gme = 0.0;
    *gpe = 0.0;
    return;
  }
  const GradientField gi = sobel_gradients(img);
  const GradientField gr = sobel_gradients(ref);
  double gm = 0.0, gp = 0.0;
  for (std::size_t i = 0; i < gi.magnitude.size(); ++i) {
    const double dm = gi.magnitude[i] - gr.magnitude[i];
    gm += dm * dm;
    const double dp = wrap_angle(gi.phase[i] - gr.phase[i]);
    gp += dp * dp;
  }
  gm /= static_cast<double>(gi.magnitude.size());
  gp /= static_cast<double>(gi.magnitude.size());
  *gme = gm;
  *gpe = gp;
}

// Mean SSIM over 8x8 sliding windows (stride 1, biased moments). Images
// smaller than the window fall back to a single whole-image window.
double ssim(const RasterImage& img, const RasterImage& ref) {
  const int ww = std::min(kSsimWindow, img.width);
  const int wh = std::min(kSsimWindow, img.height);
  const double wn = static_cast<double>(ww) * wh;
  double total = 0.0;
  long windows = 0;
  for (int y0 = 0; y0 + wh <= img.height; ++y0) {
    for (int x0 = 0; x0 + ww <= img.width; ++x0) {
      double s1 = 0.0, s2 = 0.0, s11 = 0.0, s22 = 0.0, s12 = 0.0;
      for (int dy = 0; dy < wh; ++dy) {
        for (int dx = 0; dx < ww; ++dx) {
          const double a = img.at(x0 + dx, y0 + dy);
          const double b = ref.at(x0 + dx, y0 + dy);
          s1 += a;
          s2 += b;
          s11 += a * a;
          s22 += b * b;
          s12 += a * b;
        }
      }
      const double mu1 = s1 / wn;
      const double mu2 = s2 / wn;
      const double var1 = s11 / wn - mu1 * mu1;
      const double var2 = s22 / wn - mu2 * mu2;
      const double cov = s12 / wn - mu1 * mu2;
      total += ((2.0 * mu1 * mu2 + kSsimC1) * (2.0 * cov + kSsimC2)) /
               ((mu1 * mu1 + mu2 * mu2 + kSsimC1) * (var1 + var2 + kSsimC2));
      ++windows;
    }
  }
  return total / static_cast<double>(windows);
}

// mas / mams over per-pixel RGB vectors. Angles are normalized by pi/2
// (the max angle between non-negative vectors); zero-norm pixels are
// treated as aligned.
void angular_measures(const RasterImage& a, const RasterImage& b, double* mas,
                      double* mams) {
  const std::size_t n = static_cast<std::size_t>(a.width) * a.height;
  const double mag_norm = std::sqrt(3.0) * 255.0;
  double sum_sim = 0.0, sum_wsim = 0.0;
  for (int y = 0; y < a.height; ++y) {
    for (int x = 0; x < a.width; ++x) {
      double va[3], vb[3];
      for (int c = 0; c < 3; ++c) {
        va[c] = a.at(x, y, a.channels == 3 ? c : 0);
        vb[c] = b.at(x, y, b.channels == 3 ? c : 0);
      }
      const double na = std::sqrt(va[0] * va[0] + va[1] * va[1] + va[2] * va[2]);
      const double nb = std::sqrt(vb[0] * vb[0] + vb[1] * vb[1] + vb[2] * vb[2]);
      double alpha = 0.0;
      if (na * nb >= kDenomEps) {
        // atan2(|a x b|, a.b) is the numerically stable angle; it is
        // exactly 0 for identical vectors where acos would wobble.
        const double cx = va[1] * vb[2] - va[2] * vb[1];
        const double cy = va[2] * vb[0] - va[0] * vb[2];
        const double cz = va[0] * vb[1] - va[1] * vb[0];
        const double cross = std::sqrt(cx * cx + cy * cy + cz * cz);
        const double dot = va[0] * vb[0] + va[1] * vb[1] + va[2] * vb[2];
        alpha = std::atan2(cross, dot) / (M_PI / 2.0);
      }
      const double dr = va[0] - vb[0];
      const double dg = va[1] - vb[1];
      const double db = va[2] - vb[2];
      const double beta = std::sqrt(dr * dr + dg * dg + db * db) / mag_norm;
      sum_sim += 1.0 - alpha;
      sum_wsim += (1.0 - alpha) * (1.0 - beta);
    }
  }
  *mas = sum_sim / static_cast<double>(n);
  *mams = sum_wsim / static_cast<double>(n);
}

// ---------------------------------------------------------------------
// no-reference measures

double hlfi(const RasterImage& gray) {
  const SpectrumPlane s = dft2(gray);
  const double radius =
      kHlfiRadiusFactor * std::min(s.src_width, s.src_height);
  double low = 0.0, total = 0.0;
  for (int v = 0; v < s.spec_height; ++v) {
    for (int u = 0; u < s.spec_width; ++u) {
      const double fu = std::min(u, s.spec_width - u);
      const double fv = std::min(v, s.spec_height - v);
      const double m =
          s.magnitude(static_cast<std::size_t>(v) * s.spec_width + u);
      total += m;
      if (std::sqrt(fu * fu + fv * fv) <= radius) low += m;
    }
  }
  if (total < kDenomEps) return 0.0;
  const double high = total - low;
  return std::fabs(low - high) / total;
}

// Re-blur ratio in [0, 1]; higher = blurrier. Compares horizontal and
// vertical neighbor-difference energy of the input against a strongly
// blurred copy. A detail-free image maps to 1.
double blur_crete(const RasterImage& gray) {
  const RasterImage blurred =
      gaussian_blur(gray, kCreteBlurSigma, kCreteBlurKsize);
  double d_orig = 0.0, variation = 0.0;
  for (int y = 0; y < gray.height; ++y) {
    for (int x = 0; x + 1 < gray.width; ++x) {
      const double d0 = std::fabs(gray.at(x + 1, y) - gray.at(x, y));
      const double d1 = std::fabs(blurred.at(x + 1, y) - blurred.at(x, y));
      d_orig += d0;
      variation += std::max(0.0, d0 - d1);
    }
  }
  for (int y = 0; y + 1 < gray.height; ++y) {
    for (int x = 0; x < gray.width; ++x) {
      const double d0 = std::fabs(gray.at(x, y + 1) - gray.at(x, y));
      const double d1 = std::fabs(blurred.at(x, y + 1) - blurred.at(x, y));
      d_orig += d0;
      variation += std::max(0.0, d0 - d1);
    }
  }
  if (d_orig < kDenomEps) return 1.0;
  return 1.0 - variation / d_orig;
}

// Mean edge width in pixels across vertical (strong-|gx|) Sobel edges,
// measured along each row between the local extrema bracketing the edge
// pixel. No edges -> 0.
double blur_marziliano(const RasterImage& gray) {
  const int w = gray.width;
  const int h = gray.height;
  std::vector<double> gx(static_cast<std::size_t>(w) * h);
  double max_gx = 0.0;
  for (int y = 0; y < h; ++y) {
    for (int x = 0; x < w; ++x) {
      auto s = [&](int sx, int sy) {
        return gray.at(std::clamp(sx, 0, w - 1), std::clamp(sy, 0, h - 1));
      };
      const double v =
          (s(x + 1, y - 1) + 2.0 * s(x + 1, y) + s(x + 1, y + 1)) -
          (s(x - 1, y - 1) + 2.0 * s(x - 1, y) + s(x - 1, y + 1));
      gx[static_cast<std::size_t>(y) * w + x] = v;
      max_gx = std::max(max_gx, std::fabs(v));
    }
  }
  if (max_gx < kDenomEps) return 0.0;
  const double thr = kEdgeRelThreshold * max_gx;

  double width_sum = 0.0;
  long edges = 0;
  for (int y = 0; y < h; ++y) {
    for (int x = 0; x < w; ++x) {
      const double g = gx[static_cast<std::size_t>(y) * w + x];
      if (std::fabs(g) <= thr) continue;
      int xl = x, xr = x;
      if (g > 0.0) {
        while (xl > 0 && gray.at(xl - 1, y) < gray.at(xl, y)) --xl;
        while (xr + 1 < w && gray.at(xr + 1, y) > gray.at(xr, y)) ++xr;
      } else {
        while (xl > 0 && gray.at(xl - 1, y) > gray.at(xl, y)) --xl;
        while (xr + 1 < w && gray.at(xr + 1, y) < gray.at(xr, y)) ++xr;
      }
      width_sum += xr - xl;
      ++edges;
    }
  }
  return edges == 0 ? 0.0 : width_sum / static_cast<double>(edges);
}

void rgb_to_hsv(double r, double g, double b, double* h, double* s,
                double* v) {
  r /= 255.0;
  g /= 255.0;
  b /= 255.0;
  const double mx = std::max({r, g, b});
  const double mn = std::min({r, g, b});
  const double delta = mx - mn;
  *v = mx;
  *s = mx < kDenomEps ? 0.0 : delta / mx;
  if (delta < kDenomEps) {
    *h = 0.0;
    return;
  }
  double hue;
  if (mx == r) {
    hue = std::fmod((g - b) / delta, 6.0);
  } else if (mx == g) {
    hue = (b - r) / delta + 2.0;
  } else {
    hue = (r - g) / delta + 4.0;
  }
  hue /= 6.0;  // normalize to [0, 1)
  if (hue < 0.0) hue += 1.0;
  *h = hue;
}

// Mean and population standard deviation of H, S, V.
void chroma_moments(const RasterImage& img, double out[6]) {
  const std::size_t n = static_cast<std::size_t>(img.width) * img.height;
  std::vector<double> hp(n), sp(n), vp(n);
  for (int y = 0; y < img.height; ++y) {
    for (int x = 0; x < img.width; ++x) {
      const double r = img.at(x, y, 0);
      const double g = img.channels == 3 ? img.at(x, y, 1) : r;
      const double b = img.channels == 3 ? img.at(x, y, 2) : r;
      const std::size_t i = static_cast<std::size_t>(y) * img.width + x;
      rgb_to_hsv(r, g, b, &hp[i], &sp[i], &vp[i]);
    }
  }
  auto moments = [n](const std::vector<double>& p, double* mean, double* sd) {
    double s = 0.0;
    for (double v : p) s += v;
    *mean = s / static_cast<double>(n);
    double sq = 0.0;
    for (double v : p) sq += (v - *mean) * (v - *mean);
    *sd = std::sqrt(sq / static_cast<double>(n));
  };
  moments(hp, &out[0], &out[1]);
  moments(sp, &out[2], &out[3]);
  moments(vp, &out[4], &out[5]);
}

// Number of distinct 5-bit/channel colors covering 99% of pixels,
// normalized by 32768.
double color_diversity(const RasterImage& img) {
  std::unordered_map<int, long> hist;
  const std::size_t n = static_cast<std::size_t>(img.width) * img.height;
  for (int y = 0; y < img.height; ++y) {
    for (int x = 0; x < img.width; ++x) {
      auto q = [](double v) {
        int b = static_cast<int>(v / 8.0);
        return std::clamp(b, 0, 31);
      };
      const int r = q(img.at(x, y, 0));
      const int g = q(img.at(x, y, img.channels == 3 ? 1 : 0));
      const int b = q(img.at(x, y, img.channels == 3 ? 2 : 0));
      ++hist[(r << 10) | (g << 5) | b];
    }
  }
  std::vector<long> counts;
  counts.reserve(hist.size());
  for (const auto& [key, c] : hist) counts.push_back(c);
  std::sort(counts.begin(), counts.end(), std::greater<long>());
  const double needed = 0.99 * static_cast<double>(n);
  long covered = 0;
  std::size_t used = 0;
  for (long c : counts) {
    ++used;
    covered += c;
    if (static_cast<double>(covered) >= needed) break;
  }
  return static_cast<double>(used) / 32768.0;
}

double specularity_ratio(const RasterImage& img) {
  const RasterImage gray = to_grayscale(img);
  long hot = 0;
  for (double v : gray.data) {
    if (v >= kSpecularLuma) ++hot;
  }
  return static_cast<double>(hot) / static_cast<double>(gray.data.size());
}

}  // namespace

RasterImage make_reference(const RasterImage& gray,
                           const ReferenceParams& params) {
  return gaussian_blur(gray, params.sigma, params.ksize);
}

MeasureList full_reference_measures(const RasterImage& img,
                                    const RasterImage& ref,
                                    const RasterImage* color_img,
                                    const RasterImage* color_ref) {
  if (img.width != ref.width || img.height != ref.height ||
      img.channels != 1 || ref.channels != 1) {
    throw std::invalid_argument(
        "full_reference_measures: expects gray images of equal dims");
  }
  if ((color_img == nullptr) != (color_ref == nullptr)) {
    throw std::invalid_argument(
        "full_reference_measures: color pair must be both present or absent");
  }
  if (color_img && (color_img->width != img.width ||
                    color_img->height != img.height ||
                    color_img->width != color_ref->width ||
                    color_img->height != color_ref->height)) {
    throw std::invalid_argument(
        "full_reference_measures: color pair dims mismatch");
  }

  const DiffStats st = diff_stats(img, ref);
  const double n = static_cast<double>(st.n);
  const double mse = st.sum_sq_diff / n;

  MeasureList out;
  out.reserve(19);
  out.emplace_back("mse", mse);
  out.emplace_back("psnr", mse < kDenomEps
                               ? kPsnrCap
                               : 10.0 * std::log10(255.0 * 255.0 / mse));
  out.emplace_back("snr", (st.sum_i_sq < kDenomEps ||
                           st.sum_sq_diff < kDenomEps)
                              ? 0.0
                              : 10.0 * std::log10(st.sum_i_sq /
                                                  st.sum_sq_diff));
  out.emplace_back("sc", safe_ratio(st.sum_i_sq, st.sum_r_sq));
  out.emplace_back("md", st.max_abs_diff);
  out.emplace_back("ad", st.sum_diff / n);
  out.emplace_back("nae", safe_ratio(st.sum_abs_diff, st.sum_abs_i));
  out.emplace_back("ramd", ramd(img, ref));
  out.emplace_back("lmse", lmse(img, ref));
  out.emplace_back("nxc", safe_ratio(st.sum_ir, st.sum_i_sq));

  double mas_v, mams_v;
  angular_measures(color_img ? *color_img : img, color_ref ? *color_ref : ref,
                   &mas_v, &mams_v);
  out.emplace_back("mas", mas_v);
  out.emplace_back("mams", mams_v);

  out.emplace_back("ted", ted(img, ref));
  out.emplace_back("tcd", tcd(img, ref));
  double sme_v, spe_v;
  spectral_measures(img, ref, &sme_v, &spe_v);
  out.emplace_back("sme", sme_v);
  out.emplace_back("spe", spe_v);
  double gme_v, gpe_v;
  gradient_measures(img, ref, &gme_v, &gpe_v);
  out.emplace_back("gme", gme_v);
  out.emplace_back("gpe", gpe_v);
  out.emplace_back("ssim", ssim(img, ref));
  return out;
}

MeasureList no_reference_measures(const RasterImage& img) {
  const RasterImage gray = to_grayscale(img);
  MeasureList out;
  out.reserve(11);
  out.emplace_back("hlfi", hlfi(gray));
  out.emplace_back("blur_crete", blur_crete(gray));
  out.emplace_back("blur_marziliano", blur_marziliano(gray));
  out.emplace_back("specularity_ratio", specularity_ratio(img));
  double cm[6];
  chroma_moments(img, cm);
  for (int i = 0; i < 6; ++i) {
    out.emplace_back("chroma_moment_" + std::to_string(i + 1), cm[i]);
  }
  out.emplace_back("color_diversity", color_diversity(img));
  return out;
}

IqmVector extract_iqm(const RasterImage& frame, const std::optional<BBox>& bbox,
                      const ReferenceParams& params) {
  const RasterImage region = bbox ? crop(frame, *bbox) : frame;
  const RasterImage gray = to_grayscale(region);
  const RasterImage ref = make_reference(gray, params);
  const RasterImage color_ref =
      region.channels == 3 ? gaussian_blur_color(region, params.sigma,
                                                 params.ksize)
                           : ref;

  MeasureList all = full_reference_measures(
      gray, ref, region.channels == 3 ? &region : nullptr,
      region.channels == 3 ? &color_ref : nullptr);
  const MeasureList nr = no_reference_measures(region);
  all.insert(all.end(), nr.begin(), nr.end());

  const auto& names = iqm_registry_names();
  IqmVector vec;
  vec.values.assign(names.size(),
                    std::numeric_limits<double>::quiet_NaN());
  for (const auto& [name, value] : all) {
    const std::size_t idx = iqm_registry_index(name);
    if (!std::isnan(vec.values[idx])) {
      throw std::logic_error("extract_iqm: duplicate measure " + name);
    }
    vec.values[idx] = value;
  }
  for (std::size_t i = 0; i < vec.values.size(); ++i) {
    if (!std::isfinite(vec.values[i])) {
      throw std::logic_error("extract_iqm: measure " + names[i] +
                             " is not finite");
    }
  }
  return vec;
}

}  // namespace morphdet
