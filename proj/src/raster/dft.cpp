#include "morphdet/raster/dft.hpp"

#include <cmath>
#include <complex>
#include <stdexcept>

namespace morphdet {

namespace {

// In-place iterative radix-2 Cooley-Tukey, forward (e^{-i...}), size
// must be a power of two.
void fft_pow2(std::vector<std::complex<double>>& a) {
  const std::size_t n = a.size();
  if (n <= 1) return;
  for (std::size_t i = 1, j = 0; i < n; ++i) {
    std::size_t bit = n >> 1;
    for (; j & bit; bit >>= 1) j ^= bit;
    j ^= bit;
    if (i < j) std::swap(a[i], a[j]);
  }
  for (std::size_t len = 2; len <= n; len <<= 1) {
    const double ang = -2.0 * M_PI / static_cast<double>(len);
    const std::complex<double> wlen(std::cos(ang), std::sin(ang));
    for (std::size_t i = 0; i < n; i += len) {
      std::complex<double> w(1.0, 0.0);
      for (std::size_t k = 0; k < len / 2; ++k) {
        std::complex<double> u = a[i + k];
        std::complex<double> v = a[i + k + len / 2] * w;
        a[i + k] = u + v;
        a[i + k + len / 2] = u - v;
        w *= wlen;
      }
    }
  }
}

}  // namespace

int next_pow2(int n) {
  int p = 1;
  while (p < n) p <<= 1;
  return p;
}

double SpectrumPlane::magnitude(std::size_t i) const {
  return std::hypot(re[i], im[i]);
}

double SpectrumPlane::phase(std::size_t i) const {
  if (re[i] == 0.0 && im[i] == 0.0) return 0.0;
  return std::atan2(im[i], re[i]);
}

SpectrumPlane dft2(const RasterImage& img) {
  if (img.channels != 1) {
    throw std::invalid_argument("dft2: expects a gray image");
  }
  const int pw = next_pow2(img.width);
  const int ph = next_pow2(img.height);

  std::vector<std::vector<std::complex<double>>> rows(
      ph, std::vector<std::complex<double>>(pw, {0.0, 0.0}));
  for (int y = 0; y < img.height; ++y) {
    for (int x = 0; x < img.width; ++x) {
      rows[y][x] = {img.at(x, y), 0.0};
    }
  }
  for (auto& row : rows) fft_pow2(row);

  std::vector<std::complex<double>> col(ph);
  SpectrumPlane s;
  s.src_width = img.width;
  s.src_height = img.height;
  s.spec_width = pw;
  s.spec_height = ph;
  s.re.resize(static_cast<std::size_t>(pw) * ph);
  s.im.resize(s.re.size());
  for (int x = 0; x < pw; ++x) {
    for (int y = 0; y < ph; ++y) col[y] = rows[y][x];
    fft_pow2(col);
    for (int y = 0; y < ph; ++y) {
      const std::size_t i = static_cast<std::size_t>(y) * pw + x;
      s.re[i] = col[y].real();
      s.im[i] = col[y].imag();
    }
  }
  return s;
}

}  // namespace morphdet
