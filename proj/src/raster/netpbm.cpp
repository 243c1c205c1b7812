#include "morphdet/raster/netpbm.hpp"

#include <cmath>
#include <cstdint>
#include <fstream>
#include <stdexcept>
#include <vector>

namespace morphdet {

namespace {

// Reads the next header token, skipping whitespace and '#' comments.
std::string next_token(std::istream& in) {
  std::string tok;
  int c;
  while ((c = in.get()) != EOF) {
    if (c == '#') {
      while ((c = in.get()) != EOF && c != '\n') {
      }
      continue;
    }
    if (std::isspace(c)) {
      if (!tok.empty()) break;
      continue;
    }
    tok.push_back(static_cast<char>(c));
  }
  if (tok.empty()) throw std::runtime_error("netpbm: truncated header");
  return tok;
}

}  // namespace

RasterImage read_netpbm(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("netpbm: cannot open " + path);

  const std::string magic = next_token(in);
  int channels;
  if (magic == "P5") {
    channels = 1;
  } else if (magic == "P6") {
    channels = 3;
  } else {
    throw std::runtime_error("netpbm: unsupported magic '" + magic + "' in " +
                             path);
  }
  const int width = std::stoi(next_token(in));
  const int height = std::stoi(next_token(in));
  const int maxval = std::stoi(next_token(in));
  if (width <= 0 || height <= 0) {
    throw std::runtime_error("netpbm: bad dimensions in " + path);
  }
  if (maxval != 255) {
    throw std::runtime_error("netpbm: only maxval 255 supported, got " +
                             std::to_string(maxval));
  }
  // Exactly one whitespace byte separates the header from raster data;
  // next_token already consumed it.

  const std::size_t n =
      static_cast<std::size_t>(width) * height * channels;
  std::vector<std::uint8_t> raw(n);
  in.read(reinterpret_cast<char*>(raw.data()), static_cast<std::streamsize>(n));
  if (static_cast<std::size_t>(in.gcount()) != n) {
    throw std::runtime_error("netpbm: truncated raster data in " + path);
  }

  RasterImage img(width, height, channels);
  for (std::size_t i = 0; i < n; ++i) img.data[i] = raw[i];
  return img;
}

void write_netpbm(const RasterImage& img, const std::string& path) {
  if (img.channels != 1 && img.channels != 3) {
    throw std::invalid_argument("netpbm: only 1- or 3-channel images");
  }
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("netpbm: cannot open " + path);

  out << (img.channels == 1 ? "P5" : "P6") << "\n"
      << img.width << " " << img.height << "\n255\n";
  std::vector<std::uint8_t> raw(img.data.size());
  for (std::size_t i = 0; i < img.data.size(); ++i) {
    double v = std::round(img.data[i]);
    if (v < 0.0) v = 0.0;
    if (v > 255.0) v = 255.0;
    raw[i] = static_cast<std::uint8_t>(v);
  }
  out.write(reinterpret_cast<const char*>(raw.data()),
            static_cast<std::streamsize>(raw.size()));
  if (!out) throw std::runtime_error("netpbm: write failed for " + path);
}

}  // namespace morphdet
