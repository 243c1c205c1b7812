#include "morphdet/verify/store.hpp"

#include <cstdio>
#include <cstring>
#include <fstream>
#include <sstream>
#include <stdexcept>

#include "morphdet/learn/model_io.hpp"

namespace morphdet {

namespace {
constexpr char kMagic[8] = {'M', 'D', 'E', 'M', 'B', 'E', 'D', '1'};
constexpr std::uint32_t kVersion = 1;
}  // namespace

void write_embedding_file(const std::vector<std::vector<double>>& frames,
                          const std::string& path) {
  if (frames.empty()) {
    throw std::invalid_argument("embedding file: no frames to write");
  }
  const std::size_t dim = frames[0].size();
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("embedding file: cannot open " + path);
  out.write(kMagic, 8);
  io_put_u32(out, kVersion);
  io_put_u32(out, static_cast<std::uint32_t>(dim));
  io_put_u32(out, static_cast<std::uint32_t>(frames.size()));
  for (const auto& f : frames) {
    if (f.size() != dim) {
      throw std::invalid_argument("embedding file: ragged frame dims");
    }
    for (double v : f) io_put_f64(out, v);
  }
  if (!out) throw std::runtime_error("embedding file: write failed " + path);
}

std::vector<std::vector<double>> read_embedding_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("embedding file: cannot open " + path);
  char magic[8];
  in.read(magic, 8);
  if (in && std::memcmp(magic, kMagic, 8) == 0) {
    if (io_get_u32(in) != kVersion) {
      throw std::runtime_error("embedding file: unsupported version " + path);
    }
    const std::uint32_t dim = io_get_u32(in);
    const std::uint32_t count = io_get_u32(in);
    if (dim == 0 || count == 0) {
      throw std::runtime_error("embedding file: empty " + path);
    }
    std::vector<std::vector<double>> frames(count, std::vector<double>(dim));
    for (auto& f : frames) {
      for (double& v : f) v = io_get_f64(in);
    }
    return frames;
  }

  // CSV fallback.
  in.clear();
  in.seekg(0);
  std::vector<std::vector<double>> frames;
  std::string line;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    std::vector<double> row;
    std::stringstream ss(line);
    std::string cell;
    while (std::getline(ss, cell, ',')) row.push_back(std::stod(cell));
    if (!frames.empty() && row.size() != frames[0].size()) {
      throw std::runtime_error("embedding file: ragged csv in " + path);
    }
    frames.push_back(std::move(row));
  }
  if (frames.empty()) {
    throw std::runtime_error("embedding file: no data in " + path);
  }
  return frames;
}

}  // namespace morphdet
