#include "morphdet/iqm/feature_io.hpp"

#include <cstdint>
#include <cstdio>
#include <cstring>
#include <fstream>
#include <sstream>
#include <stdexcept>

namespace morphdet {

namespace {

constexpr char kMagic[8] = {'M', 'D', 'F', 'E', 'A', 'T', '0', '1'};
constexpr std::uint32_t kVersion = 1;

void put_u32(std::ostream& out, std::uint32_t v) {
  unsigned char b[4];
  for (int i = 0; i < 4; ++i) b[i] = static_cast<unsigned char>(v >> (8 * i));
  out.write(reinterpret_cast<const char*>(b), 4);
}

void put_u64(std::ostream& out, std::uint64_t v) {
  unsigned char b[8];
  for (int i = 0; i < 8; ++i) b[i] = static_cast<unsigned char>(v >> (8 * i));
  out.write(reinterpret_cast<const char*>(b), 8);
}

void put_f64(std::ostream& out, double v) {
  std::uint64_t bits;
  std::memcpy(&bits, &v, 8);
  put_u64(out, bits);
}

std::uint32_t get_u32(std::istream& in) {
  unsigned char b[4];
  in.read(reinterpret_cast<char*>(b), 4);
  std::uint32_t v = 0;
  for (int i = 0; i < 4; ++i) v |= static_cast<std::uint32_t>(b[i]) << (8 * i);
  return v;
}

std::uint64_t get_u64(std::istream& in) {
  unsigned char b[8];
  in.read(reinterpret_cast<char*>(b), 8);
  std::uint64_t v = 0;
  for (int i = 0; i < 8; ++i) v |= static_cast<std::uint64_t>(b[i]) << (8 * i);
  return v;
}

double get_f64(std::istream& in) {
  const std::uint64_t bits = get_u64(in);
  double v;
  std::memcpy(&v, &bits, 8);
  return v;
}

bool is_registry_layout(const FeatureTable& t) {
  return t.column_names == iqm_registry_names();
}

void check_table(const FeatureTable& t) {
  if (t.frame_ids.size() != t.rows.size()) {
    throw std::invalid_argument("feature table: frame id / row count mismatch");
  }
  for (const auto& row : t.rows) {
    if (row.size() != t.column_names.size()) {
      throw std::invalid_argument("feature table: ragged row");
    }
  }
}

}  // namespace

void write_feature_csv(const FeatureTable& t, const std::string& path) {
  check_table(t);
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("feature csv: cannot open " + path);
  out << "frame_id";
  for (const auto& name : t.column_names) out << ',' << name;
  out << '\n';
  char buf[40];
  for (std::size_t r = 0; r < t.rows.size(); ++r) {
    out << t.frame_ids[r];
    for (double v : t.rows[r]) {
      std::snprintf(buf, sizeof(buf), "%.17g", v);
      out << ',' << buf;
    }
    out << '\n';
  }
  if (!out) throw std::runtime_error("feature csv: write failed for " + path);
}

FeatureTable read_feature_csv(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("feature csv: cannot open " + path);
  FeatureTable t;
  std::string line;
  if (!std::getline(in, line)) {
    throw std::runtime_error("feature csv: empty file " + path);
  }
  std::stringstream header(line);
  std::string cell;
  bool first = true;
  while (std::getline(header, cell, ',')) {
    if (first) {
      if (cell != "frame_id") {
        throw std::runtime_error("feature csv: bad header in " + path);
      }
      first = false;
    } else {
      t.column_names.push_back(cell);
    }
  }
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    std::stringstream row(line);
    std::string id;
    if (!std::getline(row, id, ',')) {
      throw std::runtime_error("feature csv: bad row in " + path);
    }
    std::vector<double> values;
    values.reserve(t.column_names.size());
    while (std::getline(row, cell, ',')) {
      values.push_back(std::stod(cell));
    }
    if (values.size() != t.column_names.size()) {
      throw std::runtime_error("feature csv: ragged row in " + path);
    }
    t.frame_ids.push_back(id);
    t.rows.push_back(std::move(values));
  }
  return t;
}

void write_feature_bin(const FeatureTable& t, const std::string& path) {
  check_table(t);
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("feature bin: cannot open " + path);
  out.write(kMagic, 8);
  put_u32(out, kVersion);
  put_u64(out, is_registry_layout(t) ? iqm_registry_hash() : 0);
  put_u32(out, static_cast<std::uint32_t>(t.rows.size()));
  put_u32(out, static_cast<std::uint32_t>(t.column_names.size()));
  for (std::size_t r = 0; r < t.rows.size(); ++r) {
    put_u32(out, static_cast<std::uint32_t>(t.frame_ids[r].size()));
    out.write(t.frame_ids[r].data(),
              static_cast<std::streamsize>(t.frame_ids[r].size()));
    for (double v : t.rows[r]) put_f64(out, v);
  }
  if (!out) throw std::runtime_error("feature bin: write failed for " + path);
}

FeatureTable read_feature_bin(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("feature bin: cannot open " + path);
  char magic[8];
  in.read(magic, 8);
  if (!in || std::memcmp(magic, kMagic, 8) != 0) {
    throw std::runtime_error("feature bin: bad magic in " + path);
  }
  const std::uint32_t version = get_u32(in);
  if (version != kVersion) {
    throw std::runtime_error("feature bin: unsupported version in " + path);
  }
  const std::uint64_t hash = get_u64(in);
  const std::uint32_t rows = get_u32(in);
  const std::uint32_t cols = get_u32(in);

  FeatureTable t;
  if (hash != 0) {
    if (hash != iqm_registry_hash()) {
      throw std::runtime_error("feature bin: registry hash mismatch in " +
                               path);
    }
    if (cols != iqm_registry_size()) {
      throw std::runtime_error("feature bin: registry column count mismatch");
    }
    t.column_names = iqm_registry_names();
  } else {
    for (std::uint32_t c = 0; c < cols; ++c) {
      t.column_names.push_back("f" + std::to_string(c));
    }
  }
  for (std::uint32_t r = 0; r < rows; ++r) {
    const std::uint32_t len = get_u32(in);
    std::string id(len, '\0');
    in.read(id.data(), len);
    std::vector<double> values(cols);
    for (std::uint32_t c = 0; c < cols; ++c) values[c] = get_f64(in);
    if (!in) throw std::runtime_error("feature bin: truncated " + path);
    t.frame_ids.push_back(std::move(id));
    t.rows.push_back(std::move(values));
  }
  return t;
}

}  // namespace morphdet
