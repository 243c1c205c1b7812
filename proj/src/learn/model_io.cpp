#include "morphdet/learn/model_io.hpp"

#include <cstring>
#include <fstream>
#include <stdexcept>
#include <vector>

#include <nlohmann/json.hpp>

namespace morphdet {

namespace {

constexpr char kMagic[8] = {'M', 'D', 'M', 'O', 'D', 'E', 'L', '1'};
constexpr std::uint32_t kVersion = 1;

void put_vec(std::ostream& out, const std::vector<double>& v) {
  io_put_u32(out, static_cast<std::uint32_t>(v.size()));
  for (double x : v) io_put_f64(out, x);
}

std::vector<double> get_vec(std::istream& in) {
  const std::uint32_t n = io_get_u32(in);
  std::vector<double> v(n);
  for (std::uint32_t i = 0; i < n; ++i) v[i] = io_get_f64(in);
  return v;
}

void write_header(std::ostream& out, ModelKind kind) {
  out.write(kMagic, 8);
  io_put_u32(out, kVersion);
  io_put_u32(out, static_cast<std::uint32_t>(kind));
}

ModelKind read_header(std::istream& in) {
  char magic[8];
  in.read(magic, 8);
  if (!in || std::memcmp(magic, kMagic, 8) != 0) {
    throw std::runtime_error("model file: bad magic");
  }
  if (io_get_u32(in) != kVersion) {
    throw std::runtime_error("model file: unsupported version");
  }
  return static_cast<ModelKind>(io_get_u32(in));
}

template <typename Model>
void save_with_kind(const Model& m, ModelKind kind, const std::string& path,
                    const nlohmann::json& dump) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("model file: cannot open " + path);
  write_header(out, kind);
  write_model(out, m);
  if (!out) throw std::runtime_error("model file: write failed " + path);
  std::ofstream js(path + ".json");
  js << dump.dump(2) << '\n';
}

template <typename Reader>
auto load_with_kind(const std::string& path, ModelKind kind, Reader reader) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("model file: cannot open " + path);
  if (read_header(in) != kind) {
    throw std::runtime_error("model file: unexpected model kind in " + path);
  }
  return reader(in);
}

}  // namespace

void io_put_u32(std::ostream& out, std::uint32_t v) {
  unsigned char b[4];
  for (int i = 0; i < 4; ++i) b[i] = static_cast<unsigned char>(v >> (8 * i));
  out.write(reinterpret_cast<const char*>(b), 4);
}

void io_put_f64(std::ostream& out, double v) {
  std::uint64_t bits;
  std::memcpy(&bits, &v, 8);
  unsigned char b[8];
  for (int i = 0; i < 8; ++i) {
    b[i] = static_cast<unsigned char>(bits >> (8 * i));
  }
  out.write(reinterpret_cast<const char*>(b), 8);
}

std::uint32_t io_get_u32(std::istream& in) {
  unsigned char b[4];
  in.read(reinterpret_cast<char*>(b), 4);
  if (!in) throw std::runtime_error("model file: truncated");
  std::uint32_t v = 0;
  for (int i = 0; i < 4; ++i) v |= static_cast<std::uint32_t>(b[i]) << (8 * i);
  return v;
}

double io_get_f64(std::istream& in) {
  unsigned char b[8];
  in.read(reinterpret_cast<char*>(b), 8);
  if (!in) throw std::runtime_error("model file: truncated");
  std::uint64_t bits = 0;
  for (int i = 0; i < 8; ++i) {
    bits |= static_cast<std::uint64_t>(b[i]) << (8 * i);
  }
  double v;
  std::memcpy(&v, &bits, 8);
  return v;
}

void write_model(std::ostream& out, const StandardizerModel& m) {
  put_vec(out, m.mean);
  put_vec(out, m.stddev);
}

StandardizerModel read_standardizer(std::istream& in) {
  StandardizerModel m;
  m.mean = get_vec(in);
  m.stddev = get_vec(in);
  if (m.mean.size() != m.stddev.size()) {
    throw std::runtime_error("model file: standardizer dims mismatch");
  }
  return m;
}

void write_model(std::ostream& out, const PcaModel& m) {
  io_put_u32(out, static_cast<std::uint32_t>(m.dim));
  io_put_u32(out, static_cast<std::uint32_t>(m.k));
  io_put_f64(out, m.retained_variance_target);
  put_vec(out, m.mean);
  put_vec(out, m.basis);
  put_vec(out, m.eigenvalues);
}

PcaModel read_pca(std::istream& in) {
  PcaModel m;
  m.dim = io_get_u32(in);
  m.k = io_get_u32(in);
  m.retained_variance_target = io_get_f64(in);
  m.mean = get_vec(in);
  m.basis = get_vec(in);
  m.eigenvalues = get_vec(in);
  if (m.mean.size() != m.dim || m.basis.size() != m.dim * m.k) {
    throw std::runtime_error("model file: pca dims mismatch");
  }
  return m;
}

void write_model(std::ostream& out, const LdaModel& m) {
  put_vec(out, m.w);
  io_put_f64(out, m.b);
}

LdaModel read_lda(std::istream& in) {
  LdaModel m;
  m.w = get_vec(in);
  m.b = io_get_f64(in);
  return m;
}

void write_model(std::ostream& out, const SvmModel& m) {
  put_vec(out, m.w);
  io_put_f64(out, m.b);
  io_put_f64(out, m.c);
}

SvmModel read_svm(std::istream& in) {
  SvmModel m;
  m.w = get_vec(in);
  m.b = io_get_f64(in);
  m.c = io_get_f64(in);
  return m;
}

void save_model(const StandardizerModel& m, const std::string& path) {
  save_with_kind(m, ModelKind::kStandardizer, path,
                 nlohmann::json{{"kind", "standardizer"},
                                {"mean", m.mean},
                                {"stddev", m.stddev}});
}

void save_model(const PcaModel& m, const std::string& path) {
  save_with_kind(m, ModelKind::kPca, path,
                 nlohmann::json{{"kind", "pca"},
                                {"dim", m.dim},
                                {"k", m.k},
                                {"retained", m.retained_variance_target},
                                {"mean", m.mean},
                                {"basis", m.basis},
                                {"eigenvalues", m.eigenvalues}});
}

void save_model(const LdaModel& m, const std::string& path) {
  save_with_kind(m, ModelKind::kLda, path,
                 nlohmann::json{{"kind", "lda"}, {"w", m.w}, {"b", m.b}});
}

void save_model(const SvmModel& m, const std::string& path) {
  save_with_kind(
      m, ModelKind::kSvm, path,
      nlohmann::json{{"kind", "svm"}, {"w", m.w}, {"b", m.b}, {"C", m.c}});
}

ModelKind peek_model_kind(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("model file: cannot open " + path);
  return read_header(in);
}

StandardizerModel load_standardizer(const std::string& path) {
  return load_with_kind(path, ModelKind::kStandardizer, read_standardizer);
}

PcaModel load_pca(const std::string& path) {
  return load_with_kind(path, ModelKind::kPca, read_pca);
}

LdaModel load_lda(const std::string& path) {
  return load_with_kind(path, ModelKind::kLda, read_lda);
}

SvmModel load_svm(const std::string& path) {
  return load_with_kind(path, ModelKind::kSvm, read_svm);
}

}  // namespace morphdet
