#ifndef MORPHDET_LEARN_MODEL_IO_HPP
#define MORPHDET_LEARN_MODEL_IO_HPP

#include <cstdint>
#include <iosfwd>
#include <string>

#include "morphdet/learn/lda.hpp"
#include "morphdet/learn/pca.hpp"
#include "morphdet/learn/standardizer.hpp"
#include "morphdet/learn/svm.hpp"

namespace morphdet {

// Model file layout (integers and reals little-endian):
//   magic "MDMODEL1" (8 bytes), u32 version, u32 model kind,
//   then the kind-specific payload (dims as u32, reals as f64).
// save_* also writes a JSON debug dump next to the binary
// (path + ".json") with the same numbers in readable form.
enum class ModelKind : std::uint32_t {
  kStandardizer = 1,
  kPca = 2,
  kLda = 3,
  kSvm = 4,
};

// Stream-level payload codecs, used by the file API below and by the
// composite detector files in the experiment layer.
void write_model(std::ostream& out, const StandardizerModel& m);
void write_model(std::ostream& out, const PcaModel& m);
void write_model(std::ostream& out, const LdaModel& m);
void write_model(std::ostream& out, const SvmModel& m);
StandardizerModel read_standardizer(std::istream& in);
PcaModel read_pca(std::istream& in);
LdaModel read_lda(std::istream& in);
SvmModel read_svm(std::istream& in);

void save_model(const StandardizerModel& m, const std::string& path);
void save_model(const PcaModel& m, const std::string& path);
void save_model(const LdaModel& m, const std::string& path);
void save_model(const SvmModel& m, const std::string& path);

ModelKind peek_model_kind(const std::string& path);
StandardizerModel load_standardizer(const std::string& path);
PcaModel load_pca(const std::string& path);
LdaModel load_lda(const std::string& path);
SvmModel load_svm(const std::string& path);

// Little-endian primitives shared by the binary formats.
void io_put_u32(std::ostream& out, std::uint32_t v);
void io_put_f64(std::ostream& out, double v);
std::uint32_t io_get_u32(std::istream& in);
double io_get_f64(std::istream& in);

}  // namespace morphdet

#endif
