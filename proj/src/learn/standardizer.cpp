#include "morphdet/learn/standardizer.hpp"

#include <cmath>
#include <stdexcept>

namespace morphdet {

namespace {
constexpr double kStdFloor = 1e-12;
}

StandardizerModel fit_standardizer(const std::vector<std::vector<double>>& X) {
  if (X.empty()) throw std::invalid_argument("fit_standardizer: empty matrix");
  const std::size_t d = X[0].size();
  const double n = static_cast<double>(X.size());

  StandardizerModel m;
  m.mean.assign(d, 0.0);
  m.stddev.assign(d, 0.0);
  for (const auto& row : X) {
    if (row.size() != d) {
      throw std::invalid_argument("fit_standardizer: ragged matrix");
    }
    for (std::size_t j = 0; j < d; ++j) m.mean[j] += row[j];
  }
  for (std::size_t j = 0; j < d; ++j) m.mean[j] /= n;
  for (const auto& row : X) {
    for (std::size_t j = 0; j < d; ++j) {
      const double c = row[j] - m.mean[j];
      m.stddev[j] += c * c;
    }
  }
  // Population std (divisor n); constant columns hit the floor.
  for (std::size_t j = 0; j < d; ++j) {
    m.stddev[j] = std::max(std::sqrt(m.stddev[j] / n), kStdFloor);
  }
  return m;
}

std::vector<double> standardize(const StandardizerModel& m,
                                const std::vector<double>& x) {
  if (x.size() != m.dim()) {
    throw std::invalid_argument("standardize: dimension mismatch");
  }
  std::vector<double> out(x.size());
  for (std::size_t j = 0; j < x.size(); ++j) {
    out[j] = (x[j] - m.mean[j]) / m.stddev[j];
  }
  return out;
}

}  // namespace morphdet
