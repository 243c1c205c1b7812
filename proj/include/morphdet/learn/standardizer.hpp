#ifndef MORPHDET_LEARN_STANDARDIZER_HPP
#define MORPHDET_LEARN_STANDARDIZER_HPP

#include <vector>

namespace morphdet {

// Per-dimension zero-mean/unit-variance scaling. Stored std is floored
// at 1e-12, so constant columns map to 0.
struct StandardizerModel {
  std::vector<double> mean;
  std::vector<double> stddev;

  std::size_t dim() const { return mean.size(); }
};

StandardizerModel fit_standardizer(const std::vector<std::vector<double>>& X);
std::vector<double> standardize(const StandardizerModel& m,
                                const std::vector<double>& x);

}  // namespace morphdet

#endif
