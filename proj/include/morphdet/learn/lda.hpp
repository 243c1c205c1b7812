#ifndef MORPHDET_LEARN_LDA_HPP
#define MORPHDET_LEARN_LDA_HPP

#include <vector>

namespace morphdet {

// Two-class Fisher discriminant. Positive class = genuine originals;
// higher score means more genuine. w is unit-norm after fit.
struct LdaModel {
  std::vector<double> w;
  double b = 0.0;

  std::size_t dim() const { return w.size(); }
};

// w proportional to (Sw + ridge*I)^-1 (mu_pos - mu_neg), normalized;
// b = -w^T (mu_pos + mu_neg) / 2. Ridge < 0 selects the default
// 1e-6 * trace(Sw) / d. Each class needs >= 2 samples.
LdaModel fit_lda(const std::vector<std::vector<double>>& X_pos,
                 const std::vector<std::vector<double>>& X_neg,
                 double ridge = -1.0);

double lda_score(const LdaModel& m, const std::vector<double>& x);

}  // namespace morphdet

#endif
