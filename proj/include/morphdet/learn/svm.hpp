#ifndef MORPHDET_LEARN_SVM_HPP
#define MORPHDET_LEARN_SVM_HPP

#include <vector>

namespace morphdet {

// Linear soft-margin SVM. Decision score w.x + b, higher => genuine.
struct SvmModel {
  std::vector<double> w;
  double b = 0.0;
  double c = 1.0;  // regularization C used at fit time

  std::size_t dim() const { return w.size(); }
};

// Minimizes 0.5*||w||^2 + C * sum hinge(1 - y*(w.x + b)) over (w, b)
// via SMO on the dual (maximal-violating-pair selection with
// lowest-index tie breaks, so runs are deterministic). Stops when the
// duality gap falls below 1e-6 and the KKT violation below 1e-10, or
// after 1e4 epochs (an epoch is n pair updates). Labels must be +/-1
// with both classes present.
SvmModel fit_linear_svm(const std::vector<std::vector<double>>& X,
                        const std::vector<int>& y, double C = 1.0);

double svm_score(const SvmModel& m, const std::vector<double>& x);

}  // namespace morphdet

#endif
