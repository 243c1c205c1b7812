#include "morphdet/learn/lda.hpp"

#include <Eigen/Dense>
#include <cmath>
#include <stdexcept>

namespace morphdet {

namespace {

Eigen::MatrixXd to_matrix(const std::vector<std::vector<double>>& X,
                          std::size_t d) {
  Eigen::MatrixXd M(X.size(), d);
  for (std::size_t i = 0; i < X.size(); ++i) {
    if (X[i].size() != d) throw std::invalid_argument("fit_lda: ragged matrix");
    for (std::size_t j = 0; j < d; ++j) M(i, j) = X[i][j];
  }
  return M;
}

}  // namespace

LdaModel fit_lda(const std::vector<std::vector<double>>& X_pos,
                 const std::vector<std::vector<double>>& X_neg, double ridge) {
  if (X_pos.size() < 2 || X_neg.size() < 2) {
    throw std::invalid_argument("fit_lda: each class needs >= 2 samples");
  }
  const std::size_t d = X_pos[0].size();
  if (X_neg[0].size() != d) {
    throw std::invalid_argument("fit_lda: class dimension mismatch");
  }
  const Eigen::MatrixXd P = to_matrix(X_pos, d);
  const Eigen::MatrixXd N = to_matrix(X_neg, d);
  const Eigen::RowVectorXd mu_p = P.colwise().mean();
  const Eigen::RowVectorXd mu_n = N.colwise().mean();

  const Eigen::MatrixXd Pc = P.rowwise() - mu_p;
  const Eigen::MatrixXd Nc = N.rowwise() - mu_n;
  Eigen::MatrixXd Sw = Pc.transpose() * Pc + Nc.transpose() * Nc;

  if (ridge < 0.0) ridge = 1e-6 * Sw.trace() / static_cast<double>(d);
  Sw.diagonal().array() += ridge;

  const Eigen::VectorXd diff = (mu_p - mu_n).transpose();
  const Eigen::LDLT<Eigen::MatrixXd> solver(Sw);
  if (solver.info() != Eigen::Success) {
    throw std::runtime_error("fit_lda: within-class scatter not factorizable");
  }
  Eigen::VectorXd w = solver.solve(diff);
  const double norm = w.norm();
  if (!(norm > 0.0) || !std::isfinite(norm)) {
    throw std::runtime_error(
        "fit_lda: singular within-class scatter, increase ridge");
  }
  w /= norm;

  LdaModel m;
  m.w.assign(w.data(), w.data() + d);
  m.b = -0.5 * w.dot((mu_p + mu_n).transpose());
  return m;
}

double lda_score(const LdaModel& m, const std::vector<double>& x) {
  if (x.size() != m.dim()) {
    throw std::invalid_argument("lda_score: dimension mismatch");
  }
  double s = m.b;
  for (std::size_t j = 0; j < x.size(); ++j) s += m.w[j] * x[j];
  return s;
}

}  // namespace morphdet
