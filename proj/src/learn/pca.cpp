#include "morphdet/learn/pca.hpp"

#include <Eigen/Dense>
#include <cmath>
#include <stdexcept>

namespace morphdet {

namespace {

// Eigenvalues below this fraction of the largest are treated as zero
// rank (they carry no variance and their eigenvectors are arbitrary).
constexpr double kRankEps = 1e-12;

void fix_sign(Eigen::Ref<Eigen::VectorXd> v) {
  int best = 0;
  double best_abs = std::fabs(v[0]);
  for (int i = 1; i < v.size(); ++i) {
    if (std::fabs(v[i]) > best_abs) {
      best_abs = std::fabs(v[i]);
      best = i;
    }
  }
  if (v[best] < 0.0) v = -v;
}

}  // namespace

PcaModel fit_pca(const std::vector<std::vector<double>>& X, double retained) {
  if (X.size() < 2) {
    throw std::invalid_argument("fit_pca: need at least 2 samples");
  }
  if (retained <= 0.0 || retained > 1.0) {
    throw std::invalid_argument("fit_pca: retained must be in (0,1]");
  }
  const std::size_t n = X.size();
  const std::size_t d = X[0].size();
  Eigen::MatrixXd M(n, d);
  for (std::size_t i = 0; i < n; ++i) {
    if (X[i].size() != d) throw std::invalid_argument("fit_pca: ragged matrix");
    for (std::size_t j = 0; j < d; ++j) M(i, j) = X[i][j];
  }
  const Eigen::RowVectorXd mean = M.colwise().mean();
  M.rowwise() -= mean;

  Eigen::VectorXd evals;
  Eigen::MatrixXd evecs;  // d x r, descending eigenvalue order
  if (d <= n) {
    const Eigen::MatrixXd cov = (M.transpose() * M) / double(n - 1);
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(cov);
    if (es.info() != Eigen::Success) {
      throw std::runtime_error("fit_pca: eigendecomposition failed");
    }
    evals = es.eigenvalues().reverse();
    evecs = es.eigenvectors().rowwise().reverse();
  } else {
    // Gram route for d > n: eigenpairs of (M M^T)/(n-1) map to covariance
    // eigenpairs via v = M^T u / sqrt((n-1) * lambda).
    const Eigen::MatrixXd gram = (M * M.transpose()) / double(n - 1);
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(gram);
    if (es.info() != Eigen::Success) {
      throw std::runtime_error("fit_pca: eigendecomposition failed");
    }
    evals = es.eigenvalues().reverse();
    const Eigen::MatrixXd U = es.eigenvectors().rowwise().reverse();
    evecs.resize(d, n);
    for (int i = 0; i < evals.size(); ++i) {
      if (evals[i] > kRankEps * std::max(evals[0], 0.0)) {
        evecs.col(i) =
            M.transpose() * U.col(i) / std::sqrt(double(n - 1) * evals[i]);
      } else {
        evecs.col(i).setZero();
      }
    }
  }

  const double lmax = std::max(evals.size() > 0 ? evals[0] : 0.0, 0.0);
  double total = 0.0;
  int rank = 0;
  for (int i = 0; i < evals.size(); ++i) {
    if (evals[i] > kRankEps * lmax && evals[i] > 0.0) {
      total += evals[i];
      rank = i + 1;
    } else {
      evals[i] = 0.0;
    }
  }
  if (rank == 0) throw std::runtime_error("fit_pca: zero-variance data");

  std::size_t k = 0;
  double cum = 0.0;
  for (int i = 0; i < rank; ++i) {
    cum += evals[i];
    k = static_cast<std::size_t>(i + 1);
    if (cum / total >= retained) break;
  }

  PcaModel model;
  model.dim = d;
  model.k = k;
  model.retained_variance_target = retained;
  model.mean.assign(mean.data(), mean.data() + d);
  model.eigenvalues.assign(evals.data(), evals.data() + rank);
  model.basis.resize(d * k);
  for (std::size_t c = 0; c < k; ++c) {
    Eigen::VectorXd v = evecs.col(static_cast<int>(c));
    fix_sign(v);
    for (std::size_t j = 0; j < d; ++j) model.basis[j * k + c] = v[j];
  }
  return model;
}

std::vector<double> pca_project(const PcaModel& m,
                                const std::vector<double>& x) {
  if (x.size() != m.dim) {
    throw std::invalid_argument("pca_project: dimension mismatch");
  }
  std::vector<double> z(m.k, 0.0);
  for (std::size_t j = 0; j < m.dim; ++j) {
    const double c = x[j] - m.mean[j];
    for (std::size_t i = 0; i < m.k; ++i) z[i] += m.basis[j * m.k + i] * c;
  }
  return z;
}

std::vector<double> pca_reconstruct(const PcaModel& m,
                                    const std::vector<double>& z) {
  if (z.size() > m.k) {
    throw std::invalid_argument("pca_reconstruct: too many components");
  }
  std::vector<double> x(m.mean);
  for (std::size_t j = 0; j < m.dim; ++j) {
    for (std::size_t i = 0; i < z.size(); ++i) {
      x[j] += m.basis[j * m.k + i] * z[i];
    }
  }
  return x;
}

}  // namespace morphdet
