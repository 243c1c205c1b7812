#ifndef MORPHDET_LEARN_PCA_HPP
#define MORPHDET_LEARN_PCA_HPP

#include <vector>

namespace morphdet {

// PCA by eigendecomposition of the sample covariance (divisor n-1).
// basis holds k orthonormal columns; column i is basis[j*k + i] over
// rows j (column-major by component). Sign convention: the
// largest-magnitude entry of each basis vector is positive, ties broken
// by the lowest row index.
struct PcaModel {
  std::vector<double> mean;
  std::vector<double> basis;        // dim x k, column per component
  std::vector<double> eigenvalues;  // descending, all retained dims
  std::size_t dim = 0;
  std::size_t k = 0;
  double retained_variance_target = 1.0;
};

// k is the minimal count with cumulative variance ratio >= retained.
// Requires >= 2 rows. Inputs with more dimensions than rows are handled
// through the Gram-matrix route, which yields the same eigenpairs for
// nonzero eigenvalues.
PcaModel fit_pca(const std::vector<std::vector<double>>& X, double retained);

// basis^T * (x - mean)
std::vector<double> pca_project(const PcaModel& m,
                                const std::vector<double>& x);

// mean + basis * z (z may have fewer than k entries; missing ones are 0)
std::vector<double> pca_reconstruct(const PcaModel& m,
                                    const std::vector<double>& z);

}  // namespace morphdet

#endif
