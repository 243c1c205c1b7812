#include "morphdet/learn/svm.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

namespace morphdet {

namespace {

constexpr double kGapTol = 1e-6;
constexpr double kViolationTol = 1e-10;
constexpr long kMaxEpochs = 10000;

double dot(const std::vector<double>& a, const std::vector<double>& b) {
  double s = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
  return s;
}

}  // namespace

SvmModel fit_linear_svm(const std::vector<std::vector<double>>& X,
                        const std::vector<int>& y, double C) {
  const std::size_t n = X.size();
  if (n == 0 || y.size() != n) {
    throw std::invalid_argument("fit_linear_svm: bad data shape");
  }
  if (C <= 0.0) throw std::invalid_argument("fit_linear_svm: C must be > 0");
  const std::size_t d = X[0].size();
  bool has_pos = false, has_neg = false;
  for (std::size_t i = 0; i < n; ++i) {
    if (X[i].size() != d) {
      throw std::invalid_argument("fit_linear_svm: ragged matrix");
    }
    if (y[i] == 1) {
      has_pos = true;
    } else if (y[i] == -1) {
      has_neg = true;
    } else {
      throw std::invalid_argument("fit_linear_svm: labels must be +/-1");
    }
  }
  if (!has_pos || !has_neg) {
    throw std::invalid_argument("fit_linear_svm: both classes required");
  }

  std::vector<double> alpha(n, 0.0);
  std::vector<double> w(d, 0.0);
  std::vector<double> self_dot(n);
  for (std::size_t i = 0; i < n; ++i) self_dot[i] = dot(X[i], X[i]);

  // Candidate bias values g_i = y_i - w.x_i. The optimum satisfies
  //   max over I_up of g_i  <=  b  <=  min over I_low of g_i,
  // and the selected pair is the one violating that ordering the most.
  auto select_pair = [&](std::size_t* pi, std::size_t* pj, double* up,
                         double* low) {
    double best_up = -std::numeric_limits<double>::infinity();
    double best_low = std::numeric_limits<double>::infinity();
    std::size_t bi = n, bj = n;
    for (std::size_t i = 0; i < n; ++i) {
      const double g = static_cast<double>(y[i]) - dot(w, X[i]);
      const bool in_up = (y[i] == 1 && alpha[i] < C) ||
                         (y[i] == -1 && alpha[i] > 0.0);
      const bool in_low = (y[i] == -1 && alpha[i] < C) ||
                          (y[i] == 1 && alpha[i] > 0.0);
      if (in_up && g > best_up) {
        best_up = g;
        bi = i;
      }
      if (in_low && g < best_low) {
        best_low = g;
        bj = i;
      }
    }
    *pi = bi;
    *pj = bj;
    *up = best_up;
    *low = best_low;
  };

  auto duality_gap = [&](double b) {
    double primal = 0.5 * dot(w, w);
    for (std::size_t i = 0; i < n; ++i) {
      primal += C * std::max(0.0, 1.0 - y[i] * (dot(w, X[i]) + b));
    }
    double dual = -0.5 * dot(w, w);
    for (std::size_t i = 0; i < n; ++i) dual += alpha[i];
    return primal - dual;
  };

  const long max_updates =
      kMaxEpochs * static_cast<long>(std::max<std::size_t>(n, 1));
  double bias = 0.0;
  for (long update = 0; update < max_updates; ++update) {
    std::size_t i, j;
    double up, low;
    select_pair(&i, &j, &up, &low);
    if (i >= n || j >= n) break;  // box fully saturated
    const double violation = up - low;
    bias = 0.5 * (up + low);
    if (violation <= 0.0) break;  // exact KKT point
    if (violation <= kViolationTol && duality_gap(bias) <= kGapTol) break;

    // Two-variable subproblem along alpha_i += y_i*t, alpha_j -= y_j*t
    // (which keeps sum alpha*y constant); the unclipped optimum is
    // violation / ||x_i - x_j||^2.
    const double eta = self_dot[i] + self_dot[j] - 2.0 * dot(X[i], X[j]);
    double t_max = y[i] == 1 ? C - alpha[i] : alpha[i];
    t_max = std::min(t_max, y[j] == 1 ? alpha[j] : C - alpha[j]);
    const double t =
        eta > 1e-12 ? std::min(violation / eta, t_max) : t_max;
    if (!(t > 0.0) || !std::isfinite(t)) break;

    alpha[i] += static_cast<double>(y[i]) * t;
    alpha[j] -= static_cast<double>(y[j]) * t;
    alpha[i] = std::clamp(alpha[i], 0.0, C);
    alpha[j] = std::clamp(alpha[j], 0.0, C);
    for (std::size_t k = 0; k < d; ++k) w[k] += t * (X[i][k] - X[j][k]);
  }

  SvmModel m;
  m.w = w;
  m.b = bias;
  m.c = C;
  return m;
}

double svm_score(const SvmModel& m, const std::vector<double>& x) {
  if (x.size() != m.dim()) {
    throw std::invalid_argument("svm_score: dimension mismatch");
  }
  double s = m.b;
  for (std::size_t i = 0; i < x.size(); ++i) s += m.w[i] * x[i];
  return s;
}

}  // namespace morphdet
