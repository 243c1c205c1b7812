#include "doctest.h"

#include <cmath>
#include <filesystem>

#include "morphdet/learn/lda.hpp"
#include "morphdet/learn/model_io.hpp"
#include "morphdet/learn/pca.hpp"
#include "morphdet/learn/standardizer.hpp"
#include "morphdet/learn/svm.hpp"
#include "oracles.hpp"

using namespace morphdet;

namespace {

using Matrix = std::vector<std::vector<double>>;

Matrix random_matrix(std::size_t rows, std::size_t cols, oracle::TestRng& rng,
                     double scale = 1.0) {
  Matrix X(rows, std::vector<double>(cols));
  for (auto& r : X) {
    for (double& v : r) v = scale * rng.gaussian();
  }
  return X;
}

double angle_deg(const std::vector<double>& a, const std::vector<double>& b) {
  double ab = 0, aa = 0, bb = 0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    ab += a[i] * b[i];
    aa += a[i] * a[i];
    bb += b[i] * b[i];
  }
  const double c =
      std::clamp(std::fabs(ab) / std::sqrt(aa * bb), 0.0, 1.0);
  return std::acos(c) * 180.0 / M_PI;
}

}  // namespace

TEST_CASE("standardizer examples") {
  const StandardizerModel m = fit_standardizer({{1.0}, {3.0}});
  CHECK(m.mean[0] == doctest::Approx(2.0));
  CHECK(m.stddev[0] == doctest::Approx(1.0));
  CHECK(standardize(m, {1.0})[0] == doctest::Approx(-1.0));
  CHECK(standardize(m, {2.0})[0] == doctest::Approx(0.0));

  // constant column maps to zero
  const StandardizerModel c = fit_standardizer({{5.0, 1.0}, {5.0, 2.0}});
  CHECK(standardize(c, {5.0, 1.5})[0] == 0.0);

  CHECK_THROWS_AS(fit_standardizer({}), std::invalid_argument);
}

TEST_CASE("standardized training columns have zero mean and unit std") {
  oracle::TestRng rng(201);
  const Matrix X = random_matrix(50, 5, rng, 3.0);
  const StandardizerModel m = fit_standardizer(X);
  for (std::size_t j = 0; j < 5; ++j) {
    double mean = 0.0, var = 0.0;
    for (const auto& r : X) mean += standardize(m, r)[j];
    mean /= 50.0;
    for (const auto& r : X) {
      const double v = standardize(m, r)[j] - mean;
      var += v * v;
    }
    var /= 50.0;
    CHECK(std::fabs(mean) < 1e-9);
    CHECK(std::sqrt(var) == doctest::Approx(1.0).epsilon(1e-9));
  }
}

TEST_CASE("pca on collinear points keeps one dimension") {
  Matrix X;
  for (int i = 0; i < 12; ++i) {
    X.push_back({1.0 * i, 2.0 * i});
  }
  const PcaModel m = fit_pca(X, 0.99);
  CHECK(m.k == 1);
}

TEST_CASE("pca on an isotropic sample keeps both dimensions at full retention") {
  oracle::TestRng rng(203);
  const Matrix X = random_matrix(200, 2, rng);
  const PcaModel m = fit_pca(X, 1.0);
  CHECK(m.k == 2);
  CHECK_THROWS_AS(fit_pca({{1.0}}, 0.9), std::invalid_argument);
  CHECK_THROWS_AS(fit_pca(X, 0.0), std::invalid_argument);
}

TEST_CASE("pca eigenpairs match the jacobi oracle up to sign") {
  oracle::TestRng rng(207);
  const Matrix X = random_matrix(30, 6, rng, 2.0);
  const PcaModel m = fit_pca(X, 1.0);

  std::vector<double> mean(6, 0.0);
  for (const auto& r : X) {
    for (std::size_t j = 0; j < 6; ++j) mean[j] += r[j];
  }
  for (double& v : mean) v /= 30.0;
  std::vector<std::vector<double>> cov(6, std::vector<double>(6, 0.0));
  for (const auto& r : X) {
    for (std::size_t a = 0; a < 6; ++a) {
      for (std::size_t b = 0; b < 6; ++b) {
        cov[a][b] += (r[a] - mean[a]) * (r[b] - mean[b]) / 29.0;
      }
    }
  }
  const auto want = oracle::jacobi_eigen(cov);
  REQUIRE(m.eigenvalues.size() == 6);
  for (std::size_t i = 0; i < 6; ++i) {
    CHECK(m.eigenvalues[i] ==
          doctest::Approx(want.eigenvalues[i]).epsilon(1e-8));
  }
  for (std::size_t i = 0; i < m.k; ++i) {
    std::vector<double> basis_col(6);
    for (std::size_t j = 0; j < 6; ++j) basis_col[j] = m.basis[j * m.k + i];
    CHECK(angle_deg(basis_col, want.vectors[i]) < 1e-4);
  }
}

TEST_CASE("pca basis is orthonormal and projections are centered") {
  oracle::TestRng rng(209);
  const Matrix X = random_matrix(60, 8, rng, 1.5);
  const PcaModel m = fit_pca(X, 0.95);
  for (std::size_t a = 0; a < m.k; ++a) {
    for (std::size_t b = 0; b < m.k; ++b) {
      double dot = 0.0;
      for (std::size_t j = 0; j < m.dim; ++j) {
        dot += m.basis[j * m.k + a] * m.basis[j * m.k + b];
      }
      CHECK(dot == doctest::Approx(a == b ? 1.0 : 0.0).epsilon(1e-8));
    }
  }
  std::vector<double> psum(m.k, 0.0);
  for (const auto& r : X) {
    const auto z = pca_project(m, r);
    for (std::size_t i = 0; i < m.k; ++i) psum[i] += z[i];
  }
  for (double s : psum) CHECK(std::fabs(s / 60.0) < 1e-9);
}

TEST_CASE("pca projection canonical identities") {
  oracle::TestRng rng(211);
  const Matrix X = random_matrix(40, 5, rng);
  const PcaModel m = fit_pca(X, 1.0);

  const auto z0 = pca_project(m, m.mean);
  for (double v : z0) CHECK(std::fabs(v) < 1e-10);

  for (std::size_t i = 0; i < m.k; ++i) {
    std::vector<double> x = m.mean;
    for (std::size_t j = 0; j < m.dim; ++j) x[j] += m.basis[j * m.k + i];
    const auto z = pca_project(m, x);
    for (std::size_t c = 0; c < m.k; ++c) {
      CHECK(z[c] == doctest::Approx(c == i ? 1.0 : 0.0).epsilon(1e-9));
    }
  }
  CHECK_THROWS_AS(pca_project(m, {1.0, 2.0}), std::invalid_argument);
}

TEST_CASE("pca reconstruction error is non-increasing in k") {
  oracle::TestRng rng(213);
  Matrix X = random_matrix(50, 6, rng);
  // stretch two directions so the spectrum is uneven
  for (auto& r : X) {
    r[0] *= 5.0;
    r[1] *= 2.0;
  }
  const PcaModel m = fit_pca(X, 1.0);
  double prev = 1e300;
  for (std::size_t k = 1; k <= m.k; ++k) {
    double err = 0.0;
    for (const auto& r : X) {
      auto z = pca_project(m, r);
      z.resize(k);
      const auto back = pca_reconstruct(m, z);
      for (std::size_t j = 0; j < r.size(); ++j) {
        err += (back[j] - r[j]) * (back[j] - r[j]);
      }
    }
    CHECK(err <= prev + 1e-9);
    prev = err;
  }
}

TEST_CASE("pca handles more dimensions than samples via the gram route") {
  oracle::TestRng rng(217);
  // pixel-like fixture: 500 samples, 800 dims
  Matrix X(500, std::vector<double>(800));
  for (auto& r : X) {
    const double base = rng.uniform(0.0, 255.0);
    const double f = rng.uniform(0.5, 4.0);
    for (std::size_t j = 0; j < 800; ++j) {
      r[j] = std::clamp(base + 40.0 * std::sin(f * j * 0.01) +
                            rng.uniform(-10.0, 10.0),
                        0.0, 255.0);
    }
  }
  const PcaModel m = fit_pca(X, 0.99);
  CHECK(m.k < 800);  // dimension reduction actually happens
  CHECK(m.k >= 1);
  // orthonormality spot check on the first few columns
  for (std::size_t a = 0; a < std::min<std::size_t>(3, m.k); ++a) {
    double nrm = 0.0;
    for (std::size_t j = 0; j < m.dim; ++j) {
      nrm += m.basis[j * m.k + a] * m.basis[j * m.k + a];
    }
    CHECK(nrm == doctest::Approx(1.0).epsilon(1e-8));
  }
}

TEST_CASE("lda recovers the mean-difference direction for isotropic classes") {
  oracle::TestRng rng(219);
  Matrix pos, neg;
  const std::vector<double> mu_p = {4.0, 1.0, -2.0};
  const std::vector<double> mu_n = {-4.0, -1.0, 2.0};
  for (int i = 0; i < 10000; ++i) {
    std::vector<double> p(3), q(3);
    for (int j = 0; j < 3; ++j) {
      p[j] = mu_p[j] + 0.5 * rng.gaussian();
      q[j] = mu_n[j] + 0.5 * rng.gaussian();
    }
    pos.push_back(p);
    neg.push_back(q);
  }
  const LdaModel m = fit_lda(pos, neg);
  std::vector<double> diff(3);
  for (int j = 0; j < 3; ++j) diff[j] = mu_p[j] - mu_n[j];
  CHECK(angle_deg(m.w, diff) < 1.0);

  double norm = 0.0;
  for (double v : m.w) norm += v * v;
  CHECK(std::sqrt(norm) == doctest::Approx(1.0).epsilon(1e-12));
}

TEST_CASE("lda label swap negates scores") {
  oracle::TestRng rng(223);
  const Matrix pos = random_matrix(30, 4, rng, 1.0);
  Matrix neg = random_matrix(30, 4, rng, 1.0);
  for (auto& r : neg) r[0] += 3.0;
  const LdaModel a = fit_lda(pos, neg);
  const LdaModel b = fit_lda(neg, pos);
  oracle::TestRng probe_rng(224);
  for (int i = 0; i < 10; ++i) {
    std::vector<double> x(4);
    for (double& v : x) v = probe_rng.gaussian();
    CHECK(lda_score(a, x) == doctest::Approx(-lda_score(b, x)).epsilon(1e-9));
  }
}

TEST_CASE("lda matches the closed-form solve on anisotropic data") {
  oracle::TestRng rng(227);
  Matrix pos, neg;
  for (int i = 0; i < 300; ++i) {
    const double t1 = rng.gaussian(), t2 = rng.gaussian();
    // strongly anisotropic shared covariance
    pos.push_back({2.0 + 3.0 * t1 + 0.5 * t2, 1.0 + 0.2 * t2});
    const double s1 = rng.gaussian(), s2 = rng.gaussian();
    neg.push_back({-2.0 + 3.0 * s1 + 0.5 * s2, -1.0 + 0.2 * s2});
  }
  const double ridge = 1e-9;
  const LdaModel m = fit_lda(pos, neg, ridge);

  // direct 2x2 closed form: w = Sw^-1 (mu_p - mu_n)
  auto mean_of = [](const Matrix& X) {
    std::vector<double> mu(X[0].size(), 0.0);
    for (const auto& r : X) {
      for (std::size_t j = 0; j < mu.size(); ++j) mu[j] += r[j];
    }
    for (double& v : mu) v /= static_cast<double>(X.size());
    return mu;
  };
  const auto mu_p = mean_of(pos);
  const auto mu_n = mean_of(neg);
  double s00 = ridge, s01 = 0.0, s11 = ridge;
  for (const Matrix* cls : {&pos, &neg}) {
    const auto mu = mean_of(*cls);
    for (const auto& r : *cls) {
      s00 += (r[0] - mu[0]) * (r[0] - mu[0]);
      s01 += (r[0] - mu[0]) * (r[1] - mu[1]);
      s11 += (r[1] - mu[1]) * (r[1] - mu[1]);
    }
  }
  const double det = s00 * s11 - s01 * s01;
  const double d0 = mu_p[0] - mu_n[0], d1 = mu_p[1] - mu_n[1];
  std::vector<double> w = {(s11 * d0 - s01 * d1) / det,
                           (-s01 * d0 + s00 * d1) / det};
  CHECK(angle_deg(m.w, w) < 1e-4);  // ~1.7e-6 rad

  // midpoint scores zero
  std::vector<double> mid = {(mu_p[0] + mu_n[0]) / 2.0,
                             (mu_p[1] + mu_n[1]) / 2.0};
  CHECK(lda_score(m, mid) == doctest::Approx(0.0).epsilon(1e-9));
  CHECK(lda_score(m, mu_p) > 0.0);
}

TEST_CASE("lda scores are invariant under a constant shift of all data") {
  oracle::TestRng rng(229);
  Matrix pos = random_matrix(40, 3, rng);
  Matrix neg = random_matrix(40, 3, rng);
  for (auto& r : pos) r[1] += 2.5;
  const LdaModel base = fit_lda(pos, neg, 1e-6);

  const std::vector<double> shift = {7.0, -3.0, 11.0};
  Matrix pos_s = pos, neg_s = neg;
  for (auto& r : pos_s) {
    for (int j = 0; j < 3; ++j) r[j] += shift[j];
  }
  for (auto& r : neg_s) {
    for (int j = 0; j < 3; ++j) r[j] += shift[j];
  }
  const LdaModel shifted = fit_lda(pos_s, neg_s, 1e-6);
  for (int i = 0; i < 10; ++i) {
    std::vector<double> x(3), xs(3);
    for (int j = 0; j < 3; ++j) {
      x[j] = rng.gaussian();
      xs[j] = x[j] + shift[j];
    }
    CHECK(lda_score(base, x) ==
          doctest::Approx(lda_score(shifted, xs)).epsilon(1e-7));
  }
}

TEST_CASE("lda sign is invariant under positive feature scaling") {
  oracle::TestRng rng(231);
  Matrix pos = random_matrix(30, 3, rng);
  Matrix neg = random_matrix(30, 3, rng);
  for (auto& r : pos) r[0] += 2.0;
  const LdaModel base = fit_lda(pos, neg);
  Matrix pos2 = pos, neg2 = neg;
  const double scale = 37.5;
  for (auto& r : pos2) {
    for (double& v : r) v *= scale;
  }
  for (auto& r : neg2) {
    for (double& v : r) v *= scale;
  }
  const LdaModel scaled = fit_lda(pos2, neg2);
  for (int i = 0; i < 20; ++i) {
    std::vector<double> x(3), xs(3);
    for (int j = 0; j < 3; ++j) {
      x[j] = rng.gaussian();
      xs[j] = x[j] * scale;
    }
    const double a = lda_score(base, x);
    const double b = lda_score(scaled, xs);
    if (std::fabs(a) > 1e-9) CHECK((a > 0) == (b > 0));
  }
}

TEST_CASE("svm on the 1-D toy matches the grid oracle") {
  const Matrix X = {{-2.0}, {-1.0}, {1.0}, {2.0}};
  const std::vector<int> y = {-1, -1, 1, 1};
  const SvmModel m = fit_linear_svm(X, y, 1.0);

  for (std::size_t i = 0; i < X.size(); ++i) {
    CHECK(svm_score(m, X[i]) * y[i] > 0.0);
  }
  CHECK(std::fabs(-m.b / m.w[0]) <= 0.25);  // decision boundary near 0

  const auto grid = oracle::grid_svm(X, y, 1.0);
  const double got = oracle::svm_objective(X, y, m.w, m.b, 1.0);
  CHECK(got <= grid.objective + 1e-4);
  CHECK(got >= grid.objective - 1e-4);
}

TEST_CASE("svm separates 2-D blobs with margin") {
  oracle::TestRng rng(233);
  Matrix X;
  std::vector<int> y;
  for (int i = 0; i < 60; ++i) {
    X.push_back({3.0 + 0.4 * rng.gaussian(), 2.0 + 0.4 * rng.gaussian()});
    y.push_back(1);
    X.push_back({-3.0 + 0.4 * rng.gaussian(), -2.0 + 0.4 * rng.gaussian()});
    y.push_back(-1);
  }
  const SvmModel m = fit_linear_svm(X, y, 1.0);
  int correct = 0;
  for (std::size_t i = 0; i < X.size(); ++i) {
    if (svm_score(m, X[i]) * y[i] > 0.0) ++correct;
  }
  CHECK(correct == static_cast<int>(X.size()));

  const auto grid = oracle::grid_svm(X, y, 1.0);
  const double got = oracle::svm_objective(X, y, m.w, m.b, 1.0);
  CHECK(got <= grid.objective + 1e-4);
}

TEST_CASE("duplicating every training point with halved C keeps the model") {
  const Matrix X = {{-2.0, 0.3}, {-1.0, -0.2}, {1.2, 0.1}, {2.0, -0.4}};
  const std::vector<int> y = {-1, -1, 1, 1};
  const SvmModel a = fit_linear_svm(X, y, 1.0);

  Matrix X2 = X;
  X2.insert(X2.end(), X.begin(), X.end());
  std::vector<int> y2 = y;
  y2.insert(y2.end(), y.begin(), y.end());
  const SvmModel b = fit_linear_svm(X2, y2, 0.5);

  for (std::size_t j = 0; j < a.w.size(); ++j) {
    CHECK(a.w[j] == doctest::Approx(b.w[j]).epsilon(1e-9));
  }
  CHECK(a.b == doctest::Approx(b.b).epsilon(1e-9));
}

TEST_CASE("svm scoring is linear and deterministic") {
  oracle::TestRng rng(239);
  Matrix X;
  std::vector<int> y;
  for (int i = 0; i < 40; ++i) {
    X.push_back({rng.gaussian() + 2.0, rng.gaussian()});
    y.push_back(1);
    X.push_back({rng.gaussian() - 2.0, rng.gaussian()});
    y.push_back(-1);
  }
  const SvmModel m1 = fit_linear_svm(X, y, 1.0);
  const SvmModel m2 = fit_linear_svm(X, y, 1.0);
  CHECK(m1.w == m2.w);  // bit-identical refit
  CHECK(m1.b == m2.b);

  // affine in x
  const std::vector<double> x1 = {1.0, -2.0}, x2 = {-0.5, 3.0};
  const double alpha = 0.3;
  std::vector<double> mix = {alpha * x1[0] + (1 - alpha) * x2[0],
                             alpha * x1[1] + (1 - alpha) * x2[1]};
  CHECK(svm_score(m1, mix) ==
        doctest::Approx(alpha * svm_score(m1, x1) +
                        (1 - alpha) * svm_score(m1, x2))
            .epsilon(1e-12));

  // far-away genuine point scores strongly positive
  CHECK(svm_score(m1, {50.0, 0.0}) > 10.0);

  CHECK_THROWS_AS(fit_linear_svm({{1.0}, {2.0}}, {1, 1}, 1.0),
                  std::invalid_argument);
  CHECK_THROWS_AS(fit_linear_svm(X, y, 0.0), std::invalid_argument);
}

TEST_CASE("model files round-trip all four kinds") {
  namespace fs = std::filesystem;
  const fs::path dir = fs::temp_directory_path() / "morphdet_model_test";
  fs::create_directories(dir);
  oracle::TestRng rng(241);

  const Matrix X = random_matrix(20, 3, rng, 2.0);
  const StandardizerModel st = fit_standardizer(X);
  save_model(st, (dir / "st.bin").string());
  const StandardizerModel st2 = load_standardizer((dir / "st.bin").string());
  CHECK(st2.mean == st.mean);
  CHECK(st2.stddev == st.stddev);
  CHECK(fs::exists(dir / "st.bin.json"));

  const PcaModel pca = fit_pca(X, 0.99);
  save_model(pca, (dir / "pca.bin").string());
  const PcaModel pca2 = load_pca((dir / "pca.bin").string());
  CHECK(pca2.basis == pca.basis);
  CHECK(pca2.eigenvalues == pca.eigenvalues);
  CHECK(pca2.k == pca.k);

  Matrix pos = random_matrix(10, 3, rng), neg = random_matrix(10, 3, rng);
  for (auto& r : pos) r[0] += 4.0;
  const LdaModel lda = fit_lda(pos, neg);
  save_model(lda, (dir / "lda.bin").string());
  const LdaModel lda2 = load_lda((dir / "lda.bin").string());
  CHECK(lda2.w == lda.w);
  CHECK(lda2.b == lda.b);

  Matrix Xs;
  std::vector<int> ys;
  for (int i = 0; i < 10; ++i) {
    Xs.push_back({rng.gaussian() + 2.0, rng.gaussian(), 0.0});
    ys.push_back(1);
    Xs.push_back({rng.gaussian() - 2.0, rng.gaussian(), 0.0});
    ys.push_back(-1);
  }
  const SvmModel svm = fit_linear_svm(Xs, ys, 2.0);
  save_model(svm, (dir / "svm.bin").string());
  const SvmModel svm2 = load_svm((dir / "svm.bin").string());
  CHECK(svm2.w == svm.w);
  CHECK(svm2.b == svm.b);
  CHECK(svm2.c == svm.c);

  CHECK(peek_model_kind((dir / "pca.bin").string()) == ModelKind::kPca);
  CHECK_THROWS(load_svm((dir / "pca.bin").string()));
  fs::remove_all(dir);
}
