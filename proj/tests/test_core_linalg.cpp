#include <doctest.h>

#include <cmath>

#include "test_support.hpp"

using namespace mdt;
using namespace mdt::testing;

TEST_CASE("lq_decompose identity and fixed cases") {
  auto [l, q] = lq_decompose(Matrix::Identity(3, 3));
  CHECK(rel_error(l.mat(), Matrix::Identity(3, 3)) < 1e-12);
  CHECK(rel_error(q.mat(), Matrix::Identity(3, 3)) < 1e-12);

  // Orthogonal input forces L = I by uniqueness.
  Matrix r = rotation2(M_PI / 4);
  auto [l2, q2] = lq_decompose(r);
  CHECK(rel_error(l2.mat(), Matrix::Identity(2, 2)) < 1e-12);
  CHECK(rel_error(q2.mat(), r) < 1e-12);

  Matrix d = Eigen::Vector2d(2, 3).asDiagonal();
  auto [l3, q3] = lq_decompose(d);
  CHECK(rel_error(l3.mat(), d) < 1e-12);
  CHECK(rel_error(q3.mat(), Matrix::Identity(2, 2)) < 1e-12);
}

TEST_CASE("lq_decompose reconstructs and rejects singular input") {
  Rng rng(11);
  for (int n = 2; n <= 5; ++n) {
    for (int k = 0; k < 200; ++k) {
      Matrix a = random_well_conditioned(rng, n);
      auto [l, q] = lq_decompose(a);
      CHECK(rel_error(l.mat() * q.mat(), a) < 1e-10);
      for (int i = 0; i < n; ++i) CHECK(l.mat()(i, i) > 0.0);
    }
  }
  Matrix s(2, 2);
  s << 1, 2, 2, 4;
  CHECK_THROWS_AS(lq_decompose(s), SingularMatrix);
}

TEST_CASE("lq uniqueness: perturbing Q breaks the L invariants") {
  Rng rng(12);
  for (int k = 0; k < 50; ++k) {
    Matrix a = random_well_conditioned(rng, 3);
    auto [l, q] = lq_decompose(a);
    Matrix p = random_orthogonal(rng, 3);
    if (rel_error(p, Matrix::Identity(3, 3)) < 1e-6) continue;
    // Alternative factorization A = (L P^t)(P Q): L P^t must leave L_n^+.
    Matrix l_alt = l.mat() * p.transpose();
    bool lower_ok = true;
    for (int i = 0; i < 3 && lower_ok; ++i) {
      if (l_alt(i, i) <= 0.0) lower_ok = false;
      for (int j = i + 1; j < 3; ++j) {
        if (std::abs(l_alt(i, j)) > 1e-9) lower_ok = false;
      }
    }
    CHECK_FALSE(lower_ok);
  }
}

TEST_CASE("cholesky factor and map") {
  Matrix p(2, 2);
  p << 2, 1, 1, 2;
  LowerTriangularPD l = cholesky_factor(SpdMatrix(p));
  Matrix expected(2, 2);
  expected << std::sqrt(2.0), 0.0, 1.0 / std::sqrt(2.0), std::sqrt(1.5);
  CHECK(rel_error(l.mat(), expected) < 1e-10);
  CHECK(rel_error(cholesky_map(l).mat(), p) < 1e-12);

  Matrix d = Eigen::Vector2d(4, 9).asDiagonal();
  Matrix d_sqrt = Eigen::Vector2d(2, 3).asDiagonal();
  CHECK(rel_error(cholesky_factor(SpdMatrix(d)).mat(), d_sqrt) < 1e-12);
  CHECK(rel_error(cholesky_map(LowerTriangularPD(d_sqrt)).mat(), d) < 1e-12);

  Rng rng(13);
  for (int n = 2; n <= 5; ++n) {
    for (int k = 0; k < 100; ++k) {
      LowerTriangularPD rl = random_lower(rng, n);
      CHECK(rel_error(cholesky_factor(cholesky_map(rl)).mat(), rl.mat()) < 1e-9);
    }
  }
}

TEST_CASE("spd_eigen reconstruction and hand-computed spectrum") {
  Matrix p(2, 2);
  p << 2, 1, 1, 2;
  SpdEigen eig = spd_eigen(SpdMatrix(p));
  CHECK(eig.values(0) == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(eig.values(1) == doctest::Approx(3.0).epsilon(1e-12));

  Rng rng(14);
  for (int n = 2; n <= 5; ++n) {
    for (int k = 0; k < 50; ++k) {
      SpdMatrix s = random_spd(rng, n);
      SpdEigen e = spd_eigen(s);
      const Matrix& v = e.vectors.mat();
      CHECK(rel_error(v * e.values.asDiagonal() * v.transpose(), s.mat()) < 1e-10);
      for (int i = 1; i < n; ++i) CHECK(e.values(i) >= e.values(i - 1));
      CHECK(e.values(0) > 0.0);
    }
  }
}

TEST_CASE("spd log, exp, sqrt") {
  CHECK(spd_log(SpdMatrix(Matrix::Identity(3, 3))).norm() == doctest::Approx(0.0));
  Matrix d = Eigen::Vector2d(std::exp(1.0), std::exp(2.0)).asDiagonal();
  CHECK(rel_error(spd_log(SpdMatrix(d)), Eigen::Vector2d(1, 2).asDiagonal()) < 1e-12);
  CHECK(rel_error(spd_exp(Matrix::Zero(2, 2)).mat(), Matrix::Identity(2, 2)) < 1e-15);
  CHECK(rel_error(spd_exp(Matrix(Eigen::Vector2d(1, 2).asDiagonal())).mat(), d) < 1e-12);
  Matrix d49 = Eigen::Vector2d(4, 9).asDiagonal();
  CHECK(rel_error(spd_sqrt(SpdMatrix(d49)).mat(), Eigen::Vector2d(2, 3).asDiagonal()) < 1e-12);

  Rng rng(15);
  for (int n = 2; n <= 5; ++n) {
    for (int k = 0; k < 100; ++k) {
      SpdMatrix p = random_spd(rng, n);
      CHECK(rel_error(spd_exp(spd_log(p)).mat(), p.mat()) < 1e-9);
      CHECK(rel_error(spd_log(SpdMatrix(p.mat().inverse())), -spd_log(p)) < 1e-9);
      Matrix root = spd_sqrt(p).mat();
      CHECK(rel_error(root * root, p.mat()) < 1e-10);

      Matrix s = random_gaussian(rng, n);
      s = Matrix(0.5 * (s + s.transpose().eval()));
      CHECK(rel_error(spd_exp(2.0 * s).mat(),
                      spd_exp(s).mat() * spd_exp(s).mat()) < 1e-9);
    }
  }
  Matrix huge = Eigen::Vector2d(1000.0, 0.0).asDiagonal();
  CHECK_THROWS_AS(spd_exp(huge), OverflowError);
}

TEST_CASE("singular values") {
  Matrix d(2, 2);
  d << 3, 0, 0, -2;
  Vector s = singular_values(d);
  CHECK(s(0) == doctest::Approx(3.0));
  CHECK(s(1) == doctest::Approx(2.0));

  Rng rng(16);
  Vector sq = singular_values(random_orthogonal(rng, 4));
  CHECK((sq.array() - 1.0).abs().maxCoeff() < 1e-12);

  Matrix shear(2, 2);
  shear << 1, 1, 0, 1;
  Vector ss = singular_values(shear);
  const double phi = (1.0 + std::sqrt(5.0)) / 2.0;
  CHECK(ss(0) == doctest::Approx(phi).epsilon(1e-12));
  CHECK(ss(1) == doctest::Approx(1.0 / phi).epsilon(1e-12));

  // Invariance under orthogonal multiplication.
  for (int k = 0; k < 100; ++k) {
    Matrix a = random_well_conditioned(rng, 3);
    Matrix q1 = random_orthogonal(rng, 3);
    Matrix q2 = random_orthogonal(rng, 3);
    CHECK((singular_values(q1 * a * q2) - singular_values(a)).cwiseAbs().maxCoeff() < 1e-10);
  }

  // Eigenvalues of Phi(l) are the squared singular values of l.
  for (int n = 2; n <= 5; ++n) {
    for (int k = 0; k < 50; ++k) {
      LowerTriangularPD l = random_lower(rng, n);
      Vector sig = singular_values(l.mat());
      Vector lam = spd_eigen(cholesky_map(l)).values;
      for (int i = 0; i < n; ++i) {
        CHECK(lam(n - 1 - i) == doctest::Approx(sig(i) * sig(i)).epsilon(1e-9));
      }
    }
  }
}

TEST_CASE("so_log closed forms and round trips") {
  CHECK(so_log(OrthogonalMatrix(Matrix::Identity(2, 2))).norm() == doctest::Approx(0.0));
  Matrix expected(2, 2);
  expected << 0.0, -M_PI / 3, M_PI / 3, 0.0;
  CHECK(rel_error(so_log(OrthogonalMatrix(rotation2(M_PI / 3))), expected) < 1e-12);

  Rng rng(17);
  for (int k = 0; k < 200; ++k) {
    Matrix q = random_rotation(rng, 3);
    Matrix s = so_log(OrthogonalMatrix(q));
    CHECK(rel_error(s, -s.transpose()) < 1e-10);
    CHECK(rel_error(so_exp(s).mat(), q) < 1e-9);
  }

  Matrix reflect = Eigen::Vector2d(1, -1).asDiagonal();
  CHECK_THROWS_AS(so_log(OrthogonalMatrix(reflect)), ReflectionNotSupported);
  CHECK_THROWS_AS(so_log(OrthogonalMatrix(Matrix::Identity(4, 4))), UnsupportedDimension);
}

TEST_CASE("type invariants are enforced") {
  Matrix not_sym(2, 2);
  not_sym << 1, 1, 0, 1;
  CHECK_THROWS_AS(SpdMatrix{not_sym}, NotPositiveDefinite);
  Matrix indef = Eigen::Vector2d(1, -1).asDiagonal();
  CHECK_THROWS_AS(SpdMatrix{indef}, NotPositiveDefinite);
  Matrix upper(2, 2);
  upper << 1, 1, 0, 1;
  CHECK_THROWS_AS(LowerTriangularPD{upper}, Error);
  Matrix negdiag = Eigen::Vector2d(1, -2).asDiagonal();
  CHECK_THROWS_AS(LowerTriangularPD{negdiag}, NotPositiveDefinite);
  CHECK_THROWS_AS(OrthogonalMatrix(Matrix(2 * Matrix::Identity(2, 2))), Error);
  CHECK(OrthogonalMatrix(Matrix(Eigen::Vector2d(1, -1).asDiagonal())).determinant_sign() == -1);
}
