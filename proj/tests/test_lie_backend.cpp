#include <doctest.h>

#include <unsupported/Eigen/MatrixFunctions>

#include "charvar/errors.hpp"
#include "charvar/lie_backend.hpp"
#include "support.hpp"

using namespace charvar;

namespace {

const std::vector<LieGroupSpec> kSpecs = {LieGroupSpec::torus(), LieGroupSpec::sl(2), LieGroupSpec::gl(2),
                                          LieGroupSpec::sl(3), LieGroupSpec::gl(3), LieGroupSpec::sl(4)};

Matrix commutator(const Matrix& x, const Matrix& y) { return x * y - y * x; }

}  // namespace

TEST_CASE("group dimensions and centers") {
  CHECK(LieGroupSpec::gl(3).dim_g() == 9);
  CHECK(LieGroupSpec::gl(3).dim_center() == 1);
  CHECK(LieGroupSpec::sl(2).dim_g() == 3);
  CHECK(LieGroupSpec::sl(2).dim_center() == 0);
  CHECK(LieGroupSpec::torus().dim_g() == 1);
  CHECK(LieGroupSpec::torus().dim_center() == 1);
  for (const auto& s : kSpecs) CHECK(s.dim_center() <= s.dim_g());
}

TEST_CASE("parsing group specs") {
  CHECK(parse_group_spec("sl", 2) == LieGroupSpec::sl(2));
  CHECK(parse_group_spec("GL", 3) == LieGroupSpec::gl(3));
  CHECK(parse_group_spec("TORUS", 7) == LieGroupSpec::torus());
  CHECK_THROWS_AS(parse_group_spec("SO", 3), InvalidInput);
  CHECK_THROWS_AS(parse_group_spec("GL", 0), InvalidInput);
  CHECK_THROWS_AS(parse_group_spec("SL", 1), InvalidInput);
}

TEST_CASE("algebra bases") {
  auto torus = algebra_basis(LieGroupSpec::torus());
  REQUIRE(torus.size() == 1);
  CHECK(torus[0](0, 0) == Complex(1.0));

  auto sl2 = algebra_basis(LieGroupSpec::sl(2));
  REQUIRE(sl2.size() == 3);
  Matrix e12 = Matrix::Zero(2, 2), e21 = Matrix::Zero(2, 2), h = Matrix::Zero(2, 2);
  e12(0, 1) = 1.0;
  e21(1, 0) = 1.0;
  h(0, 0) = 1.0;
  h(1, 1) = -1.0;
  CHECK(sl2[0] == e12);
  CHECK(sl2[1] == e21);
  CHECK(sl2[2] == h);

  CHECK(algebra_basis(LieGroupSpec::gl(2)).size() == 4);

  for (const auto& s : kSpecs) {
    auto basis = algebra_basis(s);
    CHECK(static_cast<int>(basis.size()) == s.dim_g());
    Matrix cols(s.n * s.n, basis.size());
    for (std::size_t k = 0; k < basis.size(); ++k) {
      cols.col(k) = basis[k].reshaped();
      if (s.kind == GroupKind::SL) CHECK(std::abs(basis[k].trace()) < 1e-14);
    }
    CHECK(Eigen::FullPivLU<Matrix>(cols).rank() == s.dim_g());
  }
}

TEST_CASE("trace form Gram matrices") {
  // Worked out by hand: tr(E12 E21) = 1, tr(H H) = 2, everything else vanishes.
  Matrix expected(3, 3);
  expected << 0, 1, 0, 1, 0, 0, 0, 0, 2;
  auto gram = form_gram(InvariantForm{}, algebra_basis(LieGroupSpec::sl(2)));
  CHECK((gram - expected).norm() == 0.0);

  auto torus = form_gram(InvariantForm{}, algebra_basis(LieGroupSpec::torus()));
  CHECK(torus.rows() == 1);
  CHECK(torus(0, 0) == Complex(1.0));

  for (const auto& s : kSpecs) {
    auto g = form_gram(InvariantForm{}, algebra_basis(s));
    CHECK(g == g.transpose());
    Eigen::JacobiSVD<Matrix> svd(g);
    CHECK(svd.singularValues().minCoeff() > 1e-10);
    CHECK((LieAlgebra(s).gram() - g).norm() == 0.0);
  }
}

TEST_CASE("adjoint action basics") {
  Sampler rnd(11);
  LieAlgebra torus(LieGroupSpec::torus());
  Matrix x = torus.element(rnd.vector(1));
  CHECK((ad_action(Matrix::Constant(1, 1, Complex(3.0, -2.0)), x) - x).norm() < 1e-15);

  LieAlgebra sl2(LieGroupSpec::sl(2));
  Matrix y = rnd.algebra_element(sl2);
  CHECK((ad_action(sl2.identity(), y) - y).norm() == 0.0);
  for (int trial = 0; trial < 10; ++trial) {
    Matrix g = rnd.group_element(sl2, 0.8);
    Matrix z = rnd.algebra_element(sl2);
    Matrix back = ad_action(g.inverse(), ad_action(g, z));
    CHECK((back - z).norm() <= 1e-12 * std::max(1.0, z.norm()));
    CHECK(std::abs(ad_action(g, z).trace()) < 1e-12 * (1.0 + z.norm()) * g.norm() * g.inverse().norm());
  }

  Matrix singular = Matrix::Zero(2, 2);
  singular(0, 0) = 1.0;
  CHECK_THROWS_AS(ad_action(singular, y), NumericFault);
}

TEST_CASE("ad_matrix agrees with conjugation on coordinates") {
  Sampler rnd(12);
  for (const auto& s : kSpecs) {
    LieAlgebra alg(s);
    for (int trial = 0; trial < 5; ++trial) {
      Matrix g = rnd.group_element(alg);
      Vector c = rnd.vector(alg.dim());
      Matrix direct = ad_action(g, alg.element(c));
      CHECK((alg.element(alg.ad_matrix(g) * c) - direct).norm() <= 1e-12 * (1.0 + direct.norm()));
    }
  }
}

TEST_CASE("invariance of the trace form under Ad, 100 samples per group") {
  Sampler rnd(13);
  for (const auto& s : kSpecs) {
    LieAlgebra alg(s);
    InvariantForm form;
    double worst = 0.0;
    for (int trial = 0; trial < 100; ++trial) {
      Matrix g = rnd.group_element(alg, 0.6);
      Matrix x = rnd.algebra_element(alg), y = rnd.algebra_element(alg);
      Complex before = form(x, y), after = form(ad_action(g, x), ad_action(g, y));
      worst = std::max(worst, std::abs(before - after) / std::max(1.0, std::abs(before)));
    }
    INFO(s.name(), " n=", s.n);
    CHECK(worst <= 1e-10);
  }
}

TEST_CASE("trace form is associative: B(X,[Y,Z]) = B([X,Y],Z)") {
  Sampler rnd(14);
  InvariantForm form;
  for (const auto& s : kSpecs) {
    if (s.kind == GroupKind::Torus) continue;
    LieAlgebra alg(s);
    for (int trial = 0; trial < 50; ++trial) {
      Matrix x = rnd.algebra_element(alg), y = rnd.algebra_element(alg), z = rnd.algebra_element(alg);
      Complex lhs = form(x, commutator(y, z)), rhs = form(commutator(x, y), z);
      CHECK(std::abs(lhs - rhs) <= 1e-10 * std::max(1.0, std::abs(lhs)));
    }
  }
}

TEST_CASE("scaled form scales pairings") {
  Sampler rnd(15);
  LieAlgebra alg(LieGroupSpec::sl(3));
  Vector x = rnd.vector(alg.dim()), y = rnd.vector(alg.dim());
  CHECK(alg.pair(x, y, InvariantForm(2.0)) == 2.0 * alg.pair(x, y));
  Matrix a = alg.element(x), b = alg.element(y);
  CHECK(InvariantForm(2.0)(a, b) == 2.0 * InvariantForm(1.0)(a, b));
}

TEST_CASE("coordinates round trip and bracket matrix") {
  Sampler rnd(16);
  for (const auto& s : kSpecs) {
    LieAlgebra alg(s);
    Vector c = rnd.vector(alg.dim());
    CHECK((alg.coordinates(alg.element(c)) - c).norm() <= 1e-13 * c.norm());
    Matrix x = rnd.algebra_element(alg), y = rnd.algebra_element(alg);
    Matrix via = alg.element(alg.bracket_matrix(x) * alg.coordinates(y));
    CHECK((via - commutator(x, y)).norm() <= 1e-12 * (1.0 + x.norm() * y.norm()));
  }
}

TEST_CASE("exp stays in the group and dexp matches finite differences") {
  Sampler rnd(17);
  for (const auto& s : kSpecs) {
    LieAlgebra alg(s);
    Matrix x = 0.7 * rnd.algebra_element(alg);
    Matrix g = alg.exp(x);
    CHECK(alg.constraint_violation(g) <= 1e-12);
    CHECK((g - x.exp()).norm() <= 1e-10 * g.norm());

    Matrix e = rnd.algebra_element(alg);
    const double h = 1e-5;
    Matrix fd = (alg.exp(x + h * e) - alg.exp(x - h * e)) / (2 * h) * alg.exp(-x);
    CHECK((alg.dexp(x, e) - fd).norm() <= 1e-7 * (1.0 + e.norm()));
  }
}

TEST_CASE("normalize restores the determinant for SL") {
  LieAlgebra alg(LieGroupSpec::sl(2));
  Matrix g(2, 2);
  g << 2.0, 1.0, 0.5, 1.3;
  CHECK(alg.constraint_violation(g) > 0.1);
  alg.normalize(g);
  CHECK(alg.constraint_violation(g) <= 1e-14);
  LieAlgebra gl(LieGroupSpec::gl(2));
  CHECK(gl.constraint_violation(g * 3.0) == 0.0);
}

TEST_CASE("inverse_checked rejects singular input") {
  Matrix m(2, 2);
  m << 1.0, 2.0, 2.0, 4.0;
  CHECK_THROWS_AS(inverse_checked(m), NumericFault);
  Matrix ok(2, 2);
  ok << 2.0, 1.0, 1.0, 1.0;
  CHECK((inverse_checked(ok) * ok - Matrix::Identity(2, 2)).norm() < 1e-15);
}
