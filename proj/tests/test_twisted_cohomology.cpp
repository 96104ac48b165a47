#include <doctest.h>

#include "charvar/errors.hpp"
#include "charvar/rep_variety.hpp"
#include "charvar/twisted_cohomology.hpp"
#include "support.hpp"

using namespace charvar;

namespace {

// Dimension of the centralizer of the generators in gl(n), computed from
// Kronecker products: vec(gX - Xg) = (I (x) g - g^T (x) I) vec X (column-major).
int gl_centralizer_dimension(const Representation& rep) {
  const int n = rep.spec.n;
  Matrix stacked(rep.generator_count() * n * n, n * n);
  Matrix id = Matrix::Identity(n, n);
  for (int j = 0; j < rep.generator_count(); ++j) {
    const Matrix& g = rep.generators[j];
    Matrix block(n * n, n * n);
    for (int r = 0; r < n; ++r)
      for (int c = 0; c < n; ++c) block.block(r * n, c * n, n, n) = id(r, c) * g - g(c, r) * id;
    stacked.middleRows(j * n * n, n * n) = block;
  }
  Eigen::JacobiSVD<Matrix> svd(stacked);
  int nullity = 0;
  for (Eigen::Index i = 0; i < svd.singularValues().size(); ++i)
    if (svd.singularValues()(i) <= 1e-8 * std::max(1.0, svd.singularValues()(0))) ++nullity;
  return nullity + (n * n - static_cast<int>(svd.singularValues().size()));
}

}  // namespace

TEST_CASE("trivial representation: both differentials vanish") {
  auto rep = trivial_representation(LieGroupSpec::sl(2), 2);
  LieAlgebra alg(rep.spec);
  CHECK(coboundary_matrix(rep, alg).norm() == 0.0);
  CHECK(cocycle_matrix(rep, alg).norm() == 0.0);
  auto sp = cohomology(rep);
  CHECK(sp.h0 == 3);
  CHECK(sp.h1 == 12);
  CHECK(sp.h2 == 3);
}

TEST_CASE("torus: h0 = 1, h1 = 2g") {
  for (int g : {2, 3}) {
    auto rep = random_flat_representation(LieGroupSpec::torus(), g, 5, 0.7);
    LieAlgebra alg(rep.spec);
    CHECK(coboundary_matrix(rep, alg).norm() == 0.0);
    CHECK(cocycle_matrix(rep, alg).norm() == 0.0);
    auto sp = cohomology(rep);
    CHECK(sp.h0 == 1);
    CHECK(sp.h1 == 2 * g);
    CHECK(sp.h2 == 1);
  }
}

TEST_CASE("irreducible SL(2), genus 2") {
  auto rep = random_flat_representation(LieGroupSpec::sl(2), 2, 1, 0.5);
  LieAlgebra alg(rep.spec);
  auto sp = cohomology(rep);
  CHECK(sp.h1 == 6);
  CHECK(sp.h0 == 0);
  // Only scalars commute with an irreducible pair, so the sl(2) centralizer is zero.
  CHECK(gl_centralizer_dimension(rep) == 1);
  // rank delta^1 = 3, read off independently of the library's rank routine.
  Eigen::JacobiSVD<Matrix> svd(cocycle_matrix(rep, alg));
  CHECK(svd.singularValues()(2) > 1e-6 * svd.singularValues()(0));
  CHECK(sp.h2 == 0);
  CHECK(sp.h2 == sp.h0);
}

TEST_CASE("dimension formula on irreducible points") {
  struct Case {
    LieGroupSpec spec;
    int genus;
    int h1;
  };
  for (const auto& c : {Case{LieGroupSpec::sl(2), 2, 6}, Case{LieGroupSpec::sl(2), 3, 12},
                        Case{LieGroupSpec::gl(2), 2, 10}, Case{LieGroupSpec::sl(3), 2, 16},
                        Case{LieGroupSpec::torus(), 2, 4}}) {
    for (std::uint64_t seed = 1; seed <= 3; ++seed) {
      auto rep = random_flat_representation(c.spec, c.genus, seed, 0.5);
      REQUIRE(is_irreducible(rep));
      auto sp = cohomology(rep);
      const int dim = c.spec.dim_g(), center = c.spec.dim_center();
      CHECK(sp.h1 == c.h1);
      CHECK(sp.h1 == 2 * dim * (c.genus - 1) + 2 * center);
      CHECK(gl_centralizer_dimension(rep) == 1);
    }
  }
}

TEST_CASE("delta1 o delta0 = 0, Euler characteristic and duality") {
  std::vector<Representation> reps;
  for (std::uint64_t seed = 1; seed <= 4; ++seed) {
    reps.push_back(random_flat_representation(LieGroupSpec::sl(2), 2, seed, 0.5));
    reps.push_back(random_flat_representation(LieGroupSpec::gl(2), 3, seed, 0.5));
  }
  reps.push_back(trivial_representation(LieGroupSpec::gl(2), 2));
  reps.push_back(block_triangular_representation(LieGroupSpec::sl(2), 2, 4));
  reps.push_back(random_flat_representation(LieGroupSpec::torus(), 3, 1, 0.5));
  for (const auto& rep : reps) {
    LieAlgebra alg(rep.spec);
    CHECK((cocycle_matrix(rep, alg) * coboundary_matrix(rep, alg)).norm() <= 1e-10);
    auto sp = cohomology(rep);
    CHECK(sp.euler_characteristic() == (2 - 2 * rep.genus) * alg.dim());
    CHECK(sp.h0 == sp.h2);
    CHECK(sp.h1_basis.cols() == sp.h1);
    CHECK(sp.cocycle_basis.cols() == sp.h1 + (alg.dim() - sp.h0));
  }
}

TEST_CASE("H1 representatives are cocycles orthogonal to coboundaries") {
  auto rep = random_flat_representation(LieGroupSpec::sl(2), 2, 3, 0.5);
  LieAlgebra alg(rep.spec);
  auto sp = cohomology(rep);
  CHECK((sp.delta1 * sp.h1_basis).norm() <= 1e-10);
  CHECK((sp.coboundary_basis.adjoint() * sp.h1_basis).norm() <= 1e-10);
  CHECK((sp.h1_basis.adjoint() * sp.h1_basis - Matrix::Identity(sp.h1, sp.h1)).norm() <= 1e-12);
  for (int i = 0; i < sp.h1; ++i) CHECK(cocycle_residual(rep, alg, sp.representative(i)) <= 1e-10);
}

TEST_CASE("cocycle values follow the crossed-homomorphism rule") {
  Sampler rnd(41);
  auto rep = rnd.loose_representation(LieGroupSpec::sl(2), 2);
  LieAlgebra alg(rep.spec);
  Cochain1 u = rnd.cochain(4, 3);
  for (int trial = 0; trial < 30; ++trial) {
    Word x = rnd.word(4, 6), y = rnd.word(4, 6);
    Vector lhs = cocycle_value(rep, alg, u, x * y);
    Vector rhs = cocycle_value(rep, alg, u, x) + alg.ad_matrix(evaluate_word(rep, x)) * cocycle_value(rep, alg, u, y);
    CHECK((lhs - rhs).norm() <= 1e-12 * std::max(1.0, lhs.norm()));
  }
  Vector at_relator = cocycle_value(rep, alg, u, relator(2));
  CHECK((at_relator - cocycle_matrix(rep, alg) * u.coords).norm() <= 1e-12 * std::max(1.0, at_relator.norm()));
  CHECK(cocycle_value(rep, alg, u, Word()).norm() == 0.0);
}

TEST_CASE("coboundaries are cocycles") {
  Sampler rnd(42);
  auto rep = random_flat_representation(LieGroupSpec::gl(2), 2, 9, 0.5);
  LieAlgebra alg(rep.spec);
  for (int trial = 0; trial < 10; ++trial) {
    Vector s = rnd.vector(alg.dim());
    Cochain1 b = coboundary(rep, alg, s);
    CHECK(cocycle_residual(rep, alg, b) <= 1e-10);
    // (delta0 s)(x) = s - Ad(rho(x)) s on every word.
    Word w = rnd.word(4, 7);
    Vector expected = s - alg.ad_matrix(evaluate_word(rep, w)) * s;
    CHECK((cocycle_value(rep, alg, b, w) - expected).norm() <= 1e-10 * std::max(1.0, s.norm()));
  }
}

TEST_CASE("cochain conversions") {
  Sampler rnd(43);
  LieAlgebra alg(LieGroupSpec::sl(3));
  Cochain1 u = rnd.cochain(6, alg.dim());
  CHECK(u.generator_count() == 6);
  Cochain1 back = Cochain1::from_matrices(alg, u.matrices(alg));
  CHECK((back.coords - u.coords).norm() <= 1e-13 * u.coords.norm());
  CHECK(Cochain1::zero(4, 8).coords.size() == 32);
}

TEST_CASE("cohomology dimensions are conjugation invariant") {
  Sampler rnd(44);
  auto rep = random_flat_representation(LieGroupSpec::sl(2), 2, 6, 0.5);
  auto tri = block_triangular_representation(LieGroupSpec::sl(2), 2, 6);
  auto base = cohomology(rep), base_tri = cohomology(tri);
  LieAlgebra alg(rep.spec);
  for (int trial = 0; trial < 20; ++trial) {
    Matrix g = rnd.group_element(alg, 0.4);
    auto c = cohomology(conjugate(rep, g));
    CHECK(c.h0 == base.h0);
    CHECK(c.h1 == base.h1);
    CHECK(c.h2 == base.h2);
    auto ct = cohomology(conjugate(tri, g));
    CHECK(ct.h1 == base_tri.h1);
  }
  // Transport of cocycles along conjugation keeps them cocycles.
  Matrix g = rnd.group_element(alg, 0.4);
  auto moved = transport_by_conjugation(alg, base.representative(0), g);
  CHECK(cocycle_residual(conjugate(rep, g), alg, moved) <= 1e-10);
}

TEST_CASE("error paths") {
  Sampler rnd(45);
  auto loose = rnd.loose_representation(LieGroupSpec::sl(2), 2);
  CHECK_THROWS_AS(cohomology(loose), InvalidInput);

  // Generators within 1e-8 of the identity: the differentials have singular
  // values inside the indeterminate band.
  auto near_trivial = random_flat_representation(LieGroupSpec::sl(2), 2, 1, 1e-8);
  CHECK(near_trivial.residual <= 1e-10);
  CHECK_THROWS_AS(cohomology(near_trivial), RankAmbiguous);

  Eigen::VectorXd s(3);
  s << 2.0, 1.0, 1e-12;
  CHECK(numerical_rank(s, RankOptions{}, "test") == 2);
  s(2) = 1e-7;
  CHECK_THROWS_AS(numerical_rank(s, RankOptions{}, "test"), RankAmbiguous);
}
