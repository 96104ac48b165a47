#include <doctest.h>

#include <cmath>

#include "charvar/errors.hpp"
#include "charvar/goldman_form.hpp"
#include "charvar/rep_variety.hpp"
#include "support.hpp"

using namespace charvar;

namespace {

const BarTwoChain& cycle_for(int genus) {
  static const BarTwoChain g2 = fundamental_cycle(SurfaceGroupPresentation(2));
  static const BarTwoChain g3 = fundamental_cycle(SurfaceGroupPresentation(3));
  return genus == 2 ? g2 : g3;
}

Cochain1 unit_cochain(int generator_count, int dim_g, int generator, int coordinate) {
  Cochain1 u = Cochain1::zero(generator_count, dim_g);
  u.coords(generator * dim_g + coordinate) = 1.0;
  return u;
}

Matrix standard_symplectic(int genus) {
  Matrix j = Matrix::Zero(2 * genus, 2 * genus);
  for (int i = 0; i < genus; ++i) {
    j(2 * i, 2 * i + 1) = 1.0;
    j(2 * i + 1, 2 * i) = -1.0;
  }
  return j;
}

}  // namespace

TEST_CASE("fundamental cycle shape") {
  for (int g : {2, 3, 4}) {
    auto cycle = fundamental_cycle(SurfaceGroupPresentation(g));
    CHECK(cycle.genus == g);
    CHECK(cycle.entries.size() <= std::size_t(2 * 4 * g));
    for (const auto& e : cycle.entries) CHECK(e.letter.size() == 1);
  }
}

TEST_CASE("torus pairing is the intersection form") {
  auto rep = random_flat_representation(LieGroupSpec::torus(), 2, 4, 0.8);
  const auto& cycle = cycle_for(2);
  auto ea1 = unit_cochain(4, 1, SurfaceGroupPresentation::a(1), 0);
  auto eb1 = unit_cochain(4, 1, SurfaceGroupPresentation::b(1), 0);
  auto ea2 = unit_cochain(4, 1, SurfaceGroupPresentation::a(2), 0);
  CHECK(goldman_pairing(rep, ea1, eb1, cycle) == Complex(1.0));
  CHECK(goldman_pairing(rep, eb1, ea1, cycle) == Complex(-1.0));
  CHECK(goldman_pairing(rep, ea1, ea2, cycle) == Complex(0.0));

  Matrix columns = Matrix::Identity(4, 4);
  auto gm = goldman_matrix_on(rep, columns, cycle);
  CHECK(gm.omega == standard_symplectic(2));

  auto g3 = random_flat_representation(LieGroupSpec::torus(), 3, 4, 0.8);
  CHECK(goldman_matrix_on(g3, Matrix::Identity(6, 6), cycle_for(3)).omega == standard_symplectic(3));
}

TEST_CASE("trivial SL(2) point: intersection form tensor B") {
  Sampler rnd(51);
  auto rep = trivial_representation(LieGroupSpec::sl(2), 2);
  LieAlgebra alg(rep.spec);
  Matrix gram(3, 3);
  gram << 0, 1, 0, 1, 0, 0, 0, 0, 2;
  for (int trial = 0; trial < 20; ++trial) {
    Cochain1 u = rnd.cochain(4, 3), v = rnd.cochain(4, 3);
    Complex expected = 0.0;
    for (int i = 1; i <= 2; ++i) {
      const int a = SurfaceGroupPresentation::a(i), b = SurfaceGroupPresentation::b(i);
      expected += (u.value(a).transpose() * gram * v.value(b))(0, 0) - (u.value(b).transpose() * gram * v.value(a))(0, 0);
    }
    CHECK(rel_diff(goldman_pairing(rep, u, v, cycle_for(2)), expected) <= 1e-12);
  }
}

TEST_CASE("alternation, descent and antisymmetry on random cocycles") {
  Sampler rnd(52);
  for (const auto& spec : {LieGroupSpec::sl(2), LieGroupSpec::gl(2)}) {
    for (std::uint64_t seed : {1u, 2u}) {
      auto rep = random_flat_representation(spec, 2, seed, 0.5);
      LieAlgebra alg(rep.spec);
      auto sp = cohomology(rep);
      const auto& cycle = cycle_for(2);
      for (int trial = 0; trial < 50; ++trial) {
        Cochain1 u = rnd.cocycle(sp), v = rnd.cocycle(sp);
        auto uu = goldman_pairing_detail(rep, u, u, cycle);
        CHECK(std::abs(uu.value) <= 1e-10 * std::max(1.0, uu.magnitude));

        auto uv = goldman_pairing_detail(rep, u, v, cycle);
        auto vu = goldman_pairing_detail(rep, v, u, cycle);
        CHECK(std::abs(uv.value + vu.value) <= 1e-10 * std::max(uv.magnitude, vu.magnitude));

        Cochain1 shifted = u;
        shifted.coords += coboundary(rep, alg, rnd.vector(alg.dim())).coords;
        auto moved = goldman_pairing_detail(rep, shifted, v, cycle);
        CHECK(std::abs(moved.value - uv.value) <= 1e-10 * std::max(moved.magnitude, uv.magnitude));

        Cochain1 exact = coboundary(rep, alg, rnd.vector(alg.dim()));
        auto zero = goldman_pairing_detail(rep, exact, v, cycle);
        CHECK(std::abs(zero.value) <= 1e-10 * std::max(1.0, zero.magnitude));
      }
    }
  }
}

TEST_CASE("Goldman matrix at irreducible SL(2) points") {
  for (std::uint64_t seed = 1; seed <= 5; ++seed) {
    auto rep = random_flat_representation(LieGroupSpec::sl(2), 2, seed, 0.5);
    auto sp = cohomology(rep);
    auto gm = goldman_matrix(rep, sp, cycle_for(2));
    CHECK(gm.omega.rows() == 6);
    CHECK(gm.antisymmetry <= 1e-8);
    CHECK(gm.conditioning >= 1e-6);
    // Entry-wise agreement with the pairing itself.
    for (int i = 0; i < sp.h1; ++i)
      for (int j = 0; j < sp.h1; ++j) {
        auto pv = goldman_pairing_detail(rep, sp.representative(i), sp.representative(j), cycle_for(2));
        CHECK(std::abs(gm.omega(i, j) - pv.value) <= 1e-12 * std::max(1.0, pv.magnitude));
      }
  }
}

TEST_CASE("doubling B doubles omega exactly") {
  auto rep = random_flat_representation(LieGroupSpec::sl(2), 2, 3, 0.5);
  auto sp = cohomology(rep);
  auto one = goldman_matrix(rep, sp, cycle_for(2), InvariantForm(1.0));
  auto two = goldman_matrix(rep, sp, cycle_for(2), InvariantForm(2.0));
  CHECK(two.omega == 2.0 * one.omega);
  Complex p1 = goldman_pairing(rep, sp.representative(0), sp.representative(1), cycle_for(2), InvariantForm(1.0));
  Complex p2 = goldman_pairing(rep, sp.representative(0), sp.representative(1), cycle_for(2), InvariantForm(2.0));
  CHECK(p2 == 2.0 * p1);
}

TEST_CASE("naturality under conjugation") {
  Sampler rnd(53);
  LieAlgebra alg(LieGroupSpec::sl(2));
  for (int trial = 0; trial < 20; ++trial) {
    auto rep = random_flat_representation(LieGroupSpec::sl(2), 2, 300 + trial, 0.5);
    auto sp = cohomology(rep);
    Matrix g = rnd.group_element(alg, 0.4);
    auto moved = conjugate(rep, g);
    Cochain1 u = rnd.cocycle(sp), v = rnd.cocycle(sp);
    Complex before = goldman_pairing(rep, u, v, cycle_for(2));
    Complex after = goldman_pairing(moved, transport_by_conjugation(alg, u, g), transport_by_conjugation(alg, v, g),
                                    cycle_for(2));
    CHECK(rel_diff(before, after) <= 1e-8);
  }
}

TEST_CASE("representative independence") {
  Sampler rnd(54);
  for (std::uint64_t seed = 1; seed <= 3; ++seed) {
    auto rep = random_flat_representation(LieGroupSpec::sl(2), 2, seed, 0.5);
    auto sp = cohomology(rep);
    Matrix change = Matrix::Identity(sp.h1, sp.h1);
    for (int i = 0; i < sp.h1; ++i) change.row(i) += 0.3 * rnd.vector(sp.h1).transpose();
    Matrix shift(sp.coboundary_basis.cols(), sp.h1);
    for (int j = 0; j < sp.h1; ++j) shift.col(j) = rnd.vector(static_cast<int>(shift.rows()));
    Matrix other = sp.h1_basis * change + sp.coboundary_basis * shift;
    auto base = goldman_matrix(rep, sp, cycle_for(2));
    auto alt = goldman_matrix_on(rep, other, cycle_for(2));
    Matrix expected = change.transpose() * base.omega * change;
    CHECK((alt.omega - expected).norm() <= 1e-8 * expected.norm());
  }
}

TEST_CASE("non-cocycles are rejected") {
  Sampler rnd(55);
  auto rep = random_flat_representation(LieGroupSpec::sl(2), 2, 1, 0.5);
  auto sp = cohomology(rep);
  Cochain1 bad = rnd.cochain(4, 3);
  try {
    goldman_pairing(rep, bad, sp.representative(0), cycle_for(2));
    FAIL("expected NotACocycle");
  } catch (const NotACocycle& e) {
    CHECK(e.residual() > 1e-8);
  }
  CHECK_THROWS_AS(goldman_pairing(rep, sp.representative(0), sp.representative(1), cycle_for(3)), InvalidInput);
}

TEST_CASE("closedness at an irreducible SL(2) point") {
  auto rep = random_flat_representation(LieGroupSpec::sl(2), 2, 1, 0.5);
  auto sp = cohomology(rep);
  std::array<Cochain1, 3> dirs{sp.representative(0), sp.representative(1), sp.representative(2)};
  auto coarse = closedness_residual(rep, dirs, 2e-3, cycle_for(2));
  auto fine = closedness_residual(rep, dirs, 1e-3, cycle_for(2));
  CHECK(fine.residual <= 1e-4);
  CHECK(fine.worst_stencil_residual <= 1e-10);
  const double order = std::log2(coarse.residual / fine.residual);
  INFO("observed order ", order, " residuals ", coarse.residual, " ", fine.residual);
  CHECK(order >= 1.5);
  CHECK(order <= 2.5);

  std::array<Cochain1, 3> repeated{sp.representative(0), sp.representative(0), sp.representative(1)};
  CHECK(closedness_residual(rep, repeated, 1e-3, cycle_for(2)).residual <= 1e-10);
}

TEST_CASE("closedness on the torus chart") {
  auto rep = random_flat_representation(LieGroupSpec::torus(), 2, 2, 0.5);
  auto sp = cohomology(rep);
  std::array<Cochain1, 3> dirs{sp.representative(0), sp.representative(1), sp.representative(2)};
  CHECK(closedness_residual(rep, dirs, 1e-3, cycle_for(2)).residual <= 1e-12);
}
