#pragma once

#include <array>
#include <vector>

#include "charvar/twisted_cohomology.hpp"

namespace charvar {

// Integral bar 2-chain sum c [prefix | letter] whose class is the fundamental
// class of the closed surface. Cochain values at the identity vanish, so the
// [1|1] correction needed to close the boundary is left implicit.
struct BarTwoChain {
  struct Entry {
    Word prefix;
    Word letter;  // exactly one letter
    int coefficient = 0;
  };
  int genus = 0;
  std::vector<Entry> entries;
};

struct CycleOptions {
  bool self_test = true;
  int self_test_reps = 5;
  double descent_tol = 1e-10;
};

// Entries [w_{k-1} | l_k] over the relator prefixes, plus -[x | x^{-1}] for each
// generator. Normalized so that on the torus omega(e_{a_1}, e_{b_1}) = +1.
// With self_test, the descent identity is checked on random flat SL(2)
// representations and a NumericFault is thrown if it fails.
BarTwoChain fundamental_cycle(const SurfaceGroupPresentation& presentation, const CycleOptions& options = {});

struct PairingValue {
  Complex value;
  double magnitude = 0.0;  // sum of |term| over chain entries; the rounding scale of value
};

// sum_entries c * B(u(prefix), Ad(rho(prefix)) v(letter)).
// Throws NotACocycle when either input misses delta^1 u = 0 by more than cocycle_tol.
PairingValue goldman_pairing_detail(const Representation& rep, const Cochain1& u, const Cochain1& v,
                                    const BarTwoChain& cycle, const InvariantForm& form = InvariantForm{},
                                    double cocycle_tol = 1e-8);
Complex goldman_pairing(const Representation& rep, const Cochain1& u, const Cochain1& v, const BarTwoChain& cycle,
                        const InvariantForm& form = InvariantForm{}, double cocycle_tol = 1e-8);

// Matrix M with omega(u, v) = u^T M v on full cochain coordinates (no cocycle check).
Matrix goldman_bilinear_matrix(const Representation& rep, const LieAlgebra& algebra, const BarTwoChain& cycle,
                               const InvariantForm& form = InvariantForm{});

struct GoldmanMatrix {
  Matrix omega;                // h1 x h1, entries omega(rep_i, rep_j)
  double antisymmetry = 0.0;   // ||Omega + Omega^T|| / ||Omega||
  double conditioning = 0.0;   // sigma_min / sigma_max
};

GoldmanMatrix goldman_matrix(const Representation& rep, const CohomologySpaces& spaces, const BarTwoChain& cycle,
                             const InvariantForm& form = InvariantForm{});
// Same pairing on an arbitrary list of cocycle columns.
GoldmanMatrix goldman_matrix_on(const Representation& rep, const Matrix& cocycle_columns, const BarTwoChain& cycle,
                                const InvariantForm& form = InvariantForm{});

struct ClosednessOptions {
  double flat_tol = 1e-10;
  int max_newton = 50;
  InvariantForm form{};
};

struct ClosednessResult {
  double residual = 0.0;            // |d omega(X, Y, Z)| by central differences
  double derivative_scale = 0.0;    // largest |partial_i omega_jk| seen in the stencil
  double worst_stencil_residual = 0.0;
  int max_newton_iterations = 0;
};

// Finite-difference d omega on the chart t -> exp(sum t_i u_i + N z(t)) rho, where
// N spans the complement of ker delta^1 and z(t) is solved by Newton so that the
// point lies on the relation variety. Tangent vectors are obtained exactly by
// implicit differentiation, so the only discretization is the outer stencil.
// Throws ConvergenceFailure when a stencil point cannot be refined.
ClosednessResult closedness_residual(const Representation& rep, const std::array<Cochain1, 3>& directions, double h,
                                     const BarTwoChain& cycle, const ClosednessOptions& options = {});

}  // namespace charvar
