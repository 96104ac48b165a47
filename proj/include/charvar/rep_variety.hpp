#pragma once

#include <cstdint>
#include <optional>

#include "charvar/representation.hpp"
#include "charvar/surface_group.hpp"

namespace charvar {

/// Frobenius norm of prod_i [A_i, B_i] - I.
double relation_residual(const Representation& rep);

struct RefinementOptions {
  double flat_tol = 1e-10;
  int max_iter = 100;
};

struct RefinementResult {
  Representation rep;
  int iterations = 0;
  int draws = 1;
};

// Gauss-Newton on (A_1, B_1, ...) -> prod [A_i, B_i] - I using multiplicative
// updates A <- exp(xi) A with xi in the Lie algebra and a minimum-norm step,
// damped by backtracking on the residual. Throws ConvergenceFailure carrying
// the final residual after max_iter iterations.
RefinementResult refine_to_flat(const Representation& start, const RefinementOptions& options = {});

/// Generators exp(scale * xi) with xi a complex Gaussian algebra element,
/// refined onto the relation variety. Deterministic in (spec, genus, seed, scale).
/// A draw whose refinement fails is replaced by the next draw from the same
/// stream (at most 16); `draws` in the stats records how many were used.
Representation random_flat_representation(const LieGroupSpec& spec, int genus, std::uint64_t seed, double scale,
                                           const RefinementOptions& options = {});
RefinementResult random_flat_representation_with_stats(const LieGroupSpec& spec, int genus, std::uint64_t seed,
                                                       double scale, const RefinementOptions& options = {});

Representation trivial_representation(const LieGroupSpec& spec, int genus);

// Flat representation with a common invariant line: upper-triangular 2 x 2
// generators whose diagonals are two C^* local systems (GL(2) or SL(2) only).
Representation block_triangular_representation(const LieGroupSpec& spec, int genus, std::uint64_t seed);

/// Every generator replaced by g A g^{-1}.
Representation conjugate(const Representation& rep, const GroupElement& g);

enum class Irreducibility { Irreducible, Reducible, Indeterminate };

struct IrreducibilityReport {
  Irreducibility verdict = Irreducibility::Indeterminate;
  int algebra_dimension = 0;       // numerical rank of the generated matrix algebra
  double critical_singular_value = 0.0;  // n^2-th relative singular value
};

struct IrreducibilityOptions {
  double rank_tol = 1e-8;
  double band_low = 1e-10;
  double band_high = 1e-6;
};

// Burnside criterion: irreducible iff products of the generators of length at most
// 2n^2 span all n x n matrices. Always irreducible on the torus.
IrreducibilityReport irreducibility(const Representation& rep, const IrreducibilityOptions& options = {});
bool is_irreducible(const Representation& rep, const IrreducibilityOptions& options = {});

}  // namespace charvar
