#pragma once

#include <vector>

#include "charvar/representation.hpp"
#include "charvar/surface_group.hpp"

namespace charvar {

// A 1-cochain: one algebra element per generator, stored as the concatenated
// coordinate vector (length 2g * dim_g) in the basis of algebra_basis().
// Cocycle convention: u(xy) = u(x) + Ad(rho(x)) u(y).
struct Cochain1 {
  Vector coords;
  int dim_g = 0;

  int generator_count() const { return dim_g == 0 ? 0 : static_cast<int>(coords.size()) / dim_g; }
  Vector value(int generator) const { return coords.segment(generator * dim_g, dim_g); }

  static Cochain1 zero(int generator_count, int dim_g);
  static Cochain1 from_matrices(const LieAlgebra& algebra, const std::vector<AlgebraElement>& values);
  std::vector<AlgebraElement> matrices(const LieAlgebra& algebra) const;
};

/// delta^0: (2g dim_g) x dim_g; generator-j block is I - Ad(rho(x_j)).
Matrix coboundary_matrix(const Representation& rep, const LieAlgebra& algebra);
/// delta^1: dim_g x (2g dim_g); u |-> u(R), assembled from the Fox derivatives of the relator.
Matrix cocycle_matrix(const Representation& rep, const LieAlgebra& algebra);

/// u(w) by the crossed-homomorphism rule.
Vector cocycle_value(const Representation& rep, const LieAlgebra& algebra, const Cochain1& u, const Word& w);

/// ||delta^1 u|| / max(1, ||u||).
double cocycle_residual(const Representation& rep, const LieAlgebra& algebra, const Cochain1& u);

/// The cocycle s - Ad(rho(x)) s.
Cochain1 coboundary(const Representation& rep, const LieAlgebra& algebra, const Vector& s);

/// Cocycle at conjugate(rep, g) corresponding to u at rep: x |-> Ad(g) u(x).
Cochain1 transport_by_conjugation(const LieAlgebra& algebra, const Cochain1& u, const GroupElement& g);

struct RankOptions {
  double rank_tol = 1e-8;
  double band_low = 1e-10;
  double band_high = 1e-6;
};

struct CohomologySpaces {
  Matrix delta0;           // image is B^1
  Matrix delta1;           // kernel is Z^1
  Matrix cocycle_basis;    // orthonormal columns spanning Z^1
  Matrix coboundary_basis; // orthonormal columns spanning B^1
  Matrix h1_basis;         // orthonormal columns: complement of B^1 inside Z^1
  int h0 = 0;
  int h1 = 0;
  int h2 = 0;
  int dim_g = 0;
  int genus = 0;
  double residual = 0.0;   // relation residual of the representation

  Cochain1 representative(int i) const { return {h1_basis.col(i), dim_g}; }
  int euler_characteristic() const { return h0 - h1 + h2; }
};

// Rank decisions threshold singular values at rank_tol relative to max(1, sigma_max);
// a singular value inside [band_low, band_high] (same scaling) raises RankAmbiguous.
// Throws InvalidInput when the representation is not flat.
CohomologySpaces cohomology(const Representation& rep, const RankOptions& options = {}, double flat_tol = 1e-10);

int numerical_rank(const Eigen::VectorXd& singular_values, const RankOptions& options, const char* what);

}  // namespace charvar
