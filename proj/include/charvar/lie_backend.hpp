#pragma once

#include <complex>
#include <string>
#include <vector>

#include <Eigen/Dense>

namespace charvar {

using Complex = std::complex<double>;
using Matrix = Eigen::MatrixXcd;
using Vector = Eigen::VectorXcd;

// Group elements and Lie algebra elements are both plain complex n x n matrices;
// algebra elements are additionally handled through coordinate vectors in the
// fixed basis returned by algebra_basis().
using GroupElement = Matrix;
using AlgebraElement = Matrix;

enum class GroupKind { GL, SL, Torus };

struct LieGroupSpec {
  GroupKind kind = GroupKind::SL;
  int n = 2;

  static LieGroupSpec gl(int n) { return {GroupKind::GL, n}; }
  static LieGroupSpec sl(int n) { return {GroupKind::SL, n}; }
  static LieGroupSpec torus() { return {GroupKind::Torus, 1}; }

  int dim_g() const;
  int dim_center() const;
  std::string name() const;  // "GL", "SL" or "TORUS"

  bool operator==(const LieGroupSpec&) const = default;
};

// Parses "GL" / "SL" / "TORUS" (case-insensitive); TORUS forces n = 1.
LieGroupSpec parse_group_spec(const std::string& kind, int n);

/// Deterministic basis: E_ij (row-major) for GL; off-diagonal E_ij in row-major
/// order followed by H_k = E_kk - E_{k+1,k+1} for SL; [1] for the torus.
std::vector<AlgebraElement> algebra_basis(const LieGroupSpec& spec);

/// g X g^{-1}. Throws NumericFault when g is numerically singular.
AlgebraElement ad_action(const GroupElement& g, const AlgebraElement& X);

// The invariant form B(X, Y) = c * trace(XY) (c * x * y on the torus).
// The scale c is kept explicit since every symplectic output is linear in it.
class InvariantForm {
 public:
  explicit InvariantForm(double scale = 1.0) : scale_(scale) {}
  double scale() const { return scale_; }
  Complex operator()(const AlgebraElement& X, const AlgebraElement& Y) const {
    return scale_ * (X * Y).trace();
  }

 private:
  double scale_;
};

/// Gram[i][j] = B(e_i, e_j).
Matrix form_gram(const InvariantForm& form, const std::vector<AlgebraElement>& basis);

// Coordinate machinery for one group backend: basis, coordinate projection,
// adjoint matrices and the Gram matrix of the unscaled trace form.
class LieAlgebra {
 public:
  explicit LieAlgebra(const LieGroupSpec& spec);

  const LieGroupSpec& spec() const { return spec_; }
  int dim() const { return static_cast<int>(basis_.size()); }
  int n() const { return spec_.n; }
  const std::vector<AlgebraElement>& basis() const { return basis_; }

  // Least-squares coordinates; exact for elements of the algebra, and the
  // Frobenius-orthogonal projection onto it otherwise.
  Vector coordinates(const Matrix& X) const;
  AlgebraElement element(const Vector& coords) const;

  // Matrix of Ad_g acting on coordinates.
  Matrix ad_matrix(const GroupElement& g) const;
  Matrix ad_matrix(const GroupElement& g, const GroupElement& g_inverse) const;
  // Matrix of ad_X = [X, .] acting on coordinates.
  Matrix bracket_matrix(const AlgebraElement& X) const;

  // Gram matrix of trace(XY) (scale 1).
  const Matrix& gram() const { return gram_; }
  Complex pair(const Vector& x, const Vector& y, const InvariantForm& form = InvariantForm{}) const {
    return form.scale() * (x.transpose() * gram_ * y)(0, 0);
  }

  GroupElement identity() const { return Matrix::Identity(spec_.n, spec_.n); }
  GroupElement exp(const AlgebraElement& X) const;
  // Right-trivialized derivative of exp at X in direction E:
  // d/ds exp(X + sE)|_{s=0} * exp(-X).
  AlgebraElement dexp(const AlgebraElement& X, const AlgebraElement& E) const;
  // Re-imposes the group constraint (det = 1 for SL) after floating-point drift.
  void normalize(GroupElement& g) const;
  // |det - 1| for SL, 0 otherwise.
  double constraint_violation(const GroupElement& g) const;

 private:
  LieGroupSpec spec_;
  std::vector<AlgebraElement> basis_;
  Matrix basis_columns_;   // n^2 x dim, column k = vec(basis_[k])
  Matrix coordinate_map_;  // dim x n^2 pseudo-inverse of basis_columns_
  Matrix gram_;
};

GroupElement inverse_checked(const GroupElement& g);

}  // namespace charvar
