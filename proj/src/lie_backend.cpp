#include "charvar/lie_backend.hpp"

#include <algorithm>
#include <cctype>

#include <unsupported/Eigen/MatrixFunctions>

#include "charvar/errors.hpp"

namespace charvar {

namespace {

Matrix elementary(int n, int i, int j) {
  Matrix e = Matrix::Zero(n, n);
  e(i, j) = 1.0;
  return e;
}

Vector vec_row_major(const Matrix& m) {
  Vector v(m.size());
  for (Eigen::Index i = 0; i < m.rows(); ++i)
    for (Eigen::Index j = 0; j < m.cols(); ++j) v(i * m.cols() + j) = m(i, j);
  return v;
}

}  // namespace

int LieGroupSpec::dim_g() const {
  switch (kind) {
    case GroupKind::GL: return n * n;
    case GroupKind::SL: return n * n - 1;
    case GroupKind::Torus: return 1;
  }
  return 0;
}

int LieGroupSpec::dim_center() const {
  switch (kind) {
    case GroupKind::GL: return 1;
    case GroupKind::SL: return 0;
    case GroupKind::Torus: return 1;
  }
  return 0;
}

std::string LieGroupSpec::name() const {
  switch (kind) {
    case GroupKind::GL: return "GL";
    case GroupKind::SL: return "SL";
    case GroupKind::Torus: return "TORUS";
  }
  return "?";
}

LieGroupSpec parse_group_spec(const std::string& kind, int n) {
  std::string k = kind;
  std::transform(k.begin(), k.end(), k.begin(), [](unsigned char c) { return std::toupper(c); });
  if (k == "TORUS" || k == "C*") return LieGroupSpec::torus();
  if (n < 1) throw InvalidInput("matrix size n must be positive");
  if (k == "GL") return LieGroupSpec::gl(n);
  if (k == "SL") {
    if (n < 2) throw InvalidInput("SL(n) needs n >= 2");
    return LieGroupSpec::sl(n);
  }
  throw InvalidInput("unknown group kind '" + kind + "' (expected GL, SL or TORUS)");
}

std::vector<AlgebraElement> algebra_basis(const LieGroupSpec& spec) {
  const int n = spec.n;
  std::vector<AlgebraElement> basis;
  switch (spec.kind) {
    case GroupKind::Torus:
      basis.push_back(Matrix::Ones(1, 1));
      break;
    case GroupKind::GL:
      for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) basis.push_back(elementary(n, i, j));
      break;
    case GroupKind::SL:
      for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j)
          if (i != j) basis.push_back(elementary(n, i, j));
      for (int k = 0; k + 1 < n; ++k) basis.push_back(elementary(n, k, k) - elementary(n, k + 1, k + 1));
      break;
  }
  return basis;
}

GroupElement inverse_checked(const GroupElement& g) {
  Eigen::PartialPivLU<Matrix> lu(g);
  const double scale = std::max(1.0, g.cwiseAbs().maxCoeff());
  const double pivot = lu.matrixLU().diagonal().cwiseAbs().minCoeff();
  if (!(pivot > 1e-14 * scale)) throw NumericFault("group element is numerically singular");
  return lu.inverse();
}

AlgebraElement ad_action(const GroupElement& g, const AlgebraElement& X) {
  return g * X * inverse_checked(g);
}

Matrix form_gram(const InvariantForm& form, const std::vector<AlgebraElement>& basis) {
  const auto d = static_cast<Eigen::Index>(basis.size());
  Matrix gram(d, d);
  for (Eigen::Index i = 0; i < d; ++i)
    for (Eigen::Index j = 0; j < d; ++j) gram(i, j) = form(basis[i], basis[j]);
  return gram;
}

LieAlgebra::LieAlgebra(const LieGroupSpec& spec) : spec_(spec), basis_(algebra_basis(spec)) {
  const int n2 = spec_.n * spec_.n;
  basis_columns_.resize(n2, dim());
  for (int k = 0; k < dim(); ++k) basis_columns_.col(k) = vec_row_major(basis_[k]);
  coordinate_map_ = basis_columns_.completeOrthogonalDecomposition().pseudoInverse();
  // The exact map has entries in (1/n)Z; snap off the factorization rounding.
  const double n = spec_.n;
  coordinate_map_ = coordinate_map_.unaryExpr([n](Complex c) { return Complex(std::round(c.real() * n) / n, 0.0); });
  gram_ = form_gram(InvariantForm{}, basis_);
}

Vector LieAlgebra::coordinates(const Matrix& X) const { return coordinate_map_ * vec_row_major(X); }

AlgebraElement LieAlgebra::element(const Vector& coords) const {
  Matrix X = Matrix::Zero(spec_.n, spec_.n);
  for (int k = 0; k < dim(); ++k) X += coords(k) * basis_[k];
  return X;
}

Matrix LieAlgebra::ad_matrix(const GroupElement& g) const { return ad_matrix(g, inverse_checked(g)); }

Matrix LieAlgebra::ad_matrix(const GroupElement& g, const GroupElement& g_inverse) const {
  if (spec_.kind == GroupKind::Torus) return Matrix::Identity(1, 1);
  Matrix ad(dim(), dim());
  for (int k = 0; k < dim(); ++k) ad.col(k) = coordinates(g * basis_[k] * g_inverse);
  return ad;
}

Matrix LieAlgebra::bracket_matrix(const AlgebraElement& X) const {
  Matrix ad(dim(), dim());
  for (int k = 0; k < dim(); ++k) ad.col(k) = coordinates(X * basis_[k] - basis_[k] * X);
  return ad;
}

GroupElement LieAlgebra::exp(const AlgebraElement& X) const {
  GroupElement g = X.exp();
  normalize(g);
  return g;
}

AlgebraElement LieAlgebra::dexp(const AlgebraElement& X, const AlgebraElement& E) const {
  // exp of [[X, E], [0, X]] carries d/ds exp(X + sE) in its upper-right block.
  const int n = spec_.n;
  Matrix block = Matrix::Zero(2 * n, 2 * n);
  block.topLeftCorner(n, n) = X;
  block.bottomRightCorner(n, n) = X;
  block.topRightCorner(n, n) = E;
  const Matrix big = block.exp();
  const Matrix minus = (-X).exp();
  return big.topRightCorner(n, n) * minus;
}

void LieAlgebra::normalize(GroupElement& g) const {
  if (spec_.kind != GroupKind::SL) return;
  const Complex det = g.determinant();
  if (std::abs(det) < 1e-300) throw NumericFault("SL normalization of a singular matrix");
  g /= std::pow(det, 1.0 / spec_.n);
}

double LieAlgebra::constraint_violation(const GroupElement& g) const {
  if (spec_.kind != GroupKind::SL) return 0.0;
  return std::abs(g.determinant() - 1.0);
}

}  // namespace charvar
