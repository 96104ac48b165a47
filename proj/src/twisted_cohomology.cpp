#include "charvar/twisted_cohomology.hpp"

#include <algorithm>
#include <string>

#include "charvar/errors.hpp"

namespace charvar {

Cochain1 Cochain1::zero(int generator_count, int dim_g) {
  return {Vector::Zero(static_cast<Eigen::Index>(generator_count) * dim_g), dim_g};
}

Cochain1 Cochain1::from_matrices(const LieAlgebra& algebra, const std::vector<AlgebraElement>& values) {
  const int d = algebra.dim();
  Cochain1 u = zero(static_cast<int>(values.size()), d);
  for (std::size_t j = 0; j < values.size(); ++j) u.coords.segment(j * d, d) = algebra.coordinates(values[j]);
  return u;
}

std::vector<AlgebraElement> Cochain1::matrices(const LieAlgebra& algebra) const {
  std::vector<AlgebraElement> out;
  for (int j = 0; j < generator_count(); ++j) out.push_back(algebra.element(value(j)));
  return out;
}

Matrix coboundary_matrix(const Representation& rep, const LieAlgebra& algebra) {
  const int d = algebra.dim();
  Matrix delta0(rep.generator_count() * d, d);
  for (int j = 0; j < rep.generator_count(); ++j)
    delta0.middleRows(j * d, d) =
        Matrix::Identity(d, d) - algebra.ad_matrix(rep.generators[j], rep.inverses[j]);
  return delta0;
}

Matrix cocycle_matrix(const Representation& rep, const LieAlgebra& algebra) {
  return fox_jacobian(relator(rep.genus), rep, algebra);
}

Vector cocycle_value(const Representation& rep, const LieAlgebra& algebra, const Cochain1& u, const Word& w) {
  validate_word(w, rep.generator_count());
  const int n = rep.spec.n;
  Vector value = Vector::Zero(algebra.dim());
  GroupElement prefix = GroupElement::Identity(n, n);
  GroupElement prefix_inverse = GroupElement::Identity(n, n);
  for (const auto& l : w.letters()) {
    if (l.exponent > 0) {
      value += algebra.ad_matrix(prefix, prefix_inverse) * u.value(l.generator);
      prefix = prefix * rep.generators[l.generator];
      prefix_inverse = rep.inverses[l.generator] * prefix_inverse;
    } else {
      prefix = prefix * rep.inverses[l.generator];
      prefix_inverse = rep.generators[l.generator] * prefix_inverse;
      value -= algebra.ad_matrix(prefix, prefix_inverse) * u.value(l.generator);
    }
  }
  return value;
}

double cocycle_residual(const Representation& rep, const LieAlgebra& algebra, const Cochain1& u) {
  return (cocycle_matrix(rep, algebra) * u.coords).norm() / std::max(1.0, u.coords.norm());
}

Cochain1 coboundary(const Representation& rep, const LieAlgebra& algebra, const Vector& s) {
  return {coboundary_matrix(rep, algebra) * s, algebra.dim()};
}

Cochain1 transport_by_conjugation(const LieAlgebra& algebra, const Cochain1& u, const GroupElement& g) {
  const Matrix ad = algebra.ad_matrix(g);
  Cochain1 out = u;
  for (int j = 0; j < u.generator_count(); ++j) out.coords.segment(j * u.dim_g, u.dim_g) = ad * u.value(j);
  return out;
}

int numerical_rank(const Eigen::VectorXd& s, const RankOptions& options, const char* what) {
  const double scale = std::max(1.0, s.size() > 0 ? s(0) : 0.0);
  int rank = 0;
  for (Eigen::Index i = 0; i < s.size(); ++i) {
    const double rel = s(i) / scale;
    if (rel >= options.band_low && rel <= options.band_high)
      throw RankAmbiguous(std::string("rank ambiguous for ") + what + ": singular value " + std::to_string(rel) +
                              " inside the indeterminate band",
                          rel);
    if (rel > options.rank_tol) ++rank;
  }
  return rank;
}

CohomologySpaces cohomology(const Representation& rep, const RankOptions& options, double flat_tol) {
  if (rep.residual > flat_tol)
    throw InvalidInput("cohomology needs a flat representation (residual " + std::to_string(rep.residual) + ")");
  const LieAlgebra algebra(rep.spec);
  const int d = algebra.dim();
  const int m = rep.generator_count() * d;

  CohomologySpaces out;
  out.dim_g = d;
  out.genus = rep.genus;
  out.residual = rep.residual;
  out.delta0 = coboundary_matrix(rep, algebra);
  out.delta1 = cocycle_matrix(rep, algebra);

  Eigen::JacobiSVD<Matrix> svd0(out.delta0, Eigen::ComputeFullU | Eigen::ComputeFullV);
  Eigen::JacobiSVD<Matrix> svd1(out.delta1, Eigen::ComputeFullU | Eigen::ComputeFullV);
  const int rank0 = numerical_rank(svd0.singularValues(), options, "delta0");
  const int rank1 = numerical_rank(svd1.singularValues(), options, "delta1");

  out.h0 = d - rank0;
  out.h2 = d - rank1;
  out.h1 = (m - rank1) - rank0;
  out.coboundary_basis = svd0.matrixU().leftCols(rank0);
  out.cocycle_basis = svd1.matrixV().rightCols(m - rank1);

  // Project Z^1 off B^1 (Hermitian inner product) and keep the dominant directions.
  const Matrix& q = out.coboundary_basis;
  const Matrix projected = out.cocycle_basis - q * (q.adjoint() * out.cocycle_basis);
  if (out.h1 > 0) {
    Eigen::JacobiSVD<Matrix> svdp(projected, Eigen::ComputeThinU);
    out.h1_basis = svdp.matrixU().leftCols(out.h1);
  } else {
    out.h1_basis = Matrix::Zero(m, 0);
  }
  return out;
}

}  // namespace charvar
