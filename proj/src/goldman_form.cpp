#include "charvar/goldman_form.hpp"

#include <algorithm>
#include <cmath>
#include <random>
#include <string>

#include "charvar/errors.hpp"
#include "charvar/rep_variety.hpp"

namespace charvar {

namespace {

Vector random_complex(std::mt19937_64& rng, Eigen::Index size) {
  std::normal_distribution<double> normal(0.0, 1.0);
  Vector v(size);
  for (Eigen::Index i = 0; i < size; ++i) {
    const double re = normal(rng);
    const double im = normal(rng);
    v(i) = Complex(re, im);
  }
  return v;
}

void require_cocycle(const Representation& rep, const LieAlgebra& algebra, const Cochain1& u, double tol,
                     const char* name) {
  if (u.dim_g != algebra.dim() || u.generator_count() != rep.generator_count())
    throw InvalidInput(std::string("cochain ") + name + " has the wrong shape");
  const double r = cocycle_residual(rep, algebra, u);
  if (r > tol) throw NotACocycle(std::string("cochain ") + name + " is not a cocycle (delta1 residual " +
                                     std::to_string(r) + ")",
                                 r);
}

void descent_self_test(const BarTwoChain& cycle, const CycleOptions& options) {
  const auto spec = LieGroupSpec::sl(2);
  const LieAlgebra algebra(spec);
  std::mt19937_64 rng(0x5eed0001ULL + cycle.genus);
  for (int trial = 0; trial < options.self_test_reps; ++trial) {
    const Representation rep = random_flat_representation(spec, cycle.genus, 7001 + trial, 0.5);
    Eigen::JacobiSVD<Matrix> svd(cocycle_matrix(rep, algebra), Eigen::ComputeFullV);
    const Matrix z1 = svd.matrixV().rightCols(svd.matrixV().cols() - algebra.dim());
    const Cochain1 u{z1 * random_complex(rng, z1.cols()), algebra.dim()};
    const Cochain1 v{z1 * random_complex(rng, z1.cols()), algebra.dim()};
    const Cochain1 ds = coboundary(rep, algebra, random_complex(rng, algebra.dim()));
    const Cochain1 shifted{u.coords + ds.coords, algebra.dim()};
    const auto base = goldman_pairing_detail(rep, u, v, cycle);
    const auto moved = goldman_pairing_detail(rep, shifted, v, cycle);
    const double scale = std::max({1.0, base.magnitude, moved.magnitude});
    if (std::abs(base.value - moved.value) > options.descent_tol * scale)
      throw NumericFault("fundamental cycle failed its descent self-test");
  }
}

}  // namespace

BarTwoChain fundamental_cycle(const SurfaceGroupPresentation& presentation, const CycleOptions& options) {
  BarTwoChain cycle;
  cycle.genus = presentation.genus();
  const Word& rel = presentation.relator();
  for (std::size_t k = 0; k < rel.size(); ++k)
    cycle.entries.push_back({rel.prefix(k), Word({rel[k]}), 1});
  for (int x = 0; x < presentation.generator_count(); ++x)
    cycle.entries.push_back({Word::generator(x), Word::generator(x, -1), -1});
  if (options.self_test) descent_self_test(cycle, options);
  return cycle;
}

PairingValue goldman_pairing_detail(const Representation& rep, const Cochain1& u, const Cochain1& v,
                                    const BarTwoChain& cycle, const InvariantForm& form, double cocycle_tol) {
  if (cycle.genus != rep.genus) throw InvalidInput("fundamental cycle genus does not match the representation");
  const LieAlgebra algebra(rep.spec);
  require_cocycle(rep, algebra, u, cocycle_tol, "u");
  require_cocycle(rep, algebra, v, cocycle_tol, "v");
  PairingValue out{0.0, 0.0};
  for (const auto& e : cycle.entries) {
    const Vector up = cocycle_value(rep, algebra, u, e.prefix);
    const Vector vl = cocycle_value(rep, algebra, v, e.letter);
    const Matrix ad = algebra.ad_matrix(evaluate_word(rep, e.prefix));
    const Complex term = static_cast<double>(e.coefficient) * algebra.pair(up, ad * vl, form);
    out.value += term;
    out.magnitude += std::abs(term);
  }
  return out;
}

Complex goldman_pairing(const Representation& rep, const Cochain1& u, const Cochain1& v, const BarTwoChain& cycle,
                        const InvariantForm& form, double cocycle_tol) {
  return goldman_pairing_detail(rep, u, v, cycle, form, cocycle_tol).value;
}

Matrix goldman_bilinear_matrix(const Representation& rep, const LieAlgebra& algebra, const BarTwoChain& cycle,
                               const InvariantForm& form) {
  const int m = rep.generator_count() * algebra.dim();
  Matrix total = Matrix::Zero(m, m);
  const Matrix gram = form.scale() * algebra.gram();
  for (const auto& e : cycle.entries) {
    const Matrix left = fox_jacobian(e.prefix, rep, algebra);
    const Matrix right = fox_jacobian(e.letter, rep, algebra);
    const Matrix ad = algebra.ad_matrix(evaluate_word(rep, e.prefix));
    total += static_cast<double>(e.coefficient) * left.transpose() * gram * ad * right;
  }
  return total;
}

GoldmanMatrix goldman_matrix_on(const Representation& rep, const Matrix& columns, const BarTwoChain& cycle,
                                const InvariantForm& form) {
  const LieAlgebra algebra(rep.spec);
  GoldmanMatrix out;
  out.omega = columns.transpose() * goldman_bilinear_matrix(rep, algebra, cycle, form) * columns;
  const double norm = out.omega.norm();
  out.antisymmetry = norm > 0.0 ? (out.omega + out.omega.transpose()).norm() / norm : 0.0;
  if (out.omega.size() > 0) {
    const Eigen::VectorXd s = Eigen::JacobiSVD<Matrix>(out.omega).singularValues();
    out.conditioning = s(0) > 0.0 ? s(s.size() - 1) / s(0) : 0.0;
  }
  return out;
}

GoldmanMatrix goldman_matrix(const Representation& rep, const CohomologySpaces& spaces, const BarTwoChain& cycle,
                             const InvariantForm& form) {
  if (spaces.genus != rep.genus || spaces.dim_g != rep.spec.dim_g())
    throw InvalidInput("cohomology spaces were computed for a different representation shape");
  return goldman_matrix_on(rep, spaces.h1_basis, cycle, form);
}

namespace {

// Points of the implicit chart around a flat base representation.
class ImplicitChart {
 public:
  ImplicitChart(const Representation& base, const std::array<Cochain1, 3>& directions, const ClosednessOptions& options)
      : base_(base), algebra_(base.spec), directions_(directions), options_(options) {
    const Matrix delta1 = cocycle_matrix(base, algebra_);
    Eigen::JacobiSVD<Matrix> svd(delta1, Eigen::ComputeFullV);
    const int rank = numerical_rank(svd.singularValues(), RankOptions{}, "delta1");
    normal_ = svd.matrixV().leftCols(rank);
  }

  struct Point {
    Representation rep;
    std::array<Cochain1, 3> tangents;
    int newton_iterations = 0;
  };

  Point at(const std::array<double, 3>& t) const {
    const int d = algebra_.dim();
    const int count = base_.generator_count();
    const Word rel = relator(base_.genus);
    Vector drift = Vector::Zero(count * d);
    for (int i = 0; i < 3; ++i) drift += t[i] * directions_[i].coords;
    Vector z = Vector::Zero(normal_.cols());

    auto build = [&](const Vector& xi) {
      std::vector<GroupElement> gens(count);
      for (int j = 0; j < count; ++j)
        gens[j] = algebra_.exp(algebra_.element(xi.segment(j * d, d))) * base_.generators[j];
      return make_representation(base_.spec, base_.genus, std::move(gens));
    };
    // Block-diagonal right-trivialized differential of xi -> exp(xi) rho.
    auto dexp_blocks = [&](const Vector& xi) {
      Matrix blocks = Matrix::Zero(count * d, count * d);
      for (int j = 0; j < count; ++j) {
        const AlgebraElement x = algebra_.element(xi.segment(j * d, d));
        for (int k = 0; k < d; ++k)
          blocks.block(j * d, j * d + k, d, 1) = algebra_.coordinates(algebra_.dexp(x, algebra_.basis()[k]));
      }
      return blocks;
    };

    Point p;
    Vector xi = drift;
    p.rep = build(xi);
    int iter = 0;
    while (normal_.cols() > 0 && iter < options_.max_newton) {
      if (p.rep.residual <= 1e-14) break;
      const int n = base_.spec.n;
      const Vector rhs = algebra_.coordinates(inverse_checked(evaluate_word(p.rep, rel)) - GroupElement::Identity(n, n));
      const Matrix jac = cocycle_matrix(p.rep, algebra_) * dexp_blocks(xi) * normal_;
      const Vector dz = jac.completeOrthogonalDecomposition().solve(rhs);
      const Vector next_xi = drift + normal_ * (z + dz);
      Representation next = build(next_xi);
      ++iter;
      if (!(next.residual < p.rep.residual)) break;
      z += dz;
      xi = next_xi;
      p.rep = std::move(next);
    }
    if (p.rep.residual > options_.flat_tol)
      throw ConvergenceFailure("closedness stencil point could not be refined", p.rep.residual, iter);
    p.newton_iterations = iter;

    const Matrix dexp = dexp_blocks(xi);
    const Matrix delta1 = cocycle_matrix(p.rep, algebra_);
    Eigen::CompleteOrthogonalDecomposition<Matrix> solver;
    if (normal_.cols() > 0) solver.compute(delta1 * dexp * normal_);
    for (int i = 0; i < 3; ++i) {
      Vector direction = directions_[i].coords;
      if (normal_.cols() > 0) direction += normal_ * solver.solve(-(delta1 * dexp * direction));
      p.tangents[i] = Cochain1{dexp * direction, d};
    }
    return p;
  }

 private:
  const Representation& base_;
  LieAlgebra algebra_;
  std::array<Cochain1, 3> directions_;
  ClosednessOptions options_;
  Matrix normal_;
};

}  // namespace

ClosednessResult closedness_residual(const Representation& rep, const std::array<Cochain1, 3>& directions, double h,
                                     const BarTwoChain& cycle, const ClosednessOptions& options) {
  if (!(h > 0.0)) throw InvalidInput("closedness step size must be positive");
  const ImplicitChart chart(rep, directions, options);
  ClosednessResult result;
  // d omega_{123} = d_1 omega_23 - d_2 omega_13 + d_3 omega_12.
  const std::array<std::array<int, 2>, 3> pairs{{{1, 2}, {0, 2}, {0, 1}}};
  const std::array<double, 3> signs{1.0, -1.0, 1.0};
  Complex total = 0.0;
  for (int i = 0; i < 3; ++i) {
    Complex plus_minus[2];
    for (int side = 0; side < 2; ++side) {
      std::array<double, 3> t{0.0, 0.0, 0.0};
      t[i] = side == 0 ? h : -h;
      const auto p = chart.at(t);
      result.max_newton_iterations = std::max(result.max_newton_iterations, p.newton_iterations);
      result.worst_stencil_residual = std::max(result.worst_stencil_residual, p.rep.residual);
      plus_minus[side] = goldman_pairing(p.rep, p.tangents[pairs[i][0]], p.tangents[pairs[i][1]], cycle, options.form);
    }
    const Complex derivative = (plus_minus[0] - plus_minus[1]) / (2.0 * h);
    result.derivative_scale = std::max(result.derivative_scale, std::abs(derivative));
    total += signs[i] * derivative;
  }
  result.residual = std::abs(total);
  return result;
}

}  // namespace charvar
