#include "charvar/rep_variety.hpp"

#include <cmath>
#include <random>
#include <string>

#include "charvar/errors.hpp"

#include <unsupported/Eigen/MatrixFunctions>

namespace charvar {

Representation make_representation(const LieGroupSpec& spec, int genus, std::vector<GroupElement> generators) {
  if (genus < 2) throw InvalidInput("surface genus must be at least 2, got " + std::to_string(genus));
  if (static_cast<int>(generators.size()) != 2 * genus)
    throw InvalidInput("expected " + std::to_string(2 * genus) + " generator matrices");
  Representation rep;
  rep.spec = spec;
  rep.genus = genus;
  for (const auto& g : generators)
    if (g.rows() != spec.n || g.cols() != spec.n) throw InvalidInput("generator matrix has the wrong size");
  rep.inverses.reserve(generators.size());
  for (const auto& g : generators) rep.inverses.push_back(inverse_checked(g));
  rep.generators = std::move(generators);
  rep.residual = relation_residual(rep);
  return rep;
}

double relation_residual(const Representation& rep) {
  const int n = rep.spec.n;
  if (n == 1) return 0.0;  // abelian: every commutator is the identity
  GroupElement r = GroupElement::Identity(n, n);
  for (int i = 0; i < rep.genus; ++i) {
    const auto& a = rep.generators[2 * i];
    const auto& b = rep.generators[2 * i + 1];
    r = r * a * b * rep.inverses[2 * i] * rep.inverses[2 * i + 1];
  }
  return (r - GroupElement::Identity(n, n)).norm();
}

namespace {

GroupElement relator_value(const Representation& rep) {
  return evaluate_word(rep, relator(rep.genus));
}

constexpr double kMaxStep = 1.0;

Representation with_generators(const Representation& like, std::vector<GroupElement> gens) {
  return make_representation(like.spec, like.genus, std::move(gens));
}

}  // namespace

RefinementResult refine_to_flat(const Representation& start, const RefinementOptions& options) {
  const LieAlgebra algebra(start.spec);
  const int d = algebra.dim();
  const Word rel = relator(start.genus);
  Representation rep = start;
  if (rep.residual <= options.flat_tol) return {rep, 0};

  // One damped Gauss-Newton step; returns false when no step length reduces the residual.
  auto step_once = [&](Representation& current) {
    const int n = current.spec.n;
    const GroupElement r = relator_value(current);
    // Target log(R^{-1}); near I this is R^{-1} - I, but it stays inside the algebra far from it.
    const Matrix target = inverse_checked(r).log();
    const Vector rhs = algebra.coordinates(target.allFinite() ? target : Matrix(inverse_checked(r) - GroupElement::Identity(n, n)));
    const Matrix jac = fox_jacobian(rel, current, algebra);
    const Vector step = jac.completeOrthogonalDecomposition().solve(rhs);
    // Cap the per-generator step so exp() stays well conditioned, then backtrack.
    double largest = 0.0;
    for (int j = 0; j < current.generator_count(); ++j) largest = std::max(largest, step.segment(j * d, d).norm());
    double t = largest > kMaxStep ? kMaxStep / largest : 1.0;
    for (int halvings = 0; halvings < 40; ++halvings, t *= 0.5) {
      std::vector<GroupElement> gens(current.generators.size());
      for (int j = 0; j < current.generator_count(); ++j)
        gens[j] = algebra.exp(algebra.element(t * step.segment(j * d, d))) * current.generators[j];
      Representation trial;
      try {
        trial = with_generators(current, std::move(gens));
      } catch (const NumericFault&) {
        continue;
      }
      if (std::isfinite(trial.residual) && trial.residual < current.residual) {
        current = std::move(trial);
        return true;
      }
    }
    return false;
  };

  for (int iter = 1; iter <= options.max_iter; ++iter) {
    const bool moved = step_once(rep);
    if (rep.residual <= options.flat_tol) {
      // Polish toward machine precision while steps still pay off.
      for (int extra = 0; extra < 3; ++extra) {
        Representation polished = rep;
        if (!step_once(polished) || polished.residual > 0.5 * rep.residual) break;
        rep = std::move(polished);
      }
      return {rep, iter};
    }
    if (!moved)
      throw ConvergenceFailure("refinement stalled: no step length reduces the residual", rep.residual, iter);
  }
  throw ConvergenceFailure("refinement did not reach flat_tol within max_iter", rep.residual, options.max_iter);
}

RefinementResult random_flat_representation_with_stats(const LieGroupSpec& spec, int genus, std::uint64_t seed,
                                                       double scale, const RefinementOptions& options) {
  if (genus < 2) throw InvalidInput("surface genus must be at least 2, got " + std::to_string(genus));
  if (!(scale >= 0.0)) throw InvalidInput("scale must be non-negative");
  const LieAlgebra algebra(spec);
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> normal(0.0, 1.0);
  // A draw whose refinement stalls is discarded and the next draw from the same stream is used.
  constexpr int kDraws = 16;
  for (int draw = 1;; ++draw) {
    std::vector<GroupElement> gens;
    for (int j = 0; j < 2 * genus; ++j) {
      Vector xi(algebra.dim());
      for (int k = 0; k < algebra.dim(); ++k) {
        const double re = normal(rng);
        const double im = normal(rng);
        xi(k) = Complex(re, im);
      }
      gens.push_back(scale == 0.0 ? algebra.identity() : algebra.exp(algebra.element(scale * xi)));
    }
    try {
      Representation start = make_representation(spec, genus, std::move(gens));
      RefinementResult result = refine_to_flat(start, options);
      result.draws = draw;
      return result;
    } catch (const ConvergenceFailure&) {
      if (draw == kDraws) throw;
    } catch (const NumericFault&) {
      if (draw == kDraws) throw;
    }
  }
}

Representation random_flat_representation(const LieGroupSpec& spec, int genus, std::uint64_t seed, double scale,
                                           const RefinementOptions& options) {
  return random_flat_representation_with_stats(spec, genus, seed, scale, options).rep;
}

Representation trivial_representation(const LieGroupSpec& spec, int genus) {
  const int n = spec.n;
  return make_representation(spec, genus,
                             std::vector<GroupElement>(2 * genus, GroupElement::Identity(n, n)));
}

Representation block_triangular_representation(const LieGroupSpec& spec, int genus, std::uint64_t seed) {
  if (spec.kind == GroupKind::Torus || spec.n != 2)
    throw InvalidInput("block-triangular construction supports GL(2) and SL(2) only");
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> normal(0.0, 1.0);
  auto gaussian = [&] {
    const double re = normal(rng);
    const double im = normal(rng);
    return Complex(re, im);
  };
  const int count = 2 * genus;
  std::vector<Complex> top(count), bottom(count), corner(count);
  for (int j = 0; j < count; ++j) {
    top[j] = std::exp(0.5 * gaussian());
    bottom[j] = spec.kind == GroupKind::SL ? 1.0 / top[j] : std::exp(0.5 * gaussian());
    corner[j] = gaussian();
  }
  auto build = [&](const std::vector<Complex>& c) {
    std::vector<GroupElement> gens;
    for (int j = 0; j < count; ++j) {
      GroupElement g(2, 2);
      g << top[j], c[j], 0.0, bottom[j];
      gens.push_back(g);
    }
    return gens;
  };
  // The relator's (0,1) entry is linear in the corner entries: find the
  // coefficient of one corner and cancel the remainder with it.
  auto corner_of_relator = [&](const std::vector<Complex>& c) {
    const Representation r = make_representation(spec, genus, build(c));
    return evaluate_word(r, relator(genus))(0, 1);
  };
  const Complex full = corner_of_relator(corner);
  for (int j = 0; j < count; ++j) {
    std::vector<Complex> unit(count, 0.0);
    unit[j] = 1.0;
    const Complex coeff = corner_of_relator(unit);
    if (std::abs(coeff) > 1e-3) {
      auto fixed = corner;
      fixed[j] -= full / coeff;
      return make_representation(spec, genus, build(fixed));
    }
  }
  throw NumericFault("block-triangular construction found no usable corner coefficient");
}

Representation conjugate(const Representation& rep, const GroupElement& g) {
  const GroupElement gi = inverse_checked(g);
  std::vector<GroupElement> gens;
  gens.reserve(rep.generators.size());
  for (const auto& a : rep.generators) gens.push_back(g * a * gi);
  return make_representation(rep.spec, rep.genus, std::move(gens));
}

namespace {

Vector flatten(const Matrix& m) {
  return Eigen::Map<const Vector>(m.data(), m.size());
}

}  // namespace

IrreducibilityReport irreducibility(const Representation& rep, const IrreducibilityOptions& options) {
  IrreducibilityReport report;
  const int n = rep.spec.n;
  const int full = n * n;
  if (rep.spec.kind == GroupKind::Torus) {
    report.verdict = Irreducibility::Irreducible;
    report.algebra_dimension = 1;
    report.critical_singular_value = 1.0;
    return report;
  }

  // Orthonormal basis (columns, vec form) of the span of words of length <= k.
  Matrix span = flatten(GroupElement::Identity(n, n)).normalized();
  Matrix pool = span;
  const int cap = 2 * n * n;
  for (int length = 1; length <= cap && span.cols() < full; ++length) {
    Matrix candidates(full, span.cols() * (1 + rep.generator_count()));
    candidates.leftCols(span.cols()) = span;
    Eigen::Index col = span.cols();
    for (const auto& g : rep.generators)
      for (Eigen::Index k = 0; k < span.cols(); ++k) {
        const Matrix m = Eigen::Map<const Matrix>(span.col(k).data(), n, n);
        candidates.col(col++) = flatten(g * m);
      }
    pool = candidates;
    Eigen::JacobiSVD<Matrix> svd(candidates, Eigen::ComputeThinU);
    const auto& s = svd.singularValues();
    Eigen::Index rank = 0;
    while (rank < s.size() && s(rank) > options.rank_tol * s(0)) ++rank;
    if (rank == span.cols()) break;
    span = svd.matrixU().leftCols(rank);
  }

  Eigen::JacobiSVD<Matrix> svd(pool);
  const auto& s = svd.singularValues();
  const double critical = s.size() >= full ? s(full - 1) / s(0) : 0.0;
  Eigen::Index rank = 0;
  while (rank < s.size() && s(rank) > options.rank_tol * s(0)) ++rank;
  report.algebra_dimension = static_cast<int>(rank);
  report.critical_singular_value = critical;
  if (critical > options.band_high)
    report.verdict = Irreducibility::Irreducible;
  else if (critical < options.band_low)
    report.verdict = Irreducibility::Reducible;
  else
    report.verdict = Irreducibility::Indeterminate;
  return report;
}

bool is_irreducible(const Representation& rep, const IrreducibilityOptions& options) {
  const auto report = irreducibility(rep, options);
  if (report.verdict == Irreducibility::Indeterminate)
    throw RankAmbiguous("irreducibility undecided: generated algebra rank inside the indeterminate band",
                        report.critical_singular_value);
  return report.verdict == Irreducibility::Irreducible;
}

}  // namespace charvar
