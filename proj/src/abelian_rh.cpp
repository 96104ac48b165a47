#include "charvar/abelian_rh.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>

#include "charvar/errors.hpp"
#include "charvar/goldman_form.hpp"
#include "charvar/rep_variety.hpp"

namespace charvar {

HyperellipticCurve::HyperellipticCurve(std::vector<double> branch_points) {
  std::sort(branch_points.begin(), branch_points.end());
  for (double x : branch_points) branch_points_.emplace_back(x, 0.0);
  real_ = true;
  validate();
}

HyperellipticCurve::HyperellipticCurve(std::vector<Complex> branch_points, bool experimental)
    : branch_points_(std::move(branch_points)) {
  real_ = std::all_of(branch_points_.begin(), branch_points_.end(), [](Complex z) { return z.imag() == 0.0; });
  if (real_) {
    std::sort(branch_points_.begin(), branch_points_.end(), [](Complex a, Complex b) { return a.real() < b.real(); });
  } else if (!experimental) {
    throw InvalidInput("complex branch points need the experimental flag (period paths unvalidated)");
  }
  validate();
}

void HyperellipticCurve::validate() const {
  const auto count = branch_points_.size();
  if (count % 2 != 0) throw InvalidInput("odd branch point count is not supported; need 2g + 2 points");
  if (count < 6) throw InvalidInput("need at least 6 branch points (genus >= 2)");
  for (std::size_t i = 0; i < count; ++i)
    for (std::size_t j = i + 1; j < count; ++j)
      if (std::abs(branch_points_[i] - branch_points_[j]) <= 1e-8)
        throw InvalidInput("branch points must be pairwise distinct (gap > 1e-8)");
}

HyperellipticCurve HyperellipticCurve::scaled(double t) const {
  std::vector<Complex> pts;
  for (auto z : branch_points_) pts.push_back(t * z);
  return HyperellipticCurve(std::move(pts), !real_);
}

std::vector<DifferentialDescriptor> holomorphic_basis(const HyperellipticCurve& curve) {
  std::vector<DifferentialDescriptor> basis;
  for (int j = 0; j < curve.genus(); ++j) basis.push_back({j});
  return basis;
}

std::vector<CycleDescription> standard_cycles(int genus) {
  std::vector<CycleDescription> cycles;
  for (int i = 1; i <= genus; ++i) cycles.push_back({'A', i, 2 * i - 2, 2 * i - 1});
  for (int i = 1; i <= genus; ++i) cycles.push_back({'B', i, 2 * i - 1, 2 * genus});
  return cycles;
}

namespace {

// Integral of x^p dx / y over [lambda_a, lambda_{a+1}] by Gauss-Chebyshev nodes,
// which absorb the inverse square-root singularities at both ends.
Vector segment_integrals(const HyperellipticCurve& curve, int a, int order) {
  const auto& lam = curve.branch_points();
  const int g = curve.genus();
  const int count = static_cast<int>(lam.size());
  Vector out = Vector::Zero(g);
  const double pi = std::numbers::pi;
  const Complex left = lam[a];
  const Complex right = lam[a + 1];
  for (int k = 1; k <= order; ++k) {
    const double s = std::cos((2.0 * k - 1.0) * pi / (2.0 * order));
    const Complex x = 0.5 * (left + right) + 0.5 * (right - left) * s;
    Complex weight;
    if (curve.is_real()) {
      // y = i^m prod |x - lambda|^{1/2}, with m branch points to the right of x.
      const int m = count - (a + 1);
      Complex phase = 1.0;
      for (int r = 0; r < m % 4; ++r) phase *= Complex(0.0, 1.0);
      double smooth = 1.0;
      for (int k2 = 0; k2 < count; ++k2)
        if (k2 != a && k2 != a + 1) smooth *= std::sqrt(std::abs(x.real() - lam[k2].real()));
      weight = 1.0 / (phase * smooth);
    } else {
      Complex y = 1.0;
      for (int k2 = 0; k2 < count; ++k2) y *= std::sqrt(x - lam[k2]);
      weight = 0.5 * (right - left) * std::sqrt(1.0 - s * s) / y;
    }
    Complex power = 1.0;
    for (int j = 0; j < g; ++j) {
      out(j) += power * weight;
      power *= x;
    }
  }
  return out * (pi / order);
}

Matrix periods_at(const HyperellipticCurve& curve, const std::vector<CycleDescription>& cycles, int order) {
  const int segments = static_cast<int>(curve.branch_points().size()) - 1;
  std::vector<Vector> seg;
  for (int a = 0; a < segments; ++a) seg.push_back(segment_integrals(curve, a, order));
  Matrix out(cycles.size(), curve.genus());
  for (std::size_t c = 0; c < cycles.size(); ++c) {
    const auto& cyc = cycles[c];
    if (cyc.from < 0 || cyc.to > segments || cyc.from >= cyc.to) throw InvalidInput("bad cycle endpoints");
    Vector total = Vector::Zero(curve.genus());
    // A B-cycle crosses the intermediate cuts on one sheet and returns on the other;
    // the cut segments cancel, so only the gaps between cuts contribute.
    const int stride = cyc.kind == 'B' ? 2 : 1;
    for (int a = cyc.from; a < cyc.to; a += stride) total += seg[a];
    out.row(c) = 2.0 * total.transpose();
  }
  return out;
}

double column_drift(const Matrix& coarse, const Matrix& fine) {
  double worst = 0.0;
  for (Eigen::Index j = 0; j < coarse.cols(); ++j) {
    const double scale = fine.col(j).cwiseAbs().maxCoeff();
    const double diff = (coarse.col(j) - fine.col(j)).cwiseAbs().maxCoeff();
    worst = std::max(worst, scale > 0.0 ? diff / scale : diff);
  }
  return worst;
}

Matrix relation_two(const Matrix& a, const Matrix& b) {
  const Matrix m = Complex(0.0, 1.0) * (a.transpose() * b.conjugate() - b.transpose() * a.conjugate());
  return 0.5 * (m + m.adjoint());
}

}  // namespace

Matrix cycle_periods(const HyperellipticCurve& curve, const std::vector<CycleDescription>& cycles, int order) {
  if (order < 16) throw InvalidInput("quadrature order must be at least 16");
  return periods_at(curve, cycles, order);
}

PeriodData periods(const HyperellipticCurve& curve, int quadrature_order, const PeriodOptions& options) {
  if (quadrature_order < 16) throw InvalidInput("quadrature order must be at least 16");
  const int g = curve.genus();
  PeriodData out;
  out.genus = g;
  out.quadrature_order = quadrature_order;
  out.cycles = standard_cycles(g);

  const Matrix coarse = periods_at(curve, out.cycles, quadrature_order);
  const Matrix fine = periods_at(curve, out.cycles, 2 * quadrature_order);
  out.quadrature_drift = column_drift(coarse, fine);
  if (out.quadrature_drift > options.convergence_tol)
    throw ConvergenceFailure("period quadrature not converged between orders N and 2N", out.quadrature_drift,
                             2 * quadrature_order);

  out.a_periods = coarse.topRows(g);
  out.b_periods = coarse.bottomRows(g);

  Eigen::SelfAdjointEigenSolver<Matrix> eig(relation_two(out.a_periods, out.b_periods));
  if (eig.eigenvalues().maxCoeff() < 0.0) {
    out.orientation_sign = -1;
    out.b_periods = -out.b_periods;
    eig.compute(relation_two(out.a_periods, out.b_periods));
  }
  out.relation_two_eigenvalues = eig.eigenvalues();
  out.relation_two_definite = eig.eigenvalues().minCoeff() > 0.0;

  const Matrix rel1 = out.a_periods.transpose() * out.b_periods - out.b_periods.transpose() * out.a_periods;
  out.relation_one_residual = rel1.norm() / (out.a_periods.norm() * out.b_periods.norm());

  out.intersection = Eigen::MatrixXi::Zero(2 * g, 2 * g);
  for (int i = 0; i < g; ++i) {
    out.intersection(2 * i, 2 * i + 1) = 1;
    out.intersection(2 * i + 1, 2 * i) = -1;
  }
  return out;
}

void require_valid(const PeriodData& p, double relation_tol) {
  if (p.a_periods.rows() != p.genus || p.b_periods.rows() != p.genus) throw InvalidInput("period data has wrong shape");
  if (!(p.relation_one_residual <= relation_tol))
    throw InvalidInput("period data violates the first Riemann bilinear relation");
  if (!p.relation_two_definite) throw InvalidInput("period data violates the second Riemann bilinear relation");
  const Eigen::VectorXd s = Eigen::JacobiSVD<Matrix>(p.a_periods).singularValues();
  if (!(s(s.size() - 1) > 1e-12 * s(0))) throw InvalidInput("A-period matrix is singular");
}

std::pair<Vector, Vector> class_periods(const PeriodData& p, const TangentVector& v) {
  return {p.a_periods * v.eta + p.a_periods.conjugate() * v.phi, p.b_periods * v.eta + p.b_periods.conjugate() * v.phi};
}

Complex wedge_integral(const Vector& a_alpha, const Vector& b_alpha, const Vector& a_beta, const Vector& b_beta) {
  return (a_alpha.array() * b_beta.array() - b_alpha.array() * a_beta.array()).sum();
}

namespace {

void check_tangent(const PeriodData& p, const TangentVector& v) {
  if (v.eta.size() != p.genus || v.phi.size() != p.genus)
    throw InvalidInput("tangent vector needs g holomorphic and g antiholomorphic coordinates");
}

}  // namespace

Complex serre_pairing(const PeriodData& p, const TangentVector& v, const TangentVector& w, const InvariantForm& form) {
  require_valid(p);
  check_tangent(p, v);
  check_tangent(p, w);
  const Vector a_eta_v = p.a_periods * v.eta, b_eta_v = p.b_periods * v.eta;
  const Vector a_eta_w = p.a_periods * w.eta, b_eta_w = p.b_periods * w.eta;
  const Vector a_phi_v = p.a_periods.conjugate() * v.phi, b_phi_v = p.b_periods.conjugate() * v.phi;
  const Vector a_phi_w = p.a_periods.conjugate() * w.phi, b_phi_w = p.b_periods.conjugate() * w.phi;
  return form.scale() *
         (wedge_integral(a_eta_v, b_eta_v, a_phi_w, b_phi_w) + wedge_integral(a_phi_v, b_phi_v, a_eta_w, b_eta_w));
}

Matrix serre_gram(const PeriodData& p, const InvariantForm& form) {
  const int g = p.genus;
  auto unit = [&](int k) {
    TangentVector t{Vector::Zero(g), Vector::Zero(g)};
    if (k < g)
      t.eta(k) = 1.0;
    else
      t.phi(k - g) = 1.0;
    return t;
  };
  Matrix gram(2 * g, 2 * g);
  for (int i = 0; i < 2 * g; ++i)
    for (int j = 0; j < 2 * g; ++j) gram(i, j) = serre_pairing(p, unit(i), unit(j), form);
  return gram;
}

PullbackCheck rh_pullback_check(const HyperellipticCurve& curve, const PeriodData& p, const TangentVector& v,
                                const TangentVector& w, const InvariantForm& form) {
  if (curve.genus() != p.genus) throw InvalidInput("period data belongs to a curve of different genus");
  PullbackCheck out;
  out.lhs = serre_pairing(p, v, w, form);

  // Monodromy side: the class alpha defines the torus cocycle a_i -> A_i(alpha), b_i -> B_i(alpha).
  const int g = p.genus;
  const Representation rep = trivial_representation(LieGroupSpec::torus(), g);
  const BarTwoChain cycle = fundamental_cycle(SurfaceGroupPresentation(g), CycleOptions{.self_test = false});
  auto to_cocycle = [&](const TangentVector& t) {
    const auto [a, b] = class_periods(p, t);
    Cochain1 u = Cochain1::zero(2 * g, 1);
    for (int i = 0; i < g; ++i) {
      u.coords(2 * i) = a(i);
      u.coords(2 * i + 1) = b(i);
    }
    return u;
  };
  const Cochain1 uv = to_cocycle(v);
  const Cochain1 uw = to_cocycle(w);
  out.rhs = goldman_pairing(rep, uv, uw, cycle, form);
  out.magnitude = form.scale() * uv.coords.norm() * uw.coords.norm();
  const double denom = std::max({std::abs(out.lhs), std::abs(out.rhs), 1e-300});
  out.relative_error = std::abs(out.lhs - out.rhs) / denom;
  return out;
}

}  // namespace charvar
