#pragma once

#include <vector>

#include "charvar/lie_backend.hpp"

namespace charvar {

// y^2 = prod (x - lambda_i) with 2g + 2 distinct branch points.
class HyperellipticCurve {
 public:
  // Real branch points are sorted ascending. Complex branch points are accepted
  // only with experimental = true; their period paths are not validated.
  explicit HyperellipticCurve(std::vector<double> branch_points);
  HyperellipticCurve(std::vector<Complex> branch_points, bool experimental);

  int genus() const { return static_cast<int>(branch_points_.size()) / 2 - 1; }
  const std::vector<Complex>& branch_points() const { return branch_points_; }
  bool is_real() const { return real_; }
  HyperellipticCurve scaled(double t) const;

 private:
  void validate() const;
  std::vector<Complex> branch_points_;
  bool real_ = true;
};

// x^power dx / y.
struct DifferentialDescriptor {
  int power = 0;
};

std::vector<DifferentialDescriptor> holomorphic_basis(const HyperellipticCurve& curve);

// A closed cycle given as twice the path integral between two branch points
// (0-based indices, along the real axis just above it, sheet fixed by the
// principal branch of prod sqrt(x - lambda_k) in the upper half plane).
struct CycleDescription {
  char kind = 'A';  // 'A' or 'B'
  int index = 1;    // 1-based handle index
  int from = 0;
  int to = 1;
};

// Standard layout: A_i around (lambda_{2i-1}, lambda_{2i}), B_i from lambda_{2i} to lambda_{2g+1}.
// B-cycles pick up only the gap segments (lambda_{2k}, lambda_{2k+1}), k = i..g.
std::vector<CycleDescription> standard_cycles(int genus);

/// Rows follow `cycles`, columns the holomorphic basis. No orientation fix-up.
Matrix cycle_periods(const HyperellipticCurve& curve, const std::vector<CycleDescription>& cycles, int order);

struct PeriodData {
  int genus = 0;
  int quadrature_order = 0;
  std::vector<CycleDescription> cycles;  // A_1..A_g then B_1..B_g
  Matrix a_periods;                      // [k][j] = integral of omega_j over A_k
  Matrix b_periods;                      // [k][j] = integral of omega_j over B_k
  Eigen::MatrixXi intersection;          // order A_1, B_1, A_2, B_2, ...
  int orientation_sign = 1;              // +1 unless the B-cycles had to be reversed
  double relation_one_residual = 0.0;    // ||A^T B - B^T A|| / (||A|| ||B||)
  Eigen::VectorXd relation_two_eigenvalues;  // of i (A^T conj B - B^T conj A)
  bool relation_two_definite = false;
  double quadrature_drift = 0.0;         // order N vs 2N, column-normwise relative
};

struct PeriodOptions {
  double convergence_tol = 1e-8;
  double relation_tol = 1e-6;
};

// Throws InvalidInput for order < 16 or non-real curves, ConvergenceFailure when
// order N and 2N disagree beyond convergence_tol.
PeriodData periods(const HyperellipticCurve& curve, int quadrature_order, const PeriodOptions& options = {});

// Total de Rham class alpha = sum eta_j omega_j + sum phi_j conj(omega_j).
struct TangentVector {
  Vector eta;  // holomorphic part, omega-basis coordinates
  Vector phi;  // antiholomorphic part, conj(omega)-basis coordinates
};

/// A- and B-periods of a tangent vector's total class.
std::pair<Vector, Vector> class_periods(const PeriodData& periods, const TangentVector& v);

/// sum_i [A_i(alpha) B_i(beta) - B_i(alpha) A_i(beta)].
Complex wedge_integral(const Vector& a_alpha, const Vector& b_alpha, const Vector& a_beta, const Vector& b_beta);

/// c * (int eta_v ^ phi_w + int phi_v ^ eta_w). Throws InvalidInput for degenerate PeriodData.
Complex serre_pairing(const PeriodData& periods, const TangentVector& v, const TangentVector& w,
                      const InvariantForm& form = InvariantForm{});

/// 2g x 2g matrix of serre_pairing on the coordinate basis (eta_1..eta_g, phi_1..phi_g).
Matrix serre_gram(const PeriodData& periods, const InvariantForm& form = InvariantForm{});

struct PullbackCheck {
  Complex lhs;
  Complex rhs;
  double relative_error = 0.0;
  double magnitude = 0.0;  // |periods(alpha_v)| |periods(alpha_w)|, the scale for absolute zeros
};

// lhs: serre_pairing. rhs: the torus Goldman pairing of the monodromy-side
// cocycles a_i -> A_i(alpha), b_i -> B_i(alpha).
PullbackCheck rh_pullback_check(const HyperellipticCurve& curve, const PeriodData& periods, const TangentVector& v,
                                const TangentVector& w, const InvariantForm& form = InvariantForm{});

void require_valid(const PeriodData& periods, double relation_tol = 1e-6);

}  // namespace charvar
