#ifndef SMZ_TRANSPORT_HPP
#define SMZ_TRANSPORT_HPP

// Parallel transport for ds/dx = (A/x + B/(x-1)) s on (0,1), regularized
// limits at the two singular points, the associator and its images.

#include "smz/braid.hpp"
#include "smz/mzv.hpp"
#include "smz/ncalg.hpp"
#include "smz/selberg.hpp"

#include <Eigen/Dense>

#include <functional>
#include <map>
#include <string>
#include <utility>
#include <vector>

namespace smz {

using Mat = Eigen::MatrixXd;

struct ConnectionPair {
  Mat A, B;
  int dim() const { return static_cast<int>(A.rows()); }
  void validate() const;
};

struct TransportResult {
  Mat value;
  double eps = 0;
  int extrapolation_order = 0;
  double err_estimate = 0;
};

// Fundamental solution T with s(x_to) = T s(x_from), integrated in
// u = log(x/(1-x)) with an embedded 7(8) Runge-Kutta-Fehlberg pair.
Mat transport_ode(const ConnectionPair& c, double x_from, double x_to, double tol = 1e-12);

// Same for the universal connection X dx/x + Y dx/(x-1) acting on the
// truncated free algebra by left multiplication; returns E = T * 1.
NCSeries<double> transport_series(int N, double x_from, double x_to, double tol = 1e-13);

// Left-multiplication matrices of X and Y on the truncated free algebra.
ConnectionPair free_algebra_connection(int N);

// Local solution at 0: s(x) = H(x) x^A, H(x) = sum_m h_m x^m with h_0 = 1 and
//   m h_m - [A, h_m] = -B (h_0 + ... + h_{m-1}).
Mat frobenius_series(const Mat& A, const Mat& B, double x, double tol = 1e-16);
NCSeries<double> frobenius_series(const NCSeries<double>& A, const NCSeries<double>& B, double x,
                                  double tol = 1e-17);

// lim x^{-A} s(x) (side 0) or lim (1-x)^{-B} s(x) (side 1), given the value
// of a solution at x, through the local series.
Mat regularized_limit(const ConnectionPair& c, int side, double x, const Mat& s_x);

// Ladder variant: samples f(e) = e^{-A} s(e) (side 0) at e_k = eps0 2^-k and
// fits constant + sum_{m,i,j} c e^{m + lambda_j - lambda_i} componentwise in
// the eigenbasis of the residue. Refuses near-resonant spectra.
TransportResult regularized_limit_ladder(const ConnectionPair& c, int side, const std::function<Mat(double)>& s,
                                         double eps0 = 0.02, int rungs = 8, int orders = 2);

// Smallest distance of a difference of eigenvalues of M from the nonzero integers,
// and the smallest gap between distinct eigenvalues.
struct ResonanceInfo {
  double integer_distance = 0;
  double min_gap = 0;
  bool diagonalizable = true;
};
ResonanceInfo resonance_info(const Mat& M);

// rho(Phi) = (1-x)^{-B} H_1(1-x)^{-1} H_0(x) x^{A}, independent of x.
Mat rho_phi(const ConnectionPair& c, double x = 0.5);
// Same with local series at x0 and x1 joined by the ODE.
Mat rho_phi_split(const ConnectionPair& c, double x0 = 0.25, double x1 = 0.75, double tol = 1e-13);

// Phi(X, Y) through the local series (free algebra, truncation N).
NCSeries<double> associator_numeric(int N);

// Phi from e^{-Y log e} E(e -> 1-e) e^{X log e} on an e-ladder, extrapolated
// with the model c0 + sum_{j<=N} e log^j e.
struct AssociatorLadder {
  NCSeries<double> value;
  std::vector<double> eps;
  double err_estimate = 0;
};
AssociatorLadder associator_ladder(int N, double eps0 = 1e-2, int rungs = 0);

// coefficient of w = (-1)^{#Y(w)} reg(w), reg the shuffle regularization
// with reg(X) = reg(Y) = 0. The sign is calibrated against associator_numeric.
HRElement associator_symbolic(int N);

// Convention candidates for the symbolic coefficients, scored against the
// numeric associator at weights 2 and 3.
struct ConventionScore {
  std::string name;
  double max_deviation = 0;
};
std::vector<ConventionScore> associator_convention_scores(int N = 3);
constexpr const char* associator_convention = "sign(-1)^#Y,word";

// Entries of rho(s) as rational combinations of (alpha monomial) x (MZV).
struct MixedEntry {
  std::map<std::pair<mono::Key, MZVIndex>, Rational> terms;  // empty index: the constant 1
  double evaluate(const std::vector<double>& alpha) const;
  bool weight_graded() const;  // monomial degree equals MZV weight
  std::string str() const;
};
struct MixedMatrix {
  int dim = 0;
  std::vector<MixedEntry> e;
  MixedEntry& operator()(int i, int j) { return e[static_cast<std::size_t>(i) * dim + j]; }
  const MixedEntry& operator()(int i, int j) const { return e[static_cast<std::size_t>(i) * dim + j]; }
  Mat evaluate(const std::vector<double>& alpha) const;
};
MixedMatrix rho_apply(const HRElement& s, const IntPolyMatrix& rx, const IntPolyMatrix& ry);
Mat rho_apply_numeric(const NCSeries<double>& s, const Mat& rx, const Mat& ry);

// Index tuples and exponent relabelings used by the projection identity.
IndexTuple drop_vertex_tuple(const IndexTuple& I, int v, int new_r);
ExponentAssignment drop_two_exponents(const ExponentAssignment& a);    // [n]-{2}, 3 -> 2
ExponentAssignment drop_three_exponents(const ExponentAssignment& a);  // [n]-{3}, a'_2j = a_2j + a_3j

struct ProjectionReport {
  int n = 0;
  std::vector<double> alpha;
  std::vector<double> V1, V2;           // V2 only on projected coordinates (others 0)
  std::vector<int> projected;           // coordinates with i_p not in {2,3}
  std::vector<double> lhs, rhs;         // p(V2), p(rho(Phi) V1)
  double defect = 0;
  double quadrature_err = 0;
  double rho_route_difference = 0;      // direct vs split evaluation of rho(Phi)
  double symbolic_difference = -1;      // |rho(Phi) - rho_apply(symbolic)| when requested
  double symbolic_defect = -1;          // defect with the symbolic rho(Phi)
  double resonance_distance = 0;
};
struct ProjectionOptions {
  int symbolic_degree = 0;  // 0: skip the symbolic route
  double tol = 0;           // quadrature tolerance, 0: default per dimension
};
ProjectionReport projection_identity_check(int n, const std::vector<double>& alpha, const ProjectionOptions& opt = {});

// V1 recovered from S(x3) near 0 through the ladder, for the n = 4 check.
struct LadderLimitReport {
  std::vector<double> ladder_limit, direct;
  double deviation = 0;
  double err_estimate = 0;
};
LadderLimitReport ladder_limit_check(int n, const std::vector<double>& alpha, double eps0 = 0.02, int rungs = 8);

// a_{2i} -> 0 along a ladder for the wedge chain of I (roots [2], i_3 = 2).
struct AlphaLimitReport {
  int which_case = 0;  // 1: limit 0; 2: limit S_{gamma'}
  std::vector<double> deltas, values;
  double extrapolated = 0;
  double target = 0;
  double deviation = 0;
  double quadrature_err = 0;
};
AlphaLimitReport alpha_limit_check(const IndexTuple& I, const ExponentAssignment& a,
                                   const std::vector<double>& deltas = {0.04, 0.02, 0.01, 0.005});

// Polynomial extrapolation to 0 through the points (h_k, v_k) (Neville).
double extrapolate_to_zero(const std::vector<double>& h, const std::vector<double>& v);

}  // namespace smz

#endif
