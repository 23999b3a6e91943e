#ifndef SMZ_SELBERG_HPP
#define SMZ_SELBERG_HPP

// Selberg-type integrals
//   S_G = int_D prod_{i<<j} (x_j - x_i)^{a_ij} prod_{e in G} a_e omega_G
// over D = {x_1 < x_n < ... < x_{r+1} < x_r}, with x_1 = 0 and x_2 = 1 (and x_3
// fixed in (0,1) when r = 3). The order is 1 << n << ... << 3 << 2.
// D is oriented by (-1)^{n-r} dx_n ^ ... ^ dx_{r+1}, which makes the n = 3 integral
// with the single edge (2,3) equal to Gamma(1+a13)Gamma(1+a23)/Gamma(1+a13+a23).

#include "smz/graphs.hpp"
#include "smz/quadrature.hpp"

#include <complex>
#include <vector>

namespace smz {

// a_ij > 0 indexed by pair_symbol(i, j); symmetric by construction.
template <class V>
struct ExponentsT {
  int n = 0;
  std::vector<V> a;

  ExponentsT() = default;
  explicit ExponentsT(int n_, V fill = V(0));
  V get(int i, int j) const;
  void set(int i, int j, V v);
};
using ExponentAssignment = ExponentsT<double>;
using ComplexExponents = ExponentsT<std::complex<double>>;

ExponentAssignment exponents_from_list(int n, const std::vector<double>& values);  // pair_symbol order

enum class Scheme { TanhSinh, Lattice };

struct SelbergOptions {
  int r = 2;
  double x3 = 0.5;      // third root position when r = 3
  double tol = 0;       // 0: 1e-11 (1-D), 1e-9 (2-D), 1e-6 (3-D and up)
  Scheme scheme = Scheme::TanhSinh;
  double min_exponent = 0;  // 0: derived from the exponents
};

double default_tolerance(int dim);

// Root positions x[1..r] (x[0] unused).
std::vector<double> root_positions(const SelbergOptions& opt);

QuadratureResult integrate_graph(const OrderedRootedGraph& g, const ExponentAssignment& a,
                                 const SelbergOptions& opt = {});
QuadratureResult integrate_sum(const GraphSum& gamma, const ExponentAssignment& a, const SelbergOptions& opt = {});
ComplexQuadratureResult integrate_sum(const GraphSum& gamma, const ComplexExponents& a,
                                      const SelbergOptions& opt = {});

// Taylor coefficients c_0..c_w of t -> S_gamma(t a0), from Cauchy integrals on
// a circle in the complex t-plane re-expanded at t = 0.
struct TaylorOptions {
  int samples = 48;        // points on the circle
  int terms = 24;          // Taylor terms kept around the circle centre
  double centre = 0.3;     // in units of 1/max(a0)
  double radius = 0.28;    // in units of 1/max(a0)
};
struct TaylorResult {
  std::vector<double> coeffs;
  std::vector<double> err_estimate;  // per coefficient, from halving the sample count
  double max_imag = 0;               // imaginary residue of the real coefficients
  long long evaluations = 0;
};
TaylorResult taylor_coefficients(const GraphSum& gamma, const ExponentAssignment& direction, int max_weight,
                                 const SelbergOptions& opt = {}, const TaylorOptions& topt = {});

// |sum_{i'=1}^{p-1} S_{gamma(I with i_p = i')}| for index tuples with root set [r].
struct SumRelationResult {
  std::vector<double> components;
  double sum = 0;
  double err_estimate = 0;
};
SumRelationResult sum_relation_defect(const IndexTuple& I, int p, const ExponentAssignment& a,
                                      const SelbergOptions& opt = {});

}  // namespace smz

#endif
