#ifndef SMZ_QUADRATURE_HPP
#define SMZ_QUADRATURE_HPP

// Integration over the unit cube [0,1]^d for integrands with algebraic
// endpoint singularities. Both schemes use the double-exponential change of
// variables u = 1/(1 + exp(-pi sinh t)) per axis and hand the integrand the
// logarithms of u and 1-u, so that integrands can be evaluated in log form
// without cancellation or overflow near the faces.

#include <complex>
#include <functional>
#include <vector>

namespace smz {

struct CubeNode {
  double logu = 0, logubar = 0;  // log u, log(1-u)
};

template <class V>
struct QuadratureResultT {
  V value{};
  double err_estimate = 0;
  long long evaluations = 0;
  bool converged = false;
};
using QuadratureResult = QuadratureResultT<double>;
using ComplexQuadratureResult = QuadratureResultT<std::complex<double>>;

// f(nodes, log_weight) must return integrand * exp(log_weight).
template <class V>
using CubeIntegrand = std::function<V(const CubeNode* nodes, double log_weight)>;

struct TanhSinhOptions {
  double tol = 1e-10;        // absolute, on the difference of successive halvings
  double min_exponent = 0.05;  // lower bound on the endpoint decay exponent
  int max_level = 0;         // 0: pick from the dimension
};

// Nested tanh-sinh with step halving h = 2^-k.
template <class V>
QuadratureResultT<V> tanh_sinh_cube(int dim, const CubeIntegrand<V>& f, const TanhSinhOptions& opt);

struct LatticeOptions {
  int min_points_log = 14;  // start from about 2^14 points
  int max_points_log = 21;
  double tol = 1e-8;
  double min_exponent = 0.05;
};

// Rank-1 lattice rule (Fibonacci lattice in two dimensions, Korobov otherwise)
// on the periodized integrand; the error estimate is the difference between
// two successive lattice sizes.
template <class V>
QuadratureResultT<V> lattice_cube(int dim, const CubeIntegrand<V>& f, const LatticeOptions& opt);

// log(exp(a) + exp(b))
double log_add_exp(double a, double b);

}  // namespace smz

#endif
