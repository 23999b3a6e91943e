#include "smz/quadrature.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

namespace smz {

double log_add_exp(double a, double b) {
  if (a == -INFINITY) return b;
  if (b == -INFINITY) return a;
  return a > b ? a + std::log1p(std::exp(b - a)) : b + std::log1p(std::exp(a - b));
}

namespace {

// log(1 + e^s) without overflow
double softplus(double s) { return s > 0 ? s + std::log1p(std::exp(-s)) : std::log1p(std::exp(s)); }

struct Node1 {
  CubeNode node;
  double logw;
};

// t in [-T, T] with T chosen so that u^a, (1-u)^a are below e^-40 at the cut.
double cutoff_t(double min_exponent) {
  double a = std::max(min_exponent, 1e-4);
  return std::asinh(40.0 / (std::numbers::pi * a));
}

Node1 make_node(double t, double log_dt) {
  const double s = std::numbers::pi * std::sinh(t);
  Node1 n;
  n.node.logu = -softplus(-s);
  n.node.logubar = -softplus(s);
  n.logw = log_dt + std::log(std::numbers::pi * std::cosh(t)) + n.node.logu + n.node.logubar;
  return n;
}

std::vector<Node1> tanh_sinh_nodes(double h, double T) {
  const int J = static_cast<int>(std::ceil(T / h));
  std::vector<Node1> nodes;
  nodes.reserve(2 * J + 1);
  for (int j = -J; j <= J; ++j) nodes.push_back(make_node(j * h, std::log(h)));
  return nodes;
}

template <class V>
V tensor_sum(int dim, const std::vector<Node1>& nodes, const CubeIntegrand<V>& f, long long& evals) {
  std::vector<CubeNode> pt(dim > 0 ? dim : 1);
  if (dim == 0) {
    ++evals;
    return f(pt.data(), 0.0);
  }
  std::vector<std::size_t> idx(dim, 0);
  const std::size_t m = nodes.size();
  V total{};
  // innermost axis sums first, accumulated outward in fixed order
  std::vector<V> partial(dim, V{});
  for (;;) {
    double lw = 0;
    for (int a = 0; a < dim; ++a) {
      pt[a] = nodes[idx[a]].node;
      lw += nodes[idx[a]].logw;
    }
    partial[dim - 1] += f(pt.data(), lw);
    ++evals;
    int a = dim - 1;
    while (a >= 0) {
      if (++idx[a] < m) break;
      idx[a] = 0;
      if (a > 0) {
        partial[a - 1] += partial[a];
        partial[a] = V{};
      }
      --a;
    }
    if (a < 0) break;
  }
  total = partial[0];
  return total;
}

}  // namespace

template <class V>
QuadratureResultT<V> tanh_sinh_cube(int dim, const CubeIntegrand<V>& f, const TanhSinhOptions& opt) {
  if (dim < 0 || dim > 4) throw std::invalid_argument("tanh_sinh_cube: dimension must be in [0, 4]");
  QuadratureResultT<V> res;
  if (dim == 0) {
    res.value = tensor_sum<V>(0, {}, f, res.evaluations);
    res.converged = true;
    return res;
  }
  const double T = cutoff_t(opt.min_exponent);
  int max_level = opt.max_level;
  if (max_level <= 0) max_level = dim == 1 ? 8 : dim == 2 ? 6 : dim == 3 ? 4 : 3;
  V prev{};
  bool have_prev = false;
  for (int level = 1; level <= max_level; ++level) {
    const double h = std::ldexp(1.0, -level);
    V cur = tensor_sum<V>(dim, tanh_sinh_nodes(h, T), f, res.evaluations);
    if (have_prev) {
      res.err_estimate = std::abs(cur - prev);
      res.value = cur;
      if (res.err_estimate <= opt.tol && level >= 3) {
        res.converged = true;
        return res;
      }
    }
    prev = cur;
    have_prev = true;
    res.value = cur;
  }
  return res;
}

namespace {

std::vector<long long> lattice_generator(int dim, long long N, long long fib_prev) {
  std::vector<long long> z(dim, 1);
  if (dim == 2) {
    z[1] = fib_prev;
  } else if (dim >= 3) {
    // generalized golden ratio: the real root of g^{d+1} = g + 1
    double g = 2.0;
    for (int it = 0; it < 60; ++it) g = std::pow(1.0 + g, 1.0 / (dim + 1));
    double a = 1.0;
    for (int i = 1; i < dim; ++i) {
      a /= g;
      z[i] = static_cast<long long>(std::llround(N * (a - std::floor(a)))) % N;
      if (z[i] == 0) z[i] = 1;
    }
  }
  return z;
}

template <class V>
V lattice_sum(int dim, long long N, const std::vector<long long>& z, double T, const CubeIntegrand<V>& f,
              long long& evals) {
  std::vector<CubeNode> pt(dim);
  V total{};
  const double log_dt = std::log(2.0 * T);
  for (long long k = 0; k < N; ++k) {
    double lw = 0;
    for (int a = 0; a < dim; ++a) {
      long long num = (k * z[a]) % N;
      double s = (static_cast<double>(num) + 0.5) / static_cast<double>(N);
      Node1 nd = make_node(T * (2 * s - 1), log_dt);
      pt[a] = nd.node;
      lw += nd.logw;
    }
    total += f(pt.data(), lw);
    ++evals;
  }
  return total / static_cast<double>(N);
}

}  // namespace

template <class V>
QuadratureResultT<V> lattice_cube(int dim, const CubeIntegrand<V>& f, const LatticeOptions& opt) {
  if (dim < 1 || dim > 4) throw std::invalid_argument("lattice_cube: dimension must be in [1, 4]");
  QuadratureResultT<V> res;
  const double T = cutoff_t(opt.min_exponent);
  // Fibonacci sizes for every dimension; the generator only uses F_{m-1} in 2-D.
  std::vector<long long> fib{1, 2};
  while (fib.back() < (1LL << opt.max_points_log)) fib.push_back(fib[fib.size() - 1] + fib[fib.size() - 2]);
  V prev{};
  bool have_prev = false;
  for (std::size_t m = 2; m < fib.size(); ++m) {
    const long long N = fib[m];
    if (N < (1LL << opt.min_points_log) && m + 1 < fib.size()) continue;
    V cur = lattice_sum<V>(dim, N, lattice_generator(dim, N, fib[m - 1]), T, f, res.evaluations);
    res.value = cur;
    if (have_prev) {
      res.err_estimate = std::abs(cur - prev);
      if (res.err_estimate <= opt.tol) {
        res.converged = true;
        return res;
      }
    }
    prev = cur;
    have_prev = true;
  }
  return res;
}

template QuadratureResultT<double> tanh_sinh_cube<double>(int, const CubeIntegrand<double>&, const TanhSinhOptions&);
template QuadratureResultT<std::complex<double>> tanh_sinh_cube<std::complex<double>>(
    int, const CubeIntegrand<std::complex<double>>&, const TanhSinhOptions&);
template QuadratureResultT<double> lattice_cube<double>(int, const CubeIntegrand<double>&, const LatticeOptions&);
template QuadratureResultT<std::complex<double>> lattice_cube<std::complex<double>>(
    int, const CubeIntegrand<std::complex<double>>&, const LatticeOptions&);

}  // namespace smz
