#include "smz/selberg.hpp"

#include "smz/parallel.hpp"
#include "smz/poly.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

namespace smz {

template <class V>
ExponentsT<V>::ExponentsT(int n_, V fill) : n(n_), a(symbol_count(n_), fill) {}

template <class V>
V ExponentsT<V>::get(int i, int j) const {
  return a.at(pair_symbol(i, j));
}

template <class V>
void ExponentsT<V>::set(int i, int j, V v) {
  a.at(pair_symbol(i, j)) = v;
}

template struct ExponentsT<double>;
template struct ExponentsT<std::complex<double>>;

ExponentAssignment exponents_from_list(int n, const std::vector<double>& values) {
  if (static_cast<int>(values.size()) != symbol_count(n))
    throw std::invalid_argument("exponents_from_list: expected n(n-1)/2 values");
  ExponentAssignment e(n);
  e.a = values;
  return e;
}

double default_tolerance(int dim) {
  switch (dim) {
    case 0:
    case 1:
      return 1e-11;
    case 2:
      return 1e-9;
    default:
      return 1e-6;
  }
}

std::vector<double> root_positions(const SelbergOptions& opt) {
  if (opt.r == 2) return {0.0, 0.0, 1.0};
  if (opt.r == 3) {
    if (!(opt.x3 > 0 && opt.x3 < 1)) throw std::invalid_argument("x3 must lie in (0, 1)");
    return {0.0, 0.0, 1.0, opt.x3};
  }
  throw std::invalid_argument("root set must be [2] or [3]");
}

namespace {

inline double real_part(double v) { return v; }
inline double real_part(const std::complex<double>& v) { return v.real(); }

// One graph of the sum: coefficient (including determinant, edge signs and
// orientation), edge pairs and prod_e a_e.
template <class V>
struct Term {
  double coef = 0;
  std::vector<int> edge_pairs;
  V alpha_prod{};
};

template <class V>
struct SelbergIntegrand {
  int n = 0, r = 2, d = 0;
  std::vector<double> roots;
  std::vector<V> alpha;  // by pair_symbol
  std::vector<Term<V>> terms;

  // log|x_a - x_b| for every pair, then the weighted sum of all terms.
  V operator()(const CubeNode* u, double log_weight) const {
    const int P = symbol_count(n);
    double L[64];
    const double lo = roots[1], hi = roots[r];
    const double logH = std::log(hi - lo);
    double logP[8], log1mP[8];
    {
      double acc = 0;
      for (int m = 1; m <= d; ++m) {
        const CubeNode& c = u[m - 1];
        if (m == 1)
          log1mP[1] = c.logubar;
        else
          log1mP[m] = log_add_exp(log1mP[m - 1], acc + c.logubar);
        acc += c.logu;
        logP[m] = acc;
      }
    }
    for (int j = 2; j <= n; ++j)
      for (int i = 1; i < j; ++i) {
        const int s = pair_symbol(i, j);
        if (j <= r) {
          L[s] = std::log(std::abs(roots[j] - roots[i]));
        } else if (i <= r) {
          const int m = j - r;
          if (i == 1)
            L[s] = logH + logP[m];
          else if (i == r)
            L[s] = logH + log1mP[m];
          else
            L[s] = log_add_exp(std::log(roots[i] - hi), logH + log1mP[m]);
        } else {
          const int a = i - r, b = j - r;  // y_a > y_b
          double logQ = 0, l1mQ = 0;
          for (int t = a + 1; t <= b; ++t) {
            l1mQ = (t == a + 1) ? u[t - 1].logubar : log_add_exp(l1mQ, logQ + u[t - 1].logubar);
            logQ += u[t - 1].logu;
          }
          L[s] = logH + logP[a] + l1mQ;
        }
      }
    double logJ = d * logH;
    for (int m = 1; m < d; ++m) logJ += logP[m];
    V base = V(logJ + log_weight);
    for (int s = 0; s < P; ++s) base += alpha[s] * L[s];
    V total{};
    for (const auto& t : terms) {
      double shift = 0;
      for (int s : t.edge_pairs) shift += L[s];
      total += t.coef * t.alpha_prod * std::exp(base - shift);
    }
    return total;
  }
};

template <class V>
SelbergIntegrand<V> make_integrand(const GraphSum& gamma, const ExponentsT<V>& a, const SelbergOptions& opt) {
  SelbergIntegrand<V> f;
  f.roots = root_positions(opt);
  f.r = opt.r;
  bool first = true;
  for (const auto& [g, c] : gamma.terms()) {
    if (first) {
      f.n = g.n();
      first = false;
    }
    if (g.n() != f.n || g.r() != opt.r) throw std::invalid_argument("graph sum: vertex or root set mismatch");
    if (static_cast<int>(g.edges().size()) != g.n() - g.r())
      throw std::invalid_argument("graph must have n - r edges");
    const int det = incidence_determinant(g);
    if (det == 0) continue;  // not a rooted forest: omega vanishes identically
    Term<V> t;
    // (-1)^{n-r} dx_n ^ ... ^ dx_{r+1} is positive on D: omega_{(2,3)} = dx_3/(1-x_3) at n = 3
    int sign = (g.n() - g.r()) % 2 == 0 ? 1 : -1;
    t.alpha_prod = V(1);
    for (const auto& e : g.edges()) {
      if (e.p == 1) sign = -sign;  // x_1 - x_q < 0
      t.edge_pairs.push_back(pair_symbol(e.p, e.q));
      t.alpha_prod *= a.get(e.p, e.q);
    }
    t.coef = static_cast<double>(c) * det * sign;
    f.terms.push_back(std::move(t));
  }
  if (first) return f;
  if (a.n < f.n) throw std::invalid_argument("exponent assignment has too few vertices");
  f.d = f.n - f.r;
  if (f.d > 4) throw std::invalid_argument("integration dimension above 4 not supported");
  f.alpha.assign(a.a.begin(), a.a.begin() + symbol_count(f.n));
  // pairs of roots only contribute a constant factor
  for (int j = f.r + 1; j <= f.n; ++j)
    for (int i = 1; i < j; ++i)
      if (!(real_part(f.alpha[pair_symbol(i, j)]) > 0)) throw std::domain_error("exponents must have positive real part");
  return f;
}

template <class V>
QuadratureResultT<V> integrate_impl(const GraphSum& gamma, const ExponentsT<V>& a, const SelbergOptions& opt) {
  SelbergIntegrand<V> f = make_integrand(gamma, a, opt);
  QuadratureResultT<V> res;
  if (f.terms.empty()) {
    res.converged = true;
    return res;
  }
  double min_exp = opt.min_exponent;
  if (min_exp <= 0) {
    min_exp = 1.0;
    for (int j = f.r + 1; j <= f.n; ++j)
      for (int i = 1; i < j; ++i) min_exp = std::min(min_exp, real_part(f.alpha[pair_symbol(i, j)]));
  }
  const double tol = opt.tol > 0 ? opt.tol : default_tolerance(f.d);
  CubeIntegrand<V> fn = [&f](const CubeNode* u, double lw) { return f(u, lw); };
  if (opt.scheme == Scheme::Lattice && f.d >= 1) {
    LatticeOptions lo;
    lo.tol = tol;
    lo.min_exponent = min_exp;
    return lattice_cube<V>(f.d, fn, lo);
  }
  TanhSinhOptions to;
  to.tol = tol;
  to.min_exponent = min_exp;
  return tanh_sinh_cube<V>(f.d, fn, to);
}

}  // namespace

QuadratureResult integrate_graph(const OrderedRootedGraph& g, const ExponentAssignment& a,
                                 const SelbergOptions& opt) {
  return integrate_impl(GraphSum(g), a, opt);
}

QuadratureResult integrate_sum(const GraphSum& gamma, const ExponentAssignment& a, const SelbergOptions& opt) {
  return integrate_impl(gamma, a, opt);
}

ComplexQuadratureResult integrate_sum(const GraphSum& gamma, const ComplexExponents& a,
                                      const SelbergOptions& opt) {
  return integrate_impl(gamma, a, opt);
}

namespace {

// c_k = sum_{j>=k} b_j binom(j,k) (-c)^{j-k}
std::vector<std::complex<double>> reexpand(const std::vector<std::complex<double>>& b, double c, int w) {
  std::vector<std::complex<double>> out(w + 1);
  for (int k = 0; k <= w; ++k) {
    std::complex<double> s = 0;
    double binom = 1;  // binom(j, k) for j = k
    for (int j = k; j < static_cast<int>(b.size()); ++j) {
      if (j > k) binom = binom * j / (j - k);
      s += b[j] * binom * std::pow(-c, j - k);
    }
    out[k] = s;
  }
  return out;
}

std::vector<std::complex<double>> circle_coefficients(const std::vector<std::complex<double>>& vals, int stride,
                                                      int terms, double rho) {
  const int M = static_cast<int>(vals.size()) / stride;
  std::vector<std::complex<double>> b(terms);
  for (int j = 0; j < terms; ++j) {
    std::complex<double> s = 0;
    for (int m = 0; m < M; ++m) {
      double th = -2.0 * std::numbers::pi * j * m / M;
      s += vals[m * stride] * std::complex<double>(std::cos(th), std::sin(th));
    }
    b[j] = s / static_cast<double>(M) / std::pow(rho, j);
  }
  return b;
}

}  // namespace

TaylorResult taylor_coefficients(const GraphSum& gamma, const ExponentAssignment& direction, int max_weight,
                                 const SelbergOptions& opt, const TaylorOptions& topt) {
  if (max_weight < 0 || max_weight > 6) throw std::invalid_argument("taylor_coefficients: weight must be in [0, 6]");
  if (topt.samples % 2 != 0 || topt.terms > topt.samples) throw std::invalid_argument("taylor_coefficients: bad sampling");
  double amax = 0;
  for (double v : direction.a) {
    if (v < 0) throw std::domain_error("direction must be nonnegative");
    amax = std::max(amax, v);
  }
  if (amax <= 0) throw std::domain_error("direction must be nonzero");
  const double c = topt.centre / amax, rho = topt.radius / amax;
  const int M = topt.samples;
  TaylorResult res;
  std::vector<long long> evals(M, 0);
  auto vals = parallel_map<std::complex<double>>(M, [&](std::size_t m) {
    const double th = 2.0 * std::numbers::pi * static_cast<double>(m) / M;
    const std::complex<double> t = c + rho * std::complex<double>(std::cos(th), std::sin(th));
    ComplexExponents a(direction.n);
    for (std::size_t s = 0; s < a.a.size(); ++s) a.a[s] = t * direction.a[s];
    auto q = integrate_sum(gamma, a, opt);
    evals[m] = q.evaluations;
    return q.value;
  });
  for (auto e : evals) res.evaluations += e;
  auto full = reexpand(circle_coefficients(vals, 1, topt.terms, rho), c, max_weight);
  auto half = reexpand(circle_coefficients(vals, 2, topt.terms / 2, rho), c, max_weight);
  for (int k = 0; k <= max_weight; ++k) {
    res.coeffs.push_back(full[k].real());
    res.err_estimate.push_back(std::abs(full[k] - half[k]));
    res.max_imag = std::max(res.max_imag, std::abs(full[k].imag()));
  }
  return res;
}

SumRelationResult sum_relation_defect(const IndexTuple& I, int p, const ExponentAssignment& a,
                                      const SelbergOptions& opt) {
  I.validate();
  if (I.r != opt.r) throw std::invalid_argument("sum_relation_defect: tuple root count differs from options");
  if (p <= I.r || p > I.n()) throw std::invalid_argument("sum_relation_defect: p out of range");
  SumRelationResult res;
  auto parts = parallel_map<QuadratureResult>(p - 1, [&](std::size_t k) {
    IndexTuple J = I;
    J.idx[p - I.r - 1] = static_cast<int>(k) + 1;
    return integrate_sum(wedge_chain(J), a, opt);
  });
  for (const auto& q : parts) {
    res.components.push_back(q.value);
    res.err_estimate += q.err_estimate;
  }
  for (double v : res.components) res.sum += v;
  res.sum = std::abs(res.sum);
  return res;
}

}  // namespace smz
