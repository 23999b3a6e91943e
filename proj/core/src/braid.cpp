#include "smz/braid.hpp"

#include <Eigen/Eigenvalues>

#include <algorithm>
#include <cmath>
#include <complex>
#include <map>
#include <set>
#include <stdexcept>
#include <type_traits>

namespace smz {

namespace mono {
std::string to_string(Key k) {
  std::string s;
  const int d = degree(k);
  for (int i = 0; i < d;) {
    int sym = symbol(k, i);
    int e = 1;
    while (i + e < d && symbol(k, i + e) == sym) ++e;
    auto [p, q] = symbol_pair(sym);
    if (!s.empty()) s += "*";
    s += "a" + std::to_string(p) + std::to_string(q);
    if (e > 1) s += "^" + std::to_string(e);
    i += e;
  }
  return s.empty() ? "1" : s;
}
}  // namespace mono

BraidFamily scalar_family(int k) {
  if (k < 2) throw std::invalid_argument("scalar_family: k must be >= 2");
  if (symbol_count(k) > mono::max_symbol + 1) throw std::overflow_error("too many symbols");
  BraidFamily f;
  f.k = k;
  f.dim = 1;
  f.mats.resize(symbol_count(k));
  for (int j = 2; j <= k; ++j)
    for (int i = 1; i < j; ++i) {
      IntPolyMatrix m(1, 1);
      m(0, 0) = Poly<long long>::a(i, j);
      f.A(i, j) = m;
    }
  return f;
}

namespace {

// Block (bi, bj) of an m x m block matrix with blocks of size d.
void put_block(IntPolyMatrix& out, int bi, int bj, int d, const IntPolyMatrix& blk, long long sign) {
  for (int r = 0; r < d; ++r)
    for (int c = 0; c < d; ++c) {
      if (blk(r, c).zero()) continue;
      out(bi * d + r, bj * d + c) += blk(r, c) * sign;
    }
}

}  // namespace

BraidFamily ind_step(const BraidFamily& fam) {
  const int k = fam.k;
  if (k < 3) throw std::invalid_argument("ind_step: level must be >= 3");
  const int d = fam.dim, m = k - 1;
  BraidFamily out;
  out.k = m;
  out.dim = d * m;
  out.mats.resize(symbol_count(m));
  for (int j = 2; j <= m; ++j)
    for (int i = 1; i < j; ++i) {
      IntPolyMatrix M(out.dim, out.dim);
      const IntPolyMatrix& aij = fam.A(i, j);
      for (int b = 1; b <= m; ++b) put_block(M, b - 1, b - 1, d, aij, 1);
      put_block(M, i - 1, i - 1, d, fam.A(k, j), 1);
      put_block(M, j - 1, j - 1, d, fam.A(k, i), 1);
      put_block(M, i - 1, j - 1, d, fam.A(k, i), -1);
      put_block(M, j - 1, i - 1, d, fam.A(k, j), -1);
      out.A(i, j) = std::move(M);
    }
  return out;
}

std::vector<Eigen::MatrixXd> ind_step_numeric(const std::vector<Eigen::MatrixXd>& a, int k) {
  if (k < 3) throw std::invalid_argument("ind_step_numeric: level must be >= 3");
  const int d = static_cast<int>(a.at(0).rows()), m = k - 1;
  auto A = [&](int i, int j) -> const Eigen::MatrixXd& { return a.at(pair_symbol(i, j)); };
  std::vector<Eigen::MatrixXd> out(symbol_count(m));
  for (int j = 2; j <= m; ++j)
    for (int i = 1; i < j; ++i) {
      Eigen::MatrixXd M = Eigen::MatrixXd::Zero(d * m, d * m);
      for (int b = 0; b < m; ++b) M.block(b * d, b * d, d, d) = A(i, j);
      M.block((i - 1) * d, (i - 1) * d, d, d) += A(k, j);
      M.block((j - 1) * d, (j - 1) * d, d, d) += A(k, i);
      M.block((i - 1) * d, (j - 1) * d, d, d) -= A(k, i);
      M.block((j - 1) * d, (i - 1) * d, d, d) -= A(k, j);
      out[pair_symbol(i, j)] = M;
    }
  return out;
}

const BraidFamily& Tower::level(int k) const {
  if (k < r || k > n) throw std::out_of_range("tower level out of range");
  return levels.at(n - k);
}

long long tower_dimension(int n, int k) {
  long long d = 1;
  for (int j = k; j <= n - 1; ++j) d *= j;
  return d;
}

Tower build_tower(int n, int r, long long max_dim) {
  if (r < 2 || r > n) throw std::invalid_argument("build_tower: need 2 <= r <= n");
  if (tower_dimension(n, r) > max_dim)
    throw std::overflow_error("build_tower: dimension " + std::to_string(tower_dimension(n, r)) + " above limit");
  Tower t;
  t.n = n;
  t.r = r;
  t.levels.push_back(scalar_family(n));
  for (int k = n; k > r; --k) t.levels.push_back(ind_step(t.levels.back()));
  return t;
}

int tuple_coordinate(const IndexTuple& I) {
  int idx = 0;
  for (int p = I.r + 1; p <= I.n(); ++p) idx = idx * (p - 1) + (I.at(p) - 1);
  return idx;
}

IndexTuple coordinate_tuple(int n, int r, int coord) {
  IndexTuple I;
  I.r = r;
  I.idx.assign(n - r, 0);
  for (int p = n; p >= r + 1; --p) {
    I.idx[p - r - 1] = coord % (p - 1) + 1;
    coord /= (p - 1);
  }
  return I;
}

namespace {

std::string pair_name(int i, int j) { return "A" + std::to_string(i) + std::to_string(j); }

template <class M, class Comm>
std::vector<RelationDefect> relations(int k, const M& A, const Comm& comm_norm) {
  std::vector<RelationDefect> out;
  auto push = [&](const std::string& name, double v) { out.push_back({name, v}); };
  // disjoint pairs
  std::vector<std::pair<int, int>> pairs;
  for (int j = 2; j <= k; ++j)
    for (int i = 1; i < j; ++i) pairs.push_back({i, j});
  for (std::size_t s = 0; s < pairs.size(); ++s)
    for (std::size_t t = s + 1; t < pairs.size(); ++t) {
      auto [a, b] = pairs[s];
      auto [c, d] = pairs[t];
      if (a == c || a == d || b == c || b == d) continue;
      push("[" + pair_name(a, b) + "," + pair_name(c, d) + "]", comm_norm(A(a, b), A(c, d), nullptr));
    }
  // triples: [A_ij + A_jk, A_ik] for each choice of the middle vertex j
  for (int c = 3; c <= k; ++c)
    for (int b = 2; b < c; ++b)
      for (int a = 1; a < b; ++a) {
        const int tri[3] = {a, b, c};
        for (int mid = 0; mid < 3; ++mid) {
          int j = tri[mid], i = tri[(mid + 1) % 3], l = tri[(mid + 2) % 3];
          const std::decay_t<decltype(A(i, j))> sum = A(i, j) + A(j, l);
          push("[" + pair_name(std::min(i, j), std::max(i, j)) + "+" + pair_name(std::min(j, l), std::max(j, l)) +
                   "," + pair_name(std::min(i, l), std::max(i, l)) + "]",
               comm_norm(sum, A(i, l), nullptr));
        }
      }
  return out;
}

}  // namespace

std::vector<RelationDefect> pure_braid_defects(const BraidFamily& fam) {
  auto A = [&](int i, int j) -> const IntPolyMatrix& { return fam.A(i, j); };
  auto norm = [](const IntPolyMatrix& x, const IntPolyMatrix& y, void*) {
    IntPolyMatrix c = x * y - y * x;
    return static_cast<double>(c.max_abs_coeff());
  };
  return relations(fam.k, A, norm);
}

std::vector<RelationDefect> pure_braid_defects(const std::vector<Eigen::MatrixXd>& a, int k, double tol) {
  auto A = [&](int i, int j) -> const Eigen::MatrixXd& { return a.at(pair_symbol(i, j)); };
  auto norm = [tol](const Eigen::MatrixXd& x, const Eigen::MatrixXd& y, void*) {
    double v = (x * y - y * x).cwiseAbs().maxCoeff();
    return v > tol ? v : 0.0;
  };
  return relations(k, A, norm);
}

bool is_degree_one_homogeneous(const BraidFamily& fam) {
  for (const auto& m : fam.mats)
    for (int i = 0; i < m.rows(); ++i)
      for (int j = 0; j < m.cols(); ++j)
        for (const auto& [key, c] : m(i, j).terms())
          if (mono::degree(key) != 1) return false;
  return true;
}

Eigen::MatrixXd specialize(const IntPolyMatrix& m, const std::vector<double>& alpha) {
  Eigen::MatrixXd out(m.rows(), m.cols());
  for (int i = 0; i < m.rows(); ++i)
    for (int j = 0; j < m.cols(); ++j) out(i, j) = m(i, j).evaluate<double>(alpha);
  return out;
}

std::vector<Eigen::MatrixXd> specialize(const BraidFamily& fam, const std::vector<double>& alpha) {
  std::vector<Eigen::MatrixXd> out;
  out.reserve(fam.mats.size());
  for (const auto& m : fam.mats) out.push_back(specialize(m, alpha));
  return out;
}

std::vector<double> sample_generic_alpha(int n, std::mt19937_64& rng) {
  std::uniform_int_distribution<int> dist(40, 160);
  std::vector<double> a(symbol_count(n));
  for (auto& v : a) v = dist(rng) / 1000.0;
  return a;
}

long long ascending_factorial(long long a, int b) {
  long long r = 1;
  for (int i = 0; i < b; ++i) r *= a + i;
  return r;
}

double alpha_sum(const std::vector<int>& U, const std::vector<double>& alpha) {
  double s = 0;
  for (std::size_t x = 0; x < U.size(); ++x)
    for (std::size_t y = x + 1; y < U.size(); ++y) s += alpha.at(pair_symbol(U[x], U[y]));
  return s;
}

std::vector<SpectrumEntry> spectrum_formula(const std::vector<int>& S, int k, int n,
                                            const std::vector<double>& alpha, bool reduced) {
  if (S.size() < 2) throw std::invalid_argument("spectrum: |S| must be >= 2");
  const int l = static_cast<int>(S.size()) - 1;
  const int extra = n - k;
  std::vector<SpectrumEntry> out;
  for (std::uint32_t mask = 0; mask < (1u << extra); ++mask) {
    SpectrumEntry e;
    for (int b = 0; b < extra; ++b)
      if (mask & (1u << b)) e.T.push_back(k + 1 + b);
    const int t = static_cast<int>(e.T.size());
    e.multiplicity = ascending_factorial(reduced ? k - l - 1 : k - l, extra - t) * ascending_factorial(l, t);
    std::vector<int> U = S;
    U.insert(U.end(), e.T.begin(), e.T.end());
    e.value = alpha_sum(U, alpha);
    if (e.multiplicity > 0) out.push_back(e);
  }
  return out;
}

Eigen::MatrixXd reduced_basis(int n, int k) {
  Eigen::MatrixXd Q = Eigen::MatrixXd::Ones(1, 1);
  for (int j = n - 1; j >= k; --j) {
    // D_j: j x (j-1), columns e_i - e_{i+1}
    Eigen::MatrixXd D = Eigen::MatrixXd::Zero(j, j - 1);
    for (int i = 0; i + 1 < j; ++i) {
      D(i, i) = 1;
      D(i + 1, i) = -1;
    }
    Eigen::MatrixXd K(D.rows() * Q.rows(), D.cols() * Q.cols());
    for (int a = 0; a < D.rows(); ++a)
      for (int b = 0; b < D.cols(); ++b) K.block(a * Q.rows(), b * Q.cols(), Q.rows(), Q.cols()) = D(a, b) * Q;
    Q = K;
  }
  return Q;
}

IntPolyMatrix subset_sum(const BraidFamily& fam, const std::vector<int>& S) {
  IntPolyMatrix m(fam.dim, fam.dim);
  for (std::size_t x = 0; x < S.size(); ++x)
    for (std::size_t y = x + 1; y < S.size(); ++y) m += fam.A(S[x], S[y]);
  return m;
}

SpectrumReport spectrum(const Tower& tower, const std::vector<int>& S, int k, const std::vector<double>& alpha,
                        bool reduced) {
  for (int v : S)
    if (v < 1 || v > k) throw std::invalid_argument("spectrum: S must lie in [1, k]");
  SpectrumReport rep;
  rep.formula = spectrum_formula(S, k, tower.n, alpha, reduced);
  for (const auto& e : rep.formula)
    for (long long m = 0; m < e.multiplicity; ++m) rep.formula_multiset.push_back(e.value);
  std::sort(rep.formula_multiset.begin(), rep.formula_multiset.end());

  Eigen::MatrixXd A = specialize(subset_sum(tower.level(k), S), alpha);
  if (reduced) {
    Eigen::MatrixXd Q = reduced_basis(tower.n, k);
    Eigen::MatrixXd AQ = A * Q;
    Eigen::MatrixXd M = Q.colPivHouseholderQr().solve(AQ);
    rep.invariance_residual = (AQ - Q * M).cwiseAbs().maxCoeff();
    A = M;
  }
  rep.dimension = A.rows();
  if (static_cast<long long>(rep.formula_multiset.size()) != rep.dimension)
    throw std::logic_error("spectrum: multiplicities do not add up to the dimension");

  Eigen::EigenSolver<Eigen::MatrixXd> es(A, true);
  for (Eigen::Index i = 0; i < A.rows(); ++i) {
    rep.numeric.push_back(es.eigenvalues()(i).real());
    rep.max_imag = std::max(rep.max_imag, std::abs(es.eigenvalues()(i).imag()));
  }
  std::sort(rep.numeric.begin(), rep.numeric.end());
  for (std::size_t i = 0; i < rep.numeric.size(); ++i)
    rep.max_deviation = std::max(rep.max_deviation, std::abs(rep.numeric[i] - rep.formula_multiset[i]));
  rep.max_deviation = std::max(rep.max_deviation, rep.max_imag);

  Eigen::MatrixXcd V = es.eigenvectors();
  for (Eigen::Index c = 0; c < V.cols(); ++c) V.col(c).normalize();
  Eigen::JacobiSVD<Eigen::MatrixXcd> svd(V);
  const auto& sv = svd.singularValues();
  rep.eigvec_condition = sv(sv.size() - 1) > 0 ? sv(0) / sv(sv.size() - 1) : INFINITY;
  return rep;
}

IntPolyMatrix graph_matrix(const OrderedRootedGraph& g, const BraidFamily& fam) {
  IntPolyMatrix m = IntPolyMatrix::identity(fam.dim);
  const auto& e = g.edges();
  for (auto it = e.rbegin(); it != e.rend(); ++it) {
    if (it->q > fam.k) throw std::out_of_range("graph_matrix: edge outside [1, k]");
    m = m * fam.A(it->p, it->q);
  }
  return m;
}

namespace {

AlphaPoly rational_entry(const Poly<long long>& p) { return p.cast<Rational>(); }

// A * v with A polynomial in integers and v over rationals.
std::vector<AlphaPoly> apply_matrix(const IntPolyMatrix& A, const std::vector<AlphaPoly>& v) {
  std::vector<AlphaPoly> out(A.rows());
  for (int i = 0; i < A.rows(); ++i)
    for (int j = 0; j < A.cols(); ++j) {
      if (A(i, j).zero() || v[j].zero()) continue;
      out[i].add_product(rational_entry(A(i, j)), v[j]);
    }
  return out;
}

}  // namespace

std::vector<AlphaPoly> w_vector(const Tower& tower, const std::vector<Rational>& x) {
  const int n = tower.n, r = tower.r;
  if (r >= n) throw std::invalid_argument("w_vector: need r < n");
  if (static_cast<int>(x.size()) < n + 1) throw std::invalid_argument("w_vector: point too short");
  std::vector<AlphaPoly> w(n - 1);
  for (int i = 1; i <= n - 1; ++i) {
    Rational diff = x[n] - x[i];
    if (sgn(diff) == 0) throw std::domain_error("w_vector: coincident coordinates");
    w[i - 1] = AlphaPoly::a(n, i, Rational(1) / diff);
  }
  for (int k = n - 2; k >= r; --k) {
    const BraidFamily& fam = tower.level(k + 1);
    std::vector<AlphaPoly> next;
    next.reserve(static_cast<std::size_t>(k) * w.size());
    for (int i = 1; i <= k; ++i) {
      Rational diff = x[k + 1] - x[i];
      if (sgn(diff) == 0) throw std::domain_error("w_vector: coincident coordinates");
      auto blk = apply_matrix(fam.A(k + 1, i), w);
      for (auto& p : blk) next.push_back(p * (Rational(1) / diff));
    }
    w.swap(next);
  }
  return w;
}

EtaGammaResult eta_gamma_check(const Tower& tower, const IndexTuple& I, const std::vector<Rational>& x) {
  I.validate();
  if (I.r != tower.r || I.n() != tower.n) throw std::invalid_argument("eta_gamma_check: tuple does not match tower");
  EtaGammaResult res;
  res.w_coordinate = w_vector(tower, x).at(tuple_coordinate(I));
  const GraphSum chain = wedge_chain(I);
  for (const auto& [g, c] : chain.terms()) {
    AlphaPoly prod = AlphaPoly::constant(Rational(static_cast<long>(c)) * omega_coefficient<Rational>(g, x));
    for (const auto& e : g.edges()) prod = prod * AlphaPoly::a(e.p, e.q);
    res.eta += prod;
  }
  res.defect = (res.w_coordinate - res.eta).max_abs();
  return res;
}

namespace {

// Edge positions (1-based) along the path p -> q, and its vertices; false if
// p and q lie in different components.
bool tree_path(const OrderedRootedGraph& g, int p, int q, std::vector<int>& t, std::vector<int>& verts) {
  const int n = g.n();
  std::vector<int> parent_edge(n + 1, 0), parent(n + 1, 0);
  std::vector<bool> seen(n + 1, false);
  std::vector<int> stack{p};
  seen[p] = true;
  while (!stack.empty()) {
    int v = stack.back();
    stack.pop_back();
    for (std::size_t i = 0; i < g.edges().size(); ++i) {
      const Edge& e = g.edges()[i];
      if (!e.touches(v)) continue;
      int w = e.other(v);
      if (seen[w]) continue;
      seen[w] = true;
      parent[w] = v;
      parent_edge[w] = static_cast<int>(i) + 1;
      stack.push_back(w);
    }
  }
  if (!seen[q]) return false;
  std::vector<int> rt, rv{q};
  for (int v = q; v != p; v = parent[v]) {
    rt.push_back(parent_edge[v]);
    rv.push_back(parent[v]);
  }
  t.assign(rt.rbegin(), rt.rend());
  verts.assign(rv.rbegin(), rv.rend());
  return true;
}

}  // namespace

ProductLemmaReport product_lemma_check(const Tower& tower, const std::vector<OrderedRootedGraph>& graphs) {
  const int n = tower.n;
  const BraidFamily& fam = tower.level(n - 1);
  ProductLemmaReport rep;
  for (const auto& g : graphs) {
    if (g.n() != n - 1) throw std::invalid_argument("product_lemma_check: graph must live on [n-1]");
    const IntPolyMatrix Ag = graph_matrix(g, fam);
    const int l = static_cast<int>(g.edges().size());
    for (int p = 1; p <= n - 1; ++p) {
      // column p of A_Gamma times a_np
      for (int q = 1; q <= n - 1; ++q) {
        ++rep.cases;
        Poly<long long> lhs = Ag(q - 1, p - 1) * Poly<long long>::a(n, p);
        std::vector<int> t, verts;
        bool connected = tree_path(g, p, q, t, verts);
        bool increasing = connected && std::is_sorted(t.begin(), t.end()) &&
                          std::adjacent_find(t.begin(), t.end()) == t.end();
        Poly<long long> rhs;
        if (increasing) {
          ++rep.nonzero_cases;
          rhs = Poly<long long>::a(n, p);
          std::vector<int> bounds{0};
          bounds.insert(bounds.end(), t.begin(), t.end());
          bounds.push_back(l + 1);
          for (std::size_t j = 0; j + 1 < bounds.size(); ++j) {
            const int kj = verts[j];
            if (j > 0) rhs = rhs * Poly<long long>::a(n, kj, -1);
            for (int i = bounds[j] + 1; i < bounds[j + 1]; ++i) {
              const Edge& e = g.edges()[i - 1];
              Poly<long long> b = Poly<long long>::a(e.p, e.q);
              if (e.touches(kj)) b += Poly<long long>::a(n, e.other(kj));
              rhs = rhs * b;
            }
          }
        }
        if (lhs != rhs) ++rep.mismatches;
      }
    }
  }
  return rep;
}

}  // namespace smz
