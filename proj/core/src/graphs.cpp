#include "smz/graphs.hpp"

#include <algorithm>
#include <bit>
#include <numeric>
#include <sstream>

namespace smz {

OrderedRootedGraph::OrderedRootedGraph(int n, int r, std::vector<Edge> edges)
    : n_(n), r_(r), edges_(std::move(edges)) {
  if (r < 1 || r > n) throw std::invalid_argument("graph needs 1 <= r <= n");
  for (const auto& e : edges_)
    if (e.p < 1 || e.q > n || e.p == e.q) throw std::invalid_argument("edge out of range");
}

int OrderedRootedGraph::degree(int v) const {
  int d = 0;
  for (const auto& e : edges_) d += e.touches(v);
  return d;
}

OrderedRootedGraph OrderedRootedGraph::parse(const std::string& s) {
  auto bar = s.find('|');
  if (bar == std::string::npos) throw std::invalid_argument("graph spec needs 'n r | edges': " + s);
  std::istringstream head(s.substr(0, bar));
  int n = 0, r = 0;
  if (!(head >> n >> r)) throw std::invalid_argument("graph spec needs 'n r' before '|': " + s);
  std::vector<Edge> edges;
  std::string rest = s.substr(bar + 1);
  for (auto& ch : rest)
    if (ch == '(' || ch == ')' || ch == ',') ch = ' ';
  std::istringstream body(rest);
  int a, b;
  while (body >> a) {
    if (!(body >> b)) throw std::invalid_argument("odd number of edge endpoints: " + s);
    edges.emplace_back(a, b);
  }
  return OrderedRootedGraph(n, r, edges);
}

std::string OrderedRootedGraph::str() const {
  std::ostringstream os;
  os << n_ << " " << r_ << " |";
  for (const auto& e : edges_) os << " (" << e.p << "," << e.q << ")";
  return os.str();
}

void GraphSum::add(const OrderedRootedGraph& g, long long c) {
  if (c == 0) return;
  auto& v = terms_[g];
  v += c;
  if (v == 0) terms_.erase(g);
}

GraphSum& GraphSum::operator+=(const GraphSum& o) {
  for (const auto& [g, c] : o.terms_) add(g, c);
  return *this;
}

GraphSum& GraphSum::operator-=(const GraphSum& o) {
  for (const auto& [g, c] : o.terms_) add(g, -c);
  return *this;
}

long long GraphSum::coeff(const OrderedRootedGraph& g) const {
  auto it = terms_.find(g);
  return it == terms_.end() ? 0 : it->second;
}

std::string GraphSum::str() const {
  if (terms_.empty()) return "0";
  std::ostringstream os;
  bool first = true;
  for (const auto& [g, c] : terms_) {
    if (!first) os << "\n";
    os << c << " " << g.str();
    first = false;
  }
  return os.str();
}

void IndexTuple::validate() const {
  if (r < 1) throw std::invalid_argument("index tuple needs r >= 1");
  for (std::size_t j = 0; j < idx.size(); ++j) {
    int p = r + 1 + static_cast<int>(j);
    if (idx[j] < 1 || idx[j] > p - 1)
      throw std::invalid_argument("index i_" + std::to_string(p) + " out of range [1," + std::to_string(p - 1) + "]");
  }
}

std::string IndexTuple::str() const {
  std::ostringstream os;
  os << "r=" << r << " (";
  for (std::size_t j = 0; j < idx.size(); ++j) os << (j ? "," : "") << idx[j];
  os << ")";
  return os.str();
}

std::vector<IndexTuple> all_index_tuples(int n, int r) {
  std::vector<IndexTuple> out;
  IndexTuple cur{r, std::vector<int>(n - r, 1)};
  if (n <= r) return {IndexTuple{r, {}}};
  while (true) {
    out.push_back(cur);
    int j = n - r - 1;
    while (j >= 0) {
      int p = r + 1 + j;
      if (cur.idx[j] < p - 1) {
        ++cur.idx[j];
        break;
      }
      cur.idx[j] = 1;
      --j;
    }
    if (j < 0) break;
  }
  return out;
}

GraphSum empty_graph(int r) { return GraphSum(OrderedRootedGraph(r, r)); }

GraphSum wedge(const GraphSum& gamma, int i) {
  GraphSum out;
  for (const auto& [g, c] : gamma.terms()) {
    const int n = g.n();
    if (i < 1 || i > n) throw std::invalid_argument("wedge vertex out of range");
    std::vector<int> adj;
    for (int e = 0; e < static_cast<int>(g.edges().size()); ++e)
      if (g.edges()[e].touches(i)) adj.push_back(e);
    const int m = static_cast<int>(adj.size());
    for (std::uint32_t mask = 0; mask < (1u << m); ++mask) {
      std::vector<Edge> edges = g.edges();
      for (int b = 0; b < m; ++b)
        if (mask & (1u << b)) {
          Edge& e = edges[adj[b]];
          e = Edge(e.other(i), n + 1);
        }
      edges.emplace_back(i, n + 1);
      out.add(OrderedRootedGraph(n + 1, g.r(), edges), c);
    }
  }
  return out;
}

GraphSum wedge_chain(const IndexTuple& I) {
  I.validate();
  GraphSum g = empty_graph(I.r);
  for (int v : I.idx) g = wedge(g, v);
  return g;
}

namespace {
// vertices on the path from v up to its root in P_I (including v and the root)
std::vector<int> ancestors(const IndexTuple& I, int v) {
  std::vector<int> chain{v};
  while (v > I.r) {
    v = I.at(v);
    chain.push_back(v);
  }
  return chain;
}
}  // namespace

std::optional<int> principal_min_edge(const IndexTuple& I, int p, int q) {
  const int n = I.n();
  if (p < 1 || q < 1 || p > n || q > n) throw std::invalid_argument("vertex out of range");
  if (p == q) return std::nullopt;
  auto ap = ancestors(I, p), aq = ancestors(I, q);
  if (ap.back() != aq.back()) return std::nullopt;
  // strip the common tail; the remaining vertices label the path edges
  while (ap.size() >= 2 && aq.size() >= 2 && ap[ap.size() - 2] == aq[aq.size() - 2]) {
    ap.pop_back();
    aq.pop_back();
  }
  int best = n + 1;
  for (std::size_t j = 0; j + 1 < ap.size(); ++j) best = std::min(best, ap[j]);
  for (std::size_t j = 0; j + 1 < aq.size(); ++j) best = std::min(best, aq[j]);
  return best;
}

GraphSum principal_product(const IndexTuple& I) {
  I.validate();
  const int n = I.n(), r = I.r;
  std::vector<std::vector<Edge>> factors(n - r);
  for (int p = 1; p <= n; ++p)
    for (int q = p + 1; q <= n; ++q) {
      auto m = principal_min_edge(I, p, q);
      if (m) factors[*m - r - 1].emplace_back(p, q);
    }
  GraphSum out;
  std::vector<Edge> cur(n - r);
  std::vector<std::size_t> pick(n - r, 0);
  for (const auto& f : factors)
    if (f.empty()) return out;
  while (true) {
    for (int j = 0; j < n - r; ++j) cur[j] = factors[j][pick[j]];
    out.add(OrderedRootedGraph(n, r, cur), 1);
    int j = n - r - 1;
    while (j >= 0 && ++pick[j] == factors[j].size()) pick[j--] = 0;
    if (j < 0) break;
  }
  return out;
}

bool is_tree(const OrderedRootedGraph& g) {
  const int n = g.n();
  std::vector<int> parent(n + 1);
  std::iota(parent.begin(), parent.end(), 0);
  auto find = [&](int v) {
    while (parent[v] != v) v = parent[v] = parent[parent[v]];
    return v;
  };
  for (const auto& e : g.edges()) {
    int a = find(e.p), b = find(e.q);
    if (a == b) return false;
    parent[a] = b;
  }
  std::vector<int> roots_in(n + 1, 0);
  for (int v = 1; v <= g.r(); ++v) ++roots_in[find(v)];
  for (int v = 1; v <= n; ++v)
    if (find(v) == v && roots_in[v] != 1) return false;
  return true;
}

template <class T>
T determinant(std::vector<std::vector<T>> m) {
  const std::size_t n = m.size();
  T det(1);
  for (std::size_t c = 0; c < n; ++c) {
    std::size_t piv = n;
    if constexpr (std::is_same_v<T, Rational>) {
      for (std::size_t r = c; r < n; ++r)
        if (sgn(m[r][c]) != 0) {
          piv = r;
          break;
        }
    } else {
      double best = 0;
      for (std::size_t r = c; r < n; ++r)
        if (magnitude(m[r][c]) > best) {
          best = magnitude(m[r][c]);
          piv = r;
        }
    }
    if (piv == n) return T(0);
    if (piv != c) {
      std::swap(m[piv], m[c]);
      det = -det;
    }
    det *= m[c][c];
    for (std::size_t r = c + 1; r < n; ++r) {
      if (is_zero(m[r][c])) continue;
      T f = m[r][c] / m[c][c];
      for (std::size_t k = c; k < n; ++k) m[r][k] -= f * m[c][k];
    }
  }
  return det;
}

template double determinant<double>(std::vector<std::vector<double>>);
template Rational determinant<Rational>(std::vector<std::vector<Rational>>);

namespace {
int free_count(const OrderedRootedGraph& g) { return g.n() - g.r(); }

void check_degree(const OrderedRootedGraph& g) {
  if (static_cast<int>(g.edges().size()) != free_count(g))
    throw std::invalid_argument("form degree " + std::to_string(g.edges().size()) + " does not match n-r = " +
                                std::to_string(free_count(g)));
}
}  // namespace

template <class T>
T omega_coefficient(const OrderedRootedGraph& g, const std::vector<T>& x) {
  check_degree(g);
  const int l = static_cast<int>(g.edges().size());
  if (static_cast<int>(x.size()) < g.n() + 1) throw std::invalid_argument("point has too few coordinates");
  if (l == 0) return T(1);
  std::vector<std::vector<T>> m(l, std::vector<T>(l, T(0)));
  for (int a = 0; a < l; ++a) {
    const Edge& e = g.edges()[l - 1 - a];
    T inv = T(1) / (x[e.p] - x[e.q]);
    for (int b = 0; b < l; ++b) {
      int v = g.n() - b;
      if (v == e.p) m[a][b] += inv;
      if (v == e.q) m[a][b] -= inv;
    }
  }
  return determinant(std::move(m));
}

template double omega_coefficient<double>(const OrderedRootedGraph&, const std::vector<double>&);
template Rational omega_coefficient<Rational>(const OrderedRootedGraph&, const std::vector<Rational>&);

int incidence_determinant(const OrderedRootedGraph& g) {
  check_degree(g);
  const int l = static_cast<int>(g.edges().size());
  if (l == 0) return 1;
  std::vector<std::vector<Rational>> m(l, std::vector<Rational>(l, Rational(0)));
  for (int a = 0; a < l; ++a) {
    const Edge& e = g.edges()[l - 1 - a];
    for (int b = 0; b < l; ++b) {
      int v = g.n() - b;
      if (v == e.p) m[a][b] += 1;
      if (v == e.q) m[a][b] -= 1;
    }
  }
  Rational d = determinant(std::move(m));
  return static_cast<int>(d.get_num().get_si());
}

template <class T>
T residue_coefficient(const OrderedRootedGraph& g, int k, const std::vector<T>& x) {
  check_degree(g);
  const int n = g.n(), l = static_cast<int>(g.edges().size());
  const Edge target(k, n);
  int hits = 0;
  for (const auto& e : g.edges()) hits += e == target;
  if (hits != 1) throw std::invalid_argument("residue needs exactly one edge (n,k)");
  std::vector<T> y = x;
  y[n] = x[k];
  std::vector<std::vector<T>> m(l, std::vector<T>(l, T(0)));
  for (int a = 0; a < l; ++a) {
    const Edge& e = g.edges()[l - 1 - a];
    if (e == target) {
      for (int b = 0; b < l; ++b) {
        int v = n - b;
        if (v == n) m[a][b] += T(1);
        if (v == k) m[a][b] -= T(1);
      }
      continue;
    }
    T inv = T(1) / (y[e.p] - y[e.q]);
    for (int b = 0; b < l; ++b) {
      int v = n - b;
      // after x_n = x_k the differential dx_n of other edges is read as dx_k
      int pv = e.p == n ? k : e.p, qv = e.q == n ? k : e.q;
      if (v == pv) m[a][b] += inv;
      if (v == qv) m[a][b] -= inv;
    }
  }
  return determinant(std::move(m));
}

template double residue_coefficient<double>(const OrderedRootedGraph&, int, const std::vector<double>&);
template Rational residue_coefficient<Rational>(const OrderedRootedGraph&, int, const std::vector<Rational>&);

GraphSum residue_expand(const OrderedRootedGraph& g, const IndexTuple& I, int k) {
  const int n = g.n(), r = g.r();
  if (I.n() != n || I.r != r) throw std::invalid_argument("index tuple does not match graph");
  if (static_cast<int>(g.edges().size()) != n - r) throw std::invalid_argument("graph is not in a wedge-chain support");
  const Edge target(k, n);
  auto pos_of = [&](const Edge& e) {
    for (int j = 0; j < n - r; ++j)
      if (g.edges()[j] == e) return r + 1 + j;
    return -1;
  };
  if (pos_of(target) < 0) throw std::invalid_argument("edge (n,k) not in graph");

  auto min_label = [&](int v) {
    auto m = principal_min_edge(I, n, v);
    if (!m) throw std::invalid_argument("graph not in the support of the wedge chain");
    return *m;
  };
  const int mk = min_label(k);
  std::vector<int> plus;  // R_+
  for (const auto& e : g.edges())
    if (e.touches(n)) {
      int v = e.other(n);
      if (min_label(v) >= mk) plus.push_back(v);
    }
  std::sort(plus.begin(), plus.end(), [&](int a, int b) { return min_label(a) > min_label(b); });
  const int s = static_cast<int>(plus.size());
  if (plus.front() != I.at(n) || plus.back() != k) throw std::logic_error("unexpected ordering of R_+");
  std::vector<int> t(s);
  for (int i = 0; i < s; ++i) {
    t[i] = pos_of(Edge(n, plus[i]));
    if (t[i] != min_label(plus[i])) throw std::invalid_argument("graph not in the support of the wedge chain");
  }

  GraphSum out;
  const int inner = std::max(0, s - 2);  // k_2 .. k_{s-1}
  for (std::uint32_t mask = 0; mask < (1u << inner); ++mask) {
    std::vector<Edge> edges;
    edges.reserve(n - r - 1);
    for (int j = r + 1; j <= n - 1; ++j) {
      int which = -1;
      for (int i = 1; i < s; ++i)
        if (t[i] == j) which = i;
      if (which >= 1) {
        // m(p, i): the nearest earlier member of p + {k_1}
        int m = 0;
        for (int jj = which - 1; jj >= 1; --jj)
          if (mask & (1u << (jj - 1))) {
            m = jj;
            break;
          }
        edges.emplace_back(plus[which], plus[m]);
      } else {
        Edge e = g.edges()[j - r - 1];
        int a = e.p == n ? k : e.p, b = e.q == n ? k : e.q;
        edges.emplace_back(a, b);
      }
    }
    long long sign = (s == 1) ? 1 : ((std::popcount(mask) % 2 == 0) ? -1 : 1);
    out.add(OrderedRootedGraph(n - 1, r, edges), sign);
  }
  return out;
}

GraphSum parse_graph_sum(const std::string& text) {
  GraphSum out;
  std::istringstream in(text);
  std::string line;
  while (std::getline(in, line)) {
    auto hash = line.find('#');
    if (hash != std::string::npos) line = line.substr(0, hash);
    if (line.find('|') == std::string::npos) continue;
    std::istringstream head(line.substr(0, line.find('|')));
    std::vector<long long> nums;
    long long v;
    while (head >> v) nums.push_back(v);
    long long coef = 1;
    std::string spec = line;
    if (nums.size() == 3) {
      coef = nums[0];
      auto first_digit = line.find_first_of("-0123456789");
      auto after = line.find_first_of(" \t", first_digit);
      spec = line.substr(after);
    } else if (nums.size() != 2) {
      throw std::invalid_argument("bad graph line: " + line);
    }
    out.add(OrderedRootedGraph::parse(spec), coef);
  }
  return out;
}

}  // namespace smz
