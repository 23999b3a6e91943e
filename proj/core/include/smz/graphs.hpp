#ifndef SMZ_GRAPHS_HPP
#define SMZ_GRAPHS_HPP

// Ordered rooted graphs on [n] with roots [r], the wedge operation, principal
// graphs and the logarithmic forms omega_G = omega_{e_l} ^ ... ^ omega_{e_1},
// omega_{(p,q)} = dlog(x_p - x_q).

#include "smz/rational.hpp"

#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace smz {

struct Edge {
  int p = 0, q = 0;  // p < q
  Edge() = default;
  Edge(int a, int b) : p(a < b ? a : b), q(a < b ? b : a) {}
  bool touches(int v) const { return p == v || q == v; }
  int other(int v) const { return p == v ? q : p; }
  friend bool operator==(const Edge& a, const Edge& b) { return a.p == b.p && a.q == b.q; }
  friend bool operator<(const Edge& a, const Edge& b) { return a.p != b.p ? a.p < b.p : a.q < b.q; }
};

class OrderedRootedGraph {
 public:
  OrderedRootedGraph() = default;
  OrderedRootedGraph(int n, int r, std::vector<Edge> edges = {});

  int n() const { return n_; }
  int r() const { return r_; }
  const std::vector<Edge>& edges() const { return edges_; }
  int degree(int v) const;

  static OrderedRootedGraph parse(const std::string& s);  // "n r | (p,q) (p,q) ..."
  std::string str() const;

  friend bool operator==(const OrderedRootedGraph& a, const OrderedRootedGraph& b) {
    return a.n_ == b.n_ && a.r_ == b.r_ && a.edges_ == b.edges_;
  }
  friend bool operator<(const OrderedRootedGraph& a, const OrderedRootedGraph& b) {
    if (a.n_ != b.n_) return a.n_ < b.n_;
    if (a.r_ != b.r_) return a.r_ < b.r_;
    return a.edges_ < b.edges_;
  }

 private:
  int n_ = 0, r_ = 0;
  std::vector<Edge> edges_;
};

// Integer combination of ordered graphs; zero coefficients are never stored.
class GraphSum {
 public:
  GraphSum() = default;
  explicit GraphSum(const OrderedRootedGraph& g, long long c = 1) { add(g, c); }

  void add(const OrderedRootedGraph& g, long long c);
  GraphSum& operator+=(const GraphSum& o);
  GraphSum& operator-=(const GraphSum& o);
  friend GraphSum operator+(GraphSum a, const GraphSum& b) { return a += b; }
  friend GraphSum operator-(GraphSum a, const GraphSum& b) { return a -= b; }
  friend bool operator==(const GraphSum& a, const GraphSum& b) { return a.terms_ == b.terms_; }

  const std::map<OrderedRootedGraph, long long>& terms() const& { return terms_; }
  // forbids iterating over the terms of a temporary
  const std::map<OrderedRootedGraph, long long>& terms() && = delete;
  std::size_t size() const { return terms_.size(); }
  bool empty() const { return terms_.empty(); }
  long long coeff(const OrderedRootedGraph& g) const;
  std::string str() const;

 private:
  std::map<OrderedRootedGraph, long long> terms_;
};

// (i_{r+1}, ..., i_n) with 1 <= i_p <= p-1.
struct IndexTuple {
  int r = 2;
  std::vector<int> idx;
  int n() const { return r + static_cast<int>(idx.size()); }
  int at(int p) const { return idx.at(p - r - 1); }  // i_p
  void validate() const;
  std::string str() const;
  friend bool operator<(const IndexTuple& a, const IndexTuple& b) {
    return a.r != b.r ? a.r < b.r : a.idx < b.idx;
  }
  friend bool operator==(const IndexTuple& a, const IndexTuple& b) { return a.r == b.r && a.idx == b.idx; }
};

std::vector<IndexTuple> all_index_tuples(int n, int r);

GraphSum empty_graph(int r);
GraphSum wedge(const GraphSum& gamma, int i);
GraphSum wedge_chain(const IndexTuple& I);

// Principal graph P_I: edges (p, i_p) ordered by p. The minimal edge on the
// path between p and q is reported by its label (the larger endpoint of that
// edge); std::nullopt when p and q lie in different components or coincide.
std::optional<int> principal_min_edge(const IndexTuple& I, int p, int q);
GraphSum principal_product(const IndexTuple& I);

bool is_tree(const OrderedRootedGraph& g);

// Coefficient of dx_n ^ ... ^ dx_{r+1} in omega_G at the point x (1-based, x[0] unused).
template <class T>
T omega_coefficient(const OrderedRootedGraph& g, const std::vector<T>& x);

// Determinant of the signed incidence matrix (rows e_l..e_1, columns n..r+1);
// omega_coefficient = incidence_determinant / prod_e (x_p - x_q).
int incidence_determinant(const OrderedRootedGraph& g);

template <class T>
T determinant(std::vector<std::vector<T>> m);

// Residue of omega_G along x_n -> x_k for G in the support of the wedge chain
// of I: a signed sum of graphs on [n-1].
GraphSum residue_expand(const OrderedRootedGraph& g, const IndexTuple& I, int k);

// lim_{x_n -> x_k} (x_n - x_k) * omega_coefficient(g, x), exact.
template <class T>
T residue_coefficient(const OrderedRootedGraph& g, int k, const std::vector<T>& x);

// Parse a graph-sum file: lines "[coef] n r | (p,q) ...", '#' comments.
GraphSum parse_graph_sum(const std::string& text);

}  // namespace smz

#endif
