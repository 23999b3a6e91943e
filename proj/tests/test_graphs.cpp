#include "smz/graphs.hpp"

#include <Eigen/Dense>
#include <gtest/gtest.h>

#include <algorithm>
#include <cmath>
#include <functional>
#include <numeric>
#include <random>

using namespace smz;

namespace {

// Roots collapsed into one vertex; omega_G is nonzero iff the edges then form a spanning tree.
bool spanning_after_contraction(const OrderedRootedGraph& g) {
  std::vector<int> parent(g.n() + 1);
  std::iota(parent.begin(), parent.end(), 0);
  auto rep = [&](int v) { return v <= g.r() ? 1 : v; };
  std::function<int(int)> find = [&](int v) { return parent[v] == v ? v : parent[v] = find(parent[v]); };
  for (const auto& e : g.edges()) {
    int a = find(rep(e.p)), b = find(rep(e.q));
    if (a == b) return false;
    parent[a] = b;
  }
  return static_cast<int>(g.edges().size()) == g.n() - g.r();
}

std::vector<double> sample_point(int n, std::mt19937_64& rng) {
  std::uniform_real_distribution<double> u(0.05, 0.95);
  std::vector<double> x(n + 1, 0.0);
  for (int i = 1; i <= n; ++i) x[i] = u(rng);
  return x;
}

// d(log|x_p - x_q|) stacked as rows e_l..e_1 against columns x_n..x_{r+1}, by central differences.
double jacobian_oracle(const OrderedRootedGraph& g, const std::vector<double>& x) {
  const int l = static_cast<int>(g.edges().size());
  Eigen::MatrixXd J(l, l);
  const double h = 1e-6;
  for (int a = 0; a < l; ++a) {
    const Edge& e = g.edges()[l - 1 - a];
    for (int b = 0; b < l; ++b) {
      const int v = g.n() - b;
      auto f = [&](double dv) {
        std::vector<double> y = x;
        y[v] += dv;
        return std::log(std::abs(y[e.p] - y[e.q]));
      };
      J(a, b) = (f(h) - f(-h)) / (2 * h);
    }
  }
  return J.determinant();
}

std::vector<OrderedRootedGraph> all_graphs(int n, int r) {
  std::vector<Edge> pairs;
  for (int q = 2; q <= n; ++q)
    for (int p = 1; p < q; ++p) pairs.emplace_back(p, q);
  const int l = n - r, m = static_cast<int>(pairs.size());
  std::vector<OrderedRootedGraph> out;
  std::vector<int> pick(l);
  std::function<void(int, int)> rec = [&](int pos, int start) {
    if (pos == l) {
      std::vector<Edge> e;
      for (int i : pick) e.push_back(pairs[i]);
      out.emplace_back(n, r, e);
      return;
    }
    for (int i = start; i < m; ++i) {
      pick[pos] = i;
      rec(pos + 1, i + 1);
    }
  };
  rec(0, 0);
  return out;
}

}  // namespace

TEST(Graph, ParseAndPrint) {
  auto g = OrderedRootedGraph::parse("4 2 | (1,3) (3,4)");
  EXPECT_EQ(g.n(), 4);
  EXPECT_EQ(g.r(), 2);
  ASSERT_EQ(g.edges().size(), 2u);
  EXPECT_EQ(g.edges()[1], Edge(3, 4));
  EXPECT_EQ(OrderedRootedGraph::parse(g.str()), g);
  EXPECT_EQ(g.degree(3), 2);
  // endpoints are normalised
  EXPECT_EQ(OrderedRootedGraph::parse("3 2 | (3,2)").edges()[0], Edge(2, 3));
  EXPECT_THROW(OrderedRootedGraph::parse("3 2 | (1,4)"), std::exception);
}

TEST(GraphSum, ParseFileFormat) {
  GraphSum s = parse_graph_sum("# comment\n2 3 2 | (1,3)\n-1 3 2 | (2,3)\n3 2 | (1,3)\n");
  EXPECT_EQ(s.coeff(OrderedRootedGraph::parse("3 2 | (1,3)")), 3);
  EXPECT_EQ(s.coeff(OrderedRootedGraph::parse("3 2 | (2,3)")), -1);
  GraphSum z = s - s;
  EXPECT_TRUE(z.empty());
}

TEST(IndexTuples, CountIsFactorialRatio) {
  // (r)(r+1)...(n-1) tuples
  for (int r = 2; r <= 3; ++r)
    for (int n = r; n <= 6; ++n) {
      std::size_t expect = 1;
      for (int p = r + 1; p <= n; ++p) expect *= p - 1;
      EXPECT_EQ(all_index_tuples(n, r).size(), expect);
    }
  IndexTuple bad{2, {3}};
  EXPECT_THROW(bad.validate(), std::exception);
}

TEST(Wedge, SingleSteps) {
  GraphSum g = wedge(empty_graph(2), 1);
  EXPECT_EQ(g.str(), GraphSum(OrderedRootedGraph::parse("3 2 | (1,3)")).str());
  // wedging at 3 reroutes (1,3) or keeps it
  GraphSum h = wedge(g, 3);
  EXPECT_EQ(h.size(), 2u);
  EXPECT_EQ(h.coeff(OrderedRootedGraph::parse("4 2 | (1,3) (3,4)")), 1);
  EXPECT_EQ(h.coeff(OrderedRootedGraph::parse("4 2 | (1,4) (3,4)")), 1);
}

TEST(Wedge, ChainTermsAreSpanningTreesWithUnitCoefficients) {
  for (int r = 2; r <= 3; ++r)
    for (int n = r + 1; n <= 6; ++n)
      for (const auto& I : all_index_tuples(n, r)) {
        GraphSum s = wedge_chain(I);
        for (const auto& [g, c] : s.terms()) {
          ASSERT_EQ(c, 1) << I.str();
          ASSERT_TRUE(is_tree(g)) << g.str();
          ASSERT_TRUE(spanning_after_contraction(g)) << g.str();
        }
        EXPECT_FALSE(s.empty());
      }
}

TEST(Wedge, ChainEqualsPrincipalProduct) {
  for (int r = 2; r <= 3; ++r)
    for (int n = r; n <= 6; ++n)
      for (const auto& I : all_index_tuples(n, r)) EXPECT_TRUE(wedge_chain(I) == principal_product(I)) << I.str();
}

TEST(PrincipalGraph, MinimalEdge) {
  IndexTuple I{2, {1, 3, 3}};  // edges (3,1) (4,3) (5,3)
  EXPECT_EQ(principal_min_edge(I, 4, 5), 4);
  EXPECT_EQ(principal_min_edge(I, 1, 5), 3);
  EXPECT_EQ(principal_min_edge(I, 2, 5), std::nullopt);
  EXPECT_EQ(principal_min_edge(I, 4, 4), std::nullopt);
}

TEST(Omega, NonzeroIffSpanningTree) {
  std::mt19937_64 rng(3);
  for (int n = 3; n <= 5; ++n)
    for (const auto& g : all_graphs(n, 2)) {
      auto x = sample_point(n, rng);
      const bool tree = spanning_after_contraction(g);
      EXPECT_EQ(incidence_determinant(g) != 0, tree) << g.str();
      EXPECT_EQ(std::abs(omega_coefficient(g, x)) > 1e-12, tree) << g.str();
      if (tree) {
        EXPECT_EQ(std::abs(incidence_determinant(g)), 1) << g.str();
      }
    }
}

TEST(Omega, MatchesNumericJacobian) {
  std::mt19937_64 rng(4);
  for (int n = 3; n <= 5; ++n)
    for (const auto& g : all_graphs(n, 2)) {
      auto x = sample_point(n, rng);
      const double w = omega_coefficient(g, x), j = jacobian_oracle(g, x);
      EXPECT_NEAR(w, j, 1e-5 * std::max(1.0, std::abs(w))) << g.str();
    }
}

TEST(Omega, RationalAndDoubleAgree) {
  std::vector<Rational> xr = {0, ratio<Rational>(3, 7), 1, ratio<Rational>(1, 5), ratio<Rational>(2, 3)};
  std::vector<double> xd;
  for (const auto& v : xr) xd.push_back(v.get_d());
  for (const auto& g : all_graphs(4, 2))
    EXPECT_NEAR(omega_coefficient<Rational>(g, xr).get_d(), omega_coefficient<double>(g, xd), 1e-12);
}

TEST(Omega, EdgeOrderGivesSign) {
  std::vector<double> x = {0, 0.0, 1.0, 0.6, 0.3};
  auto g = OrderedRootedGraph::parse("4 2 | (1,3) (3,4)");
  auto h = OrderedRootedGraph::parse("4 2 | (3,4) (1,3)");
  EXPECT_NEAR(omega_coefficient(g, x), -omega_coefficient(h, x), 1e-14);
  // dlog(x_3 - x_1) alone at n = 3 is dx_3 / x_3
  std::vector<double> y = {0, 0.0, 1.0, 0.25};
  EXPECT_NEAR(omega_coefficient(OrderedRootedGraph::parse("3 2 | (1,3)"), y), 4.0, 1e-14);
  EXPECT_THROW(omega_coefficient(OrderedRootedGraph::parse("4 2 | (1,3)"), x), std::invalid_argument);
}

TEST(Residue, CoefficientIsTheLimit) {
  std::mt19937_64 rng(5);
  for (int n = 3; n <= 5; ++n)
    for (const auto& I : all_index_tuples(n, 2)) {
      const GraphSum chain = wedge_chain(I);
      for (const auto& [g, c] : chain.terms())
        for (const auto& e : g.edges()) {
          if (e.q != n) continue;
          auto x = sample_point(n, rng);
          const double exact = residue_coefficient<double>(g, e.p, x);
          // (x_n - x_k) omega(x) is smooth in x_n, so a symmetric average cancels the
          // linear term; the step is scaled to the closest pair of points
          double gap = 1;
          for (int i = 1; i < n; ++i)
            for (int j = i + 1; j < n; ++j) gap = std::min(gap, std::abs(x[i] - x[j]));
          const double h = 1e-4 * gap;
          auto f = [&](double d) {
            auto y = x;
            y[n] = x[e.p] + d;
            return d * omega_coefficient(g, y);
          };
          const double approx = 0.5 * (f(h) + f(-h));
          EXPECT_NEAR(approx, exact, 1e-6 * std::max(1.0, std::abs(exact))) << g.str();
        }
    }
}

TEST(Residue, ExpansionMatchesExactly) {
  std::mt19937_64 rng(6);
  std::uniform_int_distribution<int> pick(1, 96);
  for (int n = 4; n <= 5; ++n)
    for (const auto& I : all_index_tuples(n, 2)) {
      const GraphSum chain = wedge_chain(I);
      for (const auto& [g, c] : chain.terms())
        for (const auto& e : g.edges()) {
          if (e.q != n) continue;
          std::vector<Rational> x(n + 1, Rational(0));
          std::vector<int> used;
          for (int i = 1; i <= n; ++i) {
            int v;
            do v = pick(rng);
            while (std::find(used.begin(), used.end(), v) != used.end());
            used.push_back(v);
            x[i] = ratio<Rational>(v, 97);
          }
          GraphSum res = residue_expand(g, I, e.p);
          std::vector<Rational> xr(x.begin(), x.end() - 1);
          Rational rhs(0);
          for (const auto& [h, hc] : res.terms()) rhs += Rational(static_cast<long>(hc)) * omega_coefficient<Rational>(h, xr);
          EXPECT_EQ(residue_coefficient<Rational>(g, e.p, x), rhs) << g.str() << " k=" << e.p;
        }
    }
}

TEST(Determinant, SmallMatrices) {
  std::vector<std::vector<Rational>> m = {{2, 1}, {1, 1}};
  EXPECT_EQ(determinant(m), 1);
  std::vector<std::vector<double>> z = {{0, 1, 0}, {1, 0, 0}, {0, 0, 3}};
  EXPECT_NEAR(determinant(z), -3.0, 1e-15);
}
