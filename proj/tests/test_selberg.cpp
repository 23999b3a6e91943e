#include "smz/selberg.hpp"

#include "smz/braid.hpp"
#include "smz/mzv.hpp"

#include <gtest/gtest.h>

#include <cmath>
#include <complex>
#include <numbers>
#include <random>

using namespace smz;

namespace {

// Lanczos approximation (g = 7, 9 terms), valid for Re z >= 1/2.
std::complex<double> log_gamma(std::complex<double> z) {
  static const double c[9] = {0.99999999999980993,  676.5203681218851,     -1259.1392167224028,
                              771.32342877765313,   -176.61502916214059,   12.507343278686905,
                              -0.13857109526572012, 9.9843695780195716e-6, 1.5056327351493116e-7};
  z -= 1.0;
  std::complex<double> s = c[0];
  for (int i = 1; i < 9; ++i) s += c[i] / (z + double(i));
  const std::complex<double> t = z + 7.5;
  return 0.5 * std::log(2 * std::numbers::pi) + (z + 0.5) * std::log(t) - t + std::log(s);
}

double gamma_ratio(double a, double b) { return std::tgamma(1 + a) * std::tgamma(1 + b) / std::tgamma(1 + a + b); }

ExponentAssignment beta_exponents(double a13, double a23) {
  ExponentAssignment e(3);
  e.set(1, 3, a13);
  e.set(2, 3, a23);
  return e;
}

// a12, a13, a23, a14, a24, a34
const std::vector<double> frozen_alpha = {0.1, 0.3, 0.2, 0.25, 0.15, 0.35};

// Frozen from 30-digit evaluations: the first reduces to a 1-D integral of a
// Gauss hypergeometric function, the second to a 1-D integral after
// x = 1 - s^(1/a23).
constexpr double frozen_S1 = 0.251242269769343294699592394371;  // 4 2 | (1,3) (1,4)
constexpr double frozen_S2 = 0.57757406375916370643951340061;   // 4 2 | (2,3) (3,4)

}  // namespace

TEST(Exponents, PairOrderAndSymmetry) {
  auto a = exponents_from_list(4, frozen_alpha);
  EXPECT_EQ(a.get(1, 2), 0.1);
  EXPECT_EQ(a.get(3, 1), 0.3);
  EXPECT_EQ(a.get(2, 4), 0.15);
  EXPECT_THROW(exponents_from_list(4, {0.1, 0.2}), std::invalid_argument);
}

TEST(Selberg, BetaIntegralSignFollowsTheEdge) {
  for (auto [x, y] : std::vector<std::pair<double, double>>{{0.1, 0.2}, {0.5, 0.5}, {1.3, 0.4}}) {
    auto e = beta_exponents(x, y);
    const double expect = gamma_ratio(x, y);
    EXPECT_NEAR(integrate_graph(OrderedRootedGraph::parse("3 2 | (2,3)"), e).value, expect, 1e-10);
    EXPECT_NEAR(integrate_graph(OrderedRootedGraph::parse("3 2 | (1,3)"), e).value, -expect, 1e-10);
  }
}

TEST(Selberg, FrozenTwoDimensionalValues) {
  auto a = exponents_from_list(4, frozen_alpha);
  auto q1 = integrate_graph(OrderedRootedGraph::parse("4 2 | (1,3) (1,4)"), a);
  auto q2 = integrate_graph(OrderedRootedGraph::parse("4 2 | (2,3) (3,4)"), a);
  EXPECT_NEAR(q1.value, frozen_S1, 1e-9);
  EXPECT_NEAR(q2.value, frozen_S2, 1e-9);
  SelbergOptions lat;
  lat.scheme = Scheme::Lattice;
  EXPECT_NEAR(integrate_graph(OrderedRootedGraph::parse("4 2 | (2,3) (3,4)"), a, lat).value, frozen_S2, 1e-7);
}

TEST(Selberg, ThreeDimensionalSchemesAgree) {
  std::mt19937_64 rng(11);
  auto a = exponents_from_list(5, sample_generic_alpha(5, rng));
  for (auto& v : a.a) v *= 4;  // keep the endpoint singularities mild enough for the lattice
  GraphSum chain = wedge_chain(IndexTuple{2, {2, 3, 1}});
  auto ts = integrate_sum(chain, a);
  SelbergOptions lat;
  lat.scheme = Scheme::Lattice;
  lat.tol = 1e-7;
  auto lt = integrate_sum(chain, a, lat);
  EXPECT_NEAR(ts.value, lt.value, 1e-5);
}

TEST(Selberg, LinearInTheGraphSum) {
  auto a = exponents_from_list(4, frozen_alpha);
  auto g1 = OrderedRootedGraph::parse("4 2 | (1,3) (1,4)");
  auto g2 = OrderedRootedGraph::parse("4 2 | (2,3) (3,4)");
  GraphSum s(g1, 2);
  s.add(g2, -3);
  EXPECT_NEAR(integrate_sum(s, a).value, 2 * frozen_S1 - 3 * frozen_S2, 1e-8);
  // reversing the edge order flips the sign
  EXPECT_NEAR(integrate_graph(OrderedRootedGraph::parse("4 2 | (3,4) (2,3)"), a).value, -frozen_S2, 1e-9);
}

TEST(Selberg, ComplexExponentsReduceToReal) {
  auto a = exponents_from_list(4, frozen_alpha);
  ComplexExponents c(4);
  for (std::size_t i = 0; i < a.a.size(); ++i) c.a[i] = a.a[i];
  GraphSum g(OrderedRootedGraph::parse("4 2 | (1,3) (1,4)"));
  auto q = integrate_sum(g, c);
  EXPECT_NEAR(q.value.real(), frozen_S1, 1e-9);
  EXPECT_NEAR(q.value.imag(), 0.0, 1e-12);
}

TEST(Selberg, ComplexBetaMatchesGamma) {
  ComplexExponents c(3);
  const std::complex<double> x(0.4, 0.2), y(0.3, -0.1);
  c.set(1, 3, x);
  c.set(2, 3, y);
  auto q = integrate_sum(GraphSum(OrderedRootedGraph::parse("3 2 | (2,3)")), c);
  const auto expect = std::exp(log_gamma(1.0 + x) + log_gamma(1.0 + y) - log_gamma(1.0 + x + y));
  EXPECT_LT(std::abs(q.value - expect), 1e-9);
}

TEST(Selberg, ThreeRootsUseTheFixedPoint) {
  // n = 4, r = 3: a 1-D integral over x4 in (0, x3) for the edge (3,4)
  SelbergOptions opt;
  opt.r = 3;
  opt.x3 = 0.5;
  auto a = exponents_from_list(4, frozen_alpha);
  auto q = integrate_graph(OrderedRootedGraph::parse("4 3 | (1,4)"), a, opt);
  EXPECT_TRUE(std::isfinite(q.value));
  auto roots = root_positions(opt);
  ASSERT_EQ(roots.size(), 4u);
  EXPECT_EQ(roots[1], 0.0);
  EXPECT_EQ(roots[2], 1.0);
  EXPECT_EQ(roots[3], 0.5);
}

TEST(Taylor, LeadingCoefficientsAtThreePoints) {
  ExponentAssignment dir(3);
  dir.set(1, 3, 1.0);
  dir.set(2, 3, 0.5);
  auto t13 = taylor_coefficients(GraphSum(OrderedRootedGraph::parse("3 2 | (1,3)")), dir, 3);
  auto t23 = taylor_coefficients(GraphSum(OrderedRootedGraph::parse("3 2 | (2,3)")), dir, 3);
  EXPECT_NEAR(t13.coeffs[0], -1.0, 1e-8);
  EXPECT_NEAR(t23.coeffs[0], 1.0, 1e-8);
  EXPECT_NEAR(t23.coeffs[1], 0.0, 1e-8);
  // Gamma(1+a t)Gamma(1+b t)/Gamma(1+(a+b)t) = 1 - ab zeta(2) t^2 + ...
  EXPECT_NEAR(t23.coeffs[2], -0.5 * std::numbers::pi * std::numbers::pi / 6, 1e-7);
}

TEST(Taylor, ConstantTermVanishesAwayFromTheSecondRoot) {
  std::mt19937_64 rng(12);
  auto dir = exponents_from_list(4, sample_generic_alpha(4, rng));
  for (auto& v : dir.a) v *= 5;
  // i_4 = 2 forces a factor that vanishes at t = 0
  auto t = taylor_coefficients(wedge_chain(IndexTuple{2, {1, 2}}), dir, 1);
  EXPECT_NEAR(t.coeffs[0], 0.0, 1e-7);
}

TEST(SumRelation, VanishesAtFourPoints) {
  std::mt19937_64 rng(13);
  auto a = exponents_from_list(4, sample_generic_alpha(4, rng));
  for (int p = 3; p <= 4; ++p)
    for (const auto& I : all_index_tuples(4, 2)) {
      if (I.at(p) != 1) continue;
      auto res = sum_relation_defect(I, p, a);
      EXPECT_LT(std::abs(res.sum), 1e-7) << I.str() << " p=" << p;
      EXPECT_EQ(res.components.size(), static_cast<std::size_t>(p - 1));
    }
}

TEST(Selberg, RejectsBadInput) {
  auto a = exponents_from_list(4, frozen_alpha);
  EXPECT_THROW(integrate_graph(OrderedRootedGraph::parse("4 2 | (1,3)"), a), std::invalid_argument);
  auto neg = a;
  neg.set(1, 3, -0.5);
  EXPECT_THROW(integrate_graph(OrderedRootedGraph::parse("4 2 | (1,3) (1,4)"), neg), std::domain_error);
}
