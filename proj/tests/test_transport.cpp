#include "smz/transport.hpp"

#include <unsupported/Eigen/MatrixFunctions>
#include <gtest/gtest.h>

#include <cmath>
#include <numbers>
#include <random>

using namespace smz;

namespace {

const double zeta2 = std::numbers::pi * std::numbers::pi / 6;
const double zeta3 = 1.2020569031595942854;

Mat random_matrix(int d, std::mt19937_64& rng, double scale) {
  std::uniform_real_distribution<double> u(-scale, scale);
  Mat m(d, d);
  for (int i = 0; i < d; ++i)
    for (int j = 0; j < d; ++j) m(i, j) = u(rng);
  return m;
}

Mat strictly_upper(int d, std::mt19937_64& rng) {
  Mat m = random_matrix(d, rng, 1.0);
  for (int i = 0; i < d; ++i)
    for (int j = 0; j <= i; ++j) m(i, j) = 0;
  return m;
}

Mat mat_pow(const Mat& M, double x) { return (std::log(x) * M).exp(); }

}  // namespace

TEST(Transport, DiagonalSystemHasClosedForm) {
  ConnectionPair c{Mat(Eigen::Vector2d(0.3, -0.2).asDiagonal()), Mat(Eigen::Vector2d(0.7, 0.1).asDiagonal())};
  const double x0 = 0.2, x1 = 0.9;
  Mat T = transport_ode(c, x0, x1);
  for (int i = 0; i < 2; ++i) {
    const double expect = std::pow(x1 / x0, c.A(i, i)) * std::pow((1 - x1) / (1 - x0), c.B(i, i));
    EXPECT_NEAR(T(i, i), expect, 1e-11);
  }
  EXPECT_NEAR(T(0, 1), 0.0, 1e-14);
  // backwards transport is the inverse
  EXPECT_LT((transport_ode(c, x1, x0) * T - Mat::Identity(2, 2)).norm(), 1e-11);
  EXPECT_THROW(transport_ode(c, x0, x1, 1e-16), std::invalid_argument);
}

TEST(Transport, LocalSeriesSolvesTheEquation) {
  std::mt19937_64 rng(21);
  ConnectionPair c{random_matrix(3, rng, 0.3), random_matrix(3, rng, 0.3)};
  const double x0 = 0.15, x1 = 0.45;
  // H(x1) x1^A x0^-A H(x0)^-1 transports x0 -> x1
  Mat H0 = frobenius_series(c.A, c.B, x0), H1 = frobenius_series(c.A, c.B, x1);
  Mat via_series = H1 * mat_pow(c.A, x1) * mat_pow(c.A, x0).inverse() * H0.inverse();
  EXPECT_LT((via_series - transport_ode(c, x0, x1)).norm(), 1e-10);
}

TEST(Transport, ScalarAssociatorIsTrivial) {
  ConnectionPair c{Mat::Constant(1, 1, 0.37), Mat::Constant(1, 1, -0.21)};
  EXPECT_NEAR(rho_phi(c)(0, 0), 1.0, 1e-13);
  EXPECT_NEAR(rho_phi(c, 0.3)(0, 0), 1.0, 1e-13);
}

TEST(Transport, RhoPhiDoesNotDependOnTheBasePoint) {
  std::mt19937_64 rng(22);
  ConnectionPair c{random_matrix(4, rng, 0.25), random_matrix(4, rng, 0.25)};
  Mat a = rho_phi(c, 0.5), b = rho_phi(c, 0.35), s = rho_phi_split(c);
  EXPECT_LT((a - b).norm(), 1e-11);
  EXPECT_LT((a - s).norm(), 1e-10);
}

TEST(Transport, NilpotentPairMatchesTheTruncatedAssociator) {
  // products of four strictly upper-triangular 4x4 matrices vanish
  std::mt19937_64 rng(23);
  ConnectionPair c{strictly_upper(4, rng), strictly_upper(4, rng)};
  Mat direct = rho_phi(c);
  Mat numeric = rho_apply_numeric(associator_numeric(4), c.A, c.B);
  Mat symbolic = rho_apply_numeric(associator_symbolic(4).evaluate(), c.A, c.B);
  EXPECT_LT((direct - numeric).norm(), 1e-11);
  EXPECT_LT((direct - symbolic).norm(), 1e-11);
}

TEST(Associator, FrozenLowDegreeCoefficients) {
  auto phi = associator_numeric(3);
  auto c = [&](const char* w) { return phi[Word::parse(w)]; };
  EXPECT_NEAR(c("1"), 1.0, 1e-14);
  EXPECT_NEAR(c("X"), 0.0, 1e-12);
  EXPECT_NEAR(c("Y"), 0.0, 1e-12);
  EXPECT_NEAR(c("XX"), 0.0, 1e-12);
  EXPECT_NEAR(c("XY"), -zeta2, 1e-11);
  EXPECT_NEAR(c("YX"), zeta2, 1e-11);
  EXPECT_NEAR(c("XXY"), -zeta3, 1e-11);
  EXPECT_NEAR(c("XYX"), 2 * zeta3, 1e-11);
  EXPECT_NEAR(c("XYY"), zeta3, 1e-11);
  EXPECT_NEAR(c("YXX"), -zeta3, 1e-11);
  EXPECT_NEAR(c("YXY"), -2 * zeta3, 1e-11);
  EXPECT_NEAR(c("YYX"), zeta3, 1e-11);
}

TEST(Associator, IsGroupLike) {
  auto phi = associator_numeric(6);
  EXPECT_LT(grouplike_defect(phi).defect, 1e-10);
}

TEST(Associator, SymbolicMatchesNumeric) {
  const int N = 6;
  auto h = associator_symbolic(N);
  EXPECT_TRUE(h.weight_graded());
  auto num = associator_numeric(N), sym = h.evaluate();
  for (std::size_t i = 0; i < num.size(); ++i) EXPECT_NEAR(num.data()[i], sym.data()[i], 1e-10) << Word::from_index(i).str();
}

TEST(Associator, LadderRouteAgrees) {
  auto lad = associator_ladder(4);
  auto num = associator_numeric(4);
  double worst = 0;
  for (std::size_t i = 0; i < num.size(); ++i) worst = std::max(worst, std::abs(num.data()[i] - lad.value.data()[i]));
  EXPECT_LT(worst, 1e-7);
  EXPECT_FALSE(lad.eps.empty());
}

TEST(Associator, ChosenConventionScoresBest) {
  auto scores = associator_convention_scores(3);
  ASSERT_GE(scores.size(), 2u);
  double chosen = -1, best_other = INFINITY;
  for (const auto& s : scores) {
    if (s.name == associator_convention)
      chosen = s.max_deviation;
    else
      best_other = std::min(best_other, s.max_deviation);
  }
  ASSERT_GE(chosen, 0.0);
  EXPECT_LT(chosen, 1e-10);
  EXPECT_LE(chosen, best_other + 1e-12);
}

TEST(Transport, ResonanceInfo) {
  Mat M = Eigen::Vector3d(0.1, 1.1, 0.45).asDiagonal();
  auto info = resonance_info(M);
  EXPECT_NEAR(info.integer_distance, 0.0, 1e-12);
  EXPECT_NEAR(info.min_gap, 0.35, 1e-12);
  EXPECT_TRUE(info.diagonalizable);
  Mat J(2, 2);
  J << 0.2, 1, 0, 0.2;
  EXPECT_FALSE(resonance_info(J).diagonalizable);
}

TEST(Transport, LadderLimitOfAScalarSolution) {
  const double a = 0.3, b = 0.45;
  ConnectionPair c{Mat::Constant(1, 1, a), Mat::Constant(1, 1, b)};
  // s = x^a (1-x)^b, so x^-a s -> 1 and (1-x)^-b s -> 1
  auto s = [&](double x) { return Mat::Constant(1, 1, std::pow(x, a) * std::pow(1 - x, b)); };
  auto r0 = regularized_limit_ladder(c, 0, s);
  EXPECT_NEAR(r0.value(0, 0), 1.0, 1e-6);
  EXPECT_LT(r0.err_estimate, 1e-5);
  auto r1 = regularized_limit_ladder(c, 1, s);
  EXPECT_NEAR(r1.value(0, 0), 1.0, 1e-6);
  EXPECT_NEAR(regularized_limit(c, 0, 0.2, s(0.2))(0, 0), 1.0, 1e-12);
}

TEST(Extrapolation, NevilleIsExactOnPolynomials) {
  std::vector<double> h = {0.4, 0.2, 0.1, 0.05};
  std::vector<double> v;
  for (double x : h) v.push_back(2.5 - 3 * x + 0.5 * x * x * x);
  EXPECT_NEAR(extrapolate_to_zero(h, v), 2.5, 1e-12);
}

TEST(Relabel, DropVertexTuple) {
  // roots {1,2,3}, i_4 = 3, i_5 = 1; dropping 2 makes the old 3 the second root
  IndexTuple I{3, {3, 1}};
  auto J = drop_vertex_tuple(I, 2, 2);
  EXPECT_EQ(J.r, 2);
  EXPECT_EQ(J.idx, (std::vector<int>{2, 1}));
  EXPECT_THROW(drop_vertex_tuple(IndexTuple{2, {2}}, 2, 2), std::invalid_argument);
}

TEST(Relabel, Exponents) {
  auto a = exponents_from_list(4, {0.1, 0.3, 0.2, 0.25, 0.15, 0.35});
  auto b = drop_two_exponents(a);
  EXPECT_EQ(b.n, 3);
  EXPECT_EQ(b.get(1, 2), 0.3);   // old (1,3)
  EXPECT_EQ(b.get(1, 3), 0.25);  // old (1,4)
  EXPECT_EQ(b.get(2, 3), 0.35);  // old (3,4)
  auto c = drop_three_exponents(a);
  EXPECT_DOUBLE_EQ(c.get(1, 2), 0.1 + 0.3);    // a'_12 = a_12 + a_13
  EXPECT_EQ(c.get(1, 3), 0.25);
  EXPECT_DOUBLE_EQ(c.get(2, 3), 0.15 + 0.35);  // a'_24 = a_24 + a_34
}

TEST(RhoApply, GradedAndConsistentWithTheNumericRoute) {
  Tower t = build_tower(4, 3);
  const auto& fam = t.level(3);
  const auto& rx = fam.A(1, 3);
  const auto& ry = fam.A(2, 3);
  auto h = associator_symbolic(4);
  MixedMatrix m = rho_apply(h, rx, ry);
  for (const auto& e : m.e) EXPECT_TRUE(e.weight_graded());
  std::vector<double> alpha = {0.11, 0.07, 0.13, 0.05, 0.09, 0.12};
  Mat sym = m.evaluate(alpha);
  Mat num = rho_apply_numeric(h.evaluate(), specialize(rx, alpha), specialize(ry, alpha));
  EXPECT_LT((sym - num).norm(), 1e-12);
}

TEST(Projection, IdentityHoldsAndIdentityMapFails) {
  std::mt19937_64 rng(24);
  auto alpha = sample_generic_alpha(4, rng);
  auto rep = projection_identity_check(4, alpha);
  EXPECT_LT(rep.defect, 1e-6);
  EXPECT_FALSE(rep.projected.empty());
  // negative control: the same projection with rho(Phi) replaced by 1
  double control = 0;
  for (std::size_t j = 0; j < rep.projected.size(); ++j)
    control = std::max(control, std::abs(rep.lhs[j] - rep.V1[rep.projected[j]]));
  EXPECT_GT(control, 1e-3);
}

TEST(AlphaLimit, BothCasesAtThreePoints) {
  std::mt19937_64 rng(25);
  auto a = exponents_from_list(4, sample_generic_alpha(4, rng));
  for (const auto& I : all_index_tuples(4, 2)) {
    if (I.at(3) != 2) continue;
    auto rep = alpha_limit_check(I, a);
    EXPECT_LT(rep.deviation, 1e-4) << I.str() << " case " << rep.which_case;
  }
}
