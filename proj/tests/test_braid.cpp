#include "smz/braid.hpp"

#include <gtest/gtest.h>

#include <random>

using namespace smz;

namespace {

AlphaPoly a(int i, int j) { return AlphaPoly::a(i, j); }

Poly<long long> ia(int i, int j, long long c = 1) { return Poly<long long>::a(i, j, c); }

}  // namespace

TEST(PairSymbol, IsABijection) {
  int expect = 0;
  for (int j = 2; j <= 11; ++j)
    for (int i = 1; i < j; ++i) {
      ASSERT_EQ(pair_symbol(i, j), expect);
      ASSERT_EQ(pair_symbol(j, i), expect);
      auto [p, q] = symbol_pair(expect);
      ASSERT_EQ(p, i);
      ASSERT_EQ(q, j);
      ++expect;
    }
  EXPECT_EQ(symbol_count(5), 10);
  EXPECT_THROW(pair_symbol(2, 2), std::invalid_argument);
}

TEST(Poly, Arithmetic) {
  AlphaPoly p = a(1, 2) + a(1, 3);
  AlphaPoly q = p * p;
  EXPECT_EQ(q.size(), 3u);
  EXPECT_EQ(q.coeff(mono::mul(mono::var(pair_symbol(1, 2)), mono::var(pair_symbol(1, 3)))), 2);
  EXPECT_TRUE((p - p).zero());
  EXPECT_EQ(q.max_degree(), 2);
  std::vector<double> v = {2.0, 3.0, 5.0};
  EXPECT_DOUBLE_EQ(q.evaluate(v), 25.0);
}

TEST(Tower, DimensionsAreFactorialRatios) {
  EXPECT_EQ(tower_dimension(5, 2), 24);
  EXPECT_EQ(tower_dimension(5, 5), 1);
  EXPECT_EQ(tower_dimension(6, 3), 60);
  Tower t = build_tower(5, 2);
  for (int k = 2; k <= 5; ++k) {
    EXPECT_EQ(t.level(k).dim, tower_dimension(5, k));
    EXPECT_EQ(t.level(k).k, k);
  }
  EXPECT_THROW(build_tower(9, 2), std::overflow_error);
}

TEST(Tower, SmallestStepByHand) {
  // level 3 -> 2 on scalars:
  //   A12 = [[a12 + a23, -a13], [-a23, a12 + a13]]
  BraidFamily f = ind_step(scalar_family(3));
  ASSERT_EQ(f.dim, 2);
  const auto& M = f.A(1, 2);
  EXPECT_TRUE(M(0, 0) == ia(1, 2) + ia(2, 3));
  EXPECT_TRUE(M(0, 1) == ia(1, 3, -1));
  EXPECT_TRUE(M(1, 0) == ia(2, 3, -1));
  EXPECT_TRUE(M(1, 1) == ia(1, 2) + ia(1, 3));
}

TEST(Tower, RelationsHoldExactly) {
  Tower t = build_tower(6, 2);
  for (const auto& fam : t.levels) {
    auto d = pure_braid_defects(fam);
    if (fam.k >= 3) {
      EXPECT_FALSE(d.empty());
    }
    for (const auto& x : d) EXPECT_EQ(x.norm, 0.0) << "level " << fam.k << " " << x.relation;
    EXPECT_TRUE(is_degree_one_homogeneous(fam));
  }
}

TEST(Tower, RelationCountsAtLevelFive) {
  // 15 disjoint pairs plus 3 choices of middle vertex for each of 10 triples
  auto d = pure_braid_defects(scalar_family(5));
  EXPECT_EQ(d.size(), 45u);
}

TEST(Tower, CorruptedFamilyFailsTheRelations) {
  std::mt19937_64 rng(7);
  auto alpha = sample_generic_alpha(5, rng);
  auto good = specialize(build_tower(5, 4).level(4), alpha);
  double worst_good = 0;
  for (const auto& x : pure_braid_defects(good, 4, 1e-12)) worst_good = std::max(worst_good, x.norm);
  EXPECT_EQ(worst_good, 0.0);
  auto bad = good;
  bad[pair_symbol(1, 2)](0, 1) += 0.01;
  double worst_bad = 0;
  for (const auto& x : pure_braid_defects(bad, 4, 1e-12)) worst_bad = std::max(worst_bad, x.norm);
  EXPECT_GT(worst_bad, 1e-4);
}

TEST(Tower, NumericStepMatchesSymbolicStep) {
  std::mt19937_64 rng(8);
  auto alpha = sample_generic_alpha(5, rng);
  Tower t = build_tower(5, 2);
  for (int k = 5; k >= 3; --k) {
    auto numeric = ind_step_numeric(specialize(t.level(k), alpha), k);
    auto symbolic = specialize(t.level(k - 1), alpha);
    ASSERT_EQ(numeric.size(), symbolic.size());
    for (std::size_t s = 0; s < numeric.size(); ++s) EXPECT_LT((numeric[s] - symbolic[s]).norm(), 1e-14);
  }
}

TEST(Tower, CoordinatesAreABijection) {
  for (int r = 2; r <= 3; ++r) {
    const int n = 6;
    auto tuples = all_index_tuples(n, r);
    ASSERT_EQ(static_cast<long long>(tuples.size()), tower_dimension(n, r));
    std::vector<bool> seen(tuples.size(), false);
    for (const auto& I : tuples) {
      int c = tuple_coordinate(I);
      ASSERT_GE(c, 0);
      ASSERT_LT(c, static_cast<int>(tuples.size()));
      EXPECT_FALSE(seen[c]);
      seen[c] = true;
      EXPECT_EQ(coordinate_tuple(n, r, c), I);
    }
  }
}

TEST(AscendingFactorial, Values) {
  EXPECT_EQ(ascending_factorial(3, 0), 1);
  EXPECT_EQ(ascending_factorial(3, 2), 12);
  EXPECT_EQ(ascending_factorial(1, 4), 24);
  EXPECT_EQ(ascending_factorial(0, 2), 0);
}

TEST(Spectrum, SmallestStepByHand) {
  // eigenvalues of the 2x2 A12 above: a12 and a12 + a13 + a23
  Tower t = build_tower(3, 2);
  std::vector<double> alpha = {0.11, 0.07, 0.13};
  auto rep = spectrum(t, {1, 2}, 2, alpha, false);
  ASSERT_EQ(rep.numeric.size(), 2u);
  EXPECT_NEAR(rep.numeric[0], 0.11, 1e-14);
  EXPECT_NEAR(rep.numeric[1], 0.31, 1e-14);
  auto red = spectrum(t, {1, 2}, 2, alpha, true);
  ASSERT_EQ(red.numeric.size(), 1u);
  EXPECT_NEAR(red.numeric[0], 0.31, 1e-14);
}

TEST(Spectrum, MatchesFormulaAtGenericPoints) {
  std::mt19937_64 rng(9);
  const int n = 5;
  Tower t = build_tower(n, 2);
  auto alpha = sample_generic_alpha(n, rng);
  for (int k = 2; k <= 4; ++k)
    for (std::uint32_t mask = 0; mask < (1u << k); ++mask) {
      std::vector<int> S;
      for (int i = 0; i < k; ++i)
        if (mask & (1u << i)) S.push_back(i + 1);
      if (S.size() < 2) continue;
      for (bool reduced : {false, true}) {
        auto rep = spectrum(t, S, k, alpha, reduced);
        EXPECT_LT(rep.max_deviation, 1e-9) << "k=" << k << " mask=" << mask << " reduced=" << reduced;
        if (reduced) {
          EXPECT_LT(rep.invariance_residual, 1e-12);
        }
      }
    }
}

TEST(Spectrum, ReducedBasisHasZeroBlockSums) {
  Eigen::MatrixXd Q = reduced_basis(5, 3);
  EXPECT_EQ(Q.rows(), 12);
  EXPECT_EQ(Q.cols(), 6);  // (3-1)(4-1)
  Eigen::FullPivLU<Eigen::MatrixXd> lu(Q);
  EXPECT_EQ(lu.rank(), 6);
}

TEST(EtaGamma, AllSmallTuplesAgreeExactly) {
  std::mt19937_64 rng(10);
  for (int n = 3; n <= 5; ++n) {
    Tower t = build_tower(n, 2);
    for (const auto& I : all_index_tuples(n, 2)) {
      std::vector<Rational> x(n + 1, Rational(0));
      for (int i = 1; i <= n; ++i) x[i] = ratio<Rational>(static_cast<long long>(rng() % 89 + 1) + 97 * i, 97 * (n + 1));
      auto res = eta_gamma_check(t, I, x);
      EXPECT_EQ(sgn(res.defect), 0) << I.str();
      EXPECT_FALSE(res.eta.zero()) << I.str();
    }
  }
}

TEST(ProductFormula, NoMismatchesOnTrees) {
  Tower t = build_tower(5, 2);
  std::vector<OrderedRootedGraph> graphs;
  for (const auto& I : all_index_tuples(4, 2)) {
    const GraphSum chain = wedge_chain(I);
    for (const auto& [g, c] : chain.terms()) graphs.push_back(g);
  }
  auto rep = product_lemma_check(t, graphs);
  EXPECT_GT(rep.cases, 0);
  EXPECT_GT(rep.nonzero_cases, 0);
  EXPECT_EQ(rep.mismatches, 0);
}
