#include "smz/ncalg.hpp"

#include <gtest/gtest.h>

#include <random>

using namespace smz;

namespace {

NCSeries<Rational> random_series(int N, std::mt19937_64& rng, bool zero_constant) {
  std::uniform_int_distribution<int> num(-5, 5), den(1, 4);
  NCSeries<Rational> s(N);
  for (auto& c : s.data()) c = ratio<Rational>(num(rng), den(rng));
  if (zero_constant) s.data()[0] = 0;
  return s;
}

long long binom(int n, int k) {
  long long r = 1;
  for (int i = 1; i <= k; ++i) r = r * (n - k + i) / i;
  return r;
}

}  // namespace

TEST(Word, ParsePrintRoundTrip) {
  for (const char* s : {"1", "X", "Y", "XY", "YXXY", "XXXXXXXXYY"}) EXPECT_EQ(Word::parse(s).str(), s);
  EXPECT_EQ(Word::parse("").len, 0);
  EXPECT_THROW(Word::parse("XZ"), std::invalid_argument);
}

TEST(Word, DenseIndexIsABijection) {
  for (std::size_t i = 0; i < series_size(10); ++i) {
    Word w = Word::from_index(i);
    ASSERT_EQ(w.index(), i);
  }
  EXPECT_EQ(Word::parse("X").index(), 1u);
  EXPECT_EQ(Word::parse("Y").index(), 2u);
  EXPECT_EQ(Word::parse("XX").index(), 3u);
}

TEST(Word, Operations) {
  Word w = Word::parse("XYY");
  EXPECT_EQ(w.reversed().str(), "YYX");
  EXPECT_EQ(w.swapped().str(), "YXX");
  EXPECT_EQ(w.count(Letter::Y), 2);
  EXPECT_EQ(w.concat(Word::parse("X")).str(), "XYYX");
  EXPECT_EQ(w.insert(1, Letter::X).str(), "XXYY");
  EXPECT_EQ(w.prefix(2).str(), "XY");
  EXPECT_EQ(w.suffix_from(1).str(), "YY");
}

TEST(Shuffle, SmallCases) {
  auto s = shuffle_words(Word::parse("X"), Word::parse("Y"));
  EXPECT_EQ(s.size(), 2u);
  EXPECT_EQ(s[Word::parse("XY")], 1);
  EXPECT_EQ(s[Word::parse("YX")], 1);
  auto t = shuffle_words(Word::parse("X"), Word::parse("X"));
  EXPECT_EQ(t[Word::parse("XX")], 2);
}

TEST(Shuffle, MultiplicitiesSumToBinomial) {
  for (std::size_t iu = 0; iu < series_size(4); ++iu)
    for (std::size_t iv = 0; iv < series_size(3); ++iv) {
      Word u = Word::from_index(iu), v = Word::from_index(iv);
      long long total = 0;
      for (const auto& [w, m] : shuffle_words(u, v)) {
        ASSERT_EQ(w.len, u.len + v.len);
        ASSERT_EQ(w.count(Letter::Y), u.count(Letter::Y) + v.count(Letter::Y));
        total += m;
      }
      ASSERT_EQ(total, binom(u.len + v.len, u.len));
    }
}

TEST(NCSeries, ProductIsAssociative) {
  std::mt19937_64 rng(1);
  for (int rep = 0; rep < 5; ++rep) {
    auto a = random_series(5, rng, false), b = random_series(5, rng, false), c = random_series(5, rng, false);
    EXPECT_TRUE((a * b) * c == a * (b * c));
  }
}

TEST(NCSeries, ProductIsNotCommutative) {
  auto X = NCSeries<Rational>::letter(3, Letter::X), Y = NCSeries<Rational>::letter(3, Letter::Y);
  EXPECT_FALSE(X * Y == Y * X);
  EXPECT_EQ((X * Y)[Word::parse("XY")], 1);
  EXPECT_EQ((X * Y)[Word::parse("YX")], 0);
}

TEST(NCSeries, LogInvertsExpExactly) {
  std::mt19937_64 rng(2);
  for (int rep = 0; rep < 4; ++rep) {
    auto s = random_series(5, rng, true);
    EXPECT_TRUE(series_log(series_exp(s)) == s);
    auto g = s + NCSeries<Rational>::one(5);
    EXPECT_TRUE(series_exp(series_log(g)) == g);
  }
}

TEST(NCSeries, ExpRejectsConstantTerm) {
  EXPECT_THROW(series_exp(NCSeries<Rational>::one(3)), std::domain_error);
  EXPECT_THROW(series_log(NCSeries<Rational>(3)), std::domain_error);
  EXPECT_THROW(NCSeries<double>(13), std::invalid_argument);
}

TEST(NCSeries, ExpOfLieElementIsGroupLike) {
  const int N = 6;
  auto X = NCSeries<Rational>::letter(N, Letter::X), Y = NCSeries<Rational>::letter(N, Letter::Y);
  auto lie = X * ratio<Rational>(2, 3) - Y * ratio<Rational>(1, 5) + (X * Y - Y * X) * ratio<Rational>(7, 2);
  EXPECT_EQ(sgn(grouplike_defect(series_exp(lie)).defect), 0);
  // exp(X) exp(Y) is group-like too, 1 + XY is not
  EXPECT_EQ(sgn(grouplike_defect(series_exp(X) * series_exp(Y)).defect), 0);
  auto bad = NCSeries<Rational>::one(N) + X * Y;
  auto d = grouplike_defect(bad);
  EXPECT_GT(d.defect, 0);
}

TEST(NCSeries, ExpCoefficientsAreInverseFactorials) {
  auto X = NCSeries<Rational>::letter(8, Letter::X);
  auto e = series_exp(X);
  Rational f = 1;
  for (int k = 0; k <= 8; ++k) {
    if (k > 0) f /= k;
    EXPECT_EQ(e[Word(static_cast<std::uint8_t>(k), 0)], f);
  }
}
