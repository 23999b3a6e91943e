#ifndef SMZ_MZV_HPP
#define SMZ_MZV_HPP

// Multiple zeta values zeta(k1,...,km) = sum_{n1<...<nm} 1/(n1^k1 ... nm^km),
// admissible when km >= 2, together with their word encoding, shuffle and
// stuffle products and shuffle regularization.

#include "smz/ncalg.hpp"
#include "smz/rational.hpp"

#include <map>
#include <string>
#include <vector>

namespace smz {

using MZVIndex = std::vector<int>;

int weight(const MZVIndex& k);
bool is_admissible(const MZVIndex& k);
void require_admissible(const MZVIndex& k);
std::string index_to_string(const MZVIndex& k);   // "(1,2)"
MZVIndex parse_index(const std::string& s);        // "1,2" or "(1,2)"

struct MZVValue {
  double value = 0;
  double abs_err = 0;  // rigorous bound on truncation error plus a rounding allowance
  int cutoff = 0;      // number of series terms used per iterated integral
};

constexpr int mzv_max_weight = 8;
constexpr double mzv_min_abs_err = 1e-13;

// Numeric value with guaranteed abs_err. Throws for non-admissible input,
// weight above mzv_max_weight, or abs_err below mzv_min_abs_err.
MZVValue mzv_eval(const MZVIndex& k, double abs_err = mzv_min_abs_err);

// Same, with an explicit series cutoff (no adaptivity); abs_err reports the tail bound.
MZVValue mzv_eval_cutoff(const MZVIndex& k, int cutoff);

// Quasi-shuffle (stuffle) product of nested sums.
std::map<MZVIndex, long long> stuffle_indices(const MZVIndex& a, const MZVIndex& b);

// (k1..kn) <-> X^{kn-1} Y ... X^{k1-1} Y
Word index_to_word(const MZVIndex& k);
MZVIndex word_to_index(const Word& w);  // word must start with X and end with Y

// Rational combination of admissible MZVs plus a rational constant.
struct MZVCombo {
  Rational constant{0};
  std::map<MZVIndex, Rational> terms;

  MZVCombo& operator+=(const MZVCombo& o);
  MZVCombo& operator*=(const Rational& q);
  friend MZVCombo operator+(MZVCombo a, const MZVCombo& b) { return a += b; }
  friend MZVCombo operator*(MZVCombo a, const Rational& q) { return a *= q; }
  bool is_zero() const;
  void prune();
  double evaluate(double abs_err = mzv_min_abs_err) const;
  std::string str() const;
  friend bool operator==(const MZVCombo& a, const MZVCombo& b) {
    return a.constant == b.constant && a.terms == b.terms;
  }
};

// Shuffle-regularized value of an arbitrary word, reg(X) = reg(Y) = 0.
MZVCombo shuffle_regularize(const Word& w);

// |zeta(u) zeta(v) - sum shuffle| and |zeta(u) zeta(v) - sum stuffle|.
struct DoubleShuffleDefect {
  double product = 0, shuffle_sum = 0, stuffle_sum = 0;
  double max_defect() const;
};
DoubleShuffleDefect double_shuffle_defect(const MZVIndex& u, const MZVIndex& v);

std::vector<MZVIndex> admissible_indices(int weight);

// Word-graded series whose degree-w coefficients lie in L_w.
struct HRElement {
  int N = 0;
  std::map<Word, MZVCombo> coeffs;  // zero coefficients are not stored

  MZVCombo coeff(const Word& w) const;
  bool weight_graded() const;  // every term of coeff(w) has weight |w|
  NCSeries<double> evaluate(double abs_err = mzv_min_abs_err) const;
  std::string str() const;
};

}  // namespace smz

#endif
