#ifndef SMZ_NCALG_HPP
#define SMZ_NCALG_HPP

// Truncated noncommutative power series in two letters X, Y.

#include "smz/rational.hpp"

#include <cstdint>
#include <map>
#include <stdexcept>
#include <string>
#include <vector>

namespace smz {

enum class Letter : std::uint8_t { X = 0, Y = 1 };

// A word over {X, Y}. Letters are packed most-significant first so that the
// natural (length, bits) order is length-then-lexicographic with X < Y.
struct Word {
  std::uint8_t len = 0;
  std::uint32_t bits = 0;

  static constexpr int max_length = 30;

  Word() = default;
  Word(std::uint8_t l, std::uint32_t b) : len(l), bits(b) {}

  static Word parse(const std::string& s);   // "XYY"; "1" or "" is the empty word
  std::string str() const;                   // empty word prints as "1"

  Letter at(int i) const { return static_cast<Letter>((bits >> (len - 1 - i)) & 1u); }
  Word concat(const Word& o) const;
  Word prefix(int k) const { return Word(static_cast<std::uint8_t>(k), bits >> (len - k)); }
  Word suffix_from(int k) const {
    int l = len - k;
    return Word(static_cast<std::uint8_t>(l), l == 0 ? 0u : (bits & ((1u << l) - 1u)));
  }
  Word reversed() const;
  Word swapped() const { return Word(len, len == 0 ? 0u : (~bits) & ((1u << len) - 1u)); }
  int count(Letter a) const;
  Word insert(int pos, Letter a) const;  // pos in [0, len]

  // Dense position in a truncated series: all words of length < len come first.
  std::size_t index() const { return (std::size_t{1} << len) - 1 + bits; }
  static Word from_index(std::size_t idx);

  friend bool operator==(const Word& a, const Word& b) { return a.len == b.len && a.bits == b.bits; }
  friend bool operator!=(const Word& a, const Word& b) { return !(a == b); }
  friend bool operator<(const Word& a, const Word& b) {
    return a.len != b.len ? a.len < b.len : a.bits < b.bits;
  }
};

Word letter_word(Letter a);

// Shuffle product u ш v as a multiset of words with multiplicities.
std::map<Word, long long> shuffle_words(const Word& u, const Word& v);

inline std::size_t series_size(int N) { return (std::size_t{1} << (N + 1)) - 1; }

template <class T>
class NCSeries {
 public:
  static constexpr int max_truncation = 12;

  explicit NCSeries(int N = 4) : N_(N) {
    if (N < 0 || N > max_truncation) throw std::invalid_argument("truncation out of range");
    c_.assign(series_size(N), T(0));
  }

  static NCSeries one(int N) {
    NCSeries s(N);
    s.c_[0] = T(1);
    return s;
  }
  static NCSeries letter(int N, Letter a) {
    NCSeries s(N);
    if (N >= 1) s[letter_word(a)] = T(1);
    return s;
  }
  static NCSeries monomial(int N, const Word& w, const T& c = T(1)) {
    NCSeries s(N);
    if (w.len <= N) s[w] = c;
    return s;
  }

  int truncation() const { return N_; }
  std::size_t size() const { return c_.size(); }

  const T& operator[](const Word& w) const { return c_.at(w.index()); }
  T& operator[](const Word& w) { return c_.at(w.index()); }
  T coeff(const Word& w) const { return w.len > N_ ? T(0) : c_[w.index()]; }
  const std::vector<T>& data() const { return c_; }
  std::vector<T>& data() { return c_; }

  NCSeries& operator+=(const NCSeries& o) {
    check(o);
    for (std::size_t i = 0; i < c_.size(); ++i) c_[i] += o.c_[i];
    return *this;
  }
  NCSeries& operator-=(const NCSeries& o) {
    check(o);
    for (std::size_t i = 0; i < c_.size(); ++i) c_[i] -= o.c_[i];
    return *this;
  }
  NCSeries& operator*=(const T& s) {
    for (auto& v : c_) v *= s;
    return *this;
  }
  friend NCSeries operator+(NCSeries a, const NCSeries& b) { return a += b; }
  friend NCSeries operator-(NCSeries a, const NCSeries& b) { return a -= b; }
  friend NCSeries operator*(NCSeries a, const T& s) { return a *= s; }
  friend NCSeries operator*(const T& s, NCSeries a) { return a *= s; }
  NCSeries operator-() const {
    NCSeries r(*this);
    for (auto& v : r.c_) v = -v;
    return r;
  }

  // Concatenation product, truncated at N.
  friend NCSeries operator*(const NCSeries& a, const NCSeries& b) {
    a.check(b);
    const int N = a.N_;
    NCSeries r(N);
    for (int la = 0; la <= N; ++la) {
      const std::size_t a0 = (std::size_t{1} << la) - 1;
      for (std::uint32_t ua = 0; ua < (1u << la); ++ua) {
        const T& ca = a.c_[a0 + ua];
        if (is_zero(ca)) continue;
        for (int lb = 0; lb + la <= N; ++lb) {
          const std::size_t b0 = (std::size_t{1} << lb) - 1;
          const std::size_t r0 = (std::size_t{1} << (la + lb)) - 1;
          for (std::uint32_t ub = 0; ub < (1u << lb); ++ub) {
            const T& cb = b.c_[b0 + ub];
            if (is_zero(cb)) continue;
            r.c_[r0 + ((static_cast<std::size_t>(ua) << lb) | ub)] += ca * cb;
          }
        }
      }
    }
    return r;
  }

  friend bool operator==(const NCSeries& a, const NCSeries& b) { return a.N_ == b.N_ && a.c_ == b.c_; }

  T constant() const { return c_[0]; }

  T max_abs_degree(int d) const {
    T m(0);
    const std::size_t b0 = (std::size_t{1} << d) - 1;
    for (std::size_t i = 0; i < (std::size_t{1} << d); ++i) {
      T v = magnitude(c_[b0 + i]);
      if (m < v) m = v;
    }
    return m;
  }

 private:
  void check(const NCSeries& o) const {
    if (o.N_ != N_) throw std::invalid_argument("mismatched truncation orders");
  }

  int N_;
  std::vector<T> c_;
};

// exp(s) for s with zero constant term.
template <class T>
NCSeries<T> series_exp(const NCSeries<T>& s) {
  if (!is_zero(s.constant())) throw std::domain_error("series_exp: nonzero constant term");
  const int N = s.truncation();
  NCSeries<T> result = NCSeries<T>::one(N);
  NCSeries<T> term = NCSeries<T>::one(N);
  for (int k = 1; k <= N; ++k) {
    term = term * s;
    term *= ratio<T>(1, k);
    result += term;
  }
  return result;
}

// log(s) for s with constant term 1.
template <class T>
NCSeries<T> series_log(const NCSeries<T>& s) {
  if (s.constant() != T(1)) throw std::domain_error("series_log: constant term is not 1");
  const int N = s.truncation();
  NCSeries<T> x = s - NCSeries<T>::one(N);
  NCSeries<T> result(N);
  NCSeries<T> power = NCSeries<T>::one(N);
  for (int k = 1; k <= N; ++k) {
    power = power * x;
    result += power * ratio<T>(k % 2 == 1 ? 1 : -1, k);
  }
  return result;
}

template <class T>
struct GrouplikeDefect {
  T defect;
  Word u, v;  // a maximizing pair
};

// max over u, v with |u|+|v| <= N of |c(u)c(v) - sum_{w in u ш v} c(w)|.
template <class T>
GrouplikeDefect<T> grouplike_defect(const NCSeries<T>& s) {
  const int N = s.truncation();
  GrouplikeDefect<T> best{T(0), Word(), Word()};
  for (std::size_t iu = 0; iu < s.size(); ++iu) {
    Word u = Word::from_index(iu);
    for (std::size_t iv = iu; iv < s.size(); ++iv) {
      Word v = Word::from_index(iv);
      if (u.len + v.len > N) break;
      T acc = s[u] * s[v];
      for (const auto& [w, m] : shuffle_words(u, v)) acc -= s[w] * T(static_cast<long>(m));
      T d = magnitude(acc);
      if (best.defect < d) best = {d, u, v};
    }
  }
  return best;
}

template <class T>
NCSeries<double> to_double_series(const NCSeries<T>& s) {
  NCSeries<double> r(s.truncation());
  for (std::size_t i = 0; i < s.size(); ++i) r.data()[i] = to_double(s.data()[i]);
  return r;
}

template <class T>
std::string series_to_string(const NCSeries<T>& s, int max_terms = 64);

}  // namespace smz

#endif
