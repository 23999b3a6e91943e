#ifndef SMZ_POLY_HPP
#define SMZ_POLY_HPP

// Commutative polynomials in the symbols a_ij (1 <= i < j), and dense matrices
// over them.

#include "smz/rational.hpp"

#include <algorithm>
#include <cstdint>
#include <sstream>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace smz {

// Symbol id of a_ij, independent of n: pairs with j <= n use ids < n(n-1)/2.
inline int pair_symbol(int i, int j) {
  if (i == j || i < 1 || j < 1) throw std::invalid_argument("a_ii is not a symbol");
  if (i > j) std::swap(i, j);
  return (j - 1) * (j - 2) / 2 + (i - 1);
}
inline std::pair<int, int> symbol_pair(int s) {
  int j = 2;
  while ((j) * (j - 1) / 2 <= s) ++j;
  return {s - (j - 1) * (j - 2) / 2 + 1, j};
}
inline int symbol_count(int n) { return n * (n - 1) / 2; }

// Monomials packed into 64 bits: degree in the top nibble, then up to nine
// 6-bit symbol ids in ascending order.
namespace mono {
using Key = std::uint64_t;
constexpr int max_degree = 9;
constexpr int max_symbol = 63;

inline int degree(Key k) { return static_cast<int>(k >> 60); }
inline int symbol(Key k, int i) { return static_cast<int>((k >> (54 - 6 * i)) & 63u); }
inline Key one() { return 0; }
inline Key encode(const int* s, int d) {
  if (d > max_degree) throw std::overflow_error("monomial degree too large");
  Key k = static_cast<Key>(d) << 60;
  for (int i = 0; i < d; ++i) k |= static_cast<Key>(s[i]) << (54 - 6 * i);
  return k;
}
inline Key var(int s) {
  if (s < 0 || s > max_symbol) throw std::out_of_range("symbol id out of range");
  return encode(&s, 1);
}
inline Key mul(Key a, Key b) {
  const int da = degree(a), db = degree(b);
  int s[2 * max_degree];
  int ia = 0, ib = 0, m = 0;
  while (ia < da || ib < db) {
    if (ib == db || (ia < da && symbol(a, ia) <= symbol(b, ib)))
      s[m++] = symbol(a, ia++);
    else
      s[m++] = symbol(b, ib++);
  }
  return encode(s, m);
}
inline std::vector<int> symbols(Key k) {
  std::vector<int> out(degree(k));
  for (int i = 0; i < degree(k); ++i) out[i] = symbol(k, i);
  return out;
}
std::string to_string(Key k);
}  // namespace mono

template <class C>
class Poly {
 public:
  using Term = std::pair<mono::Key, C>;

  Poly() = default;
  static Poly constant(const C& c) {
    Poly p;
    if (!is_zero(c)) p.t_.push_back({mono::one(), c});
    return p;
  }
  static Poly symbol(int s, const C& c = C(1)) {
    Poly p;
    if (!is_zero(c)) p.t_.push_back({mono::var(s), c});
    return p;
  }
  static Poly a(int i, int j, const C& c = C(1)) { return symbol(pair_symbol(i, j), c); }

  bool zero() const { return t_.empty(); }
  const std::vector<Term>& terms() const { return t_; }
  std::size_t size() const { return t_.size(); }

  Poly& operator+=(const Poly& o) { return merge(o, 1); }
  Poly& operator-=(const Poly& o) { return merge(o, -1); }
  friend Poly operator+(Poly a, const Poly& b) { return a += b; }
  friend Poly operator-(Poly a, const Poly& b) { return a -= b; }
  Poly operator-() const {
    Poly r(*this);
    for (auto& [k, c] : r.t_) c = -c;
    return r;
  }
  Poly& operator*=(const C& s) {
    if (is_zero(s)) {
      t_.clear();
      return *this;
    }
    for (auto& [k, c] : t_) c *= s;
    return *this;
  }
  friend Poly operator*(Poly a, const C& s) { return a *= s; }

  friend Poly operator*(const Poly& a, const Poly& b) {
    Poly r;
    if (a.zero() || b.zero()) return r;
    r.t_.reserve(a.size() * b.size());
    for (const auto& [ka, ca] : a.t_)
      for (const auto& [kb, cb] : b.t_) r.t_.push_back({mono::mul(ka, kb), C(ca * cb)});
    r.normalize();
    return r;
  }
  // this += a * b without temporaries for the sum
  void add_product(const Poly& a, const Poly& b) {
    if (a.zero() || b.zero()) return;
    std::vector<Term> extra;
    extra.reserve(a.size() * b.size());
    for (const auto& [ka, ca] : a.t_)
      for (const auto& [kb, cb] : b.t_) extra.push_back({mono::mul(ka, kb), C(ca * cb)});
    t_.insert(t_.end(), extra.begin(), extra.end());
    normalize();
  }

  friend bool operator==(const Poly& a, const Poly& b) { return a.t_ == b.t_; }
  friend bool operator!=(const Poly& a, const Poly& b) { return !(a == b); }

  C coeff(mono::Key k) const {
    auto it = std::lower_bound(t_.begin(), t_.end(), k, [](const Term& t, mono::Key x) { return t.first < x; });
    return (it != t_.end() && it->first == k) ? it->second : C(0);
  }

  // max |coefficient|
  C max_abs() const {
    C m(0);
    for (const auto& [k, c] : t_) {
      C v = magnitude(c);
      if (m < v) m = v;
    }
    return m;
  }

  int max_degree() const {
    int d = -1;
    for (const auto& [k, c] : t_) d = std::max(d, mono::degree(k));
    return d;
  }

  template <class V>
  V evaluate(const std::vector<V>& values) const {
    V s(0);
    for (const auto& [k, c] : t_) {
      V m(1);
      for (int i = 0; i < mono::degree(k); ++i) m *= values.at(mono::symbol(k, i));
      if constexpr (std::is_same_v<C, Rational>)
        s += m * V(c.get_d());
      else
        s += m * V(c);
    }
    return s;
  }

  template <class D>
  Poly<D> cast() const {
    Poly<D> r;
    for (const auto& [k, c] : t_) r.push_raw(k, D(static_cast<long>(c)));
    return r;
  }
  void push_raw(mono::Key k, const C& c) { t_.push_back({k, c}); }

  std::string str() const;

 private:
  Poly& merge(const Poly& o, int sign) {
    if (o.zero()) return *this;
    std::vector<Term> out;
    out.reserve(t_.size() + o.t_.size());
    std::size_t i = 0, j = 0;
    while (i < t_.size() || j < o.t_.size()) {
      if (j == o.t_.size() || (i < t_.size() && t_[i].first < o.t_[j].first)) {
        out.push_back(t_[i++]);
      } else if (i == t_.size() || o.t_[j].first < t_[i].first) {
        out.push_back({o.t_[j].first, sign > 0 ? o.t_[j].second : C(-o.t_[j].second)});
        ++j;
      } else {
        C c = sign > 0 ? C(t_[i].second + o.t_[j].second) : C(t_[i].second - o.t_[j].second);
        if (!is_zero(c)) out.push_back({t_[i].first, c});
        ++i;
        ++j;
      }
    }
    t_.swap(out);
    return *this;
  }
  void normalize() {
    std::sort(t_.begin(), t_.end(), [](const Term& x, const Term& y) { return x.first < y.first; });
    std::size_t w = 0;
    for (std::size_t i = 0; i < t_.size();) {
      mono::Key k = t_[i].first;
      C c = t_[i].second;
      std::size_t j = i + 1;
      for (; j < t_.size() && t_[j].first == k; ++j) c += t_[j].second;
      if (!is_zero(c)) t_[w++] = {k, c};
      i = j;
    }
    t_.resize(w);
  }

  std::vector<Term> t_;
};

template <class C>
std::string Poly<C>::str() const {
  if (t_.empty()) return "0";
  std::ostringstream os;
  bool first = true;
  for (const auto& [k, c] : t_) {
    std::string cs;
    if constexpr (std::is_same_v<C, Rational>)
      cs = c.get_str();
    else {
      std::ostringstream tmp;
      tmp << c;
      cs = tmp.str();
    }
    const bool neg = !cs.empty() && cs[0] == '-';
    if (!first) os << (neg ? " - " : " + ");
    else if (neg) os << "-";
    std::string mag = neg ? cs.substr(1) : cs;
    if (mono::degree(k) == 0)
      os << mag;
    else {
      if (mag != "1") os << mag << "*";
      os << mono::to_string(k);
    }
    first = false;
  }
  return os.str();
}

template <class C>
class PolyMatrix {
 public:
  PolyMatrix() = default;
  PolyMatrix(int rows, int cols) : rows_(rows), cols_(cols), e_(static_cast<std::size_t>(rows) * cols) {}
  static PolyMatrix identity(int d) {
    PolyMatrix m(d, d);
    for (int i = 0; i < d; ++i) m(i, i) = Poly<C>::constant(C(1));
    return m;
  }

  int rows() const { return rows_; }
  int cols() const { return cols_; }
  Poly<C>& operator()(int i, int j) { return e_[static_cast<std::size_t>(i) * cols_ + j]; }
  const Poly<C>& operator()(int i, int j) const { return e_[static_cast<std::size_t>(i) * cols_ + j]; }

  PolyMatrix& operator+=(const PolyMatrix& o) {
    same_shape(o);
    for (std::size_t i = 0; i < e_.size(); ++i) e_[i] += o.e_[i];
    return *this;
  }
  PolyMatrix& operator-=(const PolyMatrix& o) {
    same_shape(o);
    for (std::size_t i = 0; i < e_.size(); ++i) e_[i] -= o.e_[i];
    return *this;
  }
  friend PolyMatrix operator+(PolyMatrix a, const PolyMatrix& b) { return a += b; }
  friend PolyMatrix operator-(PolyMatrix a, const PolyMatrix& b) { return a -= b; }

  friend PolyMatrix operator*(const PolyMatrix& a, const PolyMatrix& b) {
    if (a.cols_ != b.rows_) throw std::invalid_argument("matrix shape mismatch");
    PolyMatrix r(a.rows_, b.cols_);
    for (int i = 0; i < a.rows_; ++i)
      for (int j = 0; j < b.cols_; ++j) {
        std::vector<typename Poly<C>::Term> acc;
        for (int k = 0; k < a.cols_; ++k) {
          const Poly<C>& x = a(i, k);
          if (x.zero()) continue;
          const Poly<C>& y = b(k, j);
          if (y.zero()) continue;
          for (const auto& [ka, ca] : x.terms())
            for (const auto& [kb, cb] : y.terms()) acc.push_back({mono::mul(ka, kb), C(ca * cb)});
        }
        if (acc.empty()) continue;
        std::sort(acc.begin(), acc.end(), [](const auto& s, const auto& t) { return s.first < t.first; });
        Poly<C>& out = r(i, j);
        for (std::size_t s = 0; s < acc.size();) {
          mono::Key key = acc[s].first;
          C c = acc[s].second;
          std::size_t t = s + 1;
          for (; t < acc.size() && acc[t].first == key; ++t) c += acc[t].second;
          if (!is_zero(c)) out.push_raw(key, c);
          s = t;
        }
      }
    return r;
  }

  bool is_zero_matrix() const {
    for (const auto& p : e_)
      if (!p.zero()) return false;
    return true;
  }
  C max_abs_coeff() const {
    C m(0);
    for (const auto& p : e_) {
      C v = p.max_abs();
      if (m < v) m = v;
    }
    return m;
  }
  friend bool operator==(const PolyMatrix& a, const PolyMatrix& b) {
    return a.rows_ == b.rows_ && a.cols_ == b.cols_ && a.e_ == b.e_;
  }

  template <class D>
  PolyMatrix<D> cast() const {
    PolyMatrix<D> r(rows_, cols_);
    for (int i = 0; i < rows_; ++i)
      for (int j = 0; j < cols_; ++j) r(i, j) = (*this)(i, j).template cast<D>();
    return r;
  }

 private:
  void same_shape(const PolyMatrix& o) const {
    if (o.rows_ != rows_ || o.cols_ != cols_) throw std::invalid_argument("matrix shape mismatch");
  }
  int rows_ = 0, cols_ = 0;
  std::vector<Poly<C>> e_;
};

using AlphaPoly = Poly<Rational>;

}  // namespace smz

#endif
