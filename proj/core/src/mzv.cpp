#include "smz/mzv.hpp"

#include <algorithm>
#include <cmath>
#include <mutex>
#include <sstream>
#include <stdexcept>

namespace smz {

int weight(const MZVIndex& k) {
  int w = 0;
  for (int x : k) w += x;
  return w;
}

bool is_admissible(const MZVIndex& k) {
  if (k.empty()) return false;
  for (int x : k)
    if (x < 1) return false;
  return k.back() >= 2;
}

void require_admissible(const MZVIndex& k) {
  if (!is_admissible(k)) throw std::domain_error("non-admissible MZV index " + index_to_string(k));
}

std::string index_to_string(const MZVIndex& k) {
  std::string s = "(";
  for (std::size_t i = 0; i < k.size(); ++i) {
    if (i) s += ",";
    s += std::to_string(k[i]);
  }
  return s + ")";
}

MZVIndex parse_index(const std::string& text) {
  MZVIndex k;
  std::string cur;
  auto flush = [&] {
    if (cur.empty()) return;
    std::size_t used = 0;
    int v = std::stoi(cur, &used);
    if (used != cur.size()) throw std::invalid_argument("bad MZV index: " + text);
    k.push_back(v);
    cur.clear();
  };
  for (char ch : text) {
    if (ch == '(' || ch == ')' || ch == ' ') continue;
    if (ch == ',') {
      flush();
      continue;
    }
    cur += ch;
  }
  flush();
  if (k.empty()) throw std::invalid_argument("empty MZV index");
  return k;
}

// Iterated integrals are split at 1/2: for a convergent word w = uv,
//   I(0;w;1) = sum_{w=uv} I(1/2;u;1) I(0;v;1/2),
// and I(1/2;u;1) = I(0; reverse(swap(u)); 1/2). Every factor is then a power
// series in z evaluated at z = 1/2, whose coefficients are nested harmonic
// sums; the tail after `cutoff` terms decays like 2^{-cutoff}.
namespace {

long double series_at_half(const Word& v, int cutoff) {
  if (v.len == 0) return 1.0L;
  if (v.at(v.len - 1) != Letter::Y) throw std::logic_error("series_at_half: word must end with Y");
  std::vector<long double> c(cutoff + 1, 0.0L);
  for (int N = 1; N <= cutoff; ++N) c[N] = 1.0L / N;
  for (int i = v.len - 2; i >= 0; --i) {
    if (v.at(i) == Letter::X) {
      for (int N = 1; N <= cutoff; ++N) c[N] /= N;
    } else {
      long double run = 0;
      for (int N = 1; N <= cutoff; ++N) {
        long double prev = c[N];
        c[N] = run / N;
        run += prev;
      }
    }
  }
  long double z = 0.5L, p = 1.0L, s = 0;
  for (int N = 1; N <= cutoff; ++N) {
    p *= z;
    s += c[N] * p;
  }
  return s;
}

double tail_bound(int len, int cutoff) {
  return 3.0 * std::pow(1.0 + std::log(cutoff + 1.0), len) * std::ldexp(1.0, -(cutoff + 1));
}

struct SplitResult {
  long double value;
  double bound;
};

SplitResult convergent_word_value(const Word& w, int cutoff) {
  long double total = 0;
  for (int j = 0; j <= w.len; ++j) {
    Word u = w.prefix(j), v = w.suffix_from(j);
    total += series_at_half(u.swapped().reversed(), cutoff) * series_at_half(v, cutoff);
  }
  double e = tail_bound(w.len, cutoff);
  double bound = (w.len + 1) * (2 * e + e * e) + 1e-17 * (w.len + 1) * cutoff;
  return {total, bound};
}

}  // namespace

MZVValue mzv_eval_cutoff(const MZVIndex& k, int cutoff) {
  require_admissible(k);
  if (weight(k) > mzv_max_weight)
    throw std::domain_error("MZV weight above " + std::to_string(mzv_max_weight) + " not supported");
  if (cutoff < 8) throw std::invalid_argument("cutoff too small");
  auto r = convergent_word_value(index_to_word(k), cutoff);
  return {static_cast<double>(r.value), r.bound, cutoff};
}

MZVValue mzv_eval(const MZVIndex& k, double abs_err) {
  require_admissible(k);
  if (weight(k) > mzv_max_weight)
    throw std::domain_error("MZV weight above " + std::to_string(mzv_max_weight) + " not supported");
  if (!(abs_err >= mzv_min_abs_err)) throw std::domain_error("requested abs_err is below 1e-13");
  const int len = weight(k);
  int cutoff = 40;
  while ((len + 1) * 2.2 * tail_bound(len, cutoff) > abs_err / 2) cutoff += 4;
  auto r = convergent_word_value(index_to_word(k), cutoff);
  return {static_cast<double>(r.value), r.bound, cutoff};
}

std::map<MZVIndex, long long> stuffle_indices(const MZVIndex& a, const MZVIndex& b) {
  std::map<MZVIndex, long long> out;
  if (a.empty()) {
    out[b] = 1;
    return out;
  }
  if (b.empty()) {
    out[a] = 1;
    return out;
  }
  MZVIndex a1(a.begin(), a.end() - 1), b1(b.begin(), b.end() - 1);
  auto add = [&](const std::map<MZVIndex, long long>& part, int last) {
    for (const auto& [key, c] : part) {
      MZVIndex idx = key;
      idx.push_back(last);
      out[idx] += c;
    }
  };
  add(stuffle_indices(a1, b), a.back());
  add(stuffle_indices(a, b1), b.back());
  add(stuffle_indices(a1, b1), a.back() + b.back());
  return out;
}

Word index_to_word(const MZVIndex& k) {
  if (k.empty()) throw std::invalid_argument("empty index");
  Word w;
  for (auto it = k.rbegin(); it != k.rend(); ++it) {
    if (*it < 1) throw std::invalid_argument("index entries must be positive");
    for (int j = 0; j < *it - 1; ++j) w = w.concat(letter_word(Letter::X));
    w = w.concat(letter_word(Letter::Y));
  }
  return w;
}

MZVIndex word_to_index(const Word& w) {
  if (w.len == 0 || w.at(0) != Letter::X || w.at(w.len - 1) != Letter::Y)
    throw std::domain_error("word must start with X and end with Y: " + w.str());
  MZVIndex rev;
  int run = 0;
  for (int i = 0; i < w.len; ++i) {
    if (w.at(i) == Letter::X) {
      ++run;
    } else {
      rev.push_back(run + 1);
      run = 0;
    }
  }
  return MZVIndex(rev.rbegin(), rev.rend());
}

MZVCombo& MZVCombo::operator+=(const MZVCombo& o) {
  constant += o.constant;
  for (const auto& [k, q] : o.terms) terms[k] += q;
  prune();
  return *this;
}

MZVCombo& MZVCombo::operator*=(const Rational& q) {
  constant *= q;
  for (auto& [k, c] : terms) c *= q;
  prune();
  return *this;
}

bool MZVCombo::is_zero() const { return sgn(constant) == 0 && terms.empty(); }

void MZVCombo::prune() {
  for (auto it = terms.begin(); it != terms.end();) {
    if (sgn(it->second) == 0)
      it = terms.erase(it);
    else
      ++it;
  }
}

namespace {
std::mutex g_cache_mutex;
std::map<MZVIndex, double> g_cache;

double cached_value(const MZVIndex& k, double abs_err) {
  if (abs_err <= 1e-13 + 1e-30) {
    std::lock_guard<std::mutex> lock(g_cache_mutex);
    auto it = g_cache.find(k);
    if (it != g_cache.end()) return it->second;
  }
  double v = mzv_eval(k, abs_err).value;
  if (abs_err <= 1e-13 + 1e-30) {
    std::lock_guard<std::mutex> lock(g_cache_mutex);
    g_cache[k] = v;
  }
  return v;
}
}  // namespace

double MZVCombo::evaluate(double abs_err) const {
  double s = constant.get_d();
  for (const auto& [k, q] : terms) s += q.get_d() * cached_value(k, abs_err);
  return s;
}

std::string MZVCombo::str() const {
  std::ostringstream os;
  bool first = true;
  if (sgn(constant) != 0 || terms.empty()) {
    os << constant.get_str();
    first = false;
  }
  for (const auto& [k, q] : terms) {
    if (!first) os << (sgn(q) < 0 ? " - " : " + ");
    else if (sgn(q) < 0) os << "-";
    Rational a = abs(q);
    if (a != 1) os << a.get_str() << "*";
    os << "z" << index_to_string(k);
    first = false;
  }
  return os.str();
}

namespace {

int leading(const Word& w, Letter a) {
  int r = 0;
  while (r < w.len && w.at(r) == a) ++r;
  return r;
}

int trailing(const Word& w, Letter a) {
  int r = 0;
  while (r < w.len && w.at(w.len - 1 - r) == a) ++r;
  return r;
}

MZVCombo regularize_rec(const Word& w, std::map<Word, MZVCombo>& memo) {
  auto it = memo.find(w);
  if (it != memo.end()) return it->second;
  MZVCombo out;
  if (w.len == 0) {
    out.constant = 1;
  } else if (int r = trailing(w, Letter::X); r > 0) {
    // (u' X^{r-1}) ш X = r w + sum over insertions of X inside u'.
    Word core = w.prefix(w.len - r);
    if (core.len > 0) {
      Word tail = w.suffix_from(core.len + 1);  // X^{r-1}
      for (int i = 0; i < core.len; ++i) out += regularize_rec(core.insert(i, Letter::X).concat(tail), memo);
      out *= Rational(-1, r);
    }
  } else if (int l = leading(w, Letter::Y); l > 0) {
    // Y ш (Y^{l-1} u') = l w + sum over insertions of Y after the first letter of u'.
    Word rest = w.suffix_from(1);  // Y^{l-1} u'
    int ulen = w.len - l;
    if (ulen > 0) {
      for (int j = 1; j <= ulen; ++j) out += regularize_rec(rest.insert(l - 1 + j, Letter::Y), memo);
      out *= Rational(-1, l);
    }
  } else {
    out.terms[word_to_index(w)] = 1;
  }
  memo[w] = out;
  return out;
}

}  // namespace

MZVCombo shuffle_regularize(const Word& w) {
  static thread_local std::map<Word, MZVCombo> memo;
  return regularize_rec(w, memo);
}

double DoubleShuffleDefect::max_defect() const {
  return std::max(std::abs(product - shuffle_sum), std::abs(product - stuffle_sum));
}

DoubleShuffleDefect double_shuffle_defect(const MZVIndex& u, const MZVIndex& v) {
  DoubleShuffleDefect d;
  d.product = mzv_eval(u).value * mzv_eval(v).value;
  for (const auto& [w, c] : shuffle_words(index_to_word(u), index_to_word(v)))
    d.shuffle_sum += static_cast<double>(c) * mzv_eval(word_to_index(w)).value;
  for (const auto& [k, c] : stuffle_indices(u, v)) d.stuffle_sum += static_cast<double>(c) * mzv_eval(k).value;
  return d;
}

std::vector<MZVIndex> admissible_indices(int w) {
  std::vector<MZVIndex> out;
  if (w < 2) return out;
  // compositions of w whose last part is >= 2
  for (std::uint32_t mask = 0; mask < (1u << (w - 1)); ++mask) {
    MZVIndex k;
    int run = 1;
    for (int i = 0; i < w - 1; ++i) {
      if (mask & (1u << i)) {
        k.push_back(run);
        run = 1;
      } else {
        ++run;
      }
    }
    k.push_back(run);
    if (is_admissible(k)) out.push_back(k);
  }
  std::sort(out.begin(), out.end());
  return out;
}

MZVCombo HRElement::coeff(const Word& w) const {
  auto it = coeffs.find(w);
  return it == coeffs.end() ? MZVCombo{} : it->second;
}

bool HRElement::weight_graded() const {
  for (const auto& [w, c] : coeffs) {
    if (w.len == 0) {
      if (!c.terms.empty()) return false;
      continue;
    }
    if (sgn(c.constant) != 0) return false;
    for (const auto& [k, q] : c.terms)
      if (weight(k) != w.len) return false;
  }
  return true;
}

NCSeries<double> HRElement::evaluate(double abs_err) const {
  NCSeries<double> s(N);
  for (const auto& [w, c] : coeffs)
    if (w.len <= N) s[w] = c.evaluate(abs_err);
  return s;
}

std::string HRElement::str() const {
  std::ostringstream os;
  bool first = true;
  for (const auto& [w, c] : coeffs) {
    if (!first) os << "\n";
    os << w.str() << ": " << c.str();
    first = false;
  }
  return os.str();
}

}  // namespace smz
