#include "smz/ncalg.hpp"

#include <sstream>

namespace smz {

Word Word::parse(const std::string& s) {
  if (s.empty() || s == "1") return Word();
  if (s.size() > static_cast<std::size_t>(max_length)) throw std::invalid_argument("word too long");
  Word w;
  for (char ch : s) {
    std::uint32_t b;
    if (ch == 'X' || ch == 'x' || ch == '0')
      b = 0;
    else if (ch == 'Y' || ch == 'y')
      b = 1;
    else
      throw std::invalid_argument("bad letter in word: " + s);
    w.bits = (w.bits << 1) | b;
    ++w.len;
  }
  return w;
}

std::string Word::str() const {
  if (len == 0) return "1";
  std::string s;
  for (int i = 0; i < len; ++i) s += at(i) == Letter::X ? 'X' : 'Y';
  return s;
}

Word Word::concat(const Word& o) const {
  if (len + o.len > max_length) throw std::invalid_argument("word too long");
  return Word(static_cast<std::uint8_t>(len + o.len), (bits << o.len) | o.bits);
}

Word Word::reversed() const {
  Word r;
  r.len = len;
  for (int i = 0; i < len; ++i) r.bits |= ((bits >> i) & 1u) << (len - 1 - i);
  return r;
}

int Word::count(Letter a) const {
  int c = 0;
  for (int i = 0; i < len; ++i) c += at(i) == a;
  return c;
}

Word Word::insert(int pos, Letter a) const {
  return prefix(pos).concat(Word(1, static_cast<std::uint32_t>(a))).concat(suffix_from(pos));
}

Word Word::from_index(std::size_t idx) {
  std::uint8_t l = 0;
  while (((std::size_t{1} << (l + 1)) - 1) <= idx) ++l;
  return Word(l, static_cast<std::uint32_t>(idx - ((std::size_t{1} << l) - 1)));
}

Word letter_word(Letter a) { return Word(1, static_cast<std::uint32_t>(a)); }

namespace {

void shuffle_rec(const Word& u, int iu, const Word& v, int iv, Word acc, std::map<Word, long long>& out) {
  if (iu == u.len && iv == v.len) {
    ++out[acc];
    return;
  }
  if (iu < u.len) shuffle_rec(u, iu + 1, v, iv, acc.concat(Word(1, static_cast<std::uint32_t>(u.at(iu)))), out);
  if (iv < v.len) shuffle_rec(u, iu, v, iv + 1, acc.concat(Word(1, static_cast<std::uint32_t>(v.at(iv)))), out);
}

}  // namespace

std::map<Word, long long> shuffle_words(const Word& u, const Word& v) {
  std::map<Word, long long> out;
  shuffle_rec(u, 0, v, 0, Word(), out);
  return out;
}

template <class T>
std::string series_to_string(const NCSeries<T>& s, int max_terms) {
  std::ostringstream os;
  int shown = 0;
  for (std::size_t i = 0; i < s.size(); ++i) {
    const T& c = s.data()[i];
    if (is_zero(c)) continue;
    if (shown == max_terms) {
      os << " + ...";
      break;
    }
    if (shown) os << " + ";
    if constexpr (std::is_same_v<T, Rational>)
      os << c.get_str();
    else
      os << c;
    os << "*" << Word::from_index(i).str();
    ++shown;
  }
  if (shown == 0) os << "0";
  return os.str();
}

template std::string series_to_string<double>(const NCSeries<double>&, int);
template std::string series_to_string<Rational>(const NCSeries<Rational>&, int);

}  // namespace smz
