#ifndef SMZ_RATIONAL_HPP
#define SMZ_RATIONAL_HPP

#include <gmpxx.h>

#include <cmath>
#include <complex>
#include <string>

namespace smz {

using Rational = mpq_class;

inline double to_double(double v) { return v; }
inline double to_double(long long v) { return static_cast<double>(v); }
inline double to_double(const Rational& v) { return v.get_d(); }

inline double magnitude(double v) { return std::abs(v); }
inline double magnitude(const std::complex<double>& v) { return std::abs(v); }
inline Rational magnitude(const Rational& v) { return abs(v); }
inline long long magnitude(long long v) { return v < 0 ? -v : v; }

inline bool is_zero(double v) { return v == 0.0; }
inline bool is_zero(long long v) { return v == 0; }
inline bool is_zero(const Rational& v) { return sgn(v) == 0; }
inline bool is_zero(const std::complex<double>& v) { return v == std::complex<double>(0.0, 0.0); }

inline std::string to_string(const Rational& v) { return v.get_str(); }

// p/q as the requested scalar type.
template <class T>
T ratio(long long p, long long q) {
  if constexpr (std::is_same_v<T, Rational>) {
    Rational r{mpz_class(static_cast<long>(p)), mpz_class(static_cast<long>(q))};
    r.canonicalize();
    return r;
  } else {
    return T(static_cast<double>(p) / static_cast<double>(q));
  }
}

}  // namespace smz

#endif
