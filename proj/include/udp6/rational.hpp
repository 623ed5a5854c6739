#pragma once

#include <gmpxx.h>

#include <compare>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <string_view>

namespace udp6 {

/// Exact rational number. Amplitudes, parameters and step sizes all live here.
///
/// gmpxx uses expression templates, so always bind results to a `Rational`,
/// never to `auto`.
using Rational = mpq_class;

/// Integer lattice index m of the discrete time t = q^m.
using Index = long;

class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Malformed text input (rational literal, sign, JSON field, table row).
class ParseError : public Error {
 public:
  using Error::Error;
};

/// Parameter constraint (amplitude or sign identity) not satisfied.
class ConstraintError : public Error {
 public:
  using Error::Error;
};

/// Parses "p", "-p", "p/q" (q > 0). The result is canonical.
Rational parse_rational(std::string_view text);

/// "p" for integers, "p/q" otherwise.
std::string to_string(const Rational& value);

inline bool is_integer(const Rational& value) { return value.get_den() == 1; }

inline Rational rmax(const Rational& a, const Rational& b) { return a < b ? b : a; }
inline Rational rmin(const Rational& a, const Rational& b) { return b < a ? b : a; }

inline std::strong_ordering compare(const Rational& a, const Rational& b) {
  const int c = cmp(a, b);
  if (c < 0) return std::strong_ordering::less;
  if (c > 0) return std::strong_ordering::greater;
  return std::strong_ordering::equal;
}

}  // namespace udp6
