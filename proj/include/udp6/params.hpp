#pragma once

#include <array>
#include <string>

#include "udp6/rational.hpp"
#include "udp6/tropical.hpp"

namespace udp6 {

/// The nine constants of the ultradiscrete system plus optional parameter
/// signs (all +1 unless given).
///
/// Accessors are 1-based to match the conventional A_1..A_4, B_1..B_4 labels.
struct Params {
  Rational q;
  std::array<Rational, 4> a;
  std::array<Rational, 4> b;
  std::array<Sign, 4> a_sign{Sign::plus, Sign::plus, Sign::plus, Sign::plus};
  std::array<Sign, 4> b_sign{Sign::plus, Sign::plus, Sign::plus, Sign::plus};

  const Rational& A(int i) const { return a.at(static_cast<std::size_t>(i - 1)); }
  const Rational& B(int i) const { return b.at(static_cast<std::size_t>(i - 1)); }
  Sign a_s(int i) const { return a_sign.at(static_cast<std::size_t>(i - 1)); }
  Sign b_s(int i) const { return b_sign.at(static_cast<std::size_t>(i - 1)); }

  bool all_signs_positive() const;

  /// A_i, B_i += c (Q fixed).
  Params shifted(const Rational& c) const;
  /// Q, A_i, B_i *= factor.
  Params scaled(const Rational& factor) const;

  friend bool operator==(const Params&, const Params&) = default;
};

/// Convenience constructor from integers, all parameter signs +1.
Params make_params(long q, std::array<long, 4> a, std::array<long, 4> b);

/// B1+B2+A3+A4 = Q+A1+A2+B3+B4.
bool amplitude_constraint_holds(const Params& p);
/// a1 a2 a3 a4 = b1 b2 b3 b4 (signs).
bool sign_constraint_holds(const Params& p);
/// Both of the above.
bool check_constraint(const Params& p);
/// Throws ConstraintError naming the violated identity.
void require_constraint(const Params& p);

/// One dynamical variable: parity and finite amplitude.
struct ParityPair {
  Sign sign = Sign::plus;
  Rational amp;

  ParityPair shifted(const Rational& c) const { return {sign, Rational(amp + c)}; }
  ParityPair scaled(const Rational& f) const { return {sign, Rational(amp * f)}; }

  friend bool operator==(const ParityPair& x, const ParityPair& y) { return x.sign == y.sign && x.amp == y.amp; }
};

/// Deterministic branch order: sign +1 first, then amplitude ascending.
bool branch_order_less(const ParityPair& x, const ParityPair& y);

/// "-1:43" style.
std::string to_string(const ParityPair& v);
/// Parses "sign:amplitude", e.g. "-1:43" or "+1:7/2".
ParityPair parse_parity_pair(std::string_view text);

/// One column (y_m, z_m) of a solution table.
struct StatePair {
  Index m = 0;
  ParityPair y;
  ParityPair z;

  friend bool operator==(const StatePair&, const StatePair&) = default;
};

inline Rational mq(const Params& p, Index m) { return Rational(Rational(m) * p.q); }

}  // namespace udp6
