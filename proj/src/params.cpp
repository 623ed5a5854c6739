#include "udp6/params.hpp"

#include <algorithm>

namespace udp6 {

bool Params::all_signs_positive() const {
  const auto pos = [](Sign s) { return s == Sign::plus; };
  return std::all_of(a_sign.begin(), a_sign.end(), pos) && std::all_of(b_sign.begin(), b_sign.end(), pos);
}

Params Params::shifted(const Rational& c) const {
  Params out = *this;
  for (auto& v : out.a) v += c;
  for (auto& v : out.b) v += c;
  return out;
}

Params Params::scaled(const Rational& factor) const {
  Params out = *this;
  out.q *= factor;
  for (auto& v : out.a) v *= factor;
  for (auto& v : out.b) v *= factor;
  return out;
}

Params make_params(long q, std::array<long, 4> a, std::array<long, 4> b) {
  Params p;
  p.q = q;
  for (std::size_t i = 0; i < 4; ++i) {
    p.a[i] = a[i];
    p.b[i] = b[i];
  }
  return p;
}

bool amplitude_constraint_holds(const Params& p) {
  return p.B(1) + p.B(2) + p.A(3) + p.A(4) == p.q + p.A(1) + p.A(2) + p.B(3) + p.B(4);
}

bool sign_constraint_holds(const Params& p) {
  return p.a_s(1) * p.a_s(2) * p.a_s(3) * p.a_s(4) == p.b_s(1) * p.b_s(2) * p.b_s(3) * p.b_s(4);
}

bool check_constraint(const Params& p) { return amplitude_constraint_holds(p) && sign_constraint_holds(p); }

void require_constraint(const Params& p) {
  if (!amplitude_constraint_holds(p)) {
    const Rational lhs = p.B(1) + p.B(2) + p.A(3) + p.A(4);
    const Rational rhs = p.q + p.A(1) + p.A(2) + p.B(3) + p.B(4);
    throw ConstraintError("parameter constraint B1+B2+A3+A4 = Q+A1+A2+B3+B4 violated: " + to_string(lhs) +
                          " != " + to_string(rhs));
  }
  if (!sign_constraint_holds(p))
    throw ConstraintError("parameter sign constraint sa1*sa2*sa3*sa4 = sb1*sb2*sb3*sb4 violated");
}

bool branch_order_less(const ParityPair& x, const ParityPair& y) {
  if (x.sign != y.sign) return x.sign == Sign::plus;
  return x.amp < y.amp;
}

std::string to_string(const ParityPair& v) {
  return (v.sign == Sign::plus ? "+1:" : "-1:") + to_string(v.amp);
}

ParityPair parse_parity_pair(std::string_view text) {
  const auto colon = text.find(':');
  if (colon == std::string_view::npos)
    throw ParseError("expected sign:amplitude, got '" + std::string(text) + "'");
  const std::string_view s = text.substr(0, colon);
  Sign sign;
  if (s == "1" || s == "+1" || s == "+")
    sign = Sign::plus;
  else if (s == "-1" || s == "-")
    sign = Sign::minus;
  else
    throw ParseError("sign must be +1 or -1 in '" + std::string(text) + "'");
  return {sign, parse_rational(text.substr(colon + 1))};
}

}  // namespace udp6
