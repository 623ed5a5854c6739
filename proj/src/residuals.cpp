#include "udp6/residuals.hpp"

#include <stdexcept>
#include <utility>
#include <vector>

namespace udp6 {

std::string Balance::describe() const {
  if (holds()) return lhs.to_string() + " = " + rhs.to_string();
  std::string out = lhs.to_string() + " != " + rhs.to_string();
  if (lhs.is_finite() && rhs.is_finite()) out += " (gap " + to_string(Rational(lhs.value() - rhs.value())) + ")";
  return out;
}

namespace {

void require_unsigned(const Params& p) {
  require_constraint(p);
  if (!p.all_signs_positive())
    throw std::invalid_argument("residual needs all parameter signs +1; use the signed residuals");
}

ExtendedAmplitude ea(const Rational& v) { return v; }

}  // namespace

Balance balance_zz(const Params& p, Index m, const ParityPair& y, const ParityPair& z, const ParityPair& z_next) {
  require_unsigned(p);
  const Rational& Y = y.amp;
  const Rational W = z.amp + z_next.amp;
  const Rational B34 = p.B(3) + p.B(4);
  const Rational mQ = mq(p, m);

  const Rational U = rmax(Rational(2 * Y), Rational(p.A(3) + p.A(4)));
  const Rational U1 = rmax(p.A(3), p.A(4)) + Y;
  const Rational V = rmax(Rational(2 * mQ + p.A(1) + p.A(2)), Rational(2 * Y));
  const Rational V1 = rmax(p.A(1), p.A(2)) + mQ + Y;

  const bool y_plus = y.sign == Sign::plus;
  const bool zz_plus = z.sign * z_next.sign == Sign::plus;

  if (y_plus && zz_plus)
    return {tmax(ea(U + W), ea(V1 + B34)), tmax(ea(V + B34), ea(U1 + W))};
  if (y_plus)
    return {tmax(ea(U1 + W), ea(V1 + B34)), tmax(ea(V + B34), ea(U + W))};
  if (zz_plus) {
    const Rational lhs = W + rmax(p.A(3), Y) + rmax(p.A(4), Y);
    const Rational rhs = B34 + rmax(Rational(mQ + p.A(1)), Y) + rmax(Rational(mQ + p.A(2)), Y);
    return {lhs, rhs};
  }
  // y_m = -1, z_m z_{m+1} = -1: every term drops from the left side.
  return {ExtendedAmplitude::bottom(), tmax({ea(U + W), ea(V1 + B34), ea(V + B34), ea(U1 + W)})};
}

bool residual_zz(const Params& p, Index m, const ParityPair& y, const ParityPair& z, const ParityPair& z_next) {
  return balance_zz(p, m, y, z, z_next).holds();
}

Balance balance_yy(const Params& p, Index m, const ParityPair& y, const ParityPair& y_next, const ParityPair& z_next) {
  require_unsigned(p);
  const Rational& Z = z_next.amp;
  const Rational W = y.amp + y_next.amp;
  const Rational A34 = p.A(3) + p.A(4);
  const Rational mQ = mq(p, m);

  const Rational U = rmax(Rational(2 * Z), Rational(p.B(3) + p.B(4)));
  const Rational U1 = rmax(p.B(3), p.B(4)) + Z;
  const Rational V = rmax(Rational(2 * mQ + p.B(1) + p.B(2)), Rational(2 * Z));
  const Rational V1 = rmax(p.B(1), p.B(2)) + mQ + Z;

  const bool z_plus = z_next.sign == Sign::plus;
  const bool yy_plus = y.sign * y_next.sign == Sign::plus;

  if (z_plus && yy_plus)
    return {tmax(ea(U + W), ea(V1 + A34)), tmax(ea(V + A34), ea(U1 + W))};
  if (z_plus)
    return {tmax(ea(U1 + W), ea(V1 + A34)), tmax(ea(V + A34), ea(U + W))};
  if (yy_plus) {
    const Rational lhs = W + rmax(p.B(3), Z) + rmax(p.B(4), Z);
    const Rational rhs = A34 + rmax(Rational(mQ + p.B(1)), Z) + rmax(Rational(mQ + p.B(2)), Z);
    return {lhs, rhs};
  }
  return {ExtendedAmplitude::bottom(), tmax({ea(U + W), ea(V1 + A34), ea(V + A34), ea(U1 + W)})};
}

bool residual_yy(const Params& p, Index m, const ParityPair& y, const ParityPair& y_next, const ParityPair& z_next) {
  return balance_yy(p, m, y, y_next, z_next).holds();
}

// ---------------------------------------------------------------------------
// Eight-term signed equations. Each entry (amplitude, sigma) contributes
// amplitude + S(sigma) to the left side and amplitude + S(-sigma) to the right.

namespace {

using SignedTerm = std::pair<Rational, Sign>;

Balance distribute(const std::vector<SignedTerm>& terms) {
  ExtendedAmplitude lhs, rhs;
  for (const auto& [amp, sigma] : terms) {
    if (sigma == Sign::plus)
      lhs = tmax(lhs, amp);
    else
      rhs = tmax(rhs, amp);
  }
  return {lhs, rhs};
}

}  // namespace

Balance balance_zz_signed(const Params& p, Index m, const ParityPair& y, const ParityPair& z,
                          const ParityPair& z_next) {
  require_constraint(p);
  const Rational& Y = y.amp;
  const Rational W = z.amp + z_next.amp;
  const Rational B34 = p.B(3) + p.B(4);
  const Rational mQ = mq(p, m);
  const Sign zz = z.sign * z_next.sign;
  const Sign b34 = p.b_s(3) * p.b_s(4);

  return distribute({
      {2 * mQ + p.A(1) + p.A(2) + B34, -(p.a_s(1) * p.a_s(2) * b34)},
      {2 * Y + B34, -b34},
      {Y + mQ + p.A(1) + B34, p.a_s(1) * b34 * y.sign},
      {Y + mQ + p.A(2) + B34, p.a_s(2) * b34 * y.sign},
      {2 * Y + W, zz},
      {W + p.A(3) + p.A(4), p.a_s(3) * p.a_s(4) * zz},
      {Y + W + p.A(3), -(p.a_s(3) * y.sign * zz)},
      {Y + W + p.A(4), -(p.a_s(4) * y.sign * zz)},
  });
}

bool residual_zz_signed(const Params& p, Index m, const ParityPair& y, const ParityPair& z, const ParityPair& z_next) {
  return balance_zz_signed(p, m, y, z, z_next).holds();
}

Balance balance_yy_signed(const Params& p, Index m, const ParityPair& y, const ParityPair& y_next,
                          const ParityPair& z_next) {
  require_constraint(p);
  const Rational& Z = z_next.amp;
  const Rational W = y.amp + y_next.amp;
  const Rational A34 = p.A(3) + p.A(4);
  const Rational mQ = mq(p, m);
  const Sign yy = y.sign * y_next.sign;
  const Sign a34 = p.a_s(3) * p.a_s(4);

  return distribute({
      {2 * mQ + A34 + p.B(1) + p.B(2), -(a34 * p.b_s(1) * p.b_s(2))},
      {2 * Z + A34, -a34},
      {Z + mQ + A34 + p.B(1), a34 * p.b_s(1) * z_next.sign},
      {Z + mQ + A34 + p.B(2), a34 * p.b_s(2) * z_next.sign},
      {2 * Z + W, yy},
      {W + p.B(3) + p.B(4), p.b_s(3) * p.b_s(4) * yy},
      {W + Z + p.B(3), -(p.b_s(3) * yy * z_next.sign)},
      {W + Z + p.B(4), -(p.b_s(4) * yy * z_next.sign)},
  });
}

bool residual_yy_signed(const Params& p, Index m, const ParityPair& y, const ParityPair& y_next,
                        const ParityPair& z_next) {
  return balance_yy_signed(p, m, y, y_next, z_next).holds();
}

}  // namespace udp6
