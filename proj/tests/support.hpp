#pragma once

// Shared test helpers: a seeded generator and independent evaluators of the
// max-plus equations written straight from their displayed term lists.

#include <cstdint>
#include <optional>
#include <vector>

#include "udp6/evolution.hpp"
#include "udp6/params.hpp"
#include "udp6/tropical.hpp"

namespace testing_support {

using namespace udp6;

// SplitMix64 with modulo mapping; output is identical on every platform.
class Gen {
 public:
  explicit Gen(std::uint64_t seed) : s_(seed) {}

  std::uint64_t next() {
    std::uint64_t z = (s_ += 0x9e3779b97f4a7c15ULL);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
  }
  long uniform(long lo, long hi) { return lo + static_cast<long>(next() % static_cast<std::uint64_t>(hi - lo + 1)); }
  bool coin() { return next() & 1; }
  Sign sign() { return coin() ? Sign::plus : Sign::minus; }
  // Small rationals with denominators 1, 2 or 3.
  Rational small_rational(long range) {
    const long den = uniform(1, 3);
    Rational r(uniform(-range * den, range * den), den);
    r.canonicalize();
    return r;
  }
  template <class T>
  const T& pick(const std::vector<T>& v) {
    return v[static_cast<std::size_t>(uniform(0, static_cast<long>(v.size()) - 1))];
  }

 private:
  std::uint64_t s_;
};

inline Params random_constrained_params(Gen& g, long range = 50) {
  Params p;
  p.q = g.uniform(1, 2 * range);
  for (auto& v : p.a) v = g.uniform(-range, range);
  for (auto& v : p.b) v = g.uniform(-range, range);
  p.b[0] = p.q + p.a[0] + p.a[1] + p.b[2] + p.b[3] - p.b[1] - p.a[2] - p.a[3];
  return p;
}

inline Params random_riccati_params(Gen& g, long range = 50) {
  Params p;
  p.q = g.uniform(1, 2 * range);
  for (auto& v : p.a) v = g.uniform(-range, range);
  for (auto& v : p.b) v = g.uniform(-range, range);
  p.b[0] = p.q + p.a[0] + p.b[2] - p.a[2];
  p.b[1] = p.a[1] + p.b[3] - p.a[3];
  return p;
}

// Random parameter signs with a1 a2 a3 a4 = b1 b2 b3 b4.
inline void randomize_signs(Gen& g, Params& p) {
  int prod = 1;
  for (auto& s : p.a_sign) {
    s = g.sign();
    prod *= to_int(s);
  }
  for (std::size_t i = 0; i < 3; ++i) {
    p.b_sign[i] = g.sign();
    prod *= to_int(p.b_sign[i]);
  }
  p.b_sign[3] = prod == 1 ? Sign::plus : Sign::minus;
}

// One term of a displayed equation: amplitude plus a parity factor that is
// a product of signs; the term is dropped when that product is -1.
struct Term {
  Rational amp;
  int parity;
};

inline std::optional<Rational> side_max(const std::vector<Term>& terms) {
  std::optional<Rational> best;
  for (const auto& t : terms)
    if (t.parity == 1 && (!best || *best < t.amp)) best = t.amp;
  return best;
}

inline bool sides_equal(const std::vector<Term>& lhs, const std::vector<Term>& rhs) {
  return side_max(lhs) == side_max(rhs);
}

inline int s(Sign x) { return to_int(x); }

// Eight-term zz equation with parameter signs.
inline bool oracle_zz(const Params& p, Index m, const ParityPair& y, const ParityPair& z, const ParityPair& zn) {
  const Rational mQ = Rational(m) * p.q;
  const Rational& Y = y.amp;
  const Rational Zs = z.amp + zn.amp;
  const int a1 = s(p.a_s(1)), a2 = s(p.a_s(2)), a3 = s(p.a_s(3)), a4 = s(p.a_s(4));
  const int b3 = s(p.b_s(3)), b4 = s(p.b_s(4));
  const int fy = s(y.sign), fzz = s(z.sign) * s(zn.sign);
  const Rational B34 = p.B(3) + p.B(4);

  std::vector<Term> lhs{
      {2 * mQ + p.A(1) + p.A(2) + B34, -a1 * a2 * b3 * b4},
      {2 * Y + B34, -b3 * b4},
      {Y + mQ + p.A(1) + B34, a1 * b3 * b4 * fy},
      {Y + mQ + p.A(2) + B34, a2 * b3 * b4 * fy},
      {2 * Y + Zs, fzz},
      {Zs + p.A(3) + p.A(4), a3 * a4 * fzz},
      {Y + Zs + p.A(3), -a3 * fy * fzz},
      {Y + Zs + p.A(4), -a4 * fy * fzz},
  };
  std::vector<Term> rhs = lhs;
  for (auto& t : rhs) t.parity = -t.parity;
  return sides_equal(lhs, rhs);
}

inline bool oracle_yy(const Params& p, Index m, const ParityPair& y, const ParityPair& yn, const ParityPair& zn) {
  const Rational mQ = Rational(m) * p.q;
  const Rational& Z = zn.amp;
  const Rational Ys = y.amp + yn.amp;
  const int a3 = s(p.a_s(3)), a4 = s(p.a_s(4));
  const int b1 = s(p.b_s(1)), b2 = s(p.b_s(2)), b3 = s(p.b_s(3)), b4 = s(p.b_s(4));
  const int fz = s(zn.sign), fyy = s(y.sign) * s(yn.sign);
  const Rational A34 = p.A(3) + p.A(4);

  std::vector<Term> lhs{
      {2 * mQ + A34 + p.B(1) + p.B(2), -a3 * a4 * b1 * b2},
      {2 * Z + A34, -a3 * a4},
      {Z + mQ + A34 + p.B(1), a3 * a4 * b1 * fz},
      {Z + mQ + A34 + p.B(2), a3 * a4 * b2 * fz},
      {2 * Z + Ys, fyy},
      {Ys + p.B(3) + p.B(4), b3 * b4 * fyy},
      {Ys + Z + p.B(3), -b3 * fyy * fz},
      {Ys + Z + p.B(4), -b4 * fyy * fz},
  };
  std::vector<Term> rhs = lhs;
  for (auto& t : rhs) t.parity = -t.parity;
  return sides_equal(lhs, rhs);
}

// Riccati equations as displayed, with the constant term always present.
inline bool oracle_r2(const Params& p, Index m, const ParityPair& y, const ParityPair& zn) {
  const int fy = s(y.sign), fz = s(zn.sign);
  const Rational &Y = y.amp, &Z = zn.amp;
  std::vector<Term> lhs{{Rational(m) * p.q + p.A(2) + p.B(4), 1},
                        {Z + p.A(4), -fz},
                        {Y + p.B(4), -fy},
                        {Y + Z, fy * fz}};
  std::vector<Term> rhs{{Z + p.A(4), fz}, {Y + p.B(4), fy}, {Y + Z, -fy * fz}};
  return sides_equal(lhs, rhs);
}

inline bool oracle_r1(const Params& p, Index m, const ParityPair& yn, const ParityPair& zn) {
  const int fy = s(yn.sign), fz = s(zn.sign);
  const Rational &Y = yn.amp, &Z = zn.amp;
  std::vector<Term> lhs{{Rational(m) * p.q + p.A(3) + p.B(1), 1},
                        {Y + p.B(3), -fy},
                        {Z + p.A(3), -fz},
                        {Y + Z, fy * fz}};
  std::vector<Term> rhs{{Z + p.A(3), fz}, {Y + p.B(3), fy}, {Y + Z, -fy * fz}};
  return sides_equal(lhs, rhs);
}

inline bool oracle_table_ok(const Params& p, const SolutionTable& t) {
  for (Index m = t.first(); m < t.last(); ++m) {
    const auto &c = t.at(m), &n = t.at(m + 1);
    if (!oracle_zz(p, m, c.y, c.z, n.z) || !oracle_yy(p, m, c.y, n.y, n.z)) return false;
  }
  return true;
}

inline bool oracle_riccati_table_ok(const Params& p, const SolutionTable& t) {
  for (Index m = t.first() - 1; m < t.last(); ++m) {
    const auto& n = t.at(m + 1);
    if (!oracle_r1(p, m, n.y, n.z)) return false;
    if (m >= t.first() && !oracle_r2(p, m, t.at(m).y, n.z)) return false;
  }
  return true;
}

// Members of {x : pred(x)} on a quarter grid, collected into runs. Exact
// when every breakpoint is a half-integer inside (-radius, radius).
template <class Pred>
SolutionSet grid_set(Pred pred, long radius) {
  std::vector<Interval> pieces;
  std::optional<Rational> run_start, run_end;
  bool run_open_left = false;
  const long lo = -4 * radius, hi = 4 * radius;
  for (long k = lo; k <= hi; ++k) {
    Rational x(k, 4);
    x.canonicalize();
    if (pred(x)) {
      if (!run_start) {
        run_start = x;
        run_open_left = k == lo;
      }
      run_end = x;
    } else if (run_start) {
      pieces.push_back({run_open_left ? std::nullopt : run_start, run_end});
      run_start.reset();
    }
  }
  if (run_start) pieces.push_back({run_open_left ? std::nullopt : run_start, std::nullopt});
  return SolutionSet(std::move(pieces));
}

// One-unknown equations with integer intercepts and slopes in {0, 1, 2}.
inline SolutionSet grid_solution(const std::vector<LinTerm>& lhs, const std::vector<LinTerm>& rhs, long radius) {
  const auto side = [](const std::vector<LinTerm>& terms, const Rational& x) {
    ExtendedAmplitude best;
    for (const auto& t : terms) best = tmax(best, t.at(x));
    return best;
  };
  return grid_set([&](const Rational& x) { return side(lhs, x) == side(rhs, x); }, radius);
}

}  // namespace testing_support
