#include "udp6/families.hpp"

#include <algorithm>
#include <cctype>
#include <functional>
#include <stdexcept>

#include "udp6/riccati.hpp"

namespace udp6 {

DerivedConstants compute_h(const Params& p) {
  return {p.A(3) + p.B(1) - p.A(2) - p.B(4), p.A(3) - p.A(4) - p.B(3) + p.B(4)};
}

namespace {

struct IdName {
  FamilyId id;
  const char* name;
};

constexpr IdName kNames[] = {
    {FamilyId::R1, "R1"},
    {FamilyId::R2, "R2"},
    {FamilyId::R3, "R3"},
    {FamilyId::R4, "R4"},
    {FamilyId::PConst, "PConst"},
    {FamilyId::PConstLow, "PConstLow"},
    {FamilyId::Sol0, "Sol0"},
    {FamilyId::SolN2, "SolN2"},
    {FamilyId::SolP, "SolP"},
    {FamilyId::LinAnsatz, "LinAnsatz"},
    {FamilyId::LinAnsatzPrime, "LinAnsatzPrime"},
};

std::string normalized(const std::string& s) {
  std::string out;
  for (char ch : s)
    if (ch != '-' && ch != '_') out += static_cast<char>(std::tolower(static_cast<unsigned char>(ch)));
  return out;
}

}  // namespace

FamilyId parse_family_id(const std::string& name) {
  const std::string key = normalized(name);
  for (const auto& n : kNames)
    if (normalized(n.name) == key) return n.id;
  throw ParseError("unknown family id '" + name + "'");
}

const char* to_string(FamilyId id) {
  for (const auto& n : kNames)
    if (n.id == id) return n.name;
  return "?";
}

const std::vector<FamilyInfo>& family_catalog() {
  static const std::vector<FamilyInfo> catalog{
      {FamilyId::R1, "c", "y_m = (-1, hm+c), z_{m+1} = (+1, (Q-h)m+A2+B4-c)"},
      {FamilyId::R2, "c", "y_m = (+1, hm+A2+B4-c), z_{m+1} = (-1, (Q-h)m+c)"},
      {FamilyId::R3, "c'", "y_m = (-1, h'm+c'), z_{m+1} = (+1, h'm+c'+B4-A4)"},
      {FamilyId::R4, "c'", "y_m = (+1, h'm+c'-B4+A4), z_{m+1} = (-1, h'm+c')"},
      {FamilyId::PConst, "", "y_m = (-1, A2+B4-B1), z_m = (+1, (m-1)Q+B1)"},
      {FamilyId::PConstLow, "", "y_m = (+1, A3), z_m = (+1, B4)"},
      {FamilyId::Sol0, "c", "global: R3-type for m <= 0, R1-type for m >= 1"},
      {FamilyId::SolN2, "c', m0 < 0", "global: (-1, h'm+c') up to m0, (+1, A3) to 0, (-1, hm+A2) after"},
      {FamilyId::SolP, "c, m0 > 0", "global: (+1, ...) for m <= -1, (-1, A2+B4-B1) to m0-1, (+1, hm+A2+B4-c) after"},
      {FamilyId::LinAnsatz, "alpha, beta, gamma", "no parity: Y = (Q-alpha)m+beta, Z = alpha m+gamma"},
      {FamilyId::LinAnsatzPrime, "alpha', beta', gamma'", "no parity: Y = alpha'm+beta', Z = alpha'm+gamma'"},
  };
  return catalog;
}

std::vector<Condition> FamilyInstance::violated() const {
  std::vector<Condition> out;
  for (const auto& c : conditions)
    if (!c.holds) out.push_back(c);
  return out;
}

namespace {

using Pred = std::function<bool(Index)>;

// A condition that must hold for every m in [lo, hi]; empty ranges hold.
Condition over(std::string expr, Index lo, Index hi, const Pred& pred) {
  Condition c{std::move(expr), true, "m in [" + std::to_string(lo) + ", " + std::to_string(hi) + "]"};
  for (Index m = lo; m <= hi; ++m)
    if (!pred(m)) {
      c.holds = false;
      c.detail = "fails at m=" + std::to_string(m);
      break;
    }
  return c;
}

Condition compare_le(std::string expr, const Rational& lhs, const Rational& rhs) {
  return {std::move(expr), lhs <= rhs, to_string(lhs) + " <= " + to_string(rhs)};
}

Condition holds_if(std::string expr, bool value) { return {std::move(expr), value, ""}; }

Rational mQ(const Params& p, Index m) { return mq(p, m); }

struct Builder {
  const Params& p;
  Index lo, hi;
  DerivedConstants k;
  std::vector<Condition> conditions;

  SolutionTable table(const std::function<ParityPair(Index)>& y, const std::function<ParityPair(Index)>& z) const {
    std::vector<StatePair> rows;
    for (Index m = lo; m <= hi; ++m) rows.push_back({m, y(m), z(m)});
    return SolutionTable(std::move(rows));
  }

  // Riccati2 conditions at m in [lo, hi-1], Riccati1 conditions at m in [lo-1, hi-1].
  void r2(std::string expr, const Pred& pred) { conditions.push_back(over(std::move(expr), lo, hi - 1, pred)); }
  void r1(std::string expr, const Pred& pred) { conditions.push_back(over(std::move(expr), lo - 1, hi - 1, pred)); }
};

Rational need_c(const FamilySpec& spec) {
  if (!spec.c) throw std::invalid_argument(std::string("family ") + to_string(spec.id) + " needs the constant c");
  return *spec.c;
}

Index need_m0(const FamilySpec& spec) {
  if (!spec.m0) throw std::invalid_argument(std::string("family ") + to_string(spec.id) + " needs m0");
  return *spec.m0;
}

FamilyInstance riccati_family(const FamilySpec& spec, const Params& p, Builder& b) {
  require_riccati_conditions(p);
  const Rational& h = b.k.h;
  const Rational& hp = b.k.h_prime;
  const Rational Q = p.q;
  const Rational A1 = p.A(1), A2 = p.A(2), A3 = p.A(3), A4 = p.A(4);
  const Rational B1 = p.B(1), B2 = p.B(2), B3 = p.B(3), B4 = p.B(4);
  const auto M = [](Index m) { return Rational(m); };
  const Sign minus = Sign::minus, plus = Sign::plus;

  std::function<ParityPair(Index)> y, z;

  switch (spec.id) {
    case FamilyId::R1: {
      const Rational c = need_c(spec);
      y = [=](Index m) { return ParityPair{minus, h * m + c}; };
      z = [=](Index m) { return ParityPair{plus, (Q - h) * (m - 1) + A2 + B4 - c}; };
      b.r2("h m >= A4 - c", [=](Index m) { return h * m >= A4 - c; });
      b.r2("(Q-h) m >= c - A2", [=](Index m) { return (Q - h) * m >= c - A2; });
      b.r1("h (m+1) >= A3 - c", [=](Index m) { return h * (m + 1) >= A3 - c; });
      b.r1("(Q-h)(m+1) >= c - A1", [=](Index m) { return (Q - h) * (m + 1) >= c - A1; });
      break;
    }
    case FamilyId::R2: {
      const Rational c = need_c(spec);
      y = [=](Index m) { return ParityPair{plus, h * m + A2 + B4 - c}; };
      z = [=](Index m) { return ParityPair{minus, (Q - h) * (m - 1) + c}; };
      b.r2("(Q-h) m >= B4 - c", [=](Index m) { return (Q - h) * m >= B4 - c; });
      b.r2("h m >= c - B2", [=](Index m) { return h * m >= c - B2; });
      b.r1("(Q-h) m >= B3 - c", [=](Index m) { return (Q - h) * m >= B3 - c; });
      b.r1("h m >= c - B1", [=](Index m) { return h * m >= c - B1; });
      break;
    }
    case FamilyId::R3: {
      const Rational c = need_c(spec);
      y = [=](Index m) { return ParityPair{minus, hp * m + c}; };
      z = [=](Index m) { return ParityPair{plus, hp * (m - 1) + c + B4 - A4}; };
      b.r2("h' m <= A4 - c'", [=](Index m) { return hp * m <= A4 - c; });
      b.r2("(Q-h') m <= c' - A2", [=](Index m) { return (Q - hp) * m <= c - A2; });
      b.r1("h' (m+1) <= A3 - c'", [=](Index m) { return hp * (m + 1) <= A3 - c; });
      b.r1("(Q-h')(m+1) <= c' - A1", [=](Index m) { return (Q - hp) * (m + 1) <= c - A1; });
      break;
    }
    case FamilyId::R4: {
      const Rational c = need_c(spec);
      y = [=](Index m) { return ParityPair{plus, hp * m + c - B4 + A4}; };
      z = [=](Index m) { return ParityPair{minus, hp * (m - 1) + c}; };
      b.r2("h' m <= B4 - c'", [=](Index m) { return hp * m <= B4 - c; });
      b.r2("(Q-h') m <= c' - B2", [=](Index m) { return (Q - hp) * m <= c - B2; });
      b.r1("h' m <= B3 - c'", [=](Index m) { return hp * m <= B3 - c; });
      b.r1("(Q-h') m <= c' - B1", [=](Index m) { return (Q - hp) * m <= c - B1; });
      break;
    }
    case FamilyId::PConst: {
      y = [=](Index) { return ParityPair{minus, A2 + B4 - B1}; };
      z = [=](Index m) { return ParityPair{plus, mQ(p, m - 1) + B1}; };
      b.conditions.push_back(compare_le("A2 + B4 <= A3 + B1", A2 + B4, A3 + B1));
      b.conditions.push_back(compare_le("B1 <= B2", B1, B2));
      const Rational bound = rmax(Rational(A2 + B4 - A1 - B1), Rational(B4 - B1));
      b.r1("m Q >= max(A2+B4-A1-B1, B4-B1)", [=](Index m) { return M(m) * Q >= bound; });
      break;
    }
    case FamilyId::PConstLow: {
      y = [=](Index) { return ParityPair{plus, A3}; };
      z = [=](Index) { return ParityPair{plus, B4}; };
      b.conditions.push_back(compare_le("A4 <= A3", A4, A3));
      b.conditions.push_back(compare_le("B3 <= B4", B3, B4));
      const Rational bound = rmin(Rational(A3 - A2), Rational(B4 - B1));
      b.r1("m Q <= min(A3-A2, B4-B1)", [=](Index m) { return M(m) * Q <= bound; });
      break;
    }
    case FamilyId::Sol0: {
      const Rational c = need_c(spec);
      y = [=](Index m) { return m <= 0 ? ParityPair{minus, hp * m + c} : ParityPair{minus, h * m + c}; };
      z = [=](Index m) {
        return m <= 0 ? ParityPair{plus, hp * m + B3 - A3 + c} : ParityPair{plus, (Q - h) * m + A1 + B3 - c};
      };
      const Rational lower = tmax({A1, A4, Rational(A2 + B4 - B1), Rational(A1 - B1 + B2)}).value();
      const Rational upper = -tmax({Rational(-A2), Rational(-A3), Rational(B3 - B4 - A3), Rational(B3 - A2 - B4)}).value();
      b.conditions.push_back(compare_le("max(A1, A4, A2+B4-B1, A1-B1+B2) <= c", lower, c));
      b.conditions.push_back(compare_le("c <= min(A2, A3, A3-B3+B4, A2+B4-B3)", c, upper));
      break;
    }
    case FamilyId::SolN2: {
      const Rational c = need_c(spec);
      const Index m0 = need_m0(spec);
      if (m0 >= 0) throw std::invalid_argument("SolN2 needs m0 < 0");
      y = [=](Index m) {
        if (m <= m0) return ParityPair{minus, hp * m + c};
        if (m <= 0) return ParityPair{plus, A3};
        return ParityPair{minus, h * m + A2};
      };
      z = [=](Index m) {
        if (m <= m0) return ParityPair{plus, hp * m + B3 - A3 + c};
        if (m <= 1) return ParityPair{plus, B4};
        return ParityPair{plus, (Q - h) * (m - 1) + B4};
      };
      b.conditions.push_back(holds_if("0 <= h <= Q", 0 <= h && h <= Q));
      b.conditions.push_back(holds_if("0 <= h' <= Q", 0 <= hp && hp <= Q));
      b.conditions.push_back(holds_if("B3 <= B4 <= B1 <= B4 + Q", B3 <= B4 && B4 <= B1 && B1 <= B4 + Q));
      b.conditions.push_back(compare_le("A4 + B4 <= A3 + B1", A4 + B4, A3 + B1));
      b.conditions.push_back(compare_le("max(A2, A4) <= A3", rmax(A2, A4), A3));
      const Rational at_m0 = hp * m0 + c;
      b.conditions.push_back(compare_le("A4 <= h' m0 + c'", A4, at_m0));
      b.conditions.push_back(compare_le("h' m0 + c' <= min(A3, A4 + h')", at_m0, rmin(A3, Rational(A4 + hp))));
      b.conditions.push_back(compare_le("(Q-h') m0 + max(A1, A2) <= c'", (Q - hp) * m0 + rmax(A1, A2), c));
      break;
    }
    case FamilyId::SolP: {
      const Rational c = need_c(spec);
      const Index m0 = need_m0(spec);
      if (m0 <= 0) throw std::invalid_argument("SolP needs m0 > 0");
      y = [=](Index m) {
        if (m <= -1) return ParityPair{plus, hp * m + A1 - B1 + B2};
        if (m <= m0 - 1) return ParityPair{minus, A2 + B4 - B1};
        return ParityPair{plus, h * m + A2 + B4 - c};
      };
      z = [=](Index m) {
        if (m <= -1) return ParityPair{minus, hp * m + B2 - Q};
        if (m == 0) return ParityPair{plus, A2 + B4 - A1 - Q};
        if (m <= m0) return ParityPair{plus, mQ(p, m - 1) + B1};
        return ParityPair{minus, (Q - h) * (m - 1) + c};
      };
      b.conditions.push_back(holds_if("0 <= h <= Q", 0 <= h && h <= Q));
      b.conditions.push_back(holds_if("0 <= h' <= Q", 0 <= hp && hp <= Q));
      b.conditions.push_back(holds_if("B4 <= B1 <= B2", B4 <= B1 && B1 <= B2));
      b.conditions.push_back(
          holds_if("A1 + B1 <= A2 + B4 <= A1 + B1 + Q", A1 + B1 <= A2 + B4 && A2 + B4 <= A1 + B1 + Q));
      b.conditions.push_back(compare_le("A2 <= min(A1, A3) + Q", A2, Rational(rmin(A1, A3) + Q)));
      b.conditions.push_back(compare_le("A4 <= A1", A4, A1));
      b.conditions.push_back(compare_le("A2 + B3 <= B4 + A3 + Q", A2 + B3, B4 + A3 + Q));
      b.conditions.push_back(compare_le("h (m0-1) + B1 <= c", h * (m0 - 1) + B1, c));
      b.conditions.push_back(compare_le("c <= h m0 + min(B1, B2)", c, Rational(h * m0 + rmin(B1, B2))));
      b.conditions.push_back(
          compare_le("max(B3 + Q - h, B4) <= (Q-h) m0 + c", rmax(Rational(B3 + Q - h), B4), (Q - h) * m0 + c));
      break;
    }
    default:
      throw std::logic_error("not a Riccati family");
  }

  FamilyInstance out;
  out.table = b.table(y, z);
  out.conditions = std::move(b.conditions);
  out.valid = std::all_of(out.conditions.begin(), out.conditions.end(), [](const Condition& c) { return c.holds; });
  return out;
}

// The four m-dependent inequalities of either ansatz.
std::array<bool, 4> ansatz_inequalities(const Params& p, const LinearAnsatz& a, Index m, bool primed) {
  const Rational& al = a.alpha;
  const Rational& be = a.beta;
  const Rational& ga = a.gamma;
  const Rational Q = p.q;
  if (!primed)
    return {al * (m + 1) + ga >= rmax(p.B(3), p.B(4)), al * m + rmin(p.A(1), p.A(2)) >= be,
            (Q - al) * m + be >= rmax(p.A(3), p.A(4)), (Q - al) * m + rmin(p.B(1), p.B(2)) >= al + ga};
  return {al * (m + 1) + ga <= rmin(p.B(3), p.B(4)), al * m + be <= rmin(p.A(3), p.A(4)),
          (Q - al) * m + rmax(p.B(1), p.B(2)) <= al + ga, (Q - al) * m + rmax(p.A(1), p.A(2)) <= be};
}

const char* const kUnprimedText[4] = {"alpha(m+1) + gamma >= max(B3, B4)", "alpha m + min(A1, A2) >= beta",
                                      "(Q-alpha) m + beta >= max(A3, A4)",
                                      "(Q-alpha) m + min(B1, B2) >= alpha + gamma"};
const char* const kPrimedText[4] = {"alpha'(m+1) + gamma' <= min(B3, B4)", "alpha' m + beta' <= min(A3, A4)",
                                    "(Q-alpha') m + max(B1, B2) <= alpha' + gamma'",
                                    "(Q-alpha') m + max(A1, A2) <= beta'"};

FamilyInstance linear_family(const FamilySpec& spec, const Params& p, Builder& b) {
  require_constraint(p);
  if (!spec.ansatz) throw std::invalid_argument(std::string("family ") + to_string(spec.id) + " needs alpha, beta, gamma");
  const LinearAnsatz a = *spec.ansatz;
  const bool primed = spec.id == FamilyId::LinAnsatzPrime;
  const Rational slope_y = primed ? a.alpha : Rational(p.q - a.alpha);

  FamilyInstance out;
  out.table = b.table([&](Index m) { return ParityPair{Sign::minus, slope_y * m + a.beta}; },
                      [&](Index m) { return ParityPair{Sign::minus, a.alpha * m + a.gamma}; });
  out.conditions.push_back(holds_if(primed ? "0 <= alpha' <= Q" : "0 <= alpha <= Q", 0 <= a.alpha && a.alpha <= p.q));
  out.conditions.push_back(holds_if(primed ? "alpha' + 2(gamma' - beta') = B3 + B4 - A3 - A4"
                                           : "2(beta + gamma) + alpha = B3 + B4 + A1 + A2",
                                    linear_ansatz_identity_holds(p, a, primed)));
  for (int i = 0; i < 4; ++i)
    out.conditions.push_back(over(primed ? kPrimedText[i] : kUnprimedText[i], b.lo, b.hi - 1, [&](Index m) {
      return ansatz_inequalities(p, a, m, primed)[static_cast<std::size_t>(i)];
    }));
  out.valid = std::all_of(out.conditions.begin(), out.conditions.end(), [](const Condition& c) { return c.holds; });
  return out;
}

}  // namespace

FamilyInstance instantiate_family(const FamilySpec& spec, const Params& p, Index m_min, Index m_max) {
  if (m_min > m_max) throw std::invalid_argument("instantiate_family: empty window");
  Builder b{p, m_min, m_max, compute_h(p), {}};
  if (spec.id == FamilyId::LinAnsatz || spec.id == FamilyId::LinAnsatzPrime) return linear_family(spec, p, b);
  return riccati_family(spec, p, b);
}

bool linear_ansatz_identity_holds(const Params& p, const LinearAnsatz& a, bool primed) {
  if (primed) return a.alpha + 2 * (a.gamma - a.beta) == p.B(3) + p.B(4) - p.A(3) - p.A(4);
  return 2 * (a.beta + a.gamma) + a.alpha == p.B(3) + p.B(4) + p.A(1) + p.A(2);
}

bool check_linear_ansatz(const Params& p, const LinearAnsatz& a, Index m, bool primed) {
  if (!linear_ansatz_identity_holds(p, a, primed))
    throw ConstraintError(primed ? "ansatz identity alpha' + 2(gamma' - beta') = B3 + B4 - A3 - A4 violated"
                                 : "ansatz identity 2(beta + gamma) + alpha = B3 + B4 + A1 + A2 violated");
  if (a.alpha < 0 || a.alpha > p.q) return false;
  const auto ineq = ansatz_inequalities(p, a, m, primed);
  return std::all_of(ineq.begin(), ineq.end(), [](bool v) { return v; });
}

// ---------------------------------------------------------------------------

namespace {

bool collinear(const Rational& a, const Rational& b, const Rational& c) { return b - a == c - b; }

bool tail_affine(const SolutionTable& t, Index from, Index to) {
  for (Index m = from; m + 2 <= to; ++m) {
    const auto& r0 = t.at(m);
    const auto& r1 = t.at(m + 1);
    const auto& r2 = t.at(m + 2);
    if (!collinear(r0.y.amp, r1.y.amp, r2.y.amp) || !collinear(r0.z.amp, r1.z.amp, r2.z.amp)) return false;
  }
  return true;
}

void finish(const Params& p, const SolutionTable& t, LinearTail& tail, bool primed) {
  tail.identity = linear_ansatz_identity_holds(p, tail.ansatz, primed);
  tail.alpha_in_range = 0 <= tail.ansatz.alpha && tail.ansatz.alpha <= p.q;
  const auto holds = [&](Index m) {
    const auto ineq = ansatz_inequalities(p, tail.ansatz, m, primed);
    return std::all_of(ineq.begin(), ineq.end(), [](bool v) { return v; });
  };
  if (!primed) {
    for (Index m = t.last() - 1; m >= t.first() && holds(m); --m) tail.inequalities_edge = m;
  } else {
    for (Index m = t.first(); m <= t.last() - 1 && holds(m); ++m) tail.inequalities_edge = m;
  }
}

}  // namespace

LinearityReport detect_asymptotic_linearity(const Params& p, const SolutionTable& t, Index w) {
  if (w < 2) throw std::invalid_argument("linearity window must be at least 2 steps");
  if (static_cast<Index>(t.size()) < 2 * w + 2)
    throw std::invalid_argument("table too short for linearity detection: need " + std::to_string(2 * w + 2) +
                                " rows, have " + std::to_string(t.size()));
  LinearityReport report;

  // Forward tail.
  if (tail_affine(t, t.last() - w, t.last())) {
    auto& f = report.forward;
    const auto& last = t.at(t.last());
    const auto& prev = t.at(t.last() - 1);
    f.detected = true;
    f.slope_y = last.y.amp - prev.y.amp;
    f.slope_z = last.z.amp - prev.z.amp;
    f.ansatz = {f.slope_z, Rational(last.y.amp - f.slope_y * t.last()), Rational(last.z.amp - f.slope_z * t.last())};
    f.slopes_consistent = f.slope_y + f.slope_z == p.q;
    f.m0 = t.last();
    while (f.m0 - 1 >= t.first()) {
      const auto& r = t.at(f.m0 - 1);
      if (r.y.amp != f.slope_y * (f.m0 - 1) + f.ansatz.beta || r.z.amp != f.slope_z * (f.m0 - 1) + f.ansatz.gamma)
        break;
      --f.m0;
    }
    finish(p, t, f, false);
  }

  // Backward tail.
  if (tail_affine(t, t.first(), t.first() + w)) {
    auto& b = report.backward;
    const auto& first = t.at(t.first());
    const auto& next = t.at(t.first() + 1);
    b.detected = true;
    b.slope_y = next.y.amp - first.y.amp;
    b.slope_z = next.z.amp - first.z.amp;
    b.ansatz = {b.slope_y, Rational(first.y.amp - b.slope_y * t.first()), Rational(first.z.amp - b.slope_z * t.first())};
    b.slopes_consistent = b.slope_y == b.slope_z;
    b.m0 = t.first();
    while (b.m0 + 1 <= t.last()) {
      const auto& r = t.at(b.m0 + 1);
      if (r.y.amp != b.slope_y * (b.m0 + 1) + b.ansatz.beta || r.z.amp != b.slope_z * (b.m0 + 1) + b.ansatz.gamma)
        break;
      ++b.m0;
    }
    finish(p, t, b, true);
  }
  return report;
}

}  // namespace udp6
