#include "udp6/riccati.hpp"

#include <algorithm>
#include <functional>
#include <map>
#include <stdexcept>

namespace udp6 {

RiccatiConditions riccati_conditions(const Params& p) {
  return {p.B(1) + p.A(3) == p.q + p.A(1) + p.B(3), p.B(2) + p.A(4) == p.A(2) + p.B(4)};
}

bool check_riccati_conditions(const Params& p) { return riccati_conditions(p).hold(); }

void require_riccati_conditions(const Params& p) {
  const auto c = riccati_conditions(p);
  if (!c.first) throw ConstraintError("Riccati condition B1+A3 = Q+A1+B3 violated");
  if (!c.second) throw ConstraintError("Riccati condition B2+A4 = A2+B4 violated");
  if (!p.all_signs_positive()) throw std::invalid_argument("Riccati equations need all parameter signs +1");
}

// ---------------------------------------------------------------------------
// Residuals through the fixed-parity case reductions.

Balance balance_riccati2(const Params& p, Index m, const ParityPair& y, const ParityPair& z_next) {
  require_riccati_conditions(p);
  const Rational& Y = y.amp;
  const Rational& Z = z_next.amp;
  const Rational mQ = mq(p, m);
  const bool zp = z_next.sign == Sign::plus;
  const bool yp = y.sign == Sign::plus;

  if (zp && yp)
    return {rmax(Rational(mQ + p.A(2) + p.B(4)), Rational(Y + Z)), rmax(Rational(Z + p.A(4)), Rational(Y + p.B(4)))};
  if (zp) return {Rational(rmax(Rational(mQ + p.A(2)), Y) + p.B(4)), Rational(Z + rmax(Y, p.A(4)))};
  if (yp) return {rmax(Rational(mQ + p.A(2) + p.B(4)), Rational(Z + p.A(4))), Rational(Y + rmax(Z, p.B(4)))};
  return {ExtendedAmplitude::bottom(),
          tmax({Rational(mQ + p.A(2) + p.B(4)), Rational(Y + Z), Rational(Z + p.A(4)), Rational(Y + p.B(4))})};
}

bool residual_riccati2(const Params& p, Index m, const ParityPair& y, const ParityPair& z_next) {
  return balance_riccati2(p, m, y, z_next).holds();
}

Balance balance_riccati1(const Params& p, Index m, const ParityPair& y_next, const ParityPair& z_next) {
  require_riccati_conditions(p);
  const Rational& Y = y_next.amp;
  const Rational& Z = z_next.amp;
  const Rational mQ = mq(p, m);
  const bool zp = z_next.sign == Sign::plus;
  const bool yp = y_next.sign == Sign::plus;

  if (zp && yp)
    return {rmax(Rational(mQ + p.A(3) + p.B(1)), Rational(Y + Z)), rmax(Rational(Z + p.A(3)), Rational(Y + p.B(3)))};
  if (zp) return {rmax(Rational(mQ + p.A(3) + p.B(1)), Rational(Y + p.B(3))), Rational(Z + rmax(Y, p.A(3)))};
  if (yp) return {Rational(rmax(Rational(mQ + p.B(1)), Z) + p.A(3)), Rational(Y + rmax(Z, p.B(3)))};
  return {ExtendedAmplitude::bottom(),
          tmax({Rational(mQ + p.A(3) + p.B(1)), Rational(Y + Z), Rational(Z + p.A(3)), Rational(Y + p.B(3))})};
}

bool residual_riccati1(const Params& p, Index m, const ParityPair& y_next, const ParityPair& z_next) {
  return balance_riccati1(p, m, y_next, z_next).holds();
}

// ---------------------------------------------------------------------------
// Stepping through the parity-filtered display form: each term is
// cy*Y + cz*Z + constant, present only when its parity factor is +1.

namespace {

struct Monomial {
  int cy = 0;
  int cz = 0;
  Rational constant;
  Sign parity = Sign::plus;
};

struct Equation {
  std::vector<Monomial> lhs;
  std::vector<Monomial> rhs;
};

Equation riccati2_terms(const Params& p, Index m, Sign sy, Sign sz) {
  return {{{0, 0, mq(p, m) + p.A(2) + p.B(4), Sign::plus},
           {0, 1, p.A(4), -sz},
           {1, 0, p.B(4), -sy},
           {1, 1, Rational(0), sy * sz}},
          {{0, 1, p.A(4), sz}, {1, 0, p.B(4), sy}, {1, 1, Rational(0), -(sy * sz)}}};
}

Equation riccati1_terms(const Params& p, Index m, Sign sy, Sign sz) {
  return {{{0, 0, mq(p, m) + p.A(3) + p.B(1), Sign::plus},
           {1, 0, p.B(3), -sy},
           {0, 1, p.A(3), -sz},
           {1, 1, Rational(0), sy * sz}},
          {{0, 1, p.A(3), sz}, {1, 0, p.B(3), sy}, {1, 1, Rational(0), -(sy * sz)}}};
}

enum class Unknown { y, z };

std::vector<LinTerm> as_lin_terms(const std::vector<Monomial>& side, Unknown unknown, const Rational& known) {
  std::vector<LinTerm> out;
  for (const auto& t : side) {
    if (t.parity == Sign::minus) continue;
    const int slope = unknown == Unknown::y ? t.cy : t.cz;
    const int known_coef = unknown == Unknown::y ? t.cz : t.cy;
    out.push_back({slope, Rational(t.constant + known_coef * known)});
  }
  return out;
}

SolutionSet solve_for(const Equation& eq, Unknown unknown, const Rational& known) {
  const auto lhs = as_lin_terms(eq.lhs, unknown, known);
  const auto rhs = as_lin_terms(eq.rhs, unknown, known);
  // One side empty: -inf against a finite maximum, no solution.
  if (lhs.empty() || rhs.empty()) return {};
  return solve_one_unknown(lhs, rhs);
}

using TermBuilder = std::function<Equation(Sign sy, Sign sz)>;

RiccatiStepResult step(const TermBuilder& build, Unknown unknown, const ParityPair& known) {
  RiccatiStepResult out;
  for (Sign s : {Sign::plus, Sign::minus}) {
    const Equation eq = unknown == Unknown::z ? build(known.sign, s) : build(s, known.sign);
    SolutionSet set = solve_for(eq, unknown, known.amp);
    if (!set.empty()) out.push_back({s, std::move(set)});
  }
  return out;
}

}  // namespace

RiccatiStepResult riccati_step_z(const Params& p, Index m, const ParityPair& y) {
  require_riccati_conditions(p);
  return step([&](Sign sy, Sign sz) { return riccati2_terms(p, m, sy, sz); }, Unknown::z, y);
}

RiccatiStepResult riccati_step_y(const Params& p, Index m, const ParityPair& z_next) {
  require_riccati_conditions(p);
  return step([&](Sign sy, Sign sz) { return riccati1_terms(p, m, sy, sz); }, Unknown::y, z_next);
}

RiccatiStepResult riccati_back_z(const Params& p, Index m, const ParityPair& y) {
  require_riccati_conditions(p);
  return step([&](Sign sy, Sign sz) { return riccati1_terms(p, m - 1, sy, sz); }, Unknown::z, y);
}

RiccatiStepResult riccati_back_y(const Params& p, Index m, const ParityPair& z) {
  require_riccati_conditions(p);
  return step([&](Sign sy, Sign sz) { return riccati2_terms(p, m - 1, sy, sz); }, Unknown::y, z);
}

// ---------------------------------------------------------------------------

Sampling parse_sampling(const std::string& name) {
  if (name == "endpoints") return Sampling::endpoints;
  if (name == "midpoint") return Sampling::midpoint;
  if (name == "all-breakpoints" || name == "all_breakpoints") return Sampling::all_breakpoints;
  throw ParseError("unknown sampling rule '" + name + "' (endpoints|midpoint|all-breakpoints)");
}

std::vector<Rational> sample(const SolutionSet& s, Sampling rule) {
  std::vector<Rational> out;
  const bool ends = rule != Sampling::midpoint;
  const bool mids = rule != Sampling::endpoints;
  for (const auto& i : s.intervals()) {
    if (ends) {
      if (i.lo) out.push_back(*i.lo);
      if (i.hi) out.push_back(*i.hi);
      if (!i.lo && !i.hi) out.emplace_back(0);
    }
    if (mids) {
      if (i.lo && i.hi)
        out.emplace_back((*i.lo + *i.hi) / 2);
      else if (i.lo)
        out.emplace_back(*i.lo + 1);
      else if (i.hi)
        out.emplace_back(*i.hi - 1);
      else
        out.emplace_back(0);
    }
  }
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

namespace {

std::vector<ParityPair> candidates(const RiccatiStepResult& r, Sampling rule) {
  std::vector<ParityPair> out;
  for (const auto& entry : r)
    for (auto& x : sample(entry.amplitudes, rule)) out.push_back({entry.sign, std::move(x)});
  std::sort(out.begin(), out.end(), branch_order_less);
  return out;
}

struct RiccatiSearch {
  const Params& p;
  Index m0, lo, hi;
  Sampling rule;
  std::size_t cap;
  std::map<Index, ParityPair> y, z;
  RiccatiEvolution result;

  bool full() {
    if (result.tables.size() < cap) return false;
    result.truncated = true;
    return true;
  }

  void dead_end(const std::string& what) {
    if (result.dead_ends.size() < 32) result.dead_ends.push_back(what);
  }

  void start(const ParityPair& y0) {
    y[m0] = y0;
    const auto zs = candidates(riccati_back_z(p, m0, y0), rule);
    if (zs.empty()) dead_end("no z at m=" + std::to_string(m0));
    for (const auto& c : zs) {
      if (full()) return;
      z[m0] = c;
      forward(m0);
    }
  }

  void forward(Index m) {
    if (m == hi) {
      backward(m0);
      return;
    }
    const auto zs = candidates(riccati_step_z(p, m, y[m]), rule);
    if (zs.empty()) dead_end("no z at m=" + std::to_string(m + 1));
    for (const auto& zc : zs) {
      const auto ys = candidates(riccati_step_y(p, m, zc), rule);
      if (ys.empty()) dead_end("no y at m=" + std::to_string(m + 1));
      for (const auto& yc : ys) {
        if (full()) return;
        z[m + 1] = zc;
        y[m + 1] = yc;
        forward(m + 1);
      }
    }
  }

  void backward(Index m) {
    if (m == lo) {
      emit();
      return;
    }
    const auto ys = candidates(riccati_back_y(p, m, z[m]), rule);
    if (ys.empty()) dead_end("no y at m=" + std::to_string(m - 1));
    for (const auto& yc : ys) {
      const auto zs = candidates(riccati_back_z(p, m - 1, yc), rule);
      if (zs.empty()) dead_end("no z at m=" + std::to_string(m - 1));
      for (const auto& zc : zs) {
        if (full()) return;
        y[m - 1] = yc;
        z[m - 1] = zc;
        backward(m - 1);
      }
    }
  }

  void emit() {
    std::vector<StatePair> rows;
    for (Index m = lo; m <= hi; ++m) rows.push_back({m, y.at(m), z.at(m)});
    result.tables.emplace_back(std::move(rows));
  }
};

}  // namespace

RiccatiEvolution riccati_evolve(const Params& p, Index m0, const ParityPair& y0, Index m_min, Index m_max,
                                Sampling rule, std::size_t max_tables) {
  require_riccati_conditions(p);
  if (m_min > m_max || m0 < m_min || m0 > m_max) throw std::invalid_argument("riccati_evolve: bad window");
  if (max_tables == 0) throw std::invalid_argument("riccati_evolve: max_tables must be positive");
  RiccatiSearch search{p, m0, m_min, m_max, rule, max_tables, {}, {}, {}};
  search.start(y0);
  return std::move(search.result);
}

std::vector<ResidualFailure> check_riccati_table(const Params& p, const SolutionTable& table) {
  std::vector<ResidualFailure> failures;
  if (table.empty()) return failures;
  for (Index m = table.first() - 1; m < table.last(); ++m) {
    const auto& next = table.at(m + 1);
    if (auto b = balance_riccati1(p, m, next.y, next.z); !b.holds())
      failures.push_back({m, ResidualFailure::Equation::riccati1, b});
    if (m >= table.first())
      if (auto b = balance_riccati2(p, m, table.at(m).y, next.z); !b.holds())
        failures.push_back({m, ResidualFailure::Equation::riccati2, b});
  }
  return failures;
}

bool theorem_check(const Params& p, const SolutionTable& table) {
  if (!check_riccati_table(p, table).empty()) return true;
  return check_table(p, table).empty();
}

}  // namespace udp6
