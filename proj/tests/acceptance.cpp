// One PASS/FAIL line per acceptance criterion; non-zero exit on any FAIL.

#include <cstdio>
#include <functional>
#include <iostream>
#include <sstream>
#include <string>

#include "support.hpp"
#include "udp6/evolution.hpp"
#include "udp6/families.hpp"
#include "udp6/qp6_oracle.hpp"
#include "udp6/riccati.hpp"

using namespace udp6;
using namespace testing_support;

namespace {

const Params kEx = make_params(100, {32, 33, 37, 22}, {53, 65, 8, 4});
const Params kR = make_params(100, {25, 46, 67, 23}, {59, 65, 1, 42});

ParityPair pp(int s, long amp) { return {sign_from_int(s), Rational(amp)}; }

int failures = 0;

void report(int n, const std::string& name, bool ok, const std::string& detail) {
  std::cout << "criterion " << n << " " << (ok ? "PASS" : "FAIL") << ": " << name;
  if (!detail.empty()) std::cout << " (" << detail << ")";
  std::cout << std::endl;
  failures += ok ? 0 : 1;
}

bool matches(const SolutionTable& t, const std::function<long(Index)>& y, const std::function<long(Index)>& z) {
  for (const auto& r : t.rows())
    if (r.y != pp(-1, y(r.m)) || r.z != pp(-1, z(r.m))) return false;
  return true;
}

void golden_first() {
  const BranchTree tree = evolve(kEx, {0, pp(-1, 43), pp(-1, 40)}, {-10, 10, 64});
  const auto tables = tree.tables();
  const bool ok = tables.size() == 1 && !tree.truncated && tables[0].first() == -10 && tables[0].last() == 10 &&
                  matches(
                      tables[0], [](Index m) { return m <= -1 ? 95 * m + 111 : m == 0 ? 43 : 11 * m + 111; },
                      [](Index m) { return m <= 0 ? 95 * m + 40 : 89 * m - 117; });
  report(1, "first reference table over [-10, 10]", ok, std::to_string(tables.size()) + " branch(es)");
}

void golden_second() {
  const auto tables = evolve(kEx, {0, pp(-1, 43), pp(-1, 50)}, {-12, 15, 64}).tables();
  const auto y = [](Index m) -> long {
    if (m <= -8) return 85 * m - 81;
    if (m == -7) return -669;
    if (m <= -1) return 115 * m + 131;
    if (m == 0) return 43;
    if (m <= 11) return -9 * m + 131;
    return 9 * m - 72;
  };
  const auto z = [](Index m) -> long {
    if (m <= -7) return 85 * m - 147;
    if (m <= 0) return 115 * m + 50;
    if (m <= 11) return 109 * m - 147;
    if (m == 12) return 1156;
    return 91 * m + 65;
  };
  const bool ok = tables.size() == 1 && matches(tables[0], y, z) && tables[0].at(-7).y.amp == -669 &&
                  tables[0].at(12).z.amp == 1156;
  report(2, "second reference table over [-12, 15]", ok, "Y_-7 = -669, Z_12 = 1156");
}

void constants() {
  const auto h = compute_h(kR);
  const bool ok = h.h == 38 && h.h_prime == 85 && check_riccati_conditions(kR);
  report(3, "h = 38, h' = 85, Riccati conditions", ok, "h=" + to_string(h.h) + ", h'=" + to_string(h.h_prime));
}

void sol0_window() {
  std::string got;
  bool ok = true;
  for (long c : {30, 31, 46, 47}) {
    FamilySpec s;
    s.id = FamilyId::Sol0;
    s.c = Rational(c);
    const bool valid = instantiate_family(s, kR, -8, 8).valid;
    ok = ok && valid == (c == 31 || c == 46);
    got += (got.empty() ? "" : ",") + std::string(valid ? "true" : "false");
  }
  report(4, "Sol0 validity at c = 30, 31, 46, 47", ok, got);
}

void riccati_theorem() {
  Gen g(1001);
  long tables = 0, bad = 0, sets_with_tables = 0;
  for (int i = 0; i < 1000; ++i) {
    const Params p = random_riccati_params(g);
    const ParityPair y0{g.sign(), Rational(g.uniform(-150, 150))};
    const RiccatiEvolution ev = riccati_evolve(p, 0, y0, -8, 8, Sampling::endpoints, 8);
    sets_with_tables += !ev.tables.empty();
    for (const auto& t : ev.tables) {
      ++tables;
      if (!check_table(p, t).empty() || !oracle_table_ok(p, t)) ++bad;
    }
  }
  report(5, "Riccati tables solve the full system", bad == 0 && tables > 0,
         std::to_string(tables) + " tables from " + std::to_string(sets_with_tables) + " of 1000 parameter sets, " +
             std::to_string(bad) + " failures");
}

bool tie_free(const Params& p, const SolutionTable& t) {
  for (const auto& r : t.rows()) {
    const Rational mq = Rational(r.m) * p.q;
    for (const Rational& v : {p.A(3), p.A(4), Rational(p.A(1) + mq), Rational(p.A(2) + mq)})
      if (r.y.amp == v) return false;
    for (const Rational& v : {p.B(3), p.B(4), Rational(p.B(1) + mq), Rational(p.B(2) + mq)})
      if (r.z.amp == v) return false;
  }
  return true;
}

void existence() {
  Gen g(1002);
  long empty = 0, bad = 0, minus_runs = 0, minus_bad = 0, roundtrip_bad = 0;
  for (int i = 0; i < 1000; ++i) {
    const Params p = random_constrained_params(g);
    const bool all_minus = i % 2 == 0;
    const ParityPair y0{all_minus ? Sign::minus : g.sign(), Rational(g.uniform(-100, 100))};
    const ParityPair z0{all_minus ? Sign::minus : g.sign(), Rational(g.uniform(-100, 100))};
    const BranchTree tree = evolve(p, {0, y0, z0}, {-15, 15, 64});
    const auto tables = tree.tables();
    if (tables.empty()) ++empty;
    for (const auto& t : tables)
      if (!oracle_table_ok(p, t) || !check_table(p, t).empty()) ++bad;
    if (all_minus) {
      const SolutionTable det = evolve_noparity(p, 0, y0.amp, z0.amp, -15, 15);
      if (tie_free(p, det)) {
        ++minus_runs;
        if (tables.size() != 1 || tables[0] != det) ++minus_bad;
      }
    }
    const Index m = g.uniform(-15, 15);
    const Rational Y = g.uniform(-300, 300), Z = g.uniform(-300, 300);
    const Rational Zn = step_z_noparity(p, m, Y, Z);
    const Rational Yn = step_y_noparity(p, m, Y, Zn);
    if (step_back_y_noparity(p, m + 1, Yn, Zn) != Y || step_back_z_noparity(p, m + 1, Y, Zn) != Z) ++roundtrip_bad;
  }
  report(6, "existence, soundness, all-minus uniqueness, round trips",
         empty == 0 && bad == 0 && minus_bad == 0 && roundtrip_bad == 0 && minus_runs > 0,
         std::to_string(empty) + " empty, " + std::to_string(bad) + " unsound, " + std::to_string(minus_bad) + " of " +
             std::to_string(minus_runs) + " tie-free all-minus runs not unique, " + std::to_string(roundtrip_bad) +
             " round-trip failures");
}

void no_solution() {
  Gen g(1003);
  long hits = 0;
  for (int i = 0; i < 10000; ++i) {
    const Params p = random_riccati_params(g);
    const Index m = g.uniform(-10, 10);
    const Sign s = g.sign();
    const Rational a = g.small_rational(400), b = g.small_rational(400), c = g.small_rational(400);
    if (residual_zz(p, m, {Sign::minus, a}, {s, b}, {-s, c})) ++hits;
    if (residual_riccati2(p, m, {Sign::minus, a}, {Sign::minus, b})) ++hits;
  }
  report(7, "double-minus sectors have no solution", hits == 0, std::to_string(hits) + " true verdicts in 10^4");
}

void exchange() {
  Gen g(1004);
  long bad = 0, ties = 0;
  using EA = ExtendedAmplitude;
  const auto tuple = [&g, &ties]() {
    std::array<EA, 4> v;
    const Rational top = g.small_rational(30);
    for (auto& e : v) e = EA(Rational(top - abs(g.small_rational(10)) - 1));
    v[static_cast<std::size_t>(g.uniform(0, 1))] = EA(top);
    v[static_cast<std::size_t>(g.uniform(2, 3))] = EA(top);
    // forced ties: every other entry may also reach the top
    if (g.uniform(0, 2) == 0) {
      v[static_cast<std::size_t>(g.uniform(0, 3))] = EA(top);
      ++ties;
    }
    if (g.uniform(0, 9) == 0) {
      // bottom in a non-maximal slot
      for (auto& e : v)
        if (e != EA(top)) {
          e = EA();
          break;
        }
    }
    return v;
  };
  for (int i = 0; i < 10000; ++i) {
    const auto x = tuple(), w = tuple();
    const EA lhs = tmax({x[0] + w[0], x[2] + w[2], x[1] + w[3], x[3] + w[1]});
    const EA rhs = tmax({x[1] + w[1], x[3] + w[3], x[0] + w[2], x[2] + w[0]});
    if (!exchange_identity_check(x, w) || lhs != rhs) ++bad;
  }
  report(8, "exchange identity on premise-satisfying octuples", bad == 0,
         std::to_string(bad) + " failures, " + std::to_string(ties) + " forced ties");
}

void invariance() {
  Gen g(1005);
  long bad = 0;
  for (int i = 0; i < 1000; ++i) {
    const Params p = random_constrained_params(g, 8);
    const Index m = g.uniform(-4, 4);
    const ParityPair y{g.sign(), Rational(g.uniform(-16, 16))}, z{g.sign(), Rational(g.uniform(-16, 16))};
    const ParityPair zn = g.coin() ? step_z_parity(p, m, y, z).front() : ParityPair{g.sign(), Rational(g.uniform(-16, 16))};
    const ParityPair yn = g.coin() ? step_y_parity(p, m, y, zn).front() : ParityPair{g.sign(), Rational(g.uniform(-16, 16))};
    const bool zz = residual_zz(p, m, y, z, zn), yy = residual_yy(p, m, y, yn, zn);
    const Rational c = g.small_rational(40);
    Rational lambda(g.uniform(1, 7), g.uniform(1, 7));
    lambda.canonicalize();
    const Params ps = p.shifted(c), pl = p.scaled(lambda);
    if (residual_zz(ps, m, y.shifted(c), z.shifted(c), zn.shifted(c)) != zz) ++bad;
    if (residual_yy(ps, m, y.shifted(c), yn.shifted(c), zn.shifted(c)) != yy) ++bad;
    if (residual_zz(pl, m, y.scaled(lambda), z.scaled(lambda), zn.scaled(lambda)) != zz) ++bad;
    if (residual_yy(pl, m, y.scaled(lambda), yn.scaled(lambda), zn.scaled(lambda)) != yy) ++bad;

    const StatePair init{0, y, z};
    const auto base = evolve(p, init, {-5, 5, 16}).tables();
    const auto sh = evolve(ps, {0, y.shifted(c), z.shifted(c)}, {-5, 5, 16}).tables();
    const auto sc = evolve(pl, {0, y.scaled(lambda), z.scaled(lambda)}, {-5, 5, 16}).tables();
    if (sh.size() != base.size() || sc.size() != base.size()) {
      ++bad;
      continue;
    }
    for (std::size_t k = 0; k < base.size(); ++k) {
      if (sh[k] != base[k].shifted(c)) ++bad;
      if (sc[k] != base[k].scaled(lambda)) ++bad;
    }
  }
  report(9, "gauge and scale invariance of verdicts and evolutions", bad == 0, std::to_string(bad) + " mismatches");
}

void solver_oracle() {
  Gen g(1006);
  long bad = 0;
  for (int i = 0; i < 10000; ++i) {
    const auto side = [&]() {
      std::vector<LinTerm> out;
      for (long k = g.uniform(1, 4); k > 0; --k)
        out.push_back({static_cast<int>(g.uniform(0, 2)), ExtendedAmplitude(Rational(g.uniform(-8, 8)))});
      return out;
    };
    const auto lhs = side(), rhs = side();
    if (solve_one_unknown(lhs, rhs) != grid_solution(lhs, rhs, 40)) ++bad;
  }
  report(10, "one-unknown solver against the grid oracle", bad == 0, std::to_string(bad) + " mismatches in 10^4");
}

void ud_limit() {
  const SolutionTable t = evolve(kEx, {0, pp(-1, 43), pp(-1, 40)}, {0, 3, 4}).tables().at(0);
  const LimitReport r = ud_limit_compare(kEx, t, {1, 0.5, 0.2, 0.1}, 0, 3);
  bool ok = !r.abort_reason && r.verdicts.size() == 4;
  for (const auto& v : r.verdicts) ok = ok && v.monotone && v.signs_ok && !v.cancellation;
  std::ostringstream detail;
  for (const auto& row : r.rows)
    if (row.eps == 0.1) detail << "m=" << row.m << " err_Y=" << row.err_y.str(3, std::ios::scientific) << " ";
  std::string d = detail.str();
  if (!d.empty()) d.pop_back();
  report(11, "epsilon -> 0 errors decrease and signs agree", ok, d);
}

void conjecture() {
  const auto first = evolve(kEx, {0, pp(-1, 43), pp(-1, 40)}, {-12, 12, 4}).tables().at(0);
  const auto second = evolve(kEx, {0, pp(-1, 43), pp(-1, 50)}, {-20, 24, 4}).tables().at(0);
  const LinearityReport a = detect_asymptotic_linearity(kEx, first), b = detect_asymptotic_linearity(kEx, second);
  const auto ident = [](const LinearAnsatz& f) { return Rational(2 * (f.beta + f.gamma) + f.alpha); };
  const auto ident_p = [](const LinearAnsatz& f) { return Rational(f.alpha + 2 * (f.gamma - f.beta)); };
  const bool golden =
      a.forward.m0 == 1 && a.forward.ansatz == LinearAnsatz{89, 111, -117} && a.backward.m0 == -1 &&
      a.backward.ansatz == LinearAnsatz{95, 111, 40} && b.forward.m0 == 13 &&
      b.forward.ansatz == LinearAnsatz{91, -72, 65} && b.backward.m0 == -8 &&
      b.backward.ansatz == LinearAnsatz{85, -81, -147} && ident(a.forward.ansatz) == 77 &&
      ident(b.forward.ansatz) == 77 && ident_p(a.backward.ansatz) == -47 && ident_p(b.backward.ansatz) == -47 &&
      a.conjecture_consistent() && b.conjecture_consistent();

  Gen g(1007);
  int linear = 0, consistent = 0;
  for (int i = 0; i < 200; ++i) {
    const Params p = random_constrained_params(g);
    const SolutionTable t = evolve_noparity(p, 0, g.uniform(-100, 100), g.uniform(-100, 100), -50, 50);
    const LinearityReport r = detect_asymptotic_linearity(p, t);
    linear += r.forward.detected && r.backward.detected;
    consistent += r.conjecture_consistent();
  }
  char frac[160];
  std::snprintf(frac, sizeof frac, "random runs: %d/200 affine at both ends (%.3f), %d/200 fully consistent (%.3f)",
                linear, linear / 200.0, consistent, consistent / 200.0);
  report(12, "linearity detector on the reference tables", golden, frac);
}

}  // namespace

int main() {
  const std::vector<std::function<void()>> criteria{golden_first, golden_second, constants,     sol0_window,
                                                    riccati_theorem, existence,  no_solution,   exchange,
                                                    invariance,      solver_oracle, ud_limit,   conjecture};
  for (const auto& c : criteria) {
    try {
      c();
    } catch (const std::exception& e) {
      std::cout << "criterion threw: " << e.what() << std::endl;
      ++failures;
    }
  }
  std::cout << (failures == 0 ? "all criteria passed" : std::to_string(failures) + " criteria failed") << std::endl;
  return failures == 0 ? 0 : 1;
}
