#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <functional>

#include "support.hpp"
#include "udp6/evolution.hpp"

using namespace udp6;
using namespace testing_support;

namespace {

const Params kEx = make_params(100, {32, 33, 37, 22}, {53, 65, 8, 4});
const Params kR = make_params(100, {25, 46, 67, 23}, {59, 65, 1, 42});

ParityPair pp(int s, long amp) { return {sign_from_int(s), Rational(amp)}; }

using Piecewise = std::function<long(Index)>;

// The two reference solutions for (Y0, Z0) = (43, 40) and (43, 50); all parities -1.
long ex1_y(Index m) { return m <= -1 ? 95 * m + 111 : m == 0 ? 43 : 11 * m + 111; }
long ex1_z(Index m) { return m <= 0 ? 95 * m + 40 : 89 * m - 117; }
long ex2_y(Index m) {
  if (m <= -8) return 85 * m - 81;
  if (m == -7) return -669;
  if (m <= -1) return 115 * m + 131;
  if (m == 0) return 43;
  if (m <= 11) return -9 * m + 131;
  return 9 * m - 72;
}
long ex2_z(Index m) {
  if (m <= -7) return 85 * m - 147;
  if (m <= 0) return 115 * m + 50;
  if (m <= 11) return 109 * m - 147;
  if (m == 12) return 1156;
  return 91 * m + 65;
}

SolutionTable golden(const Piecewise& y, const Piecewise& z, Index lo, Index hi) {
  std::vector<StatePair> rows;
  for (Index m = lo; m <= hi; ++m) rows.push_back({m, pp(-1, y(m)), pp(-1, z(m))});
  return SolutionTable(rows);
}

}  // namespace

TEST_CASE("deterministic steps") {
  CHECK(step_z_noparity(kEx, 0, 43, 40) == -28);
  CHECK(step_z_noparity(kEx, 0, 43, 50) == -38);
  CHECK(step_y_noparity(kEx, 0, 43, -28) == 122);
  CHECK(step_y_noparity(kEx, 0, 43, -38) == 122);
  CHECK(step_back_y_noparity(kEx, 0, 43, 40) == 16);
  CHECK(step_back_z_noparity(kEx, 0, 16, 40) == -55);
  CHECK(step_back_y_noparity(kEx, 0, 43, 50) == 16);
  CHECK(step_back_z_noparity(kEx, 0, 16, 50) == -65);
  CHECK(step_z_noparity(kEx.shifted(7), 0, 50, 47) == -21);
}

TEST_CASE("deterministic steps invert each other") {
  Gen g(31);
  for (int i = 0; i < 10000; ++i) {
    const Params p = random_constrained_params(g);
    const Index m = g.uniform(-10, 10);
    const Rational Y = g.small_rational(300), Z = g.small_rational(300);
    const Rational Zn = step_z_noparity(p, m, Y, Z);
    const Rational Yn = step_y_noparity(p, m, Y, Zn);
    CHECK(step_back_y_noparity(p, m + 1, Yn, Zn) == Y);
    CHECK(step_back_z_noparity(p, m + 1, Y, Zn) == Z);
    const Rational Yp = step_back_y_noparity(p, m, Y, Z);
    const Rational Zp = step_back_z_noparity(p, m, Yp, Z);
    CHECK(step_z_noparity(p, m - 1, Yp, Zp) == Z);
    CHECK(step_y_noparity(p, m - 1, Yp, Z) == Y);
  }
}

TEST_CASE("parity steps in the deterministic sector") {
  CHECK(step_z_parity(kEx, 0, pp(-1, 43), pp(-1, 40)) == std::vector<ParityPair>{pp(-1, -28)});
  CHECK(step_y_parity(kEx, 0, pp(-1, 43), pp(-1, -28)) == std::vector<ParityPair>{pp(-1, 122)});
}

TEST_CASE("parity steps branch at degenerate amplitudes") {
  // Y_m = A3
  const auto zs = step_z_parity(kR, 1, pp(1, 67), pp(1, 42));
  CHECK(zs.size() >= 2);
  for (const auto& c : zs) CHECK(oracle_zz(kR, 1, pp(1, 67), pp(1, 42), c));
  // Z_{m+1} = B3
  const auto ys = step_y_parity(kR, 1, pp(1, 38), pp(1, 1));
  CHECK(ys.size() >= 2);
  for (const auto& c : ys) CHECK(oracle_yy(kR, 1, pp(1, 38), c, pp(1, 1)));
}

TEST_CASE("parity step candidates are sound, ordered and gauge covariant") {
  Gen g(32);
  long branching = 0;
  for (int i = 0; i < 10000; ++i) {
    const Params p = random_constrained_params(g, 6);
    const Index m = g.uniform(-3, 3);
    const ParityPair y{g.sign(), Rational(g.uniform(-12, 12))}, z{g.sign(), Rational(g.uniform(-12, 12))};
    const auto zs = step_z_parity(p, m, y, z);
    REQUIRE_FALSE(zs.empty());
    for (std::size_t k = 0; k < zs.size(); ++k) {
      CHECK(oracle_zz(p, m, y, z, zs[k]));
      if (k > 0) CHECK(branch_order_less(zs[k - 1], zs[k]));
    }
    const ParityPair zn = g.pick(zs);
    const auto ys = step_y_parity(p, m, y, zn);
    REQUIRE_FALSE(ys.empty());
    for (const auto& c : ys) CHECK(oracle_yy(p, m, y, c, zn));
    branching += zs.size() > 1 || ys.size() > 1;

    const auto yp = step_back_y_parity(p, m, y, z);
    REQUIRE_FALSE(yp.empty());
    for (const auto& c : yp) CHECK(oracle_yy(p, m - 1, c, y, z));
    const ParityPair ypc = g.pick(yp);
    const auto zp = step_back_z_parity(p, m, ypc, z);
    REQUIRE_FALSE(zp.empty());
    for (const auto& c : zp) CHECK(oracle_zz(p, m - 1, ypc, c, z));

    const Rational c = g.small_rational(20);
    auto shifted = zs;
    for (auto& v : shifted) v = v.shifted(c);
    CHECK(step_z_parity(p.shifted(c), m, y.shifted(c), z.shifted(c)) == shifted);
  }
  CHECK(branching > 0);
}

TEST_CASE("first golden table") {
  const BranchTree tree = evolve(kEx, {0, pp(-1, 43), pp(-1, 40)}, {-5, 5, 64});
  CHECK_FALSE(tree.truncated);
  const auto tables = tree.tables();
  REQUIRE(tables.size() == 1);
  CHECK(tables[0] == golden(ex1_y, ex1_z, -5, 5));
  CHECK(check_table(kEx, tables[0]).empty());
  CHECK(evolve_noparity(kEx, 0, 43, 40, -5, 5) == tables[0]);
}

TEST_CASE("second golden table with its breakpoints") {
  const BranchTree tree = evolve(kEx, {0, pp(-1, 43), pp(-1, 50)}, {-10, 14, 64});
  const auto tables = tree.tables();
  REQUIRE(tables.size() == 1);
  const SolutionTable want = golden(ex2_y, ex2_z, -10, 14);
  CHECK(tables[0] == want);
  CHECK(tables[0].at(-7).y.amp == -669);
  CHECK(tables[0].at(12).z.amp == 1156);
  CHECK(oracle_table_ok(kEx, want));
}

TEST_CASE("random evolutions produce at least one sound table") {
  Gen g(33);
  for (int i = 0; i < 200; ++i) {
    const Params p = random_constrained_params(g, 30);
    const StatePair init{0, {g.sign(), Rational(g.uniform(-60, 60))}, {g.sign(), Rational(g.uniform(-60, 60))}};
    const BranchTree tree = evolve(p, init, {-20, 20, 16});
    const auto tables = tree.tables();
    REQUIRE_FALSE(tables.empty());
    CHECK(tables.size() == tree.branch_count());
    for (const auto& t : tables) {
      CHECK(t.first() == -20);
      CHECK(t.last() == 20);
      CHECK(t.at(0) == init);
      CHECK(oracle_table_ok(p, t));
      CHECK(check_table(p, t).empty());
    }
  }
}

TEST_CASE("branch cap is reported") {
  Gen g(34);
  int found = 0;
  for (int i = 0; i < 2000 && found < 20; ++i) {
    const Params p = random_constrained_params(g, 4);
    const StatePair init{0, {g.sign(), Rational(g.uniform(-8, 8))}, {g.sign(), Rational(g.uniform(-8, 8))}};
    const BranchTree wide = evolve(p, init, {-4, 4, 1000});
    if (wide.branch_count() < 2) continue;
    ++found;
    const BranchTree narrow = evolve(p, init, {-4, 4, 1});
    CHECK(narrow.truncated);
    CHECK(narrow.branch_count() == 1);
    CHECK(narrow.tables().size() == 1);
    CHECK(oracle_table_ok(p, narrow.tables()[0]));
    // the capped branch is the first in deterministic order
    CHECK(narrow.tables()[0] == wide.tables()[0]);
  }
  CHECK(found > 0);
}

TEST_CASE("table container and errors") {
  CHECK_THROWS_AS(SolutionTable({{0, pp(1, 0), pp(1, 0)}, {2, pp(1, 0), pp(1, 0)}}), std::invalid_argument);
  const SolutionTable t = golden(ex1_y, ex1_z, -2, 2);
  CHECK_THROWS_AS(t.at(3), std::out_of_range);
  CHECK(t.shifted(5).at(1).y.amp == 127);
  CHECK(t.scaled(2).at(1).z.amp == -56);
  CHECK(check_table(kEx.shifted(5), t.shifted(5)).empty());
  CHECK(check_table(kEx.scaled(3), t.scaled(3)).empty());

  SolutionTable broken({{0, pp(-1, 43), pp(-1, 40)}, {1, pp(-1, 122), pp(-1, -27)}});
  const auto fails = check_table(kEx, broken);
  REQUIRE_FALSE(fails.empty());
  CHECK(fails[0].m == 0);

  CHECK_THROWS_AS(evolve(kEx, {0, pp(1, 0), pp(1, 0)}, {1, 3, 4}), std::invalid_argument);
  CHECK_THROWS_AS(evolve(kEx, {0, pp(1, 0), pp(1, 0)}, {0, 3, 0}), std::invalid_argument);
  CHECK_THROWS_AS(evolve(make_params(1, {0, 0, 0, 0}, {0, 0, 0, 0}), {0, pp(1, 0), pp(1, 0)}, {0, 3, 4}),
                  ConstraintError);
}
