#pragma once

// Ultradiscrete Riccati-type equations with parity variables.
//
//   riccati2 at m relates (y_m, z_{m+1});
//   riccati1 at m relates (y_{m+1}, z_{m+1}).
//
// Under the two linear parameter conditions every Riccati solution also
// solves the Painleve VI system; theorem_check verifies that implication on
// concrete tables.

#include <cstddef>
#include <string>
#include <vector>

#include "udp6/evolution.hpp"
#include "udp6/params.hpp"
#include "udp6/residuals.hpp"
#include "udp6/tropical.hpp"

namespace udp6 {

struct RiccatiConditions {
  bool first = false;   // B1 + A3 = Q + A1 + B3
  bool second = false;  // B2 + A4 = A2 + B4

  bool hold() const { return first && second; }
};

RiccatiConditions riccati_conditions(const Params& p);
bool check_riccati_conditions(const Params& p);
/// Throws ConstraintError naming the failing condition.
void require_riccati_conditions(const Params& p);

Balance balance_riccati2(const Params& p, Index m, const ParityPair& y, const ParityPair& z_next);
bool residual_riccati2(const Params& p, Index m, const ParityPair& y, const ParityPair& z_next);

Balance balance_riccati1(const Params& p, Index m, const ParityPair& y_next, const ParityPair& z_next);
bool residual_riccati1(const Params& p, Index m, const ParityPair& y_next, const ParityPair& z_next);

/// Admissible amplitudes of one sign for the next variable.
struct SignedSolutions {
  Sign sign;
  SolutionSet amplitudes;

  friend bool operator==(const SignedSolutions&, const SignedSolutions&) = default;
};

/// Entries in sign order (+1 first); no entry has an empty set.
using RiccatiStepResult = std::vector<SignedSolutions>;

/// z_{m+1} from y_m (riccati2 at m).
RiccatiStepResult riccati_step_z(const Params& p, Index m, const ParityPair& y);
/// y_{m+1} from z_{m+1} (riccati1 at m).
RiccatiStepResult riccati_step_y(const Params& p, Index m, const ParityPair& z_next);
/// z_m from y_m (riccati1 at m-1).
RiccatiStepResult riccati_back_z(const Params& p, Index m, const ParityPair& y);
/// y_{m-1} from z_m (riccati2 at m-1).
RiccatiStepResult riccati_back_y(const Params& p, Index m, const ParityPair& z);

/// How concrete amplitudes are drawn from interval-valued steps.
///  - endpoints: each finite endpoint; one finite witness for (-inf, +inf)
///  - midpoint: midpoint of bounded pieces, endpoint -/+ 1 of half-lines, 0 for the line
///  - all_breakpoints: the union of both rules
enum class Sampling { endpoints, midpoint, all_breakpoints };

Sampling parse_sampling(const std::string& name);
std::vector<Rational> sample(const SolutionSet& s, Sampling rule);

struct RiccatiEvolution {
  std::vector<SolutionTable> tables;
  bool truncated = false;
  /// Steps where some sign case had no finite sample; the branch was dropped.
  std::vector<std::string> dead_ends;
};

/// All sampled Riccati solutions over [m_min, m_max] through y_{m0} = y0.
/// z_{m0} is solved from riccati1 at m0-1. Requires the Riccati conditions
/// and the parameter constraint.
RiccatiEvolution riccati_evolve(const Params& p, Index m0, const ParityPair& y0, Index m_min, Index m_max,
                                Sampling rule = Sampling::endpoints, std::size_t max_tables = 64);

/// riccati1 at m in [first-1, last-1] and riccati2 at m in [first, last-1].
std::vector<ResidualFailure> check_riccati_table(const Params& p, const SolutionTable& table);

/// False only on a table that solves the Riccati equations but fails the
/// Painleve VI residuals somewhere.
bool theorem_check(const Params& p, const SolutionTable& table);

}  // namespace udp6
