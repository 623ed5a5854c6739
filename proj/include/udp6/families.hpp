#pragma once

// Closed-form solution families and the asymptotic-linearity detector.
//
// Riccati families (signs vary, Riccati conditions required):
//   R1..R4      one-parameter families valid on a window of m
//   PConst      y = (-1, A2+B4-B1), z_m = (+1, (m-1)Q+B1) for large m
//   PConstLow   y = (+1, A3), z = (+1, B4) for small m
//   Sol0        global patch of R3 (m <= 0) and R1 (m >= 1), parameter c
//   SolN2       global patch with a constant middle piece, m0 < 0, parameter c'
//   SolP        global patch with a constant middle piece, m0 > 0, parameter c
// No-parity families (all signs -1, constraint required):
//   LinAnsatz       Y = (Q-a)m + b, Z = a m + g
//   LinAnsatzPrime  Y = a'm + b', Z = a'm + g'

#include <optional>
#include <string>
#include <vector>

#include "udp6/evolution.hpp"
#include "udp6/params.hpp"

namespace udp6 {

struct DerivedConstants {
  Rational h;        // A3 + B1 - A2 - B4
  Rational h_prime;  // A3 - A4 - B3 + B4
};

DerivedConstants compute_h(const Params& p);

enum class FamilyId { R1, R2, R3, R4, PConst, PConstLow, Sol0, SolN2, SolP, LinAnsatz, LinAnsatzPrime };

/// Case-insensitive; accepts "pconst", "p-const", "linansatz", "lin-ansatz-prime", ...
FamilyId parse_family_id(const std::string& name);
const char* to_string(FamilyId id);

struct FamilyInfo {
  FamilyId id;
  std::string free_parameters;
  std::string summary;
};

const std::vector<FamilyInfo>& family_catalog();

/// alpha, beta, gamma of either ansatz (primed values for LinAnsatzPrime).
struct LinearAnsatz {
  Rational alpha, beta, gamma;

  Rational delta(const Params& p) const { return p.q - alpha; }
  friend bool operator==(const LinearAnsatz&, const LinearAnsatz&) = default;
};

struct FamilySpec {
  FamilyId id = FamilyId::Sol0;
  std::optional<Rational> c;  // c or c'
  std::optional<Index> m0;
  std::optional<LinearAnsatz> ansatz;
};

struct Condition {
  std::string expr;
  bool holds = false;
  std::string detail;  // numeric values or the first failing m
};

struct FamilyInstance {
  SolutionTable table;
  bool valid = false;
  std::vector<Condition> conditions;

  std::vector<Condition> violated() const;
};

/// Builds the family table over [m_min, m_max] and evaluates its conditions.
/// Throws ParseError/std::invalid_argument on missing free parameters or a
/// wrong-signed m0, ConstraintError when the family's parameter
/// preconditions fail.
FamilyInstance instantiate_family(const FamilySpec& spec, const Params& p, Index m_min, Index m_max);

bool linear_ansatz_identity_holds(const Params& p, const LinearAnsatz& a, bool primed);

/// The four m-dependent inequalities at m plus 0 <= alpha <= Q.
/// Throws ConstraintError if the ansatz identity fails.
bool check_linear_ansatz(const Params& p, const LinearAnsatz& a, Index m, bool primed);

struct LinearTail {
  bool detected = false;
  Index m0 = 0;  // forward: affine for m >= m0; backward: affine for m <= m0
  LinearAnsatz ansatz;
  Rational slope_y, slope_z;
  bool slopes_consistent = false;  // alpha + delta = Q (forward), equal slopes (backward)
  bool identity = false;
  bool alpha_in_range = false;
  /// Forward: least m with the inequalities holding on [m, last-1].
  /// Backward: greatest m with them holding on [first, m].
  std::optional<Index> inequalities_edge;

  bool consistent() const {
    return detected && slopes_consistent && identity && alpha_in_range && inequalities_edge.has_value();
  }
};

struct LinearityReport {
  LinearTail forward;
  LinearTail backward;

  bool conjecture_consistent() const { return forward.consistent() && backward.consistent(); }
};

/// Looks for exact affine behaviour over the last (first) w steps and
/// extends it as far as the table allows. Throws std::invalid_argument if
/// the table has fewer than 2w+2 rows or w < 2.
LinearityReport detect_asymptotic_linearity(const Params& p, const SolutionTable& table, Index w = 3);

}  // namespace udp6
