#pragma once

// Initial-value evolution of the parity system.
//
// Forward: y_m, z_m -> z_{m+1} (z-equation at m) -> y_{m+1} (y-equation at m).
// Backward: y_m, z_m -> y_{m-1} (y-equation at m-1) -> z_{m-1} (z-equation at
// m-1). Both equations are symmetric in the two unknown-index variables, so
// backward steps reuse the forward formulas one index lower.
//
// Solutions exist for every initial value but are not unique when an
// amplitude hits a degenerate value (Y_m in {A3, A4, A1+mQ, A2+mQ} or the
// analogue for Z); the evolution then branches.

#include <cstddef>
#include <span>
#include <vector>

#include "udp6/params.hpp"
#include "udp6/residuals.hpp"

namespace udp6 {

// ---------------------------------------------------------------------------
// No-parity steppers (all signs -1)

Rational step_z_noparity(const Params& p, Index m, const Rational& y, const Rational& z);
Rational step_y_noparity(const Params& p, Index m, const Rational& y, const Rational& z_next);
/// Y_{m-1} from (Y_m, Z_m).
Rational step_back_y_noparity(const Params& p, Index m, const Rational& y, const Rational& z);
/// Z_{m-1} from (Y_{m-1}, Z_m).
Rational step_back_z_noparity(const Params& p, Index m, const Rational& y_prev, const Rational& z);

// ---------------------------------------------------------------------------
// Parity steppers. Every candidate returned satisfies the corresponding
// residual; candidates are deduplicated and in branch order. The lists are
// never empty.

std::vector<ParityPair> step_z_parity(const Params& p, Index m, const ParityPair& y, const ParityPair& z);
std::vector<ParityPair> step_y_parity(const Params& p, Index m, const ParityPair& y, const ParityPair& z_next);
std::vector<ParityPair> step_back_y_parity(const Params& p, Index m, const ParityPair& y, const ParityPair& z);
std::vector<ParityPair> step_back_z_parity(const Params& p, Index m, const ParityPair& y_prev,
                                           const ParityPair& z);

// ---------------------------------------------------------------------------
// Tables

/// Rows m -> (y_m, z_m) over a contiguous window.
class SolutionTable {
 public:
  SolutionTable() = default;
  /// Rows must have consecutive ascending indices; throws std::invalid_argument otherwise.
  explicit SolutionTable(std::vector<StatePair> rows);

  bool empty() const noexcept { return rows_.empty(); }
  std::size_t size() const noexcept { return rows_.size(); }
  Index first() const { return rows_.front().m; }
  Index last() const { return rows_.back().m; }
  bool covers(Index m) const { return !empty() && first() <= m && m <= last(); }
  /// Throws std::out_of_range outside the window.
  const StatePair& at(Index m) const;
  std::span<const StatePair> rows() const noexcept { return rows_; }

  SolutionTable shifted(const Rational& c) const;
  SolutionTable scaled(const Rational& factor) const;

  friend bool operator==(const SolutionTable&, const SolutionTable&) = default;

 private:
  std::vector<StatePair> rows_;
};

/// Unique all-minus solution through (Y_{m0}, Z_{m0}) over [m_min, m_max].
SolutionTable evolve_noparity(const Params& p, Index m0, const Rational& y0, const Rational& z0, Index m_min,
                              Index m_max);

/// One failed equation of a table check.
struct ResidualFailure {
  Index m;
  enum class Equation { zz, yy, riccati1, riccati2 } equation;
  Balance balance;
};

const char* to_string(ResidualFailure::Equation e);

/// Checks the z- and y-equations at every m in [first, last-1].
std::vector<ResidualFailure> check_table(const Params& p, const SolutionTable& table);

// ---------------------------------------------------------------------------
// Branch tree

struct EvolutionConfig {
  Index m_min = 0;
  Index m_max = 0;
  std::size_t max_branches = 64;
};

/// One state with its admissible successors (forward) or predecessors (backward).
struct BranchNode {
  StatePair state;
  std::vector<BranchNode> children;

  std::size_t leaf_count() const;
};

/// All solutions through a fixed initial state, up to the branch cap.
///
/// The forward and backward halves are independent given the root, so every
/// (backward path, forward path) combination is a solution table.
struct BranchTree {
  StatePair root;
  Index m_min = 0;
  Index m_max = 0;
  BranchNode forward;   // root -> m_max
  BranchNode backward;  // root -> m_min
  std::size_t max_branches = 0;
  /// Some admissible continuation was dropped because of the cap.
  bool truncated = false;

  /// Number of emitted tables, min(cap, backward leaves * forward leaves).
  std::size_t branch_count() const;
  /// Backward-major order: the first backward path with every forward path, then the next.
  std::vector<SolutionTable> tables() const;
};

/// Evolves from `initial` over [cfg.m_min, cfg.m_max]. Requires the parameter
/// constraint and m_min <= initial.m <= m_max (std::invalid_argument otherwise).
BranchTree evolve(const Params& p, const StatePair& initial, const EvolutionConfig& cfg);

}  // namespace udp6
