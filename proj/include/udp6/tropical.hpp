#pragma once

// Exact signed max-plus primitives.
//
// Amplitudes are exact rationals extended by a bottom element (-inf). Branch
// decisions elsewhere in the library hinge on exact ties, so nothing here
// ever rounds.

#include <array>
#include <compare>
#include <initializer_list>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "udp6/rational.hpp"

namespace udp6 {

// ---------------------------------------------------------------------------
// Sign

enum class Sign : int { minus = -1, plus = 1 };

constexpr Sign operator*(Sign a, Sign b) noexcept {
  return static_cast<int>(a) == static_cast<int>(b) ? Sign::plus : Sign::minus;
}
constexpr Sign operator-(Sign s) noexcept { return s == Sign::plus ? Sign::minus : Sign::plus; }
constexpr int to_int(Sign s) noexcept { return static_cast<int>(s); }

/// Accepts exactly +1 or -1.
Sign sign_from_int(long value);

// ---------------------------------------------------------------------------
// ExtendedAmplitude

/// A rational amplitude or the bottom element -inf of the max-plus semiring.
class ExtendedAmplitude {
 public:
  /// Bottom.
  ExtendedAmplitude() = default;
  ExtendedAmplitude(Rational value) : value_(std::move(value)) {}  // NOLINT(google-explicit-constructor)
  ExtendedAmplitude(long value) : value_(Rational(value)) {}        // NOLINT(google-explicit-constructor)

  static ExtendedAmplitude bottom() { return {}; }

  bool is_bottom() const noexcept { return !value_.has_value(); }
  bool is_finite() const noexcept { return value_.has_value(); }

  /// Throws std::logic_error on bottom.
  const Rational& value() const;

  /// Multiplication of a finite amplitude by a rational; bottom stays bottom.
  ExtendedAmplitude scaled(const Rational& factor) const;

  friend ExtendedAmplitude operator+(const ExtendedAmplitude& a, const ExtendedAmplitude& b);
  friend bool operator==(const ExtendedAmplitude& a, const ExtendedAmplitude& b);
  friend std::strong_ordering operator<=>(const ExtendedAmplitude& a, const ExtendedAmplitude& b);

  std::string to_string() const;

 private:
  std::optional<Rational> value_;
};

ExtendedAmplitude tmax(const ExtendedAmplitude& a, const ExtendedAmplitude& b);

/// Exact maximum of a non-empty list; bottom only if every entry is bottom.
/// Throws std::invalid_argument on an empty list.
ExtendedAmplitude tmax(std::span<const ExtendedAmplitude> terms);
ExtendedAmplitude tmax(std::initializer_list<ExtendedAmplitude> terms);

/// S(+1) = 0, S(-1) = -inf.
ExtendedAmplitude parity_indicator(Sign zeta);

/// Two-by-two exchange identity of max-plus algebra.
///
/// Returns true iff max(x1,x2) = max(x3,x4), max(w1,w2) = max(w3,w4) and
///   max(x1+w1, x3+w3, x2+w4, x4+w2) = max(x2+w2, x4+w4, x1+w3, x3+w1).
/// The first two are premises; whenever they hold the identity must too.
bool exchange_identity_check(const std::array<ExtendedAmplitude, 4>& x,
                             const std::array<ExtendedAmplitude, 4>& w);

// ---------------------------------------------------------------------------
// One-unknown max-plus equations

/// slope * x + intercept. A bottom intercept makes the term inert.
struct LinTerm {
  int slope = 0;
  ExtendedAmplitude intercept;

  bool inert() const noexcept { return intercept.is_bottom(); }
  ExtendedAmplitude at(const Rational& x) const;
};

/// Closed interval [lo, hi]; a missing endpoint is infinite.
struct Interval {
  std::optional<Rational> lo;
  std::optional<Rational> hi;

  bool contains(const Rational& x) const;
  bool is_point() const { return lo && hi && *lo == *hi; }
  friend bool operator==(const Interval&, const Interval&) = default;
};

/// Canonical union of pairwise disjoint, non-touching closed intervals in
/// increasing order.
class SolutionSet {
 public:
  SolutionSet() = default;
  /// Canonicalizes: sorts, merges overlapping or touching pieces.
  /// Throws std::invalid_argument when some lo > hi.
  explicit SolutionSet(std::vector<Interval> pieces);

  static SolutionSet everything() { return SolutionSet({Interval{}}); }
  static SolutionSet point(const Rational& x) { return SolutionSet({Interval{x, x}}); }

  bool empty() const noexcept { return pieces_.empty(); }
  bool contains(const Rational& x) const;
  std::span<const Interval> intervals() const noexcept { return pieces_; }

  /// e.g. "{3}", "[0, +inf)", "(-inf, 1] u [2, 5]", "{}".
  std::string to_string() const;

  friend bool operator==(const SolutionSet&, const SolutionSet&) = default;

 private:
  std::vector<Interval> pieces_;
};

/// Exact solution set of max(lhs terms)(x) = max(rhs terms)(x).
///
/// Slopes must lie in {0, 1, 2}. Throws std::invalid_argument if a side has
/// only inert terms (the equation then reads -inf = finite or is vacuous).
SolutionSet solve_one_unknown(std::span<const LinTerm> lhs, std::span<const LinTerm> rhs);

}  // namespace udp6
