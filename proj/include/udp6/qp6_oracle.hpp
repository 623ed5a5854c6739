#pragma once

// Signed log-domain evaluation of the q-Painleve VI system and its Riccati
// reduction, and the epsilon -> +0 comparator against ultradiscrete tables.
//
// A value is sign * exp(logmag). Quantities like e^{100/eps} overflow
// doubles, so every operation stays in the log domain at MPFR precision.

#include <boost/multiprecision/mpfr.hpp>

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "udp6/evolution.hpp"
#include "udp6/params.hpp"

namespace udp6 {

using Real = boost::multiprecision::mpfr_float;

/// Sets the default MPFR precision (in bits) for its lifetime.
class PrecisionScope {
 public:
  explicit PrecisionScope(unsigned bits);
  ~PrecisionScope();
  PrecisionScope(const PrecisionScope&) = delete;
  PrecisionScope& operator=(const PrecisionScope&) = delete;

  unsigned bits() const noexcept { return bits_; }

 private:
  unsigned bits_;
  unsigned saved_digits10_;
};

/// max(256, 64 + 8 * max_amplitude / eps) bits.
unsigned default_precision_bits(double eps, const Rational& max_amplitude);

class OracleError : public Error {
 public:
  using Error::Error;
};

/// Zero denominator in a q-step.
class PoleError : public OracleError {
 public:
  using OracleError::OracleError;
};

struct LogSigned {
  int sign = 0;  // -1, 0 or +1; 0 means the exact value zero
  Real logmag;   // meaningless when sign == 0
  bool cancellation = false;

  static LogSigned zero(bool warn = false) { return {0, Real(0), warn}; }
  static LogSigned from_log(Sign s, Real log_magnitude) { return {to_int(s), std::move(log_magnitude), false}; }
  /// s * e^{amp/eps}
  static LogSigned exp_image(Sign s, const Rational& amp, const Real& eps);
  /// Ordinary real number (for tests and small constants).
  static LogSigned from_real(const Real& v);

  bool is_zero() const noexcept { return sign == 0; }
  Real to_real() const;
  /// eps * log|v|; throws OracleError on zero.
  Real amplitude(const Real& eps) const;
};

/// Relative log gap below which opposite-sign addition raises the
/// cancellation warning: 2^(-bits/2).
Real cancellation_threshold(unsigned bits);

LogSigned ls_neg(const LogSigned& x);
LogSigned ls_add(const LogSigned& x, const LogSigned& y);
LogSigned ls_sub(const LogSigned& x, const LogSigned& y);
LogSigned ls_mul(const LogSigned& x, const LogSigned& y);
/// Throws PoleError on a zero divisor.
LogSigned ls_div(const LogSigned& x, const LogSigned& y);

/// Parameters as q-images at a given eps: q = e^{Q/eps}, a_i = sign * e^{A_i/eps}.
struct QParams {
  Real eps;
  LogSigned q;
  std::array<LogSigned, 4> a, b;

  LogSigned t(Index m) const;  // q^m
};

QParams q_params(const Params& p, const Real& eps);

/// log(b1 b2 a3 a4) - log(q a1 a2 b3 b4) and the sign product; zero and +1
/// exactly when the multiplicative constraint holds.
std::pair<Real, int> constraint_defect(const QParams& qp);

struct QState {
  LogSigned y, z;
};

/// (y_{m+1}, z_{m+1}) from (y_m, z_m).
QState qp6_step(const QParams& qp, Index m, const QState& s);

/// z(qt) = b4 (y - t a2)/(y - a4), then y(qt) = a3 (z(qt) - t b1)/(z(qt) - b3).
/// Returns (y_{m+1}, z_{m+1}).
QState qriccati_step(const QParams& qp, Index m, const LogSigned& y);

/// Relative defects of both q-Painleve VI equations for the step m -> m+1.
std::pair<Real, Real> qp6_defects(const QParams& qp, Index m, const QState& cur, const QState& next);

struct LimitRow {
  Index m;
  double eps;
  unsigned precision_bits;
  Real err_y, err_z;
  Real floor_y, floor_z;  // 2^(-bits/2) * max(1, |V|)
  bool sign_ok_y = false, sign_ok_z = false;
  bool cancellation = false;
};

struct LimitVerdict {
  Index m;
  bool monotone = false;    // errors non-increasing along the schedule (within the floor)
  bool converging = false;  // final error at most half the first, or below the floor
  bool signs_ok = false;    // signs agree at the smallest eps
  bool cancellation = false;
};

struct LimitReport {
  std::vector<LimitRow> rows;
  std::vector<LimitVerdict> verdicts;
  std::optional<std::string> abort_reason;  // pole or failure, with (m, eps)

  bool all_converging() const;
};

/// Schedule must be strictly decreasing and positive (std::invalid_argument
/// otherwise). Starts the q-system from the table row at m_min and evolves
/// forward to m_max.
LimitReport ud_limit_compare(const Params& p, const SolutionTable& table, const std::vector<double>& schedule,
                             Index m_min, Index m_max);

void write_limit_report_csv(std::ostream& out, const LimitReport& report);

}  // namespace udp6
