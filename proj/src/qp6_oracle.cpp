#include "udp6/qp6_oracle.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>
#include <ostream>
#include <stdexcept>

namespace udp6 {

namespace {

unsigned bits_to_digits10(unsigned bits) { return static_cast<unsigned>(std::ceil(bits * 0.30103)) + 2; }

Real real_of(const Rational& r) { return Real(r.get_num().get_str()) / Real(r.get_den().get_str()); }

}  // namespace

PrecisionScope::PrecisionScope(unsigned bits) : bits_(bits), saved_digits10_(Real::default_precision()) {
  Real::default_precision(bits_to_digits10(bits));
}

PrecisionScope::~PrecisionScope() { Real::default_precision(saved_digits10_); }

unsigned default_precision_bits(double eps, const Rational& max_amplitude) {
  if (!(eps > 0)) throw std::invalid_argument("eps must be positive");
  const double amp = std::abs(max_amplitude.get_d());
  return static_cast<unsigned>(std::max(256.0, std::ceil(64.0 + 8.0 * amp / eps)));
}

LogSigned LogSigned::exp_image(Sign s, const Rational& amp, const Real& eps) {
  return {to_int(s), Real(real_of(amp) / eps), false};
}

LogSigned LogSigned::from_real(const Real& v) {
  if (v == 0) return zero();
  return {v > 0 ? 1 : -1, Real(log(abs(v))), false};
}

Real LogSigned::to_real() const {
  if (sign == 0) return Real(0);
  return Real(sign * exp(logmag));
}

Real LogSigned::amplitude(const Real& eps) const {
  if (sign == 0) throw OracleError("amplitude of an exact zero");
  return Real(eps * logmag);
}

Real cancellation_threshold(unsigned bits) { return Real(pow(Real(2), -Real(bits) / 2)); }

LogSigned ls_neg(const LogSigned& x) { return {-x.sign, x.logmag, x.cancellation}; }

LogSigned ls_add(const LogSigned& x, const LogSigned& y) {
  const bool warned = x.cancellation || y.cancellation;
  if (x.is_zero()) return {y.sign, y.logmag, warned};
  if (y.is_zero()) return {x.sign, x.logmag, warned};

  const bool x_big = x.logmag >= y.logmag;
  const LogSigned& hi = x_big ? x : y;
  const LogSigned& lo = x_big ? y : x;
  const Real gap = hi.logmag - lo.logmag;

  if (x.sign == y.sign) return {hi.sign, Real(hi.logmag + log(1 + exp(-gap))), warned};

  if (gap == 0) return LogSigned::zero(true);
  const unsigned bits = static_cast<unsigned>(Real::default_precision() * 3.3219);
  const Real scale = std::max(Real(1), Real(abs(hi.logmag)));
  const bool warn = gap / scale < cancellation_threshold(bits);
  return {hi.sign, Real(hi.logmag + log(1 - exp(-gap))), warned || warn};
}

LogSigned ls_sub(const LogSigned& x, const LogSigned& y) { return ls_add(x, ls_neg(y)); }

LogSigned ls_mul(const LogSigned& x, const LogSigned& y) {
  const bool warned = x.cancellation || y.cancellation;
  if (x.is_zero() || y.is_zero()) return LogSigned::zero(warned);
  return {x.sign * y.sign, Real(x.logmag + y.logmag), warned};
}

LogSigned ls_div(const LogSigned& x, const LogSigned& y) {
  if (y.is_zero()) throw PoleError("division by zero");
  const bool warned = x.cancellation || y.cancellation;
  if (x.is_zero()) return LogSigned::zero(warned);
  return {x.sign * y.sign, Real(x.logmag - y.logmag), warned};
}

// ---------------------------------------------------------------------------

LogSigned QParams::t(Index m) const { return {1, Real(q.logmag * m), false}; }

QParams q_params(const Params& p, const Real& eps) {
  if (!(eps > 0)) throw std::invalid_argument("eps must be positive");
  QParams qp;
  qp.eps = eps;
  qp.q = LogSigned::exp_image(Sign::plus, p.q, eps);
  for (int i = 1; i <= 4; ++i) {
    qp.a[static_cast<std::size_t>(i - 1)] = LogSigned::exp_image(p.a_s(i), p.A(i), eps);
    qp.b[static_cast<std::size_t>(i - 1)] = LogSigned::exp_image(p.b_s(i), p.B(i), eps);
  }
  return qp;
}

std::pair<Real, int> constraint_defect(const QParams& qp) {
  const auto& a = qp.a;
  const auto& b = qp.b;
  const LogSigned lhs = ls_mul(ls_mul(b[0], b[1]), ls_mul(a[2], a[3]));
  const LogSigned rhs = ls_mul(ls_mul(qp.q, ls_mul(a[0], a[1])), ls_mul(b[2], b[3]));
  return {Real(lhs.logmag - rhs.logmag), lhs.sign * rhs.sign};
}

namespace {

LogSigned guarded_div(const LogSigned& num, const LogSigned& den, Index m, const char* what) {
  if (den.is_zero()) throw PoleError(std::string("pole in ") + what + " at m=" + std::to_string(m));
  return ls_div(num, den);
}

// (v - t u1)(v - t u2) / ((v - w1)(v - w2)) with the matching parameter pairs.
std::pair<LogSigned, LogSigned> rational_factor(const LogSigned& v, const LogSigned& t, const LogSigned& u1,
                                                const LogSigned& u2, const LogSigned& w1, const LogSigned& w2) {
  const LogSigned num = ls_mul(ls_sub(v, ls_mul(t, u1)), ls_sub(v, ls_mul(t, u2)));
  const LogSigned den = ls_mul(ls_sub(v, w1), ls_sub(v, w2));
  return {num, den};
}

}  // namespace

QState qp6_step(const QParams& qp, Index m, const QState& s) {
  const auto& a = qp.a;
  const auto& b = qp.b;
  const LogSigned t = qp.t(m);

  const auto [nz, dz] = rational_factor(s.y, t, a[0], a[1], a[2], a[3]);
  const LogSigned z_next = guarded_div(ls_mul(ls_mul(b[2], b[3]), nz), ls_mul(s.z, dz), m, "z-step");

  const auto [ny, dy] = rational_factor(z_next, t, b[0], b[1], b[2], b[3]);
  const LogSigned y_next = guarded_div(ls_mul(ls_mul(a[2], a[3]), ny), ls_mul(s.y, dy), m, "y-step");
  return {y_next, z_next};
}

QState qriccati_step(const QParams& qp, Index m, const LogSigned& y) {
  const auto& a = qp.a;
  const auto& b = qp.b;
  const LogSigned t = qp.t(m);
  const LogSigned z_next =
      guarded_div(ls_mul(b[3], ls_sub(y, ls_mul(t, a[1]))), ls_sub(y, a[3]), m, "Riccati z-step");
  const LogSigned y_next =
      guarded_div(ls_mul(a[2], ls_sub(z_next, ls_mul(t, b[0]))), ls_sub(z_next, b[2]), m, "Riccati y-step");
  return {y_next, z_next};
}

namespace {

Real relative_defect(const LogSigned& lhs, const LogSigned& rhs) {
  if (lhs.is_zero() && rhs.is_zero()) return Real(0);
  if (lhs.is_zero() || rhs.is_zero() || lhs.sign != rhs.sign) return Real(2);
  return Real(abs(expm1(lhs.logmag - rhs.logmag)));
}

}  // namespace

std::pair<Real, Real> qp6_defects(const QParams& qp, Index m, const QState& cur, const QState& next) {
  const auto& a = qp.a;
  const auto& b = qp.b;
  const LogSigned t = qp.t(m);

  const LogSigned lhs1 = ls_div(ls_mul(cur.z, next.z), ls_mul(b[2], b[3]));
  const auto [n1, d1] = rational_factor(cur.y, t, a[0], a[1], a[2], a[3]);
  const LogSigned lhs2 = ls_div(ls_mul(cur.y, next.y), ls_mul(a[2], a[3]));
  const auto [n2, d2] = rational_factor(next.z, t, b[0], b[1], b[2], b[3]);
  return {relative_defect(lhs1, guarded_div(n1, d1, m, "defect")), relative_defect(lhs2, guarded_div(n2, d2, m, "defect"))};
}

// ---------------------------------------------------------------------------

bool LimitReport::all_converging() const {
  if (abort_reason || verdicts.empty()) return false;
  return std::all_of(verdicts.begin(), verdicts.end(),
                     [](const LimitVerdict& v) { return v.monotone && v.converging && v.signs_ok; });
}

namespace {

Rational largest_amplitude(const Params& p, const SolutionTable& table, Index m_min, Index m_max) {
  Rational big = abs(p.q) * std::max(std::abs(m_min), std::abs(m_max));
  for (int i = 1; i <= 4; ++i) big = rmax(big, rmax(Rational(abs(p.A(i))), Rational(abs(p.B(i)))));
  for (Index m = m_min; m <= m_max; ++m) {
    big = rmax(big, Rational(abs(table.at(m).y.amp)));
    big = rmax(big, Rational(abs(table.at(m).z.amp)));
  }
  // Intermediate products reach a few multiples of the largest amplitude.
  return Rational(4 * big);
}

}  // namespace

LimitReport ud_limit_compare(const Params& p, const SolutionTable& table, const std::vector<double>& schedule,
                             Index m_min, Index m_max) {
  if (schedule.empty()) throw std::invalid_argument("empty eps schedule");
  for (std::size_t k = 0; k < schedule.size(); ++k) {
    if (!(schedule[k] > 0)) throw std::invalid_argument("eps values must be positive");
    if (k > 0 && !(schedule[k] < schedule[k - 1])) throw std::invalid_argument("eps schedule must be strictly decreasing");
  }
  if (m_min > m_max) throw std::invalid_argument("empty window");
  if (!table.covers(m_min) || !table.covers(m_max)) throw std::invalid_argument("window outside the table");
  require_constraint(p);

  LimitReport report;
  const Rational big = largest_amplitude(p, table, m_min, m_max);

  for (double eps_d : schedule) {
    const unsigned bits = default_precision_bits(eps_d, big);
    PrecisionScope scope(bits);
    const Real eps(eps_d);
    const Real floor_unit = cancellation_threshold(bits);
    const QParams qp = q_params(p, eps);

    const auto record = [&](Index m, const QState& s) {
      const auto& row = table.at(m);
      LimitRow r{m, eps_d, bits, Real(0), Real(0), Real(0), Real(0), false, false, false};
      const auto err = [&](const LogSigned& v, const Rational& amp) {
        return v.is_zero() ? std::numeric_limits<Real>::infinity() : Real(abs(v.amplitude(eps) - real_of(amp)));
      };
      r.err_y = err(s.y, row.y.amp);
      r.err_z = err(s.z, row.z.amp);
      r.floor_y = floor_unit * std::max(Real(1), Real(abs(real_of(row.y.amp))));
      r.floor_z = floor_unit * std::max(Real(1), Real(abs(real_of(row.z.amp))));
      r.sign_ok_y = s.y.sign == to_int(row.y.sign);
      r.sign_ok_z = s.z.sign == to_int(row.z.sign);
      r.cancellation = s.y.cancellation || s.z.cancellation;
      report.rows.push_back(std::move(r));
    };

    const auto& head = table.at(m_min);
    QState s{LogSigned::exp_image(head.y.sign, head.y.amp, eps), LogSigned::exp_image(head.z.sign, head.z.amp, eps)};
    record(m_min, s);
    try {
      for (Index m = m_min; m < m_max; ++m) {
        s = qp6_step(qp, m, s);
        record(m + 1, s);
      }
    } catch (const OracleError& e) {
      report.abort_reason = std::string(e.what()) + " (eps=" + std::to_string(eps_d) + ")";
      break;
    }
  }

  std::map<Index, std::vector<const LimitRow*>> by_m;
  for (const auto& r : report.rows) by_m[r.m].push_back(&r);
  for (const auto& [m, rows] : by_m) {
    LimitVerdict v{m, true, true, rows.back()->sign_ok_y && rows.back()->sign_ok_z, false};
    for (std::size_t k = 0; k < rows.size(); ++k) {
      v.cancellation = v.cancellation || rows[k]->cancellation;
      if (k == 0) continue;
      const auto& prev = *rows[k - 1];
      const auto& cur = *rows[k];
      if (!(cur.err_y <= prev.err_y || cur.err_y <= cur.floor_y)) v.monotone = false;
      if (!(cur.err_z <= prev.err_z || cur.err_z <= cur.floor_z)) v.monotone = false;
    }
    const auto& first = *rows.front();
    const auto& last = *rows.back();
    const bool y_conv = last.err_y <= last.floor_y || last.err_y * 2 <= first.err_y;
    const bool z_conv = last.err_z <= last.floor_z || last.err_z * 2 <= first.err_z;
    v.converging = rows.size() == 1 ? (last.err_y <= last.floor_y && last.err_z <= last.floor_z) : (y_conv && z_conv);
    report.verdicts.push_back(v);
  }
  return report;
}

void write_limit_report_csv(std::ostream& out, const LimitReport& report) {
  out << "m,eps,err_Y,err_Z,sign_ok_Y,sign_ok_Z,cancellation_flag\n";
  for (const auto& r : report.rows)
    out << r.m << ',' << r.eps << ',' << r.err_y.str(6, std::ios::scientific) << ','
        << r.err_z.str(6, std::ios::scientific) << ',' << (r.sign_ok_y ? 1 : 0) << ',' << (r.sign_ok_z ? 1 : 0) << ','
        << (r.cancellation ? 1 : 0) << '\n';
  if (report.abort_reason) out << "# aborted: " << *report.abort_reason << '\n';
}

}  // namespace udp6
