#pragma once

// Exact residuals of the ultradiscrete Painleve VI system with parity
// variables. Terms carrying a parity factor S(-1) are dropped before the
// maxima are taken, so each residual is an equality of two exact maxima.
//
// The unsigned-parameter residuals go through the four fixed-parity case
// reductions; the signed-parameter residuals evaluate the full eight-term
// equations. The two are coded independently and tested against each other.

#include <string>

#include "udp6/params.hpp"
#include "udp6/tropical.hpp"

namespace udp6 {

/// The two sides of one max-plus equation after parity filtering.
struct Balance {
  ExtendedAmplitude lhs;
  ExtendedAmplitude rhs;

  bool holds() const { return lhs == rhs; }
  /// "lhs = rhs" or "lhs != rhs (gap g)"; diagnostic only.
  std::string describe() const;
};

/// z-equation at index m: relates y_m, z_m and z_{m+1}.
/// Requires all parameter signs +1 and the amplitude constraint
/// (ConstraintError / std::invalid_argument otherwise).
Balance balance_zz(const Params& p, Index m, const ParityPair& y, const ParityPair& z, const ParityPair& z_next);
bool residual_zz(const Params& p, Index m, const ParityPair& y, const ParityPair& z, const ParityPair& z_next);

/// y-equation at index m: relates y_m, y_{m+1} and z_{m+1}.
Balance balance_yy(const Params& p, Index m, const ParityPair& y, const ParityPair& y_next, const ParityPair& z_next);
bool residual_yy(const Params& p, Index m, const ParityPair& y, const ParityPair& y_next, const ParityPair& z_next);

/// Eight-term equations admitting parameter parities. Requires the sign
/// constraint a1 a2 a3 a4 = b1 b2 b3 b4 (ConstraintError otherwise); the
/// amplitude constraint is also enforced.
Balance balance_zz_signed(const Params& p, Index m, const ParityPair& y, const ParityPair& z,
                          const ParityPair& z_next);
bool residual_zz_signed(const Params& p, Index m, const ParityPair& y, const ParityPair& z, const ParityPair& z_next);

Balance balance_yy_signed(const Params& p, Index m, const ParityPair& y, const ParityPair& y_next,
                          const ParityPair& z_next);
bool residual_yy_signed(const Params& p, Index m, const ParityPair& y, const ParityPair& y_next,
                        const ParityPair& z_next);

}  // namespace udp6
