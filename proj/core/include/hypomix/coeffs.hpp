/// @file coeffs.hpp
/// @brief Coefficient ledger: the base constants of the hypocoercivity scheme as
///        explicit functions of the hypothesis constant U (written frakU), the
///        per-(nu, k) running coefficients, and the pinned constraint checks.
///
/// Base constants (frakU = U):
///   alpha0 = 1 / (4 * 3504 * U^6)
///   beta0  = 4 * alpha0^2
///   gamma0 = 128 * alpha0^3
///   eps0   = beta0 / (32 U^2)
///   delta0 = 1 / (4 * 3504 * U^6)
///   nu0    = (beta0 / (4 * 7008 * U^8))^(3/2)
///   C0sq   = 20 / (delta0 * gamma0)
///
/// Running coefficients for viscosity nu and wavenumber k:
///   alpha = alpha0 * nu^(2/3) * k^(-2/3)
///   beta  = beta0  * nu^(1/3) * k^(-4/3)
///   gamma = gamma0 * k^(-2)
///
/// The k-dependence is applied as a single factor (cbrt-based) so that the
/// scaling identities alpha(nu,k) = alpha(nu,1) * k^(-2/3) etc. hold bit-exactly.
#pragma once

#include <string>
#include <vector>

#include "hypomix/shear.hpp"

namespace hypomix {

/// Which decay statements the (nu, k) pair is entitled to:
///  - both:         nu/k <= nu0, the full Lyapunov chain applies
///  - phi_only:     nu0 < nu/k <= 1, only the base-functional dissipation chain
///  - unrestricted: nu/k > 1, no smallness restriction holds
enum class NuRegime { both, phi_only, unrestricted };

std::string to_string(NuRegime r);

struct ConstraintCheck {
  std::string name;
  double lhs = 0.0;
  double rhs = 0.0;
  bool equality = false;  ///< check |lhs - rhs| <= tol instead of lhs <= rhs
  bool ok = false;
};

struct CoeffLedger {
  double frakU = 1.0;
  double alpha0 = 0.0;
  double beta0 = 0.0;
  double gamma0 = 0.0;
  double eps0 = 0.0;
  double delta0 = 0.0;
  double nu0 = 0.0;
  double C0sq = 0.0;
  bool nu0_underflowed = false;  ///< nu0 evaluated to zero/subnormal in binary64
  std::vector<ConstraintCheck> constraints;  ///< the eight pinned checks

  bool all_ok() const;
};

/// Build the ledger for a given hypothesis constant (must be >= 1).
CoeffLedger build_ledger(double frakU);

/// Build from a certificate; requires cert.satisfied (throws NonMonotone).
CoeffLedger build_ledger(const HypothesisCertificate& cert);

// ---- running coefficients --------------------------------------------------

double alpha(const CoeffLedger& led, double nu, int k);
double beta(const CoeffLedger& led, double nu, int k);
double gamma_coeff(const CoeffLedger& led, int k);

/// The decay rate scale nu^(1/3) * k^(2/3).
double rate_scale(double nu, int k);

/// Classify the (nu, k) pair against nu0 and 1 (see NuRegime).
NuRegime check_nu_restriction(const CoeffLedger& led, double nu, int k);

}  // namespace hypomix
