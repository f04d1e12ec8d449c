#include "hypomix/coeffs.hpp"

#include <cmath>
#include <limits>
#include <sstream>

#include "hypomix/errors.hpp"

namespace hypomix {

std::string to_string(NuRegime r) {
  switch (r) {
    case NuRegime::both: return "both";
    case NuRegime::phi_only: return "phi_only";
    case NuRegime::unrestricted: return "unrestricted";
  }
  return "unrestricted";
}

bool CoeffLedger::all_ok() const {
  for (const auto& c : constraints)
    if (!c.ok) return false;
  return true;
}

CoeffLedger build_ledger(double frakU) {
  if (!(frakU >= 1.0) || !std::isfinite(frakU))
    throw ConfigError("build_ledger: frakU must be finite and >= 1");

  CoeffLedger led;
  led.frakU = frakU;
  const double U2 = frakU * frakU;
  const double U6 = U2 * U2 * U2;
  const double U8 = U6 * U2;

  led.alpha0 = 1.0 / (4.0 * 3504.0 * U6);
  led.beta0 = 4.0 * led.alpha0 * led.alpha0;
  led.gamma0 = 128.0 * led.alpha0 * led.alpha0 * led.alpha0;
  led.eps0 = led.beta0 / (32.0 * U2);
  led.delta0 = 1.0 / (4.0 * 3504.0 * U6);
  const double inner = led.beta0 / (4.0 * 7008.0 * U8);
  led.nu0 = inner * std::sqrt(inner);  // inner^(3/2)
  led.C0sq = 20.0 / (led.delta0 * led.gamma0);
  // Report underflow explicitly instead of letting a silent zero disable the
  // nu/k <= nu0 classification.
  led.nu0_underflowed =
      !(led.nu0 >= std::numeric_limits<double>::min()) || !std::isfinite(led.nu0);

  // The eight pinned constraint checks. The first four are stated for the
  // running coefficients but every power of nu and k cancels, so they are
  // evaluated on the base constants:
  //   beta^2/(alpha*gamma) = beta0^2/(alpha0*gamma0),  alpha^2/(beta*nu) = alpha0^2/beta0.
  const double eq_tol = 1e-12;
  auto push_ineq = [&led](std::string name, double lhs, double rhs) {
    led.constraints.push_back({std::move(name), lhs, rhs, false, lhs <= rhs});
  };
  auto push_eq = [&led, eq_tol](std::string name, double lhs, double rhs) {
    const bool ok = std::abs(lhs - rhs) <= eq_tol * std::max(1.0, std::abs(rhs));
    led.constraints.push_back({std::move(name), lhs, rhs, true, ok});
  };

  const double ratio1 = led.beta0 * led.beta0 / (led.alpha0 * led.gamma0);
  const double ratio2 = led.alpha0 * led.alpha0 / led.beta0;
  push_ineq("beta_sq_over_alpha_gamma_le_quarter", ratio1, 0.25);
  push_eq("beta_sq_over_alpha_gamma_eq_eighth", ratio1, 0.125);
  push_ineq("alpha_sq_over_beta_nu_le_half", ratio2, 0.5);
  push_eq("alpha_sq_over_beta_nu_eq_quarter", ratio2, 0.25);
  push_ineq("gamma_over_beta_le_inv_12U2", led.gamma0 / led.beta0,
            1.0 / (12.0 * U2));
  // absorption margins: 2U^2/(alpha0*beta0) >= 3 and 2U^2/gamma0 >= 3,
  // recorded as lhs <= rhs with the reciprocal orientation.
  push_ineq("absorb_alpha_beta_ge_three", 3.0, 2.0 * U2 / (led.alpha0 * led.beta0));
  push_ineq("absorb_gamma_ge_three", 3.0, 2.0 * U2 / led.gamma0);
  push_ineq("beta0_le_alpha0_le_one",
            std::max(led.beta0 - led.alpha0, led.alpha0 - 1.0), 0.0);

  return led;
}

CoeffLedger build_ledger(const HypothesisCertificate& cert) {
  if (!cert.satisfied) {
    std::ostringstream os;
    os << "build_ledger: profile '" << cert.profile
       << "' has no valid monotonicity certificate on [-" << cert.L << ", "
       << cert.L << "]";
    throw NonMonotone(os.str());
  }
  return build_ledger(cert.frakU);
}

double alpha(const CoeffLedger& led, double nu, int k) {
  return led.alpha0 * std::cbrt(nu * nu) / std::cbrt(static_cast<double>(k) * k);
}

double beta(const CoeffLedger& led, double nu, int k) {
  const double dk = static_cast<double>(k);
  return led.beta0 * std::cbrt(nu) / (dk * std::cbrt(dk));
}

double gamma_coeff(const CoeffLedger& led, int k) {
  const double dk = static_cast<double>(k);
  return led.gamma0 / (dk * dk);
}

double rate_scale(double nu, int k) {
  return std::cbrt(nu) * std::cbrt(static_cast<double>(k) * k);
}

NuRegime check_nu_restriction(const CoeffLedger& led, double nu, int k) {
  if (k < 1) throw ConfigError("check_nu_restriction: k must be >= 1");
  if (!(nu >= 0.0)) throw ConfigError("check_nu_restriction: nu must be >= 0");
  const double q = nu / static_cast<double>(k);
  if (q <= led.nu0) return NuRegime::both;
  if (q <= 1.0) return NuRegime::phi_only;
  return NuRegime::unrestricted;
}

}  // namespace hypomix
