/// @file couette.hpp
/// @brief Closed-form solution for the linear shear u(y) = y, used as ground
///        truth for the evolver.
///
/// In y-Fourier variables the mode equation transports the spectrum:
///
///   fhat(t, eta) = g0hat(eta + k t) * exp(-nu * E(eta, t))
///   E(eta, t)    = [ (eta + k t)^3 - eta^3 ] / (3 k)   (+ k^2 t, full model)
///
/// The exponent is the exact time integral of |eta + k t - k tau|^2 — no
/// numerical time quadrature anywhere. Norm laws follow by quadrature in the
/// *shifted* variable zeta = eta + k t, where the spectral mass actually sits;
/// this keeps every evaluation exact (up to quadrature of smooth decaying
/// integrands) for arbitrarily large k t, far beyond the stored window.
#pragma once

#include <functional>
#include <memory>
#include <vector>

#include "hypomix/coeffs.hpp"
#include "hypomix/functionals.hpp"
#include "hypomix/grid.hpp"

namespace hypomix {

struct CouetteSpectrum {
  int k = 1;
  Model model = Model::hypoelliptic;
  std::vector<double> eta;  ///< symmetric uniform frequency grid
  cvec g0hat;               ///< initial spectrum sampled on eta

  /// Evaluates the initial spectrum at arbitrary frequency; exact for
  /// closed-form initial data, quadrature-backed for from_grid spectra.
  std::function<cplx(double)> g0hat_fn;

  /// Active initial support [zeta_lo, zeta_hi]: where |g0hat| exceeds
  /// 1e-13 of its peak.
  double zeta_lo = 0.0, zeta_hi = 0.0;

  /// Builds the spectrum of closed-form initial data on a uniform window
  /// |eta| <= eta_max with n points. Throws ConfigError when the discrete
  /// Plancherel identity fails to reproduce the exact L2 mass to 1e-8.
  static CouetteSpectrum make(int k, Model model, const InitialData& init,
                              double eta_max = 64.0, std::size_t n = 16384);

  /// Spectrum of arbitrary grid data (treated as the t = 0 profile); the
  /// evaluator performs direct oscillatory quadrature against the grid.
  static CouetteSpectrum from_grid(const ModeState& s, double eta_max = 64.0,
                                   std::size_t n = 16384);
};

/// Spectrum at time t sampled on sp.eta. Throws AliasRisk when the shifted
/// active support has left the stored window (the samples would silently
/// miss the mass).
cvec exact_mode(const CouetteSpectrum& sp, double nu, double t);

struct OracleNorms {
  double l2 = 0.0;
  double hminus1 = 0.0;
  double h1 = 0.0;
};

/// Norms of the time-t solution by quadrature in the shifted variable
/// (valid for any t >= 0, independent of the window).
OracleNorms exact_norms(const CouetteSpectrum& sp, double nu, double t);

/// Physical-space synthesis of the time-t solution on a grid. Throws
/// AliasRisk if the active frequencies exceed the grid Nyquist limit or have
/// left the stored window.
ModeState to_grid(const CouetteSpectrum& sp, double nu, double t,
                  std::shared_ptr<const Grid> grid);

/// Full functional record of the exact solution (same column set as the
/// simulation diagnostics; balance residuals are identically zero for the
/// closed form). Uses the coefficient ledger for alpha/beta/gamma/delta0.
FunctionalRecord oracle_record(const CouetteSpectrum& sp,
                               const CoeffLedger& led, double nu, double t);

std::vector<FunctionalRecord> oracle_records(const CouetteSpectrum& sp,
                                             const CoeffLedger& led, double nu,
                                             const std::vector<double>& times);

}  // namespace hypomix
