/// @file functionals.hpp
/// @brief Per-sample diagnostics: norms, the twisted-derivative field
///        J g = d_y g + i k t u' g, the hypocoercivity functionals, and the
///        instantaneous balance residuals.
///
/// Base functional on a mode profile g with running coefficients
/// (alpha, beta, gamma):
///
///   Phi = 1/2 [ ||g||^2 + alpha ||d_y g||^2 + 2 beta X(g) + gamma k^2 ||u' g||^2 ]
///   X(g) = k * Im <g, u' d_y g>        (cross term; zero for constant-phase g)
///
/// JJ is the same quadratic form evaluated on J g. The Lyapunov functional is
/// Phi + delta0 * JJ. The weighted norm is ||g||_{u'} = sqrt(||g||^2 + ||u' g||^2).
///
/// Balance residuals are *instantaneous spatial defects*: each analytic energy
/// identity is rearranged to zero using the semi-discrete right-hand side
/// gdot = -i k u g + nu * Levol g (- nu k^2 g in the full-Laplacian model) and
/// the diagnostic operators; the result measures how far the discrete operators
/// are from satisfying the exact integration-by-parts identities (O(h^4) on
/// resolved states, identically 0 at nu = 0 up to the discrete product rule).
#pragma once

#include <memory>

#include "hypomix/coeffs.hpp"
#include "hypomix/grid.hpp"
#include "hypomix/operators.hpp"

namespace hypomix {

struct FunctionalRecord {
  double t = 0.0;
  double l2 = 0.0;         ///< ||g||
  double weighted = 0.0;   ///< sqrt(||g||^2 + ||u' g||^2)
  double hminus1 = 0.0;    ///< sqrt(Re<g, (k^2 - d2)^{-1} g>)
  double h1 = 0.0;         ///< sqrt(k^2 ||g||^2 + ||d_y g||^2)
  double j_l2 = 0.0;       ///< ||J g||
  double j_weighted = 0.0; ///< sqrt(||J g||^2 + ||u' J g||^2)
  double phi = 0.0;
  double jj = 0.0;
  double lyap = 0.0;       ///< phi + delta0 * jj
  double batchelor = 0.0;  ///< hminus1 / l2 (0 when l2 = 0)
  double res_energy = 0.0;
  double res_gamma = 0.0;
  double res_energy_j = 0.0;
  double res_gamma_j = 0.0;
};

/// CSV column order used by the timeseries writer.
inline constexpr const char* kRecordHeader =
    "t,l2,weighted,hminus1,h1,j_l2,j_weighted,phi,jj,lyap,batchelor,"
    "res_energy,res_gamma,res_energy_j,res_gamma_j";

/// J g = d_y g + i k t u' g evaluated with the diagnostic first derivative.
cvec apply_J(const ModeState& s, const ShearOnGrid& shear);

/// Quadratic-form evaluations exposed for property tests. `g` is any profile
/// on the grid (not necessarily a trajectory state).
double phi_functional(const Grid& grid, const ShearOnGrid& shear,
                      const CoeffLedger& led, double nu, int k, const cvec& g);
double cross_term(const Grid& grid, const ShearOnGrid& shear, int k,
                  const cvec& g);

/// Lower/upper coercivity envelopes of phi:
///   1/4 [2||g||^2 +   alpha ||d_y g||^2 +   gamma k^2 ||u' g||^2]  and
///   1/4 [2||g||^2 + 3 alpha ||d_y g||^2 + 3 gamma k^2 ||u' g||^2].
struct CoercivityBounds {
  double lower = 0.0, upper = 0.0;
};
CoercivityBounds phi_envelope(const Grid& grid, const ShearOnGrid& shear,
                              const CoeffLedger& led, double nu, int k,
                              const cvec& g);

/// Diagnostic engine for one (grid, shear, k, nu, model) combination; caches
/// the elliptic factorization and scratch buffers.
class Diagnostics {
 public:
  Diagnostics(std::shared_ptr<const Grid> grid, ShearOnGrid shear,
              CoeffLedger led, int k, double nu, Model model);

  FunctionalRecord record(const ModeState& s) const;

  /// 2 U^2 (||g|| + ||Jg||) - k t ||g||_{H^-1}; nonnegativity is the mixing
  /// lower-bound inequality.
  double lemma_gap(const FunctionalRecord& r) const;

  const CoeffLedger& ledger() const { return led_; }
  const ShearOnGrid& shear() const { return shear_; }
  const Hminus1Solver& elliptic() const { return hm1_; }
  double nu() const { return nu_; }
  int k() const { return k_; }
  Model model() const { return model_; }
  const Grid& grid() const { return *grid_; }

 private:
  std::shared_ptr<const Grid> grid_;
  ShearOnGrid shear_;
  CoeffLedger led_;
  int k_;
  double nu_;
  Model model_;
  Hminus1Solver hm1_;
  std::vector<double> wsq_;  ///< u'^2
  std::vector<double> w3_;   ///< (u' u'')' = u''^2 + u' u'''
  std::vector<double> wJ_;   ///< 4 u''^2 + u' u'''
  std::vector<double> w12_;  ///< u' u''
  mutable cvec dg_, d2g_, jg_, djg_, gdot_, jdot_, scratch_;
};

}  // namespace hypomix
