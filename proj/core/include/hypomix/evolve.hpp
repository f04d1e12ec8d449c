/// @file evolve.hpp
/// @brief Time integration of one x-Fourier mode under a shear flow:
///
///          dg/dt = -i k u(y) g + nu * d_yy g          (hypoelliptic)
///          dg/dt = -i k u(y) g + nu * (d_yy - k^2) g  (full Laplacian)
///
/// Strang splitting: half-step exact pointwise phase, full Crank-Nicolson
/// diffusion step (banded solve on the evolution Laplacian; the -nu k^2 part
/// of the full model is an exact scalar integrating factor), half-step phase.
/// The nu = 0 limit is exactly unitary; run() exploits this by evaluating the
/// accumulated phase directly at sample times instead of stepping.
#pragma once

#include <functional>
#include <memory>
#include <vector>

#include "hypomix/banded.hpp"
#include "hypomix/grid.hpp"
#include "hypomix/operators.hpp"
#include "hypomix/shear.hpp"

namespace hypomix {

struct EvolveConfig {
  double dt = 1e-3;
  double T = 1.0;
  std::size_t sample_every = 1;  ///< diagnostic cadence, in steps

  /// Phase-resolution invariant: dt * k * max|u| on the grid must not exceed
  /// this (default pi/4), or construction throws ConfigError.
  double phase_cap = 0.78539816339744830961;

  /// Boundary guard: the solution magnitude on the four outermost nodes at
  /// each end must stay below guard_tol times the largest max|g| the stepper
  /// has seen, or the step throws BoundaryBreach. Measuring against the run
  /// scale -- not the instantaneous peak -- matters: the Dirichlet rows pin
  /// the (compactly small) initial tail values at the boundary, so a strongly
  /// decaying interior would otherwise trip the guard without any mass ever
  /// moving outward. Also trips NonFinite on NaN/Inf.
  double guard_tol = 1e-8;
};

/// Receives each sampled state in time order.
using SampleSink = std::function<void(const ModeState&)>;

struct RunSummary {
  std::size_t n_steps = 0;    ///< steps actually executed
  std::size_t n_samples = 0;  ///< sink invocations (per sink)
  double t_final = 0.0;
  bool transport_path = false;  ///< true when the exact nu = 0 sampler ran
  ModeState final_state;
};

/// Reusable integrator for one (grid, k, model, nu, shear) combination; the
/// Crank-Nicolson factorization is built once. The shear is sampled on the
/// grid without a monotonicity requirement (the integrator is well-defined
/// for any C^3 profile; monotonicity matters to the *estimates*, not the
/// scheme).
class Stepper {
 public:
  Stepper(std::shared_ptr<const Grid> grid, int k, Model model, double nu,
          const ShearProfile& p, const EvolveConfig& cfg);

  /// Advances s by one dt in place (phase half, diffusion, phase half),
  /// then runs the boundary/finiteness guard.
  void step(ModeState& s) const;

  const ShearOnGrid& shear() const { return shear_; }
  const Grid& grid() const { return *grid_; }
  double nu() const { return nu_; }
  int k() const { return k_; }
  Model model() const { return model_; }
  const EvolveConfig& config() const { return cfg_; }

  /// Boundary/finiteness guard, public so the transport sampler and tests
  /// can apply the identical check.
  void guard(const ModeState& s) const;

 private:
  std::shared_ptr<const Grid> grid_;
  int k_;
  Model model_;
  double nu_;
  EvolveConfig cfg_;
  ShearOnGrid shear_;
  cvec phase_half_;      ///< exp(-i k u dt / 2)
  double full_factor_;   ///< exp(-nu k^2 dt), 1 in hypoelliptic mode
  std::unique_ptr<BandedLU> cn_;  ///< I - (nu dt/2) Levol, absent when nu = 0
  mutable cvec scratch_;
  mutable double peak_scale_ = 0.0;  ///< largest max|g|^2 seen by guard()
};

/// One Strang step as a standalone call (builds a Stepper internally; prefer
/// the class or run() in loops).
ModeState step(const ModeState& s, const EvolveConfig& cfg, double nu,
               const ShearProfile& p);

/// Advances s0 to s0.t + T, invoking every sink at step 0, every
/// sample_every-th step, and the final step. Deterministic: identical inputs
/// give bit-identical trajectories. At nu = 0 the samples are produced by
/// direct evaluation of the accumulated phase (exactly unitary); the
/// inviscid resolution rule h * k * t_end * max u' (over the data support)
/// <= pi/2 is enforced up front, and its violation throws
/// ResolutionTooCoarse.
RunSummary run(const ModeState& s0, const EvolveConfig& cfg, double nu,
               const ShearProfile& p, const std::vector<SampleSink>& sinks);

/// Co-evolved twisted field: the pair (g, w) advanced together, where w
/// integrates the commutator-corrected equation
///   dw/dt = -i k u w + nu [ Levol + (u'''/u') - 2 d1 (u''/u') ] w
///           + nu [ (u'''/u' - 2 (u''/u')^2) d1 g + 2 (u''/u') d2 g ]
/// with the same splitting (sources enter the Crank-Nicolson stage
/// trapezoidally). Cross-validates apply_J, which evaluates w = J g from the
/// main trajectory alone.
struct JDirectResult {
  ModeState state;  ///< main trajectory at the final time
  cvec w;           ///< directly evolved twisted field at the final time
};

JDirectResult evolve_J_direct(const ModeState& s0, const EvolveConfig& cfg,
                              double nu, const ShearProfile& p);

}  // namespace hypomix
