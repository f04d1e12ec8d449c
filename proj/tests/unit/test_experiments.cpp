/// @file test_experiments.cpp
/// @brief Orchestration layer: rate fits on synthetic series, the mixing-rate
///        envelope fit, monitored runs end to end, the enhanced-diffusion
///        sweep (guards, a miniature sweep, determinism), and multi-mode
///        aggregation with a two-dimensional Plancherel cross-check.

#include <cmath>
#include <complex>
#include <numbers>
#include <vector>

#include <doctest.h>

#include "hypomix/coeffs.hpp"
#include "hypomix/errors.hpp"
#include "hypomix/evolve.hpp"
#include "hypomix/experiments.hpp"
#include "hypomix/functionals.hpp"
#include "hypomix/grid.hpp"
#include "hypomix/operators.hpp"
#include "hypomix/shear.hpp"
#include "test_support.hpp"

using namespace hypomix;
using namespace std::complex_literals;

namespace {

InitialData unit_gaussian() {
  InitialData init;
  init.kind = InitialData::Kind::gaussian_bump;
  init.center = 0.0;
  init.width = 1.0;
  init.amplitude = {1.0, 0.0};
  return init;
}

std::vector<FunctionalRecord> hminus1_series(
    double t_max, double dt, double (*value)(double)) {
  std::vector<FunctionalRecord> recs;
  for (double t = 0.0; t <= t_max + 1e-12; t += dt) {
    FunctionalRecord r;
    r.t = t;
    r.hminus1 = value(t);
    recs.push_back(r);
  }
  return recs;
}

}  // namespace

TEST_SUITE("experiments") {
  TEST_CASE("power-law and exponential fits recover exact slopes") {
    std::vector<double> t = {1.0, 2.0, 4.0, 8.0, 16.0};
    std::vector<double> pl(t.size()), ex(t.size());
    for (std::size_t i = 0; i < t.size(); ++i) {
      pl[i] = 3.0 * std::pow(t[i], -1.5);
      ex[i] = 5.0 * std::exp(-0.3 * t[i]);
    }

    auto f1 = fit_power_law(t, pl);
    CHECK(f1.kind == RateFit::Kind::power_law);
    CHECK(f1.exponent == doctest::Approx(-1.5).epsilon(1e-12));
    CHECK(f1.r_squared == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(f1.n_points == 5);
    CHECK(f1.t1 == 1.0);
    CHECK(f1.t2 == 16.0);

    auto f2 = fit_exponential(t, ex);
    CHECK(f2.kind == RateFit::Kind::exponential);
    CHECK(f2.exponent == doctest::Approx(-0.3).epsilon(1e-12));
    CHECK(f2.r_squared == doctest::Approx(1.0).epsilon(1e-12));

    // guards
    CHECK_THROWS_AS(fit_power_law({1.0}, {1.0}), InsufficientSpan);
    CHECK_THROWS_AS(fit_power_law({1.0, 2.0}, {1.0}), ConfigError);
    CHECK_THROWS_AS(fit_power_law({1.0, 2.0}, {1.0, 0.0}), ConfigError);
    CHECK_THROWS_AS(fit_power_law({-1.0, 2.0}, {1.0, 1.0}), ConfigError);
    CHECK_THROWS_AS(fit_power_law({2.0, 2.0}, {1.0, 3.0}), InsufficientSpan);
    CHECK_THROWS_AS(fit_exponential({2.0, 2.0}, {1.0, 3.0}), InsufficientSpan);
  }

  TEST_CASE("mixing-rate fit: monotone series uses every in-window sample") {
    auto recs = hminus1_series(110.0, 0.25, [](double t) {
      return t < 1.0 ? 4.0 : 4.0 / t;
    });
    auto fit = fit_mixing_rate(recs, 10.0, 100.0);
    CHECK(fit.exponent == doctest::Approx(-1.0).epsilon(1e-9));
    CHECK(fit.r_squared > 1.0 - 1e-12);
    CHECK(fit.n_points == 361);  // (100 - 10) / 0.25 + 1
    CHECK(fit.t1 == doctest::Approx(10.0));
    CHECK(fit.t2 == doctest::Approx(100.0));
  }

  TEST_CASE("mixing-rate fit: oscillating series fits the peak envelope") {
    auto recs = hminus1_series(110.0, 0.25, [](double t) {
      return t < 1.0 ? 3.0 : (2.0 + std::cos(3.0 * t)) / t;
    });
    auto fit = fit_mixing_rate(recs, 10.0, 100.0);
    // the envelope of the local maxima decays like 3/t
    CHECK(fit.exponent > -1.1);
    CHECK(fit.exponent < -0.9);
    CHECK(fit.r_squared > 0.99);
    // far fewer points than samples: only the strict local maxima
    CHECK(fit.n_points < 100);
    CHECK(fit.n_points >= 10);
  }

  TEST_CASE("mixing-rate fit: window and decay guards") {
    auto recs = hminus1_series(110.0, 0.25, [](double t) {
      return t < 1.0 ? 4.0 : 4.0 / t;
    });
    CHECK_THROWS_AS(fit_mixing_rate(recs, 5.0, 100.0), ConfigError);
    CHECK_THROWS_AS(fit_mixing_rate(recs, 20.0, 20.0), ConfigError);

    auto flat = hminus1_series(110.0, 0.25, [](double) { return 1.0; });
    CHECK_THROWS_AS(fit_mixing_rate(flat, 10.0, 100.0), InsufficientDecay);

    auto sparse = hminus1_series(11.5, 0.25, [](double t) {
      return 4.0 / (t + 1.0);
    });  // only 7 samples inside [10, 100]
    CHECK_THROWS_AS(fit_mixing_rate(sparse, 10.0, 100.0), InsufficientSpan);
  }

  TEST_CASE("monitored run: all five inequalities hold on a couette mode") {
    auto grid = Grid::make(12.0, 1024);
    auto s0 = make_initial_state(grid, 1, Model::hypoelliptic, unit_gaussian());
    EvolveConfig cfg;
    cfg.dt = 0.01;
    cfg.T = 5.0;
    cfg.sample_every = 10;
    auto led = build_ledger(1.0);

    auto out = run_with_monitors(s0, cfg, 1e-3, couette(), led, "unit_couette");
    CHECK(out.summary.n_steps == 500);
    CHECK_FALSE(out.summary.transport_path);
    REQUIRE(out.records.size() == 51);
    CHECK(out.records.front().t == 0.0);
    CHECK(out.records.back().t == doctest::Approx(5.0).epsilon(1e-12));

    REQUIRE(out.reports.size() == 5);
    const char* names[] = {"phi_ode", "lyapunov", "final_bound", "gronwall",
                           "lemma_gap"};
    for (std::size_t i = 0; i < 5; ++i) {
      CAPTURE(out.reports[i].name);
      CHECK(out.reports[i].name == names[i]);
      CHECK(out.reports[i].trajectory_id == "unit_couette");
      CHECK(out.reports[i].pass);
      CHECK_FALSE(out.reports[i].advisory);
      CHECK(out.reports[i].samples_checked == 51);
    }
    CHECK(out.reports[0].regime == "phi_only");

    // trajectories must start at t = 0 for the closed bounds to make sense
    ModeState late = s0;
    late.t = 1.0;
    CHECK_THROWS_AS(run_with_monitors(late, cfg, 1e-3, couette(), led, "x"),
                    ConfigError);
  }

  TEST_CASE("monitored run above the viscosity restriction is advisory") {
    auto grid = Grid::make(12.0, 512);
    auto s0 = make_initial_state(grid, 1, Model::hypoelliptic, unit_gaussian());
    EvolveConfig cfg;
    cfg.dt = 0.005;
    cfg.T = 0.5;
    cfg.sample_every = 10;
    auto led = build_ledger(1.0);

    auto out = run_with_monitors(s0, cfg, 2.0, couette(), led, "advisory");
    CHECK(out.reports[0].regime == "unrestricted");
    CHECK(out.reports[0].advisory);
    CHECK(out.reports[0].pass);  // advisory reports never hard-fail
  }

  TEST_CASE("sweep guards reject malformed requests cheaply") {
    SweepSetup setup;
    setup.model = Model::full_laplacian;
    setup.grid = Grid::make(12.0, 768);
    setup.init = unit_gaussian();
    setup.cfg.dt = 0.05;
    setup.cfg.T = 80.0;
    setup.cfg.sample_every = 1;
    setup.threshold = 0.05;

    CHECK_THROWS_AS(
        sweep_enhanced_diffusion(couette(), 1, {1e-3}, setup),
        InsufficientSpan);
    CHECK_THROWS_AS(
        sweep_enhanced_diffusion(couette(), 1, {1e-3, 5e-3}, setup),
        InsufficientSpan);  // 0.7 decades
    CHECK_THROWS_AS(
        sweep_enhanced_diffusion(couette(), 1, {-1e-3, 1e-1}, setup),
        ConfigError);

    SweepSetup bad = setup;
    bad.threshold = 1.5;
    CHECK_THROWS_AS(
        sweep_enhanced_diffusion(couette(), 1, {1e-2, 1e-4}, bad), ConfigError);
    bad.threshold = 0.05;
    bad.grid.reset();
    CHECK_THROWS_AS(
        sweep_enhanced_diffusion(couette(), 1, {1e-2, 1e-4}, bad), ConfigError);

    // a run too short to cross the threshold reports which viscosity failed
    SweepSetup brief = setup;
    brief.cfg.T = 1.0;
    CHECK_THROWS_AS(
        sweep_enhanced_diffusion(couette(), 1, {1e-2, 1e-4}, brief),
        ThresholdNotReached);
  }

  TEST_CASE("miniature sweep reproduces the cube-root scaling") {
    SweepSetup setup;
    setup.model = Model::full_laplacian;
    setup.grid = Grid::make(12.0, 768);
    setup.init = unit_gaussian();
    setup.cfg.dt = 0.05;
    setup.cfg.T = 80.0;
    setup.cfg.sample_every = 1;
    setup.threshold = 0.05;
    const std::vector<double> nus = {1e-2, 1e-3, 1e-4};

    auto out = sweep_enhanced_diffusion(couette(), 1, nus, setup);
    REQUIRE(out.points.size() == 3);
    CHECK(out.fit.kind == RateFit::Kind::power_law);
    CHECK(out.fit.n_points == 3);
    // mixing takes longer as the viscosity drops: tau ~ nu^{-1/3}
    CHECK(out.points[0].nu == 1e-2);
    CHECK(out.points[0].tau < out.points[1].tau);
    CHECK(out.points[1].tau < out.points[2].tau);
    CHECK(out.fit.exponent > -0.37);
    CHECK(out.fit.exponent < -0.30);
    CHECK(out.fit.r_squared > 0.995);

    // worker fan-out must not disturb determinism
    auto again = sweep_enhanced_diffusion(couette(), 1, nus, setup);
    CHECK(again.fit.exponent == out.fit.exponent);
    for (std::size_t i = 0; i < 3; ++i)
      CHECK(again.points[i].tau == out.points[i].tau);
  }

  TEST_CASE("aggregation: single mode is the identity, errors are typed") {
    FunctionalRecord r;
    r.t = 0.0;
    r.l2 = 2.0;
    std::vector<std::vector<FunctionalRecord>> one = {{r}};
    auto same = aggregate_modes(one);
    REQUIRE(same.size() == 1);
    CHECK(same[0].l2 == 2.0);

    CHECK_THROWS_AS(aggregate_modes({}), ConfigError);

    FunctionalRecord r2 = r;
    std::vector<std::vector<FunctionalRecord>> ragged = {{r, r2}, {r}};
    CHECK_THROWS_AS(aggregate_modes(ragged), MismatchedGrids);

    FunctionalRecord shifted = r;
    shifted.t = 0.5;
    std::vector<std::vector<FunctionalRecord>> skewed = {{r}, {shifted}};
    CHECK_THROWS_AS(aggregate_modes(skewed), MismatchedGrids);
  }

  TEST_CASE("aggregation matches a two-dimensional Plancherel evaluation") {
    // three modes assembled into f(x, y) = sum_k g_k(y) e^{i k x}; the
    // x-average of |f|^2 is exactly the sum of the per-mode masses, so the
    // aggregated l2 must reproduce ||f||_{2D} / sqrt(2 pi).
    auto grid = Grid::make(10.0, 512);
    auto led = build_ledger(1.0);
    auto shear = ShearOnGrid::sample(couette(), *grid);

    std::vector<cvec> gk(3);
    std::vector<std::vector<FunctionalRecord>> per_mode;
    for (int k = 1; k <= 3; ++k) {
      cvec g(grid->N);
      for (std::size_t i = 0; i < grid->N; ++i) {
        const double y = grid->y[i];
        g[i] = std::exp(-y * y / (2.0 * (0.5 + 0.3 * k))) *
               std::exp(cplx(0.0, 0.4 * k * y)) * (1.0 / k);
      }
      gk[k - 1] = g;
      ModeState s;
      s.grid = grid;
      s.k = k;
      s.t = 0.0;
      s.g = g;
      Diagnostics diag(grid, shear, led, k, 1e-3, Model::hypoelliptic);
      per_mode.push_back({diag.record(s)});
    }
    auto agg = aggregate_modes(per_mode);
    REQUIRE(agg.size() == 1);

    // direct 2D norm on a 256-point periodic x-grid (exact for |k| <= 3)
    const int nx = 256;
    const double dx = 2.0 * std::numbers::pi / nx;
    double mass2d = 0.0;
    for (int ix = 0; ix < nx; ++ix) {
      const double x = ix * dx;
      cvec f(grid->N, 0.0);
      for (int k = 1; k <= 3; ++k) {
        const cplx ph = std::exp(cplx(0.0, k * x));
        for (std::size_t i = 0; i < grid->N; ++i) f[i] += gk[k - 1][i] * ph;
      }
      mass2d += norm_sq(*grid, f) * dx;
    }
    CHECK(agg[0].l2 ==
          doctest::Approx(std::sqrt(mass2d / (2.0 * std::numbers::pi)))
              .epsilon(1e-12));

    // cross-check the quadratic-sum rule on one more column
    const double manual_h1 = std::sqrt(
        per_mode[0][0].h1 * per_mode[0][0].h1 +
        per_mode[1][0].h1 * per_mode[1][0].h1 +
        per_mode[2][0].h1 * per_mode[2][0].h1);
    CHECK(agg[0].h1 == doctest::Approx(manual_h1).epsilon(1e-14));
    CHECK(agg[0].batchelor ==
          doctest::Approx(agg[0].hminus1 / agg[0].l2).epsilon(1e-14));
    CHECK(agg[0].phi == doctest::Approx(per_mode[0][0].phi + per_mode[1][0].phi +
                                        per_mode[2][0].phi)
                            .epsilon(1e-14));
  }
}
