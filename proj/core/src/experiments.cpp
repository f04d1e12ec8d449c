#include "hypomix/experiments.hpp"

#include <algorithm>
#include <cmath>
#include <future>
#include <limits>
#include <sstream>

#include "hypomix/errors.hpp"

namespace hypomix {

namespace {

std::string regime_string(const CoeffLedger& led, double nu, int k) {
  return to_string(check_nu_restriction(led, nu, k));
}

void require_start_at_zero(const std::vector<FunctionalRecord>& records,
                           const char* who) {
  if (records.empty()) {
    std::ostringstream os;
    os << who << ": no samples";
    throw ConfigError(os.str());
  }
  if (std::abs(records.front().t) > 1e-12) {
    std::ostringstream os;
    os << who << ": the baseline needs a trajectory sampled from t = 0 "
       << "(first sample is at t = " << records.front().t << ")";
    throw ConfigError(os.str());
  }
}

}  // namespace

// ============================================================================
// monitors
// ============================================================================

double phi_ode_lhs(const Diagnostics& diag, const ModeState& s) {
  const Grid& grid = diag.grid();
  const ShearOnGrid& sh = diag.shear();
  const CoeffLedger& led = diag.ledger();
  const int k = diag.k();
  const double nu = diag.nu();
  const double dk = static_cast<double>(k);
  const double k2 = dk * dk;
  const cvec& g = s.g;

  const cvec dg = d1(grid, g);
  const cvec ddg = d2(grid, g);
  std::vector<double> wsq(grid.N), w3(grid.N);
  for (std::size_t i = 0; i < grid.N; ++i) {
    wsq[i] = sh.u1[i] * sh.u1[i];
    w3[i] = sh.u2[i] * sh.u2[i] + sh.u1[i] * sh.u3[i];
  }

  const double nsq = norm_sq(grid, g);
  const double dnsq = norm_sq(grid, dg);
  const double ddnsq = norm_sq(grid, ddg);
  const double wnsq = norm_sq_weighted(grid, wsq, g);
  const double wdnsq = norm_sq_weighted(grid, wsq, dg);
  const double w3nsq = norm_sq_weighted(grid, w3, g);
  const double x = dk * inner_weighted(grid, g, sh.u1, dg).imag();

  const double a = alpha(led, nu, k);
  const double b = beta(led, nu, k);
  const double c = gamma_coeff(led, k);
  const double phi = 0.5 * (nsq + a * dnsq + 2.0 * b * x + c * k2 * wnsq);

  // d(Phi)/dt assembled from the four balance identities on the discrete
  // state (each line is the time derivative of the corresponding piece).
  double dphi = -nu * dnsq;
  dphi += a * (-nu * ddnsq - x);
  dphi += b * (-2.0 * nu * dk * inner_weighted(grid, dg, sh.u1, ddg).imag() -
               nu * dk * inner_weighted(grid, g, sh.u2, ddg).imag() -
               k2 * wnsq);
  dphi += c * k2 * (-nu * wdnsq + nu * w3nsq);
  if (s.model == Model::full_laplacian) dphi += -2.0 * nu * k2 * phi;

  return dphi + 2.0 * led.eps0 * rate_scale(nu, k) * phi + 0.25 * nu * dnsq +
         0.5 * nu * a * ddnsq + 0.5 * nu * c * k2 * wdnsq;
}

MonitorReport monitor_phi_ode(const std::vector<double>& lhs_values,
                              const std::vector<FunctionalRecord>& records,
                              const CoeffLedger& led, double nu, int k,
                              const std::string& trajectory_id) {
  if (records.empty() || lhs_values.size() != records.size())
    throw ConfigError("monitor_phi_ode: sample lists empty or mismatched");
  MonitorReport rep;
  rep.name = "phi_ode";
  rep.trajectory_id = trajectory_id;
  rep.samples_checked = lhs_values.size();
  rep.tol = 1e-6 * records.front().phi;
  double worst = std::numeric_limits<double>::infinity();
  for (double lhs : lhs_values) worst = std::min(worst, -lhs);
  rep.worst_margin = worst;
  rep.regime = regime_string(led, nu, k);
  rep.advisory = nu / static_cast<double>(k) > 1.0;
  rep.pass = rep.advisory || rep.worst_margin >= -rep.tol;
  return rep;
}

MonitorReport monitor_lyapunov(const std::vector<FunctionalRecord>& records,
                               const CoeffLedger& led, double nu, int k,
                               const std::string& trajectory_id) {
  if (records.empty())
    throw ConfigError("monitor_lyapunov: no samples");
  MonitorReport rep;
  rep.name = "lyapunov";
  rep.trajectory_id = trajectory_id;
  rep.samples_checked = records.size();
  const double rate = 2.0 * led.eps0 * rate_scale(nu, k);
  auto weighted_lyap = [&](const FunctionalRecord& r) {
    return std::exp(rate * r.t) * r.lyap;
  };
  rep.tol = 1e-6 * weighted_lyap(records.front());
  double worst = std::numeric_limits<double>::infinity();
  for (std::size_t i = 1; i < records.size(); ++i)
    worst = std::min(worst,
                     weighted_lyap(records[i - 1]) - weighted_lyap(records[i]));
  rep.worst_margin = records.size() > 1 ? worst : 0.0;
  rep.regime = regime_string(led, nu, k);
  rep.advisory = false;
  rep.pass = rep.worst_margin >= -rep.tol;
  return rep;
}

MonitorReport monitor_final_bound(const std::vector<FunctionalRecord>& records,
                                  const CoeffLedger& led, double nu, int k,
                                  const std::string& trajectory_id) {
  require_start_at_zero(records, "monitor_final_bound");
  MonitorReport rep;
  rep.name = "final_bound";
  rep.trajectory_id = trajectory_id;
  rep.samples_checked = records.size();
  rep.tol = 1e-6;
  const double rate = led.eps0 * rate_scale(nu, k);
  const FunctionalRecord& r0 = records.front();
  const double b0 =
      r0.weighted * r0.weighted + r0.j_weighted * r0.j_weighted;
  double worst = std::numeric_limits<double>::infinity();
  if (b0 == 0.0) {
    worst = 0.0;  // zero data: both sides vanish
  } else {
    const double c0 = std::sqrt(led.C0sq);
    for (const FunctionalRecord& r : records) {
      const double kt = static_cast<double>(k) * r.t;
      const double energy_bound = led.C0sq * std::exp(-2.0 * rate * r.t) * b0;
      const double energy_val =
          r.weighted * r.weighted + r.j_weighted * r.j_weighted;
      worst = std::min(worst, (energy_bound - energy_val) / energy_bound);
      const double mix_bound = c0 * std::exp(-rate * r.t) /
                               std::sqrt(1.0 + kt * kt) * std::sqrt(b0);
      worst = std::min(worst, (mix_bound - r.hminus1) / mix_bound);
    }
  }
  rep.worst_margin = worst;
  rep.regime = regime_string(led, nu, k);
  rep.advisory = false;
  rep.pass = rep.worst_margin >= -rep.tol;
  return rep;
}

MonitorReport monitor_gronwall(const std::vector<FunctionalRecord>& records,
                               const CoeffLedger& led, double nu,
                               const std::string& trajectory_id) {
  require_start_at_zero(records, "monitor_gronwall");
  MonitorReport rep;
  rep.name = "gronwall";
  rep.trajectory_id = trajectory_id;
  rep.samples_checked = records.size();
  rep.tol = 1e-3;
  auto lhs = [&](const FunctionalRecord& r) {
    return (r.weighted * r.weighted - r.l2 * r.l2) +
           led.delta0 * (r.j_weighted * r.j_weighted - r.j_l2 * r.j_l2);
  };
  const double base = lhs(records.front());
  const double grow = 7.0 * led.frakU * led.frakU * nu;
  double worst = std::numeric_limits<double>::infinity();
  if (base == 0.0) {
    worst = 0.0;
  } else {
    for (const FunctionalRecord& r : records) {
      const double bound = std::exp(grow * r.t) * base;
      worst = std::min(worst, (bound - lhs(r)) / bound);
    }
  }
  rep.worst_margin = worst;
  rep.regime = "";
  rep.advisory = false;
  rep.pass = rep.worst_margin >= -rep.tol;
  return rep;
}

MonitorReport monitor_lemma_gap(const std::vector<FunctionalRecord>& records,
                                const CoeffLedger& led, int k,
                                const std::string& trajectory_id) {
  if (records.empty())
    throw ConfigError("monitor_lemma_gap: no samples");
  MonitorReport rep;
  rep.name = "lemma_gap";
  rep.trajectory_id = trajectory_id;
  rep.samples_checked = records.size();
  rep.tol = 1e-8;
  const double u2 = led.frakU * led.frakU;
  double worst = std::numeric_limits<double>::infinity();
  for (const FunctionalRecord& r : records) {
    const double denom = r.l2 + r.j_l2;
    const double gap =
        2.0 * u2 * denom - static_cast<double>(k) * r.t * r.hminus1;
    worst = std::min(worst, denom > 0.0 ? gap / denom : 0.0);
  }
  rep.worst_margin = worst;
  rep.regime = "";
  rep.advisory = false;
  rep.pass = rep.worst_margin >= -rep.tol;
  return rep;
}

VerifyOutcome run_with_monitors(const ModeState& s0, const EvolveConfig& cfg,
                                double nu, const ShearProfile& p,
                                const CoeffLedger& led,
                                const std::string& trajectory_id) {
  if (std::abs(s0.t) > 1e-12)
    throw ConfigError("run_with_monitors: trajectory must start at t = 0");
  Diagnostics diag(s0.grid, ShearOnGrid::sample(p, *s0.grid), led, s0.k, nu,
                   s0.model);
  VerifyOutcome out;
  std::vector<double> lhs_values;
  SampleSink sink = [&](const ModeState& s) {
    out.records.push_back(diag.record(s));
    lhs_values.push_back(phi_ode_lhs(diag, s));
  };
  out.summary = run(s0, cfg, nu, p, {sink});
  out.reports.push_back(
      monitor_phi_ode(lhs_values, out.records, led, nu, s0.k, trajectory_id));
  out.reports.push_back(
      monitor_lyapunov(out.records, led, nu, s0.k, trajectory_id));
  out.reports.push_back(
      monitor_final_bound(out.records, led, nu, s0.k, trajectory_id));
  out.reports.push_back(monitor_gronwall(out.records, led, nu, trajectory_id));
  out.reports.push_back(
      monitor_lemma_gap(out.records, led, s0.k, trajectory_id));
  return out;
}

// ============================================================================
// fitting
// ============================================================================

namespace {

RateFit fit_logspace(const std::vector<double>& x, const std::vector<double>& y,
                     RateFit::Kind kind, bool log_x) {
  if (x.size() != y.size())
    throw ConfigError("fit: mismatched series lengths");
  if (x.size() < 2) throw InsufficientSpan("fit: need at least two points");
  const std::size_t n = x.size();
  std::vector<double> xs(n), ys(n);
  for (std::size_t i = 0; i < n; ++i) {
    if (log_x && !(x[i] > 0.0))
      throw ConfigError("fit: nonpositive abscissa in a log fit");
    if (!(y[i] > 0.0))
      throw ConfigError("fit: nonpositive value in a log fit");
    xs[i] = log_x ? std::log(x[i]) : x[i];
    ys[i] = std::log(y[i]);
  }
  double mx = 0.0, my = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    mx += xs[i];
    my += ys[i];
  }
  mx /= static_cast<double>(n);
  my /= static_cast<double>(n);
  double sxx = 0.0, sxy = 0.0, syy = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    sxx += (xs[i] - mx) * (xs[i] - mx);
    sxy += (xs[i] - mx) * (ys[i] - my);
    syy += (ys[i] - my) * (ys[i] - my);
  }
  if (!(sxx > 0.0))
    throw InsufficientSpan("fit: abscissa values are all identical");
  RateFit f;
  f.kind = kind;
  f.t1 = *std::min_element(x.begin(), x.end());
  f.t2 = *std::max_element(x.begin(), x.end());
  f.exponent = sxy / sxx;
  f.r_squared = (syy > 0.0)
                    ? std::clamp(sxy * sxy / (sxx * syy), 0.0, 1.0)
                    : 1.0;
  f.n_points = n;
  return f;
}

}  // namespace

RateFit fit_power_law(const std::vector<double>& t,
                      const std::vector<double>& v) {
  return fit_logspace(t, v, RateFit::Kind::power_law, /*log_x=*/true);
}

RateFit fit_exponential(const std::vector<double>& t,
                        const std::vector<double>& v) {
  return fit_logspace(t, v, RateFit::Kind::exponential, /*log_x=*/false);
}

RateFit fit_mixing_rate(const std::vector<FunctionalRecord>& records,
                        double t1, double t2) {
  if (!(t1 >= 10.0))
    throw ConfigError("fit_mixing_rate: the window must start at t1 >= 10 "
                      "(transient excluded)");
  if (!(t2 > t1)) throw ConfigError("fit_mixing_rate: need t2 > t1");
  std::vector<double> ts, vs;
  for (const FunctionalRecord& r : records) {
    if (r.t >= t1 && r.t <= t2 && r.hminus1 > 0.0) {
      ts.push_back(r.t);
      vs.push_back(r.hminus1);
    }
  }
  if (ts.size() < 10) {
    std::ostringstream os;
    os << "fit_mixing_rate: only " << ts.size() << " samples in [" << t1
       << ", " << t2 << "]; need at least 10";
    throw InsufficientSpan(os.str());
  }
  if (vs.back() / vs.front() > 0.9) {
    std::ostringstream os;
    os << "fit_mixing_rate: hminus1 fell only to "
       << vs.back() / vs.front() * 100.0
       << "% of its window-start value; no decay to fit";
    throw InsufficientDecay(os.str());
  }
  // Upper envelope: strict interior local maxima. Monotone series (couette)
  // have none; fall back to the full window then.
  std::vector<double> pts, pvs;
  for (std::size_t i = 1; i + 1 < ts.size(); ++i) {
    if (vs[i] > vs[i - 1] && vs[i] > vs[i + 1]) {
      pts.push_back(ts[i]);
      pvs.push_back(vs[i]);
    }
  }
  RateFit f = (pts.size() >= 10) ? fit_power_law(pts, pvs)
                                 : fit_power_law(ts, vs);
  f.t1 = t1;
  f.t2 = t2;
  return f;
}

// ============================================================================
// enhanced-diffusion sweep
// ============================================================================

SweepOutcome sweep_enhanced_diffusion(const ShearProfile& p, int k,
                                      const std::vector<double>& nu_list,
                                      const SweepSetup& setup) {
  if (nu_list.size() < 2)
    throw InsufficientSpan("sweep: need at least two viscosities");
  double lo = nu_list.front(), hi = nu_list.front();
  for (double nu : nu_list) {
    if (!(nu > 0.0))
      throw ConfigError("sweep: every viscosity must be positive");
    lo = std::min(lo, nu);
    hi = std::max(hi, nu);
  }
  if (hi / lo < 100.0 * (1.0 - 1e-12))
    throw InsufficientSpan("sweep: viscosities must span at least two decades");
  if (!(setup.threshold > 0.0 && setup.threshold < 1.0))
    throw ConfigError("sweep: threshold must lie in (0, 1)");
  if (!setup.grid) throw ConfigError("sweep: no grid");

  auto crossing_time = [&](double nu) -> double {
    ModeState s0 = make_initial_state(setup.grid, k, setup.model, setup.init);
    std::vector<double> wsq(setup.grid->N);
    {
      const ShearOnGrid sh = ShearOnGrid::sample(p, *setup.grid);
      for (std::size_t i = 0; i < setup.grid->N; ++i)
        wsq[i] = sh.u1[i] * sh.u1[i];
    }
    double w0 = -1.0, tau = -1.0, last_ratio = 1.0;
    SampleSink sink = [&](const ModeState& s) {
      const double w = std::sqrt(norm_sq(*s.grid, s.g) +
                                 norm_sq_weighted(*s.grid, wsq, s.g));
      if (w0 < 0.0) w0 = w;
      last_ratio = (w0 > 0.0) ? w / w0 : 0.0;
      if (tau < 0.0 && last_ratio <= setup.threshold) tau = s.t;
    };
    run(s0, setup.cfg, nu, p, {sink});
    if (tau < 0.0) {
      std::ostringstream os;
      os << "sweep: weighted norm only reached " << last_ratio
         << " of its initial value at nu = " << nu << " by T = "
         << setup.cfg.T << "; extend the horizon";
      throw ThresholdNotReached(os.str());
    }
    return tau;
  };

  // Fan out, then reduce strictly in list order: deterministic.
  std::vector<std::future<double>> futures;
  futures.reserve(nu_list.size());
  for (double nu : nu_list)
    futures.push_back(
        std::async(std::launch::async, [&crossing_time, nu] { return crossing_time(nu); }));
  SweepOutcome out;
  std::vector<double> taus;
  for (std::size_t i = 0; i < nu_list.size(); ++i) {
    const double tau = futures[i].get();
    taus.push_back(tau);
    out.points.push_back({nu_list[i], tau});
  }
  out.fit = fit_power_law(nu_list, taus);
  return out;
}

// ============================================================================
// aggregation
// ============================================================================

std::vector<FunctionalRecord> aggregate_modes(
    const std::vector<std::vector<FunctionalRecord>>& per_mode) {
  if (per_mode.empty())
    throw ConfigError("aggregate_modes: no trajectories");
  if (per_mode.size() == 1) return per_mode.front();
  const std::size_t n = per_mode.front().size();
  for (const auto& traj : per_mode)
    if (traj.size() != n)
      throw MismatchedGrids("aggregate_modes: sample counts differ");
  std::vector<FunctionalRecord> out(n);
  for (std::size_t i = 0; i < n; ++i) {
    const double t0 = per_mode.front()[i].t;
    FunctionalRecord agg;
    agg.t = t0;
    double l2 = 0, wt = 0, hm = 0, h1 = 0, jl = 0, jw = 0;
    for (const auto& traj : per_mode) {
      const FunctionalRecord& r = traj[i];
      if (std::abs(r.t - t0) > 1e-12 * std::max(1.0, std::abs(t0)))
        throw MismatchedGrids("aggregate_modes: sample times differ");
      l2 += r.l2 * r.l2;
      wt += r.weighted * r.weighted;
      hm += r.hminus1 * r.hminus1;
      h1 += r.h1 * r.h1;
      jl += r.j_l2 * r.j_l2;
      jw += r.j_weighted * r.j_weighted;
      agg.phi += r.phi;
      agg.jj += r.jj;
      agg.lyap += r.lyap;
      agg.res_energy += r.res_energy;
      agg.res_gamma += r.res_gamma;
      agg.res_energy_j += r.res_energy_j;
      agg.res_gamma_j += r.res_gamma_j;
    }
    agg.l2 = std::sqrt(l2);
    agg.weighted = std::sqrt(wt);
    agg.hminus1 = std::sqrt(hm);
    agg.h1 = std::sqrt(h1);
    agg.j_l2 = std::sqrt(jl);
    agg.j_weighted = std::sqrt(jw);
    agg.batchelor = (agg.l2 > 0.0) ? agg.hminus1 / agg.l2 : 0.0;
    out[i] = agg;
  }
  return out;
}

}  // namespace hypomix
