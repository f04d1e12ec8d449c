/// @file hypomix_main.cpp
/// @brief Command-line surface over the core library.
///
/// Subcommands:
///   simulate <config>     one trajectory -> CSV time series + manifest
///   oracle <config>       couette closed form at the same sample times
///   verify <config>       trajectory + decay monitors -> reports + manifest
///   sweep <config>        viscosity sweep -> mixing-time exponent fit
///   certify <profile>     monotonicity certificate for a catalog shear
///   constants             coefficient ledger dump for a hypothesis constant
///
/// Exit codes: 0 = everything requested passed; 1 = a monitor or certificate
/// check failed; 2 = configuration or runtime error. Every error path prints
/// one machine-readable JSON document on stderr.
#include <cmath>
#include <complex>
#include <cstdlib>
#include <filesystem>
#include <iostream>
#include <random>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "hypomix/config.hpp"
#include "hypomix/couette.hpp"
#include "hypomix/errors.hpp"
#include "hypomix/evolve.hpp"
#include "hypomix/experiments.hpp"
#include "hypomix/functionals.hpp"
#include "hypomix/io.hpp"
#include "hypomix/shear.hpp"

namespace {

using namespace hypomix;
using ojson = nlohmann::ordered_json;

// ============================================================================
// plumbing
// ============================================================================

std::string resolve_out_dir(const std::string& flag) {
  if (!flag.empty()) return flag;
  if (const char* env = std::getenv("HYPOMIX_OUT"); env && *env) return env;
  return ".";
}

std::string run_id_from(const std::string& config_path) {
  return std::filesystem::path(config_path).stem().string();
}

std::string join_path(const std::string& dir, const std::string& name) {
  return (std::filesystem::path(dir) / name).string();
}

void ensure_dir(const std::string& dir) {
  std::error_code ec;
  std::filesystem::create_directories(dir, ec);
  if (ec) throw IoError("cannot create output directory '" + dir + "'");
}

/// Sample instants produced by run() for a given time config: step 0, every
/// sample_every-th step, and the final step.
std::vector<double> sample_times(const EvolveConfig& cfg) {
  const double ratio = cfg.T / cfg.dt;
  const auto n = static_cast<long long>(std::llround(ratio));
  if (n < 1 || std::abs(ratio - static_cast<double>(n)) >
                   1e-9 * std::max(1.0, ratio))
    throw ConfigError("time.T must be a whole number of time.dt steps");
  std::vector<double> times;
  for (long long m = 0; m < n; m += static_cast<long long>(cfg.sample_every))
    times.push_back(static_cast<double>(m) * cfg.dt);
  times.push_back(static_cast<double>(n) * cfg.dt);
  return times;
}

/// The cross-term sign convention is load-bearing: with the wrong sign the
/// coercivity sandwich fails on generic data at the beta level. Cheap
/// randomized check at startup of `verify` so a bad build cannot quietly
/// certify anything.
void startup_self_test() {
  auto grid = Grid::make(6.0, 96);
  const ShearProfile p = couette();
  const ShearOnGrid sh = ShearOnGrid::sample(p, *grid);
  const CoeffLedger led = build_ledger(1.0);
  std::mt19937_64 rng(0x5eed5eedULL);
  std::normal_distribution<double> normal(0.0, 1.0);
  const double nus[] = {0.0, 1e-3, 1.0};
  for (int trial = 0; trial < 100; ++trial) {
    cvec g(grid->N);
    for (auto& gi : g) gi = {normal(rng), normal(rng)};
    const double nu = nus[trial % 3];
    const int k = 1 + trial % 3;
    const double phi = phi_functional(*grid, sh, led, nu, k, g);
    const CoercivityBounds env = phi_envelope(*grid, sh, led, nu, k, g);
    const double slack = 1e-12 * env.upper;
    if (!(env.lower - slack <= phi && phi <= env.upper + slack))
      throw std::logic_error(
          "startup self-test failed: coercivity sandwich violated on "
          "randomized data (cross-term sign convention broken?)");
  }
}

RunManifest base_manifest(const RunConfig& cfg, const ShearProfile& p,
                          const CoeffLedger& led,
                          const HypothesisCertificate& cert,
                          const std::string& source) {
  RunManifest m;
  m.config = cfg;
  m.ledger = led;
  m.hypothesis = cert;
  m.source = source;
  m.started_at = now_iso8601();
  (void)p;
  return m;
}

// ============================================================================
// subcommands
// ============================================================================

int cmd_simulate(const std::string& config_path, const std::string& out_flag) {
  const RunConfig cfg = load_config(config_path);
  const std::string out_dir = resolve_out_dir(out_flag);
  ensure_dir(out_dir);
  const std::string run_id = run_id_from(config_path);

  const ShearProfile p = find_profile(cfg.profile_name, cfg.profile_params);
  const HypothesisCertificate cert = certify_hypothesis(p, cfg.L);
  const CoeffLedger led = build_ledger(cert);
  auto grid = Grid::make(cfg.L, cfg.N);
  const ModeState s0 = make_initial_state(grid, cfg.k, cfg.model, cfg.init);

  RunManifest man = base_manifest(cfg, p, led, cert, "simulate");
  Diagnostics diag(grid, ShearOnGrid::sample(p, *grid), led, cfg.k, cfg.nu,
                   cfg.model);
  std::vector<FunctionalRecord> records;
  SampleSink sink = [&](const ModeState& s) {
    records.push_back(diag.record(s));
  };
  const RunSummary sum = run(s0, cfg.time, cfg.nu, p, {sink});

  const std::string csv = join_path(out_dir, run_id + ".csv");
  write_timeseries(records, csv);
  man.outputs = {csv};
  man.finished_at = now_iso8601();
  man.exit_status = 0;
  write_manifest(man, join_path(out_dir, run_id + "_manifest.json"));
  std::cout << "wrote " << csv << "  samples=" << sum.n_samples
            << " steps=" << sum.n_steps << " t_final=" << sum.t_final << "\n";
  return 0;
}

int cmd_oracle(const std::string& config_path, const std::string& out_flag) {
  const RunConfig cfg = load_config(config_path);
  if (cfg.profile_name != "couette")
    throw ConfigError(
        "oracle: the closed form exists for the couette profile only");
  const std::string out_dir = resolve_out_dir(out_flag);
  ensure_dir(out_dir);
  const std::string run_id = run_id_from(config_path);

  const ShearProfile p = find_profile(cfg.profile_name, cfg.profile_params);
  const HypothesisCertificate cert = certify_hypothesis(p, cfg.L);
  const CoeffLedger led = build_ledger(cert);

  RunManifest man = base_manifest(cfg, p, led, cert, "oracle");
  const CouetteSpectrum sp = CouetteSpectrum::make(cfg.k, cfg.model, cfg.init);
  const std::vector<double> times = sample_times(cfg.time);
  const std::vector<FunctionalRecord> records =
      oracle_records(sp, led, cfg.nu, times);

  const std::string csv = join_path(out_dir, run_id + "_oracle.csv");
  write_timeseries(records, csv);
  man.outputs = {csv};
  man.finished_at = now_iso8601();
  man.exit_status = 0;
  write_manifest(man, join_path(out_dir, run_id + "_oracle_manifest.json"));
  std::cout << "wrote " << csv << "  samples=" << records.size()
            << " t_final=" << times.back() << "\n";
  return 0;
}

int cmd_verify(const std::string& config_path, const std::string& out_flag) {
  startup_self_test();
  const RunConfig cfg = load_config(config_path);
  const std::string out_dir = resolve_out_dir(out_flag);
  ensure_dir(out_dir);
  const std::string run_id = run_id_from(config_path);

  const ShearProfile p = find_profile(cfg.profile_name, cfg.profile_params);
  const HypothesisCertificate cert = certify_hypothesis(p, cfg.L);
  const CoeffLedger led = build_ledger(cert);
  auto grid = Grid::make(cfg.L, cfg.N);
  const ModeState s0 = make_initial_state(grid, cfg.k, cfg.model, cfg.init);

  RunManifest man = base_manifest(cfg, p, led, cert, "verify");
  const VerifyOutcome out =
      run_with_monitors(s0, cfg.time, cfg.nu, p, led, run_id);

  const std::string csv = join_path(out_dir, run_id + ".csv");
  write_timeseries(out.records, csv);
  man.outputs = {csv};

  auto selected = [&](const std::string& name) {
    if (cfg.monitors.empty()) return true;
    for (const std::string& m : cfg.monitors)
      if (m == name) return true;
    return false;
  };
  int n_selected = 0, n_passed = 0;
  bool any_failed = false;
  for (const MonitorReport& rep : out.reports) {
    if (!selected(rep.name)) continue;
    ++n_selected;
    const std::string path =
        join_path(out_dir, run_id + "_monitor_" + rep.name + ".json");
    write_monitor_report(rep, path);
    man.outputs.push_back(path);
    if (rep.pass)
      ++n_passed;
    else
      any_failed = true;
    std::cout << (rep.pass ? "[PASS] " : "[FAIL] ") << rep.name
              << "  worst_margin=" << rep.worst_margin << " tol=" << rep.tol
              << " samples=" << rep.samples_checked;
    if (rep.advisory) std::cout << "  (advisory: regime " << rep.regime << ")";
    std::cout << "\n";
  }
  std::cout << "verify: " << n_passed << "/" << n_selected
            << " monitors passed\n";

  man.finished_at = now_iso8601();
  man.exit_status = any_failed ? 1 : 0;
  write_manifest(man, join_path(out_dir, run_id + "_manifest.json"));
  return man.exit_status;
}

int cmd_sweep(const std::string& config_path, const std::string& out_flag,
              std::vector<double> nu_grid, double threshold) {
  const RunConfig cfg = load_config(config_path);
  const std::string out_dir = resolve_out_dir(out_flag);
  ensure_dir(out_dir);
  const std::string run_id = run_id_from(config_path);

  const ShearProfile p = find_profile(cfg.profile_name, cfg.profile_params);
  const HypothesisCertificate cert = certify_hypothesis(p, cfg.L);
  const CoeffLedger led = build_ledger(cert);

  SweepSetup setup;
  setup.model = cfg.model;
  setup.grid = Grid::make(cfg.L, cfg.N);
  setup.init = cfg.init;
  setup.cfg = cfg.time;
  setup.threshold = threshold;

  RunManifest man = base_manifest(cfg, p, led, cert, "sweep");
  const SweepOutcome out = sweep_enhanced_diffusion(p, cfg.k, nu_grid, setup);

  ojson j;
  j["threshold"] = threshold;
  j["points"] = ojson::array();
  for (const SweepPoint& pt : out.points)
    j["points"].push_back({{"nu", pt.nu}, {"tau", pt.tau}});
  j["fit"] = {{"kind", "power_law"},
              {"exponent", out.fit.exponent},
              {"r_squared", out.fit.r_squared},
              {"n_points", out.fit.n_points},
              {"nu_min", out.fit.t1},
              {"nu_max", out.fit.t2}};
  const std::string sweep_path = join_path(out_dir, run_id + "_sweep.json");
  write_text_atomic(j.dump(2) + "\n", sweep_path);

  man.outputs = {sweep_path};
  man.finished_at = now_iso8601();
  man.exit_status = 0;
  write_manifest(man, join_path(out_dir, run_id + "_sweep_manifest.json"));
  std::cout << "sweep: tau ~ nu^(" << out.fit.exponent
            << ")  r^2=" << out.fit.r_squared << "  points=" << out.points.size()
            << "\n";
  return 0;
}

int cmd_certify(const std::string& profile, double L, bool has_amplitude,
                double amplitude, bool has_n, int n) {
  std::map<std::string, double> params;
  if (has_amplitude) params["amplitude"] = amplitude;
  if (has_n) params["n"] = static_cast<double>(n);
  const ShearProfile p = find_profile(profile, params);
  const HypothesisCertificate cert = certify_hypothesis(p, L);
  std::cout << certificate_json(cert);
  return cert.satisfied ? 0 : 1;
}

int cmd_constants(double frakU, bool has_nu, double nu, int k) {
  const CoeffLedger led = build_ledger(frakU);
  ojson j = ojson::parse(ledger_json(led));
  if (has_nu) {
    j["running"] = {{"nu", nu},
                    {"k", k},
                    {"alpha", alpha(led, nu, k)},
                    {"beta", beta(led, nu, k)},
                    {"gamma", gamma_coeff(led, k)},
                    {"rate_scale", rate_scale(nu, k)},
                    {"regime", to_string(check_nu_restriction(led, nu, k))}};
  }
  std::cout << j.dump(2) << "\n";
  return led.all_ok() ? 0 : 1;
}

}  // namespace

// ============================================================================
// argument surface
// ============================================================================

int main(int argc, char** argv) {
  CLI::App app{
      "hypomix: passive scalars under strictly monotone shear flows --\n"
      "per-mode simulation, closed-form couette oracle, decay monitors,\n"
      "and mixing-rate experiments"};
  app.require_subcommand(1);
  app.fallthrough();

  std::string out_dir;
  app.add_option("--out-dir", out_dir,
                 "Output directory (overrides HYPOMIX_OUT; default '.')");

  std::string sim_cfg, ora_cfg, ver_cfg, swp_cfg;
  CLI::App* sim = app.add_subcommand(
      "simulate", "Run one trajectory and record the functional time series");
  sim->add_option("config", sim_cfg, "Run configuration file")
      ->required()
      ->check(CLI::ExistingFile);

  CLI::App* ora = app.add_subcommand(
      "oracle", "Evaluate the couette closed form on the config's time grid");
  ora->add_option("config", ora_cfg, "Run configuration file")
      ->required()
      ->check(CLI::ExistingFile);

  CLI::App* ver = app.add_subcommand(
      "verify", "Run one trajectory and check every requested decay monitor");
  ver->add_option("config", ver_cfg, "Run configuration file")
      ->required()
      ->check(CLI::ExistingFile);

  CLI::App* swp = app.add_subcommand(
      "sweep", "Fit the mixing-time exponent over a viscosity grid");
  swp->add_option("config", swp_cfg, "Run configuration file")
      ->required()
      ->check(CLI::ExistingFile);
  std::vector<double> nu_grid = {1e-3, 3e-4, 1e-4, 3e-5, 1e-5};
  swp->add_option("--nu-grid", nu_grid,
                  "Comma-separated viscosities (default spans two decades)")
      ->delimiter(',');
  double threshold = 0.01;
  swp->add_option("--threshold", threshold,
                  "Weighted-norm decay threshold defining the mixing time");

  CLI::App* cer = app.add_subcommand(
      "certify", "Certify strict monotonicity of a catalog shear on [-L, L]");
  std::string cer_profile;
  double cer_L = 10.0;
  double cer_amplitude = 0.5;
  int cer_n = 3;
  cer->add_option("profile", cer_profile, "Catalog profile name")->required();
  cer->add_option("--L", cer_L, "Certification half-width")->required();
  CLI::Option* amp_opt =
      cer->add_option("--amplitude", cer_amplitude,
                      "Profile parameter (sine_perturbed)");
  CLI::Option* n_opt =
      cer->add_option("--n", cer_n, "Profile parameter (polynomial, odd >= 3)");

  CLI::App* con = app.add_subcommand(
      "constants", "Print the coefficient ledger for a hypothesis constant");
  double frakU = 1.0;
  double con_nu = 0.0;
  int con_k = 1;
  con->add_option("--frakU", frakU, "Hypothesis constant U >= 1")->required();
  CLI::Option* nu_opt = con->add_option(
      "--nu", con_nu, "Also print running coefficients for this viscosity");
  con->add_option("--k", con_k, "Wavenumber for the running coefficients");

  try {
    app.parse(argc, argv);
    if (*sim) return cmd_simulate(sim_cfg, out_dir);
    if (*ora) return cmd_oracle(ora_cfg, out_dir);
    if (*ver) return cmd_verify(ver_cfg, out_dir);
    if (*swp) return cmd_sweep(swp_cfg, out_dir, nu_grid, threshold);
    if (*cer)
      return cmd_certify(cer_profile, cer_L, amp_opt->count() > 0,
                         cer_amplitude, n_opt->count() > 0, cer_n);
    if (*con) return cmd_constants(frakU, nu_opt->count() > 0, con_nu, con_k);
    return 2;  // unreachable: require_subcommand(1)
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    std::cerr << error_json("UsageError", e.what(), 2);
    return 2;
  } catch (const Error& e) {
    std::cerr << error_json(e.kind(), e.what(), 2);
    return 2;
  } catch (const std::exception& e) {
    std::cerr << error_json("InternalError", e.what(), 2);
    return 2;
  }
}
