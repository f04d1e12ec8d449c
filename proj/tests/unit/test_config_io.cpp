/// @file test_config_io.cpp
/// @brief Flat-config parsing/validation/round-tripping and the persistence
///        layer: CSV time series, JSON manifests and reports, atomic writes.

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <string>
#include <vector>

#include <doctest.h>
#include <json.hpp>

#include "hypomix/coeffs.hpp"
#include "hypomix/config.hpp"
#include "hypomix/errors.hpp"
#include "hypomix/io.hpp"
#include "hypomix/shear.hpp"
#include "test_support.hpp"

using namespace hypomix;
using hypomix::test::slurp;
using hypomix::test::TempDir;

namespace {

/// Checks that parse_config throws ConfigError whose message contains `frag`.
void expect_parse_error(const std::string& text, const std::string& frag) {
  try {
    parse_config(text);
    FAIL_CHECK("no ConfigError for: " << text << " (wanted '" << frag << "')");
  } catch (const ConfigError& e) {
    CAPTURE(text);
    CAPTURE(e.what());
    CHECK(std::string(e.what()).find(frag) != std::string::npos);
  }
}

FunctionalRecord tricky_record(double t) {
  FunctionalRecord r;
  r.t = t;
  r.l2 = 1.0 / 3.0;
  r.weighted = 1e17;
  r.hminus1 = 1e-300;
  r.h1 = -2.5e-7;  // never produced by the code, but the format must survive it
  r.j_l2 = 0.0;
  r.j_weighted = 6.62607015e-34;
  r.phi = 3.141592653589793;
  r.jj = 2.0;
  r.lyap = 1.0 + 1e-15;
  r.batchelor = 0.099999999999999992;
  r.res_energy = -0.0;
  r.res_gamma = 1e308;
  r.res_energy_j = 5e-324;  // subnormal
  r.res_gamma_j = -1.0;
  return r;
}

}  // namespace

TEST_SUITE("config_io") {
  // ==========================================================================
  // configuration text
  // ==========================================================================

  TEST_CASE("full config text parses with comments and loose whitespace") {
    const std::string text =
        "# run description lives in comments\n"
        "profile = sine_perturbed\n"
        "profile.amplitude = 0.25\n"
        "model = full_laplacian   # trailing comment\n"
        "k = 3\n"
        "nu = 1e-3\n"
        "\n"
        "grid.L = 10\n"
        "grid.N = 768\n"
        "time.dt = 0.005\n"
        "time.T = 2.5\n"
        "time.sample_every = 4\n"
        "init.kind = hermite_bump\n"
        "init.center = -0.5\n"
        "init.width = 0.75\n"
        "init.amplitude_re = 2\n"
        "init.amplitude_im = -1\n"
        "monitors = lyapunov , lemma_gap,,\n"
        "seed = 42\n";
    auto cfg = parse_config(text);
    CHECK(cfg.profile_name == "sine_perturbed");
    REQUIRE(cfg.profile_params.count("amplitude") == 1);
    CHECK(cfg.profile_params.at("amplitude") == 0.25);
    CHECK(cfg.model == Model::full_laplacian);
    CHECK(cfg.k == 3);
    CHECK(cfg.nu == 1e-3);
    CHECK(cfg.L == 10.0);
    CHECK(cfg.N == 768);
    CHECK(cfg.time.dt == 0.005);
    CHECK(cfg.time.T == 2.5);
    CHECK(cfg.time.sample_every == 4);
    CHECK(cfg.init.kind == InitialData::Kind::hermite_bump);
    CHECK(cfg.init.center == -0.5);
    CHECK(cfg.init.width == 0.75);
    CHECK(cfg.init.amplitude == cplx(2.0, -1.0));
    REQUIRE(cfg.monitors.size() == 2);  // empties dropped, items trimmed
    CHECK(cfg.monitors[0] == "lyapunov");
    CHECK(cfg.monitors[1] == "lemma_gap");
    CHECK(cfg.seed == 42);
  }

  TEST_CASE("empty text yields the documented defaults") {
    auto cfg = parse_config("");
    CHECK(cfg.profile_name == "couette");
    CHECK(cfg.profile_params.empty());
    CHECK(cfg.model == Model::hypoelliptic);
    CHECK(cfg.k == 1);
    CHECK(cfg.nu == 0.0);
    CHECK(cfg.L == 12.0);
    CHECK(cfg.N == 1536);
    CHECK(cfg.time.dt == 1e-3);
    CHECK(cfg.time.T == 1.0);
    CHECK(cfg.time.sample_every == 1);
    CHECK(cfg.init.kind == InitialData::Kind::gaussian_bump);
    CHECK(cfg.init.amplitude == cplx(1.0, 0.0));
    CHECK(cfg.monitors.empty());
    CHECK(cfg.seed == 0);
  }

  TEST_CASE("parse errors carry the offending line number") {
    expect_parse_error("k = 1\nk = 2\n", "config line 2");
    expect_parse_error("k = 1\nk = 2\n", "duplicate key 'k'");
    expect_parse_error("k = 1\nk = 2\n", "first set on line 1");
    expect_parse_error("bogus = 1\n", "unknown key 'bogus'");
    expect_parse_error("just a line\n", "expected 'key = value'");
    expect_parse_error(" = 5\n", "empty key");
    expect_parse_error("nu = abc\n", "expected a number");
    expect_parse_error("k = 2.5\n", "expected an integer");
    expect_parse_error("profile. = 3\n", "empty profile parameter name");
    expect_parse_error("grid.N = -4\n", "grid.N must be positive");
    expect_parse_error("time.sample_every = 0\n", "sample_every");
    expect_parse_error("seed = xyz\n", "expected an integer");
    expect_parse_error("\n\nmodel = stokes\n", "config line 3");
    expect_parse_error("init.kind = tophat\n", "config line 1");
  }

  TEST_CASE("cross-field validation rejects out-of-range runs") {
    expect_parse_error("k = 0\n", "k must be >= 1");
    expect_parse_error("nu = -1\n", "nu must be >= 0");
    expect_parse_error("nu = nan\n", "nu must be >= 0");
    expect_parse_error("grid.L = 0\n", "grid.L must be positive");
    expect_parse_error("grid.N = 8\n", "grid.N must be >= 16");
    expect_parse_error("time.dt = 0\n", "time.dt must be positive");
    expect_parse_error("time.T = -2\n", "time.T must be positive");
    expect_parse_error("init.width = 0\n", "init.width must be positive");
    expect_parse_error("init.center = 11\n", "support");  // [3, 19] leaves [-12, 12]
    expect_parse_error("monitors = phi_ode, nonsense\n",
                       "unknown monitor 'nonsense'");
    CHECK_THROWS_AS(parse_config("profile = vortex\n"), ConfigError);
    // monotonicity-breaking profile parameters surface as NonMonotone
    CHECK_THROWS_AS(
        parse_config("profile = sine_perturbed\nprofile.amplitude = 1.5\n"),
        NonMonotone);
  }

  TEST_CASE("dump -> parse -> dump is the identity on the text") {
    RunConfig cfg = parse_config("");
    cfg.profile_name = "polynomial";
    cfg.profile_params["n"] = 5.0;
    cfg.nu = 1.0 / 3.0;                 // not representable in decimal
    cfg.time.dt = 0.1;                  // classic rounding trap
    cfg.L = 8.0;
    cfg.init.width = 0.5;
    cfg.init.amplitude = cplx(1e-300, -7.0 / 9.0);
    cfg.monitors = {"final_bound", "gronwall"};
    cfg.seed = -12345;
    validate(cfg);

    const std::string d1 = dump_config(cfg);
    RunConfig back = parse_config(d1);
    CHECK(back.profile_name == cfg.profile_name);
    CHECK(back.profile_params.at("n") == 5.0);
    CHECK(back.nu == cfg.nu);  // 17 significant digits round-trip exactly
    CHECK(back.time.dt == cfg.time.dt);
    CHECK(back.init.amplitude.real() == cfg.init.amplitude.real());
    CHECK(back.init.amplitude.imag() == cfg.init.amplitude.imag());
    CHECK(back.monitors == cfg.monitors);
    CHECK(back.seed == cfg.seed);
    CHECK(dump_config(back) == d1);

    // defaults round-trip too (no monitors line when the list is empty)
    const std::string d0 = dump_config(parse_config(""));
    CHECK(d0.find("monitors") == std::string::npos);
    CHECK(dump_config(parse_config(d0)) == d0);
  }

  TEST_CASE("config file loading") {
    TempDir td("config");
    const std::string path = td.path("run.cfg");
    {
      std::ofstream out(path);
      out << "k = 2\nnu = 0.5\n";
    }
    auto cfg = load_config(path);
    CHECK(cfg.k == 2);
    CHECK(cfg.nu == 0.5);
    CHECK_THROWS_AS(load_config(td.path("missing.cfg")), IoError);
  }

  // ==========================================================================
  // CSV time series
  // ==========================================================================

  TEST_CASE("timeseries round-trip is bitwise across the double range") {
    TempDir td("csv");
    std::vector<FunctionalRecord> recs = {tricky_record(0.0),
                                          tricky_record(0.30000000000000004),
                                          tricky_record(1e6)};
    const std::string path = td.path("series.csv");
    write_timeseries(recs, path);

    const std::string body = slurp(path);
    CHECK(body.substr(0, std::string(kRecordHeader).size()) == kRecordHeader);
    CHECK(body.find("\r") == std::string::npos);  // LF only

    auto back = read_timeseries(path);
    REQUIRE(back.size() == recs.size());
    for (std::size_t i = 0; i < recs.size(); ++i) {
      CHECK(back[i].t == recs[i].t);
      CHECK(back[i].l2 == recs[i].l2);
      CHECK(back[i].weighted == recs[i].weighted);
      CHECK(back[i].hminus1 == recs[i].hminus1);
      CHECK(back[i].h1 == recs[i].h1);
      CHECK(back[i].j_l2 == recs[i].j_l2);
      CHECK(back[i].j_weighted == recs[i].j_weighted);
      CHECK(back[i].phi == recs[i].phi);
      CHECK(back[i].jj == recs[i].jj);
      CHECK(back[i].lyap == recs[i].lyap);
      CHECK(back[i].batchelor == recs[i].batchelor);
      CHECK(back[i].res_energy == recs[i].res_energy);
      CHECK(back[i].res_gamma == recs[i].res_gamma);
      CHECK(back[i].res_energy_j == recs[i].res_energy_j);
      CHECK(back[i].res_gamma_j == recs[i].res_gamma_j);
    }

    // identical data writes byte-identical files
    const std::string path2 = td.path("series2.csv");
    write_timeseries(recs, path2);
    CHECK(slurp(path2) == body);
  }

  TEST_CASE("empty record list produces a header-only file") {
    TempDir td("csv_empty");
    const std::string path = td.path("empty.csv");
    write_timeseries({}, path);
    CHECK(slurp(path) == std::string(kRecordHeader) + "\n");
    CHECK(read_timeseries(path).empty());
  }

  TEST_CASE("timeseries reader rejects malformed files with the location") {
    TempDir td("csv_bad");

    const std::string garbage = td.path("garbage.csv");
    { std::ofstream(garbage) << "time,value\n1,2\n"; }
    CHECK_THROWS_AS(read_timeseries(garbage), IoError);

    const std::string short_row = td.path("short.csv");
    { std::ofstream(short_row) << kRecordHeader << "\n1,2,3\n"; }
    try {
      read_timeseries(short_row);
      FAIL_CHECK("short row accepted");
    } catch (const IoError& e) {
      CHECK(std::string(e.what()).find("expected 15 fields, got 3") !=
            std::string::npos);
      CHECK(std::string(e.what()).find(":2:") != std::string::npos);
    }

    const std::string bad_num = td.path("badnum.csv");
    {
      std::ofstream out(bad_num);
      out << kRecordHeader << "\n";
      out << "0,1,1,1,1,1,1,1,1,1,1,0,0,oops,0\n";
    }
    CHECK_THROWS_AS(read_timeseries(bad_num), IoError);

    const std::string empty = td.path("zero.csv");
    { std::ofstream out(empty); }
    CHECK_THROWS_AS(read_timeseries(empty), IoError);

    CHECK_THROWS_AS(read_timeseries(td.path("absent.csv")), IoError);
    CHECK_THROWS_AS(write_timeseries({}, td.path("no/such/dir/x.csv")),
                    IoError);
  }

  TEST_CASE("timeseries reader tolerates CRLF and blank lines") {
    TempDir td("csv_crlf");
    const std::string path = td.path("dos.csv");
    {
      std::ofstream out(path, std::ios::binary);
      out << kRecordHeader << "\r\n";
      out << "\r\n";
      out << "1,2,3,4,5,6,7,8,9,10,11,12,13,14,15\r\n";
    }
    auto recs = read_timeseries(path);
    REQUIRE(recs.size() == 1);
    CHECK(recs[0].t == 1.0);
    CHECK(recs[0].res_gamma_j == 15.0);
  }

  // ==========================================================================
  // JSON documents
  // ==========================================================================

  TEST_CASE("manifest serializes every provenance field and is deterministic") {
    RunManifest m;
    m.config = parse_config("profile = sine_perturbed\nprofile.amplitude = 0.25\n");
    m.ledger = build_ledger(1.0);
    m.hypothesis = certify_hypothesis(sine_perturbed(0.25), 12.0, 100.0);
    m.started_at = "2026-01-02T03:04:05Z";
    m.finished_at = "2026-01-02T03:05:06Z";
    m.outputs = {"series.csv", "phi_ode.json"};
    m.exit_status = 0;

    const std::string text = manifest_json(m);
    CHECK(manifest_json(m) == text);  // pure function of the struct

    auto j = nlohmann::json::parse(text);
    CHECK(j["tool_version"] == kToolVersion);
    CHECK(j["source"] == "simulate");
    CHECK(j["started_at"] == "2026-01-02T03:04:05Z");
    CHECK(j["config"]["profile"] == "sine_perturbed");
    CHECK(j["config"]["profile_params"]["amplitude"] == 0.25);
    CHECK(j["config"]["grid"]["N"] == 1536);
    CHECK(j["config"]["time"]["dt"] == 1e-3);
    CHECK(j["config"]["init"]["kind"] == "gaussian_bump");
    CHECK(j["ledger"]["frakU"].get<double>() ==
          doctest::Approx(m.ledger.frakU).epsilon(1e-15));
    CHECK(j["ledger"]["constraints"].size() == 8);
    CHECK(j["ledger"]["all_ok"] == true);
    CHECK(j["hypothesis"]["satisfied"] == true);
    CHECK(j["hypothesis"]["profile"] == "sine_perturbed");
    CHECK(j["outputs"].size() == 2);
    CHECK(j["exit_status"] == 0);

    TempDir td("manifest");
    const std::string path = td.path("manifest.json");
    write_manifest(m, path);
    CHECK(slurp(path) == text);
    CHECK_FALSE(std::filesystem::exists(path + ".tmp"));
  }

  TEST_CASE("monitor report and ledger documents parse back exactly") {
    MonitorReport r;
    r.name = "lyapunov";
    r.trajectory_id = "run_007";
    r.samples_checked = 51;
    r.worst_margin = 3.0861234567890123e-5;
    r.tol = 1e-6;
    r.pass = true;
    r.regime = "phi_only";
    r.advisory = false;
    auto j = nlohmann::json::parse(monitor_report_json(r));
    CHECK(j["name"] == "lyapunov");
    CHECK(j["trajectory_id"] == "run_007");
    CHECK(j["samples_checked"] == 51);
    CHECK(j["worst_margin"].get<double>() == r.worst_margin);
    CHECK(j["tol"].get<double>() == r.tol);
    CHECK(j["pass"] == true);
    CHECK(j["regime"] == "phi_only");
    CHECK(j["advisory"] == false);

    auto led = build_ledger(2.0);
    auto lj = nlohmann::json::parse(ledger_json(led));
    CHECK(lj["frakU"].get<double>() == 2.0);
    CHECK(lj["alpha0"].get<double>() == led.alpha0);
    CHECK(lj["nu0_underflowed"] == false);
    REQUIRE(lj["constraints"].size() == 8);
    for (const auto& c : lj["constraints"]) CHECK(c["ok"] == true);

    auto cert = certify_hypothesis(couette(), 12.0, 100.0);
    auto cj = nlohmann::json::parse(certificate_json(cert));
    CHECK(cj["profile"] == "couette");
    CHECK(cj["satisfied"] == true);
    CHECK(cj["min_u1"].get<double>() == 1.0);
    CHECK(cj["max_ratio2"].get<double>() == 0.0);

    TempDir td("report");
    write_monitor_report(r, td.path("lyapunov.json"));
    CHECK(slurp(td.path("lyapunov.json")) == monitor_report_json(r));
  }

  TEST_CASE("error documents are single-line JSON") {
    const std::string doc = error_json("ConfigError", "k must be >= 1", 2);
    CHECK(std::count(doc.begin(), doc.end(), '\n') == 1);
    CHECK(doc.back() == '\n');
    auto j = nlohmann::json::parse(doc);
    CHECK(j["error"] == "ConfigError");
    CHECK(j["message"] == "k must be >= 1");
    CHECK(j["exit_status"] == 2);
  }

  TEST_CASE("timestamps and atomic writes") {
    const std::string ts = now_iso8601();
    REQUIRE(ts.size() == 20);
    CHECK(ts[4] == '-');
    CHECK(ts[7] == '-');
    CHECK(ts[10] == 'T');
    CHECK(ts[13] == ':');
    CHECK(ts[16] == ':');
    CHECK(ts[19] == 'Z');
    for (std::size_t i : {0u, 1u, 2u, 3u, 5u, 6u, 8u, 9u, 11u, 12u, 14u, 15u,
                          17u, 18u})
      CHECK(std::isdigit(static_cast<unsigned char>(ts[i])));

    TempDir td("atomic");
    const std::string path = td.path("doc.txt");
    write_text_atomic("payload\n", path);
    CHECK(slurp(path) == "payload\n");
    CHECK_FALSE(std::filesystem::exists(path + ".tmp"));
    write_text_atomic("replaced\n", path);  // overwrite goes through rename too
    CHECK(slurp(path) == "replaced\n");
    CHECK_THROWS_AS(write_text_atomic("x", td.path("no/dir/doc.txt")), IoError);
  }
}
