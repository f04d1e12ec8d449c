#include "hypomix/io.hpp"

#include <cstdio>
#include <cstring>
#include <ctime>
#include <filesystem>
#include <fstream>
#include <sstream>

#include <json.hpp>

#include "hypomix/errors.hpp"

namespace hypomix {

namespace {

using ojson = nlohmann::ordered_json;

std::string fmt17(double x) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

double parse_field(const std::string& s, const std::string& path,
                   std::size_t lineno) {
  char* end = nullptr;
  const double x = std::strtod(s.c_str(), &end);
  if (end == s.c_str() || *end != '\0') {
    std::ostringstream os;
    os << path << ":" << lineno << ": bad numeric field '" << s << "'";
    throw IoError(os.str());
  }
  return x;
}

ojson config_json(const RunConfig& c) {
  ojson j;
  j["profile"] = c.profile_name;
  j["profile_params"] = ojson::object();
  for (const auto& [name, value] : c.profile_params)
    j["profile_params"][name] = value;
  j["model"] = to_string(c.model);
  j["k"] = c.k;
  j["nu"] = c.nu;
  j["grid"] = {{"L", c.L}, {"N", c.N}};
  j["time"] = {{"dt", c.time.dt},
               {"T", c.time.T},
               {"sample_every", c.time.sample_every}};
  j["init"] = {{"kind", to_string(c.init.kind)},
               {"center", c.init.center},
               {"width", c.init.width},
               {"amplitude_re", c.init.amplitude.real()},
               {"amplitude_im", c.init.amplitude.imag()}};
  j["monitors"] = c.monitors;
  j["seed"] = c.seed;
  return j;
}

ojson ledger_ojson(const CoeffLedger& led) {
  ojson j;
  j["frakU"] = led.frakU;
  j["alpha0"] = led.alpha0;
  j["beta0"] = led.beta0;
  j["gamma0"] = led.gamma0;
  j["eps0"] = led.eps0;
  j["delta0"] = led.delta0;
  j["nu0"] = led.nu0;
  j["C0sq"] = led.C0sq;
  j["nu0_underflowed"] = led.nu0_underflowed;
  j["constraints"] = ojson::array();
  for (const ConstraintCheck& c : led.constraints)
    j["constraints"].push_back({{"name", c.name},
                                {"lhs", c.lhs},
                                {"rhs", c.rhs},
                                {"equality", c.equality},
                                {"ok", c.ok}});
  j["all_ok"] = led.all_ok();
  return j;
}

ojson certificate_ojson(const HypothesisCertificate& h) {
  ojson j;
  j["profile"] = h.profile;
  j["L"] = h.L;
  j["satisfied"] = h.satisfied;
  j["frakU"] = h.frakU;
  j["min_u1"] = h.min_u1;
  j["max_u1"] = h.max_u1;
  j["max_ratio2"] = h.max_ratio2;
  j["max_ratio3"] = h.max_ratio3;
  j["samples"] = h.samples;
  return j;
}

}  // namespace

// ============================================================================
// CSV time series
// ============================================================================

void write_timeseries(const std::vector<FunctionalRecord>& records,
                      const std::string& path) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw IoError("cannot open '" + path + "' for writing");
  out << kRecordHeader << "\n";
  for (const FunctionalRecord& r : records) {
    out << fmt17(r.t) << ',' << fmt17(r.l2) << ',' << fmt17(r.weighted) << ','
        << fmt17(r.hminus1) << ',' << fmt17(r.h1) << ',' << fmt17(r.j_l2)
        << ',' << fmt17(r.j_weighted) << ',' << fmt17(r.phi) << ','
        << fmt17(r.jj) << ',' << fmt17(r.lyap) << ',' << fmt17(r.batchelor)
        << ',' << fmt17(r.res_energy) << ',' << fmt17(r.res_gamma) << ','
        << fmt17(r.res_energy_j) << ',' << fmt17(r.res_gamma_j) << "\n";
  }
  out.flush();
  if (!out) throw IoError("write failed for '" + path + "'");
}

std::vector<FunctionalRecord> read_timeseries(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot read '" + path + "'");
  std::string line;
  if (!std::getline(in, line)) throw IoError(path + ": empty file");
  if (!line.empty() && line.back() == '\r') line.pop_back();
  if (line != kRecordHeader)
    throw IoError(path + ": header does not match the time-series schema");
  std::vector<FunctionalRecord> out;
  std::size_t lineno = 1;
  while (std::getline(in, line)) {
    ++lineno;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    std::vector<std::string> fields;
    std::string item;
    std::istringstream is(line);
    while (std::getline(is, item, ',')) fields.push_back(item);
    if (fields.size() != 15) {
      std::ostringstream os;
      os << path << ":" << lineno << ": expected 15 fields, got "
         << fields.size();
      throw IoError(os.str());
    }
    FunctionalRecord r;
    std::size_t i = 0;
    for (double* dst : {&r.t, &r.l2, &r.weighted, &r.hminus1, &r.h1, &r.j_l2,
                        &r.j_weighted, &r.phi, &r.jj, &r.lyap, &r.batchelor,
                        &r.res_energy, &r.res_gamma, &r.res_energy_j,
                        &r.res_gamma_j})
      *dst = parse_field(fields[i++], path, lineno);
    out.push_back(r);
  }
  return out;
}

// ============================================================================
// JSON documents
// ============================================================================

std::string manifest_json(const RunManifest& m) {
  ojson j;
  j["tool_version"] = m.tool_version;
  j["source"] = m.source;
  j["started_at"] = m.started_at;
  j["finished_at"] = m.finished_at;
  j["config"] = config_json(m.config);
  j["ledger"] = ledger_ojson(m.ledger);
  j["hypothesis"] = certificate_ojson(m.hypothesis);
  j["outputs"] = m.outputs;
  j["exit_status"] = m.exit_status;
  return j.dump(2) + "\n";
}

void write_manifest(const RunManifest& m, const std::string& path) {
  write_text_atomic(manifest_json(m), path);
}

std::string monitor_report_json(const MonitorReport& r) {
  ojson j;
  j["name"] = r.name;
  j["trajectory_id"] = r.trajectory_id;
  j["samples_checked"] = r.samples_checked;
  j["worst_margin"] = r.worst_margin;
  j["tol"] = r.tol;
  j["pass"] = r.pass;
  j["regime"] = r.regime;
  j["advisory"] = r.advisory;
  return j.dump(2) + "\n";
}

void write_monitor_report(const MonitorReport& r, const std::string& path) {
  write_text_atomic(monitor_report_json(r), path);
}

std::string ledger_json(const CoeffLedger& led) {
  return ledger_ojson(led).dump(2) + "\n";
}

std::string certificate_json(const HypothesisCertificate& h) {
  return certificate_ojson(h).dump(2) + "\n";
}

std::string error_json(const std::string& kind, const std::string& message,
                       int exit_status) {
  ojson j;
  j["error"] = kind;
  j["message"] = message;
  j["exit_status"] = exit_status;
  return j.dump() + "\n";
}

std::string now_iso8601() {
  const std::time_t now = std::time(nullptr);
  std::tm tm_utc{};
  gmtime_r(&now, &tm_utc);
  char buf[32];
  std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tm_utc);
  return buf;
}

void write_text_atomic(const std::string& text, const std::string& path) {
  const std::string tmp = path + ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw IoError("cannot open '" + tmp + "' for writing");
    out << text;
    out.flush();
    if (!out) throw IoError("write failed for '" + tmp + "'");
  }
  std::error_code ec;
  std::filesystem::rename(tmp, path, ec);
  if (ec)
    throw IoError("cannot move '" + tmp + "' into place at '" + path +
                  "': " + ec.message());
}

}  // namespace hypomix
