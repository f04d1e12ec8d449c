/// @file io.hpp
/// @brief Persistent run records: CSV time series, JSON manifests and monitor
///        reports, machine-readable error documents.
///
/// Determinism contract: time-series CSV and monitor-report JSON are pure
/// functions of the data, so identical configs produce byte-identical files.
/// The manifest is the one exception -- it carries wall-clock timestamps by
/// design (it is the provenance record, not a data product).
#pragma once

#include <string>
#include <vector>

#include "hypomix/coeffs.hpp"
#include "hypomix/config.hpp"
#include "hypomix/experiments.hpp"
#include "hypomix/functionals.hpp"
#include "hypomix/shear.hpp"

namespace hypomix {

inline constexpr const char* kToolVersion = "1.0.0";

/// Provenance record for one run: the full configuration, the constants it
/// ran under, the shear certificate, and the files it produced.
struct RunManifest {
  RunConfig config;
  CoeffLedger ledger;
  HypothesisCertificate hypothesis;
  std::string tool_version = kToolVersion;
  std::string source = "simulate";  ///< subcommand that produced the run
  std::string started_at;           ///< ISO 8601 UTC
  std::string finished_at;
  std::vector<std::string> outputs;  ///< files covered by this manifest
  int exit_status = 0;
};

// ---- CSV time series -------------------------------------------------------

/// Write records as CSV: header row (see kRecordHeader), then one row per
/// record, every float with 17 significant digits, LF line endings. An empty
/// list produces a header-only file. Throws IoError with the path on failure.
void write_timeseries(const std::vector<FunctionalRecord>& records,
                      const std::string& path);

/// Read a file produced by write_timeseries. Throws IoError if unreadable or
/// if the header/row shape does not match the schema.
std::vector<FunctionalRecord> read_timeseries(const std::string& path);

// ---- JSON documents ---------------------------------------------------------

/// Manifest as pretty-printed JSON with stable key order.
std::string manifest_json(const RunManifest& m);

/// Atomic write: the document lands under a temporary name in the target
/// directory and is renamed into place, so readers never see a torn file.
void write_manifest(const RunManifest& m, const std::string& path);

std::string monitor_report_json(const MonitorReport& r);
void write_monitor_report(const MonitorReport& r, const std::string& path);

/// Stand-alone documents used by the `constants` and `certify` subcommands.
std::string ledger_json(const CoeffLedger& led);
std::string certificate_json(const HypothesisCertificate& h);

/// One-line JSON error document for stderr: {"error": kind, "message": ...,
/// "exit_status": n}.
std::string error_json(const std::string& kind, const std::string& message,
                       int exit_status);

/// Current wall-clock time as an ISO 8601 UTC string (second resolution).
std::string now_iso8601();

/// Write text to path atomically (temp file + rename). Throws IoError.
void write_text_atomic(const std::string& text, const std::string& path);

}  // namespace hypomix
