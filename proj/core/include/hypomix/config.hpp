/// @file config.hpp
/// @brief Flat `key = value` run configuration: parsing and validation.
///
/// The format is deliberately dumb so that run provenance stays diffable:
/// one `key = value` pair per line, `#` starts a comment, lists are
/// comma-separated. No sections, no expressions, no includes. Unknown keys are
/// rejected rather than ignored -- a typo must fail loudly, not silently run
/// the default.
///
/// Recognized keys (defaults in parentheses):
///
///   profile            = couette | sine_perturbed | exponential |
///                        polynomial | oscillatory            (couette)
///   profile.<param>    = numeric profile parameter, e.g. profile.amplitude
///   model              = hypoelliptic | full_laplacian       (hypoelliptic)
///   k                  = integer >= 1                        (1)
///   nu                 = real >= 0                           (0)
///   grid.L             = domain half-width > 0               (12)
///   grid.N             = node count >= 16                    (1536)
///   time.dt            = step size > 0                       (1e-3)
///   time.T             = final time > 0                      (1)
///   time.sample_every  = record every m-th step, m >= 1      (1)
///   init.kind          = gaussian_bump | hermite_bump        (gaussian_bump)
///   init.center        = bump center                         (0)
///   init.width         = bump width > 0                      (1)
///   init.amplitude_re  = Re A                                (1)
///   init.amplitude_im  = Im A                                (0)
///   monitors           = comma list of monitor names; empty means all
///   seed               = integer, consumed by randomized suites (0)
#pragma once

#include <map>
#include <string>
#include <vector>

#include "hypomix/evolve.hpp"
#include "hypomix/grid.hpp"

namespace hypomix {

struct RunConfig {
  std::string profile_name = "couette";
  std::map<std::string, double> profile_params;
  Model model = Model::hypoelliptic;
  int k = 1;
  double nu = 0.0;
  double L = 12.0;
  std::size_t N = 1536;
  EvolveConfig time;
  InitialData init;
  std::vector<std::string> monitors;  ///< empty = run all monitors
  long seed = 0;
};

/// Names accepted in the `monitors` list, in canonical order.
const std::vector<std::string>& monitor_names();

/// Parse configuration text. Throws ConfigError with a line number for
/// malformed lines, unknown keys, or unparseable values, then validates.
RunConfig parse_config(const std::string& text);

/// Read and parse a configuration file. Throws IoError if unreadable.
RunConfig load_config(const std::string& path);

/// Cross-field validation (ranges, support rule, monitor names, profile
/// lookup). parse_config/load_config already call this.
void validate(const RunConfig& cfg);

/// Serialize back to the flat text format (stable key order, 17 significant
/// digits). parse_config(dump_config(c)) reproduces c exactly.
std::string dump_config(const RunConfig& cfg);

}  // namespace hypomix
