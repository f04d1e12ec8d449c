/// @file errors.hpp
/// @brief Exception hierarchy. Every failure mode the library can hit has a
///        named type so callers (and the CLI) can map it to a stable error kind.
#pragma once

#include <stdexcept>
#include <string>

namespace hypomix {

/// Base class for all library errors. `kind()` is a stable machine-readable
/// tag; `what()` is the human-readable message.
class Error : public std::runtime_error {
 public:
  Error(std::string kind, const std::string& msg)
      : std::runtime_error(msg), kind_(std::move(kind)) {}
  const std::string& kind() const noexcept { return kind_; }

 private:
  std::string kind_;
};

#define HYPOMIX_DEFINE_ERROR(NAME)                         \
  class NAME : public Error {                              \
   public:                                                 \
    explicit NAME(const std::string& msg)                  \
        : Error(#NAME, msg) {}                             \
  }

// Configuration / validation problems (CLI exit code 2).
HYPOMIX_DEFINE_ERROR(ConfigError);
// Shear profile fails strict monotonicity where it is required.
HYPOMIX_DEFINE_ERROR(NonMonotone);
// State leaked into the outermost grid cells beyond the guard tolerance.
HYPOMIX_DEFINE_ERROR(BoundaryBreach);
// NaN or Inf appeared in the state.
HYPOMIX_DEFINE_ERROR(NonFinite);
// Requested synthesis would alias: active frequencies exceed the grid Nyquist.
HYPOMIX_DEFINE_ERROR(AliasRisk);
// Two record streams / states live on incompatible grids or time grids.
HYPOMIX_DEFINE_ERROR(MismatchedGrids);
// Inviscid resolution rule h*k*T*max|u'| <= pi/2 violated.
HYPOMIX_DEFINE_ERROR(ResolutionTooCoarse);
// A sweep trajectory never crossed the decay threshold.
HYPOMIX_DEFINE_ERROR(ThresholdNotReached);
// Fit window contains too little decay to identify a rate.
HYPOMIX_DEFINE_ERROR(InsufficientDecay);
// Sweep viscosity list spans fewer than two decades (or has < 2 entries).
HYPOMIX_DEFINE_ERROR(InsufficientSpan);
// Linear solve failed (singular or ill-formed banded system).
HYPOMIX_DEFINE_ERROR(SolveFailure);
// File could not be read or written; message carries the path.
HYPOMIX_DEFINE_ERROR(IoError);

#undef HYPOMIX_DEFINE_ERROR

}  // namespace hypomix
