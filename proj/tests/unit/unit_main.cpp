/// @file unit_main.cpp
/// @brief doctest runner for the unit and property suites.
///
/// Suites: shear, coeffs, grid, operators, couette_oracle, evolve,
/// functionals, experiments, config_io. Run one with `-ts=<suite>`.
#define DOCTEST_CONFIG_IMPLEMENT
#include <doctest.h>

int main(int argc, char** argv) {
  doctest::Context ctx;
  ctx.setOption("duration", true);
  ctx.applyCommandLine(argc, argv);
  return ctx.run();
}
