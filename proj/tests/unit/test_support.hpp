/// @file test_support.hpp
/// @brief Shared helpers for the unit suites: deterministic random profiles,
///        relative-error utilities, and a self-cleaning temp directory.
#pragma once

#include <cmath>
#include <complex>
#include <cstdlib>
#include <filesystem>
#include <random>
#include <string>
#include <vector>

#include "hypomix/grid.hpp"

namespace hypomix::test {

/// White-noise complex vector (quadratic-form identities hold for any vector).
inline cvec random_profile(const Grid& grid, std::mt19937_64& rng) {
  std::normal_distribution<double> nd(0.0, 1.0);
  cvec g(grid.N);
  for (auto& z : g) z = cplx(nd(rng), nd(rng));
  return g;
}

/// Smooth compactly-supported profile: Gaussian envelope times a random
/// low-order trigonometric polynomial. Suitable where derivatives matter.
inline cvec random_smooth_profile(const Grid& grid, std::mt19937_64& rng,
                                  double envelope_width = 2.0) {
  std::normal_distribution<double> nd(0.0, 1.0);
  const int n_modes = 4;
  std::vector<cplx> coef(n_modes);
  std::vector<double> freq(n_modes);
  for (int m = 0; m < n_modes; ++m) {
    coef[m] = cplx(nd(rng), nd(rng));
    freq[m] = 2.0 * nd(rng);
  }
  cvec g(grid.N);
  for (std::size_t i = 0; i < grid.N; ++i) {
    double y = grid.y[i];
    cplx v = 0.0;
    for (int m = 0; m < n_modes; ++m)
      v += coef[m] * std::exp(cplx(0.0, freq[m] * y));
    g[i] = v * std::exp(-y * y / (2.0 * envelope_width * envelope_width));
  }
  return g;
}

inline double rel_err(double got, double want) {
  return std::abs(got - want) / std::max(1e-300, std::abs(want));
}

inline double rel_l2_diff(const Grid& grid, const cvec& a, const cvec& b) {
  double num = 0.0, den = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    num += std::norm(a[i] - b[i]);
    den += std::norm(b[i]);
  }
  (void)grid;
  return std::sqrt(num / std::max(1e-300, den));
}

inline double max_abs_diff(const cvec& a, const cvec& b) {
  double m = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i)
    m = std::max(m, std::abs(a[i] - b[i]));
  return m;
}

/// Temp directory under the system temp root, removed on destruction.
class TempDir {
 public:
  explicit TempDir(const std::string& tag) {
    auto base = std::filesystem::temp_directory_path();
    dir_ = base / ("hypomix_" + tag + "_" + std::to_string(std::rand()));
    std::filesystem::create_directories(dir_);
  }
  ~TempDir() {
    std::error_code ec;
    std::filesystem::remove_all(dir_, ec);
  }
  std::string path(const std::string& name) const {
    return (dir_ / name).string();
  }
  const std::filesystem::path& dir() const { return dir_; }

 private:
  std::filesystem::path dir_;
};

/// Reads a whole file; empty string when unreadable.
inline std::string slurp(const std::string& path) {
  std::FILE* f = std::fopen(path.c_str(), "rb");
  if (!f) return {};
  std::string out;
  char buf[4096];
  std::size_t n;
  while ((n = std::fread(buf, 1, sizeof buf, f)) > 0) out.append(buf, n);
  std::fclose(f);
  return out;
}

}  // namespace hypomix::test
