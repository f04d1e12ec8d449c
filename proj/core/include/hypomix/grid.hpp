/// @file grid.hpp
/// @brief Uniform grid on [-L, L], the per-mode state, trapezoidal quadrature,
///        and analytic initial data.
///
/// Conventions used throughout the library:
///  - one x-Fourier mode k >= 1 at a time; d/dx acts as multiplication by i*k;
///  - inner products are conjugate-linear in the first argument,
///      <a, b> = integral conj(a(y)) b(y) dy,
///    discretized by the trapezoidal rule on the uniform grid;
///  - all norms are per-mode quantities; the corresponding two-sided band
///    (mode k plus its conjugate at -k) differs by one global factor in the
///    squared norms which cancels from every ratio, functional inequality and
///    fitted rate.
#pragma once

#include <complex>
#include <cstddef>
#include <memory>
#include <string>
#include <vector>

namespace hypomix {

using cplx = std::complex<double>;
using cvec = std::vector<cplx>;

enum class Model { hypoelliptic, full_laplacian };

std::string to_string(Model m);
Model model_from_string(const std::string& s);

struct Grid {
  double L = 0.0;
  std::size_t N = 0;
  double h = 0.0;
  std::vector<double> y;

  /// Uniform grid with N nodes on [-L, L] (endpoints included). N >= 16.
  static std::shared_ptr<const Grid> make(double L, std::size_t N);
};

/// State of one x-Fourier mode: complex profile g(y) at time t.
struct ModeState {
  std::shared_ptr<const Grid> grid;
  int k = 1;
  Model model = Model::hypoelliptic;
  double t = 0.0;
  cvec g;
};

// ---- quadrature ------------------------------------------------------------

/// Trapezoidal <a, b> = h * sum w_i conj(a_i) b_i, w = 1/2 at the endpoints.
cplx inner(const Grid& grid, const cvec& a, const cvec& b);

/// Same with a real pointwise weight: <a, w.*b>.
cplx inner_weighted(const Grid& grid, const cvec& a,
                    const std::vector<double>& w, const cvec& b);

double norm_sq(const Grid& grid, const cvec& a);
double norm_sq_weighted(const Grid& grid, const std::vector<double>& w,
                        const cvec& a);
double norm_l2(const Grid& grid, const cvec& a);

// ---- initial data ----------------------------------------------------------

/// Analytic initial profiles with closed-form Fourier transforms
/// (unitary convention  ghat(eta) = (2*pi)^(-1/2) \int g(y) e^{-i eta y} dy):
///   gaussian_bump: g(y) = A exp(-(y-c)^2 / (2 s^2))
///                  ghat(eta) = A s exp(-s^2 eta^2 / 2) e^{-i eta c}
///   hermite_bump:  g(y) = A ((y-c)/s) exp(-(y-c)^2 / (2 s^2))
///                  ghat(eta) = -i A s^2 eta exp(-s^2 eta^2 / 2) e^{-i eta c}
/// The effective support is [c - 8s, c + 8s] and must sit inside the domain
/// [-L, L]; by then the Gaussian tails are below 2e-14 of the peak, which the
/// boundary guard of the evolver treats as numerically compact.
struct InitialData {
  enum class Kind { gaussian_bump, hermite_bump };
  Kind kind = Kind::gaussian_bump;
  double center = 0.0;
  double width = 1.0;  ///< s > 0
  cplx amplitude = {1.0, 0.0};

  cplx value(double y) const;
  cplx spectrum(double eta) const;

  /// Throws ConfigError unless [center - 8 width, center + 8 width] is inside
  /// [-L, L] (L = domain half-width).
  void validate_support(double L) const;
};

InitialData::Kind init_kind_from_string(const std::string& s);
std::string to_string(InitialData::Kind k);

/// Sample initial data onto a grid. Validates the support rule and k >= 1.
ModeState make_initial_state(std::shared_ptr<const Grid> grid, int k,
                             Model model, const InitialData& init);

}  // namespace hypomix
