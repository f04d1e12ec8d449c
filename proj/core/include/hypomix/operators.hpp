/// @file operators.hpp
/// @brief Discrete differential operators on the uniform grid and the elliptic
///        solve behind the H^-1-type norm.
///
/// d1 / d2 are the diagnostic derivatives: fourth-order centered stencils in
/// the interior, fourth-order one-sided stencils at the four outermost nodes.
/// apply_evol_laplacian is the exact spatial operator used inside the
/// Crank-Nicolson diffusion substep (fourth-order centered interior, threepoint
/// at the first and last interior node, Dirichlet rows pinned); diagnostics that
/// talk about the scheme's own dissipation must use it rather than d2.
#pragma once

#include <memory>

#include "hypomix/banded.hpp"
#include "hypomix/grid.hpp"
#include "hypomix/shear.hpp"

namespace hypomix {

// ---- shear samples ---------------------------------------------------------

/// Profile and derivatives evaluated once per (profile, grid).
struct ShearOnGrid {
  std::vector<double> u, u1, u2, u3;
  double max_abs_u = 0.0;  ///< max |u| over the grid
  double max_u1 = 0.0;     ///< max |u'| over the grid

  static ShearOnGrid sample(const ShearProfile& p, const Grid& grid);

  /// max |u'| restricted to grid nodes with |y - center| <= radius.
  double max_u1_within(const Grid& grid, double center, double radius) const;
  /// max |u| restricted to grid nodes with |y - center| <= radius.
  double max_abs_u_within(const Grid& grid, double center, double radius) const;
};

// ---- derivatives -----------------------------------------------------------

void d1_into(const Grid& grid, const cvec& g, cvec& out);
void d2_into(const Grid& grid, const cvec& g, cvec& out);
cvec d1(const Grid& grid, const cvec& g);
cvec d2(const Grid& grid, const cvec& g);

/// The Crank-Nicolson spatial operator (see file brief). Boundary rows are 0.
void apply_evol_laplacian_into(const Grid& grid, const cvec& g, cvec& out);
cvec apply_evol_laplacian(const Grid& grid, const cvec& g);

// ---- elliptic solve --------------------------------------------------------

/// Solves (k^2 - d^2/dy^2) psi = g with homogeneous Dirichlet conditions at
/// +-L through the symmetric positive-definite three-point operator, and
/// returns the squared negative-one-norm  Re<g, psi>  (trapezoid weights).
/// The factorization is built once per (grid, k) and reused across solves.
class Hminus1Solver {
 public:
  Hminus1Solver(std::shared_ptr<const Grid> grid, int k);

  struct Result {
    double norm_sq = 0.0;  ///< Re<g, psi> >= 0
    cvec psi;              ///< potential on the full grid (zero at the ends)
  };

  Result solve(const cvec& g) const;
  /// norm only; reuses an internal scratch buffer.
  double norm_sq(const cvec& g) const;

  int k() const { return k_; }
  const Grid& grid() const { return *grid_; }

 private:
  std::shared_ptr<const Grid> grid_;
  int k_;
  SpdTridiag tri_;
  mutable cvec scratch_;
};

/// (k^2 - d^2/dy^2) psi on the interior nodes with psi pinned to zero at the
/// ends; boundary rows of the output are 0. For residual checks.
cvec apply_helmholtz3(const Grid& grid, int k, const cvec& psi);

/// Relative residual ||(k^2 - d2) psi - g|| / ||g|| over the interior nodes.
double hminus1_residual(const Grid& grid, int k, const cvec& g, const cvec& psi);

}  // namespace hypomix
