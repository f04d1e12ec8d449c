#include "hypomix/operators.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "hypomix/errors.hpp"

namespace hypomix {

ShearOnGrid ShearOnGrid::sample(const ShearProfile& p, const Grid& grid) {
  ShearOnGrid s;
  const std::size_t N = grid.N;
  s.u.resize(N);
  s.u1.resize(N);
  s.u2.resize(N);
  s.u3.resize(N);
  for (std::size_t i = 0; i < N; ++i) {
    const double y = grid.y[i];
    s.u[i] = p.u(y);
    s.u1[i] = p.u1(y);
    s.u2[i] = p.u2(y);
    s.u3[i] = p.u3(y);
    s.max_abs_u = std::max(s.max_abs_u, std::abs(s.u[i]));
    s.max_u1 = std::max(s.max_u1, std::abs(s.u1[i]));
  }
  return s;
}

double ShearOnGrid::max_u1_within(const Grid& grid, double center,
                                  double radius) const {
  double m = 0.0;
  for (std::size_t i = 0; i < grid.N; ++i)
    if (std::abs(grid.y[i] - center) <= radius)
      m = std::max(m, std::abs(u1[i]));
  return m;
}

double ShearOnGrid::max_abs_u_within(const Grid& grid, double center,
                                     double radius) const {
  double m = 0.0;
  for (std::size_t i = 0; i < grid.N; ++i)
    if (std::abs(grid.y[i] - center) <= radius)
      m = std::max(m, std::abs(u[i]));
  return m;
}

// ---- derivatives -----------------------------------------------------------

void d1_into(const Grid& grid, const cvec& g, cvec& out) {
  const std::size_t N = grid.N;
  if (g.size() != N) throw MismatchedGrids("d1: vector length mismatch");
  out.resize(N);
  const double c = 1.0 / (12.0 * grid.h);
  // one-sided fourth-order rows
  out[0] = c * (-25.0 * g[0] + 48.0 * g[1] - 36.0 * g[2] + 16.0 * g[3] -
                3.0 * g[4]);
  out[1] = c * (-3.0 * g[0] - 10.0 * g[1] + 18.0 * g[2] - 6.0 * g[3] + g[4]);
  for (std::size_t i = 2; i + 2 < N; ++i)
    out[i] = c * (g[i - 2] - 8.0 * g[i - 1] + 8.0 * g[i + 1] - g[i + 2]);
  out[N - 2] = -c * (-3.0 * g[N - 1] - 10.0 * g[N - 2] + 18.0 * g[N - 3] -
                     6.0 * g[N - 4] + g[N - 5]);
  out[N - 1] = -c * (-25.0 * g[N - 1] + 48.0 * g[N - 2] - 36.0 * g[N - 3] +
                     16.0 * g[N - 4] - 3.0 * g[N - 5]);
}

void d2_into(const Grid& grid, const cvec& g, cvec& out) {
  const std::size_t N = grid.N;
  if (g.size() != N) throw MismatchedGrids("d2: vector length mismatch");
  out.resize(N);
  const double c = 1.0 / (12.0 * grid.h * grid.h);
  out[0] = c * (45.0 * g[0] - 154.0 * g[1] + 214.0 * g[2] - 156.0 * g[3] +
                61.0 * g[4] - 10.0 * g[5]);
  out[1] = c * (10.0 * g[0] - 15.0 * g[1] - 4.0 * g[2] + 14.0 * g[3] -
                6.0 * g[4] + g[5]);
  for (std::size_t i = 2; i + 2 < N; ++i)
    out[i] = c * (-g[i - 2] + 16.0 * g[i - 1] - 30.0 * g[i] + 16.0 * g[i + 1] -
                  g[i + 2]);
  out[N - 2] = c * (10.0 * g[N - 1] - 15.0 * g[N - 2] - 4.0 * g[N - 3] +
                    14.0 * g[N - 4] - 6.0 * g[N - 5] + g[N - 6]);
  out[N - 1] = c * (45.0 * g[N - 1] - 154.0 * g[N - 2] + 214.0 * g[N - 3] -
                    156.0 * g[N - 4] + 61.0 * g[N - 5] - 10.0 * g[N - 6]);
}

cvec d1(const Grid& grid, const cvec& g) {
  cvec out;
  d1_into(grid, g, out);
  return out;
}

cvec d2(const Grid& grid, const cvec& g) {
  cvec out;
  d2_into(grid, g, out);
  return out;
}

void apply_evol_laplacian_into(const Grid& grid, const cvec& g, cvec& out) {
  const std::size_t N = grid.N;
  if (g.size() != N)
    throw MismatchedGrids("apply_evol_laplacian: vector length mismatch");
  out.resize(N);
  const double c2 = 1.0 / (grid.h * grid.h);
  const double c4 = c2 / 12.0;
  out[0] = 0.0;  // Dirichlet row
  out[1] = c2 * (g[0] - 2.0 * g[1] + g[2]);
  for (std::size_t i = 2; i + 2 < N; ++i)
    out[i] = c4 * (-g[i - 2] + 16.0 * g[i - 1] - 30.0 * g[i] +
                   16.0 * g[i + 1] - g[i + 2]);
  out[N - 2] = c2 * (g[N - 3] - 2.0 * g[N - 2] + g[N - 1]);
  out[N - 1] = 0.0;
}

cvec apply_evol_laplacian(const Grid& grid, const cvec& g) {
  cvec out;
  apply_evol_laplacian_into(grid, g, out);
  return out;
}

// ---- elliptic solve --------------------------------------------------------

namespace {

SpdTridiag build_helmholtz3(const Grid& grid, int k) {
  if (k < 1) throw ConfigError("Hminus1Solver: k must be >= 1");
  const std::size_t n = grid.N - 2;  // interior nodes
  const double ih2 = 1.0 / (grid.h * grid.h);
  std::vector<double> d(n, static_cast<double>(k) * k + 2.0 * ih2);
  std::vector<double> e(n - 1, -ih2);
  return SpdTridiag(std::move(d), std::move(e));
}

}  // namespace

Hminus1Solver::Hminus1Solver(std::shared_ptr<const Grid> grid, int k)
    : grid_(std::move(grid)), k_(k), tri_(build_helmholtz3(*grid_, k)) {}

Hminus1Solver::Result Hminus1Solver::solve(const cvec& g) const {
  const std::size_t N = grid_->N;
  if (g.size() != N) throw MismatchedGrids("Hminus1Solver: length mismatch");
  Result r;
  scratch_.assign(g.begin() + 1, g.end() - 1);
  tri_.solve(scratch_);
  r.psi.assign(N, cplx{0.0, 0.0});
  std::copy(scratch_.begin(), scratch_.end(), r.psi.begin() + 1);
  // Trapezoid weights: psi vanishes at the ends, so all retained terms carry
  // full weight h.
  double s = 0.0;
  for (std::size_t i = 0; i + 2 < N; ++i)
    s += std::real(std::conj(g[i + 1]) * scratch_[i]);
  r.norm_sq = grid_->h * s;
  return r;
}

double Hminus1Solver::norm_sq(const cvec& g) const {
  const std::size_t N = grid_->N;
  if (g.size() != N) throw MismatchedGrids("Hminus1Solver: length mismatch");
  scratch_.assign(g.begin() + 1, g.end() - 1);
  tri_.solve(scratch_);
  double s = 0.0;
  for (std::size_t i = 0; i + 2 < N; ++i)
    s += std::real(std::conj(g[i + 1]) * scratch_[i]);
  return grid_->h * s;
}

cvec apply_helmholtz3(const Grid& grid, int k, const cvec& psi) {
  const std::size_t N = grid.N;
  if (psi.size() != N) throw MismatchedGrids("apply_helmholtz3: length mismatch");
  cvec out(N, cplx{0.0, 0.0});
  const double ih2 = 1.0 / (grid.h * grid.h);
  const double kk = static_cast<double>(k) * k;
  for (std::size_t i = 1; i + 1 < N; ++i)
    out[i] = (kk + 2.0 * ih2) * psi[i] - ih2 * (psi[i - 1] + psi[i + 1]);
  return out;
}

double hminus1_residual(const Grid& grid, int k, const cvec& g,
                        const cvec& psi) {
  const cvec Ap = apply_helmholtz3(grid, k, psi);
  double num = 0.0, den = 0.0;
  for (std::size_t i = 1; i + 1 < grid.N; ++i) {
    num += std::norm(Ap[i] - g[i]);
    den += std::norm(g[i]);
  }
  if (den == 0.0) return num == 0.0 ? 0.0 : std::numeric_limits<double>::infinity();
  return std::sqrt(num / den);
}

}  // namespace hypomix
