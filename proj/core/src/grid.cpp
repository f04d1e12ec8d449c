#include "hypomix/grid.hpp"

#include <cmath>
#include <sstream>

#include "hypomix/errors.hpp"

namespace hypomix {

std::string to_string(Model m) {
  return m == Model::hypoelliptic ? "hypoelliptic" : "full_laplacian";
}

Model model_from_string(const std::string& s) {
  if (s == "hypoelliptic") return Model::hypoelliptic;
  if (s == "full_laplacian") return Model::full_laplacian;
  throw ConfigError("unknown model '" + s +
                    "' (expected hypoelliptic or full_laplacian)");
}

std::shared_ptr<const Grid> Grid::make(double L, std::size_t N) {
  if (!(L > 0.0)) throw ConfigError("Grid: L must be positive");
  if (N < 16) throw ConfigError("Grid: need at least 16 nodes");
  auto g = std::make_shared<Grid>();
  g->L = L;
  g->N = N;
  g->h = 2.0 * L / static_cast<double>(N - 1);
  g->y.resize(N);
  for (std::size_t i = 0; i < N; ++i)
    g->y[i] = -L + g->h * static_cast<double>(i);
  return g;
}

cplx inner(const Grid& grid, const cvec& a, const cvec& b) {
  if (a.size() != grid.N || b.size() != grid.N)
    throw MismatchedGrids("inner: vector length does not match grid");
  cplx s = 0.5 * (std::conj(a.front()) * b.front() +
                  std::conj(a.back()) * b.back());
  for (std::size_t i = 1; i + 1 < grid.N; ++i) s += std::conj(a[i]) * b[i];
  return grid.h * s;
}

cplx inner_weighted(const Grid& grid, const cvec& a,
                    const std::vector<double>& w, const cvec& b) {
  if (a.size() != grid.N || b.size() != grid.N || w.size() != grid.N)
    throw MismatchedGrids("inner_weighted: vector length does not match grid");
  cplx s = 0.5 * (std::conj(a.front()) * w.front() * b.front() +
                  std::conj(a.back()) * w.back() * b.back());
  for (std::size_t i = 1; i + 1 < grid.N; ++i)
    s += std::conj(a[i]) * w[i] * b[i];
  return grid.h * s;
}

double norm_sq(const Grid& grid, const cvec& a) {
  if (a.size() != grid.N)
    throw MismatchedGrids("norm_sq: vector length does not match grid");
  double s = 0.5 * (std::norm(a.front()) + std::norm(a.back()));
  for (std::size_t i = 1; i + 1 < grid.N; ++i) s += std::norm(a[i]);
  return grid.h * s;
}

double norm_sq_weighted(const Grid& grid, const std::vector<double>& w,
                        const cvec& a) {
  if (a.size() != grid.N || w.size() != grid.N)
    throw MismatchedGrids("norm_sq_weighted: vector length does not match grid");
  double s = 0.5 * (w.front() * std::norm(a.front()) +
                    w.back() * std::norm(a.back()));
  for (std::size_t i = 1; i + 1 < grid.N; ++i) s += w[i] * std::norm(a[i]);
  return grid.h * s;
}

double norm_l2(const Grid& grid, const cvec& a) {
  return std::sqrt(norm_sq(grid, a));
}

cplx InitialData::value(double y) const {
  const double z = (y - center) / width;
  const double envelope = std::exp(-0.5 * z * z);
  switch (kind) {
    case Kind::gaussian_bump: return amplitude * envelope;
    case Kind::hermite_bump: return amplitude * z * envelope;
  }
  return {0.0, 0.0};
}

cplx InitialData::spectrum(double eta) const {
  const double s = width;
  const double envelope = std::exp(-0.5 * s * s * eta * eta);
  const cplx shift = std::polar(1.0, -eta * center);
  switch (kind) {
    case Kind::gaussian_bump: return amplitude * s * envelope * shift;
    case Kind::hermite_bump:
      return amplitude * cplx(0.0, -1.0) * s * s * eta * envelope * shift;
  }
  return {0.0, 0.0};
}

void InitialData::validate_support(double L) const {
  if (!(width > 0.0)) throw ConfigError("InitialData: width must be positive");
  if (std::abs(amplitude) == 0.0)
    throw ConfigError("InitialData: amplitude must be nonzero");
  const double lo = center - 8.0 * width, hi = center + 8.0 * width;
  if (lo < -L || hi > L) {
    std::ostringstream os;
    os << "InitialData: effective support [" << lo << ", " << hi
       << "] exceeds the domain [" << -L << ", " << L << "]";
    throw ConfigError(os.str());
  }
}

InitialData::Kind init_kind_from_string(const std::string& s) {
  if (s == "gaussian_bump") return InitialData::Kind::gaussian_bump;
  if (s == "hermite_bump") return InitialData::Kind::hermite_bump;
  throw ConfigError("unknown initial data kind '" + s + "'");
}

std::string to_string(InitialData::Kind k) {
  return k == InitialData::Kind::gaussian_bump ? "gaussian_bump"
                                               : "hermite_bump";
}

ModeState make_initial_state(std::shared_ptr<const Grid> grid, int k,
                             Model model, const InitialData& init) {
  if (!grid) throw ConfigError("make_initial_state: null grid");
  if (k < 1)
    throw ConfigError("make_initial_state: wavenumber k must be >= 1 "
                      "(the k = 0 mean mode does not mix and is rejected)");
  init.validate_support(grid->L);
  ModeState s;
  s.grid = std::move(grid);
  s.k = k;
  s.model = model;
  s.t = 0.0;
  s.g.resize(s.grid->N);
  for (std::size_t i = 0; i < s.grid->N; ++i)
    s.g[i] = init.value(s.grid->y[i]);
  return s;
}

}  // namespace hypomix
