#include "hypomix/evolve.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "hypomix/errors.hpp"

namespace hypomix {

namespace {

constexpr double kPi = 3.14159265358979323846;
constexpr double kSupportCut = 1e-13;

void validate_config(const EvolveConfig& cfg) {
  if (!(cfg.dt > 0.0)) throw ConfigError("EvolveConfig: dt must be > 0");
  if (!(cfg.T > 0.0)) throw ConfigError("EvolveConfig: T must be > 0");
  if (cfg.sample_every < 1)
    throw ConfigError("EvolveConfig: sample_every must be >= 1");
  if (!(cfg.phase_cap > 0.0))
    throw ConfigError("EvolveConfig: phase_cap must be > 0");
  if (!(cfg.guard_tol > 0.0))
    throw ConfigError("EvolveConfig: guard_tol must be > 0");
}

std::size_t step_count(const EvolveConfig& cfg) {
  const double ratio = cfg.T / cfg.dt;
  const long long n = std::llround(ratio);
  if (n < 1 || std::abs(static_cast<double>(n) * cfg.dt - cfg.T) >
                   1e-9 * std::max(1.0, cfg.T)) {
    std::ostringstream os;
    os << "EvolveConfig: T = " << cfg.T << " is not an integer number of dt = "
       << cfg.dt << " steps";
    throw ConfigError(os.str());
  }
  return static_cast<std::size_t>(n);
}

/// [y_lo, y_hi] where |g| exceeds kSupportCut * max|g|.
void data_support(const Grid& grid, const cvec& g, double& lo, double& hi) {
  double peak = 0.0;
  for (const cplx& v : g) peak = std::max(peak, std::norm(v));
  peak = std::sqrt(peak);
  lo = grid.y.back();
  hi = grid.y.front();
  for (std::size_t i = 0; i < grid.N; ++i) {
    if (std::abs(g[i]) > kSupportCut * peak) {
      lo = std::min(lo, grid.y[i]);
      hi = std::max(hi, grid.y[i]);
    }
  }
  if (lo > hi) {  // identically zero data: support degenerates to a point
    lo = hi = 0.0;
  }
}

/// Inviscid resolution rule: the mixing-generated frequency k * t * u' over
/// the data support must stay below the grid Nyquist limit pi / h.
void check_inviscid_resolution(const Grid& grid, const ShearOnGrid& shear,
                               int k, double t_end, const cvec& g0) {
  double lo = 0.0, hi = 0.0;
  data_support(grid, g0, lo, hi);
  const double u1 =
      shear.max_u1_within(grid, 0.5 * (lo + hi), 0.5 * (hi - lo));
  const double product = grid.h * static_cast<double>(k) * t_end * u1;
  if (product > 0.5 * kPi) {
    std::ostringstream os;
    os << "inviscid run under-resolved: h*k*T*max u' = " << product
       << " exceeds pi/2 (h = " << grid.h << ", max u' = " << u1
       << " on the data support [" << lo << ", " << hi
       << "]); increase N to at least "
       << static_cast<std::size_t>(std::ceil(
              2.0 * grid.L * 2.0 * static_cast<double>(k) * t_end * u1 / kPi)) +
              1;
    throw ResolutionTooCoarse(os.str());
  }
}

}  // namespace

// ============================================================================
// Stepper
// ============================================================================

Stepper::Stepper(std::shared_ptr<const Grid> grid, int k, Model model,
                 double nu, const ShearProfile& p, const EvolveConfig& cfg)
    : grid_(std::move(grid)), k_(k), model_(model), nu_(nu), cfg_(cfg) {
  validate_config(cfg_);
  if (k_ < 1) throw ConfigError("Stepper: k must be >= 1");
  if (!(nu_ >= 0.0)) throw ConfigError("Stepper: nu must be >= 0");
  shear_ = ShearOnGrid::sample(p, *grid_);

  const double phase = cfg_.dt * static_cast<double>(k_) * shear_.max_abs_u;
  if (phase > cfg_.phase_cap * (1.0 + 1e-12)) {
    std::ostringstream os;
    os << "Stepper: dt*k*max|u| = " << phase << " exceeds the phase cap "
       << cfg_.phase_cap << "; need dt <= "
       << cfg_.phase_cap / (static_cast<double>(k_) * shear_.max_abs_u);
    throw ConfigError(os.str());
  }

  const std::size_t N = grid_->N;
  phase_half_.resize(N);
  for (std::size_t i = 0; i < N; ++i)
    phase_half_[i] =
        std::polar(1.0, -static_cast<double>(k_) * shear_.u[i] * 0.5 * cfg_.dt);

  full_factor_ = (model_ == Model::full_laplacian)
                     ? std::exp(-nu_ * static_cast<double>(k_) *
                                static_cast<double>(k_) * cfg_.dt)
                     : 1.0;

  if (nu_ > 0.0) {
    // I - (nu dt / 2) Levol, mirroring apply_evol_laplacian row by row.
    const double lam = 0.5 * nu_ * cfg_.dt;
    const double c2 = 1.0 / (grid_->h * grid_->h);
    const double c4 = c2 / 12.0;
    const int n = static_cast<int>(N);
    cn_ = std::make_unique<BandedLU>(n, 2, 2);
    cn_->set(0, 0, 1.0);
    cn_->set(1, 0, -lam * c2);
    cn_->set(1, 1, 1.0 + 2.0 * lam * c2);
    cn_->set(1, 2, -lam * c2);
    for (int i = 2; i + 2 < n; ++i) {
      cn_->set(i, i - 2, lam * c4);
      cn_->set(i, i - 1, -16.0 * lam * c4);
      cn_->set(i, i, 1.0 + 30.0 * lam * c4);
      cn_->set(i, i + 1, -16.0 * lam * c4);
      cn_->set(i, i + 2, lam * c4);
    }
    cn_->set(n - 2, n - 3, -lam * c2);
    cn_->set(n - 2, n - 2, 1.0 + 2.0 * lam * c2);
    cn_->set(n - 2, n - 1, -lam * c2);
    cn_->set(n - 1, n - 1, 1.0);
    cn_->factor();
  }
  scratch_.resize(N);
}

void Stepper::step(ModeState& s) const {
  if (s.grid.get() != grid_.get())
    throw MismatchedGrids("Stepper::step: state built on another grid");
  if (s.k != k_ || s.model != model_)
    throw ConfigError("Stepper::step: state (k, model) differs from setup");
  const std::size_t N = grid_->N;
  cvec& g = s.g;

  for (std::size_t i = 0; i < N; ++i) g[i] *= phase_half_[i];
  if (nu_ > 0.0) {
    const double lam = 0.5 * nu_ * cfg_.dt;
    apply_evol_laplacian_into(*grid_, g, scratch_);
    for (std::size_t i = 0; i < N; ++i) g[i] += lam * scratch_[i];
    cn_->solve(g);
    if (full_factor_ != 1.0)
      for (std::size_t i = 0; i < N; ++i) g[i] *= full_factor_;
  }
  for (std::size_t i = 0; i < N; ++i) g[i] *= phase_half_[i];

  s.t += cfg_.dt;
  guard(s);
}

void Stepper::guard(const ModeState& s) const {
  const std::size_t N = grid_->N;
  double peak = 0.0;
  bool finite = true;
  for (const cplx& v : s.g) {
    const double nr = std::norm(v);
    if (!std::isfinite(nr)) finite = false;
    peak = std::max(peak, nr);
  }
  if (!finite) {
    std::ostringstream os;
    os << "non-finite state at t = " << s.t;
    throw NonFinite(os.str());
  }
  peak_scale_ = std::max(peak_scale_, peak);
  double edge = 0.0;
  for (std::size_t i = 0; i < 4; ++i) {
    edge = std::max(edge, std::norm(s.g[i]));
    edge = std::max(edge, std::norm(s.g[N - 1 - i]));
  }
  if (std::sqrt(edge) > cfg_.guard_tol * std::sqrt(peak_scale_)) {
    std::ostringstream os;
    os << "solution reached the domain boundary at t = " << s.t
       << " (edge magnitude " << std::sqrt(edge) << " vs guard "
       << cfg_.guard_tol * std::sqrt(peak_scale_)
       << "); enlarge L or loosen guard_tol";
    throw BoundaryBreach(os.str());
  }
}

ModeState step(const ModeState& s, const EvolveConfig& cfg, double nu,
               const ShearProfile& p) {
  Stepper st(s.grid, s.k, s.model, nu, p, cfg);
  ModeState out = s;
  st.step(out);
  return out;
}

// ============================================================================
// run
// ============================================================================

RunSummary run(const ModeState& s0, const EvolveConfig& cfg, double nu,
               const ShearProfile& p, const std::vector<SampleSink>& sinks) {
  Stepper st(s0.grid, s0.k, s0.model, nu, p, cfg);
  const std::size_t n = step_count(cfg);
  const Grid& grid = *s0.grid;

  RunSummary sum;
  auto emit = [&](const ModeState& s) {
    for (const SampleSink& sink : sinks)
      if (sink) sink(s);
    ++sum.n_samples;
  };

  if (nu == 0.0) {
    // Exact transport: compositions of phase steps collapse to one phase.
    check_inviscid_resolution(grid, st.shear(), s0.k, s0.t + cfg.T, s0.g);
    ModeState s = s0;
    const double dk = static_cast<double>(s0.k);
    for (std::size_t m = 0;; m += cfg.sample_every) {
      const bool last = m >= n;
      const std::size_t mm = last ? n : m;
      const double tau = static_cast<double>(mm) * cfg.dt;
      for (std::size_t i = 0; i < grid.N; ++i)
        s.g[i] = std::polar(1.0, -dk * st.shear().u[i] * tau) * s0.g[i];
      s.t = s0.t + tau;
      st.guard(s);
      emit(s);
      if (last) {
        sum.final_state = std::move(s);
        break;
      }
    }
    sum.n_steps = 0;
    sum.transport_path = true;
    sum.t_final = sum.final_state.t;
    return sum;
  }

  ModeState s = s0;
  st.guard(s);
  emit(s);
  for (std::size_t m = 1; m <= n; ++m) {
    st.step(s);
    s.t = s0.t + static_cast<double>(m) * cfg.dt;  // no additive drift
    if (m % cfg.sample_every == 0 || m == n) emit(s);
  }
  sum.n_steps = n;
  sum.t_final = s.t;
  sum.final_state = std::move(s);
  return sum;
}

// ============================================================================
// direct co-evolution of the twisted field
// ============================================================================

JDirectResult evolve_J_direct(const ModeState& s0, const EvolveConfig& cfg,
                              double nu, const ShearProfile& p) {
  Stepper st(s0.grid, s0.k, s0.model, nu, p, cfg);
  const std::size_t n = step_count(cfg);
  const Grid& grid = *s0.grid;
  const std::size_t N = grid.N;
  const ShearOnGrid& sh = st.shear();
  const double dk = static_cast<double>(s0.k);

  // w(0) = J g(0).
  cvec w = d1(grid, s0.g);
  {
    const double kt0 = dk * s0.t;
    for (std::size_t i = 0; i < N; ++i)
      w[i] += cplx(0.0, kt0 * sh.u1[i]) * s0.g[i];
  }

  JDirectResult out;

  if (nu == 0.0) {
    // Every source carries nu: both fields ride the same pure transport.
    check_inviscid_resolution(grid, sh, s0.k, s0.t + cfg.T, s0.g);
    out.state = s0;
    out.state.t = s0.t + cfg.T;
    for (std::size_t i = 0; i < N; ++i) {
      const cplx ph = std::polar(1.0, -dk * sh.u[i] * cfg.T);
      out.state.g[i] = ph * s0.g[i];
      w[i] *= ph;
    }
    st.guard(out.state);
    out.w = std::move(w);
    return out;
  }

  for (std::size_t i = 0; i < N; ++i) {
    if (!(sh.u1[i] > 0.0))
      throw NonMonotone(
          "evolve_J_direct: the commutator form divides by u' and needs a "
          "strictly monotone shear on the grid");
  }
  std::vector<double> r2(N), r3(N);
  for (std::size_t i = 0; i < N; ++i) {
    r2[i] = sh.u2[i] / sh.u1[i];
    r3[i] = sh.u3[i] / sh.u1[i];
  }

  // LHS band I - (dt/2) Aw with Aw = nu [Levol + diag(r3) - 2 d1 diag(r2)],
  // boundary rows Dirichlet. The d1 entries are probed from d1_into itself so
  // the matrix can never drift out of sync with the operator.
  const double half_dt = 0.5 * cfg.dt;
  BandedLU awlu(static_cast<int>(N), 4, 4);
  awlu.set(0, 0, 1.0);
  awlu.set(static_cast<int>(N) - 1, static_cast<int>(N) - 1, 1.0);
  {
    const double c2 = 1.0 / (grid.h * grid.h);
    const double c4 = c2 / 12.0;
    const int nn = static_cast<int>(N);
    auto add_aw = [&](int i, int j, double aw) {
      awlu.add(i, j, -half_dt * nu * aw);
    };
    // Levol rows 1 .. N-2
    add_aw(1, 0, c2);
    add_aw(1, 1, -2.0 * c2);
    add_aw(1, 2, c2);
    for (int i = 2; i + 2 < nn; ++i) {
      add_aw(i, i - 2, -c4);
      add_aw(i, i - 1, 16.0 * c4);
      add_aw(i, i, -30.0 * c4);
      add_aw(i, i + 1, 16.0 * c4);
      add_aw(i, i + 2, -c4);
      awlu.add(i, i, 1.0);
    }
    add_aw(nn - 2, nn - 3, c2);
    add_aw(nn - 2, nn - 2, -2.0 * c2);
    add_aw(nn - 2, nn - 1, c2);
    awlu.add(1, 1, 1.0);
    awlu.add(nn - 2, nn - 2, 1.0);
    // diag(r3)
    for (int i = 1; i + 1 < nn; ++i) add_aw(i, i, r3[static_cast<std::size_t>(i)]);
    // -2 d1 diag(r2): probe columns of d1 against unit vectors.
    cvec ej(N, 0.0), dj(N);
    for (int j = 0; j < nn; ++j) {
      ej[static_cast<std::size_t>(j)] = 1.0;
      d1_into(grid, ej, dj);
      ej[static_cast<std::size_t>(j)] = 0.0;
      const int lo = std::max(1, j - 4), hi = std::min(nn - 2, j + 4);
      for (int i = lo; i <= hi; ++i) {
        const double entry = dj[static_cast<std::size_t>(i)].real();
        if (entry != 0.0)
          add_aw(i, j, -2.0 * entry * r2[static_cast<std::size_t>(j)]);
      }
    }
  }
  awlu.factor();

  const double full_factor =
      (s0.model == Model::full_laplacian) ? std::exp(-nu * dk * dk * cfg.dt)
                                          : 1.0;
  cvec ph(N);
  for (std::size_t i = 0; i < N; ++i)
    ph[i] = std::polar(1.0, -dk * sh.u[i] * 0.5 * cfg.dt);

  cvec gmid(N), gtil(N), bsum(N), rhs(N), tmp(N), tmp2(N), tmp3(N);
  auto apply_b = [&](const cvec& g, cvec& acc, double weight) {
    d1_into(grid, g, tmp);
    d2_into(grid, g, tmp2);
    for (std::size_t i = 1; i + 1 < N; ++i)
      acc[i] += weight * nu *
                ((r3[i] - 2.0 * r2[i] * r2[i]) * tmp[i] + 2.0 * r2[i] * tmp2[i]);
  };
  auto apply_aw = [&](const cvec& v, cvec& acc, double weight) {
    apply_evol_laplacian_into(grid, v, tmp2);  // boundary rows already zero
    for (std::size_t i = 0; i < N; ++i) tmp[i] = r2[i] * v[i];
    d1_into(grid, tmp, tmp3);
    for (std::size_t i = 1; i + 1 < N; ++i)
      acc[i] += weight * nu * (tmp2[i] + r3[i] * v[i] - 2.0 * tmp3[i]);
  };

  ModeState s = s0;
  for (std::size_t m = 1; m <= n; ++m) {
    const cvec g_old = s.g;
    st.step(s);
    s.t = s0.t + static_cast<double>(m) * cfg.dt;

    for (std::size_t i = 0; i < N; ++i) {
      gmid[i] = ph[i] * g_old[i];
      gtil[i] = std::conj(ph[i]) * s.g[i] / full_factor;
      w[i] *= ph[i];
    }
    std::fill(bsum.begin(), bsum.end(), cplx(0.0));
    apply_b(gmid, bsum, 1.0);
    apply_b(gtil, bsum, 1.0);
    rhs = w;
    apply_aw(w, rhs, half_dt);
    for (std::size_t i = 1; i + 1 < N; ++i) rhs[i] += half_dt * bsum[i];
    awlu.solve(rhs);
    for (std::size_t i = 0; i < N; ++i) {
      w[i] = full_factor * rhs[i] * ph[i];
      if (!std::isfinite(std::norm(w[i]))) {
        std::ostringstream os;
        os << "evolve_J_direct: non-finite twisted field at t = " << s.t;
        throw NonFinite(os.str());
      }
    }
  }

  out.state = std::move(s);
  out.w = std::move(w);
  return out;
}

}  // namespace hypomix
