#include "hypomix/functionals.hpp"

#include <cmath>

#include "hypomix/errors.hpp"

namespace hypomix {

// ============================================================================
// free quadratic forms
// ============================================================================

cvec apply_J(const ModeState& s, const ShearOnGrid& shear) {
  const Grid& grid = *s.grid;
  cvec out = d1(grid, s.g);
  const double kt = static_cast<double>(s.k) * s.t;
  for (std::size_t i = 0; i < grid.N; ++i)
    out[i] += cplx(0.0, kt * shear.u1[i]) * s.g[i];
  return out;
}

double cross_term(const Grid& grid, const ShearOnGrid& shear, int k,
                  const cvec& g) {
  const cvec dg = d1(grid, g);
  return static_cast<double>(k) * inner_weighted(grid, g, shear.u1, dg).imag();
}

namespace {

// X evaluated with a precomputed derivative.
double cross_term_d(const Grid& grid, const std::vector<double>& u1, int k,
                    const cvec& g, const cvec& dg) {
  return static_cast<double>(k) * inner_weighted(grid, g, u1, dg).imag();
}

double phi_from_parts(double nsq, double dnsq, double x, double wnsq, double a,
                      double b, double c, int k) {
  const double k2 = static_cast<double>(k) * static_cast<double>(k);
  return 0.5 * (nsq + a * dnsq + 2.0 * b * x + c * k2 * wnsq);
}

}  // namespace

double phi_functional(const Grid& grid, const ShearOnGrid& shear,
                      const CoeffLedger& led, double nu, int k, const cvec& g) {
  const cvec dg = d1(grid, g);
  std::vector<double> wsq(grid.N);
  for (std::size_t i = 0; i < grid.N; ++i) wsq[i] = shear.u1[i] * shear.u1[i];
  return phi_from_parts(norm_sq(grid, g), norm_sq(grid, dg),
                        cross_term_d(grid, shear.u1, k, g, dg),
                        norm_sq_weighted(grid, wsq, g), alpha(led, nu, k),
                        beta(led, nu, k), gamma_coeff(led, k), k);
}

CoercivityBounds phi_envelope(const Grid& grid, const ShearOnGrid& shear,
                              const CoeffLedger& led, double nu, int k,
                              const cvec& g) {
  const cvec dg = d1(grid, g);
  std::vector<double> wsq(grid.N);
  for (std::size_t i = 0; i < grid.N; ++i) wsq[i] = shear.u1[i] * shear.u1[i];
  const double k2 = static_cast<double>(k) * static_cast<double>(k);
  const double nsq = norm_sq(grid, g);
  const double dnsq = norm_sq(grid, dg);
  const double wnsq = norm_sq_weighted(grid, wsq, g);
  const double a = alpha(led, nu, k), c = gamma_coeff(led, k);
  CoercivityBounds b;
  b.lower = 0.25 * (2.0 * nsq + a * dnsq + c * k2 * wnsq);
  b.upper = 0.25 * (2.0 * nsq + 3.0 * a * dnsq + 3.0 * c * k2 * wnsq);
  return b;
}

// ============================================================================
// Diagnostics
// ============================================================================

Diagnostics::Diagnostics(std::shared_ptr<const Grid> grid, ShearOnGrid shear,
                         CoeffLedger led, int k, double nu, Model model)
    : grid_(std::move(grid)),
      shear_(std::move(shear)),
      led_(led),
      k_(k),
      nu_(nu),
      model_(model),
      hm1_(grid_, k) {
  if (!(nu >= 0.0)) throw ConfigError("Diagnostics: nu must be >= 0");
  const std::size_t n = grid_->N;
  if (shear_.u1.size() != n)
    throw MismatchedGrids("Diagnostics: shear samples do not match grid");
  wsq_.resize(n);
  w3_.resize(n);
  wJ_.resize(n);
  w12_.resize(n);
  for (std::size_t i = 0; i < n; ++i) {
    const double u1 = shear_.u1[i], u2 = shear_.u2[i], u3 = shear_.u3[i];
    wsq_[i] = u1 * u1;
    w3_[i] = u2 * u2 + u1 * u3;
    wJ_[i] = 4.0 * u2 * u2 + u1 * u3;
    w12_[i] = u1 * u2;
  }
  dg_.resize(n);
  d2g_.resize(n);
  jg_.resize(n);
  djg_.resize(n);
  gdot_.resize(n);
  jdot_.resize(n);
  scratch_.resize(n);
}

FunctionalRecord Diagnostics::record(const ModeState& s) const {
  if (s.grid.get() != grid_.get())
    throw MismatchedGrids("Diagnostics::record: state built on another grid");
  if (s.k != k_ || s.model != model_)
    throw ConfigError("Diagnostics::record: state (k, model) differs from the "
                      "diagnostics setup");
  const Grid& grid = *grid_;
  const std::size_t n = grid.N;
  const double dk = static_cast<double>(k_);
  const double k2 = dk * dk;
  const double kt = dk * s.t;
  const cvec& g = s.g;

  FunctionalRecord r;
  r.t = s.t;

  // ---- plain norms ----
  const double nsq = norm_sq(grid, g);
  const double wnsq = norm_sq_weighted(grid, wsq_, g);
  r.l2 = std::sqrt(nsq);
  r.weighted = std::sqrt(nsq + wnsq);
  r.hminus1 = std::sqrt(hm1_.norm_sq(g));
  d1_into(grid, g, dg_);
  const double dnsq = norm_sq(grid, dg_);
  r.h1 = std::sqrt(k2 * nsq + dnsq);

  // ---- twisted field ----
  for (std::size_t i = 0; i < n; ++i)
    jg_[i] = dg_[i] + cplx(0.0, kt * shear_.u1[i]) * g[i];
  const double jnsq = norm_sq(grid, jg_);
  const double jwnsq = norm_sq_weighted(grid, wsq_, jg_);
  r.j_l2 = std::sqrt(jnsq);
  r.j_weighted = std::sqrt(jnsq + jwnsq);
  d1_into(grid, jg_, djg_);

  // ---- functionals ----
  const double a = alpha(led_, nu_, k_);
  const double b = beta(led_, nu_, k_);
  const double c = gamma_coeff(led_, k_);
  const double x = cross_term_d(grid, shear_.u1, k_, g, dg_);
  const double xj = cross_term_d(grid, shear_.u1, k_, jg_, djg_);
  r.phi = phi_from_parts(nsq, dnsq, x, wnsq, a, b, c, k_);
  r.jj = phi_from_parts(jnsq, norm_sq(grid, djg_), xj, jwnsq, a, b, c, k_);
  r.lyap = r.phi + led_.delta0 * r.jj;
  r.batchelor = (r.l2 > 0.0) ? r.hminus1 / r.l2 : 0.0;

  // ---- instantaneous balance residuals ----
  // gdot uses the same discrete diffusion operator the evolver factors, so
  // these residuals measure how far the discrete operators are from the
  // exact integration-by-parts identities, not time-stepping error.
  apply_evol_laplacian_into(grid, g, scratch_);
  const double full = (model_ == Model::full_laplacian) ? 1.0 : 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    gdot_[i] = cplx(0.0, -dk * shear_.u[i]) * g[i] + nu_ * scratch_[i] -
               full * nu_ * k2 * g[i];
  }
  r.res_energy = inner(grid, g, gdot_).real() + nu_ * dnsq +
                 full * nu_ * k2 * nsq;
  r.res_gamma = k2 * inner_weighted(grid, g, wsq_, gdot_).real() +
                nu_ * k2 * norm_sq_weighted(grid, wsq_, dg_) -
                nu_ * k2 * norm_sq_weighted(grid, w3_, g) +
                full * nu_ * k2 * k2 * wnsq;

  // jdot = d1(gdot) + i k u' g + i k t u' gdot  (time derivative of J g).
  d1_into(grid, gdot_, d2g_);
  for (std::size_t i = 0; i < n; ++i) {
    jdot_[i] = d2g_[i] + cplx(0.0, dk * shear_.u1[i]) * g[i] +
               cplx(0.0, kt * shear_.u1[i]) * gdot_[i];
  }
  // The lower-order couplings use (Jg - d1 g) = i k t u' g exactly, so no
  // division by u' ever happens.
  const double e0 =
      kt * (inner_weighted(grid, g, shear_.u3, jg_).imag() +
            2.0 * inner_weighted(grid, g, shear_.u2, djg_).imag());
  r.res_energy_j = inner(grid, jg_, jdot_).real() + nu_ * norm_sq(grid, djg_) -
                   nu_ * e0 + full * nu_ * k2 * jnsq;
  const double e3 =
      k2 * (norm_sq_weighted(grid, wJ_, jg_) -
            inner_weighted(grid, dg_, wJ_, jg_).real() -
            2.0 * inner_weighted(grid, dg_, w12_, djg_).real());
  r.res_gamma_j = k2 * inner_weighted(grid, jg_, wsq_, jdot_).real() +
                  nu_ * k2 * norm_sq_weighted(grid, wsq_, djg_) - nu_ * e3 +
                  full * nu_ * k2 * k2 * jwnsq;
  return r;
}

double Diagnostics::lemma_gap(const FunctionalRecord& r) const {
  const double u2 = led_.frakU * led_.frakU;
  return 2.0 * u2 * (r.l2 + r.j_l2) -
         static_cast<double>(k_) * r.t * r.hminus1;
}

}  // namespace hypomix
