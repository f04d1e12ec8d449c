#include "hypomix/couette.hpp"

#include <cmath>
#include <sstream>

#include "hypomix/errors.hpp"

namespace hypomix {

namespace {

constexpr double kTwoPi = 6.283185307179586476925286766559;
constexpr double kSupportCut = 1e-13;  ///< relative floor defining "active"

// Exact diffusion exponent: int_0^t |eta + k(t - tau)|^2 dtau written in the
// cancellation-free factored form with a = eta + k t, b = eta.
double diffusion_exponent(double a, double b, double t, int k, Model model) {
  double e = t * (a * a + a * b + b * b) / 3.0;
  if (model == Model::full_laplacian)
    e += static_cast<double>(k) * static_cast<double>(k) * t;
  return e;
}

void find_support(const std::vector<double>& eta, const cvec& vals,
                  double& lo, double& hi) {
  double peak = 0.0;
  for (const cplx& v : vals) peak = std::max(peak, std::abs(v));
  if (peak == 0.0)
    throw ConfigError("CouetteSpectrum: initial spectrum is identically zero");
  lo = eta.back();
  hi = eta.front();
  for (std::size_t i = 0; i < vals.size(); ++i) {
    if (std::abs(vals[i]) > kSupportCut * peak) {
      lo = std::min(lo, eta[i]);
      hi = std::max(hi, eta[i]);
    }
  }
}

void check_plancherel(const CouetteSpectrum& sp, double exact_mass,
                      const char* who) {
  const double deta = sp.eta[1] - sp.eta[0];
  double q = 0.5 * (std::norm(sp.g0hat.front()) + std::norm(sp.g0hat.back()));
  for (std::size_t i = 1; i + 1 < sp.g0hat.size(); ++i)
    q += std::norm(sp.g0hat[i]);
  q *= deta;
  if (std::abs(q - exact_mass) > 1e-8 * exact_mass) {
    std::ostringstream os;
    os << who << ": frequency window loses mass (discrete Plancherel "
       << q << " vs exact " << exact_mass
       << "); widen or refine the eta grid";
    throw ConfigError(os.str());
  }
}

std::vector<double> uniform_window(double eta_max, std::size_t n) {
  if (!(eta_max > 0.0)) throw ConfigError("CouetteSpectrum: eta_max must be > 0");
  if (n < 128) throw ConfigError("CouetteSpectrum: need at least 128 eta points");
  std::vector<double> eta(n);
  const double deta = 2.0 * eta_max / static_cast<double>(n - 1);
  for (std::size_t i = 0; i < n; ++i)
    eta[i] = -eta_max + deta * static_cast<double>(i);
  return eta;
}

void require_window_contains(const CouetteSpectrum& sp, double kt) {
  const double lo = sp.zeta_lo - kt, hi = sp.zeta_hi - kt;
  if (lo < sp.eta.front() || hi > sp.eta.back()) {
    std::ostringstream os;
    os << "couette oracle: shifted spectral support [" << lo << ", " << hi
       << "] leaves the stored window [" << sp.eta.front() << ", "
       << sp.eta.back() << "] (k t = " << kt << ")";
    throw AliasRisk(os.str());
  }
}

}  // namespace

CouetteSpectrum CouetteSpectrum::make(int k, Model model,
                                      const InitialData& init, double eta_max,
                                      std::size_t n) {
  if (k < 1) throw ConfigError("CouetteSpectrum: k must be >= 1");
  CouetteSpectrum sp;
  sp.k = k;
  sp.model = model;
  sp.eta = uniform_window(eta_max, n);
  sp.g0hat_fn = [init](double e) { return init.spectrum(e); };
  sp.g0hat.resize(n);
  for (std::size_t i = 0; i < n; ++i) sp.g0hat[i] = sp.g0hat_fn(sp.eta[i]);

  // Exact L2 mass of the closed-form data (Plancherel reference).
  const double amp2 = std::norm(init.amplitude);
  const double s = init.width;
  const double sqrt_pi = std::sqrt(3.14159265358979323846);
  double mass = 0.0;
  switch (init.kind) {
    case InitialData::Kind::gaussian_bump:
      mass = amp2 * s * sqrt_pi;
      break;
    case InitialData::Kind::hermite_bump:
      mass = amp2 * s * sqrt_pi / 2.0;
      break;
  }
  check_plancherel(sp, mass, "CouetteSpectrum::make");
  find_support(sp.eta, sp.g0hat, sp.zeta_lo, sp.zeta_hi);
  return sp;
}

CouetteSpectrum CouetteSpectrum::from_grid(const ModeState& s, double eta_max,
                                           std::size_t n) {
  if (s.k < 1) throw ConfigError("CouetteSpectrum: k must be >= 1");
  CouetteSpectrum sp;
  sp.k = s.k;
  sp.model = s.model;
  sp.eta = uniform_window(eta_max, n);
  // Direct oscillatory quadrature against the stored profile; trapezoid is
  // spectrally accurate here because the data vanishes at the ends.
  const std::shared_ptr<const Grid> grid = s.grid;
  const cvec prof = s.g;
  sp.g0hat_fn = [grid, prof](double e) {
    cplx acc = 0.5 * (prof.front() * std::polar(1.0, -e * grid->y.front()) +
                      prof.back() * std::polar(1.0, -e * grid->y.back()));
    for (std::size_t i = 1; i + 1 < grid->N; ++i)
      acc += prof[i] * std::polar(1.0, -e * grid->y[i]);
    return grid->h * acc / std::sqrt(kTwoPi);
  };
  sp.g0hat.resize(n);
  for (std::size_t i = 0; i < n; ++i) sp.g0hat[i] = sp.g0hat_fn(sp.eta[i]);
  check_plancherel(sp, norm_sq(*s.grid, s.g), "CouetteSpectrum::from_grid");
  find_support(sp.eta, sp.g0hat, sp.zeta_lo, sp.zeta_hi);
  return sp;
}

cvec exact_mode(const CouetteSpectrum& sp, double nu, double t) {
  if (!(t >= 0.0)) throw ConfigError("exact_mode: t must be >= 0");
  if (!(nu >= 0.0)) throw ConfigError("exact_mode: nu must be >= 0");
  const double kt = static_cast<double>(sp.k) * t;
  require_window_contains(sp, kt);
  cvec f(sp.eta.size());
  for (std::size_t i = 0; i < sp.eta.size(); ++i) {
    const double b = sp.eta[i], a = b + kt;
    f[i] = sp.g0hat_fn(a) *
           std::exp(-nu * diffusion_exponent(a, b, t, sp.k, sp.model));
  }
  return f;
}

OracleNorms exact_norms(const CouetteSpectrum& sp, double nu, double t) {
  if (!(t >= 0.0)) throw ConfigError("exact_norms: t must be >= 0");
  if (!(nu >= 0.0)) throw ConfigError("exact_norms: nu must be >= 0");
  // Quadrature in the shifted variable zeta = eta + k t: the integrand is the
  // *stored* initial samples times the damping, so the window never clips the
  // mass, no matter how large k t grows.
  const double kt = static_cast<double>(sp.k) * t;
  const double k2 = static_cast<double>(sp.k) * static_cast<double>(sp.k);
  const double deta = sp.eta[1] - sp.eta[0];
  double m0 = 0.0, mh = 0.0, m1 = 0.0;
  const std::size_t n = sp.eta.size();
  for (std::size_t i = 0; i < n; ++i) {
    const double zeta = sp.eta[i], b = zeta - kt;
    const double damp =
        std::exp(-nu * diffusion_exponent(zeta, b, t, sp.k, sp.model));
    double w = std::norm(sp.g0hat[i]) * damp * damp;
    if (i == 0 || i + 1 == n) w *= 0.5;
    m0 += w;
    mh += w / (k2 + b * b);
    m1 += w * (k2 + b * b);
  }
  OracleNorms out;
  out.l2 = std::sqrt(m0 * deta);
  out.hminus1 = std::sqrt(mh * deta);
  out.h1 = std::sqrt(m1 * deta);
  return out;
}

ModeState to_grid(const CouetteSpectrum& sp, double nu, double t,
                  std::shared_ptr<const Grid> grid) {
  const cvec f = exact_mode(sp, nu, t);  // includes the window check
  const double kt = static_cast<double>(sp.k) * t;
  const double max_active =
      std::max(std::abs(sp.zeta_lo - kt), std::abs(sp.zeta_hi - kt));
  const double nyquist = 3.14159265358979323846 / grid->h;
  if (max_active > nyquist) {
    std::ostringstream os;
    os << "to_grid: active frequency " << max_active
       << " exceeds the grid Nyquist limit " << nyquist;
    throw AliasRisk(os.str());
  }

  const double deta = sp.eta[1] - sp.eta[0];
  const std::size_t n = sp.eta.size();
  ModeState out;
  out.grid = grid;
  out.k = sp.k;
  out.model = sp.model;
  out.t = t;
  out.g.resize(grid->N);
  for (std::size_t j = 0; j < grid->N; ++j) {
    const double y = grid->y[j];
    // Phase recurrence with periodic exact refresh: one complex exp per 256
    // terms instead of per term, drift bounded by ~256 ulp.
    const cplx step = std::polar(1.0, deta * y);
    cplx phase = std::polar(1.0, sp.eta.front() * y);
    cplx acc = 0.5 * f.front() * phase;
    for (std::size_t i = 1; i < n; ++i) {
      if (i % 256 == 0)
        phase = std::polar(1.0, sp.eta[i] * y);
      else
        phase *= step;
      acc += ((i + 1 == n) ? 0.5 : 1.0) * f[i] * phase;
    }
    out.g[j] = acc * deta / std::sqrt(kTwoPi);
  }
  return out;
}

FunctionalRecord oracle_record(const CouetteSpectrum& sp,
                               const CoeffLedger& led, double nu, double t) {
  if (!(t >= 0.0)) throw ConfigError("oracle_record: t must be >= 0");
  const double kt = static_cast<double>(sp.k) * t;
  const double dk = static_cast<double>(sp.k);
  const double k2 = dk * dk;
  const double deta = sp.eta[1] - sp.eta[0];
  const std::size_t n = sp.eta.size();
  // Moments in the shifted variable: b = eta (lab frequency), zeta = b + kt.
  double m0 = 0, mb1 = 0, mb2 = 0, mz2 = 0, mz2b1 = 0, mz2b2 = 0, mh = 0;
  for (std::size_t i = 0; i < n; ++i) {
    const double zeta = sp.eta[i], b = zeta - kt;
    const double damp =
        std::exp(-nu * diffusion_exponent(zeta, b, t, sp.k, sp.model));
    double w = std::norm(sp.g0hat[i]) * damp * damp;
    if (i == 0 || i + 1 == n) w *= 0.5;
    const double z2 = zeta * zeta;
    m0 += w;
    mb1 += w * b;
    mb2 += w * b * b;
    mz2 += w * z2;
    mz2b1 += w * z2 * b;
    mz2b2 += w * z2 * b * b;
    mh += w / (k2 + b * b);
  }
  m0 *= deta;
  mb1 *= deta;
  mb2 *= deta;
  mz2 *= deta;
  mz2b1 *= deta;
  mz2b2 *= deta;
  mh *= deta;

  const double a = alpha(led, nu, sp.k);
  const double bb = beta(led, nu, sp.k);
  const double c = gamma_coeff(led, sp.k);

  FunctionalRecord r;
  r.t = t;
  r.l2 = std::sqrt(m0);
  r.weighted = std::sqrt(2.0 * m0);  // u' = 1
  r.hminus1 = std::sqrt(mh);
  r.h1 = std::sqrt(k2 * m0 + mb2);
  r.j_l2 = std::sqrt(mz2);  // (J g)^ = i (eta + k t) fhat
  r.j_weighted = std::sqrt(2.0 * mz2);
  r.phi = 0.5 * (m0 + a * mb2 + 2.0 * bb * dk * mb1 + c * k2 * m0);
  r.jj = 0.5 * (mz2 + a * mz2b2 + 2.0 * bb * dk * mz2b1 + c * k2 * mz2);
  r.lyap = r.phi + led.delta0 * r.jj;
  r.batchelor = (r.l2 > 0.0) ? r.hminus1 / r.l2 : 0.0;
  // The closed form satisfies the balance identities exactly.
  r.res_energy = r.res_gamma = r.res_energy_j = r.res_gamma_j = 0.0;
  return r;
}

std::vector<FunctionalRecord> oracle_records(const CouetteSpectrum& sp,
                                             const CoeffLedger& led, double nu,
                                             const std::vector<double>& times) {
  std::vector<FunctionalRecord> out;
  out.reserve(times.size());
  for (double t : times) out.push_back(oracle_record(sp, led, nu, t));
  return out;
}

}  // namespace hypomix
