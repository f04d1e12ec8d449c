#include "hypomix/shear.hpp"

#include <cmath>
#include <limits>
#include <sstream>

#include "hypomix/errors.hpp"

namespace hypomix {

namespace {

// Recursive adaptive Simpson with the classic 1/15 error estimate.
double adaptive_simpson(const std::function<double(double)>& f, double a,
                        double b, double fa, double fm, double fb, double whole,
                        double tol, int depth) {
  const double m = 0.5 * (a + b);
  const double lm = 0.5 * (a + m), rm = 0.5 * (m + b);
  const double flm = f(lm), frm = f(rm);
  const double left = (m - a) / 6.0 * (fa + 4.0 * flm + fm);
  const double right = (b - m) / 6.0 * (fm + 4.0 * frm + fb);
  const double delta = left + right - whole;
  if (depth <= 0 || std::abs(delta) <= 15.0 * tol)
    return left + right + delta / 15.0;
  return adaptive_simpson(f, a, m, fa, flm, fm, left, 0.5 * tol, depth - 1) +
         adaptive_simpson(f, m, b, fm, frm, fb, right, 0.5 * tol, depth - 1);
}

}  // namespace

double antiderivative(const std::function<double(double)>& f, double y,
                      double tol) {
  if (y == 0.0) return 0.0;
  const double a = 0.0, b = y;
  const double fa = f(a), fb = f(b), fm = f(0.5 * (a + b));
  const double whole = (b - a) / 6.0 * (fa + 4.0 * fm + fb);
  return adaptive_simpson(f, a, b, fa, fm, fb, whole, tol, 48);
}

ShearProfile couette() {
  ShearProfile p;
  p.name = "couette";
  p.u = [](double y) { return y; };
  p.u1 = [](double) { return 1.0; };
  p.u2 = [](double) { return 0.0; };
  p.u3 = [](double) { return 0.0; };
  return p;
}

ShearProfile sine_perturbed(double amplitude) {
  if (std::abs(amplitude) >= 1.0) {
    std::ostringstream os;
    os << "sine_perturbed: |amplitude| = " << std::abs(amplitude)
       << " >= 1 breaks strict monotonicity";
    throw NonMonotone(os.str());
  }
  ShearProfile p;
  p.name = "sine_perturbed";
  p.params["amplitude"] = amplitude;
  const double a = amplitude;
  p.u = [a](double y) { return y + a * std::sin(y); };
  p.u1 = [a](double y) { return 1.0 + a * std::cos(y); };
  p.u2 = [a](double y) { return -a * std::sin(y); };
  p.u3 = [a](double y) { return -a * std::cos(y); };
  return p;
}

ShearProfile exponential() {
  ShearProfile p;
  p.name = "exponential";
  p.u = [](double y) { return y + std::exp(y); };
  p.u1 = [](double y) { return 1.0 + std::exp(y); };
  p.u2 = [](double y) { return std::exp(y); };
  p.u3 = [](double y) { return std::exp(y); };
  return p;
}

ShearProfile polynomial(int n) {
  if (n < 3 || n % 2 == 0) {
    std::ostringstream os;
    os << "polynomial: exponent n = " << n << " must be odd and >= 3";
    throw NonMonotone(os.str());
  }
  ShearProfile p;
  p.name = "polynomial";
  p.params["n"] = static_cast<double>(n);
  const double dn = static_cast<double>(n);
  p.u = [dn](double y) { return y + std::pow(y, dn); };
  p.u1 = [dn](double y) { return 1.0 + dn * std::pow(y, dn - 1.0); };
  p.u2 = [dn](double y) { return dn * (dn - 1.0) * std::pow(y, dn - 2.0); };
  p.u3 = [dn](double y) {
    return dn * (dn - 1.0) * (dn - 2.0) * std::pow(y, dn - 3.0);
  };
  return p;
}

ShearProfile oscillatory() {
  // u' = 1 + sin(y^2)/2 stays in [1/2, 3/2], so u is strictly monotone, but
  // u'' = y cos(y^2) grows linearly: the derivative-ratio bounds degrade with
  // the domain size. Only u itself needs quadrature.
  ShearProfile p;
  p.name = "oscillatory";
  auto fres = [](double z) { return std::sin(z * z); };
  p.u = [fres](double y) { return y + 0.5 * antiderivative(fres, y); };
  p.u1 = [](double y) { return 1.0 + 0.5 * std::sin(y * y); };
  p.u2 = [](double y) { return y * std::cos(y * y); };
  p.u3 = [](double y) {
    return std::cos(y * y) - 2.0 * y * y * std::sin(y * y);
  };
  return p;
}

std::vector<std::string> catalog_names() {
  return {"couette", "sine_perturbed", "exponential", "polynomial",
          "oscillatory"};
}

ShearProfile find_profile(const std::string& name,
                          const std::map<std::string, double>& params) {
  auto get = [&params](const std::string& key, double fallback) {
    auto it = params.find(key);
    return it == params.end() ? fallback : it->second;
  };
  if (name == "couette") return couette();
  if (name == "sine_perturbed") return sine_perturbed(get("amplitude", 0.5));
  if (name == "exponential") return exponential();
  if (name == "polynomial")
    return polynomial(static_cast<int>(std::lround(get("n", 3.0))));
  if (name == "oscillatory") return oscillatory();
  throw ConfigError("unknown shear profile '" + name + "'");
}

HypothesisCertificate certify_hypothesis(const ShearProfile& p, double L,
                                         double samples_per_unit) {
  if (!(L > 0.0)) throw ConfigError("certify_hypothesis: L must be positive");
  if (!(samples_per_unit >= 1.0))
    throw ConfigError("certify_hypothesis: need at least 1 sample per unit");

  HypothesisCertificate cert;
  cert.profile = p.name;
  cert.L = L;

  const auto n = static_cast<std::size_t>(std::ceil(2.0 * L * samples_per_unit));
  const double h = 2.0 * L / static_cast<double>(n);

  bool monotone = true;
  double min_u1 = std::numeric_limits<double>::infinity();
  double max_u1 = -std::numeric_limits<double>::infinity();
  double r2 = 0.0, r3 = 0.0, inv = 0.0;
  for (std::size_t i = 0; i <= n; ++i) {
    const double y = -L + h * static_cast<double>(i);
    const double d1 = p.u1(y);
    min_u1 = std::min(min_u1, d1);
    max_u1 = std::max(max_u1, d1);
    if (!(d1 > 0.0)) {
      monotone = false;
      continue;
    }
    inv = std::max(inv, 1.0 / d1);
    r2 = std::max(r2, std::abs(p.u2(y)) / d1);
    r3 = std::max(r3, std::abs(p.u3(y)) / d1);
  }

  cert.samples = n + 1;
  cert.satisfied = monotone;
  cert.min_u1 = min_u1;
  cert.max_u1 = max_u1;
  cert.max_ratio2 = r2;
  cert.max_ratio3 = r3;
  cert.frakU = monotone ? std::max({1.0, inv, r2, r3})
                        : std::numeric_limits<double>::infinity();
  return cert;
}

}  // namespace hypomix
