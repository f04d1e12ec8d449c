/// @file shear.hpp
/// @brief Catalog of strictly monotone shear profiles u(y) and the dense-sampling
///        certificate for the monotonicity/derivative-ratio hypothesis.
///
/// A profile carries u and its first three derivatives in closed form (u itself
/// may involve one numerical antiderivative, e.g. the Fresnel-type oscillatory
/// profile). The certificate scans [-L, L] and reports
///
///   frakU = max(1, sup 1/u', sup |u''|/u', sup |u'''|/u')
///
/// over the sample set; `satisfied` means u' > 0 at every sample. The constant
/// is clamped below by one because every inequality downstream consumes it in
/// the form U >= 1.
#pragma once

#include <cstddef>
#include <functional>
#include <map>
#include <string>
#include <vector>

namespace hypomix {

struct ShearProfile {
  std::string name;
  std::map<std::string, double> params;
  std::function<double(double)> u;   ///< u(y)
  std::function<double(double)> u1;  ///< u'(y)
  std::function<double(double)> u2;  ///< u''(y)
  std::function<double(double)> u3;  ///< u'''(y)
};

struct HypothesisCertificate {
  std::string profile;
  double L = 0.0;             ///< certified on [-L, L]
  bool satisfied = false;     ///< u' > 0 at every sample
  double frakU = 0.0;         ///< hypothesis constant (>= 1 when satisfied)
  double min_u1 = 0.0;        ///< smallest sampled u'
  double max_u1 = 0.0;        ///< largest sampled u'
  double max_ratio2 = 0.0;    ///< sup |u''|/u'
  double max_ratio3 = 0.0;    ///< sup |u'''|/u'
  std::size_t samples = 0;
};

// ---- catalog -------------------------------------------------------------

ShearProfile couette();                           ///< u = y
ShearProfile sine_perturbed(double amplitude = 0.5);  ///< u = y + a*sin(y), |a| < 1
ShearProfile exponential();                       ///< u = y + e^y
ShearProfile polynomial(int n = 3);               ///< u = y + y^n, odd n >= 3
ShearProfile oscillatory();                       ///< u = y + (1/2) \int_0^y sin(z^2) dz

std::vector<std::string> catalog_names();

/// Look up a catalog profile by name, applying optional parameters
/// ("amplitude" for sine_perturbed, "n" for polynomial). Throws ConfigError for
/// unknown names and NonMonotone for parameters that break strict monotonicity.
ShearProfile find_profile(const std::string& name,
                          const std::map<std::string, double>& params = {});

/// Dense-sampling certificate on [-L, L]; default density 1e4 samples per unit
/// length. Does not throw on violation: `satisfied` is false and frakU is +inf.
HypothesisCertificate certify_hypothesis(const ShearProfile& p, double L,
                                         double samples_per_unit = 1e4);

/// Adaptive-Simpson antiderivative helper \int_0^y f(z) dz (absolute tolerance
/// `tol`). Exposed for tests; the oscillatory profile uses it internally.
double antiderivative(const std::function<double(double)>& f, double y,
                      double tol = 1e-10);

}  // namespace hypomix
