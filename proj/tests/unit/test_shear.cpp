/// @file test_shear.cpp
/// @brief Shear catalog: closed-form values, derivative consistency against
///        finite differences, the numerical antiderivative, and the
///        monotonicity certificate.

#include <cmath>
#include <functional>
#include <limits>

#include <doctest.h>

#include "hypomix/errors.hpp"
#include "hypomix/shear.hpp"

using namespace hypomix;

namespace {

// Fourth-order central difference, h chosen so that both the h^4 truncation
// and the cancellation noise stay below 1e-7 for every catalog profile on
// [-5, 5] (the oscillatory profile's fifth derivatives reach ~5e5 there).
double fd4(const std::function<double(double)>& f, double y, double h = 2e-3) {
  return (-f(y + 2 * h) + 8 * f(y + h) - 8 * f(y - h) + f(y - 2 * h)) /
         (12 * h);
}

}  // namespace

TEST_SUITE("shear") {
  TEST_CASE("catalog names resolve through find_profile") {
    auto names = catalog_names();
    CHECK(names.size() == 5);
    for (const auto& n : names) {
      auto p = find_profile(n);
      CHECK(p.name == n);
      CHECK(std::isfinite(p.u(0.3)));
    }
    CHECK_THROWS_AS(find_profile("plane_poiseuille"), ConfigError);
  }

  TEST_CASE("closed-form point values") {
    auto lin = couette();
    CHECK(lin.u(1.0) == 1.0);
    CHECK(lin.u1(1.0) == 1.0);
    CHECK(lin.u2(1.0) == 0.0);
    CHECK(lin.u3(1.0) == 0.0);

    auto poly = polynomial(3);
    CHECK(poly.u(2.0) == doctest::Approx(10.0));   // 2 + 2^3
    CHECK(poly.u1(2.0) == doctest::Approx(13.0));  // 1 + 3*4
    CHECK(poly.u2(2.0) == doctest::Approx(12.0));
    CHECK(poly.u3(2.0) == doctest::Approx(6.0));

    auto expo = exponential();
    CHECK(expo.u(0.0) == doctest::Approx(1.0));
    CHECK(expo.u1(0.0) == doctest::Approx(2.0));
    CHECK(expo.u2(0.0) == doctest::Approx(1.0));

    auto sine = sine_perturbed(0.5);
    for (double y : {-4.0, -1.0, 0.0, 2.5, 7.0}) {
      CHECK(sine.u(y) == doctest::Approx(y + 0.5 * std::sin(y)));
      CHECK(sine.u1(y) >= 0.5);
      CHECK(sine.u1(y) <= 1.5);
    }

    auto osc = oscillatory();
    CHECK(osc.u1(2.0) == doctest::Approx(1.0 + 0.5 * std::sin(4.0)));
    CHECK(osc.u2(2.0) == doctest::Approx(2.0 * std::cos(4.0)));
  }

  TEST_CASE("parameterized lookups and monotonicity rejection") {
    auto s = find_profile("sine_perturbed", {{"amplitude", 0.9}});
    CHECK(s.params.at("amplitude") == 0.9);
    CHECK(s.u1(M_PI) == doctest::Approx(0.1));

    auto p5 = find_profile("polynomial", {{"n", 5.0}});
    CHECK(p5.u(1.0) == doctest::Approx(2.0));
    CHECK(p5.u1(1.0) == doctest::Approx(6.0));

    CHECK_THROWS_AS(sine_perturbed(1.0), NonMonotone);
    CHECK_THROWS_AS(sine_perturbed(-1.3), NonMonotone);
    CHECK_THROWS_AS(polynomial(2), NonMonotone);
    CHECK_THROWS_AS(polynomial(1), NonMonotone);
    CHECK_THROWS_AS(find_profile("polynomial", {{"n", 4.0}}), NonMonotone);
  }

  TEST_CASE("analytic derivatives agree with finite differences on [-5, 5]") {
    for (const auto& name : catalog_names()) {
      CAPTURE(name);
      auto p = find_profile(name);
      for (int i = 0; i <= 100; ++i) {
        double y = -5.0 + 0.1 * i;
        CAPTURE(y);
        double e1 = std::abs(fd4(p.u, y) - p.u1(y)) /
                    std::max(1.0, std::abs(p.u1(y)));
        double e2 = std::abs(fd4(p.u1, y) - p.u2(y)) /
                    std::max(1.0, std::abs(p.u2(y)));
        double e3 = std::abs(fd4(p.u2, y) - p.u3(y)) /
                    std::max(1.0, std::abs(p.u3(y)));
        CHECK(e1 < 1e-6);
        CHECK(e2 < 1e-6);
        CHECK(e3 < 1e-6);
      }
    }
  }

  TEST_CASE("antiderivative matches independent quadratures") {
    // integral_0^2 exp(-z^2) dz has the closed form sqrt(pi)/2 * erf(2)
    auto gauss = [](double z) { return std::exp(-z * z); };
    double want = std::sqrt(M_PI) / 2.0 * std::erf(2.0);
    CHECK(antiderivative(gauss, 2.0) == doctest::Approx(want).epsilon(1e-10));

    // integral_0^1 sin(z^2) dz against composite Simpson at 1e6 intervals
    auto fres = [](double z) { return std::sin(z * z); };
    const int n = 1000000;
    const double dz = 1.0 / n;
    double simpson = fres(0.0) + fres(1.0);
    for (int i = 1; i < n; ++i)
      simpson += (i % 2 ? 4.0 : 2.0) * fres(i * dz);
    simpson *= dz / 3.0;
    CHECK(antiderivative(fres, 1.0) ==
          doctest::Approx(simpson).epsilon(1e-10));

    // odd integrand: antiderivative is even around 0 in the integral sense
    CHECK(antiderivative(fres, -1.0) ==
          doctest::Approx(-antiderivative(fres, 1.0)).epsilon(1e-12));
    CHECK(antiderivative(fres, 0.0) == 0.0);
  }

  TEST_CASE("certificate: couette is the identity case") {
    auto cert = certify_hypothesis(couette(), 10.0);
    CHECK(cert.satisfied);
    CHECK(cert.frakU == 1.0);
    CHECK(cert.min_u1 == 1.0);
    CHECK(cert.max_u1 == 1.0);
    CHECK(cert.max_ratio2 == 0.0);
    CHECK(cert.max_ratio3 == 0.0);
    CHECK(cert.profile == "couette");
    CHECK(cert.L == 10.0);
  }

  TEST_CASE("certificate: sine-perturbed extremal ratios") {
    auto cert = certify_hypothesis(sine_perturbed(0.5), 10.0);
    CHECK(cert.satisfied);
    // sup 1/u' = 1/(1 - 1/2) = 2 dominates both derivative ratios
    CHECK(cert.frakU == doctest::Approx(2.0).epsilon(1e-6));
    CHECK(cert.min_u1 == doctest::Approx(0.5).epsilon(1e-6));
    CHECK(cert.max_u1 == doctest::Approx(1.5).epsilon(1e-6));
    // sup |u''|/u' = sup (s/2)/(1 + c/2) over the circle = 1/sqrt(3)
    CHECK(cert.max_ratio2 ==
          doctest::Approx(1.0 / std::sqrt(3.0)).epsilon(1e-4));
    // sup |u'''|/u' = (1/2)/(1/2) = 1 at cos(y) = -1
    CHECK(cert.max_ratio3 == doctest::Approx(1.0).epsilon(1e-4));
  }

  TEST_CASE("certificate: polynomial and exponential constants") {
    auto pc = certify_hypothesis(polynomial(3), 10.0);
    CHECK(pc.satisfied);
    // |u'''|/u' = 6/(1+3y^2) peaks at y = 0
    CHECK(pc.frakU == doctest::Approx(6.0).epsilon(1e-8));
    CHECK(pc.max_ratio2 == doctest::Approx(std::sqrt(3.0)).epsilon(1e-6));

    auto ec = certify_hypothesis(exponential(), 8.0);
    CHECK(ec.satisfied);
    // every ratio stays below 1, so the certificate clamps at 1
    CHECK(ec.frakU == 1.0);
    CHECK(ec.min_u1 == doctest::Approx(1.0 + std::exp(-8.0)));
  }

  TEST_CASE("certificate: oscillatory constant grows with the domain") {
    auto c5 = certify_hypothesis(oscillatory(), 5.0);
    auto c12 = certify_hypothesis(oscillatory(), 12.0);
    CHECK(c5.satisfied);
    CHECK(c12.satisfied);
    CHECK(c12.frakU > c5.frakU);
    CHECK(c12.frakU > 100.0);
    CHECK(c12.frakU < 1000.0);
    CHECK(c12.min_u1 == doctest::Approx(0.5).epsilon(1e-4));
  }

  TEST_CASE("certificate: non-monotone profile reports instead of throwing") {
    ShearProfile bad;
    bad.name = "test_sin";
    bad.u = [](double y) { return std::sin(y); };
    bad.u1 = [](double y) { return std::cos(y); };
    bad.u2 = [](double y) { return -std::sin(y); };
    bad.u3 = [](double y) { return -std::cos(y); };
    auto cert = certify_hypothesis(bad, 6.0);
    CHECK_FALSE(cert.satisfied);
    CHECK(std::isinf(cert.frakU));
    CHECK(cert.min_u1 < 0.0);
  }

  TEST_CASE("certificate: argument validation") {
    CHECK_THROWS_AS(certify_hypothesis(couette(), -2.0), ConfigError);
    CHECK_THROWS_AS(certify_hypothesis(couette(), 5.0, 0.1), ConfigError);
  }
}
