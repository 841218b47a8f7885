#include <cmath>
#include <numbers>

#include "doctest.h"
#include "skewwalk/transforms.hpp"
#include "test_support.hpp"

using namespace skewwalk;

namespace {
const double kPi = std::numbers::pi;
LatticeStableLaw default_law() { return LatticeStableLaw(1.5, 0.3); }
}  // namespace

TEST_CASE("u_s at s=0 is the point mass indicator") {
  const auto law = default_law();
  CHECK(u_s(law, 0, 0.0).value == 1.0);
  CHECK(u_s(law, 3, 0.0).value == 0.0);
}

TEST_CASE("u_s closed forms for the +-1 walk") {
  const TwoPointLaw walk;
  for (double s : {0.1, 0.3, 0.6, 0.9, 0.97}) {
    const double expect = 1.0 / std::sqrt(1.0 - s * s);
    CHECK(u_s(walk, 0, s).value == doctest::Approx(expect).epsilon(1e-10));
    const double gf = (1.0 - std::sqrt(1.0 - s * s)) / s;
    CHECK(hit_gf(walk, 1, s) == doctest::Approx(gf).epsilon(1e-10));
  }
  CHECK(hit_gf(walk, 1, 0.6) == doctest::Approx(1.0 / 3.0).epsilon(1e-9));
  CHECK(u_s(walk, 0, 0.6).value == doctest::Approx(1.25).epsilon(1e-10));
}

TEST_CASE("u_s against high-precision quadrature references") {
  const auto law = default_law();
  CHECK(u_s(law, 0, 0.9).value == doctest::Approx(1.956579416149915).epsilon(1e-9));
  CHECK(u_s(law, 3, 0.9).value == doctest::Approx(0.4622157259343053).epsilon(1e-9));
  CHECK(u_s(law, 1, 0.6).value == doctest::Approx(0.3002788016670297).epsilon(1e-9));
  CHECK(u_s(law, 0, 0.5).value == doctest::Approx(1.187167568456058).epsilon(1e-9));
  CHECK(u_s(law, 5, 0.99).value == doctest::Approx(1.945307853922875).epsilon(1e-8));
  CHECK(hit_gf(law, 2, 0.8) == doctest::Approx(0.211946794152036).epsilon(1e-9));
  CHECK(hit_gf(law, 1, 0.9) == doctest::Approx(0.4959178463842273).epsilon(1e-9));
}

TEST_CASE("u_s integral agrees with the convolution-series oracle") {
  const auto law = default_law();
  // spot checks here; the acceptance suite runs the full 20-point grid
  for (double s : {0.6, 0.9}) {
    for (long long x : {0LL, 3LL}) {
      const double oracle = testsupport::u_s_series_oracle(law, x, s);
      CHECK(u_s(law, x, s).value == doctest::Approx(oracle).epsilon(5e-8).scale(1.0));
    }
  }
  // the oracle itself is exact for the +-1 walk up to its k-truncation bound
  const TwoPointLaw walk;
  CHECK(testsupport::u_s_series_oracle(walk, 0, 0.6, 1e-13) ==
        doctest::Approx(1.25).epsilon(1e-11));
}

TEST_CASE("u_s bounds and symmetry") {
  const auto law = default_law();
  for (double s : {0.3, 0.8, 0.95}) {
    const double at0 = u_s(law, 0, s).value;
    CHECK(at0 >= 1.0);
    for (long long x : {1LL, 2LL, 5LL, 17LL}) {
      const double ux = u_s(law, x, s).value;
      CHECK(ux <= at0);
      CHECK(ux == doctest::Approx(u_s(law, -x, s).value).epsilon(1e-12));
    }
  }
}

TEST_CASE("hit_gf: boundary, bounds, monotonicity in s") {
  const auto law = default_law();
  CHECK(hit_gf(law, 0, 0.4) == 1.0);
  double prev = 0.0;
  for (double s : {0.1, 0.3, 0.5, 0.7, 0.9, 0.97}) {
    const double g = hit_gf(law, 2, s);
    CHECK(g > 0.0);
    CHECK(g <= 1.0);
    CHECK(g > prev);
    prev = g;
  }
  CHECK_THROWS(hit_gf(law, 1, 1.0));
  CHECK_THROWS(hit_gf(law, 1, -0.1));
}

TEST_CASE("poisson_hit_laplace: scaling invariance and consistency") {
  const auto law = default_law();
  CHECK(poisson_hit_laplace(law, 0, 1.0, 1.0) == 1.0);
  const double base = poisson_hit_laplace(law, 1, 1.0, 1.0);
  CHECK(poisson_hit_laplace(law, 1, 2.0, 2.0) == doctest::Approx(base).epsilon(1e-12));
  CHECK(base == doctest::Approx(hit_gf(law, 1, 0.5)).epsilon(1e-12));
  // nonincreasing in lambda
  double prev = 1.0;
  for (double lam : {0.1, 0.5, 1.0, 2.0, 8.0}) {
    const double val = poisson_hit_laplace(law, 1, lam, 1.0);
    CHECK(val < prev);
    prev = val;
  }
  // resolvent kernel factor
  CHECK(poisson_resolvent_kernel(law, 0, 1.0, 1.0) ==
        doctest::Approx(u_s(law, 0, 0.5).value / 2.0).epsilon(1e-12));
}

TEST_CASE("stable resolvent density: closed form at zero and lambda scaling") {
  const double alpha = 1.5;
  const double v10 = stable_resolvent_density(0.0, 1.0, alpha).value;
  CHECK(v10 == doctest::Approx(1.0 / (alpha * std::sin(kPi / alpha))).epsilon(1e-9));
  for (double lam : {0.5, 2.0}) {
    const double vl0 = stable_resolvent_density(0.0, lam, alpha).value;
    CHECK(vl0 == doctest::Approx(std::pow(lam, 1.0 / alpha - 1.0) * v10).epsilon(1e-8));
  }
  // references from oscillatory quadrature at 25 digits
  CHECK(stable_resolvent_density(0.5, 1.0, alpha).value ==
        doctest::Approx(0.273392782733714).epsilon(1e-8));
  CHECK(stable_resolvent_density(1.0, 1.0, alpha).value ==
        doctest::Approx(0.150955731520195).epsilon(1e-8));
  CHECK(stable_resolvent_density(2.0, 1.0, alpha).value ==
        doctest::Approx(0.0581134573981659).epsilon(1e-8));
  CHECK(stable_resolvent_density(5.0, 1.0, alpha).value ==
        doctest::Approx(0.00778410109742247).epsilon(1e-7));
  // even in x, dominated by the value at zero
  for (double x : {0.3, 1.0, 4.0, 20.0}) {
    const double vp = stable_resolvent_density(x, 1.0, alpha).value;
    CHECK(vp == doctest::Approx(stable_resolvent_density(-x, 1.0, alpha).value).epsilon(1e-12));
    CHECK(vp <= v10);
    CHECK(vp > 0.0);
  }
  CHECK_THROWS(stable_resolvent_density(1.0, -1.0, alpha));
  CHECK_THROWS(stable_resolvent_density(1.0, 1.0, 2.5));
}

TEST_CASE("stable hit laplace: boundary, decay, monotonicity") {
  CHECK(stable_hit_laplace(0.0, 1.0, 1.5) == 1.0);
  CHECK(stable_hit_laplace(1000.0, 1.0, 1.5) < 0.05);
  double prev = 1.0;
  for (double lam : {0.2, 0.7, 1.5, 4.0}) {
    const double val = stable_hit_laplace(1.0, lam, 1.5);
    CHECK(val > 0.0);
    CHECK(val < prev);
    prev = val;
  }
}

TEST_CASE("discrete hit laplace: scaled integral equals poissonized generating function") {
  const auto law = default_law();
  CHECK(discrete_hit_laplace_scaled(law, 0.0, 1.0, 100.0) == 1.0);
  for (double v : {100.0, 1e4}) {
    for (double x : {0.5, 1.0, 3.0}) {
      for (double lam : {0.5, 1.0}) {
        const double a = law.norming_a(v);
        const long long m = static_cast<long long>(std::floor(x * a));
        const double lhs = discrete_hit_laplace_scaled(law, x, lam, v);
        const double rhs = poisson_hit_laplace(law, m, lam / v, 1.0);
        CHECK(lhs == doctest::Approx(rhs).epsilon(1e-7).scale(1.0));
      }
    }
  }
}

TEST_CASE("discrete to stable hit-transform convergence at x=1") {
  const auto law = default_law();
  const double target = stable_hit_laplace(1.0, 1.0, 1.5);
  double prev = 1e300;
  for (double v : {1e2, 1e4, 1e6}) {
    const double gap = std::fabs(discrete_hit_laplace_scaled(law, 1.0, 1.0, v) - target);
    CHECK(gap < prev);
    prev = gap;
  }
  CHECK(prev < 0.01);
}

TEST_CASE("u_s_batch agrees with single-point evaluation") {
  const auto law = default_law();
  for (double s : {0.5, 0.9, 0.999}) {
    double err = 0.0;
    const auto batch = u_s_batch(law, s, 200, &err);
    CHECK(err < 1e-9);
    for (long long m : {0LL, 1LL, 7LL, 63LL, 200LL}) {
      CHECK(batch[static_cast<std::size_t>(m)] ==
            doctest::Approx(u_s(law, m, s).value).epsilon(2e-8).scale(1.0));
    }
  }
}

TEST_CASE("scaled one-minus-psi converges to the stable exponent") {
  const auto law = default_law();
  // relative error at fixed theta at least halves from v=1e4 to v=1e8
  for (double theta : {0.5, 1.0, 2.0, 5.0}) {
    double errs[2];
    int i = 0;
    for (double v : {1e4, 1e8}) {
      const double a = law.norming_a(v);
      const double val = v * law.one_minus_charfn(theta / a);
      errs[i++] = std::fabs(val - std::pow(theta, 1.5)) / std::pow(theta, 1.5);
    }
    CHECK(errs[1] < 0.5 * errs[0]);
    CHECK(errs[1] < 0.01);
  }
}
