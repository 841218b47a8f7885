#include <cmath>
#include <map>
#include <numbers>

#include "doctest.h"
#include "skewwalk/laws.hpp"
#include "skewwalk/special.hpp"
#include "skewwalk/stats.hpp"

using namespace skewwalk;

namespace {

const double kPi = std::numbers::pi;

LatticeStableLaw default_law() { return LatticeStableLaw(1.5, 0.3); }

// Exact tail of the law on the log-linear interpolant between integer nodes,
// mirroring the norming solve's contract.
double interpolated_tail(const LatticeStableLaw& law, double x) {
  const double lo = std::floor(x), hi = lo + 1.0;
  const double tl = law.tail(lo), th = law.tail(hi);
  const double frac = x - lo;
  return std::exp((1.0 - frac) * std::log(tl) + frac * std::log(th));
}

// Linear-scan inverse CDF over the canonical ordering (ascending integers),
// independent of the sampler's table-plus-bisection path.
long long lattice_quantile_scan(const LatticeStableLaw& law, double u) {
  const long long lim = 500000;
  double cum = law.tail(static_cast<double>(lim)) / 2.0;  // P{xi < -lim}
  for (long long k = -lim; k <= lim; ++k) {
    cum += law.pmf(k);
    if (cum > u) return k;
  }
  return lim;
}

// CDF of eta from tails and pmf alone (no sampler internals)
double eta_cdf(const PerturbationLaw& law, long long k) {
  if (k < 0) return law.signed_tail(static_cast<double>(-k) - 1.0, -1);  // P{eta <= k}
  return 1.0 - law.signed_tail(static_cast<double>(k), +1);
}

}  // namespace

TEST_CASE("lattice law is a symmetric probability law") {
  const auto law = default_law();
  double mass = law.pmf(0);
  const long long K = 2000;
  for (long long k = 1; k <= K; ++k) mass += 2.0 * law.pmf(k);
  mass += law.tail(static_cast<double>(K));
  CHECK(mass == doctest::Approx(1.0).epsilon(1e-12));
  for (long long k : {1LL, 7LL, 100LL, 44321LL}) CHECK(law.pmf(k) == law.pmf(-k));
  CHECK_THROWS(LatticeStableLaw(1.5, 0.5));  // pmf would not normalize
  CHECK_THROWS(LatticeStableLaw(2.3, 0.1));
}

TEST_CASE("lattice tail: monotone, exact constant") {
  const auto law = default_law();
  CHECK(law.tail(0.0) == doctest::Approx(1.0 - law.mass_at_zero()).epsilon(1e-15));
  double prev = law.tail(0.0);
  for (int x = 1; x <= 1000; ++x) {
    const double cur = law.tail(static_cast<double>(x));
    CHECK(cur <= prev);
    prev = cur;
  }
  // x^alpha P{|xi|>x} -> 2C/alpha
  const double limit = 2.0 * law.tail_constant() / law.alpha();
  const double at = std::pow(1e4, law.alpha()) * law.tail(1e4);
  CHECK(at == doctest::Approx(limit).epsilon(0.01));
}

TEST_CASE("characteristic function against polylog references") {
  const auto law = default_law();
  CHECK(law.charfn(0.0) == doctest::Approx(1.0).epsilon(1e-15));
  // mpmath: psi(theta) = p0 + 2C Re polylog(2.5, e^{i theta})
  CHECK(law.charfn(0.1) == doctest::Approx(0.972674381428874707).epsilon(1e-13));
  CHECK(law.charfn(0.5) == doctest::Approx(0.754995939370176178).epsilon(1e-13));
  CHECK(law.charfn(1.0) == doctest::Approx(0.434814171597594539).epsilon(1e-13));
  CHECK(law.charfn(2.0) == doctest::Approx(-0.0939424527520377699).epsilon(1e-12));
  CHECK(law.charfn(3.0) == doctest::Approx(-0.321575291547849946).epsilon(1e-12));
  CHECK(law.charfn(-1.0) == law.charfn(1.0));
  CHECK(law.charfn(1.0 + 2.0 * kPi) == doctest::Approx(law.charfn(1.0)).epsilon(1e-12));
}

TEST_CASE("characteristic function matches direct series to 1e-10") {
  const auto law = default_law();
  const double theta = 0.1;
  double direct = law.mass_at_zero();
  for (double k = 1.0; k <= 1e6; k += 1.0)
    direct += 2.0 * law.tail_constant() * std::pow(k, -2.5) * std::cos(k * theta);
  CHECK(law.charfn(theta) == doctest::Approx(direct).epsilon(1e-10));
}

TEST_CASE("psi equals 1 only at multiples of 2 pi") {
  const auto law = default_law();
  for (double eps : {0.3, 0.05, 0.005}) {
    double min_gap = 1e300;
    for (int i = 0; i <= 2000; ++i) {
      const double theta = eps + (kPi - eps) * i / 2000.0;
      min_gap = std::min(min_gap, std::fabs(1.0 - law.charfn(theta)));
    }
    CHECK(min_gap > 0.0);
    CHECK(min_gap >= 0.9 * law.one_minus_charfn(eps));  // attained near the left edge
  }
  CHECK(law.charfn(2.0 * kPi) == doctest::Approx(1.0).epsilon(1e-12));
}

TEST_CASE("one_minus_charfn is the cancellation-free complement") {
  const auto law = default_law();
  for (double theta : {1e-9, 1e-5, 0.01, 0.4, 1.7, 3.0}) {
    const double omc = law.one_minus_charfn(theta);
    CHECK(omc >= 0.0);
    if (theta >= 0.01)
      CHECK(omc == doctest::Approx(1.0 - law.charfn(theta)).epsilon(1e-11));
  }
  // small-theta power behavior: omc ~ const * theta^alpha
  const double r1 = law.one_minus_charfn(1e-6) / std::pow(1e-6, 1.5);
  const double r2 = law.one_minus_charfn(1e-8) / std::pow(1e-8, 1.5);
  CHECK(r1 == doctest::Approx(r2).epsilon(1e-3));
}

TEST_CASE("norming a(v): defining equation, monotonicity, asymptotics") {
  const auto law = default_law();
  const double target = law.norming_target();
  CHECK(target == doctest::Approx(1.0 / stable_norming_constant(1.5)).epsilon(1e-15));
  for (double v : {10.0, 1e2, 1e4, 1e6, 1e8}) {
    const double a = law.norming_a(v);
    CHECK(v * interpolated_tail(law, a) == doctest::Approx(target).epsilon(1e-9));
  }
  double prev = 0.0;
  for (double v = 2.0; v <= 1e9; v *= 2.0) {
    const double a = law.norming_a(v);
    CHECK(a >= prev);
    prev = a;
  }
  // closed-form inversion of the asymptotic tail: a(v) ~ (2 C K v / alpha)^{1/alpha}
  const double K = stable_norming_constant(1.5);
  for (double v : {1e6, 1e8}) {
    const double closed = std::pow(2.0 * law.tail_constant() * K * v / law.alpha(), 1.0 / 1.5);
    CHECK(law.norming_a(v) / closed == doctest::Approx(1.0).epsilon(0.01));
  }
}

TEST_CASE("norming c(v) for heavy eta") {
  const auto eta = PerturbationLaw::one_sided_zeta(0.5);
  for (double v : {10.0, 1e3, 1e4}) {
    const double c = eta.norming_c(v);
    // defining equation on the interpolated tail
    const double lo = std::floor(c), hi = lo + 1.0;
    const double tl = eta.tail(lo), th = eta.tail(hi);
    const double frac = c - lo;
    const double tail_at_c = std::exp((1.0 - frac) * std::log(tl) + frac * std::log(th));
    CHECK(v * tail_at_c == doctest::Approx(1.0).epsilon(1e-9));
  }
  double prev = 0.0;
  for (double v = 2.0; v <= 1e5; v *= 2.0) {
    const double c = eta.norming_c(v);
    CHECK(c >= prev);
    prev = c;
  }
  // pure one-sided beta=1/2 tail: c(v) ~ ((C/beta) v)^2
  const double C = eta.tail_constant();
  const double closed = std::pow(C / 0.5 * 1e4, 2.0);
  CHECK(eta.norming_c(1e4) / closed == doctest::Approx(1.0).epsilon(0.02));
  CHECK_THROWS(PerturbationLaw::geometric(0.5).norming_c(10.0));
  CHECK_THROWS(PerturbationLaw::constant(5).norming_c(10.0));
}

TEST_CASE("lattice sampler matches the scan-based inverse CDF exactly") {
  const auto law = default_law();
  Rng for_sampler(20240817, 0);
  Rng for_oracle(20240817, 0);
  for (int i = 0; i < 20000; ++i) {
    const long long got = law.sample_one(for_sampler);
    const long long want = lattice_quantile_scan(law, for_oracle.uniform());
    REQUIRE(got == want);
  }
}

TEST_CASE("eta sampler is the exact inverse CDF") {
  // defining property of min{k : F(k) > u}, checked with CDF evaluations that
  // share nothing with the sampler's table-plus-bisection path
  const auto eta = PerturbationLaw::two_sided_zeta(0.5, 0.7);
  Rng for_sampler(99, 0);
  Rng for_oracle(99, 0);
  for (int i = 0; i < 20000; ++i) {
    const long long got = eta.sample_one(for_sampler);
    const double u = for_oracle.uniform();
    REQUIRE(eta_cdf(eta, got) > u);
    REQUIRE(eta_cdf(eta, got - 1) <= u);
    REQUIRE(got != 0);
  }
}

TEST_CASE("lattice sampler: symmetry, tails and goodness of fit at 1e6 draws") {
  const auto law = default_law();
  const auto draws = law.sample(4242, 1000000);
  std::vector<double> as_double(draws.begin(), draws.end());
  const double sd = std::sqrt(variance(as_double));
  CHECK(std::fabs(mean(as_double)) <= 4.0 * sd / 1e3);

  std::size_t beyond50 = 0;
  for (long long d : draws)
    if (std::llabs(d) > 50) ++beyond50;
  const double ratio = static_cast<double>(beyond50) / 1e6 / law.tail(50.0);
  CHECK(ratio > 0.9);
  CHECK(ratio < 1.1);

  // chi-square over cells {-5..5} plus the complement; df = 11,
  // critical value at the 1e-4 level ~ 37.4 (Wilson-Hilferty)
  std::map<long long, std::size_t> counts;
  for (long long d : draws) counts[std::max<long long>(-6, std::min<long long>(6, d))]++;
  double chi2 = 0.0;
  double p_rest = 1.0;
  std::size_t n_rest = draws.size();
  for (long long k = -5; k <= 5; ++k) {
    const double expect = law.pmf(k) * 1e6;
    const double got = static_cast<double>(counts.count(k) ? counts[k] : 0);
    chi2 += (got - expect) * (got - expect) / expect;
    p_rest -= law.pmf(k);
    n_rest -= static_cast<std::size_t>(got);
  }
  const double expect_rest = p_rest * 1e6;
  chi2 += (static_cast<double>(n_rest) - expect_rest) * (static_cast<double>(n_rest) - expect_rest) /
          expect_rest;
  CHECK(chi2 < 37.4);
}

TEST_CASE("eta law families") {
  SUBCASE("one-sided zeta") {
    const auto eta = PerturbationLaw::one_sided_zeta(0.5);
    CHECK(eta.pmf(0) == 0.0);
    CHECK(eta.pmf(-3) == 0.0);
    CHECK(eta.c_plus() == 1.0);
    // mass sums to one
    double mass = 0.0;
    for (long long k = 1; k <= 3000; ++k) mass += eta.pmf(k);
    mass += eta.tail(3000.0);
    CHECK(mass == doctest::Approx(1.0).epsilon(1e-12));
    // heavy-tail constant: x^beta P{|eta|>x} -> C/beta
    const double lim = eta.tail_constant() / 0.5;
    CHECK(std::pow(1e6, 0.5) * eta.tail(1e6) == doctest::Approx(lim).epsilon(0.01));
  }
  SUBCASE("two-sided zeta: signed tails converge to c_plus/c_minus") {
    const auto eta = PerturbationLaw::two_sided_zeta(0.3, 0.7);
    for (double x : {10.0, 100.0, 1e4}) {
      CHECK(eta.signed_tail(x, +1) / eta.tail(x) == doctest::Approx(0.7).epsilon(1e-12));
      CHECK(eta.signed_tail(x, -1) / eta.tail(x) == doctest::Approx(0.3).epsilon(1e-12));
    }
    double mass = 0.0;
    for (long long k = 1; k <= 3000; ++k) mass += eta.pmf(k) + eta.pmf(-k);
    mass += eta.tail(3000.0);
    CHECK(mass == doctest::Approx(1.0).epsilon(1e-12));
  }
  SUBCASE("constant") {
    const auto eta = PerturbationLaw::constant(5);
    CHECK(eta.pmf(5) == 1.0);
    CHECK(eta.tail(4.5) == 1.0);
    CHECK(eta.tail(5.0) == 0.0);
    Rng rng(1, 0);
    for (int i = 0; i < 10; ++i) CHECK(eta.sample_one(rng) == 5);
    CHECK_THROWS(PerturbationLaw::constant(0));
  }
  SUBCASE("geometric") {
    const auto eta = PerturbationLaw::geometric(0.25);
    double mass = 0.0;
    for (long long k = 1; k <= 200; ++k) mass += eta.pmf(k);
    CHECK(mass == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(eta.tail(3.0) == doctest::Approx(std::pow(0.75, 3)).epsilon(1e-14));
    const auto draws = eta.sample(777, 200000);
    std::vector<double> d(draws.begin(), draws.end());
    CHECK(mean(d) == doctest::Approx(4.0).epsilon(0.02));
  }
}

TEST_CASE("sampling is deterministic given seed and splits by stream") {
  const auto law = default_law();
  const auto a = law.sample(123, 1000);
  const auto b = law.sample(123, 1000);
  CHECK(a == b);
  const auto c = law.sample(124, 1000);
  CHECK(a != c);
  CHECK(derive_seed(1, 2) != derive_seed(1, 3));
  CHECK(derive_seed(1, 2) != derive_seed(2, 2));
}
