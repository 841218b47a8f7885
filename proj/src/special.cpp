#include "skewwalk/special.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

namespace skewwalk {

namespace {

constexpr double kPi = std::numbers::pi;

// B_2, B_4, ..., B_24
constexpr double kBernoulli[] = {
    1.0 / 6.0,
    -1.0 / 30.0,
    1.0 / 42.0,
    -1.0 / 30.0,
    5.0 / 66.0,
    -691.0 / 2730.0,
    7.0 / 6.0,
    -3617.0 / 510.0,
    43867.0 / 798.0,
    -174611.0 / 330.0,
    854513.0 / 138.0,
    -236364091.0 / 2730.0,
};

// Euler-Maclaurin continuation of sum_{k>=N} k^{-s}. Accurate to ~1e-16
// relative for N >= 16 and |s| <= ~30.
double em_tail(double s, double n) {
  const double ninv = 1.0 / n;
  double acc = std::pow(n, 1.0 - s) / (s - 1.0) + 0.5 * std::pow(n, -s);
  double pole_pow = std::pow(n, -s - 1.0);  // n^{-s-2j+1} for j=1
  double rising = s;                        // s(s+1)...(s+2j-2)
  double fact = 2.0;                        // (2j)!
  for (int j = 1; j <= 12; ++j) {
    acc += kBernoulli[j - 1] / fact * rising * pole_pow;
    pole_pow *= ninv * ninv;
    rising *= (s + 2 * j - 1) * (s + 2 * j);
    fact *= (2 * j + 1) * (2 * j + 2);
  }
  return acc;
}

}  // namespace

double zeta_tail(double s, double n) {
  if (!(s > 1.0)) throw std::domain_error("zeta_tail requires s > 1");
  if (!(n > 0.0)) throw std::domain_error("zeta_tail requires n > 0");
  double acc = 0.0;
  double k = n;
  while (k < 16.0) {
    acc += std::pow(k, -s);
    k += 1.0;
  }
  return acc + em_tail(s, k);
}

double riemann_zeta(double s) {
  if (s == 1.0) throw std::domain_error("zeta pole at s = 1");
  if (s >= 0.5) {
    double acc = 0.0;
    for (double k = 1.0; k < 16.0; k += 1.0) acc += std::pow(k, -s);
    return acc + em_tail(s, 16.0);
  }
  // reflection: zeta(s) = 2^s pi^{s-1} sin(pi s/2) Gamma(1-s) zeta(1-s)
  const double t = 1.0 - s;
  return std::pow(2.0, s) * std::pow(kPi, s - 1.0) * std::sin(kPi * s / 2.0) *
         std::tgamma(t) * riemann_zeta(t);
}

double stable_norming_constant(double alpha) {
  if (!(alpha > 1.0 && alpha < 2.0))
    throw std::domain_error("stable_norming_constant requires alpha in (1,2)");
  return -(std::tgamma(2.0 - alpha) / (alpha - 1.0)) * std::cos(kPi * alpha / 2.0);
}

CosinePowerSeries::CosinePowerSeries(double gamma) : gamma_(gamma) {
  if (!(gamma > 0.0 && gamma < 2.0) || gamma == 1.0)
    throw std::domain_error("CosinePowerSeries requires gamma in (0,2) \\ {1}");
  lead_ = std::tgamma(-gamma) * std::cos(kPi * gamma / 2.0);
  // At |theta| = pi the m-th term decays like 4^{-m} m^{-(1+gamma)};
  // 34 terms push the truncation below 1e-18.
  const int terms = 34;
  even_coeff_.reserve(terms);
  double fact = 1.0;  // (2m)!
  for (int m = 0; m < terms; ++m) {
    if (m > 0) fact *= (2.0 * m - 1.0) * (2.0 * m);
    const double sign = (m % 2 == 0) ? 1.0 : -1.0;
    even_coeff_.push_back(sign * riemann_zeta(1.0 + gamma - 2.0 * m) / fact);
  }
}

double CosinePowerSeries::value(double theta) const {
  const double t = std::fabs(theta);
  if (t > kPi + 1e-12)
    throw std::domain_error("CosinePowerSeries expects |theta| <= pi");
  const double t2 = t * t;
  double acc = 0.0;
  double p = 1.0;
  for (double c : even_coeff_) {
    acc += c * p;
    p *= t2;
  }
  return lead_ * std::pow(t, gamma_) + acc;
}

double CosinePowerSeries::deficit(double theta) const {
  const double t = std::fabs(theta);
  if (t > kPi + 1e-12)
    throw std::domain_error("CosinePowerSeries expects |theta| <= pi");
  if (t == 0.0) return 0.0;
  const double t2 = t * t;
  // skip m = 0 (cancels against F(0)); accumulate sum_{m>=1} c_m theta^{2m}
  double acc = 0.0;
  double p = t2;
  for (std::size_t m = 1; m < even_coeff_.size(); ++m) {
    acc += even_coeff_[m] * p;
    p *= t2;
  }
  return -lead_ * std::pow(t, gamma_) - acc;
}

}  // namespace skewwalk
