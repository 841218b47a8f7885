#include "skewwalk/laws.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <limits>
#include <numbers>
#include <stdexcept>

namespace skewwalk {

namespace {

constexpr double kPi = std::numbers::pi;

// Largest x solving T(x) = target on the log-linear interpolant of a strictly
// decreasing positive tail sampled at integer nodes. Saturates at 0+ when the
// target exceeds T(0).
template <typename TailAt>
double invert_interpolated_tail(const TailAt& tail_at, double target) {
  const double t0 = tail_at(0);
  if (target >= t0) return std::numeric_limits<double>::min();
  long long lo = 0, hi = 1;
  while (tail_at(hi) >= target) {
    lo = hi;
    hi *= 2;
  }
  while (hi - lo > 1) {
    const long long mid = lo + (hi - lo) / 2;
    if (tail_at(mid) >= target)
      lo = mid;
    else
      hi = mid;
  }
  const double tl = tail_at(lo), th = tail_at(hi);
  if (!(th > 0.0) || tl == th) return static_cast<double>(lo);
  const double frac = (std::log(target) - std::log(tl)) / (std::log(th) - std::log(tl));
  return static_cast<double>(lo) + frac;
}

// Largest m >= m0 with scale * ztail(s, m) > u (u > 0).
long long tail_quantile_geq(double s, long long m0, double scale, double u) {
  u = std::max(u, 1e-300);
  long long lo = m0, hi = 2 * m0;
  while (scale * zeta_tail(s, static_cast<double>(hi)) > u) {
    lo = hi;
    hi *= 2;
  }
  while (hi - lo > 1) {
    const long long mid = lo + (hi - lo) / 2;
    if (scale * zeta_tail(s, static_cast<double>(mid)) > u)
      lo = mid;
    else
      hi = mid;
  }
  return lo;
}

std::atomic<std::uint64_t> g_law_uid{1};

}  // namespace

LatticeLaw::LatticeLaw() : uid_(g_law_uid.fetch_add(1)) {}

std::vector<long long> LatticeLaw::sample(std::uint64_t seed, std::size_t n) const {
  Rng rng(seed, 0);
  std::vector<long long> out(n);
  for (auto& x : out) x = sample_one(rng);
  return out;
}

double LatticeStableLaw::max_tail_constant(double alpha) {
  return 1.0 / (2.0 * riemann_zeta(1.0 + alpha));
}

LatticeStableLaw::LatticeStableLaw(double alpha, double tail_constant)
    : alpha_(alpha), c_(tail_constant), series_(alpha) {
  if (!(alpha > 1.0 && alpha < 2.0))
    throw std::invalid_argument("LatticeStableLaw: alpha must be in (1,2)");
  if (!(tail_constant > 0.0))
    throw std::invalid_argument("LatticeStableLaw: tail_constant must be positive");
  zeta_1a_ = riemann_zeta(1.0 + alpha);
  p0_ = 1.0 - 2.0 * c_ * zeta_1a_;
  if (p0_ < -1e-15)
    throw std::invalid_argument("LatticeStableLaw: tail_constant too large, pmf not a law");
  p0_ = std::max(p0_, 0.0);
  target_ = 1.0 / stable_norming_constant(alpha);

  head_ = 4096;
  head_tail_mass_ = c_ * zeta_tail(1.0 + alpha_, static_cast<double>(head_ + 1));
  head_cum_.resize(static_cast<std::size_t>(2 * head_ + 1));
  double acc = head_tail_mass_;
  for (long long k = -head_; k <= head_; ++k) {
    acc += pmf(k);
    head_cum_[static_cast<std::size_t>(k + head_)] = acc;
  }
}

double LatticeStableLaw::pmf(long long k) const {
  if (k == 0) return p0_;
  return c_ * std::pow(static_cast<double>(std::llabs(k)), -(1.0 + alpha_));
}

double LatticeStableLaw::tail(double x) const {
  if (x < 0.0) throw std::domain_error("tail requires x >= 0");
  if (x < 1.0) return 1.0 - p0_;
  return 2.0 * c_ * zeta_tail(1.0 + alpha_, std::floor(x) + 1.0);
}

double LatticeStableLaw::charfn(double theta) const {
  const double t = std::remainder(theta, 2.0 * kPi);
  return p0_ + 2.0 * c_ * series_.value(t);
}

double LatticeStableLaw::one_minus_charfn(double theta) const {
  const double t = std::remainder(theta, 2.0 * kPi);
  return 2.0 * c_ * series_.deficit(t);
}

double LatticeStableLaw::norming_a(double v) const {
  if (!(v > 0.0)) throw std::domain_error("norming_a requires v > 0");
  const double target = target_ / v;
  return invert_interpolated_tail([this](long long j) { return tail(static_cast<double>(j)); },
                                  target);
}

long long LatticeStableLaw::sample_one(Rng& rng) const {
  const double u = rng.uniform();
  if (u < head_tail_mass_)
    return -tail_quantile_geq(1.0 + alpha_, head_ + 1, c_, u);
  if (u >= head_cum_.back()) {
    const double w = 1.0 - u;
    // min k with C*ztail(k+1) < w  <=>  1 + (largest m >= head+1 with C*ztail(m) > w) ... m = k+1
    return tail_quantile_geq(1.0 + alpha_, head_ + 1, c_, w);
  }
  const auto it = std::upper_bound(head_cum_.begin(), head_cum_.end(), u);
  const long long idx = it - head_cum_.begin();
  return std::min(idx, 2 * head_) - head_;
}

const char* to_string(EtaMode mode) {
  switch (mode) {
    case EtaMode::one_sided: return "one_sided";
    case EtaMode::two_sided: return "two_sided";
    case EtaMode::constant: return "constant";
    case EtaMode::geometric: return "geometric";
  }
  return "?";
}

EtaMode eta_mode_from_string(const std::string& s) {
  if (s == "one_sided") return EtaMode::one_sided;
  if (s == "two_sided") return EtaMode::two_sided;
  if (s == "constant") return EtaMode::constant;
  if (s == "geometric") return EtaMode::geometric;
  throw std::invalid_argument("unknown eta mode: " + s);
}

PerturbationLaw PerturbationLaw::one_sided_zeta(double beta, double tail_constant) {
  PerturbationLaw law = two_sided_zeta(beta, 1.0, tail_constant);
  law.mode_ = EtaMode::one_sided;
  return law;
}

PerturbationLaw PerturbationLaw::two_sided_zeta(double beta, double c_plus, double tail_constant) {
  if (!(beta > 0.0 && beta < 1.0))
    throw std::invalid_argument("PerturbationLaw: beta must be in (0,1)");
  if (!(c_plus >= 0.0 && c_plus <= 1.0))
    throw std::invalid_argument("PerturbationLaw: c_plus must be in [0,1]");
  const double zb = riemann_zeta(1.0 + beta);
  double c = tail_constant;
  if (c == 0.0) c = 1.0 / zb;  // pure zeta law
  if (!(c > 0.0)) throw std::invalid_argument("PerturbationLaw: tail_constant must be positive");
  const double p1 = 1.0 - c * (zb - 1.0);
  if (p1 < -1e-15)
    throw std::invalid_argument("PerturbationLaw: tail_constant too large, pmf not a law");
  PerturbationLaw law;
  law.mode_ = EtaMode::two_sided;
  law.beta_ = beta;
  law.c_ = c;
  law.c_plus_ = c_plus;
  law.p1_ = std::max(p1, 0.0);
  law.head_ = 4096;
  law.mag_upper_.resize(static_cast<std::size_t>(law.head_ + 1));
  for (long long m = 1; m <= law.head_ + 1; ++m)
    law.mag_upper_[static_cast<std::size_t>(m - 1)] =
        m == 1 ? 1.0 : c * zeta_tail(1.0 + beta, static_cast<double>(m));
  return law;
}

PerturbationLaw PerturbationLaw::constant(long long value) {
  if (value == 0) throw std::invalid_argument("PerturbationLaw: constant jump must be nonzero");
  PerturbationLaw law;
  law.mode_ = EtaMode::constant;
  law.value_ = value;
  law.c_plus_ = value > 0 ? 1.0 : 0.0;
  return law;
}

PerturbationLaw PerturbationLaw::geometric(double p) {
  if (!(p > 0.0 && p < 1.0))
    throw std::invalid_argument("PerturbationLaw: geometric p must be in (0,1)");
  PerturbationLaw law;
  law.mode_ = EtaMode::geometric;
  law.p_ = p;
  law.c_plus_ = 1.0;
  return law;
}

double PerturbationLaw::beta() const {
  if (!heavy_tailed()) throw std::domain_error("beta defined only for heavy-tailed eta");
  return beta_;
}

double PerturbationLaw::pmf(long long k) const {
  switch (mode_) {
    case EtaMode::constant:
      return k == value_ ? 1.0 : 0.0;
    case EtaMode::geometric:
      return k >= 1 ? std::pow(1.0 - p_, static_cast<double>(k - 1)) * p_ : 0.0;
    default: {
      if (k == 0) return 0.0;
      const double side = k > 0 ? c_plus_ : (1.0 - c_plus_);
      const long long m = std::llabs(k);
      return side * (m == 1 ? p1_ : c_ * std::pow(static_cast<double>(m), -(1.0 + beta_)));
    }
  }
}

double PerturbationLaw::magnitude_upper(double m) const {
  // P{|eta| >= m} for integer m >= 1
  if (m <= 1.0) return 1.0;
  switch (mode_) {
    case EtaMode::constant:
      return m <= static_cast<double>(std::llabs(value_)) ? 1.0 : 0.0;
    case EtaMode::geometric:
      return std::pow(1.0 - p_, m - 1.0);
    default:
      return c_ * zeta_tail(1.0 + beta_, m);
  }
}

double PerturbationLaw::tail(double x) const {
  if (x < 0.0) throw std::domain_error("tail requires x >= 0");
  return magnitude_upper(std::floor(x) + 1.0);
}

double PerturbationLaw::signed_tail(double x, int sign) const {
  const double weight = sign > 0 ? c_plus_ : (1.0 - c_plus_);
  return weight * tail(x);
}

double PerturbationLaw::norming_c(double v) const {
  if (!heavy_tailed())
    throw std::domain_error("norming_c requires a heavy-tailed eta law");
  if (!(v > 0.0)) throw std::domain_error("norming_c requires v > 0");
  return invert_interpolated_tail(
      [this](long long j) { return tail(static_cast<double>(j)); }, 1.0 / v);
}

long long PerturbationLaw::sample_one(Rng& rng) const {
  switch (mode_) {
    case EtaMode::constant:
      return value_;
    case EtaMode::geometric: {
      const double u = rng.uniform();
      const double r = std::log1p(-u) / std::log1p(-p_);
      return std::max<long long>(1, static_cast<long long>(std::floor(r)) + 1);
    }
    default: {
      const double u = rng.uniform();
      const double c_minus = 1.0 - c_plus_;
      if (u < c_minus) {
        // negative side: largest m with c_minus * M(m) > u
        if (c_minus * mag_upper_.back() > u)
          return -tail_quantile_geq(1.0 + beta_, head_ + 1, c_minus * c_, u);
        long long lo = 1, hi = head_ + 1;  // invariant: c-*M(lo) > u >= c-*M(hi)
        while (hi - lo > 1) {
          const long long mid = lo + (hi - lo) / 2;
          if (c_minus * mag_upper_[static_cast<std::size_t>(mid - 1)] > u)
            lo = mid;
          else
            hi = mid;
        }
        return -lo;
      }
      // positive side: min k >= 1 with c_plus * M(k+1) < w, w = 1-u
      const double w = 1.0 - u;
      if (c_plus_ * mag_upper_.back() >= w)
        return tail_quantile_geq(1.0 + beta_, head_ + 1, c_plus_ * c_, w);
      long long lo = 0, hi = head_ + 1;  // invariant: cp*M(lo+1) >= w > cp*M(hi+1)... search
      while (hi - lo > 1) {
        const long long mid = lo + (hi - lo) / 2;
        if (c_plus_ * mag_upper_[static_cast<std::size_t>(mid)] < w)
          hi = mid;
        else
          lo = mid;
      }
      return hi;
    }
  }
}

std::vector<long long> PerturbationLaw::sample(std::uint64_t seed, std::size_t n) const {
  Rng rng(seed, 0);
  std::vector<long long> out(n);
  for (auto& x : out) x = sample_one(rng);
  return out;
}

}  // namespace skewwalk
