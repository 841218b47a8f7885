#pragma once

#include <cstdint>
#include <memory>
#include <string>
#include <vector>

#include "skewwalk/rng.hpp"
#include "skewwalk/special.hpp"

namespace skewwalk {

// Integer-valued, symmetric, 1-arithmetic step law for the unperturbed walk.
// Implementations are immutable after construction and safe for concurrent
// reads; uid() keys the transform caches.
class LatticeLaw {
 public:
  virtual ~LatticeLaw() = default;

  virtual double pmf(long long k) const = 0;
  virtual double tail(double x) const = 0;  // P{|xi| > x}, exact, x >= 0
  // psi(theta) = E cos(theta xi); real by symmetry, 2pi-periodic.
  virtual double charfn(double theta) const = 0;
  // 1 - psi(theta) without cancellation at small theta.
  virtual double one_minus_charfn(double theta) const = 0;
  virtual long long sample_one(Rng& rng) const = 0;

  std::vector<long long> sample(std::uint64_t seed, std::size_t n) const;

  std::uint64_t uid() const { return uid_; }

 protected:
  LatticeLaw();

 private:
  std::uint64_t uid_;
};

// P{xi = +-k} = C k^{-(1+alpha)} for k >= 1; the mass at 0 absorbs the
// normalization. In the domain of attraction of the symmetric alpha-stable
// law for alpha in (1,2).
class LatticeStableLaw final : public LatticeLaw {
 public:
  LatticeStableLaw(double alpha, double tail_constant);

  double alpha() const { return alpha_; }
  double tail_constant() const { return c_; }
  double mass_at_zero() const { return p0_; }
  // target of the tail norming: v * P{|xi| > a(v)} = norming_target()
  double norming_target() const { return target_; }

  double pmf(long long k) const override;
  double tail(double x) const override;
  double charfn(double theta) const override;
  double one_minus_charfn(double theta) const override;
  long long sample_one(Rng& rng) const override;

  // c with 1 - psi(theta) = c |theta|^alpha (1 + o(1)) at theta -> 0
  double one_minus_charfn_leading() const { return -2.0 * c_ * series_.leading_coefficient(); }

  // a(v): monotone bisection of the defining equation on the log-linear
  // interpolant of the exact tail. Nondecreasing in v; saturates at 0+ for
  // v too small for the equation to have a root.
  double norming_a(double v) const;

  // largest admissible tail constant for this alpha (pmf stays a law)
  static double max_tail_constant(double alpha);

 private:
  double alpha_, c_, p0_, target_;
  double zeta_1a_;  // zeta(1+alpha)
  CosinePowerSeries series_;
  std::vector<double> head_cum_;  // F(k), k = -head..head
  long long head_;
  double head_tail_mass_;  // P{xi < -head} = P{xi > head}
};

// Fair +-1 step law; closed forms for every transform make it the oracle walk.
class TwoPointLaw final : public LatticeLaw {
 public:
  TwoPointLaw() = default;
  double pmf(long long k) const override { return (k == 1 || k == -1) ? 0.5 : 0.0; }
  double tail(double x) const override { return x < 1.0 ? 1.0 : 0.0; }
  double charfn(double theta) const override { return std::cos(theta); }
  double one_minus_charfn(double theta) const override {
    const double s = std::sin(theta / 2.0);
    return 2.0 * s * s;
  }
  long long sample_one(Rng& rng) const override { return rng.uniform() < 0.5 ? -1 : 1; }
};

enum class EtaMode { one_sided, two_sided, constant, geometric };

const char* to_string(EtaMode mode);
EtaMode eta_mode_from_string(const std::string& s);

// Law of the jump from zero. Heavy-tailed modes carry a zeta-type magnitude
// pmf C k^{-(1+beta)} for k >= 2 with the normalization remainder at k = 1,
// split between signs by (c_plus, c_minus). P{eta = 0} = 0 in every mode.
class PerturbationLaw {
 public:
  static PerturbationLaw one_sided_zeta(double beta, double tail_constant = 0.0);
  static PerturbationLaw two_sided_zeta(double beta, double c_plus, double tail_constant = 0.0);
  static PerturbationLaw constant(long long value);
  static PerturbationLaw geometric(double p);

  EtaMode mode() const { return mode_; }
  bool heavy_tailed() const { return mode_ == EtaMode::one_sided || mode_ == EtaMode::two_sided; }
  double beta() const;
  double c_plus() const { return c_plus_; }
  double c_minus() const { return 1.0 - c_plus_; }
  double tail_constant() const { return c_; }
  long long constant_value() const { return value_; }
  double geometric_p() const { return p_; }

  double pmf(long long k) const;
  double tail(double x) const;                   // P{|eta| > x}
  double signed_tail(double x, int sign) const;  // P{+eta > x} or P{-eta > x}

  // c(v): v * P{|eta| > c(v)} = 1; heavy-tailed modes only.
  double norming_c(double v) const;

  long long sample_one(Rng& rng) const;
  std::vector<long long> sample(std::uint64_t seed, std::size_t n) const;

 private:
  PerturbationLaw() = default;

  double magnitude_upper(double m) const;  // P{|eta| >= m}, integer m >= 1

  EtaMode mode_ = EtaMode::constant;
  double beta_ = 0.0, c_ = 0.0, c_plus_ = 1.0, p_ = 0.0, p1_ = 0.0;
  long long value_ = 0;
  std::vector<double> mag_upper_;  // M(m) = P{|eta| >= m}, m = 1..head+1
  long long head_ = 0;
};

}  // namespace skewwalk
