#pragma once

#include <memory>
#include <string>
#include <vector>

#include "skewwalk/laws.hpp"
#include "skewwalk/quadrature.hpp"
#include "skewwalk/transforms.hpp"

namespace skewwalk {

// sigma-finite jump measure (c_- 1_{x<0} + c_+ 1_{x>0}) |x|^{-(1+beta)} dx
struct EtaStarMeasure {
  double beta;
  double c_plus;
  double c_minus;

  EtaStarMeasure(double b, double cp, double cm);
  double density(double x) const;
};

// Named test functions with the metadata the integrators need: sup norm,
// breakpoints for quadrature, and a modulus bound |g(x)| <= c |x|^p near 0
// certifying integrability against the singular measure.
class TestFunction {
 public:
  static TestFunction one();
  static TestFunction gaussian_bump();            // exp(-x^2)
  static TestFunction compact_bump();             // exp(1 - 1/(1-x^2)) on (-1,1)
  static TestFunction indicator_abs_gt(double a);  // 1{|x| > a}
  static TestFunction indicator_below(double a);   // 1{x < -a}
  static TestFunction abs_power_capped(double p);  // min(|x|^p, 1)
  static TestFunction odd_witness();               // x exp(-x^2)

  double operator()(double x) const { return eval_(x); }
  const std::string& name() const { return name_; }
  bool is_one() const { return is_one_; }
  bool is_even() const { return is_even_; }
  double sup_norm() const { return sup_norm_; }
  // half-width beyond which |f| < 1e-16 * sup_norm (inf for indicators)
  double support_radius() const { return support_radius_; }
  bool has_modulus_bound() const { return modulus_c_ > 0.0; }
  double modulus_c() const { return modulus_c_; }
  double modulus_exponent() const { return modulus_p_; }
  const std::vector<double>& breakpoints() const { return breakpoints_; }

 private:
  TestFunction() = default;
  std::function<double(double)> eval_;
  std::string name_;
  bool is_one_ = false;
  bool is_even_ = false;
  double sup_norm_ = 1.0;
  double support_radius_ = 0.0;
  double modulus_c_ = 0.0;  // 0 = no declared bound
  double modulus_p_ = 0.0;
  std::vector<double> breakpoints_;
};

struct Estimate {
  double value = 0.0;
  double err = 0.0;        // error estimate: quadrature bound or MC std error
  std::string method;      // "formula", "mc", ...
  bool budget_flagged = false;
};

// Killed resolvent machinery of the rate-v Poissonized walk, sharing one
// batch evaluation of the return kernel per (law, lambda, v):
//   V1(m)       = lambda^{-1} (1 - u_s(m)/u_s(0)),           s = v/(v+lambda)
//   R f(m)      = (lambda+v)^{-1} sum_j u_s(j-m) f(j/a)
//   V f(m)      = R f(m) - (u_s(m)/u_s(0)) R f(0)
// with lambda R 1 = 1 exactly through sum_j u_s(j) = 1/(1-s).
class DiscreteKilledResolvent {
 public:
  DiscreteKilledResolvent(const LatticeStableLaw& xi, double lambda, double v,
                          long long m_max = 0);

  double lambda() const { return lambda_; }
  double rate() const { return v_; }
  double scale() const { return a_; }  // a(v)
  double s() const { return s_; }
  double kernel_err() const { return kernel_err_; }

  double u_kernel(long long m) const;       // u_s(m), |m| <= m_max
  double hit_laplace(long long m) const;    // u_s(m)/u_s(0)
  double v_one(long long m) const;          // V 1 at lattice point m
  double v_one_at(double x) const { return v_one(floor_scaled(x)); }
  double resolvent_f(const TestFunction& f, long long m) const;
  double v_f(const TestFunction& f, long long m) const;
  double v_f_at(const TestFunction& f, double x) const { return v_f(f, floor_scaled(x)); }

  long long floor_scaled(double x) const;   // floor(x * a(v))
  long long m_max() const { return m_limit_; }

  // E[ V g (eta/a(v)) ] by exact pmf summation over |k| <= head plus a
  // bracketed tail block; err carries the bracket half-width.
  Estimate expect_v_one(const PerturbationLaw& eta, long long head = 100000) const;
  Estimate expect_v_f(const PerturbationLaw& eta, const TestFunction& f,
                      long long head = 100000) const;

 private:
  const LatticeStableLaw& xi_;
  double lambda_, v_, a_, s_;
  long long m_limit_;
  double kernel_err_ = 0.0;
  std::vector<double> kernel_;  // u_s(0..m_limit_)
  // f-transform samples sum_j u_s(j-m) f(j/a) need u_s beyond m_limit_ when
  // |m| is near the limit; fall back to the spatial asymptotic there.
  double kernel_far(long long m) const;
  double a1_far_;  // leading far-field coefficient of u_s
};

enum class KilledMode { formula_1, formula_f, mc_f };

// V_lambda f for the Poissonized walk killed at 0, evaluated at scaled point
// x (lattice point floor(x a(v))). formula_1 requires f == 1; mc_f runs a
// Monte Carlo over killed Poissonized paths and reports the std error.
Estimate killed_resolvent_V(const LatticeStableLaw& xi, const TestFunction& f, double x,
                            double lambda, double v, KilledMode mode,
                            std::uint64_t seed = 20240501, std::uint64_t n_paths = 20000);

// lambda R f (0) of the chain perturbed by eta, Poissonized at rate v:
//   (f(0)/v + E[V f(eta/a)]) / (1/v + E[V 1(eta/a)]);
// exactly 1 for f == 1.
Estimate holding_jumping_resolvent_at_zero(const LatticeStableLaw& xi, const PerturbationLaw& eta,
                                           const TestFunction& f, double lambda, double v);

// integral of g against the singular measure; substitution u = |x|^{p} near 0
// tames the integrable singularity, geometric panels cover the power tail.
TransformResult eta_star_integral(const TestFunction& g, const EtaStarMeasure& measure,
                                  const QuadratureSpec& spec = {});

// lambda R f(0) of the skew limit process:
//   int V^cont f d(eta*) / int V^cont 1 d(eta*)  (denominator times lambda)
// with V^cont 1 from the stable hitting transform and V^cont f through the
// discrete proxy at rate v_proxy. Requires beta < alpha - 1.
Estimate skew_resolvent_at_zero(const LatticeStableLaw& xi, const TestFunction& f, double lambda,
                                const EtaStarMeasure& measure, double v_proxy = 1e6);

// Normalized tail functional E g(eta/u) / (beta P{|eta|>u}) per u. The beta
// factor makes the sequence converge to the eta* integral of g (regular
// variation gives the vague limit beta * |x|^{-(1+beta)} dx per unit tail).
struct TailFunctionalPoint {
  double u;
  double ratio;
  double err;
};
std::vector<TailFunctionalPoint> tail_functional(const TestFunction& g,
                                                 const PerturbationLaw& eta,
                                                 const std::vector<double>& u_grid,
                                                 long long head = 200000);

// Monte Carlo estimate of the killed occupation integral
// E_x int_0^{sigma} e^{-lambda t} f(X(t)/a) dt over Poissonized walk paths.
Estimate mc_killed_occupation(const LatticeStableLaw& xi, const TestFunction& f, long long m0,
                              double lambda, double v, std::uint64_t n_paths, std::uint64_t seed,
                              int workers = 1);

// Monte Carlo estimate of R f(x) = E_x int_0^inf e^{-lambda t} f(X(t)/a) dt
// for the perturbed Poissonized chain.
Estimate mc_resolvent(const LatticeStableLaw& xi, const PerturbationLaw& eta,
                      const TestFunction& f, long long m0, double lambda, double v,
                      std::uint64_t n_paths, std::uint64_t seed, int workers = 1);

// Monte Carlo estimate of E_{m0} e^{-lambda sigma~} from Poissonized paths.
Estimate mc_hit_laplace(const LatticeStableLaw& xi, long long m0, double lambda, double rho,
                        std::uint64_t n_paths, std::uint64_t seed, int workers = 1);

}  // namespace skewwalk
