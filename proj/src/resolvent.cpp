#include "skewwalk/resolvent.hpp"

#include <cmath>
#include <complex>
#include <limits>
#include <numbers>
#include <stdexcept>

#include "skewwalk/fft.hpp"
#include "skewwalk/stats.hpp"
#include "skewwalk/walk.hpp"

namespace skewwalk {

namespace {
constexpr double kPi = std::numbers::pi;
constexpr double kInf = std::numeric_limits<double>::infinity();
}  // namespace

EtaStarMeasure::EtaStarMeasure(double b, double cp, double cm)
    : beta(b), c_plus(cp), c_minus(cm) {
  if (!(beta > 0.0 && beta < 1.0))
    throw std::invalid_argument("EtaStarMeasure: beta must be in (0,1)");
  if (!(c_plus >= 0.0) || !(c_minus >= 0.0) || !(c_plus + c_minus > 0.0))
    throw std::invalid_argument("EtaStarMeasure: weights must be nonnegative, not both zero");
}

double EtaStarMeasure::density(double x) const {
  if (x == 0.0) return 0.0;
  const double w = x > 0.0 ? c_plus : c_minus;
  return w * std::pow(std::fabs(x), -(1.0 + beta));
}

TestFunction TestFunction::one() {
  TestFunction f;
  f.eval_ = [](double) { return 1.0; };
  f.name_ = "one";
  f.is_one_ = true;
  f.is_even_ = true;
  f.sup_norm_ = 1.0;
  f.support_radius_ = kInf;
  return f;
}

TestFunction TestFunction::gaussian_bump() {
  TestFunction f;
  f.eval_ = [](double x) { return std::exp(-x * x); };
  f.name_ = "gaussian_bump";
  f.is_even_ = true;
  f.sup_norm_ = 1.0;
  f.support_radius_ = 6.1;  // exp(-r^2) < 1e-16 beyond
  return f;
}

TestFunction TestFunction::compact_bump() {
  TestFunction f;
  f.eval_ = [](double x) {
    const double y = 1.0 - x * x;
    return y > 0.0 ? std::exp(1.0 - 1.0 / y) : 0.0;
  };
  f.name_ = "compact_bump";
  f.is_even_ = true;
  f.sup_norm_ = 1.0;
  f.support_radius_ = 1.0;
  f.breakpoints_ = {-1.0, 1.0};
  return f;
}

TestFunction TestFunction::indicator_abs_gt(double a) {
  if (!(a > 0.0)) throw std::invalid_argument("indicator_abs_gt requires a > 0");
  TestFunction f;
  f.eval_ = [a](double x) { return std::fabs(x) > a ? 1.0 : 0.0; };
  f.name_ = "indicator_abs_gt";
  f.is_even_ = true;
  f.sup_norm_ = 1.0;
  f.support_radius_ = kInf;
  f.modulus_c_ = 1.0 / a;
  f.modulus_p_ = 1.0;
  f.breakpoints_ = {-a, a};
  return f;
}

TestFunction TestFunction::indicator_below(double a) {
  if (!(a > 0.0)) throw std::invalid_argument("indicator_below requires a > 0");
  TestFunction f;
  f.eval_ = [a](double x) { return x < -a ? 1.0 : 0.0; };
  f.name_ = "indicator_below";
  f.is_even_ = false;
  f.sup_norm_ = 1.0;
  f.support_radius_ = kInf;
  f.modulus_c_ = 1.0 / a;
  f.modulus_p_ = 1.0;
  f.breakpoints_ = {-a};
  return f;
}

TestFunction TestFunction::abs_power_capped(double p) {
  if (!(p > 0.0)) throw std::invalid_argument("abs_power_capped requires p > 0");
  TestFunction f;
  f.eval_ = [p](double x) { return std::min(std::pow(std::fabs(x), p), 1.0); };
  f.name_ = "abs_power_capped";
  f.is_even_ = true;
  f.sup_norm_ = 1.0;
  f.support_radius_ = kInf;
  f.modulus_c_ = 1.0;
  f.modulus_p_ = p;
  f.breakpoints_ = {-1.0, 1.0};
  return f;
}

TestFunction TestFunction::odd_witness() {
  TestFunction f;
  f.eval_ = [](double x) { return x * std::exp(-x * x); };
  f.name_ = "odd_witness";
  f.is_even_ = false;
  f.sup_norm_ = std::exp(-0.5) / std::sqrt(2.0);
  f.support_radius_ = 6.5;
  f.modulus_c_ = 1.0;
  f.modulus_p_ = 1.0;
  return f;
}

DiscreteKilledResolvent::DiscreteKilledResolvent(const LatticeStableLaw& xi, double lambda,
                                                 double v, long long m_max)
    : xi_(xi), lambda_(lambda), v_(v) {
  if (!(lambda > 0.0)) throw std::domain_error("DiscreteKilledResolvent requires lambda > 0");
  if (!(v >= 1.0)) throw std::domain_error("DiscreteKilledResolvent requires v >= 1");
  a_ = xi.norming_a(v);
  s_ = v / (v + lambda);
  m_limit_ = m_max > 0 ? m_max : static_cast<long long>(4.0 * a_) + 1000;
  kernel_ = u_s_batch(xi, s_, m_limit_, &kernel_err_);
  const double alpha = xi.alpha();
  a1_far_ = s_ * xi.one_minus_charfn_leading() / ((1.0 - s_) * (1.0 - s_)) *
            std::tgamma(1.0 + alpha) * std::sin(kPi * alpha / 2.0) / kPi;
}

double DiscreteKilledResolvent::kernel_far(long long m) const {
  return a1_far_ * std::pow(static_cast<double>(std::llabs(m)), -(1.0 + xi_.alpha()));
}

double DiscreteKilledResolvent::u_kernel(long long m) const {
  const long long mm = std::llabs(m);
  if (mm <= m_limit_) return kernel_[static_cast<std::size_t>(mm)];
  return kernel_far(mm);
}

double DiscreteKilledResolvent::hit_laplace(long long m) const {
  return u_kernel(m) / kernel_[0];
}

double DiscreteKilledResolvent::v_one(long long m) const {
  if (m == 0) return 0.0;
  return (1.0 - hit_laplace(m)) / lambda_;
}

long long DiscreteKilledResolvent::floor_scaled(double x) const {
  return static_cast<long long>(std::floor(x * a_));
}

double DiscreteKilledResolvent::resolvent_f(const TestFunction& f, long long m) const {
  if (f.is_one()) return 1.0 / lambda_;  // sum_j u_s(j) = 1/(1-s) exactly
  if (!(f.support_radius() < kInf))
    throw std::invalid_argument("resolvent_f requires a decaying test function");
  const long long j_lim = static_cast<long long>(std::ceil(f.support_radius() * a_)) + 1;
  if (std::llabs(m) + j_lim > m_limit_ + (m_limit_ / 4))
    throw std::invalid_argument("kernel window too small for f support at this point");
  double acc = 0.0;
  for (long long j = -j_lim; j <= j_lim; ++j)
    acc += u_kernel(j - m) * f(static_cast<double>(j) / a_);
  return acc / (lambda_ + v_);
}

double DiscreteKilledResolvent::v_f(const TestFunction& f, long long m) const {
  if (f.is_one()) return v_one(m);
  if (m == 0) return 0.0;
  return resolvent_f(f, m) - hit_laplace(m) * resolvent_f(f, 0);
}

Estimate DiscreteKilledResolvent::expect_v_one(const PerturbationLaw& eta, long long head) const {
  head = std::min(head, m_limit_);
  double acc = 0.0;
  for (long long k = 1; k <= head; ++k) {
    const double vk = v_one(k);
    acc += eta.pmf(k) * vk + eta.pmf(-k) * vk;  // V1 even in the lattice point
  }
  // tail block |k| > head: V1 between its value at the head boundary and 1/lambda
  const double p_tail = eta.tail(static_cast<double>(head));
  const double lo = v_one(head), hi = 1.0 / lambda_;
  Estimate out;
  out.value = acc + p_tail * 0.5 * (lo + hi);
  out.err = p_tail * 0.5 * (hi - lo) + kernel_err_ / (lambda_ * kernel_[0]);
  out.method = "formula";
  return out;
}

Estimate DiscreteKilledResolvent::expect_v_f(const PerturbationLaw& eta, const TestFunction& f,
                                             long long head) const {
  if (f.is_one()) return expect_v_one(eta, head);
  head = std::min(head, m_limit_);
  const long long j_lim =
      std::min<long long>(static_cast<long long>(std::ceil(f.support_radius() * a_)) + 1,
                          m_limit_);
  // q(j) = sum_k pmf(k) u_s(j-k) via one circular convolution
  const std::size_t size = next_pow2(2 * static_cast<std::size_t>(head + j_lim) + 8);
  std::vector<std::complex<double>> pa(size, 0.0), ub(size, 0.0);
  for (long long k = 1; k <= head; ++k) {
    const double pp = eta.pmf(k), pm = eta.pmf(-k);
    if (pp > 0.0) pa[static_cast<std::size_t>(k)] += pp;
    if (pm > 0.0) pa[size - static_cast<std::size_t>(k)] += pm;
  }
  for (long long j = 0; j <= m_limit_; ++j) {
    const double uv = kernel_[static_cast<std::size_t>(j)];
    ub[static_cast<std::size_t>(j)] = uv;
    if (j > 0) ub[size - static_cast<std::size_t>(j)] = uv;
  }
  fft(pa);
  fft(ub);
  for (std::size_t i = 0; i < size; ++i) pa[i] *= ub[i];
  fft(pa, true);

  const double rf0 = resolvent_f(f, 0);
  double e_rf = 0.0;
  for (long long j = -j_lim; j <= j_lim; ++j) {
    const std::size_t bin = j >= 0 ? static_cast<std::size_t>(j) : size - static_cast<std::size_t>(-j);
    e_rf += pa[bin].real() * f(static_cast<double>(j) / a_);
  }
  e_rf /= (lambda_ + v_);
  double e_hit = 0.0;
  for (long long k = 1; k <= head; ++k)
    e_hit += (eta.pmf(k) + eta.pmf(-k)) * hit_laplace(k);

  // tail block |k| > head: |V f| small out there
  const double p_tail = eta.tail(static_cast<double>(head));
  const double far_r = (2.0 * static_cast<double>(j_lim) + 1.0) * f.sup_norm() *
                       u_kernel(std::max<long long>(1, head - j_lim)) / (lambda_ + v_);
  const double bound = far_r + hit_laplace(head) * std::fabs(rf0);

  Estimate out;
  out.value = e_rf - e_hit * rf0;
  out.err = p_tail * bound +
            kernel_err_ * f.sup_norm() * (2.0 * static_cast<double>(j_lim) + 1.0) / (lambda_ + v_) +
            kernel_err_ / kernel_[0] * std::fabs(rf0);
  out.method = "formula";
  return out;
}

Estimate killed_resolvent_V(const LatticeStableLaw& xi, const TestFunction& f, double x,
                            double lambda, double v, KilledMode mode, std::uint64_t seed,
                            std::uint64_t n_paths) {
  if (!(lambda > 0.0)) throw std::domain_error("killed_resolvent_V requires lambda > 0");
  switch (mode) {
    case KilledMode::formula_1: {
      if (!f.is_one())
        throw std::invalid_argument("formula_1 mode evaluates V 1 only");
      Estimate out;
      out.value = (1.0 - discrete_hit_laplace_scaled(xi, x, lambda, v)) / lambda;
      out.err = 1e-8 / lambda;
      out.method = "formula";
      return out;
    }
    case KilledMode::formula_f: {
      const double a = xi.norming_a(v);
      const long long m = static_cast<long long>(std::floor(x * a));
      const long long span =
          std::llabs(m) + static_cast<long long>(std::ceil(
                              (f.is_one() ? 0.0 : f.support_radius()) * a)) + 8;
      DiscreteKilledResolvent dkr(xi, lambda, v, span);
      Estimate out;
      out.value = dkr.v_f(f, m);
      out.err = 4.0 * dkr.kernel_err() / (lambda + v) + 1e-9;
      out.method = "formula";
      return out;
    }
    case KilledMode::mc_f: {
      const double a = xi.norming_a(v);
      const long long m = static_cast<long long>(std::floor(x * a));
      return mc_killed_occupation(xi, f, m, lambda, v, n_paths, seed, 4);
    }
  }
  throw std::logic_error("unreachable");
}

Estimate holding_jumping_resolvent_at_zero(const LatticeStableLaw& xi, const PerturbationLaw& eta,
                                           const TestFunction& f, double lambda, double v) {
  if (f.is_one()) return {1.0, 0.0, "formula", false};
  const long long head = 100000;
  const double a = xi.norming_a(v);
  const long long j_lim = static_cast<long long>(std::ceil(f.support_radius() * a)) + 1;
  DiscreteKilledResolvent dkr(xi, lambda, v, head + j_lim + 8);
  const Estimate ef = dkr.expect_v_f(eta, f, head);
  const Estimate e1 = dkr.expect_v_one(eta, head);
  const double num = f(0.0) / v + ef.value;
  const double den = 1.0 / v + e1.value;
  if (!(den > 1e-300)) throw std::logic_error("holding-jumping denominator underflow");
  Estimate out;
  out.value = num / den;
  out.err = (ef.err + std::fabs(out.value) * e1.err) / den;
  out.method = "formula";
  return out;
}

namespace {

// one side of the eta* integral: int_0^inf g(sign*x) x^{-(1+beta)} dx
TransformResult eta_star_one_side(const std::function<double(double)>& g, double beta,
                                  double modulus_p, double sup_norm,
                                  const std::vector<double>& breaks, const QuadratureSpec& spec) {
  TransformResult out;
  // (0, 1]: substitute x = u^{1/p}; integrand (1/p) g(x(u)) u^{-beta/p - 1} * u
  // ... with |g| <= c x^p the transformed integrand is u^{-beta/p} integrable
  const double p = modulus_p;
  const auto inner = [&](double u) {
    const double x = std::pow(u, 1.0 / p);
    return g(x) * std::pow(u, -(1.0 + beta) / p) * std::pow(u, 1.0 / p - 1.0) / p;
  };
  std::vector<double> u_breaks = {1e-14, 1e-12, 1e-9, 1e-6, 1e-3, 0.03};
  for (double b : breaks)
    if (b > 0.0 && b < 1.0) u_breaks.push_back(std::pow(b, p));
  TransformResult head = integrate_adaptive(inner, 0.0, 1.0, spec, u_breaks);
  out.value += head.value;
  out.err_estimate += head.err_estimate;
  out.n_evals += head.n_evals;
  // [1, inf): geometric panels until the sup-norm tail bound is negligible
  const auto outer = [&](double x) { return g(x) * std::pow(x, -(1.0 + beta)); };
  double lo = 1.0;
  for (int i = 0; i < 400; ++i) {
    const double hi = lo * 2.0;
    std::vector<double> panel_breaks;
    for (double b : breaks)
      if (b > lo && b < hi) panel_breaks.push_back(b);
    QuadratureSpec panel_spec = spec;
    panel_spec.abs_tol = spec.abs_tol / 8.0;
    TransformResult part = integrate_adaptive(outer, lo, hi, panel_spec, panel_breaks);
    out.value += part.value;
    out.err_estimate += part.err_estimate;
    out.n_evals += part.n_evals;
    lo = hi;
    const double bound = sup_norm * std::pow(lo, -beta) / beta;
    if (bound < spec.abs_tol * 0.25) {
      out.err_estimate += bound;
      break;
    }
  }
  return out;
}

}  // namespace

TransformResult eta_star_integral(const TestFunction& g, const EtaStarMeasure& measure,
                                  const QuadratureSpec& spec) {
  if (g.is_one())
    throw std::invalid_argument("eta_star_integral of a non-vanishing function diverges at 0");
  if (!g.has_modulus_bound())
    throw std::invalid_argument("eta_star_integral requires a declared modulus bound");
  const double p = g.modulus_exponent();
  if (!(p > measure.beta))
    throw std::invalid_argument("modulus exponent must exceed beta; integral may diverge");
  // verify the declared bound near 0 on a log grid
  const double c = g.modulus_c();
  for (double x = 1e-12; x < 1.0; x *= 10.0) {
    for (double sign : {1.0, -1.0}) {
      if (std::fabs(g(sign * x)) > c * std::pow(x, p) * (1.0 + 1e-9) + 1e-300)
        throw std::invalid_argument("test function violates its declared modulus bound near 0");
    }
  }
  TransformResult out;
  if (measure.c_plus > 0.0) {
    const TransformResult plus = eta_star_one_side([&](double x) { return g(x); }, measure.beta,
                                                   p, g.sup_norm(), g.breakpoints(), spec);
    out.value += measure.c_plus * plus.value;
    out.err_estimate += measure.c_plus * plus.err_estimate;
    out.n_evals += plus.n_evals;
  }
  if (measure.c_minus > 0.0) {
    const TransformResult minus = eta_star_one_side([&](double x) { return g(-x); }, measure.beta,
                                                    p, g.sup_norm(), g.breakpoints(), spec);
    out.value += measure.c_minus * minus.value;
    out.err_estimate += measure.c_minus * minus.err_estimate;
    out.n_evals += minus.n_evals;
  }
  return out;
}

Estimate skew_resolvent_at_zero(const LatticeStableLaw& xi, const TestFunction& f, double lambda,
                                const EtaStarMeasure& measure, double v_proxy) {
  const double alpha = xi.alpha();
  if (!(measure.beta < alpha - 1.0))
    throw std::domain_error("skew resolvent requires beta < alpha - 1");
  if (!(lambda > 0.0)) throw std::domain_error("skew resolvent requires lambda > 0");
  if (f.is_one()) return {1.0, 0.0, "formula", false};

  QuadratureSpec spec;
  spec.abs_tol = 1e-7;
  spec.rel_tol = 1e-7;

  // denominator: int V1(y) eta*(dy) with V1(y) = (1 - hit(y))/lambda, even
  const auto v1_cont = [&](double y) {
    return (1.0 - stable_hit_laplace(std::fabs(y), lambda, alpha)) / lambda;
  };
  const TransformResult den_side = eta_star_one_side(v1_cont, measure.beta, alpha - 1.0,
                                                     1.0 / lambda, {}, spec);
  const double den = (measure.c_plus + measure.c_minus) * den_side.value;

  // numerator: int V^proxy f(y) eta*(dy) with the rate-v_proxy discrete proxy
  const double y_max = 50.0;
  const double a = xi.norming_a(v_proxy);
  const long long j_lim = static_cast<long long>(std::ceil(f.support_radius() * a)) + 1;
  const long long m_need = static_cast<long long>(std::ceil(y_max * a)) + j_lim + 8;
  DiscreteKilledResolvent dkr(xi, lambda, v_proxy, m_need);

  double num = 0.0, num_err = 0.0;
  for (double sign : {1.0, -1.0}) {
    const double weight = sign > 0.0 ? measure.c_plus : measure.c_minus;
    if (weight == 0.0) continue;
    const auto vf = [&](double y) { return dkr.v_f(f, dkr.floor_scaled(sign * y)); };
    // near-0 substitution exponent alpha-1 matches the hitting-probability modulus
    const auto inner = [&](double u) {
      const double p = alpha - 1.0;
      const double y = std::pow(u, 1.0 / p);
      return vf(y) * std::pow(u, -(1.0 + measure.beta) / p) * std::pow(u, 1.0 / p - 1.0) / p;
    };
    TransformResult head =
        integrate_adaptive(inner, 0.0, 1.0, spec, {1e-12, 1e-9, 1e-6, 1e-3, 0.03});
    num += weight * head.value;
    num_err += weight * head.err_estimate;
    const auto outer = [&](double y) { return vf(y) * std::pow(y, -(1.0 + measure.beta)); };
    double lo = 1.0;
    while (lo < y_max) {
      const double hi = std::min(lo * 2.0, y_max);
      TransformResult part = integrate_adaptive(outer, lo, hi, spec, {});
      num += weight * part.value;
      num_err += weight * part.err_estimate;
      lo = hi;
    }
    // beyond y_max: |V f| <= ‖f‖ hit + far kernel remainder, measure tail y_max^{-beta}/beta
    const double far_bound =
        (std::fabs(dkr.v_f(f, dkr.floor_scaled(sign * y_max))) + 1e-12) * 2.0;
    num_err += weight * far_bound * std::pow(y_max, -measure.beta) / measure.beta;
  }

  // proxy gap: difference between discrete and continuous V1 along a probe grid
  double probe_gap = 0.0;
  for (double y : {0.05, 0.2, 1.0, 4.0}) {
    const double disc = dkr.v_one(dkr.floor_scaled(y));
    probe_gap = std::max(probe_gap, std::fabs(disc - v1_cont(y)));
  }

  Estimate out;
  out.value = num / den;
  out.err = num_err / den + den_side.err_estimate * std::fabs(out.value) / den_side.value +
            2.0 * probe_gap * f.sup_norm() / (den * lambda) +
            4.0 * dkr.kernel_err() / ((lambda + v_proxy) * den);
  out.method = "formula+proxy";
  return out;
}

std::vector<TailFunctionalPoint> tail_functional(const TestFunction& g,
                                                 const PerturbationLaw& eta,
                                                 const std::vector<double>& u_grid,
                                                 long long head) {
  if (!eta.heavy_tailed())
    throw std::domain_error("tail_functional requires a heavy-tailed eta law");
  if (!g.has_modulus_bound())
    throw std::invalid_argument("tail_functional requires a declared modulus bound");
  const double beta = eta.beta();
  QuadratureSpec spec;
  spec.abs_tol = 1e-11;
  spec.rel_tol = 1e-10;

  const auto expectation = [&](double u, long long head_used) {
    double acc = 0.0;
    for (long long k = 1; k <= head_used; ++k) {
      const double x = static_cast<double>(k) / u;
      acc += eta.pmf(k) * g(x) + eta.pmf(-k) * g(-x);
    }
    // beyond the head the pmf is exactly C k^{-(1+beta)} split by sign; the
    // midpoint integral replaces the lattice sum
    const double C = eta.tail_constant();
    const double start = static_cast<double>(head_used) + 0.5;
    for (double sign : {1.0, -1.0}) {
      const double weight = sign > 0.0 ? eta.c_plus() : eta.c_minus();
      if (weight == 0.0) continue;
      const auto integrand = [&](double x) {
        return g(sign * x / u) * std::pow(x, -(1.0 + beta));
      };
      double lo = start;
      for (int i = 0; i < 200; ++i) {
        const double hi = lo * 2.0;
        std::vector<double> panel_breaks;
        for (double b : g.breakpoints()) {
          const double xb = std::fabs(b) * u;
          if (xb > lo && xb < hi) panel_breaks.push_back(xb);
        }
        TransformResult part = integrate_adaptive(integrand, lo, hi, spec, panel_breaks);
        acc += weight * C * part.value;
        lo = hi;
        if (g.sup_norm() * C * std::pow(lo, -beta) / beta < 1e-12) break;
      }
    }
    return acc;
  };

  std::vector<TailFunctionalPoint> out;
  out.reserve(u_grid.size());
  for (double u : u_grid) {
    const double denom = beta * eta.tail(u);
    const double full = expectation(u, head);
    const double half = expectation(u, head / 2);
    TailFunctionalPoint pt;
    pt.u = u;
    pt.ratio = full / denom;
    pt.err = 2.0 * std::fabs(full - half) / denom;
    out.push_back(pt);
  }
  return out;
}

Estimate mc_killed_occupation(const LatticeStableLaw& xi, const TestFunction& f, long long m0,
                              double lambda, double v, std::uint64_t n_paths, std::uint64_t seed,
                              int workers) {
  if (m0 == 0) return {0.0, 0.0, "mc", false};
  const double a = xi.norming_a(v);
  std::vector<double> vals(n_paths);
  std::vector<char> flagged(n_paths, 0);
  const double cutoff = 1e-12;
  parallel_for(n_paths, workers, [&](std::size_t i) {
    const std::uint64_t pseed = derive_seed(seed, i);
    Rng walk(pseed, kStreamXi);
    Rng clock(pseed, kStreamClock);
    long long x = m0;
    double t = 0.0, decay = 1.0, acc = 0.0;
    const std::uint64_t step_cap = 40000000;
    std::uint64_t steps = 0;
    for (;;) {
      const double t_next = t + clock.exponential(v);
      const double decay_next = std::exp(-lambda * t_next);
      acc += f(static_cast<double>(x) / a) * (decay - decay_next) / lambda;
      t = t_next;
      decay = decay_next;
      x += xi.sample_one(walk);
      if (x == 0) break;
      if (decay < cutoff || ++steps > step_cap) {
        flagged[i] = 1;
        break;
      }
    }
    vals[i] = acc;
  });
  Estimate out;
  out.value = mean(vals);
  out.err = std_error_of_mean(vals);
  std::size_t n_flagged = 0;
  for (char c : flagged) n_flagged += static_cast<std::size_t>(c);
  if (n_flagged > 0) {
    out.err += f.sup_norm() * cutoff / lambda;
    out.budget_flagged = true;
  }
  out.method = "mc";
  return out;
}

Estimate mc_resolvent(const LatticeStableLaw& xi, const PerturbationLaw& eta,
                      const TestFunction& f, long long m0, double lambda, double v,
                      std::uint64_t n_paths, std::uint64_t seed, int workers) {
  const double a = xi.norming_a(v);
  const double cutoff = 1e-10;
  std::vector<double> vals(n_paths);
  parallel_for(n_paths, workers, [&](std::size_t i) {
    const std::uint64_t pseed = derive_seed(seed, i);
    Rng walk(pseed, kStreamXi);
    Rng jumps(pseed, kStreamEta);
    Rng clock(pseed, kStreamClock);
    long long x = m0;
    double t = 0.0, decay = 1.0, acc = 0.0;
    while (decay >= cutoff) {
      const double t_next = t + clock.exponential(v);
      const double decay_next = std::exp(-lambda * t_next);
      acc += f(static_cast<double>(x) / a) * (decay - decay_next) / lambda;
      t = t_next;
      decay = decay_next;
      x += (x == 0) ? eta.sample_one(jumps) : xi.sample_one(walk);
    }
    vals[i] = acc;
  });
  Estimate out;
  out.value = mean(vals);
  out.err = std_error_of_mean(vals) + f.sup_norm() * cutoff / lambda;
  out.method = "mc";
  return out;
}

Estimate mc_hit_laplace(const LatticeStableLaw& xi, long long m0, double lambda, double rho,
                        std::uint64_t n_paths, std::uint64_t seed, int workers) {
  if (m0 == 0) return {1.0, 0.0, "mc", false};
  std::vector<double> vals(n_paths);
  parallel_for(n_paths, workers, [&](std::size_t i) {
    const std::uint64_t pseed = derive_seed(seed, i);
    Rng walk(pseed, kStreamXi);
    Rng clock(pseed, kStreamClock);
    long long x = m0;
    double t = 0.0;
    double val = 0.0;
    for (;;) {
      t += clock.exponential(rho);
      x += xi.sample_one(walk);
      if (x == 0) {
        val = std::exp(-lambda * t);
        break;
      }
      if (lambda * t > 37.0) break;  // e^{-37} below double noise for the mean
    }
    vals[i] = val;
  });
  Estimate out;
  out.value = mean(vals);
  out.err = std_error_of_mean(vals);
  out.method = "mc";
  return out;
}

}  // namespace skewwalk
