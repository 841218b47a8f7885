#include "skewwalk/transforms.hpp"

#include <cmath>
#include <complex>
#include <limits>
#include <map>
#include <mutex>
#include <numbers>
#include <stdexcept>
#include <tuple>

#include "skewwalk/fft.hpp"

namespace skewwalk {

namespace {

constexpr double kPi = std::numbers::pi;

std::mutex g_cache_mutex;
std::map<std::pair<std::uint64_t, double>, double> g_us_zero_cache;     // (law uid, s)
std::map<std::pair<double, double>, double> g_vlambda_zero_cache;       // (lambda, alpha)

void check_s(double s, bool allow_zero) {
  if (!(s >= (allow_zero ? 0.0 : 1e-300) && s < 1.0))
    throw std::domain_error("s must lie in [0,1)");
}

std::vector<double> spike_breaks(double width, double hi) {
  std::vector<double> breaks;
  for (double w = width; w < hi; w *= 2.0) {
    breaks.push_back(w);
    if (breaks.size() > 64) break;
  }
  return breaks;
}

void add_cos_zero_breaks(std::vector<double>& breaks, double freq, double hi) {
  if (freq < 4.0) return;
  const double step = kPi / freq;
  const std::size_t count = static_cast<std::size_t>(hi / step);
  if (count > 200000) throw std::invalid_argument("oscillation too fine for single-point route");
  for (double z = 0.5 * step; z < hi; z += step) breaks.push_back(z);
}

}  // namespace

double spike_width(const LatticeLaw& law, double s) {
  if (s <= 0.5) return kPi / 2.0;
  const double target = (1.0 - s) / s;
  double lo = 1e-14, hi = kPi;
  if (law.one_minus_charfn(lo) >= target) return lo;
  for (int i = 0; i < 200; ++i) {
    const double mid = std::sqrt(lo * hi);  // bisect in log scale
    if (law.one_minus_charfn(mid) < target)
      lo = mid;
    else
      hi = mid;
  }
  return hi;
}

TransformResult u_s(const LatticeLaw& law, long long x, double s, const QuadratureSpec& spec) {
  check_s(s, true);
  const long long m = std::llabs(x);
  if (s == 0.0) return {m == 0 ? 1.0 : 0.0, 0.0, 0};
  const auto integrand = [&](double theta) {
    const double denom = (1.0 - s) + s * law.one_minus_charfn(theta);
    return std::cos(static_cast<double>(m) * theta) / denom;
  };
  std::vector<double> breaks = spike_breaks(spike_width(law, s), kPi);
  add_cos_zero_breaks(breaks, static_cast<double>(m), kPi);
  TransformResult r = integrate_adaptive(integrand, 0.0, kPi, spec, std::move(breaks));
  r.value /= kPi;
  r.err_estimate /= kPi;
  return r;
}

namespace {

double u_s_zero_cached(const LatticeLaw& law, double s, const QuadratureSpec& spec) {
  const auto key = std::make_pair(law.uid(), s);
  {
    std::lock_guard<std::mutex> lock(g_cache_mutex);
    const auto it = g_us_zero_cache.find(key);
    if (it != g_us_zero_cache.end()) return it->second;
  }
  const double value = u_s(law, 0, s, spec).value;
  std::lock_guard<std::mutex> lock(g_cache_mutex);
  g_us_zero_cache.emplace(key, value);
  return value;
}

}  // namespace

double hit_gf(const LatticeLaw& law, long long x, double s, const QuadratureSpec& spec) {
  check_s(s, false);
  if (x == 0) return 1.0;
  return u_s(law, x, s, spec).value / u_s_zero_cached(law, s, spec);
}

double poisson_hit_laplace(const LatticeLaw& law, long long x, double lambda, double rho,
                           const QuadratureSpec& spec) {
  if (!(lambda > 0.0) || !(rho > 0.0))
    throw std::domain_error("poisson_hit_laplace requires lambda > 0, rho > 0");
  if (x == 0) return 1.0;
  return hit_gf(law, x, rho / (lambda + rho), spec);
}

double poisson_resolvent_kernel(const LatticeLaw& law, long long x, double lambda, double rho,
                                const QuadratureSpec& spec) {
  if (!(lambda > 0.0) || !(rho > 0.0))
    throw std::domain_error("poisson_resolvent_kernel requires lambda > 0, rho > 0");
  return u_s(law, x, rho / (lambda + rho), spec).value / (lambda + rho);
}

TransformResult stable_resolvent_density(double x, double lambda, double alpha,
                                         const QuadratureSpec& spec) {
  if (!(lambda > 0.0)) throw std::domain_error("stable_resolvent_density requires lambda > 0");
  if (!(alpha > 1.0 && alpha < 2.0))
    throw std::domain_error("stable_resolvent_density requires alpha in (1,2)");
  const double freq = std::fabs(x);
  const double A = std::max({spec.tail_split, std::pow(50.0 * lambda, 1.0 / alpha)});
  const auto g = [&](double t) { return 1.0 / (lambda + std::pow(t, alpha)); };

  std::vector<double> breaks = {std::pow(lambda, 1.0 / alpha), 1.0};
  add_cos_zero_breaks(breaks, freq, A);
  const auto head_f = [&](double t) { return std::cos(freq * t) * g(t); };
  TransformResult out = integrate_adaptive(head_f, 0.0, A, spec, std::move(breaks));

  if (freq == 0.0) {
    // sum_n (-lambda)^n A^{1-alpha(n+1)} / (alpha(n+1)-1); ratio lambda/A^alpha <= 1/50
    double term_scale = 1.0;
    double tail = 0.0;
    for (int n = 0; n < 48; ++n) {
      const double term = term_scale * std::pow(A, 1.0 - alpha * (n + 1.0)) / (alpha * (n + 1.0) - 1.0);
      tail += term;
      if (std::fabs(term) < 1e-18 * std::fabs(tail)) break;
      term_scale *= -lambda;
    }
    out.value += tail;
  } else {
    TransformResult t = integrate_cos_tail(g, freq, A, spec);
    out.value += t.value;
    out.err_estimate += t.err_estimate;
    out.n_evals += t.n_evals;
  }
  out.value /= kPi;
  out.err_estimate /= kPi;
  return out;
}

namespace {

double v_lambda_zero_cached(double lambda, double alpha, const QuadratureSpec& spec) {
  const auto key = std::make_pair(lambda, alpha);
  {
    std::lock_guard<std::mutex> lock(g_cache_mutex);
    const auto it = g_vlambda_zero_cache.find(key);
    if (it != g_vlambda_zero_cache.end()) return it->second;
  }
  const double value = stable_resolvent_density(0.0, lambda, alpha, spec).value;
  std::lock_guard<std::mutex> lock(g_cache_mutex);
  g_vlambda_zero_cache.emplace(key, value);
  return value;
}

}  // namespace

double stable_hit_laplace(double x, double lambda, double alpha, const QuadratureSpec& spec) {
  if (x == 0.0) return 1.0;
  return stable_resolvent_density(x, lambda, alpha, spec).value /
         v_lambda_zero_cached(lambda, alpha, spec);
}

double discrete_hit_laplace_scaled(const LatticeStableLaw& law, double x, double lambda, double v,
                                   const QuadratureSpec& spec) {
  if (!(lambda > 0.0)) throw std::domain_error("discrete_hit_laplace_scaled requires lambda > 0");
  if (!(v >= 1.0)) throw std::domain_error("discrete_hit_laplace_scaled requires v >= 1");
  const double a = law.norming_a(v);
  const long long m = static_cast<long long>(std::floor(x * a));
  if (m == 0) return 1.0;
  const double s = v / (v + lambda);
  const double hi = kPi * a;
  const auto denom = [&](double phi) { return lambda + v * law.one_minus_charfn(phi / a); };
  const double freq = std::fabs(static_cast<double>(m)) / a;

  std::vector<double> den_breaks = spike_breaks(a * spike_width(law, s), hi);
  TransformResult den = integrate_adaptive([&](double p) { return 1.0 / denom(p); }, 0.0, hi, spec,
                                           std::move(den_breaks));
  std::vector<double> num_breaks = spike_breaks(a * spike_width(law, s), hi);
  add_cos_zero_breaks(num_breaks, freq, hi);
  TransformResult num = integrate_adaptive(
      [&](double p) { return std::cos(freq * p) / denom(p); }, 0.0, hi, spec,
      std::move(num_breaks));
  return num.value / den.value;
}

std::vector<double> u_s_batch(const LatticeStableLaw& law, double s, long long m_max,
                              double* err_out) {
  check_s(s, true);
  if (m_max < 0) throw std::invalid_argument("u_s_batch requires m_max >= 0");
  if (s == 0.0) {
    std::vector<double> out(static_cast<std::size_t>(m_max) + 1, 0.0);
    out[0] = 1.0;
    if (err_out) *err_out = 0.0;
    return out;
  }
  const double alpha = law.alpha();
  const double a1 = s * law.one_minus_charfn_leading() / ((1.0 - s) * (1.0 - s)) *
                    std::tgamma(1.0 + alpha) * std::sin(kPi * alpha / 2.0) / kPi;
  const double width = spike_width(law, s);
  std::size_t n = next_pow2(std::max<std::size_t>({4096,
                                                   2 * static_cast<std::size_t>(m_max + 1),
                                                   static_cast<std::size_t>(64.0 / width)}));
  const std::size_t n_cap = std::size_t{1} << 23;
  n = std::min(n, n_cap);

  const auto eval = [&](std::size_t size) {
    std::vector<std::complex<double>> h(size);
    const double step = 2.0 * kPi / static_cast<double>(size);
    for (std::size_t j = 0; j <= size / 2; ++j) {
      const double theta = step * static_cast<double>(j);
      const double val = 1.0 / ((1.0 - s) + s * law.one_minus_charfn(theta));
      h[j] = val;
      if (j != 0 && j != size / 2) h[size - j] = val;
    }
    fft(h);
    std::vector<double> out(static_cast<std::size_t>(m_max) + 1);
    const double inv = 1.0 / static_cast<double>(size);
    const double nn = static_cast<double>(size);
    const double alias_scale = a1 * std::pow(nn, -(1.0 + alpha));
    for (std::size_t m = 0; m < out.size(); ++m) {
      const double q = static_cast<double>(m) / nn;
      const double fold =
          alias_scale * (zeta_tail(1.0 + alpha, 1.0 + q) + zeta_tail(1.0 + alpha, 1.0 - q));
      out[m] = h[m].real() * inv - fold;
    }
    return out;
  };

  std::vector<double> prev = eval(n);
  double err = std::numeric_limits<double>::infinity();
  for (int pass = 0; pass < 6; ++pass) {
    if (n >= n_cap) break;
    n *= 2;
    std::vector<double> cur = eval(n);
    err = 0.0;
    for (std::size_t m = 0; m < cur.size(); ++m)
      err = std::max(err, std::fabs(cur[m] - prev[m]));
    prev = std::move(cur);
    if (err < 1e-9) break;
  }
  if (err_out) *err_out = err;
  return prev;
}

}  // namespace skewwalk
