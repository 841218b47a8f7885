#include "skewwalk/quadrature.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <queue>

namespace skewwalk {

namespace {

constexpr double kPi = std::numbers::pi;

// 15-point Kronrod extension of 7-point Gauss (positive half; symmetric).
constexpr double kXgk[8] = {
    0.991455371120812639206854697526329, 0.949107912342758524526189684047851,
    0.864864423359769072789712788640926, 0.741531185599394439863864773280788,
    0.586087235467691130294144838258730, 0.405845151377397166906606412076961,
    0.207784955007898467600689403773245, 0.0};
constexpr double kWgk[8] = {
    0.022935322010529224963732008058970, 0.063092092629978553290700663189204,
    0.104790010322250183839876322541518, 0.140653259715525918745189590510238,
    0.169004726639267902826583426598550, 0.190350578064785409913256402421014,
    0.204432940075298892414161999234649, 0.209482141084727828012999174891714};
constexpr double kWg[4] = {
    0.129484966168869693270611432679082, 0.279705391489276667901467771423780,
    0.381830050505118944950369775488975, 0.417959183673469387755102040816327};

struct Panel {
  double a, b, value, err;
  bool operator<(const Panel& o) const { return err < o.err; }
};

Panel gk15_panel(const std::function<double(double)>& f, double a, double b) {
  const double mid = 0.5 * (a + b);
  const double half = 0.5 * (b - a);
  const double fc = f(mid);
  double kron = kWgk[7] * fc;
  double gauss = kWg[3] * fc;
  double resabs = kWgk[7] * std::fabs(fc);
  for (int i = 0; i < 7; ++i) {
    const double dx = half * kXgk[i];
    const double f1 = f(mid - dx);
    const double f2 = f(mid + dx);
    kron += kWgk[i] * (f1 + f2);
    resabs += kWgk[i] * (std::fabs(f1) + std::fabs(f2));
    if (i % 2 == 1) gauss += kWg[i / 2] * (f1 + f2);
  }
  kron *= half;
  gauss *= half;
  resabs *= std::fabs(half);
  double err = std::fabs(kron - gauss);
  if (err > 0.0) err = std::min(err, std::pow(200.0 * err, 1.5));
  err += 50.0 * 1e-17 * resabs;  // rounding floor
  return {a, b, kron, err};
}

}  // namespace

TransformResult gk15(const std::function<double(double)>& f, double a, double b) {
  const Panel p = gk15_panel(f, a, b);
  return {p.value, p.err, 15};
}

TransformResult integrate_adaptive(const std::function<double(double)>& f, double a, double b,
                                   const QuadratureSpec& spec, std::vector<double> breaks) {
  std::vector<double> pts;
  pts.reserve(breaks.size() + 2);
  pts.push_back(a);
  for (double x : breaks)
    if (x > a && x < b) pts.push_back(x);
  pts.push_back(b);
  std::sort(pts.begin(), pts.end());
  pts.erase(std::unique(pts.begin(), pts.end()), pts.end());

  std::priority_queue<Panel> queue;
  double total = 0.0, err = 0.0;
  std::uint64_t evals = 0;
  for (std::size_t i = 0; i + 1 < pts.size(); ++i) {
    const double lo = pts[i], hi = pts[i + 1];
    if (!(hi > lo)) continue;
    Panel p = gk15_panel(f, lo, hi);
    evals += 15;
    total += p.value;
    err += p.err;
    queue.push(p);
  }
  int splits = 0;
  while (err > std::max(spec.abs_tol, spec.rel_tol * std::fabs(total)) &&
         splits < spec.max_subdivisions && !queue.empty()) {
    const Panel worst = queue.top();
    queue.pop();
    const double mid = 0.5 * (worst.a + worst.b);
    if (mid <= worst.a || mid >= worst.b) continue;  // interval at rounding limit
    Panel l = gk15_panel(f, worst.a, mid);
    Panel r = gk15_panel(f, mid, worst.b);
    evals += 30;
    total += l.value + r.value - worst.value;
    err += l.err + r.err - worst.err;
    queue.push(l);
    queue.push(r);
    ++splits;
  }
  return {total, err, evals};
}

TransformResult integrate_cos_tail(const std::function<double(double)>& g, double freq, double A,
                                   const QuadratureSpec& spec) {
  const auto integrand = [&](double t) { return std::cos(freq * t) * g(t); };
  // first zero of cos(freq t) past A
  const double j0 = std::ceil(freq * A / kPi - 0.5 + 1e-12);
  double z = (j0 + 0.5) * kPi / freq;
  TransformResult out;
  if (z > A) {
    std::vector<double> head_breaks;
    for (double x = A * 2.0; x < z; x *= 2.0) head_breaks.push_back(x);
    QuadratureSpec head_spec = spec;
    head_spec.abs_tol = spec.abs_tol / 2.0;
    TransformResult head = integrate_adaptive(integrand, A, z, head_spec, head_breaks);
    out.value += head.value;
    out.err_estimate += head.err_estimate;
    out.n_evals += head.n_evals;
  }
  // half-period terms; alternating once the envelope is monotone
  const int max_terms = 512;
  std::vector<double> terms;
  terms.reserve(max_terms);
  double panel_err = 0.0;
  for (int i = 0; i < max_terms; ++i) {
    const double z_next = z + kPi / freq;
    const Panel p = gk15_panel(integrand, z, z_next);
    out.n_evals += 15;
    terms.push_back(p.value);
    panel_err += p.err;
    z = z_next;
    if (i >= 7 && std::fabs(terms.back()) < spec.abs_tol * 1e-3) break;
  }
  // Euler transform of the alternating tail: repeated averaging of the last
  // partial sums; the spread of the final column bounds the truncation error.
  std::vector<double> partial(terms.size());
  double run = 0.0;
  for (std::size_t i = 0; i < terms.size(); ++i) {
    run += terms[i];
    partial[i] = run;
  }
  const std::size_t m = std::min<std::size_t>(24, partial.size());
  std::vector<double> avg(partial.end() - m, partial.end());
  double accel_err = std::fabs(terms.back());
  double prev_best = avg.back();
  while (avg.size() > 1) {
    for (std::size_t i = 0; i + 1 < avg.size(); ++i) avg[i] = 0.5 * (avg[i] + avg[i + 1]);
    avg.pop_back();
    accel_err = std::fabs(avg.back() - prev_best);
    prev_best = avg.back();
  }
  out.value += avg[0];
  out.err_estimate += panel_err + accel_err;
  return out;
}

}  // namespace skewwalk
