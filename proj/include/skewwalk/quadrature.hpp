#pragma once

#include <cstdint>
#include <functional>
#include <vector>

namespace skewwalk {

struct QuadratureSpec {
  double abs_tol = 1e-9;
  double rel_tol = 1e-8;
  int max_subdivisions = 4000;
  double tail_split = 2.0;  // A: start of the unbounded / oscillatory tail
};

struct TransformResult {
  double value = 0.0;
  double err_estimate = 0.0;
  std::uint64_t n_evals = 0;
};

struct QuadratureFailure : std::exception {
  const char* what() const noexcept override { return "quadrature did not converge"; }
};

// Single Gauss(7)/Kronrod(15) panel on [a,b].
TransformResult gk15(const std::function<double(double)>& f, double a, double b);

// Adaptive bisection driven by per-panel Kronrod error, seeded with optional
// interior break points (integrand scale changes, zeros of an oscillatory
// factor, discontinuities of a test function).
TransformResult integrate_adaptive(const std::function<double(double)>& f, double a, double b,
                                   const QuadratureSpec& spec = {},
                                   std::vector<double> breaks = {});

// integral_A^inf cos(freq*t) g(t) dt for freq > 0 and an eventually monotone
// envelope g -> 0: summed between consecutive zeros of the cosine with Euler
// acceleration of the alternating series.
TransformResult integrate_cos_tail(const std::function<double(double)>& g, double freq, double A,
                                   const QuadratureSpec& spec = {});

}  // namespace skewwalk
