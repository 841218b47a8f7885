#pragma once

#include <vector>

#include "skewwalk/laws.hpp"
#include "skewwalk/quadrature.hpp"

namespace skewwalk {

// u_s(x) = 1{x=0} + sum_{k>=1} s^k P{S(k) = -x}: the return-time generating
// kernel of the walk, evaluated by Fourier inversion
//   u_s(x) = (1/pi) int_0^pi cos(x theta) / (1 - s psi(theta)) dtheta.
// Even in x for symmetric laws. s in [0,1).
TransformResult u_s(const LatticeLaw& law, long long x, double s, const QuadratureSpec& spec = {});

// E_x s^sigma = u_s(x)/u_s(0), sigma the first hitting time of 0. s in (0,1).
double hit_gf(const LatticeLaw& law, long long x, double s, const QuadratureSpec& spec = {});

// E_x e^{-lambda sigma~} for the chain run on a rate-rho Poisson clock;
// equals the generating function at s = rho/(lambda+rho).
double poisson_hit_laplace(const LatticeLaw& law, long long x, double lambda, double rho,
                           const QuadratureSpec& spec = {});

// (lambda+rho)^{-1} u_s(x): resolvent kernel of the Poissonized walk at 0.
double poisson_resolvent_kernel(const LatticeLaw& law, long long x, double lambda, double rho,
                                const QuadratureSpec& spec = {});

// v_lambda(x) = (1/pi) int_0^inf cos(x theta) / (lambda + theta^alpha) dtheta:
// resolvent density of the symmetric alpha-stable process. Even in x;
// maximal at 0 where v_lambda(0) = lambda^{1/alpha-1} / (alpha sin(pi/alpha)).
TransformResult stable_resolvent_density(double x, double lambda, double alpha,
                                         const QuadratureSpec& spec = {});

// E_x e^{-lambda sigma(U_alpha)} = v_lambda(x)/v_lambda(0).
double stable_hit_laplace(double x, double lambda, double alpha, const QuadratureSpec& spec = {});

// E_{floor(x a(v))} e^{-(lambda/v) sigma(S o N)} via the ratio of the two
// integrals over [-pi a(v), pi a(v)] in the scaled variable. Agrees with
// poisson_hit_laplace(floor(x a(v)), lambda/v, 1) up to quadrature error.
double discrete_hit_laplace_scaled(const LatticeStableLaw& law, double x, double lambda, double v,
                                   const QuadratureSpec& spec = {});

// u_s(m) for all m = 0..m_max at once: the periodic integrand is sampled on a
// uniform N-grid and inverted with one FFT, which by Poisson summation yields
// the alias-folded coefficients sum_r u_s(m + rN). The fold is removed with
// the exact alias sum of the leading spatial asymptotic
//   u_s(j) ~ [s c_psi/(1-s)^2] Gamma(1+alpha) sin(pi alpha/2)/pi * j^{-(1+alpha)}
// (c_psi the |theta|^alpha coefficient of 1-psi); the grid is doubled until
// the corrected values stabilize. err_out reports the last doubling change.
std::vector<double> u_s_batch(const LatticeStableLaw& law, double s, long long m_max,
                              double* err_out = nullptr);

// width of the near-singularity of 1/(1 - s psi): theta with
// s * (1 - psi(theta)) = 1 - s
double spike_width(const LatticeLaw& law, double s);

}  // namespace skewwalk
