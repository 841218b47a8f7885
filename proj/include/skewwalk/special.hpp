#pragma once

#include <vector>

namespace skewwalk {

// Riemann zeta for real s != 1 (Euler-Maclaurin; reflection for s < 0.5).
double riemann_zeta(double s);

// Hurwitz-style tail sum_{k>=0} (n+k)^{-s} for s > 1 and real n > 0; for
// integer n this is the truncated zeta tail sum_{k>=n} k^{-s}.
double zeta_tail(double s, double n);

// K_alpha = -(Gamma(2-alpha)/(alpha-1)) * cos(pi*alpha/2), alpha in (1,2).
// Scale constant of the symmetric alpha-stable limit; the tail norming a(v)
// solves v * P{|xi| > a(v)} = 1/K_alpha so that v(1 - psi(theta/a(v)))
// tends to |theta|^alpha.
double stable_norming_constant(double alpha);

// F(theta) = sum_{k>=1} k^{-(1+gamma)} cos(k*theta) for |theta| <= pi,
// evaluated through the series expansion of the polylogarithm
// Li_{1+gamma}(e^{i theta}) about theta = 0:
//   F(theta) = Gamma(-gamma) cos(pi*gamma/2) |theta|^gamma
//              + sum_{m>=0} (-1)^m zeta(1+gamma-2m) theta^{2m} / (2m)!.
// The expansion converges geometrically on |theta| <= pi. deficit() returns
// F(0) - F(theta) without cancellation, which is what step-law code needs
// for 1 - psi at small theta.
class CosinePowerSeries {
 public:
  explicit CosinePowerSeries(double gamma);

  double value(double theta) const;    // F(theta), theta reduced to [-pi, pi]
  double deficit(double theta) const;  // F(0) - F(theta) >= 0

  double gamma() const { return gamma_; }
  // Coefficient of |theta|^gamma in F; negative for gamma in (1,2).
  double leading_coefficient() const { return lead_; }

 private:
  double gamma_;
  double lead_;
  std::vector<double> even_coeff_;  // (-1)^m zeta(1+gamma-2m)/(2m)!, m = 0..M
};

}  // namespace skewwalk
