#pragma once

#include <optional>
#include <string>
#include <vector>

#include "scalelab/rational.hpp"

namespace scalelab {

// Lebesgue-exponent bookkeeping for the fractional-scale embeddings.
// Everything is exact rational arithmetic; p_star is the Sobolev conjugate
// 2d/(d-2) by default for d >= 3 and must be supplied for d in {1,2}.

Rational default_p_star(int d);

struct ExponentQuery {
  int d = 3;
  Rational p_star;  // > 2
  Rational gamma;
  Rational p = Rational::infinity();
  Rational r = Rational::infinity();
  Rational sigma = Rational(1);

  static ExponentQuery make(int d, std::optional<Rational> p_star = std::nullopt);
};

// Target space L_{q} for the low half-scale H_{-gamma}, gamma in [0, 1/2]:
// q = (1/2 + gamma - 2 gamma / p*)^{-1}; equals 2d/(d + 4 gamma) at default p*.
Rational q_gamma_low(const Rational& p_star, const Rational& gamma);

// Low half-scale with L_p data, gamma in [0, 1/2]:
// p_gamma = (2 gamma / p* + (1 - 2 gamma)/p)^{-1}; p finite unless gamma = 1/2.
Rational p_gamma_low(const Rational& p_star, const Rational& p, const Rational& gamma);

// High half-scale, gamma in [1/2, 1]:
// q = (1 - (2 gamma - 1)/p - (2 - 2 gamma)/p*)^{-1}; p finite unless gamma = 1/2.
Rational q_gamma_high(const Rational& p_star, const Rational& p, const Rational& gamma);

// High half-scale: p_gamma = (gamma - 1/2 + (2 - 2 gamma)/p*)^{-1}.
Rational p_gamma_high(const Rational& p_star, const Rational& gamma);

enum class GrowthCase { L2, L2p, W1 };

struct GammaBounds {
  Rational gamma0;
  Rational gamma1;
  Rational lo;   // max of the structural lower bounds and the case floor
  Rational hi;   // exclusive ceiling (1 or 1/2)
  bool feasible = false;
  std::vector<std::string> violations;  // named inequalities that failed
};

// Admissible range of gamma for the superposition estimates, per growth case:
//   L2  : floor 1/2, preconditions pin r and sigma outright;
//   L2p : gamma0 = ((sigma-2) p* p - 2 p* + 4 p)/(4(p - p*)),
//         gamma1 = (2 p p*/r - p p* - 2 p* + 4 p)/(4(p - p*));
//   W1  : gamma0 = (2 sigma - p*)/(2 p* - 4), gamma1 = p*/(r(p*-2)) - 1/2.
// Infeasible queries come back with feasible=false and the violated inequality
// names; genuinely out-of-domain inputs (sigma <= 0, r < 2, ...) throw.
GammaBounds gamma_bounds(const ExponentQuery& q, GrowthCase c);

struct WeakevReport {
  Rational gamma0_tilde;                 // threshold for L_{p*'} data, r in [2, inf]
  std::optional<Rational> gammap_tilde;  // threshold for L_p data, needs 2 < r < 2p*/(p*-2)
  std::optional<Rational> gammainf_tilde;
  std::vector<std::string> notes;
};

// gamma0~ = 1 - p*/((p*-2) r)
Rational weakev_gamma0(const Rational& p_star, const Rational& r);

// gammap~ = (1/2)(1/2 - 1/r - 1/p) / (1/p* - 1/p); p = inf gives (r-2) p*/(4r).
// Requires 2 < r < 2 p*/(p* - 2) and p > p*.
Rational weakev_gammap(const Rational& p_star, const Rational& r, const Rational& p);

WeakevReport weakev_thresholds(const ExponentQuery& q);

struct OverlapResult {
  bool ok = false;
  Rational witness;  // admissible gamma = max(0, gamma0, gamma1), valid iff ok
  std::vector<std::string> violations;
};

// Whether the gradient-growth window and the weak-eigenfunction window overlap
// for dimension d, decay exponent r, growth sigma (default p*):
//   d >= 5 : r in [2d/3, d) and sigma <= ((d+4) r - 2d)/((d-2) r);
//   d = 3,4: r in (d^2/(2d-2), d) and sigma < (d^2 r - 4d)/((d-2)^2 r).
OverlapResult overlap_check(int d, const Rational& r, const Rational& sigma);

enum class LipCase { LL2, LL2p, LW1 };

struct LipResult {
  bool admissible = false;
  Rational p_tilde;
  Rational q_gamma;
  Rational sigma_bound;
  bool sigma_strict = false;
  std::vector<std::string> violations;
};

// Local-Lipschitz admissibility of the superposition operator between the
// fractional spaces: returns the working exponent p~ (2 or p*), the target
// exponent q_gamma, and the binding growth bound on sigma.
LipResult lip_admissible(const ExponentQuery& q, LipCase c);

}  // namespace scalelab
