#include "scalelab/exponents.hpp"

#include <stdexcept>

#include "scalelab/types.hpp"

namespace scalelab {

namespace {

const Rational kHalf(1, 2);
const Rational kOne(1);
const Rational kTwo(2);

void require(bool ok, const char* msg) {
  if (!ok) throw ConfigError(msg);
}

// exclusive Sobolev window for the p-dependent weak-eigenfunction threshold
bool r_in_interest_window(const Rational& p_star, const Rational& r) {
  return r > kTwo && r < kTwo * p_star / (p_star - kTwo);
}

}  // namespace

Rational default_p_star(int d) {
  require(d >= 1, "dimension d must be positive");
  if (d < 3) throw ConfigError("p_star has no default for d < 3; supply it explicitly");
  return Rational(2 * d, d - 2);
}

ExponentQuery ExponentQuery::make(int d, std::optional<Rational> p_star) {
  ExponentQuery q;
  q.d = d;
  q.p_star = p_star ? *p_star : default_p_star(d);
  require(q.p_star > kTwo, "p_star must exceed 2");
  return q;
}

Rational q_gamma_low(const Rational& p_star, const Rational& gamma) {
  require(p_star > kTwo, "p_star must exceed 2");
  require(gamma >= Rational(0) && gamma <= kHalf, "q_gamma_low needs 0 <= gamma <= 1/2");
  return (kHalf + gamma - kTwo * gamma / p_star).reciprocal();
}

Rational p_gamma_low(const Rational& p_star, const Rational& p, const Rational& gamma) {
  require(p_star > kTwo, "p_star must exceed 2");
  require(gamma >= Rational(0) && gamma <= kHalf, "p_gamma_low needs 0 <= gamma <= 1/2");
  require(!p.is_infinite() || gamma == kHalf, "p_gamma_low needs finite p unless gamma = 1/2");
  require(p >= kTwo, "p must be at least 2");
  return (kTwo * gamma / p_star + (kOne - kTwo * gamma) / p).reciprocal();
}

Rational q_gamma_high(const Rational& p_star, const Rational& p, const Rational& gamma) {
  require(p_star > kTwo, "p_star must exceed 2");
  require(gamma >= kHalf && gamma <= kOne, "q_gamma_high needs 1/2 <= gamma <= 1");
  require(!p.is_infinite() || gamma == kHalf, "q_gamma_high needs finite p unless gamma = 1/2");
  require(p >= kTwo, "p must be at least 2");
  return (kOne - (kTwo * gamma - kOne) / p - (kTwo - kTwo * gamma) / p_star).reciprocal();
}

Rational p_gamma_high(const Rational& p_star, const Rational& gamma) {
  require(p_star > kTwo, "p_star must exceed 2");
  require(gamma >= kHalf && gamma <= kOne, "p_gamma_high needs 1/2 <= gamma <= 1");
  return (gamma - kHalf + (kTwo - kTwo * gamma) / p_star).reciprocal();
}

GammaBounds gamma_bounds(const ExponentQuery& q, GrowthCase c) {
  require(q.p_star > kTwo, "p_star must exceed 2");
  require(!q.sigma.is_infinite() && q.sigma > Rational(0), "sigma must be finite and positive");
  require(q.r >= kTwo, "r must be at least 2");

  GammaBounds out;
  const Rational& ps = q.p_star;
  switch (c) {
    case GrowthCase::L2: {
      out.gamma0 = kHalf;
      out.gamma1 = kHalf;
      out.lo = kHalf;
      out.hi = kOne;
      if (q.d == 1) {
        if (q.r != kTwo) out.violations.push_back("r = 2 (d = 1)");
        if (q.sigma != kTwo) out.violations.push_back("sigma = 2 (d = 1)");
      } else if (q.d == 2) {
        if (!(q.r > kTwo)) out.violations.push_back("r > 2 (d = 2)");
        if (!(q.sigma < kTwo)) out.violations.push_back("sigma < 2 (d = 2)");
      } else {
        if (q.r != kTwo * ps / (ps - kTwo)) out.violations.push_back("r = 2 p*/(p* - 2) (d >= 3)");
        if (q.sigma != kTwo - kTwo / ps) out.violations.push_back("sigma = 2 - 2/p* (d >= 3)");
      }
      out.feasible = out.violations.empty();
      return out;
    }
    case GrowthCase::L2p: {
      require(!q.p.is_infinite(), "case L2p needs finite p");
      require(q.p > ps, "case L2p needs p > p_star");
      const Rational& p = q.p;
      if (!(q.r > kTwo * p / (p - kTwo))) out.violations.push_back("r > 2p/(p - 2)");
      if (!(q.sigma < kTwo - kTwo / p)) out.violations.push_back("sigma < 2 - 2/p");
      Rational denom = Rational(4) * (p - ps);
      out.gamma0 = ((q.sigma - kTwo) * ps * p - kTwo * ps + Rational(4) * p) / denom;
      // written with r under the only r-term so r = inf degrades to the limit
      out.gamma1 = (kTwo * p * ps / q.r - p * ps - kTwo * ps + Rational(4) * p) / denom;
      out.lo = max(max(out.gamma0, out.gamma1), kHalf);
      out.hi = kOne;
      out.feasible = out.violations.empty() && out.lo < out.hi;
      return out;
    }
    case GrowthCase::W1: {
      if (!(q.r > ps / (ps - kTwo))) out.violations.push_back("r > p*/(p* - 2)");
      if (!(q.sigma < ps - kOne)) out.violations.push_back("sigma < p* - 1");
      out.gamma0 = (kTwo * q.sigma - ps) / (kTwo * ps - Rational(4));
      out.gamma1 = ps / (q.r * (ps - kTwo)) - kHalf;
      out.lo = max(max(out.gamma0, out.gamma1), Rational(0));
      out.hi = kHalf;
      out.feasible = out.violations.empty() && out.lo < out.hi;
      return out;
    }
  }
  throw std::logic_error("unreachable growth case");
}

Rational weakev_gamma0(const Rational& p_star, const Rational& r) {
  require(p_star > kTwo, "p_star must exceed 2");
  require(r >= kTwo, "r must be at least 2");
  return kOne - p_star / ((p_star - kTwo) * r);
}

Rational weakev_gammap(const Rational& p_star, const Rational& r, const Rational& p) {
  require(p_star > kTwo, "p_star must exceed 2");
  require(r_in_interest_window(p_star, r), "2 < r < 2 p*/(p* - 2)");
  require(p > p_star, "p must exceed p_star");
  return kHalf * (kHalf - kOne / r - kOne / p) / (kOne / p_star - kOne / p);
}

WeakevReport weakev_thresholds(const ExponentQuery& q) {
  WeakevReport out;
  out.gamma0_tilde = weakev_gamma0(q.p_star, q.r);
  if (r_in_interest_window(q.p_star, q.r)) {
    out.gammainf_tilde = weakev_gammap(q.p_star, q.r, Rational::infinity());
    if (!q.p.is_infinite()) {
      out.gammap_tilde = weakev_gammap(q.p_star, q.r, q.p);
      Rational p_floor = kTwo * q.r / (q.r - kTwo);
      if (q.p < p_floor)
        out.notes.push_back("p < 2r/(r - 2): threshold computed but outside the certified range");
    }
  } else {
    out.notes.push_back("r outside (2, 2 p*/(p* - 2)): gammap/gammainf thresholds undefined");
  }
  return out;
}

OverlapResult overlap_check(int d, const Rational& r, const Rational& sigma) {
  require(d >= 3, "overlap_check needs d >= 3");
  require(r >= kTwo && !r.is_infinite(), "r must be finite and at least 2");
  require(!sigma.is_infinite() && sigma > Rational(0), "sigma must be finite and positive");

  OverlapResult out;
  Rational rd(d);
  if (d >= 5) {
    if (!(r >= Rational(2 * d, 3))) out.violations.push_back("r >= 2d/3");
    if (!(r < rd)) out.violations.push_back("r < d");
    Rational bound = (Rational(d + 4) * r - Rational(2 * d)) / (Rational(d - 2) * r);
    if (!(sigma <= bound)) out.violations.push_back("sigma <= ((d+4) r - 2d)/((d-2) r)");
  } else {
    if (!(r > Rational(d * d, 2 * d - 2))) out.violations.push_back("r > d^2/(2d - 2)");
    if (!(r < rd)) out.violations.push_back("r < d");
    Rational bound = (Rational(d * d) * r - Rational(4 * d)) / (Rational((d - 2) * (d - 2)) * r);
    if (!(sigma < bound)) out.violations.push_back("sigma < (d^2 r - 4d)/((d-2)^2 r)");
  }
  out.ok = out.violations.empty();
  if (out.ok) {
    ExponentQuery q = ExponentQuery::make(d);
    q.r = r;
    q.sigma = sigma;
    GammaBounds gb = gamma_bounds(q, GrowthCase::W1);
    out.witness = gb.lo;
  }
  return out;
}

LipResult lip_admissible(const ExponentQuery& q, LipCase c) {
  require(q.p_star > kTwo, "p_star must exceed 2");
  require(!q.sigma.is_infinite() && q.sigma > Rational(0), "sigma must be finite and positive");

  LipResult out;
  const Rational& ps = q.p_star;
  // The target exponent comes from the low-scale formula evaluated at the
  // given gamma; the two half-scale formulas agree at gamma = 1/2.
  out.q_gamma = (kHalf + q.gamma - kTwo * q.gamma / ps).reciprocal();

  switch (c) {
    case LipCase::LL2: {
      require(q.gamma >= kHalf && q.gamma < kOne, "case LL2 needs gamma in [1/2, 1)");
      out.p_tilde = kTwo;
      if (q.d == 1) {
        out.sigma_bound = kTwo;
        out.sigma_strict = false;
      } else if (q.d == 2) {
        out.sigma_bound = kTwo;
        out.sigma_strict = true;
      } else {
        out.sigma_bound = kTwo - kTwo / ps;
        out.sigma_strict = false;
      }
      break;
    }
    case LipCase::LL2p: {
      require(!q.p.is_infinite() && q.p > ps, "case LL2p needs finite p > p_star");
      require(q.gamma >= kHalf && q.gamma < kOne, "case LL2p needs gamma in [1/2, 1)");
      out.p_tilde = kTwo;
      out.sigma_bound = kTwo - kTwo / q.p;
      out.sigma_strict = true;
      break;
    }
    case LipCase::LW1: {
      require(q.gamma >= Rational(0) && q.gamma < kHalf, "case LW1 needs gamma in [0, 1/2)");
      out.p_tilde = ps;
      out.sigma_bound = ps - kOne;
      out.sigma_strict = true;
      break;
    }
  }
  bool within = out.sigma_strict ? q.sigma < out.sigma_bound : q.sigma <= out.sigma_bound;
  if (!within) out.violations.push_back("sigma bound exceeded");
  out.admissible = within;
  return out;
}

}  // namespace scalelab
