#pragma once

#include <array>
#include <optional>

#include "ffcm/poly.hpp"

namespace ffcm {

using PolyVec4 = std::array<Poly, 4>;

// F(x) = x1^2 - nu x2^2 - (t-1) x3^2 + nu (t-1) x4^2, nu a non-square in F_q.
// The anisotropic quaternary form whose unit group builds the Morgenstern
// graphs; eta = (1, -nu, -(t-1), nu(t-1)), A = diag(eta).
struct MorgensternForm {
  Fq field;
  FqElem nu;
  PolyVec4 eta;

  static MorgensternForm make(Fq f, FqElem nu);

  Poly eval(const PolyVec4& x) const;
  // discriminant = prod eta_i = nu^2 (t-1)^2
  Poly discriminant() const;
};

// Element of F_q[t, (t-1)^-1]: num / (t-1)^e, reduced (e = 0 or (t-1) !| num).
// F*(c) = sum c_i^2 / eta_i lives here.
struct Tm1Frac {
  Poly num;
  int e = 0;  // denominator exponent of (t-1); 0 or 1 after reduction

  bool is_poly() const { return e == 0; }
  bool is_zero() const { return num.is_zero(); }
  // norm exponent: deg num - e (value |num|/q^e); requires nonzero
  int ord() const { return num.deg() - e; }
  // Reduce into O/(r): requires gcd(t-1, r) = 1 when e > 0.
  Poly reduce_mod(const Poly& r) const;
};

// The strong-approximation instance: F(x) = f, x = lambda mod g, with the
// box |x| <= |f|^(1/2) and dissection level Q = R+1.
struct SystemParams {
  MorgensternForm form;
  Poly f, g;
  PolyVec4 lambda;
  Poly k;     // (f - F(lambda)) / g
  int R = 0;  // floor(deg f / 2) - deg g + 1
  int Q = 1;  // R + 1
  bool strict = true;  // full invariants hold (see make)

  // Validates: g | f - F(lambda); R >= 0.  With strict=true additionally:
  // (f*Delta, g) = 1 and some lambda_i coprime to g (the paper's standing
  // assumptions; the closed forms require them).
  static SystemParams make(MorgensternForm form, Poly f, Poly g, PolyVec4 lambda,
                           bool strict = true);

  // F*(c) = sum c_i^2 / eta_i.
  Tm1Frac dual_form(const PolyVec4& c) const;
  // max_i |c_i / g| as a q-exponent; nullopt means c = 0 (kappa = 0).
  std::optional<int> kappa_exp(const PolyVec4& c) const;
  // pi_c = 0 iff max(|c3|,|c4|) > max(|c1|,|c2|) and deg f even, else 1.
  int pi_c(const PolyVec4& c) const;
  // Smallest-degree beta mod g with c = 2 beta A lambda mod g (all four
  // coordinates); nullopt when the congruence has no solution.
  std::optional<Poly> beta_of_c(const PolyVec4& c) const;
};

}  // namespace ffcm
