#include "ffcm/morgenstern.hpp"

#include <limits>

namespace ffcm {

MorgensternForm MorgensternForm::make(Fq f, FqElem nu) {
  if (f.is_square(nu)) throw DomainError("MorgensternForm: nu must be a non-square in F_q");
  MorgensternForm m{f, nu, {Poly(f), Poly(f), Poly(f), Poly(f)}};
  Poly tm1 = Poly::t(f) - Poly::constant(f, 1);
  m.eta[0] = Poly::constant(f, 1);
  m.eta[1] = Poly::constant(f, f.neg(nu));
  m.eta[2] = -tm1;
  m.eta[3] = tm1.mul_scalar(nu);
  return m;
}

Poly MorgensternForm::eval(const PolyVec4& x) const {
  Poly acc(field);
  for (int i = 0; i < 4; ++i) acc = acc + eta[i] * x[i] * x[i];
  return acc;
}

Poly MorgensternForm::discriminant() const {
  Poly acc = Poly::constant(field, 1);
  for (const auto& e : eta) acc = acc * e;
  return acc;
}

Poly Tm1Frac::reduce_mod(const Poly& r) const {
  if (r.deg() == 0) return Poly::zero(num.field());
  Poly x = num % r;
  if (e == 0) return x;
  Fq f = num.field();
  Poly tm1 = Poly::t(f) - Poly::constant(f, 1);
  Poly d = tm1;
  for (int i = 1; i < e; ++i) d = d * tm1;
  return (x * inv_mod(d, r)) % r;
}

SystemParams SystemParams::make(MorgensternForm form, Poly f, Poly g, PolyVec4 lambda,
                                bool strict) {
  if (f.is_zero()) throw DomainError("SystemParams: f must be nonzero");
  if (g.is_zero()) throw DomainError("SystemParams: g must be nonzero");
  Fq fq = form.field;
  SystemParams p{std::move(form), std::move(f), std::move(g), std::move(lambda), Poly(fq),
                 0, 1, strict};
  p.g = p.g.monic();
  for (auto& l : p.lambda)
    if (p.g.deg() > 0) l = l % p.g;
  Poly diff = p.f - p.form.eval(p.lambda);
  if (!p.g.divides(diff)) throw DomainError("SystemParams: g must divide f - F(lambda)");
  p.k = diff / p.g;
  p.R = p.f.deg() / 2 - p.g.deg() + 1;
  p.Q = p.R + 1;
  if (p.R < 0) throw DomainError("SystemParams: R = floor(deg f/2) - deg g + 1 must be >= 0");
  if (strict) {
    Poly fd = p.f * p.form.discriminant();
    if (p.g.deg() > 0 && gcd_monic(fd, p.g).deg() != 0)
      throw DomainError("SystemParams: (f*Delta, g) = 1 required");
    bool unit = p.g.deg() == 0;
    for (const auto& l : p.lambda)
      if (!l.is_zero() && gcd_monic(l, p.g).deg() == 0) unit = true;
    if (!unit) throw DomainError("SystemParams: some lambda_i must be coprime to g");
  }
  return p;
}

Tm1Frac SystemParams::dual_form(const PolyVec4& c) const {
  // F*(c) = c1^2 - c2^2/nu + (-c3^2 + c4^2/nu) / (t-1)
  Fq fq = form.field;
  FqElem nuinv = fq.inv(form.nu);
  Poly head = c[0] * c[0] - (c[1] * c[1]).mul_scalar(nuinv);
  Poly tail = -(c[2] * c[2]) + (c[3] * c[3]).mul_scalar(nuinv);
  Poly tm1 = Poly::t(fq) - Poly::constant(fq, 1);
  Poly num = head * tm1 + tail;
  if (num.is_zero()) return {Poly(fq), 0};
  if (tm1.divides(num)) return {num / tm1, 0};
  return {num, 1};
}

std::optional<int> SystemParams::kappa_exp(const PolyVec4& c) const {
  int best = std::numeric_limits<int>::min();
  bool any = false;
  for (const auto& ci : c)
    if (!ci.is_zero()) {
      best = std::max(best, ci.deg() - g.deg());
      any = true;
    }
  if (!any) return std::nullopt;
  return best;
}

int SystemParams::pi_c(const PolyVec4& c) const {
  int d12 = std::max(c[0].deg(), c[1].deg());
  int d34 = std::max(c[2].deg(), c[3].deg());
  if (d34 > d12 && f.deg() % 2 == 0) return 0;
  return 1;
}

std::optional<Poly> SystemParams::beta_of_c(const PolyVec4& c) const {
  if (g.deg() == 0) return Poly::zero(form.field);
  Fq fq = form.field;
  Poly two = Poly::constant(fq, fq.from_int(2));
  // Find a coordinate with 2 eta_j lambda_j invertible mod g and solve there.
  std::optional<Poly> beta;
  for (int j = 0; j < 4; ++j) {
    Poly coeff = (two * form.eta[j] * lambda[j]) % g;
    if (coeff.is_zero()) continue;
    if (gcd_monic(coeff, g).deg() == 0) {
      beta = (inv_mod(coeff, g) * (c[j] % g)) % g;
      break;
    }
  }
  if (!beta) {
    // No invertible coordinate: solve the joint congruence coordinatewise.
    // Start with beta unconstrained and intersect solution sets.
    // (Only used for relaxed instances; strict params always hit the branch
    // above.)
    for (std::uint64_t i = 0; i < ResidueIndexer(g).size(); ++i) {
      Poly cand = ResidueIndexer(g).from_index(i);
      bool ok = true;
      for (int j = 0; j < 4; ++j) {
        Poly lhs = (two * form.eta[j] * lambda[j] * cand - c[j]) % g;
        if (!lhs.is_zero()) {
          ok = false;
          break;
        }
      }
      if (ok) return cand;
    }
    return std::nullopt;
  }
  // Verify all four congruences.
  for (int j = 0; j < 4; ++j) {
    Poly lhs = (two * form.eta[j] * lambda[j] * (*beta) - c[j]) % g;
    if (!lhs.is_zero()) return std::nullopt;
  }
  return beta;
}

}  // namespace ffcm
