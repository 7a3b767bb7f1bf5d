#include "ffcm/characters.hpp"

#include <map>

namespace ffcm {

Cyc e_q(const Fq& f, FqElem a) { return Cyc::root(f.p(), f.trace(a)); }

Cyc psi(const Laurent& alpha) { return e_q(alpha.field(), alpha.coeff(-1)); }

Cyc psi_r(const Poly& x, const Poly& r) {
  return Cyc::root(r.field().p(), psi_r_exponent(x, r));
}

std::uint32_t psi_r_exponent(const Poly& x, const Poly& r) {
  if (r.is_zero()) throw DomainError("psi_r: zero modulus");
  if (r.deg() == 0) return 0;
  Poly xr = x % r;
  if (xr.is_zero()) return 0;
  // Coefficient of t^-1 in xr / r; deg xr < deg r so the expansion starts
  // strictly below 0 and two terms suffice.
  Laurent e = Laurent::from_rational(xr, r, -1);
  return r.field().trace(e.coeff(-1));
}

Cyc psi_r_frac(const Poly& num, const Poly& den, const Poly& r) {
  if (r.deg() == 0) return Cyc::one(r.field().p());
  Poly x = (num % r) * inv_mod(den, r);
  return psi_r(x, r);
}

Cyc gauss_G(const Fq& f, FqElem a) {
  Cyc acc = Cyc::zero(f.p());
  for (FqElem x = 0; x < f.q(); ++x) acc += e_q(f, f.mul(a, f.mul(x, x)));
  return acc;
}

Cyc gauss_tau(const Poly& r) {
  if (r.is_zero()) throw DomainError("gauss_tau: zero modulus");
  std::uint32_t p = r.field().p();
  if (r.deg() == 0) return Cyc::one(p);
  ResidueIndexer idx(r);
  Cyc acc = Cyc::zero(p);
  for (std::uint64_t i = 0; i < idx.size(); ++i) {
    Poly x = idx.from_index(i);
    acc += psi_r(x * x, r);
  }
  return acc;
}

CycQ gauss_factor(const Laurent& h) {
  const Fq& f = h.field();
  std::uint32_t p = f.p(), k = f.ext_degree();
  int d = h.ord();  // throws if the top coefficient is unknown/zero
  if (d % 2 == 0) {
    // min(|h|^-1/2, 1): q^(-d/2) for d >= 0, else 1.
    int e = std::max(d / 2, 0);
    return CycQ::p_power(p, -static_cast<int>(k) * e);
  }
  if (d >= 1) {
    // |h|^(-1/2) eps_h = G(a_h) * q^-((d+1)/2)  (|G| = sqrt(q))
    Cyc G = gauss_G(f, h.coeff(d));
    return CycQ(G, static_cast<int>(k) * ((d + 1) / 2));
  }
  return CycQ::one(p);
}

Cyc kubota_sum(const Laurent& gamma, int N) {
  const Fq& f = gamma.field();
  std::uint32_t p = f.p();
  if (N < 0) throw DomainError("kubota_sum: N >= 0 required");
  // psi(gamma b) for deg b < N reads gamma coefficients at -1-j, j < N.
  // Factor the finite sum over the coefficients of b.
  Cyc acc = Cyc::one(p);
  for (int j = 0; j < N; ++j) {
    FqElem g = gamma.coeff(-1 - j);
    Cyc term = Cyc::zero(p);
    for (FqElem b = 0; b < f.q(); ++b) term += e_q(f, f.mul(b, g));
    acc *= term;
  }
  return acc;
}

Cyc kubota_sum_closed(const Laurent& gamma, int N) {
  const Fq& f = gamma.field();
  // ((gamma)) = strictly-negative-degree part; |((gamma))| < q^-N  iff the
  // coefficients at -1 .. -N all vanish.
  bool small = true;
  for (int j = 1; j <= N; ++j)
    if (gamma.coeff(-j) != 0) small = false;
  std::int64_t qN = 1;
  for (int j = 0; j < N; ++j) qN *= f.q();
  return small ? Cyc::integer(f.p(), qN) : Cyc::zero(f.p());
}

CycQ kubota_integral(const Laurent& gamma, int Y) {
  const Fq& f = gamma.field();
  std::uint32_t p = f.p(), k = f.ext_degree();
  // alpha = sum_{j <= Y-1} a_j t^j; the phase reads gamma at -1-j.  Cells with
  // -1-j below gamma's knowledge must be provably irrelevant.
  if (!gamma.exact()) {
    // j ranges down to -infinity; gamma coefficient indices -1-j up to +inf.
    // Unknown indices are those < gamma.lo(); they pair with j > -1-lo.
    // Those j are relevant only if j <= Y-1, i.e. unknown data matters when
    // Y-1 > -1-gamma.lo().
    if (Y - 1 > -1 - gamma.lo())
      throw PrecisionError("kubota_integral: gamma precision insufficient");
  }
  CycQ acc = CycQ::p_power(p, static_cast<int>(k) * Y);  // measure of the ball
  // Only finitely many factors differ from 1: those with gamma(-1-j) != 0.
  for (int j = Y - 1; j >= -1 - gamma.hi(); --j) {
    FqElem g = gamma.coeff(-1 - j);
    if (g == 0) continue;
    Cyc term = Cyc::zero(p);
    for (FqElem a = 0; a < f.q(); ++a) term += e_q(f, f.mul(a, g));
    acc *= CycQ(term, static_cast<int>(k));  // average over the q cell values
  }
  return acc;
}

CycQ kubota_integral_closed(const Laurent& gamma, int Y) {
  const Fq& f = gamma.field();
  std::uint32_t p = f.p(), k = f.ext_degree();
  bool small;
  if (gamma.is_zero_to_precision()) {
    if (!gamma.exact() && gamma.lo() > -Y)
      throw PrecisionError("kubota_integral_closed: cannot decide |gamma| < q^-Y");
    small = true;
  } else {
    small = gamma.ord() < -Y;
  }
  return small ? CycQ::p_power(p, static_cast<int>(k) * Y) : CycQ::zero(p);
}

CycQ unit_ball_square_integral(const Laurent& fy, int depth) {
  const Fq& f = fy.field();
  std::uint32_t p = f.p(), k = f.ext_degree();
  int ordf;
  if (fy.is_zero_to_precision()) {
    if (fy.exact()) return CycQ::one(p);
    throw PrecisionError("unit_ball_square_integral: unknown leading term");
  }
  ordf = fy.ord();
  // psi(f u^2) depends on the coefficients of u down to degree -D where
  // f * (2 u eps) must stay below t^-1: D >= ordf + 1 suffices; pad by one.
  int D = std::max({1, ordf + 2, depth});
  // Enumerate cells u = sum_{-D <= j <= -1} u_j t^j, each of measure q^-D.
  std::uint64_t cells = 1;
  for (int i = 0; i < D; ++i) cells *= f.q();
  Cyc acc = Cyc::zero(p);
  std::vector<FqElem> u(D, 0);  // u[i] = coefficient of t^-(i+1)
  for (std::uint64_t m = 0; m < cells; ++m) {
    std::uint64_t v = m;
    for (int i = 0; i < D; ++i) {
      u[i] = static_cast<FqElem>(v % f.q());
      v /= f.q();
    }
    // coefficient of t^-1 in f*u^2: sum over i,j of f(-1 + (i+1) + (j+1)) u_i u_j
    FqElem phase = 0;
    for (int i = 0; i < D; ++i) {
      if (u[i] == 0) continue;
      for (int j = 0; j < D; ++j) {
        if (u[j] == 0) continue;
        int need = -1 + (i + 1) + (j + 1);
        if (need > fy.hi()) continue;
        FqElem fc = fy.coeff(need);
        if (fc == 0) continue;
        phase = f.add(phase, f.mul(fc, f.mul(u[i], u[j])));
      }
    }
    acc += e_q(f, phase);
  }
  return CycQ(acc, static_cast<int>(k) * D);
}

std::vector<DissectionBall> dissect(Fq f, int Q) {
  if (Q < 1) throw DomainError("dissect: Q >= 1 required");
  std::vector<DissectionBall> out;
  for (int d = 0; d <= Q; ++d) {
    for (const Poly& r : monic_of_degree(f, d)) {
      for (const Poly& a : polys_below(f, d)) {
        if (d == 0) {
          out.push_back({r, a, -Q});  // r = 1, a = 0
          continue;
        }
        if (a.is_zero()) continue;
        if (gcd_monic(a, r).deg() != 0) continue;
        out.push_back({r, a, -Q - d});
      }
      if (d == 0) continue;
    }
  }
  return out;
}

bool ball_contains(const DissectionBall& b, const Laurent& alpha, int Q) {
  // |r alpha - a| < q^-Q: all coefficients of r*alpha - a at degrees >= -Q
  // vanish.  alpha must be known through -Q - deg r.
  Laurent ra = Laurent::from_poly(b.r) * alpha - Laurent::from_poly(b.a);
  for (int i = std::max(ra.lo(), -Q); i <= ra.hi(); ++i)
    if (ra.coeff(i) != 0) return false;
  if (!ra.exact() && ra.lo() > -Q)
    throw PrecisionError("ball_contains: insufficient precision");
  return true;
}

}  // namespace ffcm
