#include "ffcm/kloosterman.hpp"

#include <algorithm>
#include <cmath>

namespace ffcm {

Cyc kl_finite(const Poly& m, const Poly& n, const Poly& r) {
  if (r.is_zero()) throw DomainError("kl_finite: zero modulus");
  std::uint32_t p = r.field().p();
  if (r.deg() == 0) return Cyc::one(p);
  ResidueIndexer idx(r);
  Cyc acc = Cyc::zero(p);
  Poly mr = m % r, nr = n % r;
  for (std::uint64_t i = 0; i < idx.size(); ++i) {
    Poly x = idx.from_index(i);
    if (gcd_monic(x.is_zero() ? r : x, r).deg() != 0) continue;
    Poly xbar = inv_mod(x, r);
    acc += psi_r(mr * x + nr * xbar, r);
  }
  return acc;
}

Cyc kl_finite_frac(const Poly& m_num, const Poly& m_den, const Poly& n_num, const Poly& n_den,
                   const Poly& r) {
  if (r.deg() == 0) return Cyc::one(r.field().p());
  Poly m = (m_num % r) * inv_mod(m_den, r);
  Poly n = (n_num % r) * inv_mod(n_den, r);
  return kl_finite(m, n, r);
}

Cyc kl_prime_field(const Fq& f, FqElem alpha) {
  Cyc acc = Cyc::zero(f.p());
  for (FqElem x = 1; x < f.q(); ++x)
    acc += e_q(f, f.add(f.mul(alpha, f.inv(x)), x));
  return acc;
}

namespace {

// One cell-sum pass of the sphere integral at a fixed depth D >= 1:
// x = c_a t^a + ... + c_{a-D+1} t^(a-D+1), c_a != 0; each cell has measure
// q^(a-D+1).
CycQ b_infinity_at_depth(int a, const Laurent& alpha, int D) {
  const Fq& f = alpha.field();
  std::uint32_t p = f.p(), k = f.ext_degree();
  std::uint64_t tails = 1;
  for (int i = 0; i < D - 1; ++i) tails *= f.q();
  Cyc acc = Cyc::zero(p);
  std::vector<FqElem> digits(D, 0);
  for (FqElem top = 1; top < f.q(); ++top) {
    for (std::uint64_t m = 0; m < tails; ++m) {
      digits[0] = top;  // coefficient of t^a
      std::uint64_t v = m;
      for (int i = 1; i < D; ++i) {
        digits[i] = static_cast<FqElem>(v % f.q());
        v /= f.q();
      }
      LaurentBuilder xb(f, a - D + 1, a, false);
      for (int i = 0; i < D; ++i) xb.add(a - i, digits[i]);
      Laurent x = xb.build();
      // psi(alpha/x + x); 1/x is needed down to -1 - ord(alpha) so the
      // product can reach degree -1 (or provably stay below it).
      Laurent xinv = x.inverse(std::min(-1 - alpha.hi(), -a));
      Laurent phase = alpha * xinv + x;
      acc += psi(phase);
    }
  }
  return CycQ(acc, static_cast<int>(k) * (D - 1 - a));
}

}  // namespace

CycQ b_infinity(int a, const Laurent& alpha, int depth) {
  if (alpha.is_zero_to_precision())
    throw DomainError("b_infinity: alpha must be nonzero with known top term");
  int ord = alpha.ord();
  // depth counts stored coefficients of x; the automatic choice makes the
  // phase cell-constant: psi(x) needs the t^-1 slot pinned (D >= a+3 covers
  // it with margin) and psi(alpha/x) needs |alpha| q^(-a-(D-1)) <= q^-2,
  // i.e. D >= ord - a + 2.
  int D = depth > 0 ? depth : std::max({1, a + 3, ord - a + 2});
  CycQ v1 = b_infinity_at_depth(a, alpha, D);
  CycQ v2 = b_infinity_at_depth(a, alpha, D + 1);
  if (!(v1 == v2)) throw PrecisionError("b_infinity: depth instability (increase depth)");
  return v1;
}

CycQ b_infinity_closed(int a, const Laurent& alpha) {
  const Fq& f = alpha.field();
  std::uint32_t p = f.p(), k = f.ext_degree();
  int ord = alpha.ord();
  int b = ord - 2 * a;
  if (b == 0) return kl_infinity_closed(alpha);
  int m = std::max(a + b, a);
  if (m < -1) {
    // (q-1) * q^a
    return CycQ(Cyc::integer(p, static_cast<std::int64_t>(f.q()) - 1), -static_cast<int>(k) * a);
  }
  if (m == -1) return CycQ(Cyc::integer(p, -1), -static_cast<int>(k) * a);
  return CycQ::zero(p);
}

CycQ kl_infinity(const Laurent& alpha, int depth) {
  if (alpha.is_zero_to_precision())
    throw DomainError("kl_infinity: alpha must be nonzero with known top term");
  int ord = alpha.ord();
  if (ord % 2 != 0) return CycQ::zero(alpha.field().p());
  return b_infinity(ord / 2, alpha, depth);
}

CycQ kl_infinity_closed(const Laurent& alpha) {
  const Fq& f = alpha.field();
  std::uint32_t p = f.p(), k = f.ext_degree();
  if (alpha.is_zero_to_precision())
    throw DomainError("kl_infinity_closed: alpha must be nonzero");
  int ord = alpha.ord();
  if (ord % 2 != 0) return CycQ::zero(p);
  int a = ord / 2;
  FqElem aprime = alpha.coeff(ord);
  if (a < -1) {
    return CycQ(Cyc::integer(p, static_cast<std::int64_t>(f.q()) - 1), -static_cast<int>(k) * a);
  }
  if (a == -1) {
    return CycQ(kl_prime_field(f, aprime), static_cast<int>(k));
  }
  if (!f.is_square(aprime)) return CycQ::zero(p);
  // alpha = t^2a alpha' (1 + alphatilde); principal square root of 1 + alphatilde.
  // Each root x' of x'^2 = alpha' contributes the critical-point phase
  // psi(2 t^a x' (1+alphatilde)^(1/2)) times the stationary Gauss factor.
  // The Gauss factor's leading coefficient is that of phi''(x_c)/2 = 1/x_c,
  // i.e. 1/x' (validated against the direct sphere integral on both parities
  // and q in {3,5}).
  Laurent tilde_plus_one = alpha.shift(-ord).mul_scalar(f.inv(aprime));
  Laurent root = tilde_plus_one.sqrt_one_plus();
  CycQ acc = CycQ::zero(p);
  for (FqElem x = 1; x < f.q(); ++x) {
    if (f.mul(x, x) != aprime) continue;
    Laurent arg = root.mul_scalar(f.mul(f.from_int(2), x)).shift(a);
    Cyc phase = psi(arg);
    CycQ gf = gauss_factor(Laurent::monomial(f, f.inv(x), a));
    acc += CycQ(phase) * gf;
  }
  return acc.shifted(static_cast<int>(k) * a);  // * q^a
}

Cyc quad_complete_sum(const Poly& a, const Poly& b, const Poly& c) {
  if (c.is_zero()) throw DomainError("quad_complete_sum: zero modulus");
  std::uint32_t p = c.field().p();
  if (c.deg() == 0) return Cyc::one(p);
  ResidueIndexer idx(c);
  Cyc acc = Cyc::zero(p);
  for (std::uint64_t i = 0; i < idx.size(); ++i) {
    Poly x = idx.from_index(i);
    acc += psi_r(a * x * x + b * x, c);
  }
  return acc;
}

Cyc quad_complete_sum_closed(const Poly& a_in, const Poly& b_in, const Poly& c_in) {
  std::uint32_t p = c_in.field().p();
  if (c_in.deg() == 0) return Cyc::one(p);
  // psi_c(y) = psi_{monic c}(y / lc(c)); absorb the leading unit into a, b.
  FqElem lcinv = c_in.field().inv(c_in.lead());
  Poly a = a_in.mul_scalar(lcinv), b = b_in.mul_scalar(lcinv), c = c_in.monic();
  if (a.is_zero() || (a % c).is_zero()) {
    // Linear sum: |c| if c | b else 0.
    if ((b % c).is_zero()) {
      std::int64_t size = 1;
      for (int i = 0; i < c.deg(); ++i) size *= c.field().q();
      return Cyc::integer(p, size);
    }
    return Cyc::zero(p);
  }
  Poly d = gcd_monic(a, c);
  if (d.deg() > 0) {
    if (!d.divides(b)) return Cyc::zero(p);  // Lemma 5.2 vanishing
    // sum = |d| * sum over the reduced modulus.
    std::int64_t dn = 1;
    for (int i = 0; i < d.deg(); ++i) dn *= c.field().q();
    return quad_complete_sum_closed(a / d, b / d, c / d).scaled(dn);
  }
  // Complete the square: a x^2 + b x = a (x + b/(2a))^2 - b^2/(4a) mod c.
  Fq f = c.field();
  Poly inv2a = inv_mod(a.mul_scalar(f.from_int(2)), c);
  Poly shift = (b * inv2a) % c;
  Poly offset = (a * shift * shift) % c;  // a * (b/(2a))^2 = b^2/(4a)
  Cyc phase = psi_r(-offset, c);
  return phase * gauss_tau(c).scaled(jacobi(a, c));
}

int omega(const Poly& r) {
  Poly m = r.monic();
  int count = 0;
  for (int d = 1; d <= m.deg() && m.deg() > 0; ++d) {
    for (const Poly& w : irreducibles_of_degree(r.field(), d)) {
      if (w.divides(m)) {
        ++count;
        while (w.divides(m)) m = m / w;
      }
      if (m.deg() < d) break;
    }
  }
  return count;
}

WeilReport weil_check(const Poly& m, const Poly& n, const Poly& r) {
  WeilReport rep;
  Poly rm = r.monic();
  Cyc kl = kl_finite(m, n, rm);
  rep.kl_abs = kl.abs();
  Poly g1 = m.is_zero() && n.is_zero() ? rm : gcd_monic(m.is_zero() ? rm : m, n.is_zero() ? rm : n);
  Poly g = gcd_monic(g1, rm);
  double q = r.field().q();
  rep.bound = std::pow(2.0, omega(rm)) * std::pow(q, 0.5 * g.deg()) * std::pow(q, 0.5 * rm.deg());
  // squarefree iff gcd(r, r') has degree 0
  Poly deriv(r.field());
  {
    std::vector<FqElem> dc;
    for (int i = 1; i <= rm.deg(); ++i)
      dc.push_back(r.field().mul(rm.coeff(i), r.field().from_int(i)));
    deriv = Poly(r.field(), std::move(dc));
  }
  rep.sharp = !deriv.is_zero() && gcd_monic(rm, deriv).deg() == 0;
  rep.pass = rep.kl_abs <= rep.bound + 1e-9;
  return rep;
}

}  // namespace ffcm
