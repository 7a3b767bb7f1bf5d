#pragma once

#include "ffcm/budget.hpp"
#include "ffcm/characters.hpp"

namespace ffcm {

// Kl_r(m, n) = sum over units x mod r of psi_r(m x + n xbar).
// Unit modulus (deg r = 0) gives 1 by convention.
Cyc kl_finite(const Poly& m, const Poly& n, const Poly& r);
// Same with arguments in O_r: m = m_num/m_den etc., denominators coprime to r.
Cyc kl_finite_frac(const Poly& m_num, const Poly& m_den, const Poly& n_num, const Poly& n_den,
                   const Poly& r);

// Kl(alpha, F_q) = sum_{x in F_q^*} e_q(alpha/x + x).
Cyc kl_prime_field(const Fq& f, FqElem alpha);

// B_inf(psi, a, alpha) = int_{|x| = q^a} psi(alpha/x + x) dx, evaluated as an
// exact finite cell sum at the given depth (doubled-depth stability is
// asserted internally; pass depth 0 for the automatic choice).
CycQ b_infinity(int a, const Laurent& alpha, int depth = 0);
// Three-case closed form for b != 0 (writing |alpha| = q^(2a+b)).
CycQ b_infinity_closed(int a, const Laurent& alpha);

// Kl_inf(psi, alpha): 0 unless |alpha| = q^(2l); otherwise B_inf at a = l.
CycQ kl_infinity(const Laurent& alpha, int depth = 0);
// Lemma-4.6-style closed form (four branches).
CycQ kl_infinity_closed(const Laurent& alpha);

// sum_{x mod c} psi_c(a x^2 + b x); direct evaluation.
Cyc quad_complete_sum(const Poly& a, const Poly& b, const Poly& c);
// Completed-square closed form; requires gcd(a, c) = 1 (falls back to the
// vanishing criterion / reduction otherwise).
Cyc quad_complete_sum_closed(const Poly& a, const Poly& b, const Poly& c);

// Number of distinct monic irreducible factors (trial division).
int omega(const Poly& r);

struct WeilReport {
  double kl_abs = 0;
  double bound = 0;
  bool pass = false;
  bool sharp = true;  // r squarefree (the regime where the bound is asserted)
};
// |Kl_r(m,n)| <= 2^omega(r) |(m,n,r)|^(1/2) |r|^(1/2).
WeilReport weil_check(const Poly& m, const Poly& n, const Poly& r);

}  // namespace ffcm
