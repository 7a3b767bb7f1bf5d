#pragma once

#include <vector>

#include "ffcm/cyclotomic.hpp"
#include "ffcm/laurent.hpp"
#include "ffcm/poly.hpp"

namespace ffcm {

// e_q(a) = exp(2 pi i tr(a) / p), tr the absolute trace F_q -> F_p.
Cyc e_q(const Fq& f, FqElem a);

// psi(alpha) = e_q(a_{-1}); trivial on F_q[t].  Needs precision lo <= -1.
Cyc psi(const Laurent& alpha);

// psi_r(x) = psi((x mod r) / r); r != 0.  Unit moduli give 1.
Cyc psi_r(const Poly& x, const Poly& r);
// Same value as a zeta_p exponent in [0, p) (psi_r values are p-th roots).
std::uint32_t psi_r_exponent(const Poly& x, const Poly& r);
// psi(x / r) for x in O_r given as num/den with (den, r) = 1.
Cyc psi_r_frac(const Poly& num, const Poly& den, const Poly& r);

// G(a) = sum_{x in F_q} e_q(a x^2), the field-level quadratic Gauss sum.
Cyc gauss_G(const Fq& f, FqElem a);

// tau_r = sum_{x mod r} psi_r(x^2), the complete quadratic Gauss sum mod r.
// (Convention adopted for the closed forms; validated by the direct/closed
// exponential-sum equality.)  tau_1 = 1.
Cyc gauss_tau(const Poly& r);

// Stationary-phase factor:
//   ord(h) even           -> min(|h|^{-1/2}, 1)
//   ord(h) odd and >= 1   -> |h|^{-1/2} * G(a_h)/|G(a_h)|  (= G(a_h) q^{-(ord+1)/2})
//   otherwise             -> 1
// h must have a known leading coefficient.
CycQ gauss_factor(const Laurent& h);

// sum_{|b| < q^N} psi(gamma b); closed form is q^N or 0 (Kubota).
Cyc kubota_sum(const Laurent& gamma, int N);
// Exact evaluation of int_{|alpha| < q^Y} psi(alpha gamma) d alpha by
// locally-constant cells; closed form is q^Y or 0.
CycQ kubota_integral(const Laurent& gamma, int Y);
// The two-case closed forms, for cross-checks.
Cyc kubota_sum_closed(const Laurent& gamma, int N);
CycQ kubota_integral_closed(const Laurent& gamma, int Y);

// int_T psi(f u^2) du, evaluated as an exact finite cell sum (Lemma-4.5-style
// oracle for gauss_factor).
CycQ unit_ball_square_integral(const Laurent& f, int depth = 0);

// Farey/Kloosterman dissection of the unit ball T at level Q:
// T = disjoint union over monic r, |r| <= q^Q, and a coprime to r, |a| < |r|,
// of the balls { alpha : |r alpha - a| < q^-Q }.
struct DissectionBall {
  Poly r, a;
  int radius_exp;  // ball radius q^(-Q-deg r) around a/r
};
std::vector<DissectionBall> dissect(Fq f, int Q);
// Membership test; alpha must carry precision through -Q - deg r.
bool ball_contains(const DissectionBall& b, const Laurent& alpha, int Q);

}  // namespace ffcm
