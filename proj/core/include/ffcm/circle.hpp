#pragma once

#include <cstdint>
#include <functional>
#include <map>

#include "ffcm/budget.hpp"
#include "ffcm/kloosterman.hpp"
#include "ffcm/morgenstern.hpp"

namespace ffcm {

// ---------------------------------------------------------------------------
// Exponential sums S_{g,r}(c)
//
//   S_{g,r}(c) = sum_{|l| < |g|} sum_{|a| < |r|, (a,r)=1}
//                sum_{b in (O/(gr))^4}
//                  psi( ((a+rl)(2 lambda^T A b - k) + a g F(b) - <c,b>) / (gr) )
//
// The a-sum runs over all residues coprime to r (a = 0 for r = 1): this is
// the range forced by the Farey dissection, and the range under which the
// delta-method identity is exact.
// ---------------------------------------------------------------------------

// Direct evaluation.  The b-sum is regrouped into four 1-dimensional complete
// quadratic sums (exact distributivity); memoization across coordinates.
Cyc exp_sum_direct(const SystemParams& p, const Poly& r, const PolyVec4& c,
                   const Budget& budget = {});

// Reference evaluation with the literal 4-fold b-loop (tiny moduli only).
Cyc exp_sum_direct_literal(const SystemParams& p, const Poly& r, const PolyVec4& c,
                           const Budget& budget = {});

// Direct evaluation of the whole window {c : deg c_i <= cmax for all i},
// sharing tables across c.  values[idx] with idx from c_window_index.
struct ExpSumWindow {
  int cmax = 0;
  std::uint64_t side = 0;  // q^(cmax+1) coordinate values
  std::vector<Cyc> values;
};
ExpSumWindow exp_sum_direct_window(const SystemParams& p, const Poly& r, int cmax,
                                   const Budget& budget = {});
std::uint64_t c_window_index(const SystemParams& p, int cmax, const PolyVec4& c);
PolyVec4 c_window_from_index(const SystemParams& p, int cmax, std::uint64_t idx);

// Closed form (Prop 5.1 shape):
//   (|g|^4/|m|^2) (|(r,t-1)| tau_r tau_{r/(r,t-1)})^2
//   psi( (-conj(mr) beta(c) (f-F(lambda))/m - conj(m^2 r) <lambda,c>) / (g/m)^2 )
//   psi( <lambda,c> / (g^2 r) )
//   sum_{s mod m} psi_m(-s conj(g/m) beta(c)) Kl_{m^2 r}(conj(g/m) f - mrs,
//                                                1/4 conj(g/m)^3 F*(c))
// with m = (g, r^infty); 0 when (r,t-1) !| c3,c4 or when beta(c) or the
// lambda-congruence does not exist.  Requires strict SystemParams.
CycQ exp_sum_closed(const SystemParams& p, const Poly& r, const PolyVec4& c);

// ---------------------------------------------------------------------------
// Oscillatory integrals I_{g,r}(c)
// ---------------------------------------------------------------------------

enum class OscBranch {
  kKappaLarge = 1,   // kappa >= Qhat/Rhat -> 0
  kEvenWindow = 2,   // kappa = |r|/Rhat, deg f even, Qhat q^-3 < |r| <= Qhat -> 0
  kKappaSmall = 3,   // kappa < |r|/Rhat -> I_{g,r}(0)
  kC34Dominant = 4,  // kappa = |r|/Rhat, |c34| > |c12|, deg f even, |r| <= Qhat q^-3
  kStationary = 5,   // -Qhat^2 |g|^2 |r|^2 |F*(c)|^-1 Kl_inf(psi, k F*(c) / (4 r^2 g^3))
};

// Evaluator with the per-instance cell data (the degree profile of
// N(P) = g F(P) + 2 lambda^T A P - k over polynomial parts P) computed once.
class OscEvaluator {
 public:
  OscEvaluator(SystemParams p, Budget budget = {});

  // Exact cell evaluation of
  //   I_{g,r}(c) = (Qhat/|r|) int_{|t|<Rhat, |G(t)|<Qhat|r|} psi(<c,t>/(gr)) dt.
  // depth = tail coefficients per coordinate (0 = automatic); internal
  // doubled-depth stability assertion.
  CycQ numeric(const Poly& r, const PolyVec4& c, int depth = 0) const;

  // Five-branch closed form (Prop-4.1 shape); requires |r| <= Qhat.  The
  // stationary branch needs k != 0 (throws DomainError; callers fall back to
  // numeric).
  CycQ closed(const Poly& r, const PolyVec4& c, OscBranch* branch = nullptr) const;

  // I_{g,r}(0): depends on r only through |r|; exact integer times q-power.
  CycQ zero_value(int deg_r) const;

  const SystemParams& params() const { return p_; }

 private:
  CycQ numeric_at_depth(const Poly& r, const PolyVec4& c, int depth) const;
  SystemParams p_;
  Budget budget_;
  std::vector<std::int8_t> degN_;  // per cell, clipped to >= -1
  std::uint64_t cells_ = 0, side_ = 0;
  std::vector<CycQ> izero_;  // by deg r = 0..Q
};

// One-shot wrappers.
CycQ osc_integral_numeric(const SystemParams& p, const Poly& r, const PolyVec4& c,
                          int depth = 0, const Budget& budget = {});
CycQ osc_integral_zero(const SystemParams& p, int deg_r, const Budget& budget = {});
CycQ osc_integral_closed(const SystemParams& p, const Poly& r, const PolyVec4& c,
                         OscBranch* branch = nullptr, const Budget& budget = {});

// ---------------------------------------------------------------------------
// Counting: N(w, lambda) both ways
// ---------------------------------------------------------------------------

// Brute force: # { x in O^4 : F(x) = f, x = lambda mod g, |x| <= |f|^(1/2) }.
std::int64_t count_solutions(const SystemParams& p, const Budget& budget = {});

// Delta-method reconstruction
//   N = (1/(|g| Qhat^2)) sum_{r monic, |r| <= Qhat} sum_c |gr|^-4 S_{g,r}(c) I_{g,r}(c)
// in exact arithmetic (closed forms; direct-S / numeric-I fallback on relaxed
// instances).  The c-sum is finite: I vanishes for kappa >= Qhat/Rhat.
CycQ delta_reconstruct(const SystemParams& p, const Budget& budget = {});
// Convenience: delta_reconstruct, asserted integral, as an integer.
std::int64_t delta_reconstruct_count(const SystemParams& p, const Budget& budget = {});

// ---------------------------------------------------------------------------
// Local densities and the singular series
// ---------------------------------------------------------------------------

struct DensitySequence {
  Poly varpi;
  int v = 0;                          // varpi-valuation of g
  std::vector<std::int64_t> counts;   // N_k for k = 1..k_max
  std::vector<double> sigma;          // N_k / |varpi|^(3k)
  bool stabilized = false;            // exact N_{k+1} = N_k |varpi|^3 at the tail
  int k_star = -1;                    // first k with exact stabilization onward
};
DensitySequence local_density(const SystemParams& p, const Poly& varpi, int k_max,
                              const Budget& budget = {});

// sum_{r monic, |r| <= q^T} |gr|^-4 S_{g,r}(0), exact.
CycQ singular_series_r_sum(const SystemParams& p, int T);
// Same restricted to r supported on irreducibles of degree <= smooth_deg
// (diagnostic companion to the Euler product).
CycQ singular_series_r_sum_smooth(const SystemParams& p, int T, int smooth_deg);
// prod_{deg varpi <= D} sigma_varpi with each factor stabilized in k
// (k up to k_max; throws if some factor fails to stabilize).
double singular_series_product(const SystemParams& p, int D, int k_max,
                               const Budget& budget = {});

// ---------------------------------------------------------------------------
// Error terms E1, E2 (section-6 split) and the section-6 reduced sums
// ---------------------------------------------------------------------------

struct ErrorTermRow {
  PolyVec4 c;
  Poly r;
  int which = 0;  // 1 or 2
  std::complex<double> term;
};

struct ErrorTermsReport {
  CycQ e1, e2, c_zero;         // the two error sums and the c=0 main part
  CycQ total_identity;          // e1 + e2 + c_zero, must equal |g| Qhat^2 N
  std::int64_t count = 0;       // N(w, lambda) by brute force
  bool identity_ok = false;
  std::vector<ErrorTermRow> rows;
  std::vector<std::int64_t> exceptional_census;  // per T = 0..deg g: #{c != 0, |c| <= q^T, beta exists}
};
ErrorTermsReport error_terms(const SystemParams& p, const Budget& budget = {});

enum class TlsVariant { kFinite, kWithInfinity };

// Section-6 reduced kernel (g irreducible):
//   sum_{|r| = q^T, (g,r)=1, delta | r} psi_{g^2}(-rbar (beta(c)(f-F(lambda)) + <lambda,c>))
//     Kl_r(gbar f, 1/4 gbar^3 F*(c))  [ * Kl_inf(psi, f F*(c) / (4 r^2 g^4)) ]
CycQ tls_kernel(const SystemParams& p, const PolyVec4& c, int T, TlsVariant variant,
                const Poly& delta, const Budget& budget = {});

}  // namespace ffcm
