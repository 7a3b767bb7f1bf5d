#pragma once

#include <string>
#include <vector>

#include "ffcm/budget.hpp"
#include "ffcm/kloosterman.hpp"

namespace ffcm {

// Element of F_q[t, g^-1]: num / g^gpow.
struct GFrac {
  Poly num;
  int gpow = 0;
};

enum class SweepVariant { kFinite, kWithInfinity };

// Parameters of one twisted Linnik-Selberg sum
//   sum_{|r| = q^T, (g,r)=1, delta | r} psi_{g^2}(alpha r^-1) Kl_r(a, b)
//     [ * Kl_inf(psi, a b / r^2) ]
struct TLSParams {
  Fq field;
  Poly g;      // nonzero
  Poly delta;  // coprime to g
  Poly alpha;
  GFrac a, b;  // nonzero, denominators powers of g
  int T = 0;
  SweepVariant variant = SweepVariant::kFinite;

  void validate() const;
  std::string param_string() const;  // canonical serialization (content address)
};

struct TLSValue {
  CycQ sum;
  std::int64_t n_terms = 0;
  double abs_term_sum = 0;  // sum of |Kl_r(a,b)| (cancellation diagnostic)
};

TLSValue tls_sum(const TLSParams& p, const Budget& budget = {});
// Cumulative window |r| <= q^T (Remark-1.3 companion).
TLSValue tls_sum_cumulative(const TLSParams& p, const Budget& budget = {});

struct SweepRecord {
  TLSParams params;
  std::uint64_t params_hash = 0;
  CycQ value;
  double modulus = 0;
  std::int64_t n_terms = 0;
  double abs_term_sum = 0;
  double seconds = 0;
  std::string revision;
};

struct SweepFit {
  bool valid = false;      // >= 3 nonzero points
  double slope = 0;        // s in log_q |sum| ~ s T + const
  double intercept = 0;
  int n_points = 0;
  std::string note;
};

struct SweepResult {
  std::vector<SweepRecord> records;             // |r| = q^T rows, T = 0..T_max
  std::vector<SweepRecord> cumulative_records;  // |r| <= q^T rows
  SweepFit fit;
  bool window_identity_ok = false;  // cumulative(T) = sum of exact rows
  bool weil_ceiling_ok = false;     // every record within terms x Weil bound
  double max_ceiling_ratio = 0;
};

// Evaluates T = 0..T_max, fits the growth exponent over nonzero records,
// checks the window identity and the term-count x Weil ceiling.
SweepResult sweep(const TLSParams& base, int T_max, int jobs = 1, const Budget& budget = {});

// CSV row (bit-exact column set:
// q,g,delta,alpha,a_num,a_gpow,b_num,b_gpow,variant,T,re,im,modulus,n_terms,seconds)
std::string sweep_csv_header();
std::string sweep_csv_row(const SweepRecord& rec);

}  // namespace ffcm
