#include "ffcm/circle.hpp"

#include <algorithm>
#include <unordered_map>

namespace ffcm {

namespace {

std::int64_t ipow(std::int64_t b, int e) {
  std::int64_t r = 1;
  for (int i = 0; i < e; ++i) r *= b;
  return r;
}

// Units of O/(r) with inverses, enumerated in residue-index order.
struct UnitTable {
  std::vector<Poly> units, inverses;
};

UnitTable unit_table(const Poly& r) {
  UnitTable t;
  if (r.deg() == 0) return t;
  ResidueIndexer idx(r);
  for (std::uint64_t i = 0; i < idx.size(); ++i) {
    Poly x = idx.from_index(i);
    if (x.is_zero() || gcd_monic(x, r).deg() != 0) continue;
    t.units.push_back(x);
    t.inverses.push_back(inv_mod(x, r));
  }
  return t;
}

// The (a, l) enumeration of the exponential sum: a over residues mod r
// coprime to r (a = 0 for r = 1), l over residues mod g.
struct ALPair {
  Poly a, l, a_plus_rl;
};

std::vector<ALPair> al_pairs(const SystemParams& p, const Poly& r) {
  std::vector<ALPair> out;
  std::vector<Poly> as;
  if (r.deg() == 0) {
    as.push_back(Poly::zero(p.form.field));  // the single residue a = 0
  } else {
    ResidueIndexer ridx(r);
    for (std::uint64_t i = 0; i < ridx.size(); ++i) {
      Poly a = ridx.from_index(i);
      if (!a.is_zero() && gcd_monic(a, r).deg() == 0) as.push_back(a);
    }
  }
  std::vector<Poly> ls = polys_below(p.form.field, std::max(p.g.deg(), 0));
  if (ls.empty()) ls.push_back(Poly::zero(p.form.field));
  for (const Poly& a : as)
    for (const Poly& l : ls) out.push_back({a, l, a + r * l});
  return out;
}

// Memoized 1-D complete quadratic sums mod gr, as zeta_p exponents are not
// enough (the sums are full Cyc values).
struct QuadSumMemo {
  const Poly& modulus;
  ResidueIndexer idx;
  std::unordered_map<std::uint64_t, Cyc> memo;
  std::uint64_t evals = 0;

  explicit QuadSumMemo(const Poly& m) : modulus(m), idx(m) {}

  const Cyc& get(const Poly& A, const Poly& B) {
    std::uint64_t key = idx.to_index(A % modulus) * idx.size() + idx.to_index(B % modulus);
    auto it = memo.find(key);
    if (it != memo.end()) return it->second;
    std::uint32_t p = modulus.field().p();
    std::vector<std::int64_t> hist(p, 0);
    for (std::uint64_t i = 0; i < idx.size(); ++i) {
      Poly b = idx.from_index(i);
      hist[psi_r_exponent(A * b * b + B * b, modulus)]++;
    }
    evals += idx.size();
    Cyc acc = Cyc::zero(p);
    for (std::uint32_t j = 0; j < p; ++j) acc += Cyc::root(p, j).scaled(hist[j]);
    auto [it2, _] = memo.emplace(key, std::move(acc));
    return it2->second;
  }
};

Poly dot(const PolyVec4& a, const PolyVec4& b) {
  Poly acc(a[0].field());
  for (int i = 0; i < 4; ++i) acc = acc + a[i] * b[i];
  return acc;
}

}  // namespace

// ---------------------------------------------------------------------------
// Exponential sums
// ---------------------------------------------------------------------------

Cyc exp_sum_direct(const SystemParams& p, const Poly& r_in, const PolyVec4& c,
                   const Budget& budget) {
  Fq f = p.form.field;
  Poly r = r_in.monic();
  Poly gr = p.g * r;
  auto pairs = al_pairs(p, r);
  QuadSumMemo qs(gr);
  ResidueIndexer gidx(gr);
  std::uint64_t used = 0;
  budget.charge(pairs.size() * 4 * gidx.size(), used, "exp_sum_direct");
  Poly two = Poly::constant(f, f.from_int(2));
  Cyc acc = Cyc::zero(f.p());
  for (const auto& al : pairs) {
    Cyc term = psi_r(-(al.a_plus_rl * p.k), gr);
    for (int j = 0; j < 4; ++j) {
      Poly A = al.a * p.g * p.form.eta[j];
      Poly B = two * al.a_plus_rl * p.form.eta[j] * p.lambda[j] - c[j];
      term *= qs.get(A, B);
    }
    acc += term;
  }
  return acc;
}

Cyc exp_sum_direct_literal(const SystemParams& p, const Poly& r_in, const PolyVec4& c,
                           const Budget& budget) {
  Fq f = p.form.field;
  Poly r = r_in.monic();
  Poly gr = p.g * r;
  ResidueIndexer gidx(gr);
  auto pairs = al_pairs(p, r);
  std::uint64_t cells = gidx.size() * gidx.size() * gidx.size() * gidx.size();
  std::uint64_t used = 0;
  budget.charge(pairs.size() * cells, used, "exp_sum_direct_literal");
  Poly two = Poly::constant(f, f.from_int(2));
  Cyc acc = Cyc::zero(f.p());
  for (const auto& al : pairs) {
    for (std::uint64_t i1 = 0; i1 < cells; ++i1) {
      std::uint64_t v = i1;
      PolyVec4 b{Poly(f), Poly(f), Poly(f), Poly(f)};
      for (int j = 0; j < 4; ++j) {
        b[j] = gidx.from_index(v % gidx.size());
        v /= gidx.size();
      }
      Poly lam_ab(f);
      for (int j = 0; j < 4; ++j) lam_ab = lam_ab + two * p.lambda[j] * p.form.eta[j] * b[j];
      Poly arg = al.a_plus_rl * (lam_ab - p.k) + al.a * p.g * p.form.eval(b) - dot(c, b);
      acc += psi_r(arg, gr);
    }
  }
  return acc;
}

std::uint64_t c_window_index(const SystemParams& p, int cmax, const PolyVec4& c) {
  std::uint64_t n = ipow(p.form.field.q(), cmax + 1);
  std::uint64_t idx = 0;
  for (int j = 0; j < 4; ++j) {
    std::uint64_t cj = 0;
    for (int d = cmax; d >= 0; --d) cj = cj * p.form.field.q() + c[j].coeff(d);
    idx = idx * n + cj;
  }
  return idx;
}

PolyVec4 c_window_from_index(const SystemParams& p, int cmax, std::uint64_t idx) {
  Fq f = p.form.field;
  std::uint64_t n = ipow(f.q(), cmax + 1);
  PolyVec4 c{Poly(f), Poly(f), Poly(f), Poly(f)};
  for (int j = 3; j >= 0; --j) {
    std::uint64_t cj = idx % n;
    idx /= n;
    std::vector<FqElem> coeffs(cmax + 1, 0);
    for (int d = 0; d <= cmax; ++d) {
      coeffs[d] = static_cast<FqElem>(cj % f.q());
      cj /= f.q();
    }
    c[j] = Poly(f, std::move(coeffs));
  }
  return c;
}

ExpSumWindow exp_sum_direct_window(const SystemParams& p, const Poly& r_in, int cmax,
                                   const Budget& budget) {
  Fq f = p.form.field;
  std::uint32_t prime = f.p();
  Poly r = r_in.monic();
  Poly gr = p.g * r;
  auto pairs = al_pairs(p, r);
  QuadSumMemo qs(gr);
  std::uint64_t n = ipow(f.q(), cmax + 1);
  std::uint64_t total = n * n * n * n;
  std::uint64_t used = 0;
  budget.charge(pairs.size() * (n * n * 2 + total), used, "exp_sum_direct_window");

  ExpSumWindow w;
  w.cmax = cmax;
  w.side = n;
  w.values.assign(total, Cyc::zero(prime));

  // Coordinate values indexed consistently with c_window_index (c_0 is the
  // least significant digit).
  ResidueIndexer cidx(Poly::monomial(f, 1, cmax + 1));
  std::vector<Poly> cvals;
  cvals.reserve(n);
  for (std::uint64_t i = 0; i < n; ++i) cvals.push_back(cidx.from_index(i));
  Poly two = Poly::constant(f, f.from_int(2));

  std::vector<Cyc> v1(n), v2(n), v3(n), v4(n);
  std::vector<Cyc> w12(n * n), w34(n * n);
  for (const auto& al : pairs) {
    Cyc phase0 = psi_r(-(al.a_plus_rl * p.k), gr);
    for (std::uint64_t ci = 0; ci < n; ++ci) {
      for (int j = 0; j < 4; ++j) {
        Poly A = al.a * p.g * p.form.eta[j];
        Poly B = two * al.a_plus_rl * p.form.eta[j] * p.lambda[j] - cvals[ci];
        Cyc val = qs.get(A, B);
        (j == 0 ? v1 : j == 1 ? v2 : j == 2 ? v3 : v4)[ci] = val;
      }
    }
    for (std::uint64_t c1 = 0; c1 < n; ++c1)
      for (std::uint64_t c2 = 0; c2 < n; ++c2) w12[c1 * n + c2] = phase0 * v1[c1] * v2[c2];
    for (std::uint64_t c3 = 0; c3 < n; ++c3)
      for (std::uint64_t c4 = 0; c4 < n; ++c4) w34[c3 * n + c4] = v3[c3] * v4[c4];
    for (std::uint64_t i12 = 0; i12 < n * n; ++i12) {
      if (w12[i12].is_zero()) continue;
      for (std::uint64_t i34 = 0; i34 < n * n; ++i34) {
        if (w34[i34].is_zero()) continue;
        w.values[i12 * n * n + i34] += w12[i12] * w34[i34];
      }
    }
  }
  return w;
}

CycQ exp_sum_closed(const SystemParams& p, const Poly& r_in, const PolyVec4& c) {
  if (!p.strict)
    throw DomainError("exp_sum_closed: closed form requires strict system parameters");
  Fq f = p.form.field;
  std::uint32_t prime = f.p();
  std::uint32_t kext = f.ext_degree();
  Poly r = r_in.monic();
  Poly tm1 = Poly::t(f) - Poly::constant(f, 1);

  Poly e = r.deg() == 0 ? Poly::constant(f, 1) : gcd_monic(r, tm1);
  if (e.deg() > 0) {
    if (!(c[2] % e).is_zero() || !(c[3] % e).is_zero()) return CycQ::zero(prime);
  }
  auto beta = p.beta_of_c(c);
  if (!beta) return CycQ::zero(prime);

  Poly m = r.deg() == 0 ? Poly::constant(f, 1) : m_part(p.g, r);
  Poly gm = p.g.deg() == 0 ? p.g : p.g / m;

  // |g|^4 / |m|^2
  CycQ lead = CycQ::p_power(prime, static_cast<int>(kext) * (4 * p.g.deg() - 2 * m.deg()));

  // (|gcd(r, t-1)| tau_r tau_{r/(r,t-1)})^2
  Cyc tfac = (gauss_tau(r) * gauss_tau(r / e)).scaled(ipow(f.q(), e.deg()));
  Cyc gfac = tfac * tfac;

  // psi( (-conj(mr) beta (f - F(lambda))/m - conj(m^2 r) <lambda, c>) / (g/m)^2 )
  Cyc phase1 = Cyc::one(prime);
  Poly lam_c = dot(p.lambda, c);
  if (gm.deg() > 0) {
    Poly M1 = gm * gm;
    Poly inv_mr = inv_mod(m * r, M1);
    Poly inv_m2r = inv_mod(m * m * r, M1);
    Poly fml = (p.f - p.form.eval(p.lambda)) / m;  // = (g/m) k, exact
    Poly arg = -(inv_mr * (*beta) * fml) - inv_m2r * lam_c;
    phase1 = psi_r(arg, M1);
  }
  // psi( <lambda, c> / (g^2 r) )
  Cyc phase2 = psi_r(lam_c, p.g * p.g * r);

  // s-sum over O/(m) of psi_m(-s conj(g/m) beta) Kl_{m^2 r}(conj(g/m) f - mrs,
  //                                                1/4 conj(g/m)^3 F*(c))
  Poly M2 = m * m * r;
  Cyc ssum = Cyc::zero(prime);
  Tm1Frac dual = p.dual_form(c);
  if (M2.deg() == 0) {
    ssum = Cyc::one(prime);  // single s = 0, Kl_1 = 1
  } else {
    Poly inv_gm_M2 = inv_mod(gm, M2);
    Poly inv4 = inv_mod(Poly::from_int(f, 4), M2);
    Poly n2 = (inv4 * inv_gm_M2 * inv_gm_M2 * inv_gm_M2 * dual.reduce_mod(M2)) % M2;
    Poly inv_gm_m = m.deg() > 0 ? inv_mod(gm, m) : Poly::zero(f);
    std::vector<Poly> svals = polys_below(f, std::max(m.deg(), 0));
    if (svals.empty()) svals.push_back(Poly::zero(f));
    for (const Poly& s : svals) {
      Cyc sphase = m.deg() > 0 ? psi_r(-(s * inv_gm_m * (*beta)), m) : Cyc::one(prime);
      Poly n1 = (inv_gm_M2 * p.f - m * r * s) % M2;
      ssum += sphase * kl_finite(n1, n2, M2);
    }
  }
  return lead * CycQ(gfac) * CycQ(phase1) * CycQ(phase2) * CycQ(ssum);
}

// ---------------------------------------------------------------------------
// Oscillatory integrals
// ---------------------------------------------------------------------------

OscEvaluator::OscEvaluator(SystemParams p, Budget budget)
    : p_(std::move(p)), budget_(budget) {
  Fq f = p_.form.field;
  side_ = ipow(f.q(), p_.R);
  cells_ = side_ * side_ * side_ * side_;
  std::uint64_t used = 0;
  budget_.charge(cells_, used, "osc cell enumeration");
  degN_.resize(cells_);
  std::vector<Poly> parts = polys_below(f, p_.R);
  Poly two = Poly::constant(f, f.from_int(2));
  // Per-coordinate pieces: g*eta_j*P^2 + 2*eta_j*lambda_j*P.
  std::vector<std::vector<Poly>> piece(4);
  for (int j = 0; j < 4; ++j) {
    piece[j].reserve(parts.size());
    for (const Poly& P : parts)
      piece[j].push_back(p_.g * p_.form.eta[j] * P * P + two * p_.form.eta[j] * p_.lambda[j] * P);
  }
  std::uint64_t n = parts.size();
  for (std::uint64_t i = 0; i < cells_; ++i) {
    std::uint64_t v = i;
    Poly N = -p_.k;
    for (int j = 0; j < 4; ++j) {
      N = N + piece[j][v % n];
      v /= n;
    }
    degN_[i] = static_cast<std::int8_t>(std::max(N.deg(), -1));
  }
  // I(0) by |r|: count admissible polynomial parts (each carries unit measure).
  for (int d = 0; d <= p_.Q; ++d) {
    int cutoff = p_.Q + p_.g.deg() + d;
    std::int64_t count = 0;
    for (auto dn : degN_)
      if (dn < cutoff) ++count;
    izero_.push_back(
        CycQ(Cyc::integer(f.p(), count), -static_cast<int>(f.ext_degree()) * (p_.Q - d)));
  }
}

CycQ OscEvaluator::zero_value(int deg_r) const {
  if (deg_r < 0 || deg_r > p_.Q) throw DomainError("zero_value: 0 <= deg r <= Q required");
  return izero_[deg_r];
}

CycQ OscEvaluator::numeric_at_depth(const Poly& r, const PolyVec4& c, int D) const {
  Fq f = p_.form.field;
  std::uint32_t prime = f.p();
  std::uint32_t kext = f.ext_degree();
  Poly gr = p_.g * r;
  std::uint64_t used = 0;
  budget_.charge(cells_, used, "osc_integral_numeric");

  // Tail factors: for tail degree -e (e = 1..D), theta = (1/q) sum_tau
  // e_q(tau * gamma_e) with gamma_e the coefficient of t^(e-1) in the
  // polynomial part of c_i/(gr).
  CycQ pref = CycQ::one(prime);
  for (int j = 0; j < 4; ++j) {
    Poly quot = c[j].deg() >= gr.deg() ? c[j] / gr : Poly::zero(f);
    for (int e = 1; e <= D; ++e) {
      FqElem gamma = quot.coeff(e - 1);
      Cyc s = Cyc::zero(prime);
      for (FqElem tau = 0; tau < f.q(); ++tau) s += e_q(f, f.mul(tau, gamma));
      pref *= CycQ(s, static_cast<int>(kext));
    }
  }

  // Main sum over polynomial parts: psi(<c,P>/(gr)) factorizes per
  // coordinate; accumulate a zeta_p exponent histogram.
  std::vector<Poly> parts = polys_below(f, p_.R);
  std::uint64_t n = parts.size();
  std::vector<std::vector<std::uint32_t>> phase(4, std::vector<std::uint32_t>(n));
  for (int j = 0; j < 4; ++j)
    for (std::uint64_t i = 0; i < n; ++i) phase[j][i] = psi_r_exponent(c[j] * parts[i], gr);
  int cutoff = p_.Q + p_.g.deg() + r.deg();
  std::vector<std::int64_t> hist(prime, 0);
  for (std::uint64_t i = 0; i < cells_; ++i) {
    if (degN_[i] >= cutoff) continue;
    std::uint64_t v = i;
    std::uint32_t idx = 0;
    for (int j = 0; j < 4; ++j) {
      idx += phase[j][v % n];
      v /= n;
    }
    hist[idx % prime]++;
  }
  Cyc main = Cyc::zero(prime);
  for (std::uint32_t j = 0; j < prime; ++j) main += Cyc::root(prime, j).scaled(hist[j]);
  // Qhat/|r| prefactor.
  CycQ scale = CycQ::p_power(prime, static_cast<int>(kext) * (p_.Q - r.deg()));
  return scale * pref * CycQ(main);
}

CycQ OscEvaluator::numeric(const Poly& r_in, const PolyVec4& c, int depth) const {
  Poly r = r_in.monic();
  if (r.deg() > p_.Q) throw DomainError("osc_integral_numeric: |r| <= Qhat required");
  int maxc = -1;
  for (const auto& ci : c) maxc = std::max(maxc, ci.deg());
  Poly gr = p_.g * r;
  int D = depth > 0 ? depth : std::max(1, maxc - gr.deg() + 1);
  CycQ v1 = numeric_at_depth(r, c, D);
  CycQ v2 = numeric_at_depth(r, c, D + 1);
  if (!(v1 == v2)) throw PrecisionError("osc_integral_numeric: depth instability");
  return v1;
}

CycQ OscEvaluator::closed(const Poly& r_in, const PolyVec4& c, OscBranch* branch) const {
  Fq f = p_.form.field;
  std::uint32_t prime = f.p();
  std::uint32_t kext = f.ext_degree();
  Poly r = r_in.monic();
  if (r.deg() > p_.Q) throw DomainError("osc_integral_closed: |r| <= Qhat required");
  auto set_branch = [&](OscBranch b) {
    if (branch) *branch = b;
  };

  auto ke = p_.kappa_exp(c);                    // kappa = q^*ke (absent: kappa = 0)
  int rR = r.deg() - p_.R;                      // |r|/Rhat = q^rR
  bool f_even = p_.f.deg() % 2 == 0;

  // (1) kappa >= Qhat/Rhat = q
  if (ke && *ke >= 1) {
    set_branch(OscBranch::kKappaLarge);
    return CycQ::zero(prime);
  }
  // (2) kappa = |r|/Rhat, deg f even, Qhat q^-3 < |r| <= Qhat
  if (ke && *ke == rR && f_even && r.deg() >= p_.Q - 2) {
    set_branch(OscBranch::kEvenWindow);
    return CycQ::zero(prime);
  }
  // (3) kappa < |r|/Rhat
  if (!ke || *ke < rR) {
    set_branch(OscBranch::kKappaSmall);
    return izero_[r.deg()];
  }
  // (4) kappa = |r|/Rhat, |c34| > |c12|, deg f even, |r| <= Qhat q^-3
  int d12 = std::max(c[0].deg(), c[1].deg());
  int d34 = std::max(c[2].deg(), c[3].deg());
  if (*ke == rR && d34 > d12 && f_even && r.deg() <= p_.Q - 3) {
    set_branch(OscBranch::kC34Dominant);
    return izero_[r.deg()];
  }
  // (5) stationary phase
  set_branch(OscBranch::kStationary);
  Tm1Frac dual = p_.dual_form(c);
  if (dual.is_zero()) throw Error("osc_integral_closed: F*(c) = 0 with c != 0 (anisotropy)");
  if (p_.k.is_zero())
    throw DomainError("osc_integral_closed: stationary branch needs k != 0");
  // The Kl_inf term is the contribution of the single radius |alpha| = q^l*
  // with 2 l* = deg(t^2Q F*(c) / (k g)); alpha runs in T, so the term exists
  // only for l* <= -1.  (The odd-degree case is the vanishing Kl_inf branch.)
  int two_lstar = 2 * p_.Q + dual.ord() - p_.k.deg() - p_.g.deg();
  if (two_lstar > -2) return CycQ::zero(prime);
  // arg = k F*(c) / (4 r^2 g^3)
  Poly tm1 = Poly::t(f) - Poly::constant(f, 1);
  Poly num = p_.k * dual.num;
  Poly den = (r * r * p_.g * p_.g * p_.g).mul_scalar(f.from_int(4));
  for (int i = 0; i < dual.e; ++i) den = den * tm1;
  int ord_arg = num.deg() - den.deg();
  Laurent arg = Laurent::from_rational(num, den, ord_arg - 48);
  CycQ kinf = kl_infinity_closed(arg);
  // -Qhat^2 |g|^2 |r|^2 |F*(c)|^-1
  int scale = 2 * p_.Q + 2 * p_.g.deg() + 2 * r.deg() - dual.ord();
  return (CycQ::p_power(prime, static_cast<int>(kext) * scale) * kinf).scaled(-1);
}

CycQ osc_integral_numeric(const SystemParams& p, const Poly& r, const PolyVec4& c, int depth,
                          const Budget& budget) {
  return OscEvaluator(p, budget).numeric(r, c, depth);
}

CycQ osc_integral_zero(const SystemParams& p, int deg_r, const Budget& budget) {
  return OscEvaluator(p, budget).zero_value(deg_r);
}

CycQ osc_integral_closed(const SystemParams& p, const Poly& r, const PolyVec4& c,
                         OscBranch* branch, const Budget& budget) {
  return OscEvaluator(p, budget).closed(r, c, branch);
}

// ---------------------------------------------------------------------------
// Counting
// ---------------------------------------------------------------------------

std::int64_t count_solutions(const SystemParams& p, const Budget& budget) {
  Fq f = p.form.field;
  std::uint64_t side = ipow(f.q(), p.R);
  std::uint64_t cells = side * side * side * side;
  std::uint64_t used = 0;
  budget.charge(cells, used, "count_solutions");
  std::vector<Poly> parts = polys_below(f, p.R);
  std::uint64_t n = parts.size();
  Poly two = Poly::constant(f, f.from_int(2));
  std::vector<std::vector<Poly>> piece(4);
  for (int j = 0; j < 4; ++j)
    for (const Poly& P : parts)
      piece[j].push_back(p.g * p.form.eta[j] * P * P + two * p.form.eta[j] * p.lambda[j] * P);
  std::int64_t count = 0;
  for (std::uint64_t i = 0; i < cells; ++i) {
    std::uint64_t v = i;
    Poly N = -p.k;
    for (int j = 0; j < 4; ++j) {
      N = N + piece[j][v % n];
      v /= n;
    }
    if (N.is_zero()) ++count;  // N(P) = 0 <=> F(gP + lambda) = f
  }
  return count;
}

CycQ delta_reconstruct(const SystemParams& p, const Budget& budget) {
  Fq f = p.form.field;
  std::uint32_t prime = f.p();
  std::uint32_t kext = f.ext_degree();
  OscEvaluator osc(p, budget);

  int cmax = p.g.deg();  // I vanishes for deg c_i > deg g (kappa >= q)
  std::uint64_t n = ipow(f.q(), cmax + 1);
  std::uint64_t total = n * n * n * n;

  CycQ acc = CycQ::zero(prime);
  for (int dr = 0; dr <= p.Q; ++dr) {
    for (const Poly& r : monic_of_degree(f, dr)) {
      // S values for the whole window (direct evaluation when the closed
      // form's standing hypotheses do not hold).
      ExpSumWindow win;
      bool have_window = false;
      if (!p.strict) {
        win = exp_sum_direct_window(p, r, cmax, budget);
        have_window = true;
      }
      for (std::uint64_t ci = 0; ci < total; ++ci) {
        PolyVec4 c = c_window_from_index(p, cmax, ci);
        CycQ S;
        if (have_window) {
          S = CycQ(win.values[ci]);
        } else {
          S = exp_sum_closed(p, r, c);
        }
        if (S.is_zero()) continue;
        CycQ I;
        try {
          I = osc.closed(r, c);
        } catch (const DomainError&) {
          I = osc.numeric(r, c);
        }
        if (I.is_zero()) continue;
        CycQ term = S * I * CycQ::p_power(prime, -static_cast<int>(kext) * 4 * (p.g.deg() + dr));
        acc += term;
      }
    }
  }
  // 1 / (|g| Qhat^2)
  return acc * CycQ::p_power(prime, -static_cast<int>(kext) * (p.g.deg() + 2 * p.Q));
}

std::int64_t delta_reconstruct_count(const SystemParams& p, const Budget& budget) {
  CycQ v = delta_reconstruct(p, budget);
  std::int64_t n = 0;
  if (!v.is_integer(&n)) throw Error("delta_reconstruct: non-integral value " + std::to_string(v.abs()));
  return n;
}

// ---------------------------------------------------------------------------
// Local densities
// ---------------------------------------------------------------------------

DensitySequence local_density(const SystemParams& p, const Poly& varpi, int k_max,
                              const Budget& budget) {
  if (!is_irreducible(varpi)) throw DomainError("local_density: varpi must be irreducible");
  Fq f = p.form.field;
  DensitySequence seq;
  seq.varpi = varpi;
  Poly g = p.g;
  while (varpi.divides(g) && g.deg() > 0) {
    ++seq.v;
    g = g / varpi;
  }
  Poly wv = Poly::constant(f, 1);
  for (int i = 0; i < seq.v; ++i) wv = wv * varpi;

  for (int k = 1; k <= k_max; ++k) {
    Poly M = wv;
    for (int i = 0; i < k; ++i) M = M * varpi;
    ResidueIndexer midx(M);
    std::uint64_t yside = ipow(f.q(), varpi.deg() * k);
    std::uint64_t used = 0;
    budget.charge(2 * yside * yside + 2 * midx.size(), used, "local_density");
    std::vector<std::int64_t> A(midx.size(), 0), B(midx.size(), 0);
    // x_i = lambda_i + varpi^v y_i, y_i mod varpi^k.
    Poly wk = Poly::constant(f, 1);
    for (int i = 0; i < k; ++i) wk = wk * varpi;
    ResidueIndexer ykidx(wk);
    for (std::uint64_t i1 = 0; i1 < yside; ++i1) {
      Poly y1 = ykidx.from_index(i1);
      Poly x1 = p.lambda[0] + wv * y1;
      Poly q1 = (p.form.eta[0] * x1 * x1) % M;
      for (std::uint64_t i2 = 0; i2 < yside; ++i2) {
        Poly y2 = ykidx.from_index(i2);
        Poly x2 = p.lambda[1] + wv * y2;
        Poly w = (q1 + p.form.eta[1] * x2 * x2) % M;
        A[midx.to_index(w)]++;
      }
    }
    for (std::uint64_t i3 = 0; i3 < yside; ++i3) {
      Poly y3 = ykidx.from_index(i3);
      Poly x3 = p.lambda[2] + wv * y3;
      Poly q3 = (p.form.eta[2] * x3 * x3) % M;
      for (std::uint64_t i4 = 0; i4 < yside; ++i4) {
        Poly y4 = ykidx.from_index(i4);
        Poly x4 = p.lambda[3] + wv * y4;
        Poly w = (q3 + p.form.eta[3] * x4 * x4) % M;
        B[midx.to_index(w)]++;
      }
    }
    std::int64_t N = 0;
    for (std::uint64_t w = 0; w < midx.size(); ++w) {
      if (A[w] == 0) continue;
      Poly target = (p.f - midx.from_index(w)) % M;
      N += A[w] * B[midx.to_index(target)];
    }
    seq.counts.push_back(N);
    seq.sigma.push_back(static_cast<double>(N) /
                        std::pow(static_cast<double>(f.q()), 3.0 * k * varpi.deg()));
  }
  // Exact stabilization: N_{k+1} = N_k * |varpi|^3.
  std::int64_t scale = ipow(f.q(), 3 * varpi.deg());
  seq.k_star = -1;
  for (int k = 1; k < k_max; ++k) {
    bool stable = true;
    for (int j = k; j < k_max; ++j)
      if (seq.counts[j] != seq.counts[j - 1] * scale) stable = false;
    if (stable) {
      seq.k_star = k;
      break;
    }
  }
  seq.stabilized = seq.k_star > 0;
  return seq;
}

CycQ singular_series_r_sum(const SystemParams& p, int T) {
  Fq f = p.form.field;
  std::uint32_t prime = f.p();
  std::uint32_t kext = f.ext_degree();
  PolyVec4 zero{Poly(f), Poly(f), Poly(f), Poly(f)};
  CycQ acc = CycQ::zero(prime);
  for (int d = 0; d <= T; ++d)
    for (const Poly& r : monic_of_degree(f, d)) {
      CycQ S = exp_sum_closed(p, r, zero);
      acc += S * CycQ::p_power(prime, -static_cast<int>(kext) * 4 * (p.g.deg() + d));
    }
  return acc;
}

CycQ singular_series_r_sum_smooth(const SystemParams& p, int T, int smooth_deg) {
  Fq f = p.form.field;
  std::uint32_t prime = f.p();
  std::uint32_t kext = f.ext_degree();
  PolyVec4 zero{Poly(f), Poly(f), Poly(f), Poly(f)};
  CycQ acc = CycQ::zero(prime);
  for (int d = 0; d <= T; ++d)
    for (const Poly& r : monic_of_degree(f, d)) {
      // keep r only if all irreducible factors have degree <= smooth_deg
      Poly rest = r;
      for (int e = 1; e <= smooth_deg && rest.deg() > 0; ++e)
        for (const Poly& w : irreducibles_of_degree(f, e))
          while (w.divides(rest)) rest = rest / w;
      if (rest.deg() != 0) continue;
      CycQ S = exp_sum_closed(p, r, zero);
      acc += S * CycQ::p_power(prime, -static_cast<int>(kext) * 4 * (p.g.deg() + d));
    }
  return acc;
}

double singular_series_product(const SystemParams& p, int D, int k_max, const Budget& budget) {
  double prod = 1.0;
  for (int d = 1; d <= D; ++d) {
    // Enumeration cost grows like q^(2kd); two levels always suffice to
    // witness stabilization, so cap k per degree.
    int k_d = std::max(2, std::min(k_max, 7 / d));
    for (const Poly& w : irreducibles_of_degree(p.form.field, d)) {
      DensitySequence seq = local_density(p, w, k_d, budget);
      if (!seq.stabilized)
        throw Error("singular_series_product: sigma not stabilized for a prime of degree " +
                    std::to_string(d) + " at k_max " + std::to_string(k_d));
      prod *= seq.sigma[seq.k_star - 1];
    }
  }
  return prod;
}

// ---------------------------------------------------------------------------
// Error terms and section-6 kernels
// ---------------------------------------------------------------------------

ErrorTermsReport error_terms(const SystemParams& p, const Budget& budget) {
  Fq f = p.form.field;
  std::uint32_t prime = f.p();
  std::uint32_t kext = f.ext_degree();
  ErrorTermsReport rep;
  rep.e1 = CycQ::zero(prime);
  rep.e2 = CycQ::zero(prime);
  rep.c_zero = CycQ::zero(prime);
  rep.count = count_solutions(p, budget);

  OscEvaluator osc(p, budget);
  PolyVec4 zero{Poly(f), Poly(f), Poly(f), Poly(f)};
  auto eval_term = [&](const Poly& r, const PolyVec4& c) -> CycQ {
    CycQ S = p.strict ? exp_sum_closed(p, r, c) : CycQ(exp_sum_direct(p, r, c, budget));
    if (S.is_zero()) return CycQ::zero(prime);
    CycQ I;
    try {
      I = osc.closed(r, c);
    } catch (const DomainError&) {
      I = osc.numeric(r, c);
    }
    return S * I * CycQ::p_power(prime, -static_cast<int>(kext) * 4 * (p.g.deg() + r.deg()));
  };

  for (int dr = 0; dr <= p.Q; ++dr)
    for (const Poly& r : monic_of_degree(f, dr)) rep.c_zero += eval_term(r, zero);

  int cmax = p.g.deg();
  std::uint64_t n = ipow(f.q(), cmax + 1);
  std::uint64_t total = n * n * n * n;
  for (std::uint64_t ci = 0; ci < total; ++ci) {
    PolyVec4 c = c_window_from_index(p, cmax, ci);
    auto ke = p.kappa_exp(c);
    if (!ke) continue;  // c = 0 handled above
    int maxdeg = *ke + p.g.deg();
    int pi = p.pi_c(c);
    // E1: 1 <= |r| <= Rhat |c| q^(pi-1) / |g|; E2: the rest up to Qhat.
    int e1_top = std::min(p.R + maxdeg + pi - 1 - p.g.deg(), p.Q);
    for (int dr = 0; dr <= p.Q; ++dr) {
      for (const Poly& r : monic_of_degree(f, dr)) {
        CycQ term = eval_term(r, c);
        if (term.is_zero()) continue;
        if (dr <= e1_top) {
          rep.e1 += term;
          rep.rows.push_back({c, r, 1, term.to_complex()});
        } else {
          rep.e2 += term;
          rep.rows.push_back({c, r, 2, term.to_complex()});
        }
      }
    }
  }
  rep.total_identity = rep.e1 + rep.e2 + rep.c_zero;
  CycQ target = CycQ::integer(prime, rep.count) *
                CycQ::p_power(prime, static_cast<int>(kext) * (p.g.deg() + 2 * p.Q));
  rep.identity_ok = rep.total_identity == target;

  for (int T = 0; T <= p.g.deg(); ++T) {
    std::int64_t census = 0;
    std::uint64_t nt = ipow(f.q(), T + 1);
    std::uint64_t tot = nt * nt * nt * nt;
    for (std::uint64_t ci = 0; ci < tot; ++ci) {
      PolyVec4 c = c_window_from_index(p, T, ci);
      if (!p.kappa_exp(c)) continue;
      if (p.beta_of_c(c)) ++census;
    }
    rep.exceptional_census.push_back(census);
  }
  return rep;
}

CycQ tls_kernel(const SystemParams& p, const PolyVec4& c, int T, TlsVariant variant,
                const Poly& delta, const Budget& budget) {
  Fq f = p.form.field;
  std::uint32_t prime = f.p();
  if (p.g.deg() > 0 && !is_irreducible(p.g))
    throw DomainError("tls_kernel: g must be irreducible");
  auto beta = p.beta_of_c(c);
  if (!beta) return CycQ::zero(prime);
  Tm1Frac dual = p.dual_form(c);
  Poly tm1 = Poly::t(f) - Poly::constant(f, 1);
  Poly g2 = p.g * p.g;
  Poly alpha = (*beta) * (p.f - p.form.eval(p.lambda)) + dot(p.lambda, c);

  Poly dm = delta.monic();
  if (dm.deg() > T) return CycQ::zero(prime);
  std::uint64_t used = 0;
  CycQ acc = CycQ::zero(prime);
  for (const Poly& s : monic_of_degree(f, T - dm.deg())) {
    Poly r = dm * s;
    if (p.g.deg() > 0 && gcd_monic(r, p.g).deg() != 0) continue;
    if (dual.e > 0 && gcd_monic(r, tm1).deg() != 0)
      throw DomainError("tls_kernel: F*(c) has a (t-1) denominator but (t-1) | r");
    budget.charge(ipow(f.q(), r.deg()) + 8, used, "tls_kernel");
    Cyc phase = g2.deg() > 0 ? psi_r(-(inv_mod(r, g2) * alpha), g2) : Cyc::one(prime);
    CycQ term(phase);
    if (r.deg() > 0) {
      Poly invg = inv_mod(p.g, r);
      Poly inv4 = inv_mod(Poly::from_int(f, 4), r);
      Poly n1 = (invg * p.f) % r;
      Poly n2 = (inv4 * invg * invg * invg * dual.reduce_mod(r)) % r;
      term = term * CycQ(kl_finite(n1, n2, r));
    }
    if (variant == TlsVariant::kWithInfinity) {
      // Kl_inf(psi, f F*(c) / (4 r^2 g^4))
      Poly num = p.f * dual.num;
      Poly den = (r * r * p.g * p.g * p.g * p.g).mul_scalar(f.from_int(4));
      for (int i = 0; i < dual.e; ++i) den = den * tm1;
      if (num.is_zero()) throw DomainError("tls_kernel: Kl_inf argument is zero");
      int ord_arg = num.deg() - den.deg();
      Laurent arg = Laurent::from_rational(num, den, ord_arg - 48);
      term = term * kl_infinity_closed(arg);
    }
    acc += term;
  }
  return acc;
}

}  // namespace ffcm
