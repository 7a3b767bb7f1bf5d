#include "ffcm/tlsweep.hpp"

#include <atomic>
#include <chrono>
#include <cmath>
#include <sstream>
#include <thread>

#include "ffcm/io.hpp"
#include "ffcm/version.hpp"

namespace ffcm {

namespace {

std::int64_t ipow(std::int64_t b, int e) {
  std::int64_t r = 1;
  for (int i = 0; i < e; ++i) r *= b;
  return r;
}

}  // namespace

void TLSParams::validate() const {
  if (g.is_zero()) throw DomainError("TLSParams: g must be nonzero");
  if (a.num.is_zero() || b.num.is_zero()) throw DomainError("TLSParams: a, b must be nonzero");
  if (delta.is_zero()) throw DomainError("TLSParams: delta must be nonzero");
  if (g.deg() > 0 && delta.deg() > 0 && gcd_monic(delta, g).deg() != 0)
    throw DomainError("TLSParams: (delta, g) = 1 required");
  if (T < 0) throw DomainError("TLSParams: T >= 0 required");
}

std::string TLSParams::param_string() const {
  std::ostringstream os;
  os << "q=" << field.q() << ";g=" << to_coeff_string(g) << ";delta=" << to_coeff_string(delta)
     << ";alpha=" << to_coeff_string(alpha) << ";a=" << to_coeff_string(a.num) << "/g^" << a.gpow
     << ";b=" << to_coeff_string(b.num) << "/g^" << b.gpow
     << ";variant=" << (variant == SweepVariant::kFinite ? "finite" : "with_infinity")
     << ";T=" << T;
  return os.str();
}

TLSValue tls_sum(const TLSParams& p, const Budget& budget) {
  p.validate();
  Fq f = p.field;
  std::uint32_t prime = f.p();
  TLSValue out;
  out.sum = CycQ::zero(prime);
  Poly dm = p.delta.monic();
  if (dm.deg() > p.T) return out;  // empty sum
  Poly g2 = p.g.monic() * p.g.monic();
  Poly gm = p.g.monic();
  std::uint64_t used = 0;
  for (const Poly& s : monic_of_degree(f, p.T - dm.deg())) {
    Poly r = dm * s;
    if (gm.deg() > 0 && gcd_monic(r, gm).deg() != 0) continue;
    budget.charge(ipow(f.q(), r.deg()) + 4, used, "tls_sum");
    // psi_{g^2}(alpha r^-1)
    Cyc phase = Cyc::one(prime);
    if (g2.deg() > 0) phase = psi_r((p.alpha % g2) * inv_mod(r, g2), g2);
    // Kl_r(a, b) with a = a_num / g^a_gpow etc.
    Cyc kl = Cyc::one(prime);
    if (r.deg() > 0) {
      Poly ginv = inv_mod(gm, r);
      Poly an = (p.a.num % r) * pow_mod(ginv, p.a.gpow, r);
      Poly bn = (p.b.num % r) * pow_mod(ginv, p.b.gpow, r);
      kl = kl_finite(an, bn, r);
    }
    CycQ term = CycQ(phase * kl);
    if (p.variant == SweepVariant::kWithInfinity) {
      // Kl_inf(psi, a b / r^2)
      Poly num = p.a.num * p.b.num;
      Poly den = r * r;
      for (int i = 0; i < p.a.gpow + p.b.gpow; ++i) den = den * gm;
      int ord_arg = num.deg() - den.deg();
      Laurent arg = Laurent::from_rational(num, den, ord_arg - 48);
      term = term * kl_infinity_closed(arg);
    }
    out.sum += term;
    out.n_terms += 1;
    out.abs_term_sum += kl.abs();
  }
  return out;
}

TLSValue tls_sum_cumulative(const TLSParams& p, const Budget& budget) {
  TLSValue out;
  out.sum = CycQ::zero(p.field.p());
  for (int t = 0; t <= p.T; ++t) {
    TLSParams pt = p;
    pt.T = t;
    TLSValue v = tls_sum(pt, budget);
    out.sum += v.sum;
    out.n_terms += v.n_terms;
    out.abs_term_sum += v.abs_term_sum;
  }
  return out;
}

SweepResult sweep(const TLSParams& base, int T_max, int jobs, const Budget& budget) {
  SweepResult res;
  res.records.resize(T_max + 1);
  res.cumulative_records.resize(T_max + 1);

  auto eval_one = [&](int T) {
    TLSParams p = base;
    p.T = T;
    auto t0 = std::chrono::steady_clock::now();
    TLSValue v = tls_sum(p, budget);
    auto t1 = std::chrono::steady_clock::now();
    SweepRecord rec;
    rec.params = p;
    rec.params_hash = fnv1a(p.param_string());
    rec.value = v.sum;
    rec.modulus = v.sum.abs();
    rec.n_terms = v.n_terms;
    rec.abs_term_sum = v.abs_term_sum;
    rec.seconds = std::chrono::duration<double>(t1 - t0).count();
    rec.revision = kRevision;
    res.records[T] = rec;
  };
  if (jobs <= 1) {
    for (int T = 0; T <= T_max; ++T) eval_one(T);
  } else {
    std::vector<std::thread> pool;
    std::atomic<int> next{0};
    for (int j = 0; j < jobs; ++j)
      pool.emplace_back([&] {
        int T;
        while ((T = next.fetch_add(1)) <= T_max) eval_one(T);
      });
    for (auto& th : pool) th.join();
  }

  // Cumulative rows + window identity (Remark 1.3): the |r| <= q^T value must
  // equal the exact sum of the |r| = q^t rows.
  res.window_identity_ok = true;
  CycQ running = CycQ::zero(base.field.p());
  for (int T = 0; T <= T_max; ++T) {
    TLSParams p = base;
    p.T = T;
    auto t0 = std::chrono::steady_clock::now();
    TLSValue v = tls_sum_cumulative(p, budget);
    auto t1 = std::chrono::steady_clock::now();
    SweepRecord rec;
    rec.params = p;
    rec.params_hash = fnv1a(p.param_string() + ";cumulative");
    rec.value = v.sum;
    rec.modulus = v.sum.abs();
    rec.n_terms = v.n_terms;
    rec.abs_term_sum = v.abs_term_sum;
    rec.seconds = std::chrono::duration<double>(t1 - t0).count();
    rec.revision = kRevision;
    res.cumulative_records[T] = rec;
    running += res.records[T].value;
    if (!(running == v.sum)) res.window_identity_ok = false;
  }

  // Least-squares slope of log_q |sum| over T with nonzero sums.
  double lq = std::log(static_cast<double>(base.field.q()));
  std::vector<std::pair<double, double>> pts;
  for (int T = 0; T <= T_max; ++T)
    if (res.records[T].modulus > 1e-12)
      pts.push_back({static_cast<double>(T), std::log(res.records[T].modulus) / lq});
  res.fit.n_points = static_cast<int>(pts.size());
  if (pts.size() >= 3) {
    double sx = 0, sy = 0, sxx = 0, sxy = 0;
    for (auto [x, y] : pts) {
      sx += x;
      sy += y;
      sxx += x * x;
      sxy += x * y;
    }
    double n = static_cast<double>(pts.size());
    double denom = n * sxx - sx * sx;
    res.fit.valid = denom > 1e-12;
    if (res.fit.valid) {
      res.fit.slope = (n * sxy - sx * sy) / denom;
      res.fit.intercept = (sy - res.fit.slope * sx) / n;
    }
  } else {
    res.fit.note = "insufficient signal (fewer than 3 nonzero sums)";
  }

  // Term-count x Weil ceiling: n_terms * 2^omega(r) |(a,b,r)|^(1/2) |r|^(1/2)
  // with omega(r) <= T and |(a,b,r)| <= q^(deg a_num + deg b_num), times q for
  // the Kl_inf factor (|Kl_inf| <= (q-1) max(q^a, 1) on the evaluated range).
  res.weil_ceiling_ok = true;
  double q = base.field.q();
  int dab = std::max(base.a.num.deg(), 0) + std::max(base.b.num.deg(), 0);
  for (int T = 0; T <= T_max; ++T) {
    const auto& rec = res.records[T];
    if (rec.n_terms == 0) continue;
    double ceiling = static_cast<double>(rec.n_terms) * std::pow(2.0, T) *
                     std::pow(q, 0.5 * T + 0.5 * dab);
    if (base.variant == SweepVariant::kWithInfinity) ceiling *= q;
    double ratio = rec.modulus / std::max(ceiling, 1e-300);
    res.max_ceiling_ratio = std::max(res.max_ceiling_ratio, ratio);
    if (rec.modulus > ceiling * (1 + 1e-9)) res.weil_ceiling_ok = false;
  }
  return res;
}

std::string sweep_csv_header() {
  return "q,g,delta,alpha,a_num,a_gpow,b_num,b_gpow,variant,T,re,im,modulus,n_terms,seconds";
}

std::string sweep_csv_row(const SweepRecord& rec) {
  std::ostringstream os;
  auto z = rec.value.to_complex();
  char buf[64];
  // human polynomial form: no commas, CSV-safe
  os << rec.params.field.q() << "," << to_string(rec.params.g) << ","
     << to_string(rec.params.delta) << "," << to_string(rec.params.alpha) << ","
     << to_string(rec.params.a.num) << "," << rec.params.a.gpow << ","
     << to_string(rec.params.b.num) << "," << rec.params.b.gpow << ","
     << (rec.params.variant == SweepVariant::kFinite ? "finite" : "with_infinity") << ","
     << rec.params.T << ",";
  std::snprintf(buf, sizeof buf, "%.17g", z.real());
  os << buf << ",";
  std::snprintf(buf, sizeof buf, "%.17g", z.imag());
  os << buf << ",";
  std::snprintf(buf, sizeof buf, "%.17g", rec.modulus);
  os << buf << "," << rec.n_terms << ",";
  std::snprintf(buf, sizeof buf, "%.6f", rec.seconds);
  os << buf;
  return os.str();
}

}  // namespace ffcm
