#include "ffcm/fq.hpp"

#include <algorithm>
#include <map>

namespace ffcm {

namespace {

bool is_prime(std::uint32_t n) {
  if (n < 2) return false;
  for (std::uint32_t d = 2; d * d <= n; ++d)
    if (n % d == 0) return false;
  return true;
}

// Factors q = p^k with p prime, or throws.
void split_prime_power(std::uint32_t q, std::uint32_t& p, std::uint32_t& k) {
  for (std::uint32_t c = 2; c * c <= q; ++c) {
    if (q % c == 0) {
      p = c;
      k = 0;
      std::uint32_t m = q;
      while (m % c == 0) {
        m /= c;
        ++k;
      }
      if (m != 1 || !is_prime(c)) throw DomainError("q must be a prime power");
      return;
    }
  }
  p = q;
  k = 1;
  if (!is_prime(q)) throw DomainError("q must be a prime power");
}

// Multiplies two F_p[u] polynomials (packed digit vectors) modulo h(u).
std::vector<std::uint32_t> polmulmod(const std::vector<std::uint32_t>& a,
                                     const std::vector<std::uint32_t>& b,
                                     const std::vector<std::uint32_t>& h, std::uint32_t p) {
  std::size_t k = h.size() - 1;
  std::vector<std::uint32_t> c(2 * k - 1, 0);
  for (std::size_t i = 0; i < k; ++i)
    for (std::size_t j = 0; j < k; ++j) c[i + j] = (c[i + j] + a[i] * b[j]) % p;
  for (std::size_t d = 2 * k - 2; d >= k && d < c.size(); --d) {
    std::uint32_t top = c[d];
    if (top == 0) continue;
    c[d] = 0;
    for (std::size_t j = 0; j < k; ++j) {
      // u^d = -h_lower(u) * u^(d-k)
      std::uint32_t s = (top * h[j]) % p;
      c[d - k + j] = (c[d - k + j] + p - s) % p;
    }
  }
  c.resize(k);
  return c;
}

std::vector<std::uint32_t> unpack(FqElem v, std::uint32_t p, std::uint32_t k) {
  std::vector<std::uint32_t> d(k);
  for (std::uint32_t i = 0; i < k; ++i) {
    d[i] = v % p;
    v /= p;
  }
  return d;
}

FqElem pack(const std::vector<std::uint32_t>& d, std::uint32_t p) {
  FqElem v = 0;
  for (std::size_t i = d.size(); i-- > 0;) v = v * p + d[i];
  return v;
}

// Irreducibility over F_p by root search / factor search; only used for the
// tiny extension moduli (k <= 4, p <= 13).
bool irreducible_fp(const std::vector<std::uint32_t>& h, std::uint32_t p) {
  std::size_t k = h.size() - 1;
  // No roots.
  for (std::uint32_t x = 0; x < p; ++x) {
    std::uint64_t acc = 0, xp = 1;
    for (std::size_t i = 0; i <= k; ++i) {
      acc = (acc + h[i] * xp) % p;
      xp = (xp * x) % p;
    }
    if (acc == 0) return false;
  }
  if (k <= 3) return true;
  if (k == 4) {
    // Check for monic quadratic factors.
    for (std::uint32_t b0 = 0; b0 < p; ++b0)
      for (std::uint32_t b1 = 0; b1 < p; ++b1) {
        // Divide h by u^2 + b1 u + b0 over F_p and test zero remainder.
        std::vector<std::uint32_t> r(h);
        for (std::size_t d = k; d >= 2; --d) {
          std::uint32_t c = r[d];
          if (c == 0) continue;
          r[d] = 0;
          r[d - 1] = (r[d - 1] + p - (c * b1) % p) % p;
          r[d - 2] = (r[d - 2] + p - (c * b0) % p) % p;
        }
        if (r[0] == 0 && r[1] == 0) return false;
      }
    return true;
  }
  throw DomainError("extension degree > 4 not supported");
}

// Lexicographically first monic irreducible of degree k over F_p, comparing
// ascending coefficient vectors (c_0, ..., c_{k-1}) with c_0 dominant.
std::vector<std::uint32_t> default_modulus(std::uint32_t p, std::uint32_t k) {
  std::uint64_t total = 1;
  for (std::uint32_t i = 0; i < k; ++i) total *= p;
  for (std::uint64_t m = 0; m < total; ++m) {
    std::vector<std::uint32_t> h(k + 1, 0);
    h[k] = 1;
    // digits of m in base p, most-significant-first = (c_0, c_1, ...)
    std::uint64_t v = m;
    for (std::uint32_t i = 0; i < k; ++i) {
      h[k - 1 - i] = static_cast<std::uint32_t>(v % p);
      v /= p;
    }
    if (irreducible_fp(h, p)) return h;
  }
  throw DomainError("no irreducible modulus found");
}

}  // namespace

Fq::Fq(std::uint32_t q) {
  auto ctx = std::make_shared<Ctx>();
  split_prime_power(q, ctx->p, ctx->k);
  ctx->q = q;
  if (ctx->p == 2) throw DomainError("odd characteristic required");
  if (q > 1024) throw DomainError("q > 1024 not supported (table-based arithmetic)");

  std::uint32_t p = ctx->p, k = ctx->k;
  if (k > 1) ctx->ext_modulus = default_modulus(p, k);

  ctx->add.resize(std::size_t(q) * q);
  ctx->mul.resize(std::size_t(q) * q);
  ctx->neg.resize(q);
  ctx->inv.assign(q, 0);
  ctx->trace.resize(q);
  ctx->is_square.assign(q, false);

  for (FqElem a = 0; a < q; ++a) {
    auto da = unpack(a, p, k);
    for (FqElem b = 0; b < q; ++b) {
      auto db = unpack(b, p, k);
      std::vector<std::uint32_t> s(k);
      for (std::uint32_t i = 0; i < k; ++i) s[i] = (da[i] + db[i]) % p;
      ctx->add[std::size_t(a) * q + b] = pack(s, p);
      if (k == 1) {
        ctx->mul[std::size_t(a) * q + b] = (a * b) % p;
      } else {
        ctx->mul[std::size_t(a) * q + b] = pack(polmulmod(da, db, ctx->ext_modulus, p), p);
      }
    }
    std::vector<std::uint32_t> n(k);
    for (std::uint32_t i = 0; i < k; ++i) n[i] = (p - da[i]) % p;
    ctx->neg[a] = pack(n, p);
  }
  for (FqElem a = 1; a < q; ++a) {
    ctx->is_square[ctx->mul[std::size_t(a) * q + a]] = true;
    for (FqElem b = 1; b < q; ++b)
      if (ctx->mul[std::size_t(a) * q + b] == 1) {
        ctx->inv[a] = b;
        break;
      }
  }
  ctx->is_square[0] = true;
  // trace(a) = a + a^p + ... + a^(p^(k-1))
  for (FqElem a = 0; a < q; ++a) {
    FqElem acc = 0, frob = a;
    for (std::uint32_t i = 0; i < k; ++i) {
      acc = ctx->add[std::size_t(acc) * q + frob];
      if (i + 1 < k) {
        FqElem f = frob;
        for (std::uint32_t j = 1; j < p; ++j) f = ctx->mul[std::size_t(f) * q + frob];
        frob = f;
      }
    }
    ctx->trace[a] = acc;  // lies in F_p, packed value < p
  }
  ctx_ = std::move(ctx);
}

FqElem Fq::from_int(std::int64_t n) const {
  std::int64_t m = n % static_cast<std::int64_t>(ctx_->p);
  if (m < 0) m += ctx_->p;
  return static_cast<FqElem>(m);
}

FqElem Fq::inv(FqElem a) const {
  if (a == 0) throw DomainError("division by zero in F_q");
  return ctx_->inv[a];
}

FqElem Fq::pow(FqElem a, std::uint64_t e) const {
  FqElem r = 1, b = a;
  while (e) {
    if (e & 1) r = mul(r, b);
    b = mul(b, b);
    e >>= 1;
  }
  return r;
}

FqElem Fq::non_square() const {
  for (FqElem a = 1; a < q(); ++a)
    if (!is_square(a)) return a;
  throw DomainError("no non-square in F_q");
}

}  // namespace ffcm
