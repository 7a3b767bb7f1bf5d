#include "ffcm/poly.hpp"

#include <algorithm>
#include <cmath>

namespace ffcm {

Poly Poly::monomial(Fq f, FqElem c, int d) {
  if (c == 0) return Poly(f);
  std::vector<FqElem> v(d + 1, 0);
  v[d] = c;
  return Poly(f, std::move(v));
}

FqElem Poly::eval(FqElem x) const {
  FqElem acc = 0;
  for (std::size_t i = c_.size(); i-- > 0;) acc = f_.add(f_.mul(acc, x), c_[i]);
  return acc;
}

Poly Poly::operator+(const Poly& o) const {
  std::vector<FqElem> v(std::max(c_.size(), o.c_.size()), 0);
  for (std::size_t i = 0; i < v.size(); ++i) v[i] = f_.add(coeff(i), o.coeff(i));
  return Poly(f_, std::move(v));
}

Poly Poly::operator-(const Poly& o) const { return *this + (-o); }

Poly Poly::operator-() const {
  std::vector<FqElem> v(c_);
  for (auto& x : v) x = f_.neg(x);
  return Poly(f_, std::move(v));
}

Poly Poly::operator*(const Poly& o) const {
  if (is_zero() || o.is_zero()) return Poly(f_);
  std::vector<FqElem> v(c_.size() + o.c_.size() - 1, 0);
  for (std::size_t i = 0; i < c_.size(); ++i) {
    if (c_[i] == 0) continue;
    for (std::size_t j = 0; j < o.c_.size(); ++j)
      v[i + j] = f_.add(v[i + j], f_.mul(c_[i], o.c_[j]));
  }
  return Poly(f_, std::move(v));
}

Poly Poly::mul_scalar(FqElem s) const {
  if (s == 0) return Poly(f_);
  std::vector<FqElem> v(c_);
  for (auto& x : v) x = f_.mul(x, s);
  return Poly(f_, std::move(v));
}

Poly Poly::shift(int d) const {
  if (is_zero()) return *this;
  std::vector<FqElem> v(c_.size() + d, 0);
  std::copy(c_.begin(), c_.end(), v.begin() + d);
  return Poly(f_, std::move(v));
}

bool Poly::lex_less(const Poly& o) const {
  int top = std::max(deg(), o.deg());
  for (int i = 0; i <= top; ++i) {
    if (coeff(i) != o.coeff(i)) return coeff(i) < o.coeff(i);
  }
  return false;
}

std::pair<Poly, Poly> Poly::divmod(const Poly& o) const {
  if (o.is_zero()) throw DomainError("polynomial division by zero");
  if (deg() < o.deg()) return {Poly(f_), *this};
  FqElem linv = f_.inv(o.lead());
  std::vector<FqElem> rem(c_);
  std::vector<FqElem> quo(deg() - o.deg() + 1, 0);
  for (int d = deg(); d >= o.deg(); --d) {
    FqElem top = rem[d];
    if (top == 0) continue;
    FqElem qc = f_.mul(top, linv);
    quo[d - o.deg()] = qc;
    for (int j = 0; j <= o.deg(); ++j)
      rem[d - o.deg() + j] = f_.sub(rem[d - o.deg() + j], f_.mul(qc, o.coeff(j)));
  }
  return {Poly(f_, std::move(quo)), Poly(f_, std::move(rem))};
}

bool Poly::divides(const Poly& o) const {
  if (is_zero()) return o.is_zero();
  return (o % *this).is_zero();
}

Poly Poly::monic() const {
  if (is_zero()) return *this;
  return mul_scalar(f_.inv(lead()));
}

Poly gcd_monic(const Poly& a, const Poly& b) {
  if (a.is_zero() && b.is_zero()) throw DomainError("gcd(0, 0) undefined");
  Poly x = a, y = b;
  while (!y.is_zero()) {
    Poly r = x % y;
    x = y;
    y = r;
  }
  return x.monic();
}

Poly inv_mod(const Poly& x, const Poly& r) {
  if (r.deg() < 1) {
    if (r.is_zero()) throw DomainError("inv_mod: zero modulus");
    return Poly::zero(x.field());  // everything is 0 mod a unit
  }
  // Extended Euclid on (x mod r, r).
  Poly a = x % r, b = r;
  Fq f = x.field();
  Poly s0 = Poly::constant(f, 1), s1 = Poly::zero(f);
  while (!b.is_zero()) {
    auto [q, rem] = a.divmod(b);
    Poly s2 = s0 - q * s1;
    a = b;
    b = rem;
    s0 = s1;
    s1 = s2;
  }
  if (a.deg() != 0) throw DomainError("inv_mod: element is not a unit");
  return (s0.mul_scalar(f.inv(a.lead()))) % r;
}

std::optional<Poly> solve_linear_mod(const Poly& a, const Poly& b, const Poly& r) {
  if (r.deg() < 1) return Poly::zero(a.field());
  if (a.is_zero() || (a % r).is_zero()) {
    if ((b % r).is_zero()) return Poly::zero(a.field());
    return std::nullopt;
  }
  Poly d = gcd_monic(a % r, r);
  if (!d.divides(b % r)) return std::nullopt;
  Poly a2 = (a % r) / d, b2 = (b % r) / d, r2 = r / d;
  if (r2.deg() < 1) return Poly::zero(a.field());
  return (inv_mod(a2, r2) * b2) % r2;
}

Poly m_part(const Poly& g, const Poly& r) {
  if (g.is_zero() || r.is_zero()) throw DomainError("m_part needs nonzero arguments");
  Poly w = g.monic();
  while (true) {
    Poly d = gcd_monic(w, r);
    if (d.deg() == 0) break;
    w = w / d;
  }
  return (g.monic() / w);
}

int jacobi(const Poly& a, const Poly& r) {
  if (!r.is_monic()) throw DomainError("jacobi: modulus must be monic");
  const Fq f = a.field();
  if (f.p() == 2) throw DomainError("jacobi: odd characteristic required");
  // chi(alpha) = alpha^((q-1)/2) in {+1,-1} for alpha in F_q^*.
  auto chi = [&](FqElem alpha) { return f.pow(alpha, (f.q() - 1) / 2) == 1 ? 1 : -1; };

  Poly A = a % r, R = r;
  int sign = 1;
  while (true) {
    if (R.deg() == 0) return sign;  // (anything / unit) = empty product
    if (A.is_zero()) return 0;
    // Pull out the leading unit: A = alpha * A1 with A1 monic.
    FqElem alpha = A.lead();
    Poly A1 = A.monic();
    if (chi(alpha) == -1 && (R.deg() & 1)) sign = -sign;
    if (A1.deg() == 0) return sign;
    // Reciprocity (Carlitz): (A1/R)(R/A1) = (-1)^{(q-1)/2 * degA1 * degR}.
    bool flip = ((f.q() - 1) / 2 % 2 == 1) && (A1.deg() & 1) && (R.deg() & 1);
    if (flip) sign = -sign;
    Poly next = R % A1;
    R = A1;
    A = next;
  }
}

Poly pow_mod(const Poly& a, std::uint64_t e, const Poly& r) {
  Poly base = a % r;
  Poly acc = Poly::constant(a.field(), 1) % r;
  while (e) {
    if (e & 1) acc = (acc * base) % r;
    base = (base * base) % r;
    e >>= 1;
  }
  return acc;
}

Poly frobenius_of_t(const Poly& r, std::uint32_t e) {
  Poly x = Poly::t(r.field()) % r;
  for (std::uint32_t i = 0; i < e; ++i) x = pow_mod(x, r.field().q(), r);
  return x;
}

bool is_irreducible(const Poly& g) {
  int n = g.deg();
  if (n <= 0) return false;
  if (n == 1) return true;
  // t^(q^n) == t mod g, and gcd(t^(q^(n/l)) - t, g) = 1 for prime l | n.
  Poly t = Poly::t(g.field());
  if (frobenius_of_t(g, n) != t % g) return false;
  for (int l = 2; l <= n; ++l) {
    if (n % l != 0) continue;
    bool prime = true;
    for (int d = 2; d * d <= l; ++d)
      if (l % d == 0) prime = false;
    if (!prime) continue;
    Poly diff = frobenius_of_t(g, n / l) - t;
    if (diff.is_zero() || gcd_monic(diff, g).deg() != 0) return false;
  }
  return true;
}

std::vector<Poly> monic_of_degree(Fq f, int deg) {
  std::vector<Poly> out;
  if (deg < 0) return out;
  std::uint64_t total = 1;
  for (int i = 0; i < deg; ++i) total *= f.q();
  out.reserve(total);
  for (std::uint64_t m = 0; m < total; ++m) {
    std::vector<FqElem> c(deg + 1, 0);
    c[deg] = 1;
    std::uint64_t v = m;
    for (int i = 0; i < deg; ++i) {  // least significant digit -> c_{deg-1}
      c[deg - 1 - i] = static_cast<FqElem>(v % f.q());
      v /= f.q();
    }
    out.emplace_back(f, std::move(c));
  }
  return out;
}

std::vector<Poly> polys_below(Fq f, int bound_deg) {
  std::vector<Poly> out;
  std::uint64_t total = 1;
  for (int i = 0; i < bound_deg; ++i) total *= f.q();
  out.reserve(total);
  for (std::uint64_t m = 0; m < total; ++m) {
    std::vector<FqElem> c(bound_deg, 0);
    std::uint64_t v = m;
    for (int i = 0; i < bound_deg; ++i) {
      c[bound_deg - 1 - i] = static_cast<FqElem>(v % f.q());
      v /= f.q();
    }
    out.emplace_back(f, std::move(c));
  }
  return out;  // packed ascending order = coefficient-lex order on padded vectors
}

std::vector<Poly> irreducibles_of_degree(Fq f, int deg) {
  std::vector<Poly> out;
  for (const Poly& g : monic_of_degree(f, deg))
    if (is_irreducible(g)) out.push_back(g);
  return out;
}

double norm(const Poly& p) {
  if (p.is_zero()) return 0.0;
  return std::pow(static_cast<double>(p.field().q()), p.deg());
}

ResidueIndexer::ResidueIndexer(Poly r) : r_(std::move(r)) {
  if (r_.deg() < 0) throw DomainError("ResidueIndexer: zero modulus");
  size_ = 1;
  for (int i = 0; i < r_.deg(); ++i) size_ *= r_.field().q();
}

Poly ResidueIndexer::from_index(std::uint64_t i) const {
  std::vector<FqElem> c(std::max(r_.deg(), 0), 0);
  for (int j = 0; j < r_.deg(); ++j) {
    c[j] = static_cast<FqElem>(i % r_.field().q());
    i /= r_.field().q();
  }
  return Poly(r_.field(), std::move(c));
}

std::uint64_t ResidueIndexer::to_index(const Poly& x) const {
  std::uint64_t idx = 0;
  for (int j = r_.deg() - 1; j >= 0; --j) idx = idx * r_.field().q() + x.coeff(j);
  return idx;
}

ResidueField::ResidueField(Poly g) : g_(std::move(g)) {
  if (!is_irreducible(g_)) throw DomainError("ResidueField: modulus must be irreducible");
  order_ = 1;
  for (int i = 0; i < g_.deg(); ++i) order_ *= g_.field().q();
}

bool ResidueField::euler_is_square(const Poly& x) const {
  Poly r = x % g_;
  if (r.is_zero()) throw DomainError("euler_is_square: zero element");
  Poly e = pow(r, (order_ - 1) / 2);
  return e.deg() == 0 && e.coeff(0) == 1;
}

std::optional<Poly> ResidueField::sqrt(const Poly& x) const {
  Poly r = x % g_;
  if (r.is_zero()) return Poly::zero(g_.field());
  if (!euler_is_square(r)) return std::nullopt;
  ResidueIndexer idx(g_);
  for (std::uint64_t i = 0; i < idx.size(); ++i) {
    Poly y = idx.from_index(i);
    if (mul(y, y) == r) {
      Poly yneg = (-y) % g_;
      return yneg.lex_less(y) ? yneg : y;  // smaller of the two roots
    }
  }
  return std::nullopt;
}

}  // namespace ffcm
