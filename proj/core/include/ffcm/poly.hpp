#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "ffcm/fq.hpp"

namespace ffcm {

// Element of F_q[t], ascending coefficients, no trailing zeros.
// deg(0) = -infinity, encoded as -1 by deg().  Norm |p| = q^deg(p), |0| = 0.
class Poly {
 public:
  Poly() = default;  // placeholder; assign before use
  explicit Poly(Fq field) : f_(field) {}
  Poly(Fq field, std::vector<FqElem> coeffs) : f_(field), c_(std::move(coeffs)) { trim(); }

  static Poly zero(Fq f) { return Poly(f); }
  static Poly constant(Fq f, FqElem a) { return Poly(f, {a}); }
  static Poly from_int(Fq f, std::int64_t n) { return constant(f, f.from_int(n)); }
  // c * t^d
  static Poly monomial(Fq f, FqElem c, int d);
  static Poly t(Fq f) { return monomial(f, 1, 1); }

  const Fq& field() const { return f_; }
  // -1 for the zero polynomial.
  int deg() const { return static_cast<int>(c_.size()) - 1; }
  bool is_zero() const { return c_.empty(); }
  bool is_one() const { return c_.size() == 1 && c_[0] == 1; }
  bool is_monic() const { return !c_.empty() && c_.back() == 1; }
  FqElem coeff(int i) const {
    return (i >= 0 && i < static_cast<int>(c_.size())) ? c_[i] : 0;
  }
  FqElem lead() const { return c_.empty() ? 0 : c_.back(); }
  const std::vector<FqElem>& coeffs() const { return c_; }

  FqElem eval(FqElem x) const;

  Poly operator+(const Poly& o) const;
  Poly operator-(const Poly& o) const;
  Poly operator-() const;
  Poly operator*(const Poly& o) const;
  Poly mul_scalar(FqElem s) const;
  Poly shift(int d) const;  // * t^d, d >= 0

  bool operator==(const Poly& o) const { return c_ == o.c_; }
  bool operator!=(const Poly& o) const { return !(*this == o); }
  // Packed-coefficient lexicographic order (ascending vectors, c_0 dominant),
  // the tie-break order of the spec'd enumerations.
  bool lex_less(const Poly& o) const;

  // Quotient and remainder; o != 0.
  std::pair<Poly, Poly> divmod(const Poly& o) const;
  Poly operator/(const Poly& o) const { return divmod(o).first; }
  Poly operator%(const Poly& o) const { return divmod(o).second; }
  bool divides(const Poly& o) const;  // *this | o

  Poly monic() const;  // scale so lead() == 1; zero stays zero

  friend Poly gcd_monic(const Poly& a, const Poly& b);

 private:
  void trim() {
    while (!c_.empty() && c_.back() == 0) c_.pop_back();
  }
  Fq f_;
  std::vector<FqElem> c_;
};

// Monic generator of (a, b); both zero is an error.
Poly gcd_monic(const Poly& a, const Poly& b);

// x^-1 mod r (deg result < deg r); gcd(x, r) must be 1.
Poly inv_mod(const Poly& x, const Poly& r);

// Solves a*x ≡ b mod r; empty if gcd(a, r) does not divide b.
std::optional<Poly> solve_linear_mod(const Poly& a, const Poly& b, const Poly& r);

// m = (g, r^infinity): largest monic divisor of g all of whose irreducible
// factors divide r.  Iterated gcd, no factorization.
Poly m_part(const Poly& g, const Poly& r);

// Jacobi symbol (a/r) in {-1, 0, +1}; r monic, odd characteristic.
// Quadratic reciprocity, no factorization.
int jacobi(const Poly& a, const Poly& r);

// Deterministic irreducibility test (Frobenius ladder, exact).
bool is_irreducible(const Poly& g);

// a^e mod r.
Poly pow_mod(const Poly& a, std::uint64_t e, const Poly& r);
// t^(q^e) mod r, by e-fold Frobenius.
Poly frobenius_of_t(const Poly& r, std::uint32_t e);

// All monic polynomials of the given degree, ascending lex order
// (coefficient vectors (c_0, ..), c_0 dominant, F_q packed order).
std::vector<Poly> monic_of_degree(Fq f, int deg);
// All polynomials of degree < bound_deg (all residues mod a degree-bound_deg
// modulus), ascending lex order; includes 0.
std::vector<Poly> polys_below(Fq f, int bound_deg);
// Monic irreducibles of the given degree, ascending lex order.
std::vector<Poly> irreducibles_of_degree(Fq f, int deg);

// Norm as a plain double (|p| = q^deg p, |0| = 0); exact for small degrees.
double norm(const Poly& p);

// Index <-> residue bijection for O/(r): residues are polys of deg < deg r,
// index = packed base-q digits (c_0 least significant).
class ResidueIndexer {
 public:
  explicit ResidueIndexer(Poly r);
  std::uint64_t size() const { return size_; }
  Poly from_index(std::uint64_t i) const;
  std::uint64_t to_index(const Poly& x) const;  // x must be reduced
  const Poly& modulus() const { return r_; }

 private:
  Poly r_;
  std::uint64_t size_;
};

// Arithmetic in the residue field F_{q^deg g} = F_q[t]/(g), g irreducible.
class ResidueField {
 public:
  explicit ResidueField(Poly g);  // throws DomainError if g is reducible

  const Poly& modulus() const { return g_; }
  std::uint64_t order() const { return order_; }

  Poly embed(const Poly& x) const { return x % g_; }
  Poly add(const Poly& a, const Poly& b) const { return (a + b) % g_; }
  Poly mul(const Poly& a, const Poly& b) const { return (a * b) % g_; }
  Poly inv(const Poly& a) const { return inv_mod(a, g_); }
  Poly pow(const Poly& a, std::uint64_t e) const { return pow_mod(a, e, g_); }

  // Euler criterion: x^((q^n - 1)/2) == 1.  x must be nonzero mod g.
  bool euler_is_square(const Poly& x) const;
  // Lexicographically smallest square root, if x is a square.
  std::optional<Poly> sqrt(const Poly& x) const;

 private:
  Poly g_;
  std::uint64_t order_;
};

}  // namespace ffcm
