#pragma once

#include <vector>

#include "ffcm/poly.hpp"

namespace ffcm {

// Truncated element of K_infinity = F_q((1/t)).  Coefficients are stored for
// degrees in [lo, hi]; degrees above hi are exactly zero.  Degrees below lo
// are exactly zero when exact() is true, otherwise unknown (truncated).
// Any operation that would need an unknown coefficient throws PrecisionError
// rather than returning wrong data.
class Laurent {
 public:
  static constexpr int kDefaultLo = -64;

  // Zero known to precision lo (not exact unless flagged).
  Laurent(Fq f, int lo, bool exact) : f_(f), lo_(lo), hi_(lo - 1), exact_(exact) {}
  static Laurent zero(Fq f) { return Laurent(f, 0, true); }
  static Laurent from_poly(const Poly& p);
  // c * t^d, exact.
  static Laurent monomial(Fq f, FqElem c, int d);
  // Expansion of num/den down to degree lo (den != 0).  The result is exact
  // iff the division terminates above lo.
  static Laurent from_rational(const Poly& num, const Poly& den, int lo = kDefaultLo);

  const Fq& field() const { return f_; }
  int lo() const { return lo_; }
  // Degree of the top nonzero known coefficient; lo-1 when all known
  // coefficients vanish.
  int hi() const { return hi_; }
  bool exact() const { return exact_; }

  // True zero (exact, no coefficients).
  bool is_exact_zero() const { return exact_ && hi_ < lo_; }
  // All known coefficients vanish (value is 0 or has norm < q^lo).
  bool is_zero_to_precision() const { return hi_ < lo_; }

  // Coefficient of t^i; throws PrecisionError for i < lo on inexact values.
  FqElem coeff(int i) const;

  // ord = deg of the leading term; requires a nonzero known coefficient
  // unless exact zero (throws DomainError on exact zero, PrecisionError when
  // the value is zero to precision but not exact).
  int ord() const;

  Laurent operator+(const Laurent& o) const;
  Laurent operator-(const Laurent& o) const;
  Laurent operator-() const;
  Laurent operator*(const Laurent& o) const;
  Laurent mul_scalar(FqElem s) const;
  Laurent shift(int d) const;  // * t^d

  // Multiplicative inverse to (at least) out_lo; needs a nonzero top term.
  Laurent inverse(int out_lo = kDefaultLo) const;
  // Square root of 1 + x with x strictly below degree 0; principal root
  // (constant term 1).  Odd characteristic coefficient recursion.
  Laurent sqrt_one_plus() const;

  // Truncate knowledge below new_lo (marks inexact if coefficients dropped).
  Laurent truncated(int new_lo) const;

  bool identical(const Laurent& o) const;  // same known range and coefficients

 private:
  void set(int i, FqElem v) { c_[i - lo_] = v; }
  void trim();

  Fq f_;
  int lo_, hi_;
  bool exact_;
  std::vector<FqElem> c_;  // c_[i] = coefficient of t^(lo_+i)
  friend class LaurentBuilder;
};

// Coefficient accumulator used by the arithmetic routines.
class LaurentBuilder {
 public:
  LaurentBuilder(Fq f, int lo, int hi, bool exact)
      : f_(f), lo_(lo), hi_(hi), exact_(exact), c_(std::max(hi - lo + 1, 0), 0) {}
  void add(int i, FqElem v) {
    if (i > hi_) throw DomainError("LaurentBuilder: index above range");
    if (i < lo_) return;  // below tracked precision
    c_[i - lo_] = f_.add(c_[i - lo_], v);
  }
  Laurent build() const;

 private:
  Fq f_;
  int lo_, hi_;
  bool exact_;
  std::vector<FqElem> c_;
};

}  // namespace ffcm
