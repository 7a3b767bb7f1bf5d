#include "ffcm/laurent.hpp"

#include <algorithm>

namespace ffcm {

void Laurent::trim() {
  while (hi_ >= lo_ && c_[hi_ - lo_] == 0) --hi_;
  c_.resize(std::max(hi_ - lo_ + 1, 0));
}

Laurent LaurentBuilder::build() const {
  Laurent out(f_, lo_, exact_);
  out.hi_ = hi_;
  out.c_ = c_;
  out.trim();
  return out;
}

Laurent Laurent::from_poly(const Poly& p) {
  Laurent out(p.field(), 0, true);
  out.hi_ = p.deg();
  out.c_.assign(p.coeffs().begin(), p.coeffs().end());
  out.trim();
  return out;
}

Laurent Laurent::monomial(Fq f, FqElem c, int d) {
  if (c == 0) return zero(f);
  Laurent out(f, d, true);
  out.hi_ = d;
  out.c_ = {c};
  return out;
}

Laurent Laurent::from_rational(const Poly& num, const Poly& den, int lo) {
  if (den.is_zero()) throw DomainError("from_rational: zero denominator");
  Fq f = num.field();
  if (num.is_zero()) return zero(f);
  int top = num.deg() - den.deg();
  // Everything the caller asked for vanishes; the value itself need not.
  if (top < lo) return Laurent(f, lo, false);
  // Long division by the leading coefficient, descending degrees.
  // rem holds the running remainder as coefficients of t^(i+den.deg())..
  FqElem linv = f.inv(den.lead());
  // Remainder coefficients indexed by absolute degree; range shrinks as we go.
  std::vector<FqElem> rem(num.coeffs());
  int rem_off = 0;  // rem[j] = coefficient of t^(j + rem_off)
  std::vector<FqElem> out(top - lo + 1, 0);
  bool exact = false;
  for (int i = top; i >= lo; --i) {
    int need = i + den.deg() - rem_off;  // index of the current leading slot
    FqElem c = (need >= 0 && need < static_cast<int>(rem.size())) ? rem[need] : 0;
    if (c != 0) {
      FqElem q = f.mul(c, linv);
      out[i - lo] = q;
      for (int j = 0; j <= den.deg(); ++j) {
        int at = i + j - rem_off;
        if (at < 0) {
          // Extend the remainder downward.
          int grow = -at;
          rem.insert(rem.begin(), grow, 0);
          rem_off -= grow;
          at = 0;
        }
        if (at >= static_cast<int>(rem.size())) rem.resize(at + 1, 0);
        rem[at] = f.sub(rem[at], f.mul(q, den.coeff(j)));
      }
    }
    // If the remainder is now identically zero the expansion terminates.
    bool allzero = true;
    for (FqElem x : rem)
      if (x != 0) {
        allzero = false;
        break;
      }
    if (allzero) {
      exact = true;
      break;
    }
  }
  LaurentBuilder b(f, lo, top, exact);
  for (int i = lo; i <= top; ++i)
    if (out[i - lo] != 0) b.add(i, out[i - lo]);
  return b.build();
}

FqElem Laurent::coeff(int i) const {
  if (i > hi_) return 0;
  if (i >= lo_) return c_[i - lo_];
  if (exact_) return 0;
  throw PrecisionError("Laurent coefficient below known precision (lo=" + std::to_string(lo_) +
                       ", wanted " + std::to_string(i) + ")");
}

int Laurent::ord() const {
  if (hi_ >= lo_) return hi_;
  if (exact_) throw DomainError("ord of exact zero");
  throw PrecisionError("ord: value is zero to precision " + std::to_string(lo_));
}

Laurent Laurent::operator+(const Laurent& o) const {
  int lo = exact_ ? (o.exact_ ? std::min(lo_, o.lo_) : o.lo_) : (o.exact_ ? lo_ : std::max(lo_, o.lo_));
  int hi = std::max(hi_, o.hi_);
  LaurentBuilder b(f_, lo, std::max(hi, lo - 1), exact_ && o.exact_);
  for (int i = std::max(lo, lo_); i <= hi_; ++i) b.add(i, c_[i - lo_]);
  for (int i = std::max(lo, o.lo_); i <= o.hi_; ++i) b.add(i, o.c_[i - o.lo_]);
  return b.build();
}

Laurent Laurent::operator-() const {
  Laurent out = *this;
  for (auto& x : out.c_) x = f_.neg(x);
  return out;
}

Laurent Laurent::operator-(const Laurent& o) const { return *this + (-o); }

Laurent Laurent::operator*(const Laurent& o) const {
  if (is_exact_zero() || o.is_exact_zero()) return zero(f_);
  // Unknown tails contaminate the product below hi_a + lo_b / hi_b + lo_a.
  int lo;
  bool exact = exact_ && o.exact_;
  if (exact) {
    lo = lo_ + o.lo_;
  } else if (exact_) {
    lo = hi_ + o.lo_;
    if (is_zero_to_precision()) lo = lo_ + o.lo_;  // conservative; value may vanish
  } else if (o.exact_) {
    lo = lo_ + o.hi_;
    if (o.is_zero_to_precision()) lo = lo_ + o.lo_;
  } else {
    lo = std::max(hi_ + o.lo_, lo_ + o.hi_);
  }
  int hi = hi_ + o.hi_;
  LaurentBuilder b(f_, lo, std::max(hi, lo - 1), exact);
  for (int i = lo_; i <= hi_; ++i) {
    if (c_[i - lo_] == 0) continue;
    for (int j = o.lo_; j <= o.hi_; ++j) {
      if (o.c_[j - o.lo_] == 0) continue;
      if (i + j >= lo && i + j <= hi) b.add(i + j, f_.mul(c_[i - lo_], o.c_[j - o.lo_]));
    }
  }
  return b.build();
}

Laurent Laurent::mul_scalar(FqElem s) const {
  if (s == 0) return exact_ ? zero(f_) : Laurent(f_, lo_, false);
  Laurent out = *this;
  for (auto& x : out.c_) x = f_.mul(x, s);
  out.trim();
  return out;
}

Laurent Laurent::shift(int d) const {
  Laurent out = *this;
  out.lo_ += d;
  out.hi_ += d;
  return out;
}

Laurent Laurent::inverse(int out_lo) const {
  if (is_zero_to_precision()) {
    if (exact_) throw DomainError("inverse of zero");
    throw PrecisionError("inverse: value is zero to precision");
  }
  int n = hi_;                      // ord of *this
  int terms = -n - out_lo + 1;      // output degrees -n .. out_lo
  // Coefficients known down to lo_: usable relative precision hi_ - lo_ + 1.
  if (!exact_ && (hi_ - lo_ + 1) < terms)
    throw PrecisionError("inverse: insufficient input precision");
  // y = 1/x, solve x*y = 1 degree by degree from the top.
  LaurentBuilder b(f_, out_lo, -n, false);
  std::vector<FqElem> y(terms, 0);  // y[j] = coefficient of t^(-n-j)
  FqElem tinv = f_.inv(c_[hi_ - lo_]);
  for (int j = 0; j < terms; ++j) {
    // Coefficient of t^(-j) in x*y must be [j == 0].
    FqElem acc = (j == 0) ? f_.one() : f_.zero();
    for (int i = 1; i <= j; ++i) {
      // x coefficient at degree n-i times y at -n-(j-i) contributes at -j.
      acc = f_.sub(acc, f_.mul(coeff(n - i), y[j - i]));
    }
    y[j] = f_.mul(acc, tinv);
  }
  for (int j = 0; j < terms; ++j)
    if (y[j] != 0) b.add(-n - j, y[j]);
  Laurent out = b.build();
  // The inverse of an exact finite Laurent series is exact only for monomials.
  if (exact_ && hi_ == lo_) {
    out.exact_ = true;
  }
  return out;
}

Laurent Laurent::sqrt_one_plus() const {
  // *this = 1 + x, x strictly below degree 0.
  if (coeff(0) != 1) throw DomainError("sqrt_one_plus: constant term must be 1");
  if (hi_ > 0) throw DomainError("sqrt_one_plus: argument must lie in 1 + T");
  if (f_.p() == 2) throw DomainError("sqrt_one_plus: odd characteristic required");
  int lo = exact_ ? kDefaultLo : lo_;
  FqElem half = f_.inv(f_.from_int(2));
  // y_0 = 1; for d < 0: y_d = (u_d - sum_{i+j=d, -1>=i,j} y_i y_j) / 2.
  std::vector<FqElem> y(-lo + 1, 0);  // y[k] = coefficient of t^(-k)
  y[0] = 1;
  for (int d = -1; d >= lo; --d) {
    FqElem acc = coeff(d);
    for (int i = -1; i > d; --i) {
      int j = d - i;
      if (j > -1) continue;
      acc = f_.sub(acc, f_.mul(y[-i], y[-j]));
    }
    y[-d] = f_.mul(acc, half);
  }
  LaurentBuilder b(f_, lo, 0, false);
  for (int k = 0; k <= -lo; ++k)
    if (y[k] != 0) b.add(-k, y[k]);
  return b.build();
}

Laurent Laurent::truncated(int new_lo) const {
  if (new_lo <= lo_) return *this;
  Laurent out(f_, new_lo, false);
  out.hi_ = hi_;
  if (hi_ >= new_lo) out.c_.assign(c_.begin() + (new_lo - lo_), c_.end());
  out.trim();
  return out;
}

bool Laurent::identical(const Laurent& o) const {
  return lo_ == o.lo_ && hi_ == o.hi_ && exact_ == o.exact_ && c_ == o.c_;
}

}  // namespace ffcm
