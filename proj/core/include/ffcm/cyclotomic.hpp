#pragma once

#include <complex>
#include <cstdint>
#include <vector>

#include "ffcm/error.hpp"
#include "ffcm/fq.hpp"

namespace ffcm {

// Exact element of Z[zeta_p], p an odd prime.  Stored in the group-ring
// basis 1, zeta, ..., zeta^(p-1) canonicalized so the last coordinate is 0
// (using 1 + zeta + ... + zeta^(p-1) = 0); equality of coordinate vectors is
// then equality of complex values.  Every character value of this toolkit
// (psi, e_q, Gauss sums, Kloosterman sums) lives here; half-integer powers of
// q never survive in the closed forms, so no larger conductor is needed.
class Cyc {
 public:
  Cyc() : p_(0) {}
  explicit Cyc(std::uint32_t p) : p_(p), c_(p, 0) {}

  static Cyc zero(std::uint32_t p) { return Cyc(p); }
  static Cyc integer(std::uint32_t p, std::int64_t n) {
    Cyc x(p);
    x.c_[0] = n;
    x.normalize();
    return x;
  }
  static Cyc one(std::uint32_t p) { return integer(p, 1); }
  // zeta_p^k
  static Cyc root(std::uint32_t p, std::int64_t k) {
    Cyc x(p);
    x.c_[((k % p) + p) % p] = 1;
    x.normalize();
    return x;
  }

  std::uint32_t conductor() const { return p_; }
  bool is_zero() const;
  bool is_integer(std::int64_t* value = nullptr) const;

  Cyc operator+(const Cyc& o) const;
  Cyc operator-(const Cyc& o) const;
  Cyc operator-() const;
  Cyc operator*(const Cyc& o) const;
  Cyc& operator+=(const Cyc& o) { return *this = *this + o; }
  Cyc& operator*=(const Cyc& o) { return *this = *this * o; }
  Cyc scaled(std::int64_t n) const;
  bool operator==(const Cyc& o) const;
  bool operator!=(const Cyc& o) const { return !(*this == o); }

  // True and strips one factor p if every coordinate is divisible by p
  // *as a complex value* (i.e. divisible in Z[zeta_p]/... we only divide when
  // the canonical coordinates are all divisible, plus the zeta-trace slack).
  bool divide_by_p_if_possible();

  std::complex<double> to_complex() const;
  double abs() const { return std::abs(to_complex()); }

  const std::vector<std::int64_t>& coords() const { return c_; }

 private:
  void normalize();  // subtract c_[p-1] from every coordinate
  void check(const Cyc& o) const {
    if (p_ != o.p_) throw DomainError("cyclotomic conductor mismatch");
  }
  std::uint32_t p_;
  std::vector<std::int64_t> c_;
};

// Element of Z[zeta_p][1/p]: value = num / p^pexp with pexp >= 0 canonical.
// This is the exact scalar of the whole pipeline: integrals contribute
// inverse powers of q = p^k, sums contribute Z[zeta_p].
class CycQ {
 public:
  CycQ() = default;
  explicit CycQ(Cyc num, int pexp = 0) : num_(std::move(num)), pexp_(pexp) { normalize(); }
  static CycQ zero(std::uint32_t p) { return CycQ(Cyc::zero(p)); }
  static CycQ one(std::uint32_t p) { return CycQ(Cyc::one(p)); }
  static CycQ integer(std::uint32_t p, std::int64_t n) { return CycQ(Cyc::integer(p, n)); }
  // p^e (e of either sign).
  static CycQ p_power(std::uint32_t p, int e);

  const Cyc& num() const { return num_; }
  int pexp() const { return pexp_; }
  bool is_zero() const { return num_.is_zero(); }

  CycQ operator+(const CycQ& o) const;
  CycQ operator-(const CycQ& o) const;
  CycQ operator-() const;
  CycQ operator*(const CycQ& o) const;
  CycQ& operator+=(const CycQ& o) { return *this = *this + o; }
  CycQ& operator*=(const CycQ& o) { return *this = *this * o; }
  CycQ scaled(std::int64_t n) const { return CycQ(num_.scaled(n), pexp_); }
  // multiply by p^e
  CycQ shifted(int e) const { return CycQ(num_, pexp_ - e); }
  bool operator==(const CycQ& o) const;
  bool operator!=(const CycQ& o) const { return !(*this == o); }

  // Exact rational-integer extraction: value must equal an integer.
  bool is_integer(std::int64_t* value = nullptr) const;

  std::complex<double> to_complex() const;
  double abs() const { return std::abs(to_complex()); }

 private:
  void normalize() {
    while (pexp_ > 0 && num_.divide_by_p_if_possible()) --pexp_;
    while (pexp_ < 0) {
      num_ = num_.scaled(num_.conductor());
      ++pexp_;
    }
    if (num_.is_zero()) pexp_ = 0;
  }
  Cyc num_;
  int pexp_ = 0;
};

}  // namespace ffcm
