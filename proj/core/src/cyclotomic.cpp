#include "ffcm/cyclotomic.hpp"

#include <cmath>
#include <numbers>

namespace ffcm {

namespace {
constexpr std::int64_t kCoeffLimit = std::int64_t(1) << 62;

std::int64_t checked(__int128 v) {
  if (v > kCoeffLimit || v < -kCoeffLimit) throw Error("cyclotomic coefficient overflow");
  return static_cast<std::int64_t>(v);
}
}  // namespace

void Cyc::normalize() {
  std::int64_t last = c_[p_ - 1];
  if (last == 0) return;
  for (auto& x : c_) x -= last;
}

bool Cyc::is_zero() const {
  for (auto x : c_)
    if (x != 0) return false;
  return true;
}

bool Cyc::is_integer(std::int64_t* value) const {
  for (std::uint32_t i = 1; i < p_; ++i)
    if (c_[i] != 0) return false;
  if (value) *value = c_[0];
  return true;
}

Cyc Cyc::operator+(const Cyc& o) const {
  check(o);
  Cyc r(p_);
  for (std::uint32_t i = 0; i < p_; ++i) r.c_[i] = checked(__int128(c_[i]) + o.c_[i]);
  r.normalize();
  return r;
}

Cyc Cyc::operator-(const Cyc& o) const {
  check(o);
  Cyc r(p_);
  for (std::uint32_t i = 0; i < p_; ++i) r.c_[i] = checked(__int128(c_[i]) - o.c_[i]);
  r.normalize();
  return r;
}

Cyc Cyc::operator-() const {
  Cyc r(p_);
  for (std::uint32_t i = 0; i < p_; ++i) r.c_[i] = -c_[i];
  r.normalize();
  return r;
}

Cyc Cyc::operator*(const Cyc& o) const {
  check(o);
  Cyc r(p_);
  std::vector<__int128> acc(p_, 0);
  for (std::uint32_t i = 0; i < p_; ++i) {
    if (c_[i] == 0) continue;
    for (std::uint32_t j = 0; j < p_; ++j) {
      if (o.c_[j] == 0) continue;
      std::uint32_t k = i + j;
      if (k >= p_) k -= p_;
      acc[k] += __int128(c_[i]) * o.c_[j];
    }
  }
  for (std::uint32_t i = 0; i < p_; ++i) r.c_[i] = checked(acc[i]);
  r.normalize();
  return r;
}

Cyc Cyc::scaled(std::int64_t n) const {
  Cyc r(p_);
  for (std::uint32_t i = 0; i < p_; ++i) r.c_[i] = checked(__int128(c_[i]) * n);
  return r;
}

bool Cyc::operator==(const Cyc& o) const {
  check(o);
  return c_ == o.c_;
}

bool Cyc::divide_by_p_if_possible() {
  for (auto x : c_)
    if (x % static_cast<std::int64_t>(p_) != 0) return false;
  for (auto& x : c_) x /= static_cast<std::int64_t>(p_);
  return true;
}

std::complex<double> Cyc::to_complex() const {
  std::complex<double> acc = 0;
  for (std::uint32_t i = 0; i < p_; ++i) {
    if (c_[i] == 0) continue;
    double ang = 2.0 * std::numbers::pi * i / p_;
    acc += static_cast<double>(c_[i]) * std::complex<double>(std::cos(ang), std::sin(ang));
  }
  return acc;
}

CycQ CycQ::p_power(std::uint32_t p, int e) { return CycQ(Cyc::one(p), -e); }

CycQ CycQ::operator+(const CycQ& o) const {
  int e = std::max(pexp_, o.pexp_);
  Cyc a = num_, b = o.num_;
  for (int i = pexp_; i < e; ++i) a = a.scaled(a.conductor());
  for (int i = o.pexp_; i < e; ++i) b = b.scaled(b.conductor());
  return CycQ(a + b, e);
}

CycQ CycQ::operator-(const CycQ& o) const { return *this + (-o); }

CycQ CycQ::operator-() const { return CycQ(-num_, pexp_); }

CycQ CycQ::operator*(const CycQ& o) const { return CycQ(num_ * o.num_, pexp_ + o.pexp_); }

bool CycQ::operator==(const CycQ& o) const {
  // Both sides are normalized, so equal values have equal representations.
  return pexp_ == o.pexp_ && num_ == o.num_;
}

bool CycQ::is_integer(std::int64_t* value) const {
  if (pexp_ != 0) return false;
  return num_.is_integer(value);
}

std::complex<double> CycQ::to_complex() const {
  double scale = std::pow(static_cast<double>(num_.conductor()), -pexp_);
  return num_.to_complex() * scale;
}

}  // namespace ffcm
