#pragma once

#include <cstdint>
#include <memory>
#include <vector>

#include "ffcm/error.hpp"

namespace ffcm {

// An element of F_q is a packed base-p integer in [0, q).  For prime q the
// value is the canonical representative; for q = p^k the element
// a_0 + a_1 u + ... + a_{k-1} u^{k-1} of F_p[u]/(h(u)) is packed as
// a_0 + a_1 p + ... + a_{k-1} p^{k-1}.  The ordering 0 < 1 < ... < q-1 on
// packed values is the tie-breaking order used by all enumerations.
using FqElem = std::uint32_t;

// Immutable field descriptor with precomputed arithmetic tables.
// Odd characteristic only.  Extension fields use a fixed modulus h(u):
// the lexicographically first monic irreducible of degree k over F_p
// (ascending-coefficient order), e.g. u^2+1 for q = 9.
class Fq {
 public:
  // Placeholder state (for default-constructed containers); any arithmetic on
  // it is invalid until assigned from a real field.
  Fq() = default;
  explicit Fq(std::uint32_t q);

  bool valid() const { return ctx_ != nullptr; }
  std::uint32_t q() const { return ctx_->q; }
  std::uint32_t p() const { return ctx_->p; }
  std::uint32_t ext_degree() const { return ctx_->k; }

  FqElem zero() const { return 0; }
  FqElem one() const { return 1; }
  // Embeds an integer via F_p (constant coefficient for extensions).
  FqElem from_int(std::int64_t n) const;

  FqElem add(FqElem a, FqElem b) const { return ctx_->add[idx(a, b)]; }
  FqElem sub(FqElem a, FqElem b) const { return add(a, neg(b)); }
  FqElem neg(FqElem a) const { return ctx_->neg[a]; }
  FqElem mul(FqElem a, FqElem b) const { return ctx_->mul[idx(a, b)]; }
  FqElem inv(FqElem a) const;
  FqElem div(FqElem a, FqElem b) const { return mul(a, inv(b)); }
  FqElem pow(FqElem a, std::uint64_t e) const;

  // Absolute trace to F_p, returned as an integer in [0, p).
  std::uint32_t trace(FqElem a) const { return ctx_->trace[a]; }
  // Euler criterion; 0 is a square.
  bool is_square(FqElem a) const { return ctx_->is_square[a]; }
  // Smallest (packed order) non-square, used for extension moduli and tests.
  FqElem non_square() const;

  bool operator==(const Fq& o) const { return ctx_->q == o.ctx_->q; }
  bool operator!=(const Fq& o) const { return !(*this == o); }

 private:
  struct Ctx {
    std::uint32_t q = 0, p = 0, k = 1;
    std::vector<std::uint32_t> ext_modulus;  // ascending coeffs of h(u), monic
    std::vector<FqElem> add, mul, neg, inv, trace;
    std::vector<bool> is_square;
  };

  std::size_t idx(FqElem a, FqElem b) const { return std::size_t(a) * ctx_->q + b; }

  std::shared_ptr<const Ctx> ctx_;
};

}  // namespace ffcm
