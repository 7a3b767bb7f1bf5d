#include "doctest.h"

#include <cmath>

#include "ffcm/cyclotomic.hpp"

using namespace ffcm;

TEST_SUITE_BEGIN("cyclotomic");

TEST_CASE("zeta_3 identities, exact") {
  Cyc one = Cyc::one(3);
  Cyc z = Cyc::root(3, 1);
  Cyc z2 = Cyc::root(3, 2);
  CHECK((one + z + z2).is_zero());
  CHECK(z * z == z2);
  CHECK(z * z2 == one);
  // 1 + 2 zeta = i sqrt(3): squared = -3
  Cyc isqrt3 = one + z.scaled(2);
  std::int64_t v = 0;
  CHECK((isqrt3 * isqrt3).is_integer(&v));
  CHECK(v == -3);
  CHECK(std::abs(isqrt3.abs() - std::sqrt(3.0)) < 1e-12);
}

TEST_CASE("canonical form makes equality of values decidable") {
  // zeta + zeta^4 = 2 zeta (p = 3: zeta^4 = zeta)
  Cyc a = Cyc::root(3, 1) + Cyc::root(3, 4);
  CHECK(a == Cyc::root(3, 1).scaled(2));
  // sums of all p-th roots vanish for p = 5 too
  Cyc s = Cyc::zero(5);
  for (int k = 0; k < 5; ++k) s += Cyc::root(5, k);
  CHECK(s.is_zero());
}

TEST_CASE("CycQ normalization and exact equality") {
  CycQ a(Cyc::integer(3, 9), 2);  // 9/9 = 1
  CHECK(a == CycQ::one(3));
  std::int64_t v;
  CHECK(a.is_integer(&v));
  CHECK(v == 1);
  CycQ b = CycQ::p_power(3, -2);  // 1/9
  CHECK((b * CycQ::integer(3, 9)) == CycQ::one(3));
  CHECK((CycQ::p_power(3, 3) * CycQ::p_power(3, -3)) == CycQ::one(3));
  // mixed-denominator addition: 1/3 + 2/9 = 5/9
  CycQ c = CycQ(Cyc::one(3), 1) + CycQ(Cyc::integer(3, 2), 2);
  CHECK(c == CycQ(Cyc::integer(3, 5), 2));
  CHECK(std::abs(c.to_complex().real() - 5.0 / 9.0) < 1e-15);
}

TEST_CASE("overflow is detected, not wrapped") {
  Cyc big = Cyc::integer(3, std::int64_t(1) << 40);
  CHECK_THROWS_AS(big * big, Error);
}

TEST_SUITE_END();
