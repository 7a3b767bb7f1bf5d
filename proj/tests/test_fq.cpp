#include "doctest.h"

#include "ffcm/fq.hpp"

using namespace ffcm;

TEST_SUITE_BEGIN("fq");

TEST_CASE("prime field arithmetic F_3") {
  Fq f(3);
  CHECK(f.p() == 3);
  CHECK(f.ext_degree() == 1);
  CHECK(f.add(1, 2) == 0);
  CHECK(f.mul(2, 2) == 1);
  CHECK(f.inv(2) == 2);
  CHECK(f.neg(1) == 2);
  CHECK(f.from_int(-1) == 2);
  CHECK(f.trace(2) == 2);
  CHECK(f.is_square(1));
  CHECK(!f.is_square(2));
  CHECK(f.non_square() == 2);
}

TEST_CASE("odd characteristic is enforced") {
  CHECK_THROWS_AS(Fq(4), DomainError);
  CHECK_THROWS_AS(Fq(2), DomainError);
  CHECK_THROWS_AS(Fq(6), DomainError);
}

TEST_CASE("F_9 = F_3[u]/(u^2+1)") {
  Fq f(9);
  CHECK(f.p() == 3);
  CHECK(f.ext_degree() == 2);
  // u is packed as 3; u^2 = -1 = 2.
  FqElem u = 3;
  CHECK(f.mul(u, u) == 2);
  // trace(u) = u + u^3 = u - u = 0
  CHECK(f.trace(u) == 0);
  CHECK(f.trace(1) == 2);  // 1 + 1
  // norm-style sanity: every element of F_3^* is a square in F_9
  CHECK(f.is_square(1));
  CHECK(f.is_square(2));
  // the multiplicative group has order 8; u has order 4
  CHECK(f.pow(u, 4) == 1);
  CHECK(f.pow(u, 2) == 2);
}

TEST_CASE("F_5 and F_25 basic identities") {
  Fq f5(5);
  for (FqElem a = 1; a < 5; ++a) CHECK(f5.mul(a, f5.inv(a)) == 1);
  int squares = 0;
  for (FqElem a = 1; a < 5; ++a) squares += f5.is_square(a);
  CHECK(squares == 2);

  Fq f25(25);
  for (FqElem a = 1; a < 25; ++a) {
    CHECK(f25.mul(a, f25.inv(a)) == 1);
    // Frobenius: a^25 = a
    CHECK(f25.pow(a, 25) == a);
  }
}

TEST_SUITE_END();
