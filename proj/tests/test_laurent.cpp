#include "doctest.h"

#include <random>

#include "ffcm/io.hpp"
#include "ffcm/laurent.hpp"

using namespace ffcm;

TEST_SUITE_BEGIN("laurent");

TEST_CASE("rational expansion matches schoolbook examples") {
  Fq f(3);
  // (t+2)/t^2 = t^-1 + 2 t^-2
  Laurent e = Laurent::from_rational(parse_poly(f, "t+2"), parse_poly(f, "t^2"), -4);
  CHECK(e.coeff(-1) == 1);
  CHECK(e.coeff(-2) == 2);
  CHECK(e.coeff(-3) == 0);
  CHECK(e.exact());

  // 1/(t-1) = t^-1 + t^-2 + t^-3 + ...  (geometric; over F_3 t-1 = t+2)
  Laurent geo = Laurent::from_rational(parse_poly(f, "1"), parse_poly(f, "t+2"), -5);
  for (int i = -1; i >= -5; --i) CHECK(geo.coeff(i) == 1);
  CHECK(!geo.exact());
}

TEST_CASE("arithmetic agrees with re-expanded rational arithmetic") {
  Fq f(3);
  std::mt19937 rng(7);
  auto rand_poly = [&](int maxdeg) {
    std::vector<FqElem> c(maxdeg + 1);
    for (auto& x : c) x = rng() % 3;
    return Poly(f, std::move(c));
  };
  for (int trial = 0; trial < 200; ++trial) {
    Poly a = rand_poly(4), b = rand_poly(3), cden = rand_poly(2), dden = rand_poly(2);
    if (cden.is_zero() || dden.is_zero()) continue;
    Laurent x = Laurent::from_rational(a, cden, -20);
    Laurent y = Laurent::from_rational(b, dden, -20);
    // x*y vs (a*b)/(c*d)
    Laurent prod = x * y;
    Laurent expect = Laurent::from_rational(a * b, cden * dden, prod.lo());
    for (int i = prod.lo(); i <= std::max(prod.hi(), expect.hi()); ++i)
      CHECK(prod.coeff(i) == expect.coeff(i));
    // x+y vs (a*d + b*c)/(c*d)
    Laurent sum = x + y;
    Laurent expect2 = Laurent::from_rational(a * dden + b * cden, cden * dden, sum.lo());
    for (int i = sum.lo(); i <= std::max(sum.hi(), expect2.hi()); ++i)
      CHECK(sum.coeff(i) == expect2.coeff(i));
  }
}

TEST_CASE("precision is tracked, not silently lost") {
  Fq f(3);
  Laurent x = Laurent::from_rational(parse_poly(f, "1"), parse_poly(f, "t+2"), -4);
  CHECK_THROWS_AS(x.coeff(-5), PrecisionError);
  CHECK_THROWS_AS((void)Laurent(f, -2, false).ord(), PrecisionError);
  CHECK_THROWS_AS((void)Laurent::zero(f).ord(), DomainError);
  // exact values can be read below their support
  Laurent p = Laurent::from_poly(parse_poly(f, "t^2+1"));
  CHECK(p.coeff(-100) == 0);
}

TEST_CASE("inverse and square root") {
  Fq f(3);
  // 1/t^2 = t^-2
  Laurent m = Laurent::monomial(f, 2, 3);
  Laurent mi = m.inverse(-10);
  CHECK(mi.coeff(-3) == 2);  // (2t^3)^-1 = 2 t^-3  (2^-1 = 2 mod 3)

  // random u = 1 + tail, sqrt(u)^2 = u to precision
  std::mt19937 rng(11);
  for (int trial = 0; trial < 50; ++trial) {
    LaurentBuilder b(f, -12, 0, false);
    b.add(0, 1);
    for (int i = -1; i >= -12; --i) b.add(i, rng() % 3);
    Laurent u = b.build();
    Laurent r = u.sqrt_one_plus();
    Laurent r2 = r * r;
    for (int i = r2.lo(); i <= 0; ++i) CHECK(r2.coeff(i) == u.coeff(i));
    CHECK(r.coeff(0) == 1);  // principal root
  }

  // x * x^-1 = 1 to available precision for rational x
  Laurent x = Laurent::from_rational(parse_poly(f, "t^2+t+1"), parse_poly(f, "t+1"), -14);
  Laurent xi = x.inverse(-10);
  Laurent one = x * xi;
  CHECK(one.coeff(0) == 1);
  for (int i = one.lo(); i < 0; ++i) CHECK(one.coeff(i) == 0);
}

TEST_CASE("laurent printing") {
  Fq f(3);
  Laurent e = Laurent::from_rational(parse_poly(f, "t+2"), parse_poly(f, "t^2"), -4);
  CHECK(to_string(e) == "t^-1+2*t^-2");
}

TEST_SUITE_END();
