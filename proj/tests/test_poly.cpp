#include "doctest.h"

#include <map>

#include "ffcm/io.hpp"
#include "ffcm/poly.hpp"

using namespace ffcm;

TEST_SUITE_BEGIN("poly");

namespace {
Poly P(Fq f, const char* s) { return parse_poly(f, s); }
}

TEST_CASE("parsing and printing round-trip") {
  Fq f(3);
  CHECK(to_string(P(f, "t^2+t+2")) == "t^2+t+2");
  CHECK(to_string(P(f, "2,1,1")) == "t^2+t+2");
  CHECK(to_coeff_string(P(f, "t^2+t+2")) == "2,1,1");
  CHECK(P(f, "0").is_zero());
  CHECK(P(f, "-1") == Poly::constant(f, 2));
  CHECK(P(f, "2*t^3+1") == P(f, "1,0,0,2"));
  CHECK(P(f, "2t+2") == P(f, "2,2"));
  CHECK_THROWS_AS(P(f, "t^"), DomainError);
  CHECK_THROWS_AS(P(f, ""), DomainError);
}

TEST_CASE("norm: |p| = q^deg p, |0| = 0") {
  Fq f(3);
  CHECK(norm(P(f, "t^2+1")) == 9.0);
  CHECK(norm(P(f, "1")) == 1.0);
  CHECK(norm(P(f, "0")) == 0.0);
}

TEST_CASE("norm multiplicativity and ultrametric inequality, exhaustive deg <= 3 over F_3") {
  Fq f(3);
  std::vector<Poly> all;
  for (const Poly& p : polys_below(f, 4)) all.push_back(p);
  for (const auto& a : all)
    for (const auto& b : all) {
      if (!a.is_zero() && !b.is_zero()) CHECK(norm(a * b) == norm(a) * norm(b));
      CHECK(norm(a + b) <= std::max(norm(a), norm(b)));
      if (norm(a) != norm(b)) CHECK(norm(a + b) == std::max(norm(a), norm(b)));
    }
}

TEST_CASE("gcd_monic examples") {
  Fq f(3);
  CHECK(gcd_monic(P(f, "t^2+2"), P(f, "t+2")) == P(f, "t+2"));  // t^2-1, t-1
  CHECK(gcd_monic(P(f, "t"), P(f, "t+2")) == P(f, "1"));
  CHECK(gcd_monic(P(f, "2t+2"), P(f, "t+1")) == P(f, "t+1"));
  CHECK_THROWS_AS(gcd_monic(Poly(f), Poly(f)), DomainError);
}

TEST_CASE("inv_mod examples and exhaustive check for |r| <= 27, q = 3") {
  Fq f(3);
  CHECK(inv_mod(P(f, "1"), P(f, "t^2+1")) == P(f, "1"));
  CHECK(inv_mod(P(f, "t"), P(f, "t+2")) == P(f, "1"));  // t = 1 mod t-1
  CHECK(inv_mod(P(f, "t"), P(f, "t^2+1")) == P(f, "2t"));
  CHECK_THROWS_AS(inv_mod(P(f, "t"), P(f, "t^2")), DomainError);

  for (int d = 1; d <= 3; ++d)
    for (const Poly& r : monic_of_degree(f, d)) {
      ResidueIndexer idx(r);
      for (std::uint64_t i = 1; i < idx.size(); ++i) {
        Poly x = idx.from_index(i);
        if (gcd_monic(x, r).deg() != 0) continue;
        Poly y = inv_mod(x, r);
        CHECK(((x * y) % r).is_one());
        CHECK(y.deg() < r.deg());
      }
    }
}

TEST_CASE("m_part examples and Prop-5.1 coprimality") {
  Fq f(3);
  CHECK(m_part(P(f, "t^2"), P(f, "t")) == P(f, "t^2"));
  CHECK(m_part(P(f, "t^2+1"), P(f, "t+1")) == P(f, "1"));
  CHECK(m_part(P(f, "t^2+t"), P(f, "t^3")) == P(f, "t"));  // g = t(t+1), r = t^3

  // m | g, gcd(g/m, m r) = 1 on a small exhaustive grid
  for (int dg = 1; dg <= 3; ++dg)
    for (const Poly& g : monic_of_degree(f, dg))
      for (int dr = 1; dr <= 2; ++dr)
        for (const Poly& r : monic_of_degree(f, dr)) {
          Poly m = m_part(g, r);
          CHECK(m.divides(g));
          Poly w = g / m;
          CHECK(gcd_monic(w, m * r).deg() == 0);
        }
}

TEST_CASE("jacobi examples") {
  Fq f(3);
  Poly r = P(f, "t^2+t+2");
  CHECK(jacobi(P(f, "1"), r) == 1);
  CHECK(jacobi(P(f, "t"), r) == -1);
  CHECK(jacobi(P(f, "-1"), r) == 1);
  CHECK(jacobi(P(f, "t^2+t+2"), r) == 0);
  CHECK_THROWS_AS(jacobi(P(f, "t"), P(f, "2t")), DomainError);
}

TEST_CASE("jacobi agrees with the Euler-criterion oracle, deg r <= 4, q in {3,5}") {
  for (std::uint32_t q : {3u, 5u}) {
    Fq f(q);
    // factorization oracle: product of Euler symbols over prime factors
    auto oracle = [&](const Poly& a, Poly r) -> int {
      int s = 1;
      for (int d = 1; d <= r.deg(); ++d) {
        for (const Poly& w : irreducibles_of_degree(f, d)) {
          while (w.divides(r)) {
            r = r / w;
            if ((a % w).is_zero()) return 0;
            ResidueField rf(w);
            s *= rf.euler_is_square(a) ? 1 : -1;
          }
          if (r.deg() < d) break;
        }
      }
      return s;
    };
    for (int dr = 1; dr <= 4; ++dr) {
      // sample the moduli grid to keep runtime sane at q = 5
      auto moduli = monic_of_degree(f, dr);
      std::size_t step = q == 3 ? 1 : 3;
      for (std::size_t i = 0; i < moduli.size(); i += step) {
        const Poly& r = moduli[i];
        for (const Poly& a : polys_below(f, 3)) {
          CHECK(jacobi(a, r) == oracle(a, r));
        }
      }
    }
  }
}

TEST_CASE("irreducibility: examples and the degree-2 count over F_3") {
  Fq f(3);
  CHECK(is_irreducible(P(f, "t^2+1")));
  CHECK(!is_irreducible(P(f, "t^2+2")));  // t^2 - 1
  CHECK(is_irreducible(P(f, "t")));
  CHECK(!is_irreducible(P(f, "1")));
  CHECK(irreducibles_of_degree(f, 2).size() == 3);  // (q^2 - q)/2
  CHECK(irreducibles_of_degree(f, 3).size() == 8);  // (q^3 - q)/3
  // spot-check higher degree count: (81 - 9)/4 = 18
  CHECK(irreducibles_of_degree(f, 4).size() == 18);
}

TEST_CASE("monic enumeration is in ascending coefficient-lex order") {
  Fq f(3);
  auto v = monic_of_degree(f, 2);
  REQUIRE(v.size() == 9);
  CHECK(to_string(v[0]) == "t^2");
  for (std::size_t i = 1; i < v.size(); ++i) CHECK(v[i - 1].lex_less(v[i]));
}

TEST_CASE("residue field F_9 = F_3[t]/(t^2+t+2): Euler squares") {
  Fq f(3);
  ResidueField rf(P(f, "t^2+t+2"));
  CHECK(rf.order() == 9);
  CHECK(rf.euler_is_square(P(f, "1")));
  CHECK(!rf.euler_is_square(P(f, "t")));
  CHECK(rf.euler_is_square(P(f, "-1")));
  CHECK_THROWS_AS(ResidueField(P(f, "t^2+2")), DomainError);
  // sqrt returns the lex-smaller root and squares back
  auto s = rf.sqrt(P(f, "-1"));
  REQUIRE(s.has_value());
  CHECK(rf.mul(*s, *s) == P(f, "2"));
  auto other = (-*s) % P(f, "t^2+t+2");
  CHECK(s->lex_less(other));
}

TEST_SUITE_END();
