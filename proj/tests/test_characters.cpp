#include "doctest.h"

#include <cmath>
#include <random>

#include "ffcm/characters.hpp"
#include "ffcm/io.hpp"

using namespace ffcm;

TEST_SUITE_BEGIN("characters");

namespace {
Poly P(Fq f, const char* s) { return parse_poly(f, s); }
}

TEST_CASE("e_q: trace character") {
  Fq f3(3);
  CHECK(e_q(f3, 0) == Cyc::one(3));
  CHECK(e_q(f3, 1) == Cyc::root(3, 1));

  Fq f9(9);
  // tr(u) = 0, so e_9(u) = 1
  CHECK(e_q(f9, 3) == Cyc::one(3));
  CHECK(e_q(f9, 1) == Cyc::root(3, 2));  // tr(1) = 2
}

TEST_CASE("psi reads the t^-1 coefficient; trivial on polynomials") {
  Fq f(3);
  CHECK(psi(Laurent::from_poly(P(f, "t^2+2t+1"))) == Cyc::one(3));
  CHECK(psi(Laurent::monomial(f, 1, -1)) == Cyc::root(3, 1));
  CHECK(psi(Laurent::monomial(f, 1, -2)) == Cyc::one(3));
  CHECK_THROWS_AS(psi(Laurent(f, 0, false)), PrecisionError);
}

TEST_CASE("psi is additive (randomized)") {
  Fq f(3);
  std::mt19937 rng(5);
  for (int trial = 0; trial < 100; ++trial) {
    LaurentBuilder a(f, -6, 2, true), b(f, -6, 2, true);
    for (int i = -6; i <= 2; ++i) {
      a.add(i, rng() % 3);
      b.add(i, rng() % 3);
    }
    Laurent x = a.build(), y = b.build();
    CHECK(psi(x + y) == psi(x) * psi(y));
  }
}

TEST_CASE("psi_r examples") {
  Fq f(3);
  CHECK(psi_r(P(f, "0"), P(f, "t^2")) == Cyc::one(3));
  CHECK(psi_r(P(f, "1"), P(f, "t")) == Cyc::root(3, 1));
  // (t+2)/t^2 = t^-1 + 2t^-2 -> e_3(1)
  CHECK(psi_r(P(f, "t+2"), P(f, "t^2")) == Cyc::root(3, 1));
  // extension to O_r: (1/(t+1)) mod t = 1 -> psi_t(1)
  CHECK(psi_r_frac(P(f, "1"), P(f, "t+1"), P(f, "t")) == Cyc::root(3, 1));
}

TEST_CASE("gauss_tau: examples and |tau_r| = |r|^(1/2) for squarefree r") {
  Fq f(3);
  CHECK(gauss_tau(P(f, "1")) == Cyc::one(3));
  // tau_t = 1 + 2 e_3(1) = i sqrt(3)
  Cyc expect = Cyc::one(3) + Cyc::root(3, 1).scaled(2);
  CHECK(gauss_tau(P(f, "t")) == expect);
  for (int d = 1; d <= 3; ++d)
    for (const Poly& r : monic_of_degree(f, d)) {
      // squarefree test via gcd with derivative
      std::vector<FqElem> dc;
      for (int i = 1; i <= r.deg(); ++i) dc.push_back(f.mul(r.coeff(i), f.from_int(i)));
      Poly deriv(f, std::move(dc));
      bool squarefree = !deriv.is_zero() && gcd_monic(r, deriv).deg() == 0;
      if (!squarefree) continue;
      CHECK(std::abs(gauss_tau(r).abs() - std::pow(3.0, 0.5 * d)) < 1e-9);
    }
}

TEST_CASE("gauss_factor: the three branches") {
  Fq f(3);
  // ord even, |h| = q^2: min(q^-1, 1) = 1/3
  CHECK(gauss_factor(Laurent::monomial(f, 1, 2)) == CycQ::p_power(3, -1));
  // ord even and negative: 1
  CHECK(gauss_factor(Laurent::monomial(f, 2, -2)) == CycQ::one(3));
  // ord odd <= -1: 1
  CHECK(gauss_factor(Laurent::monomial(f, 1, -1)) == CycQ::one(3));
  // ord odd >= 1, h = t: G(1)/q = (i sqrt 3)/3 = i/sqrt(3)
  CycQ gf = gauss_factor(Laurent::monomial(f, 1, 1));
  CHECK(gf == CycQ(Cyc::one(3) + Cyc::root(3, 1).scaled(2), 1));
  CHECK(std::abs(gf.abs() - 1.0 / std::sqrt(3.0)) < 1e-12);
}

TEST_CASE("Kubota sum: closed form on the gamma = c t^j grid") {
  for (std::uint32_t q : {3u, 5u}) {
    Fq f(q);
    for (int N = 0; N <= 3; ++N)
      for (FqElem c = 1; c < f.q(); ++c)
        for (int j = -4; j <= 2; ++j) {
          Laurent gamma = Laurent::monomial(f, c, j);
          CHECK(kubota_sum(gamma, N) == kubota_sum_closed(gamma, N));
        }
  }
}

TEST_CASE("Kubota sum spec examples") {
  Fq f(3);
  CHECK(kubota_sum(Laurent::monomial(f, 1, -2), 1) == Cyc::integer(3, 3));
  CHECK(kubota_sum(Laurent::monomial(f, 1, -1), 1).is_zero());
}

TEST_CASE("Kubota integral: closed form grid and the delta identity") {
  for (std::uint32_t q : {3u, 5u}) {
    Fq f(q);
    for (int Y = -2; Y <= 2; ++Y)
      for (FqElem c = 1; c < f.q(); ++c)
        for (int j = -4; j <= 2; ++j) {
          Laurent gamma = Laurent::monomial(f, c, j);
          CHECK(kubota_integral(gamma, Y) == kubota_integral_closed(gamma, Y));
        }
  }
  Fq f(3);
  // delta identity at Y = 0: nonzero integer -> 0; zero -> 1
  CHECK(kubota_integral(Laurent::monomial(f, 1, 1), 0).is_zero());
  CHECK(kubota_integral(Laurent::zero(f), 0) == CycQ::one(3));
}

TEST_CASE("Lemma-4.5 oracle: int_T psi(f u^2) du = G(f) on the stated grid") {
  for (std::uint32_t q : {3u, 5u}) {
    Fq f(q);
    FqElem nu = f.non_square();
    for (int j = -3; j <= 3; ++j)
      for (FqElem c : {FqElem(1), nu}) {
        Laurent h = Laurent::monomial(f, c, j);
        CycQ direct = unit_ball_square_integral(h);
        CycQ closed = gauss_factor(h);
        CHECK(direct == closed);
        CHECK(std::abs((direct.to_complex() - closed.to_complex()).real()) < 1e-9);
        // doubled depth stability
        CHECK(unit_ball_square_integral(h, std::max(1, j + 4)) == direct);
      }
  }
}

TEST_CASE("dissection: Q=1 count, measure, exhaustive disjoint cover Q <= 3") {
  Fq f(3);
  auto balls = dissect(f, 1);
  CHECK(balls.size() == 7);  // 1 + 3*2

  for (int Q = 1; Q <= 3; ++Q) {
    auto bs = dissect(f, Q);
    // total measure: each (r, a) ball has measure q^(-Q-deg r) ... sum = 1
    double total = 0;
    for (const auto& b : bs) total += std::pow(3.0, b.radius_exp);
    CHECK(std::abs(total - 1.0) < 1e-12);
    // every cylinder of depth 2Q lies in exactly one ball
    std::uint64_t cyl = 1;
    for (int i = 0; i < 2 * Q; ++i) cyl *= 3;
    for (std::uint64_t m = 0; m < cyl; ++m) {
      LaurentBuilder ab(f, -2 * Q, -1, true);
      std::uint64_t v = m;
      for (int i = 1; i <= 2 * Q; ++i) {
        ab.add(-i, v % 3);
        v /= 3;
      }
      Laurent alpha = ab.build();
      int hits = 0;
      for (const auto& b : bs) hits += ball_contains(b, alpha, Q);
      CHECK(hits == 1);
    }
  }
}

TEST_SUITE_END();
