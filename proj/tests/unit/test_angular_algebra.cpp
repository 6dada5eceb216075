#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <vector>

#include "bsci/angular.hpp"
#include "oracles.hpp"
#include "support.hpp"

using namespace bsci;
using bsci::test::thrown_kind;

TEST_CASE("3-j values") {
  CHECK(wigner_3j(0, 0, 0, 0, 0, 0) == 1.0);
  CHECK(wigner_3j(1, 1, 0, 0, 0, 0) == doctest::Approx(-1.0 / std::sqrt(3.0)).epsilon(1e-15));
  CHECK(wigner_3j(2, 1, 5, 0, 0, 0) == 0.0);
  CHECK(wigner_3j(0.5, 0.5, 1, 0.5, -0.5, 0) == doctest::Approx(1.0 / std::sqrt(6.0)).epsilon(1e-15));
  CHECK(wigner_3j(1, 1, 1, 0, 0, 0) == 0.0);  // odd J with all m = 0
  CHECK(thrown_kind([] { wigner_3j(1, 1, 1, 0.5, 0, 0); }) == ErrorKind::invalid_quantum_numbers);
  CHECK(thrown_kind([] { wigner_3j(0.3, 1, 1, 0, 0, 0); }) == ErrorKind::invalid_quantum_numbers);
}

TEST_CASE("3-j symmetries and orthogonality, j <= 4") {
  double worst = 0.0;
  for (int a = 0; a <= 8; ++a)
    for (int b = 0; b <= 8; ++b)
      for (int c = std::abs(a - b); c <= std::min(a + b, 8); c += 2) {
        const double sign = ((a + b + c) / 2 % 2 == 0) ? 1.0 : -1.0;
        std::vector<double> ortho(static_cast<std::size_t>(c + 1), 0.0);  // per m3
        for (int ma = -a; ma <= a; ma += 2)
          for (int mb = -b; mb <= b; mb += 2) {
            const int mc = -ma - mb;
            if (std::abs(mc) > c) continue;
            const double v = threej_2(a, b, c, ma, mb, mc);
            worst = std::max(worst, std::abs(v - threej_2(b, c, a, mb, mc, ma)));
            worst = std::max(worst, std::abs(v - threej_2(c, a, b, mc, ma, mb)));
            worst = std::max(worst, std::abs(sign * v - threej_2(b, a, c, mb, ma, mc)));
            worst = std::max(worst, std::abs(sign * v - threej_2(a, b, c, -ma, -mb, -mc)));
            ortho[static_cast<std::size_t>((mc + c) / 2)] += (c + 1) * v * v;
          }
        for (double o : ortho) worst = std::max(worst, std::abs(o - 1.0));
      }
  CHECK(worst < 1e-14);
}

TEST_CASE("6-j values") {
  for (int b2 = 0; b2 <= 8; ++b2) {
    const double b = b2 / 2.0;
    const double expect = ((b2 % 2 == 0) ? 1.0 : -1.0) / (2 * b + 1);
    CHECK(wigner_6j(0, b, b, 0, b, b) == doctest::Approx(expect).epsilon(1e-15));
  }
  CHECK(wigner_6j(1, 1, 3, 1, 1, 1) == 0.0);
  CHECK(thrown_kind([] { wigner_6j(-1, 1, 1, 1, 1, 1); }) == ErrorKind::invalid_quantum_numbers);
  // orthogonality: sum_x (2x+1)(2f+1) {a b x; c d f}{a b x; c d f'} = delta_ff'
  const int a = 2, b = 3, c = 2, d = 3;
  for (int f = 1; f <= 5; ++f)
    for (int fp = 1; fp <= 5; ++fp) {
      double s = 0.0;
      for (int x = 0; x <= 6; ++x) s += (2 * x + 1) * (2 * f + 1) * wigner_6j(a, b, x, c, d, f) * wigner_6j(a, b, x, c, d, fp);
      CHECK(s == doctest::Approx(f == fp ? 1.0 : 0.0).epsilon(1e-13));
    }
}

TEST_CASE("coupling coefficients") {
  CHECK(coupling_coefficient(0, 0, 0, 0, 0, 0) == doctest::Approx(1.0).epsilon(1e-15));
  CHECK(coupling_coefficient(0, 0, 1, 1, 0, 1) ==
        doctest::Approx(oracle::coupling_bruteforce(0, 0, 1, 1, 0, 1)).epsilon(1e-12));
  for (int l1 = 0; l1 <= 3; ++l1)
    for (int l3 = 0; l3 <= 3; ++l3)
      for (int k = 0; k <= 6; ++k)
        if ((l1 + l3 + k) % 2 == 1) CHECK(coupling_coefficient(l1, l1, l3, l3, 0, k) == 0.0);
  CHECK(thrown_kind([] { coupling_coefficient(0, 1, 0, 0, 0, 0); }) == ErrorKind::invalid_coupling);
  CHECK(thrown_kind([] { coupling_coefficient(1, 1, 2, 2, 3, 1); }) == ErrorKind::invalid_coupling);
}

TEST_CASE("coupling vs m-summation, L = 0 and two M values") {
  double worst = 0.0;
  for (int l1 = 0; l1 <= 4; ++l1)
    for (int l3 = 0; l3 <= 4; ++l3)
      for (int k = 0; k <= 8; ++k)
        worst = std::max(worst, std::abs(coupling_coefficient(l1, l1, l3, l3, 0, k) -
                                         oracle::coupling_bruteforce(l1, l1, l3, l3, 0, k)));
  CHECK(worst < 1e-12);
  // Wigner-Eckart: the brute-force contraction does not depend on M
  for (int L = 1; L <= 3; ++L)
    CHECK(oracle::coupling_bruteforce(2, 1, 1, 2, L, 2, 0) ==
          doctest::Approx(oracle::coupling_bruteforce(2, 1, 1, 2, L, 2, 1)).epsilon(1e-12));
}

TEST_CASE("CSF expansion") {
  SUBCASE("1s2s 1S") {
    const auto t = csf_expand({1, 0}, {2, 0}, 0, 0, 0, 0);
    REQUIRE(t.size() == 2);
    double norm = 0.0;
    for (const auto& x : t) {
      CHECK(std::abs(std::abs(x.coefficient) - 1.0 / std::sqrt(2.0)) < 1e-15);
      norm += x.coefficient * x.coefficient;
    }
    CHECK(norm == doctest::Approx(1.0));
  }
  SUBCASE("2p2 1S normalized") {
    double norm = 0.0;
    for (const auto& x : csf_expand({2, 1}, {2, 1}, 0, 0, 0, 0)) norm += x.coefficient * x.coefficient;
    CHECK(norm == doctest::Approx(1.0).epsilon(1e-14));
  }
  SUBCASE("Pauli") {
    CHECK(csf_expand({1, 0}, {1, 0}, 0, 0, 1, 0).empty());
    CHECK(csf_expand({2, 1}, {2, 1}, 1, 0, 0, 0).empty());
    CHECK(!csf_expand({2, 1}, {2, 1}, 1, 0, 1, 0).empty());
  }
  SUBCASE("invalid") {
    CHECK(thrown_kind([] { csf_expand({1, 0}, {2, 0}, 1, 0, 0, 0); }) == ErrorKind::invalid_coupling);
    CHECK(thrown_kind([] { csf_expand({1, 0}, {2, 0}, 0, 0, 2, 0); }) == ErrorKind::invalid_coupling);
  }
}
