#include <array>
#include <cmath>
#include <complex>
#include <cstdint>
#include <numeric>
#include <vector>

#include "doctest.h"
#include "sparseprime/curves.hpp"
#include "sparseprime/errors.hpp"
#include "sparseprime/ntheory.hpp"
#include "sparseprime/parallel.hpp"

namespace cv = sparseprime::curves;
namespace nt = sparseprime::ntheory;
using sparseprime::BudgetExceeded;
using i64 = std::int64_t;
using u64 = std::uint64_t;

namespace {

constexpr double kTau = 6.283185307179586476925286766559;

u64 brute_N1(u64 a, u64 d) {
  u64 c = 0;
  for (u64 x1 = 0; x1 < d; ++x1)
    for (u64 x2 = 0; x2 < d; ++x2)
      if ((x1 * x1 + 1) % d == a * ((x2 * x2 + 1) % d) % d) ++c;
  return d == 1 ? 1 : c;
}

u64 brute_N2(u64 gamma, u64 p) {
  u64 c = 0;
  for (u64 x1 = 0; x1 < p; ++x1)
    for (u64 x2 = 0; x2 < p; ++x2)
      if ((x1 * x1 % p * x1 + x2 * x2 % p * x2) % p == gamma) ++c;
  return c;
}

u64 brute_N3(u64 a, u64 d) {
  u64 c = 0;
  for (u64 x1 = 0; x1 < d; ++x1)
    for (u64 x2 = 0; x2 < d; ++x2)
      for (u64 x3 = 0; x3 < d; ++x3)
        for (u64 x4 = 0; x4 < d; ++x4) {
          const u64 lhs = (x1 * x1 % d * x1 + x2 * x2 % d * x2) % d;
          const u64 rhs = a * ((x3 * x3 % d * x3 + x4 * x4 % d * x4) % d) % d;
          if (lhs == rhs) ++c;
        }
  return d == 1 ? 1 : c;
}

std::complex<double> brute_S1(u64 a, i64 h1, i64 h2, u64 D) {
  std::complex<double> s = 0.0;
  for (u64 x1 = 0; x1 < D; ++x1)
    for (u64 x2 = 0; x2 < D; ++x2) {
      if ((x1 * x1 + 1) % D != a * ((x2 * x2 + 1) % D) % D) continue;
      const double ph = kTau *
                        static_cast<double>((h1 * static_cast<i64>(x1) +
                                             h2 * static_cast<i64>(x2)) %
                                                static_cast<i64>(D) +
                                            static_cast<i64>(D)) /
                        static_cast<double>(D);
      s += std::complex<double>(std::cos(ph), std::sin(ph));
    }
  return s;
}

std::complex<double> brute_S2(u64 a, std::array<i64, 4> h, u64 D) {
  std::complex<double> s = 0.0;
  for (u64 x1 = 0; x1 < D; ++x1)
    for (u64 x2 = 0; x2 < D; ++x2)
      for (u64 x3 = 0; x3 < D; ++x3)
        for (u64 x4 = 0; x4 < D; ++x4) {
          const u64 lhs = (x1 * x1 % D * x1 + x2 * x2 % D * x2) % D;
          const u64 rhs = a * ((x3 * x3 % D * x3 + x4 * x4 % D * x4) % D) % D;
          if (lhs != rhs) continue;
          i64 dot = h[0] * static_cast<i64>(x1) + h[1] * static_cast<i64>(x2) +
                    h[2] * static_cast<i64>(x3) + h[3] * static_cast<i64>(x4);
          dot = (dot % static_cast<i64>(D) + static_cast<i64>(D)) % static_cast<i64>(D);
          const double ph = kTau * static_cast<double>(dot) / static_cast<double>(D);
          s += std::complex<double>(std::cos(ph), std::sin(ph));
        }
  return s;
}

std::complex<double> brute_Kl2(u64 a, u64 p) {
  std::complex<double> s = 0.0;
  for (u64 x = 1; x < p; ++x)
    for (u64 y = 1; y < p; ++y) {
      if (x * y % p != a % p) continue;
      const double ph = kTau * static_cast<double>((x + y) % p) / static_cast<double>(p);
      s += std::complex<double>(std::cos(ph), std::sin(ph));
    }
  return s;
}

void check_exp(const cv::ExpSum& got, std::complex<double> want) {
  const double tol = 1e-9 * std::max(1.0, std::abs(want));
  CHECK(std::abs(got.value_re - want.real()) <= tol);
  CHECK(std::abs(got.value_im - want.imag()) <= tol);
}

}  // namespace

TEST_SUITE("curves") {

TEST_CASE("N1 against brute force, with the worked values") {
  for (u64 d = 1; d <= 80; ++d)
    for (u64 a = 0; a < std::min<u64>(d, 12); ++a) {
      const auto pc = cv::count_N1(a, d);
      REQUIRE(pc.count == brute_N1(a, d));
      CHECK(pc.deviation == static_cast<i64>(pc.count) - static_cast<i64>(d));
    }
  CHECK(cv::count_N1(1, 5).count == 9);    // x1 = +-x2: 2p-1
  CHECK(cv::count_N1(0, 5).count == 10);   // rho_1(5) columns, x2 free
  CHECK(cv::count_N1(0, 1).count == 1);
}

TEST_CASE("N1 CRT composition matches direct count") {
  for (u64 m : {4ULL, 9ULL, 25ULL, 49ULL, 13ULL})
    for (u64 n : {7ULL, 11ULL, 27ULL, 64ULL}) {
      if (std::gcd(m, n) != 1) continue;
      for (u64 a : {0ULL, 1ULL, 2ULL, 7ULL}) {
        const u64 whole = cv::count_N1(a % (m * n), m * n).count;
        CHECK(whole == cv::count_N1(a % m, m).count * cv::count_N1(a % n, n).count);
      }
    }
}

TEST_CASE("N2 brute check, zero-fiber formula, and Hasse-style band") {
  for (u64 p : {2ULL, 3ULL, 5ULL, 7ULL, 11ULL, 13ULL, 31ULL, 43ULL})
    for (u64 g = 0; g < std::min<u64>(p, 8); ++g)
      REQUIRE(cv::count_N2(g, p).count == brute_N2(g, p));
  CHECK(cv::count_N2(0, 7).count == 19);  // 3p-2 for p = 1 (mod 3)
  CHECK(cv::count_N2(1, 2).count == 2);
  std::vector<u64> primes;
  for (u64 p = 2; p <= 300; ++p)
    if (nt::is_prime(p)) primes.push_back(p);
  for (u64 p : primes) {
    const u64 zero = cv::count_N2(0, p).count;
    if (p % 3 == 1)
      CHECK(zero == 3 * p - 2);
    else
      CHECK(zero == p);  // cubing is a bijection (p = 2 mod 3) or p = 3
    for (u64 g = 1; g < std::min<u64>(p, 20); ++g) {
      const auto pc = cv::count_N2(g, p);
      if (p % 3 != 1) {
        CHECK(pc.count == p);
      } else {
        // affine smooth cubic: |count - p| <= 2 sqrt(p) + 2 (infinity points)
        CHECK(std::abs(pc.deviation) <=
              static_cast<i64>(2.0 * std::sqrt(static_cast<double>(p))) + 2);
      }
    }
  }
}

TEST_CASE("N3 brute check and diagonal lower bound") {
  for (u64 d : {2ULL, 3ULL, 5ULL, 7ULL, 9ULL, 13ULL})
    for (u64 a = 0; a < std::min<u64>(d, 5); ++a)
      REQUIRE(cv::count_N3(a, d).count == brute_N3(a, d));
  for (u64 p : {2ULL, 3ULL, 5ULL, 7ULL, 11ULL, 13ULL}) {
    const auto pc = cv::count_N3(1, p);
    CHECK(pc.count >= p * p * p);  // diagonal x3 = x1, x4 = x2 plus friends
    CHECK(pc.deviation == static_cast<i64>(pc.count) - static_cast<i64>(p * p * p));
  }
}

TEST_CASE("N3 CRT composition") {
  for (u64 m : {3ULL, 4ULL, 5ULL, 7ULL})
    for (u64 n : {2ULL, 9ULL, 11ULL}) {
      if (std::gcd(m, n) != 1) continue;
      for (u64 a : {1ULL, 2ULL})
        CHECK(cv::count_N3(a % (m * n), m * n).count ==
              cv::count_N3(a % m, m).count * cv::count_N3(a % n, n).count);
    }
  // one pair deep in the raised histogram range
  CHECK(cv::count_N3(2, 53 * 97).count ==
        cv::count_N3(2 % 53, 53).count * cv::count_N3(2 % 97, 97).count);
}

TEST_CASE("eps_d worked values and multiplicativity") {
  CHECK(cv::eps_d(1, 1) == 1);
  for (u64 p : {3ULL, 5ULL, 7ULL, 11ULL})
    CHECK(cv::eps_d(1, p) == static_cast<i64>(p) - 1);  // from count 2p-1
  CHECK(cv::eps_d(1, 15) == 8);                         // 2 * 4
  for (u64 m : {3ULL, 4ULL, 5ULL, 9ULL})
    for (u64 n : {7ULL, 11ULL, 13ULL})
      for (u64 a : {2ULL, 5ULL})
        CHECK(cv::eps_d(a, m * n) == cv::eps_d(a % m, m) * cv::eps_d(a % n, n));
}

TEST_CASE("Lemma-style divisor decomposition of N1 on squarefree moduli") {
  for (u64 D : {15ULL, 21ULL, 35ULL, 105ULL, 77ULL}) {
    for (u64 a : {2ULL, 3ULL, 8ULL}) {
      if (std::gcd(a * (a - 1), D) != 1) continue;
      i64 sum = 0;
      for (u64 d = 1; d <= D; ++d)
        if (D % d == 0) sum += static_cast<i64>(D / d) * cv::eps_d(a % d, d);
      CHECK(static_cast<i64>(cv::count_N1(a % D, D).count) == sum);
    }
  }
}

TEST_CASE("S1 matches brute complex sums; zero frequency is the count") {
  for (u64 D : {5ULL, 7ULL, 12ULL, 13ULL, 40ULL})
    for (u64 a = 0; a < std::min<u64>(D, 4); ++a)
      for (i64 h1 : {0, 1, 2})
        for (i64 h2 : {0, 1, -1}) {
          const auto s = cv::exp_sum_S1(a, h1, h2, D);
          check_exp(s, brute_S1(a, h1, h2, D));
          CHECK(s.abs() <= static_cast<double>(s.exact_terms) + 1e-9);
        }
  const auto z = cv::exp_sum_S1(3, 0, 0, 101);
  CHECK(z.value_re == doctest::Approx(static_cast<double>(cv::count_N1(3, 101).count))
                          .epsilon(1e-6));
  CHECK(std::abs(z.value_im) < 1e-9);
  // a = 1, h1 = h2 = h != 0 collapses to the antidiagonal line: p - 1
  for (u64 p : {7ULL, 11ULL, 13ULL}) {
    const auto s = cv::exp_sum_S1(1, 1, 1, p);
    CHECK(s.value_re == doctest::Approx(static_cast<double>(p - 1)).epsilon(1e-9));
    CHECK(std::abs(s.value_im) < 1e-9);
  }
  CHECK(cv::exp_sum_S1(2, 1, 0, 5).abs() <= 3.0 * std::sqrt(5.0));
}

TEST_CASE("S1 twisted-frequency CRT identity") {
  for (const auto& [m, n] : std::vector<std::pair<u64, u64>>{
           {5, 7}, {4, 9}, {8, 13}, {9, 11}, {3, 25}}) {
    const u64 D = m * n;
    const u64 ninv = nt::invmod(n % m, m);
    const u64 minv = nt::invmod(m % n, n);
    for (u64 a : {2ULL, 3ULL})
      for (i64 h1 : {0, 1, 2})
        for (i64 h2 : {1, 3}) {
          const auto whole = cv::exp_sum_S1(a % D, h1, h2, D);
          const auto pm = cv::exp_sum_S1(
              a % m, static_cast<i64>(ninv) * h1 % static_cast<i64>(m),
              static_cast<i64>(ninv) * h2 % static_cast<i64>(m), m);
          const auto pn = cv::exp_sum_S1(
              a % n, static_cast<i64>(minv) * h1 % static_cast<i64>(n),
              static_cast<i64>(minv) * h2 % static_cast<i64>(n), n);
          const std::complex<double> prod =
              std::complex<double>(pm.value_re, pm.value_im) *
              std::complex<double>(pn.value_re, pn.value_im);
          check_exp(whole, prod);
        }
  }
}

TEST_CASE("FI comparison sum") {
  for (u64 p : {5ULL, 7ULL, 13ULL}) {
    const auto s = cv::exp_sum_FI(1, 0, 0, p);
    CHECK(s.value_re == doctest::Approx(static_cast<double>(2 * p - 1)).epsilon(1e-9));
  }
  // brute force on the singular curve x1^2 = a x2^2
  for (u64 D : {5ULL, 8ULL, 9ULL})
    for (u64 a = 0; a < 3; ++a)
      for (i64 h1 : {0, 1})
        for (i64 h2 : {0, 1}) {
          std::complex<double> want = 0.0;
          for (u64 x1 = 0; x1 < D; ++x1)
            for (u64 x2 = 0; x2 < D; ++x2) {
              if (x1 * x1 % D != a * (x2 * x2 % D) % D) continue;
              const double ph = kTau *
                                static_cast<double>((h1 * x1 + h2 * x2) % D) /
                                static_cast<double>(D);
              want += std::complex<double>(std::cos(ph), std::sin(ph));
            }
          check_exp(cv::exp_sum_FI(a, h1, h2, D), want);
        }
  CHECK(cv::exp_sum_FI(1, 1, 1, 1).value_re == doctest::Approx(1.0));
}

TEST_CASE("S2 matches brute force on tiny moduli") {
  for (u64 D : {2ULL, 3ULL, 5ULL, 7ULL})
    for (u64 a = 1; a < std::min<u64>(D, 3); ++a)
      for (const auto& h : std::vector<std::array<i64, 4>>{
               {0, 0, 0, 0}, {1, 0, 0, 0}, {1, 1, 2, 0}, {1, 2, 1, 2}}) {
        const auto s = cv::exp_sum_S2(a, h, D);
        check_exp(s, brute_S2(a, h, D));
        CHECK(s.abs() <= static_cast<double>(s.exact_terms) + 1e-9);
      }
  const auto z = cv::exp_sum_S2(1, {0, 0, 0, 0}, 6);
  CHECK(z.value_re ==
        doctest::Approx(static_cast<double>(cv::count_N3(1, 6).count)).epsilon(1e-6));
  CHECK(cv::exp_sum_S2(2, {1, 0, 0, 0}, 7).abs() <= 5.0 * 49.0);
}

TEST_CASE("Kloosterman sums: known value, realness, Deligne-with-slack") {
  const auto kl13 = cv::kloosterman(2, 1, 3);
  CHECK(kl13.value_re == doctest::Approx(-1.0).epsilon(1e-12));
  CHECK(std::abs(kl13.value_im) < 1e-12);
  for (u64 p : {3ULL, 5ULL, 7ULL, 11ULL, 13ULL, 17ULL, 19ULL, 23ULL})
    for (u64 a = 1; a < p; ++a) {
      const auto got = cv::kloosterman(2, a, p);
      check_exp(got, brute_Kl2(a, p));
      CHECK(std::abs(got.value_im) < 1e-9);
      CHECK(got.abs() <= 2.0 * std::sqrt(static_cast<double>(p)) + 1e-9);
    }
  CHECK(cv::kloosterman(3, 1, 5).abs() <= 3.0 * 5.0);
  CHECK(cv::kloosterman(2, 0, 7).exact_terms == 0);  // empty sum at a = 0
  CHECK_THROWS_AS(cv::kloosterman(3, 1, 4999), BudgetExceeded);
  CHECK_THROWS_AS(cv::kloosterman(3, 1, 5000), sparseprime::DomainError);
}

TEST_CASE("verify_weil_suite: clean pass, sorted rows, stable worst") {
  const auto rep = cv::verify_weil_suite(50);
  CHECK(rep.ok);
  for (const auto& r : rep.rows) {
    CHECK(r.ratio <= 1.0);
    CHECK(r.observed <= r.bound + 1e-9);
  }
  for (size_t i = 0; i + 1 < rep.rows.size(); ++i) {
    const auto &x = rep.rows[i], &y = rep.rows[i + 1];
    CHECK((x.lemma < y.lemma || (x.lemma == y.lemma && x.p < y.p) ||
           (x.lemma == y.lemma && x.p == y.p && x.a <= y.a)));
  }
  CHECK(cv::verify_weil_suite(3).ok);  // tiny
  // determinism: rerun under a different thread count, compare field-by-field
  sparseprime::set_thread_count(1);
  const auto serial = cv::verify_weil_suite(100);
  sparseprime::set_thread_count(6);
  const auto wide = cv::verify_weil_suite(100);
  sparseprime::set_thread_count(0);
  REQUIRE(serial.rows.size() == wide.rows.size());
  for (size_t i = 0; i < serial.rows.size(); ++i) {
    CHECK(serial.rows[i].lemma == wide.rows[i].lemma);
    CHECK(serial.rows[i].p == wide.rows[i].p);
    CHECK(serial.rows[i].a == wide.rows[i].a);
    CHECK(serial.rows[i].h == wide.rows[i].h);
    CHECK(serial.rows[i].observed == wide.rows[i].observed);  // bitwise
    CHECK(serial.rows[i].ratio == wide.rows[i].ratio);
  }
  REQUIRE(serial.worst.size() == 6);
}

TEST_CASE("budget guards") {
  CHECK_THROWS_AS(cv::count_N1(1, 2147483647ULL), BudgetExceeded);
  CHECK_THROWS_AS(cv::count_N3(1, 10001), sparseprime::DomainError);
  CHECK_THROWS_AS(cv::exp_sum_S2(1, {0, 0, 0, 0}, 10001), sparseprime::DomainError);
  CHECK_THROWS_AS(cv::verify_weil_suite(301), sparseprime::DomainError);
}

}  // TEST_SUITE
