#pragma once

// ---------------------------------------------------------------------------
// curves: finite-ring point counts and complete exponential sums on the two
// comparison varieties x1^2 + 1 = a (x2^2 + 1) and x1^3 + x2^3 = a (x3^3 +
// x4^3), their multiplicative deviations eps_d(a), hyper-Kloosterman sums,
// and a batch verifier pinning explicit square-root-cancellation constants.
// All counts are exact integers; sums are exact term sets evaluated in
// double precision with compensated accumulation.
// ---------------------------------------------------------------------------

#include <array>
#include <cstdint>
#include <string>
#include <vector>

namespace sparseprime::curves {

using i64 = std::int64_t;
using u64 = std::uint64_t;

struct PointCount {
  u64 modulus = 1;
  u64 a = 0;        // residue parameter (gamma for the N2 count)
  u64 count = 0;
  i64 deviation = 0;  // count - modulus^dim, dim = 1 for N1/N2, 3 for N3
};

struct ExpSum {
  u64 modulus = 1;
  std::vector<i64> freq;  // h-vector (the twist a for Kloosterman sums)
  double value_re = 0.0;
  double value_im = 0.0;
  u64 exact_terms = 0;  // number of unit-modulus summands

  double abs() const;
};

// |{x1, x2 mod d : x1^2 + 1 = a (x2^2 + 1) (mod d)}|.  Direct square
// histogram for d <= 1e4, CRT over prime powers above (each prime power
// capped at 1e7, else BudgetExceeded).
PointCount count_N1(u64 a, u64 d);

// |{x1, x2 in F_p : x1^3 + x2^3 = gamma}|; p prime, p <= 300.
PointCount count_N2(u64 gamma, u64 p);

// |{x1..x4 mod d : x1^3 + x2^3 = a (x3^3 + x4^3) (mod d)}| via the cube-sum
// histogram (O(d^2) time, O(d) space); d <= 1e4.
PointCount count_N3(u64 a, u64 d);

// eps_d(a) = prod over p^k || d of (N1(a mod p^k; p^k) - p^k); d <= 1e4.
i64 eps_d(u64 a, u64 d);

// Complete sum over solutions of x1^2 + 1 = a (x2^2 + 1) (mod D) of
// e_D(h1 x1 + h2 x2); D <= 1e4.  Zero frequency reproduces count_N1.
ExpSum exp_sum_S1(u64 a, i64 h1, i64 h2, u64 D);

// Same shape on the singular comparison curve x1^2 = a x2^2 (mod D).
ExpSum exp_sum_FI(u64 a, i64 h1, i64 h2, u64 D);

// Complete sum over solutions of x1^3 + x2^3 = a (x3^3 + x4^3) (mod D) of
// e_D(h . x), assembled from two twisted cube-sum tables (O(D^2) time);
// D <= 1e4.  Zero frequency reproduces count_N3.
ExpSum exp_sum_S2(u64 a, std::array<i64, 4> h, u64 D);

// Kl_k(a; p) = sum over x1...xk = a in F_p^* of e_p(x1 + ... + xk).
// Enumeration budget p^{k-1} <= 1e7, else BudgetExceeded.
ExpSum kloosterman(int k, u64 a, u64 p);

struct WeilRow {
  std::string lemma;  // one of "eps", "S1", "S2", "N3", "Kl2", "Kl3"
  u64 p = 0;
  u64 a = 0;
  std::vector<i64> h;
  double observed = 0.0;
  double bound = 0.0;
  double ratio = 0.0;
};

struct WeilReport {
  std::vector<WeilRow> rows;   // worst case per (lemma, prime), sorted
  std::vector<WeilRow> worst;  // worst case per lemma over all primes
  bool ok = true;
};

// Checks, for every prime p <= p_max, the pinned slack constants:
//   |eps_p(a)| <= 4 sqrt(p)                    for a != 0, 1 (mod p)
//   |S1(a,h;p)| <= 3 gcd(h1,h2,p)^{1/2} sqrt(p) for a != 0, 1, all h mod p
//   |S2(a,h;p)| <= 5 gcd(h,p) p^2               for a != 0, h in {0,1,2}^4
//   |N3(a;p) - p^3| <= 5 p^{5/2}                for a != 0        (p <= 59)
//   |Kl_k(a;p)| <= k p^{(k-1)/2}                for a != 0, k in {2, 3}
// S2/N3 run only for p <= 59 (4-dim enumeration cap).  The constants are
// empirical slack choices, not theorems.  p_max <= 300.
// Parallel over a within each prime; row content is scan-order determined
// and independent of thread count.
WeilReport verify_weil_suite(u64 p_max, bool throw_on_violation = true);

}  // namespace sparseprime::curves
