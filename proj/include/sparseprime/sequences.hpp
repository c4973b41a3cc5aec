#pragma once

// ---------------------------------------------------------------------------
// sequences: dyadic-window enumeration of the three weighted sequences
//   quartic_shift  n = a^2 + (b^2+1)^2, (a, b^2+1) = 1, b > 0, weight k*2b
//   cubes          n = a^2 + (c^3+d^3)^2, (a, c^3+d^3) = 1, c,d > 0,
//                  weight k*Omega(c,d)
//   two_squares    n = a^2 + b^2, (a, b) = 1, b > 0, weight 1
// with a >= 0 throughout, plus the sifted sums S(A_d, Z), the Type I
// discrepancy harness, the worked residue-pair counts, and the two-step
// Buchstab identity as an exact integer check.
// ---------------------------------------------------------------------------

#include <cstdint>
#include <utility>
#include <vector>

namespace sparseprime::sequences {

using i64 = std::int64_t;
using u64 = std::uint64_t;

enum class Form { quartic_shift, cubes, two_squares };

struct SieveSeries {
  Form form = Form::two_squares;
  u64 X = 0;                                    // window (X, 2X]
  std::vector<std::pair<u64, double>> entries;  // sorted by n, weights > 0

  double total_mass() const;
};

struct SiftedSum {
  u64 d = 1;
  double Z = 2.0;
  double value = 0.0;
};

// Omega(c, d) = 9 c^2 d^2 / (c^3 + d^3); c, d > 0.
double omega_weight(u64 c, u64 d);

// Midpoint-rule value of the unit-region integral of Omega, which is
// exactly 1; grid >= 1000 (per axis).
double omega_integral_check(u64 grid);

// Exact enumeration of the declared form over (X, 2X]; kappa_value scales
// the quartic_shift/cubes weights and is ignored for two_squares.
// Deterministic under any thread count (fixed strata chunking, one sorted
// merge).  WindowTooLarge past the form caps (1e9/1e9/1e10) or when the
// representation count exceeds the in-memory cap.
SieveSeries enumerate_series(Form form, u64 X, double kappa_value);

// Ordered pairs (c, d), c,d > 0, with c^3 + d^3 = n; n <= 1e12.
u64 rep_count_two_cubes(u64 n);

// S(A_d, Z) = sum of weights of entries dn with n in (X/d, 2X/d] and
// spf(n) >= Z.  d >= 1, 2 <= Z <= 1e7.
SiftedSum sifted_sum(const SieveSeries& series, u64 d, double Z);

// max over d in [D, 2D) of |mass_A(d) - mass_B(d)| / (X/d), where mass(d)
// sums the weights of window entries divisible by d, A is the j-th sequence
// (kappa from the j-th local-density constant at truncation 2e4) and B is
// two_squares.  j in {1,2}; X <= 1e8; 1 <= D <= X^{3/4}.
double typei_discrepancy(int j, u64 X, u64 D);

// |{(mu, nu) mod d : mu^2 + (nu^2+1)^2 = 0}| for quartic_shift and
// |{(mu, nu) mod d : mu^2 + nu^2 = 0}| for two_squares; d <= 1e4.
// DomainError for cubes (no worked residue count for that form).
u64 remark_counts(u64 d, Form form);

struct BuchstabCheck {
  i64 lhs = 0;       // S(B, 2 sqrt X)
  i64 s1 = 0;        // S(B, Z)
  i64 s2 = 0;        // sum over Z <= p < 2 sqrt X of S(B_p, Z)
  i64 s3 = 0;        // sum over Z <= p2 < p1 < 2 sqrt X of S(B_{p1 p2}, p2)
  i64 residual = 0;  // lhs - (s1 - s2 + s3); identity makes this 0
  bool equal = false;
};

// Two-step Buchstab identity on the two_squares window, evaluated in exact
// integer arithmetic entry by entry; X <= 1e6, 2 <= Z <= 2 sqrt X.
BuchstabCheck buchstab_identity_check(u64 X, double Z);

}  // namespace sparseprime::sequences
