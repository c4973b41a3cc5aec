#pragma once

// ---------------------------------------------------------------------------
// gauss: Gaussian-integer pair structure behind the bilinear estimates.
// Delta = Im(z2 conj(z1)) is the pair commutator; Delta_1 its unitary
// squarefree part; residue_a the twisted residue a(z1, z2); pair_stats the
// exact annulus statistics for the tau^2/Delta_1 sums and the two
// non-generic-pair counts.
// ---------------------------------------------------------------------------

#include <cstdint>

namespace sparseprime::gauss {

using i64 = std::int64_t;
using u64 = std::uint64_t;

struct GaussInt {
  i64 re = 0;
  i64 im = 0;
};

inline GaussInt conj(GaussInt z) { return {z.re, -z.im}; }

inline u64 norm(GaussInt z) {
  return static_cast<u64>(z.re * z.re) + static_cast<u64>(z.im * z.im);
}

// Im(z2 * conj(z1)) = r1 s2 - r2 s1; antisymmetric in (z1, z2).
i64 delta(GaussInt z1, GaussInt z2);

// Largest squarefree D1 | D with gcd(D1, D/D1) = 1: the product of the
// primes exactly dividing D.  The cofactor D/D1 is the powerful part.
u64 unitary_squarefree_part(u64 D);

// Canonical a in [0, |Delta|) with a |z1|^2 = r1 r2 + s1 s2 (mod |Delta|).
// The congruence b2^2 + 1 = a (b1^2 + 1) (mod |Delta|) is then equivalent to
// z2 (b1^2+1) = z1 (b2^2+1) (mod |Delta|) in both components.
// Throws DomainError when Delta = 0, NotInvertible when gcd(|z1|^2, Delta) > 1.
u64 residue_a(GaussInt z1, GaussInt z2);

struct PairStats {
  u64 N = 0;
  double sum_half = 0.0;     // sum of tau(|Delta|)^2 / sqrt(Delta_1)
  double sum_one = 0.0;      // sum of tau(|Delta|)^2 / Delta_1
  u64 count_powerful_Y = 0;  // pairs whose |Delta| has a powerful divisor > Y
  u64 count_gcd_above_Y = 0; // pairs with gcd(r2-r1, s2-s1, |Delta|) > Y
};

// Exact sums over ordered pairs z1, z2 with |z_j|^2 in (N, 2N] and
// Delta != 0.  The tau exponent is fixed at 2.  Deterministic under any
// thread count: pairs are binned by |Delta| in integer histograms and the
// floating-point reduction runs once in ascending |Delta| order.
// DomainError for N < 4 or Y < 1; WindowTooLarge for N > 1e4.
PairStats pair_stats(u64 N, u64 Y);

}  // namespace sparseprime::gauss
