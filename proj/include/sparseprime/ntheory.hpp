#pragma once

#include <cstdint>
#include <functional>
#include <utility>
#include <vector>

namespace sparseprime::ntheory {

using u64 = std::uint64_t;
using u128 = unsigned __int128;

u64 mulmod(u64 a, u64 b, u64 m);
u64 powmod(u64 a, u64 e, u64 m);
u64 invmod(u64 a, u64 m);  // throws NotInvertible unless gcd(a,m)=1
bool is_prime(u64 n);      // deterministic Miller-Rabin over the 64-bit base set

// Prime factorization p1^e1 * ... with p ascending.  Trial division below
// 10^12, Pollard rho (Brent) above; no shared mutable state.
struct Factorization {
  std::vector<std::pair<u64, int>> factors;
  u64 n = 1;
};
Factorization factorize(u64 n);

int mobius(u64 n);
u64 tau(u64 n);

// Largest powerful divisor of n (product of p^e over e >= 2); every powerful
// divisor of n divides it.
u64 powerful_part(u64 n);
bool is_powerful_divisor_above(u64 n, u64 Y);

// All nu mod d with nu^2 + 1 == 0 (mod d), ascending.  Roots mod p from a
// quadratic non-residue power, lifted by Hensel, combined by CRT.
std::vector<u64> roots_nu_squared_plus_one(u64 d);

// rho(1,d) = #{nu mod d : nu^2+1 == 0}, rho(2,d) = #{(a,b) mod d : a^3+b^3 == 0}.
// Multiplicative; prime powers <= 10^6 by direct residue count.
u64 rho(int j, u64 d);
u64 rho_prime_power(int j, u64 p, int e);

struct KappaResult {
  double value = 0.0;
  double numerator = 0.0;
  double denominator = 0.0;
  double tail_estimate = 0.0;  // bounds |value(T) - value(inf)|
  u64 truncation = 0;
};

// kappa_j truncated at T: (sum mu(c)/c^2) / (sum mu(c) rho_j(c)/c^{den_exponent}),
// den_exponent defaults to 1+j.  Throws DenominatorTooSmall when the truncated
// denominator is within 10x of its rigorous tail bound.
KappaResult kappa(int j, u64 T);
KappaResult kappa(int j, u64 T, int den_exponent);
// Test hook: identical machinery with rho(c) supplied by the caller for
// every squarefree c (including c = 1).
KappaResult kappa_custom(int j, u64 T, int den_exponent,
                         const std::function<u64(u64)>& rho_of_c);

struct DivisorWitness {
  u64 d = 1;
  u64 tau_n = 1;
  u64 tau_d = 1;
};

// Witness divisor d | n with d <= n^{1/k} and tau(n) <= 2^{k^2} tau(d)^{k^3}:
// n = b_1 b_2^2 ... b_k^k, then per squarefree layer a round-robin split of the
// primes (descending) into k buckets, keeping the bucket of least product.
DivisorWitness divisor_witness(u64 n, int k);

// #units of Z[i]/dZ[i]; multiplicative: split p: (p^e - p^{e-1})^2,
// inert p: p^{2e}(1 - 1/p^2), p = 2: 2^{2e-1}.
u64 euler_phi_gaussian(u64 d);

}  // namespace sparseprime::ntheory
