#pragma once

// ---------------------------------------------------------------------------
// harmonic: the finer-than-dyadic smooth partition of unity and the
// truncated Poisson summation identity as numerically checkable statements.
// The bump is the standard compactly supported mollifier rescaled to
// [1-delta, 1+delta] and normalized so that int psi(1/t) dt/t = delta.
// ---------------------------------------------------------------------------

#include <complex>
#include <cstdint>

namespace sparseprime::harmonic {

using u64 = std::uint64_t;

struct SmoothBump {
  double delta = 0.05;
  double norm = 1.0;  // scale fixed by the dt/t normalization

  // psi(u): smooth, nonnegative, zero outside [1-delta, 1+delta]
  double operator()(double u) const;
};

// Mollifier exp(-1/(1-x^2)) rescaled to [1-delta, 1+delta] and normalized;
// 0 < delta < 1/10.
SmoothBump make_bump(double delta);

// psi_hat(x) = int psi(u) e(xu) du with e(v) = exp(2 pi i v).
std::complex<double> bump_fourier(const SmoothBump& psi, double x);

// Reconstructs sum_{n<=N} 1 through (1/delta) int sum_n psi(n/t) dt/t and
// returns the relative error against N; N <= 1e4.
double partition_reconstruction(u64 N, double delta);

// |LHS - RHS| of the truncated Poisson identity
//   sum_{n = a (q)} psi(n/N)
//     = (N/q) psi_hat(0) + (N/q) sum_{1<=|h|<=H} psi_hat(hN/q) e_q(-ah)
// with both sides evaluated independently; q <= 1e3, N in [10, 1e6], any
// H >= 0 (H = 0 keeps only the main term).
double poisson_check(u64 N, u64 q, u64 a, double delta, u64 H);

// Truncation making the tail negligible at desk scale:
// ceil(delta^{-1} (qN)^{1/2} q/N).
u64 poisson_default_H(u64 N, u64 q, double delta);

}  // namespace sparseprime::harmonic
