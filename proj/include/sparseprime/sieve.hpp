#pragma once

// ---------------------------------------------------------------------------
// sieve: the numerical sieve layer.  Buchstab's omega with its piecewise
// upper envelope, the Type II range parameters and exclusion intervals, the
// almost-prime regions U2(j)/U4(j), and rigorous upper Riemann sums for the
// discard integrals Omega2(j)/Omega4(j).  Every bound here is one-sided:
// closed region boundaries, per-cell suprema, and whole-cell inclusion of
// unresolved boundary cells can only increase the reported value.
// ---------------------------------------------------------------------------

#include <cstdint>
#include <vector>

namespace sparseprime::sieve {

using u64 = std::uint64_t;

struct SieveParams {
  int j = 1;
  double eta = 1e-4;
  double alpha = 0.0;      // Type I exponent: 3/4-eta (j=1), 5/6-eta (j=2)
  double gamma = 0.0;      // Type II width origin: 1/12-2eta, 1/18-2eta
  double J[2][2] = {};     // exclusion intervals [1-a, 1-a+g], [a-g, a]
};

// j in {1, 2}; 0 < eta <= 1/100.
SieveParams make_params(int j, double eta);

// Buchstab omega on [1, 5]: 1/u, then (1+log(u-1))/u, then the integral
// recursion u omega(u) = 1 + int_1^{u-1} omega(s) ds (quadrature tol 1e-9).
double buchstab_omega(double u);

// Piecewise upper envelope: 0, 1/u, (1+log(u-1))/u, 0.5644, 0.5617.
double buchstab_upper(double u);

// sup of buchstab_upper over [lo, hi] (piecewise structure: the middle piece
// peaks at u* = 2.7632228343518968 with value 1/(u*-1)).
double buchstab_upper_sup(double lo, double hi);

// Pointwise membership with closed boundaries (exclusion intervals J count
// only their open interior): dim = 2 checks U2(j), dim = 4 checks U4(j).
bool region_membership(int dim, const std::vector<double>& beta, const SieveParams& params);

struct OmegaBound {
  int kind = 2;  // dimension
  int j = 1;
  double value = 0.0;
  u64 grid = 0;  // top-level subdivisions per axis
  double eta = 1e-4;
  bool conservative = true;  // always: upper sum with per-cell suprema
  u64 cells_counted = 0;     // included (sub)cells after refinement
};

// Upper Riemann sums for the discard integrals over U2(j)/U4(j) with
// integrand buchstab_upper((1-sum beta)/beta_k) / (beta_1...beta_{k-1}
// beta_k^2).  The 1/beta factor integrates exactly per cell; the Buchstab
// factor contributes its supremum over the cell's argument range.  Boundary
// cells refine dyadically (depth 4 for dim 2, 3 for dim 4) and unresolved
// cells count whole.  Values never increase under grid doubling.
// GridTooCoarse below 20 (dim 2) resp. 10 (dim 4) subdivisions.
OmegaBound omega2_bound(int j, double eta, u64 grid);
OmegaBound omega4_bound(int j, double eta, u64 grid);

// 1 - omega2 - omega4 at the given dim-2 grid (dim-4 grid = grid/10 clamped
// to [10, 60]); the lower-bound fraction of S(B, 2 sqrt X) retained.
double deficiency(int j, double eta, u64 grid);

}  // namespace sparseprime::sieve
