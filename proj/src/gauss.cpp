#include "sparseprime/gauss.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <numeric>
#include <vector>

#include "sparseprime/errors.hpp"
#include "sparseprime/ntheory.hpp"
#include "sparseprime/parallel.hpp"

namespace sparseprime::gauss {

i64 delta(GaussInt z1, GaussInt z2) { return z1.re * z2.im - z2.re * z1.im; }

u64 unitary_squarefree_part(u64 D) {
  if (D == 0) throw DomainError("unitary_squarefree_part: D must be positive");
  u64 out = 1;
  for (auto [p, e] : ntheory::factorize(D).factors)
    if (e == 1) out *= p;
  return out;
}

u64 residue_a(GaussInt z1, GaussInt z2) {
  i64 D = delta(z1, z2);
  if (D == 0) throw DomainError("residue_a: Delta = 0");
  u64 mod = static_cast<u64>(D < 0 ? -D : D);
  i64 dot = z1.re * z2.re + z1.im * z2.im;
  i64 dm = dot % static_cast<i64>(mod);
  if (dm < 0) dm += static_cast<i64>(mod);
  u64 inv = ntheory::invmod(norm(z1) % mod, mod);
  return ntheory::mulmod(static_cast<u64>(dm), inv, mod);
}

PairStats pair_stats(u64 N, u64 Y) {
  if (N < 4) throw DomainError("pair_stats: N must be >= 4");
  if (N > 10000) throw WindowTooLarge("pair_stats: N capped at 1e4");
  if (Y < 1) throw DomainError("pair_stats: Y must be >= 1");

  // lattice points with |z|^2 in (N, 2N], fixed row-major order
  i64 R = static_cast<i64>(std::sqrt(static_cast<double>(2 * N))) + 2;
  std::vector<GaussInt> pts;
  for (i64 r = -R; r <= R; ++r)
    for (i64 s = -R; s <= R; ++s) {
      u64 q = static_cast<u64>(r * r + s * s);
      if (q > N && q <= 2 * N) pts.push_back({r, s});
    }

  // |Delta| <= |z1||z2| <= 2N, so all weights fit in one table pass
  const u64 dmax = 2 * N;
  std::vector<double> w_half(dmax + 1, 0.0), w_one(dmax + 1, 0.0);
  std::vector<unsigned char> py(dmax + 1, 0);
  for (u64 d = 1; d <= dmax; ++d) {
    u64 d1 = unitary_squarefree_part(d);
    double t = static_cast<double>(ntheory::tau(d));
    w_half[d] = t * t / std::sqrt(static_cast<double>(d1));
    w_one[d] = t * t / static_cast<double>(d1);
    py[d] = (d / d1 > Y) ? 1 : 0;  // d/d1 is the maximal powerful divisor
  }

  const i64 n_pts = static_cast<i64>(pts.size());
  const i64 n_chunks = std::min<i64>(64, n_pts);
  std::vector<std::vector<u64>> hist(n_chunks);
  std::vector<u64> gcd_cnt(n_chunks, 0);
  parallel_chunks(n_chunks, [&](std::int64_t c) {
    auto& h = hist[c];
    h.assign(dmax + 1, 0);
    i64 lo = c * n_pts / n_chunks, hi = (c + 1) * n_pts / n_chunks;
    for (i64 i = lo; i < hi; ++i) {
      GaussInt z1 = pts[i];
      for (i64 j = 0; j < n_pts; ++j) {
        GaussInt z2 = pts[j];
        i64 D = z1.re * z2.im - z2.re * z1.im;
        if (D == 0) continue;
        u64 d = static_cast<u64>(D < 0 ? -D : D);
        ++h[d];
        u64 g = std::gcd(std::gcd(static_cast<u64>(std::llabs(z2.re - z1.re)),
                                  static_cast<u64>(std::llabs(z2.im - z1.im))),
                         d);
        if (g > Y) ++gcd_cnt[c];
      }
    }
  });

  std::vector<u64> total(dmax + 1, 0);
  PairStats st;
  st.N = N;
  for (i64 c = 0; c < n_chunks; ++c) {
    for (u64 d = 1; d <= dmax; ++d) total[d] += hist[c][d];
    st.count_gcd_above_Y += gcd_cnt[c];
  }
  KahanSum half, one;
  for (u64 d = 1; d <= dmax; ++d) {
    if (total[d] == 0) continue;
    double m = static_cast<double>(total[d]);
    half.add(m * w_half[d]);
    one.add(m * w_one[d]);
    if (py[d]) st.count_powerful_Y += total[d];
  }
  st.sum_half = half.value();
  st.sum_one = one.value();
  return st;
}

}  // namespace sparseprime::gauss
