#include "sparseprime/sequences.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>

#include "sparseprime/errors.hpp"
#include "sparseprime/ntheory.hpp"
#include "sparseprime/parallel.hpp"

namespace sparseprime::sequences {

namespace {

u64 isqrt(u64 n) {
  if (n == 0) return 0;
  u64 r = static_cast<u64>(std::sqrt(static_cast<double>(n)));
  while (r > 0 && r * r > n) --r;
  while ((r + 1) * (r + 1) <= n) ++r;
  return r;
}

u64 icbrt(u64 n) {
  u64 r = static_cast<u64>(std::cbrt(static_cast<double>(n)));
  while (r > 0 && r * r * r > n) --r;
  while ((r + 1) * (r + 1) * (r + 1) <= n) ++r;
  return r;
}

// primes strictly below real z
std::vector<u64> primes_below(double z) {
  std::vector<u64> ps;
  if (z <= 2.0) return ps;
  u64 m = static_cast<u64>(z);
  std::vector<unsigned char> comp(m + 1, 0);
  for (u64 i = 2; i <= m; ++i) {
    if (comp[i]) continue;
    if (static_cast<double>(i) < z) ps.push_back(i);
    for (u64 k = i * i; k <= m; k += i) comp[k] = 1;
  }
  return ps;
}

}  // namespace

double SieveSeries::total_mass() const {
  KahanSum s;
  for (const auto& [n, w] : entries) s.add(w);
  return s.value();
}

double omega_weight(u64 c, u64 d) {
  if (c == 0 || d == 0) throw DomainError("omega_weight: c, d must be positive");
  double cc = static_cast<double>(c), dd = static_cast<double>(d);
  return 9.0 * cc * cc * dd * dd / (cc * cc * cc + dd * dd * dd);
}

double omega_integral_check(u64 grid) {
  if (grid < 1000) throw DomainError("omega_integral_check: grid must be >= 1000");
  double g = static_cast<double>(grid);
  KahanSum total;
  for (u64 i = 0; i < grid; ++i) {
    double u = (static_cast<double>(i) + 0.5) / g;
    double u3 = u * u * u;
    double vmax = std::cbrt(1.0 - u3);
    double dv = vmax / g;
    KahanSum inner;
    for (u64 j = 0; j < grid; ++j) {
      double v = (static_cast<double>(j) + 0.5) * dv;
      inner.add(9.0 * u * u * v * v / (u3 + v * v * v));
    }
    total.add(inner.value() * dv / g);
  }
  return total.value();
}

SieveSeries enumerate_series(Form form, u64 X, double kappa_value) {
  if (X < 1) throw DomainError("enumerate_series: X must be >= 1");
  u64 cap = form == Form::two_squares ? 10'000'000'000ull : 1'000'000'000ull;
  if (X > cap) throw WindowTooLarge("enumerate_series: X above form cap");

  // one stratum per second coordinate: s = b^2+1, c^3+d^3, or b
  struct Stratum {
    u64 s;
    double weight;
  };
  std::vector<Stratum> strata;
  u64 smax = isqrt(2 * X);
  switch (form) {
    case Form::quartic_shift:
      for (u64 b = 1; b * b + 1 <= smax; ++b)
        strata.push_back({b * b + 1, kappa_value * 2.0 * static_cast<double>(b)});
      break;
    case Form::cubes:
      for (u64 c = 1; c * c * c + 1 <= smax; ++c)
        for (u64 d = 1; c * c * c + d * d * d <= smax; ++d)
          strata.push_back({c * c * c + d * d * d, kappa_value * omega_weight(c, d)});
      break;
    case Form::two_squares:
      for (u64 b = 1; b <= smax; ++b) strata.push_back({b, 1.0});
      break;
  }

  // a >= 0 with a^2 + s^2 in (X, 2X]; inclusive range, empty when lo > hi
  auto a_range = [X](u64 s) -> std::pair<u64, u64> {
    u64 s2 = s * s;
    if (s2 > 2 * X) return {1, 0};
    u64 hi = isqrt(2 * X - s2);
    u64 lo = s2 > X ? 0 : isqrt(X - s2) + 1;
    return {lo, hi};
  };

  u64 total_pairs = 0;
  for (const auto& st : strata) {
    auto [lo, hi] = a_range(st.s);
    if (hi >= lo) total_pairs += hi - lo + 1;
  }
  if (total_pairs > 60'000'000)
    throw WindowTooLarge("enumerate_series: window needs too many representations in memory");

  const std::int64_t n_strata = static_cast<std::int64_t>(strata.size());
  const std::int64_t n_chunks = std::min<std::int64_t>(192, n_strata);
  std::vector<std::vector<std::pair<u64, double>>> parts(n_chunks);
  parallel_chunks(n_chunks, [&](std::int64_t ch) {
    auto& out = parts[ch];
    std::int64_t ks = ch * n_strata / n_chunks, ke = (ch + 1) * n_strata / n_chunks;
    for (std::int64_t k = ks; k < ke; ++k) {
      u64 s = strata[k].s;
      double w = strata[k].weight;
      auto [alo, ahi] = a_range(s);
      for (u64 a = alo; a <= ahi; ++a)
        if (std::gcd(a, s) == 1) out.emplace_back(a * a + s * s, w);
    }
  });

  SieveSeries ser;
  ser.form = form;
  ser.X = X;
  auto& ent = ser.entries;
  {
    std::size_t total = 0;
    for (const auto& p : parts) total += p.size();
    ent.reserve(total);
  }
  for (const auto& p : parts) ent.insert(ent.end(), p.begin(), p.end());
  std::stable_sort(ent.begin(), ent.end(),
                   [](const auto& x, const auto& y) { return x.first < y.first; });
  // combine duplicates left to right: fixed order, so sums are reproducible
  std::size_t out = 0;
  for (std::size_t i = 0; i < ent.size();) {
    u64 n = ent[i].first;
    double w = 0.0;
    for (; i < ent.size() && ent[i].first == n; ++i) w += ent[i].second;
    ent[out++] = {n, w};
  }
  ent.resize(out);
  return ser;
}

u64 rep_count_two_cubes(u64 n) {
  if (n > 1'000'000'000'000ull) throw DomainError("rep_count_two_cubes: n capped at 1e12");
  u64 count = 0;
  for (u64 c = 1; c * c * c < n; ++c) {
    u64 r = n - c * c * c;
    u64 d = icbrt(r);
    if (d >= 1 && d * d * d == r) ++count;
  }
  return count;
}

SiftedSum sifted_sum(const SieveSeries& series, u64 d, double Z) {
  if (d < 1) throw DomainError("sifted_sum: d must be >= 1");
  if (Z < 2.0 || Z > 1e7) throw DomainError("sifted_sum: Z in [2, 1e7]");
  auto pz = primes_below(Z);

  std::vector<std::pair<u64, double>> cand;  // (n, weight), ascending n
  for (const auto& [m, w] : series.entries)
    if (m % d == 0) cand.emplace_back(m / d, w);

  SiftedSum out;
  out.d = d;
  out.Z = Z;
  if (cand.empty()) return out;

  // segmented marking of n with a prime factor < Z over (X/d, 2X/d]
  u64 nlo = series.X / d + 1, nhi = 2 * series.X / d;
  const u64 B = u64{1} << 22;
  std::vector<unsigned char> mark;
  std::size_t ci = 0;
  KahanSum val;
  for (u64 lo = nlo; lo <= nhi; lo += B) {
    u64 hi = std::min(nhi, lo + B - 1);
    mark.assign(hi - lo + 1, 0);
    for (u64 p : pz)
      for (u64 x = (lo + p - 1) / p * p; x <= hi; x += p) mark[x - lo] = 1;
    for (; ci < cand.size() && cand[ci].first <= hi; ++ci)
      if (!mark[cand[ci].first - lo]) val.add(cand[ci].second);
  }
  out.value = val.value();
  return out;
}

double typei_discrepancy(int j, u64 X, u64 D) {
  if (j != 1 && j != 2) throw DomainError("typei_discrepancy: j must be 1 or 2");
  if (X < 10 || X > 100'000'000) throw DomainError("typei_discrepancy: X in [10, 1e8]");
  if (D < 1 || static_cast<double>(D) > std::pow(static_cast<double>(X), 0.75))
    throw DomainError("typei_discrepancy: D in [1, X^{3/4}]");
  double kap = ntheory::kappa(j, 20'000).value;
  auto A = enumerate_series(j == 1 ? Form::quartic_shift : Form::cubes, X, kap);
  auto B = enumerate_series(Form::two_squares, X, 1.0);

  // weight mass of the window entries divisible by d
  auto mass = [](const SieveSeries& s, u64 d) {
    const auto& e = s.entries;
    KahanSum acc;
    for (u64 m = (s.X / d + 1) * d; m <= 2 * s.X; m += d) {
      auto it = std::lower_bound(e.begin(), e.end(), m,
                                 [](const auto& pr, u64 v) { return pr.first < v; });
      if (it != e.end() && it->first == m) acc.add(it->second);
    }
    return acc.value();
  };

  std::vector<double> disc(D);
  parallel_chunks(static_cast<std::int64_t>(D), [&](std::int64_t i) {
    u64 d = D + static_cast<u64>(i);
    disc[i] = std::abs(mass(A, d) - mass(B, d)) / (static_cast<double>(X) / static_cast<double>(d));
  });
  double worst = 0.0;
  for (double v : disc) worst = std::max(worst, v);
  return worst;
}

u64 remark_counts(u64 d, Form form) {
  if (d < 1 || d > 10'000) throw DomainError("remark_counts: d in [1, 1e4]");
  if (form == Form::cubes) throw DomainError("remark_counts: no worked count for the cubes form");
  std::vector<std::uint32_t> sq(d, 0);
  for (u64 x = 0; x < d; ++x) ++sq[x * x % d];
  u64 count = 0;
  for (u64 nu = 0; nu < d; ++nu) {
    u64 t;
    if (form == Form::quartic_shift) {
      u64 s = (nu * nu + 1) % d;
      t = s * s % d;
    } else {
      t = nu * nu % d;
    }
    count += sq[(d - t) % d];
  }
  return count;
}

BuchstabCheck buchstab_identity_check(u64 X, double Z) {
  if (X < 4 || X > 1'000'000) throw DomainError("buchstab_identity_check: X in [4, 1e6]");
  double two_sqrt_x = 2.0 * std::sqrt(static_cast<double>(X));
  if (Z < 2.0 || Z > two_sqrt_x)
    throw DomainError("buchstab_identity_check: Z in [2, 2 sqrt X]");
  auto B = enumerate_series(Form::two_squares, X, 1.0);

  std::vector<std::uint32_t> spf(2 * X + 1, 0);
  for (u64 i = 2; i <= 2 * X; ++i) {
    if (spf[i] == 0)
      for (u64 k = i; k <= 2 * X; k += i)
        if (spf[k] == 0) spf[k] = static_cast<std::uint32_t>(i);
  }

  BuchstabCheck out;
  for (const auto& [m, wd] : B.entries) {
    i64 w = llround(wd);  // two_squares weights are integer counts
    u64 pm[16];
    int ex[16], k = 0;
    for (u64 t = m; t > 1;) {
      u64 p = spf[t];
      pm[k] = p;
      ex[k] = 0;
      while (t % p == 0) {
        t /= p;
        ++ex[k];
      }
      ++k;  // primes come out ascending
    }

    if (static_cast<double>(pm[0]) >= two_sqrt_x) out.lhs += w;  // m is prime
    if (static_cast<double>(pm[0]) >= Z) out.s1 += w;

    auto in_range = [&](u64 p) {
      double pd = static_cast<double>(p);
      return pd >= Z && pd < two_sqrt_x;
    };
    // spf of m with one copy of pm[i] (and optionally pm[j]) removed
    auto spf_after = [&](int i, int j) -> double {
      for (int l = 0; l < k; ++l) {
        int e = ex[l] - (l == i ? 1 : 0) - (l == j ? 1 : 0);
        if (e > 0) return static_cast<double>(pm[l]);
      }
      return std::numeric_limits<double>::infinity();  // cofactor 1
    };
    for (int i = 0; i < k; ++i) {
      if (!in_range(pm[i])) continue;
      if (spf_after(i, -1) >= Z) out.s2 += w;
      for (int jj = 0; jj < i; ++jj) {  // pm[jj] < pm[i]: (p1, p2) = (pm[i], pm[jj])
        if (!in_range(pm[jj])) continue;
        if (spf_after(i, jj) >= static_cast<double>(pm[jj])) out.s3 += w;
      }
    }
  }
  out.residual = out.lhs - (out.s1 - out.s2 + out.s3);
  out.equal = out.residual == 0;
  return out;
}

}  // namespace sparseprime::sequences
