#include "sparseprime/ntheory.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>

#include "sparseprime/errors.hpp"
#include "sparseprime/parallel.hpp"

namespace sparseprime::ntheory {

u64 mulmod(u64 a, u64 b, u64 m) {
  return static_cast<u64>(static_cast<u128>(a) * b % m);
}

u64 powmod(u64 a, u64 e, u64 m) {
  if (m == 1) return 0;
  u64 r = 1;
  a %= m;
  while (e) {
    if (e & 1) r = mulmod(r, a, m);
    a = mulmod(a, a, m);
    e >>= 1;
  }
  return r;
}

u64 invmod(u64 a, u64 m) {
  std::int64_t t = 0, nt = 1;
  std::int64_t r = static_cast<std::int64_t>(m), nr = static_cast<std::int64_t>(a % m);
  while (nr != 0) {
    std::int64_t q = r / nr;
    std::swap(t -= q * nt, nt);
    std::swap(r -= q * nr, nr);
  }
  if (r != 1) throw NotInvertible("invmod: gcd(a,m) != 1");
  if (t < 0) t += static_cast<std::int64_t>(m);
  return static_cast<u64>(t);
}

bool is_prime(u64 n) {
  if (n < 2) return false;
  for (u64 p : {2ull, 3ull, 5ull, 7ull, 11ull, 13ull, 17ull, 19ull, 23ull, 29ull, 31ull, 37ull}) {
    if (n % p == 0) return n == p;
  }
  u64 d = n - 1;
  int s = 0;
  while ((d & 1) == 0) d >>= 1, ++s;
  // deterministic for all 64-bit n
  for (u64 a : {2ull, 3ull, 5ull, 7ull, 11ull, 13ull, 17ull, 19ull, 23ull, 29ull, 31ull, 37ull}) {
    u64 x = powmod(a, d, n);
    if (x == 1 || x == n - 1) continue;
    bool composite = true;
    for (int i = 1; i < s; ++i) {
      x = mulmod(x, x, n);
      if (x == n - 1) {
        composite = false;
        break;
      }
    }
    if (composite) return false;
  }
  return true;
}

namespace {

u64 pollard_brent(u64 n) {
  // n odd composite, not a prime power of a tiny prime
  for (u64 seed = 1;; ++seed) {
    u64 y = seed, c = 2 * seed + 1, m = 128, g = 1, r = 1, q = 1, x = 0, ys = 0;
    auto step = [&](u64 v) { return (mulmod(v, v, n) + c) % n; };
    while (g == 1) {
      x = y;
      for (u64 i = 0; i < r; ++i) y = step(y);
      for (u64 k = 0; k < r && g == 1; k += m) {
        ys = y;
        u64 lim = std::min(m, r - k);
        for (u64 i = 0; i < lim; ++i) {
          y = step(y);
          q = mulmod(q, x > y ? x - y : y - x, n);
        }
        g = std::gcd(q, n);
      }
      r <<= 1;
    }
    if (g == n) {
      g = 1;
      do {
        ys = step(ys);
        g = std::gcd(x > ys ? x - ys : ys - x, n);
      } while (g == 1);
    }
    if (g != n) return g;
  }
}

void factor_rec(u64 n, std::vector<u64>& primes) {
  if (n == 1) return;
  if (is_prime(n)) {
    primes.push_back(n);
    return;
  }
  u64 d = pollard_brent(n);
  factor_rec(d, primes);
  factor_rec(n / d, primes);
}

constexpr u64 kTrialCutoff = 1'000'000'000'000ull;  // trial division alone below this

}  // namespace

Factorization factorize(u64 n) {
  if (n == 0) throw DomainError("factorize: n must be >= 1");
  Factorization f;
  f.n = n;
  u64 m = n;
  auto push = [&](u64 p) {
    int e = 0;
    while (m % p == 0) m /= p, ++e;
    f.factors.emplace_back(p, e);
  };
  for (u64 p : {2ull, 3ull, 5ull}) {
    if (m % p == 0) push(p);
  }
  if (n <= kTrialCutoff) {
    for (u64 p = 7; p * p <= m; p += 2) {
      if (m % p == 0) push(p);
    }
    if (m > 1) f.factors.emplace_back(m, 1);
  } else {
    for (u64 p = 7; p < 100'000 && p * p <= m; p += 2) {
      if (m % p == 0) push(p);
    }
    if (m > 1) {
      std::vector<u64> primes;
      factor_rec(m, primes);
      std::sort(primes.begin(), primes.end());
      for (std::size_t i = 0; i < primes.size();) {
        std::size_t j = i;
        while (j < primes.size() && primes[j] == primes[i]) ++j;
        f.factors.emplace_back(primes[i], static_cast<int>(j - i));
        i = j;
      }
    }
  }
  std::sort(f.factors.begin(), f.factors.end());
  return f;
}

int mobius(u64 n) {
  auto f = factorize(n);
  int sign = 1;
  for (auto& [p, e] : f.factors) {
    (void)p;
    if (e > 1) return 0;
    sign = -sign;
  }
  return sign;
}

u64 tau(u64 n) {
  auto f = factorize(n);
  u64 t = 1;
  for (auto& [p, e] : f.factors) {
    (void)p;
    t *= static_cast<u64>(e) + 1;
  }
  return t;
}

u64 powerful_part(u64 n) {
  auto f = factorize(n);
  u64 r = 1;
  for (auto& [p, e] : f.factors) {
    if (e >= 2) {
      for (int i = 0; i < e; ++i) r *= p;
    }
  }
  return r;
}

bool is_powerful_divisor_above(u64 n, u64 Y) { return powerful_part(n) > Y; }

namespace {

// square root of -1 mod p for p == 1 (mod 4): s = a^{(p-1)/4} for the first
// non-residue a
u64 sqrt_minus_one(u64 p) {
  for (u64 a = 2;; ++a) {
    u64 s = powmod(a, (p - 1) / 4, p);
    if (mulmod(s, s, p) == p - 1) return s;
  }
}

// roots of x^2 + 1 mod p^e for odd p == 1 (mod 4), via Hensel from mod p
std::vector<u64> roots_prime_power(u64 p, int e) {
  u64 r = sqrt_minus_one(p);
  u64 pk = p;
  for (int k = 1; k < e; ++k) {
    u64 next = pk * p;
    // r' = r - (r^2+1) * (2r)^{-1}  (mod p^{k+1})
    u64 val = (mulmod(r, r, next) + 1) % next;
    u64 inv2r = invmod(mulmod(2, r, next), next);
    u64 corr = mulmod(val, inv2r, next);
    r = (r + next - corr) % next;
    pk = next;
  }
  return {std::min(r, pk - r), std::max(r, pk - r)};
}

}  // namespace

std::vector<u64> roots_nu_squared_plus_one(u64 d) {
  if (d == 0) throw DomainError("roots_nu_squared_plus_one: d must be >= 1");
  if (d == 1) return {0};
  auto f = factorize(d);
  std::vector<u64> res = {0};
  u64 mod = 1;
  for (auto& [p, e] : f.factors) {
    std::vector<u64> local;
    u64 pe = 1;
    for (int i = 0; i < e; ++i) pe *= p;
    if (p == 2) {
      if (e == 1)
        local = {1};
      else
        return {};  // x^2+1 == 2 (mod 4), never 0
    } else if (p % 4 == 1) {
      local = roots_prime_power(p, e);
    } else {
      return {};  // -1 is a non-residue mod p == 3 (mod 4)
    }
    std::vector<u64> merged;
    merged.reserve(res.size() * local.size());
    u64 next = mod * pe;
    u64 m1 = invmod(mod % pe, pe);  // CRT: x = r + mod * ((l - r) * mod^{-1} mod pe)
    for (u64 r : res) {
      for (u64 l : local) {
        u64 t = mulmod((l + pe - r % pe) % pe, m1, pe);
        merged.push_back(r + mod * t);
      }
    }
    res = std::move(merged);
    mod = next;
  }
  std::sort(res.begin(), res.end());
  return res;
}

u64 rho_prime_power(int j, u64 p, int e) {
  if (j != 1 && j != 2) throw DomainError("rho: j must be 1 or 2");
  u128 pe128 = 1;
  for (int i = 0; i < e; ++i) {
    pe128 *= p;
    if (pe128 > static_cast<u128>(UINT64_MAX)) throw DomainError("rho: prime power overflows");
  }
  u64 pe = static_cast<u64>(pe128);
  if (j == 2) {
    if (pe > 1'000'000ull)
      throw BudgetExceeded("rho(2, p^e): prime power above the direct-count budget");
    std::vector<u64> cubes(pe, 0);
    for (u64 x = 0; x < pe; ++x) ++cubes[mulmod(mulmod(x, x, pe), x, pe)];
    u64 c = 0;
    for (u64 r = 0; r < pe; ++r) c += cubes[r] * cubes[(pe - r) % pe];
    return c;
  }
  if (pe <= 1'000'000ull) {
    u64 c = 0;
    for (u64 x = 0; x < pe; ++x)
      if ((mulmod(x, x, pe) + 1) % pe == 0) ++c;
    return c;
  }
  return roots_nu_squared_plus_one(pe).size();
}

u64 rho(int j, u64 d) {
  if (d == 0) throw DomainError("rho: d must be >= 1");
  auto f = factorize(d);
  u64 r = 1;
  for (auto& [p, e] : f.factors) r *= rho_prime_power(j, p, e);
  return r;
}

namespace {

// smallest-prime-factor table for 2..n
std::vector<std::uint32_t> spf_table(u64 n) {
  std::vector<std::uint32_t> spf(n + 1, 0);
  for (u64 i = 2; i <= n; ++i) {
    if (spf[i] == 0) {
      for (u64 j = i; j <= n; j += i)
        if (spf[j] == 0) spf[j] = static_cast<std::uint32_t>(i);
    }
  }
  return spf;
}

}  // namespace

KappaResult kappa_custom(int j, u64 T, int den_exponent,
                         const std::function<u64(u64)>& rho_of_c) {
  if (j != 1 && j != 2) throw DomainError("kappa: j must be 1 or 2");
  if (T < 100) throw DomainError("kappa: T must be >= 100");
  auto spf = spf_table(T);

  // rho_j at primes <= T (only squarefree c contribute)
  std::vector<u64> primes;
  for (u64 p = 2; p <= T; ++p)
    if (spf[p] == p) primes.push_back(p);
  std::vector<u64> rho_p(primes.size());
  if (!rho_of_c) {
    parallel_chunks(static_cast<std::int64_t>(primes.size()),
                    [&](std::int64_t i) { rho_p[i] = rho_prime_power(j, primes[i], 1); });
  }
  std::vector<std::uint32_t> prime_index(T + 1, 0);
  for (std::size_t i = 0; i < primes.size(); ++i)
    prime_index[primes[i]] = static_cast<std::uint32_t>(i);

  // mu(c), rho_j(c) and the dominating h(c) = kk^{omega(c)} for squarefree c,
  // by divide-out over spf.  kk = 2 dominates rho_1(p); kk = 3 dominates
  // rho_2(p)/p (rho_2(p) <= 3p).
  const double kk = (j == 1) ? 2.0 : 3.0;
  std::vector<double> rho_c(T + 1, 0.0), h_c(T + 1, 0.0);
  std::vector<signed char> mu(T + 1, 0);
  mu[1] = 1;
  rho_c[1] = rho_of_c ? static_cast<double>(rho_of_c(1)) : 1.0;
  h_c[1] = 1.0;
  for (u64 c = 2; c <= T; ++c) {
    u64 p = spf[c];
    u64 rest = c / p;
    if (rest % p == 0) continue;  // not squarefree
    if (mu[rest] == 0) continue;
    mu[c] = static_cast<signed char>(-mu[rest]);
    h_c[c] = h_c[rest] * kk;
    rho_c[c] = rho_of_c ? static_cast<double>(rho_of_c(c))
                        : rho_c[rest] * static_cast<double>(rho_p[prime_index[p]]);
  }

  // s is the exponent of the dominating series kk^{omega(c)}/c^s for the
  // denominator terms mu(c) rho_j(c)/c^{den_exponent}; rho_j(c) <= kk^{omega} c^{j-1}.
  const int s = den_exponent - (j - 1);
  KahanSum num, den, partial;
  num.add(1.0);
  den.add(rho_c[1]);
  partial.add(1.0);
  for (u64 c = 2; c <= T; ++c) {
    if (mu[c] == 0) continue;
    double cc = static_cast<double>(c);
    num.add(mu[c] / (cc * cc));
    den.add(mu[c] * rho_c[c] / std::pow(cc, den_exponent));
    partial.add(h_c[c] / std::pow(cc, s));
  }

  // Tails.  Numerator: Sigma_{c>T} 1/c^2 < 1/T.  Denominator: the squarefree
  // tail of h(c)/c^s is the full Euler product minus the computed partial sum;
  // prod_{p>T}(1 + kk/p^s) <= exp(kk Sigma_{n>T} n^{-2}) <= exp(kk/T) for s >= 2.
  double tail_num = 1.0 / static_cast<double>(T);
  double tail_den;
  if (s < 2) {
    tail_den = std::numeric_limits<double>::infinity();  // dominating series diverges
  } else {
    double log_product = 0.0;
    for (u64 p : primes) log_product += std::log1p(kk / std::pow(static_cast<double>(p), s));
    double full = std::exp(log_product + kk / static_cast<double>(T));
    tail_den = std::max(full - partial.value(), 0.0);
  }

  double D = den.value(), N = num.value();
  if (!(std::abs(D) > 10.0 * tail_den))
    throw DenominatorTooSmall("kappa: truncated denominator within 10x of its tail bound");

  KappaResult r;
  r.numerator = N;
  r.denominator = D;
  r.truncation = T;
  r.value = N / D;
  r.tail_estimate =
      (tail_num * std::abs(D) + std::abs(N) * tail_den) / (std::abs(D) * (std::abs(D) - tail_den));
  return r;
}

KappaResult kappa(int j, u64 T, int den_exponent) {
  return kappa_custom(j, T, den_exponent, nullptr);
}

KappaResult kappa(int j, u64 T) { return kappa(j, T, 1 + j); }

DivisorWitness divisor_witness(u64 n, int k) {
  if (n == 0) throw DomainError("divisor_witness: n must be >= 1");
  if (k < 2 || k > 6) throw DomainError("divisor_witness: k must be in [2,6]");
  auto f = factorize(n);
  // n = b_1 b_2^2 ... b_{k-1}^{k-1} b_k^k with b_j squarefree for j < k
  u64 bk = 1;
  std::vector<std::vector<u64>> layer(k);  // layer[j] = primes of b_j, j = 1..k-1
  for (auto& [p, e] : f.factors) {
    for (int i = 0; i < e / k; ++i) bk *= p;
    int r = e % k;
    if (r > 0) layer[r].push_back(p);
  }
  u64 d = bk;
  for (int j = 1; j < k; ++j) {
    auto& ps = layer[j];
    if (ps.empty()) continue;
    std::sort(ps.rbegin(), ps.rend());
    // round-robin the descending primes into k buckets; keep the least product
    std::vector<u64> bucket(k, 1);
    for (std::size_t i = 0; i < ps.size(); ++i) bucket[i % k] *= ps[i];
    d *= *std::min_element(bucket.begin(), bucket.end());
  }
  DivisorWitness w;
  w.d = d;
  w.tau_n = tau(n);
  w.tau_d = tau(d);
  return w;
}

u64 euler_phi_gaussian(u64 d) {
  if (d == 0) throw DomainError("euler_phi_gaussian: d must be >= 1");
  auto f = factorize(d);
  u64 r = 1;
  for (auto& [p, e] : f.factors) {
    u64 pe = 1;
    for (int i = 0; i < e; ++i) pe *= p;
    if (p == 2) {
      r *= pe * pe / 2;
    } else if (p % 4 == 1) {
      u64 unit = pe - pe / p;  // p^e - p^{e-1}
      r *= unit * unit;
    } else {
      r *= pe * pe - (pe / p) * (pe / p);
    }
  }
  return r;
}

}  // namespace sparseprime::ntheory
