#include "sparseprime/curves.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <numeric>

#include "sparseprime/errors.hpp"
#include "sparseprime/ntheory.hpp"
#include "sparseprime/parallel.hpp"

namespace sparseprime::curves {

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;

// cos/sin of e_D(j) for j = 0..D-1
struct TrigTable {
  std::vector<double> c, s;
  explicit TrigTable(u64 D) : c(D), s(D) {
    for (u64 j = 0; j < D; ++j) {
      double t = kTwoPi * static_cast<double>(j) / static_cast<double>(D);
      c[j] = std::cos(t);
      s[j] = std::sin(t);
    }
  }
};

// square roots of each residue mod D, flat CSR layout
struct RootTable {
  std::vector<std::uint32_t> off;  // size D+1
  std::vector<std::uint32_t> val;  // size D
  explicit RootTable(u64 D) {
    std::vector<std::uint32_t> cnt(D, 0);
    for (u64 x = 0; x < D; ++x) ++cnt[x * x % D];
    off.assign(D + 1, 0);
    for (u64 v = 0; v < D; ++v) off[v + 1] = off[v] + cnt[v];
    val.resize(D);
    std::vector<std::uint32_t> pos(off.begin(), off.end() - 1);
    for (u64 x = 0; x < D; ++x) val[pos[x * x % D]++] = static_cast<std::uint32_t>(x);
  }
  std::uint32_t count(u64 v) const { return off[v + 1] - off[v]; }
};

u64 reduce_freq(i64 h, u64 D) {
  i64 m = h % static_cast<i64>(D);
  if (m < 0) m += static_cast<i64>(D);
  return static_cast<u64>(m);
}

// exact N1 count at one modulus via the square histogram
u64 n1_direct(u64 a, u64 d) {
  std::vector<std::uint32_t> sq(d, 0);
  for (u64 x = 0; x < d; ++x) ++sq[x * x % d];
  u64 count = 0;
  for (u64 v = 0; v < d; ++v) {
    if (!sq[v]) continue;
    u64 r = (a * ((v + 1) % d) + d - 1) % d;
    count += static_cast<u64>(sq[v]) * sq[r];
  }
  return count;
}

// inverse table mod prime p, inv[0] unused
std::vector<u64> inverse_table(u64 p) {
  std::vector<u64> inv(p, 0);
  if (p > 1) inv[1] = 1;
  for (u64 x = 2; x < p; ++x) inv[x] = (p - (p / x) * inv[p % x] % p) % p;
  return inv;
}

}  // namespace

double ExpSum::abs() const { return std::hypot(value_re, value_im); }

PointCount count_N1(u64 a, u64 d) {
  if (d == 0) throw DomainError("count_N1: d must be positive");
  a %= d;
  u64 count;
  if (d <= 10000) {
    count = n1_direct(a, d);
  } else {
    count = 1;  // CRT: the count is multiplicative over prime powers
    for (auto [p, e] : ntheory::factorize(d).factors) {
      u64 pe = 1;
      for (int i = 0; i < e; ++i) pe *= p;
      if (pe > 10'000'000) throw BudgetExceeded("count_N1: prime power above 1e7");
      count *= n1_direct(a % pe, pe);
    }
  }
  PointCount pc;
  pc.modulus = d;
  pc.a = a;
  pc.count = count;
  pc.deviation = static_cast<i64>(count) - static_cast<i64>(d);
  return pc;
}

PointCount count_N2(u64 gamma, u64 p) {
  if (!ntheory::is_prime(p)) throw DomainError("count_N2: p must be prime");
  if (p > 300) throw DomainError("count_N2: p capped at 300");
  gamma %= p;
  std::vector<std::uint32_t> c3(p, 0);
  for (u64 x = 0; x < p; ++x) ++c3[x * x % p * x % p];
  u64 count = 0;
  for (u64 v = 0; v < p; ++v) count += static_cast<u64>(c3[v]) * c3[(gamma + p - v) % p];
  PointCount pc;
  pc.modulus = p;
  pc.a = gamma;
  pc.count = count;
  pc.deviation = static_cast<i64>(count) - static_cast<i64>(p);
  return pc;
}

PointCount count_N3(u64 a, u64 d) {
  if (d == 0 || d > 10000) throw DomainError("count_N3: d in [1, 1e4]");
  a %= d;
  std::vector<u64> cube(d);
  for (u64 x = 0; x < d; ++x) cube[x] = x * x % d * x % d;
  std::vector<u64> P(d, 0);  // P[w] = #{(x1,x2): x1^3+x2^3 = w}
  for (u64 x1 = 0; x1 < d; ++x1) {
    const u64 c1 = cube[x1];
    for (u64 x2 = 0; x2 < d; ++x2) {
      u64 w = c1 + cube[x2];  // both summands < d: one subtract reduces
      if (w >= d) w -= d;
      ++P[w];
    }
  }
  u64 count = 0;
  for (u64 w = 0; w < d; ++w) count += P[a * w % d] * P[w];
  PointCount pc;
  pc.modulus = d;
  pc.a = a;
  pc.count = count;
  pc.deviation = static_cast<i64>(count) - static_cast<i64>(d * d * d);
  return pc;
}

i64 eps_d(u64 a, u64 d) {
  if (d == 0 || d > 10000) throw DomainError("eps_d: d in [1, 1e4]");
  i64 out = 1;
  for (auto [p, e] : ntheory::factorize(d).factors) {
    u64 pe = 1;
    for (int i = 0; i < e; ++i) pe *= p;
    out *= count_N1(a % pe, pe).deviation;
  }
  return out;
}

ExpSum exp_sum_S1(u64 a, i64 h1, i64 h2, u64 D) {
  if (D == 0 || D > 10000) throw DomainError("exp_sum_S1: D in [1, 1e4]");
  a %= D;
  RootTable rt(D);
  TrigTable tt(D);
  u64 hm1 = reduce_freq(h1, D), hm2 = reduce_freq(h2, D);
  KahanSum re, im;
  u64 terms = 0;
  for (u64 x2 = 0; x2 < D; ++x2) {
    u64 r = (a * ((x2 * x2 + 1) % D) + D - 1) % D;
    for (std::uint32_t i = rt.off[r]; i < rt.off[r + 1]; ++i) {
      u64 t = (hm1 * rt.val[i] + hm2 * x2) % D;
      re.add(tt.c[t]);
      im.add(tt.s[t]);
      ++terms;
    }
  }
  ExpSum e;
  e.modulus = D;
  e.freq = {h1, h2};
  e.value_re = re.value();
  e.value_im = im.value();
  e.exact_terms = terms;
  return e;
}

ExpSum exp_sum_FI(u64 a, i64 h1, i64 h2, u64 D) {
  if (D == 0 || D > 10000) throw DomainError("exp_sum_FI: D in [1, 1e4]");
  a %= D;
  RootTable rt(D);
  TrigTable tt(D);
  u64 hm1 = reduce_freq(h1, D), hm2 = reduce_freq(h2, D);
  KahanSum re, im;
  u64 terms = 0;
  for (u64 x2 = 0; x2 < D; ++x2) {
    u64 r = a * (x2 * x2 % D) % D;
    for (std::uint32_t i = rt.off[r]; i < rt.off[r + 1]; ++i) {
      u64 t = (hm1 * rt.val[i] + hm2 * x2) % D;
      re.add(tt.c[t]);
      im.add(tt.s[t]);
      ++terms;
    }
  }
  ExpSum e;
  e.modulus = D;
  e.freq = {h1, h2};
  e.value_re = re.value();
  e.value_im = im.value();
  e.exact_terms = terms;
  return e;
}

ExpSum exp_sum_S2(u64 a, std::array<i64, 4> h, u64 D) {
  if (D == 0 || D > 10000) throw DomainError("exp_sum_S2: D in [1, 1e4]");
  a %= D;
  TrigTable tt(D);
  std::vector<u64> cube(D);
  for (u64 x = 0; x < D; ++x) cube[x] = x * x % D * x % D;

  // A[w] = sum over x1^3+x2^3 = w of e_D(hm1 x1 + hm2 x2) for the (h1,h2)
  // and (h3,h4) twists, both tables filled in one sweep (shared w sequence);
  // w and the t counters advance by conditional subtraction, no division in
  // the hot loop
  const u64 ha1 = reduce_freq(h[0], D), ha2 = reduce_freq(h[1], D);
  const u64 hb1 = reduce_freq(h[2], D), hb2 = reduce_freq(h[3], D);
  std::vector<double> ar(D, 0.0), ai(D, 0.0), br(D, 0.0), bi(D, 0.0);
  std::vector<u64> ac(D, 0), bc(D, 0);
  for (u64 x1 = 0; x1 < D; ++x1) {
    const u64 c1 = cube[x1];
    u64 ta = ha1 * x1 % D;
    u64 tb = hb1 * x1 % D;
    for (u64 x2 = 0; x2 < D; ++x2) {
      u64 w = c1 + cube[x2];
      if (w >= D) w -= D;
      ar[w] += tt.c[ta];
      ai[w] += tt.s[ta];
      ++ac[w];
      br[w] += tt.c[tb];
      bi[w] += tt.s[tb];
      ++bc[w];
      ta += ha2;
      if (ta >= D) ta -= D;
      tb += hb2;
      if (tb >= D) tb -= D;
    }
  }

  KahanSum re, im;
  u64 terms = 0;
  for (u64 w = 0; w < D; ++w) {
    u64 aw = a * w % D;
    re.add(ar[aw] * br[w] - ai[aw] * bi[w]);
    im.add(ar[aw] * bi[w] + ai[aw] * br[w]);
    terms += ac[aw] * bc[w];
  }
  ExpSum e;
  e.modulus = D;
  e.freq = {h[0], h[1], h[2], h[3]};
  e.value_re = re.value();
  e.value_im = im.value();
  e.exact_terms = terms;
  return e;
}

ExpSum kloosterman(int k, u64 a, u64 p) {
  if (k < 2) throw DomainError("kloosterman: k must be >= 2");
  if (!ntheory::is_prime(p)) throw DomainError("kloosterman: p must be prime");
  if (std::pow(static_cast<double>(p), k - 1) > 1e7)
    throw BudgetExceeded("kloosterman: p^{k-1} above 1e7");
  a %= p;
  ExpSum e;
  e.modulus = p;
  e.freq = {static_cast<i64>(a)};
  if (a == 0) return e;  // units have nonzero product: empty sum

  auto inv = inverse_table(p);
  TrigTable tt(p);
  KahanSum re, im;
  u64 terms = 0;
  // odometer over x_1..x_{k-1} in [1, p); the last coordinate is forced
  auto walk = [&](auto&& self, int depth, u64 prod, u64 sum) -> void {
    if (depth == k - 1) {
      u64 xk = a * inv[prod] % p;
      u64 t = (sum + xk) % p;
      re.add(tt.c[t]);
      im.add(tt.s[t]);
      ++terms;
      return;
    }
    for (u64 x = 1; x < p; ++x) self(self, depth + 1, prod * x % p, (sum + x) % p);
  };
  walk(walk, 0, 1, 0);
  e.value_re = re.value();
  e.value_im = im.value();
  e.exact_terms = terms;
  return e;
}

namespace {

// argmax holder keeping the first maximum in scan order
struct Cand {
  bool set = false;
  WeilRow row;
  void offer(const WeilRow& r) {
    if (!set || r.ratio > row.ratio) {
      row = r;
      set = true;
    }
  }
  void merge(const Cand& other) {
    if (other.set) offer(other.row);
  }
};

WeilRow make_row(const char* lemma, u64 p, u64 a, std::vector<i64> h, double observed,
                 double bound) {
  WeilRow r;
  r.lemma = lemma;
  r.p = p;
  r.a = a;
  r.h = std::move(h);
  r.observed = observed;
  r.bound = bound;
  r.ratio = observed / bound;
  return r;
}

}  // namespace

WeilReport verify_weil_suite(u64 p_max, bool throw_on_violation) {
  if (p_max > 300) throw DomainError("verify_weil_suite: p_max capped at 300");
  std::vector<u64> primes;
  for (u64 p = 2; p <= p_max; ++p)
    if (ntheory::is_prime(p)) primes.push_back(p);

  std::vector<WeilRow> rows;
  for (u64 p : primes) {
    TrigTable tt(p);
    RootTable rt(p);
    double sqrtp = std::sqrt(static_cast<double>(p));

    // |N1(a;p) - p| <= 4 sqrt(p) for a != 0, 1
    Cand eps_c;
    for (u64 a = 2; a < p; ++a) {
      u64 count = 0;
      for (u64 v = 0; v < p; ++v) {
        std::uint32_t c2 = rt.count(v);
        if (!c2) continue;
        u64 r = (a * (v + 1) + p - 1) % p;
        count += static_cast<u64>(c2) * rt.count(r);
      }
      double obs = std::abs(static_cast<double>(static_cast<i64>(count) - static_cast<i64>(p)));
      eps_c.offer(make_row("eps", p, a, {}, obs, 4.0 * sqrtp));
    }
    if (eps_c.set) rows.push_back(eps_c.row);

    // |S1(a,h;p)| <= 3 gcd(h1,h2,p)^{1/2} sqrt(p) for a != 0, 1, full h grid.
    // The fiber roots come in +- pairs so the h1-twisted fiber sums w[x2] are
    // real, and h -> p - h conjugates; scanning h1, h2 <= p/2 covers every
    // |S1| value on the full grid.
    i64 n_a = p >= 3 ? static_cast<i64>(p) - 2 : 0;
    std::vector<Cand> s1_per_a(n_a);
    parallel_chunks(n_a, [&](std::int64_t ai) {
      u64 a = static_cast<u64>(ai) + 2;
      std::vector<u64> rx(p);
      for (u64 x2 = 0; x2 < p; ++x2) rx[x2] = (a * ((x2 * x2 + 1) % p) + p - 1) % p;
      std::vector<double> w(p);
      Cand local;
      u64 half = p / 2;
      for (u64 h1 = 0; h1 <= half; ++h1) {
        for (u64 x2 = 0; x2 < p; ++x2) {
          double acc = 0.0;
          u64 r = rx[x2];
          for (std::uint32_t i = rt.off[r]; i < rt.off[r + 1]; ++i)
            acc += tt.c[h1 * rt.val[i] % p];
          w[x2] = acc;
        }
        for (u64 h2 = 0; h2 <= half; ++h2) {
          double sre = 0.0, sim = 0.0;
          u64 t = 0;
          for (u64 x2 = 0; x2 < p; ++x2) {
            sre += w[x2] * tt.c[t];
            sim += w[x2] * tt.s[t];
            t += h2;
            if (t >= p) t -= p;
          }
          double g = (h1 == 0 && h2 == 0) ? static_cast<double>(p) : 1.0;
          double bound = 3.0 * std::sqrt(g) * sqrtp;
          local.offer(make_row("S1", p, a, {static_cast<i64>(h1), static_cast<i64>(h2)},
                               std::hypot(sre, sim), bound));
        }
      }
      s1_per_a[ai] = local;
    });
    Cand s1_c;
    for (auto& c : s1_per_a) s1_c.merge(c);
    if (s1_c.set) rows.push_back(s1_c.row);

    // S2 / N3 at 4-dim enumeration scale
    if (p <= 59) {
      std::vector<u64> cube(p);
      for (u64 x = 0; x < p; ++x) cube[x] = x * x % p * x % p;
      std::vector<u64> P(p, 0);
      for (u64 x1 = 0; x1 < p; ++x1)
        for (u64 x2 = 0; x2 < p; ++x2) ++P[(cube[x1] + cube[x2]) % p];

      // |N3(a;p) - p^3| <= 5 p^{5/2} for a != 0
      Cand n3_c;
      double p52 = std::pow(static_cast<double>(p), 2.5);
      for (u64 a = 1; a < p; ++a) {
        u64 count = 0;
        for (u64 w = 0; w < p; ++w) count += P[a * w % p] * P[w];
        double obs = std::abs(static_cast<double>(static_cast<i64>(count) -
                                                  static_cast<i64>(p * p * p)));
        n3_c.offer(make_row("N3", p, a, {}, obs, 5.0 * p52));
      }
      if (n3_c.set) rows.push_back(n3_c.row);

      // |S2(a,h;p)| <= 5 gcd(h1..h4,p) p^2 for a != 0, h on the {0,1,2}^4 grid
      double are[3][3][60], aim[3][3][60];
      for (u64 h1 = 0; h1 < 3; ++h1)
        for (u64 h2 = 0; h2 < 3; ++h2) {
          for (u64 w = 0; w < p; ++w) are[h1][h2][w] = aim[h1][h2][w] = 0.0;
          for (u64 x1 = 0; x1 < p; ++x1)
            for (u64 x2 = 0; x2 < p; ++x2) {
              u64 w = (cube[x1] + cube[x2]) % p;
              u64 t = (h1 * x1 + h2 * x2) % p;
              are[h1][h2][w] += tt.c[t];
              aim[h1][h2][w] += tt.s[t];
            }
        }
      Cand s2_c;
      double p2 = static_cast<double>(p) * static_cast<double>(p);
      for (u64 a = 1; a < p; ++a) {
        for (u64 h1 = 0; h1 < 3; ++h1)
          for (u64 h2 = 0; h2 < 3; ++h2)
            for (u64 h3 = 0; h3 < 3; ++h3)
              for (u64 h4 = 0; h4 < 3; ++h4) {
                double sre = 0.0, sim = 0.0;
                for (u64 w = 0; w < p; ++w) {
                  u64 aw = a * w % p;
                  sre += are[h1][h2][aw] * are[h3][h4][w] - aim[h1][h2][aw] * aim[h3][h4][w];
                  sim += are[h1][h2][aw] * aim[h3][h4][w] + aim[h1][h2][aw] * are[h3][h4][w];
                }
                u64 g = std::gcd(std::gcd(std::gcd(h1, h2), std::gcd(h3, h4)), p);
                double bound = 5.0 * static_cast<double>(g) * p2;
                s2_c.offer(make_row("S2", p, a,
                                    {static_cast<i64>(h1), static_cast<i64>(h2),
                                     static_cast<i64>(h3), static_cast<i64>(h4)},
                                    std::hypot(sre, sim), bound));
              }
      }
      if (s2_c.set) rows.push_back(s2_c.row);
    }

    // |Kl_k(a;p)| <= k p^{(k-1)/2} for a != 0, k in {2, 3}
    auto inv = inverse_table(p);
    i64 n_units = static_cast<i64>(p) - 1;
    std::vector<Cand> kl2_per_a(n_units), kl3_per_a(n_units);
    parallel_chunks(n_units, [&](std::int64_t ai) {
      u64 a = static_cast<u64>(ai) + 1;
      double sre = 0.0, sim = 0.0;
      for (u64 x = 1; x < p; ++x) {
        u64 t = (x + a * inv[x]) % p;
        sre += tt.c[t];
        sim += tt.s[t];
      }
      kl2_per_a[ai].offer(
          make_row("Kl2", p, a, {}, std::hypot(sre, sim), 2.0 * std::sqrt(static_cast<double>(p))));
      sre = sim = 0.0;
      for (u64 x1 = 1; x1 < p; ++x1) {
        u64 b = a * inv[x1] % p;
        for (u64 x2 = 1; x2 < p; ++x2) {
          u64 t = (x1 + x2 + b * inv[x2]) % p;
          sre += tt.c[t];
          sim += tt.s[t];
        }
      }
      kl3_per_a[ai].offer(
          make_row("Kl3", p, a, {}, std::hypot(sre, sim), 3.0 * static_cast<double>(p)));
    });
    Cand kl2_c, kl3_c;
    for (auto& c : kl2_per_a) kl2_c.merge(c);
    for (auto& c : kl3_per_a) kl3_c.merge(c);
    if (kl2_c.set) rows.push_back(kl2_c.row);
    if (kl3_c.set) rows.push_back(kl3_c.row);
  }

  std::sort(rows.begin(), rows.end(), [](const WeilRow& x, const WeilRow& y) {
    if (x.lemma != y.lemma) return x.lemma < y.lemma;
    if (x.p != y.p) return x.p < y.p;
    return x.a < y.a;
  });

  WeilReport rep;
  rep.rows = rows;
  const char* lemmas[] = {"eps", "S1", "S2", "N3", "Kl2", "Kl3"};
  for (const char* lemma : lemmas) {
    Cand c;
    for (const auto& r : rows)
      if (r.lemma == lemma) c.offer(r);
    if (c.set) rep.worst.push_back(c.row);
  }
  for (const auto& r : rows)
    if (r.ratio > 1.0) {
      rep.ok = false;
      if (throw_on_violation)
        throw BoundViolation("weil suite: " + r.lemma + " bound exceeded at p=" +
                             std::to_string(r.p) + ", a=" + std::to_string(r.a));
    }
  return rep;
}

}  // namespace sparseprime::curves
