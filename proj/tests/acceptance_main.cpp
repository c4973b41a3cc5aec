// ---------------------------------------------------------------------------
// acceptance: the nine release gates, run end to end.  Each gate prints one
// verdict line; the process exits 0 only if every gate passes.
//   argv[1]: path to the CLI binary (gate 9, report determinism)
//   argv[2]: scratch directory for gate 9's report files
// ---------------------------------------------------------------------------

#include <algorithm>
#include <array>
#include <chrono>
#include <cmath>
#include <complex>
#include <cstdint>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <numeric>
#include <sstream>
#include <string>
#include <vector>

#include "sparseprime/curves.hpp"
#include "sparseprime/harmonic.hpp"
#include "sparseprime/ntheory.hpp"
#include "sparseprime/sequences.hpp"
#include "sparseprime/sieve.hpp"

namespace cv = sparseprime::curves;
namespace hm = sparseprime::harmonic;
namespace nt = sparseprime::ntheory;
namespace sq = sparseprime::sequences;
namespace sv = sparseprime::sieve;
using u64 = std::uint64_t;
using i64 = std::int64_t;

namespace {

struct Verdict {
  bool ok = false;
  std::string detail;
};

std::complex<double> as_complex(const cv::ExpSum& e) {
  return {e.value_re, e.value_im};
}

bool close(std::complex<double> got, std::complex<double> want) {
  return std::abs(got - want) <= 1e-6 * std::max(1.0, std::abs(want)) + 1e-4;
}

// ---- gate 1: sieve constants ----------------------------------------------
Verdict gate_sieve_constants() {
  const auto o21 = sv::omega2_bound(1, 1e-4, 400);
  const auto o41 = sv::omega4_bound(1, 1e-4, 40);
  const auto o22 = sv::omega2_bound(2, 1e-4, 400);
  const auto o42 = sv::omega4_bound(2, 1e-4, 40);
  const double d1 = 1.0 - o21.value - o41.value;
  const double d2 = 1.0 - o22.value - o42.value;
  const bool ok = o21.value <= 0.38 && o41.value <= 0.017 && o22.value <= 0.38 &&
                  o42.value <= 0.49 && d1 >= 0.6 && d2 >= 0.1;
  char buf[256];
  std::snprintf(buf, sizeof buf,
                "omega2(1)=%.6f<=0.38 omega4(1)=%.6f<=0.017 omega2(2)=%.6f<=0.38 "
                "omega4(2)=%.6f<=0.49 deficiency %.6f>=0.6, %.6f>=0.1",
                o21.value, o41.value, o22.value, o42.value, d1, d2);
  return {ok, buf};
}

// ---- gate 2: worked residue-pair counts ------------------------------------
Verdict gate_remark_counts() {
  const u64 a = sq::remark_counts(5, sq::Form::quartic_shift);
  const u64 b = sq::remark_counts(5, sq::Form::two_squares);
  const u64 c = sq::remark_counts(3, sq::Form::quartic_shift);
  char buf[128];
  std::snprintf(buf, sizeof buf, "counts (8,9,0) got (%llu,%llu,%llu)",
                (unsigned long long)a, (unsigned long long)b, (unsigned long long)c);
  return {a == 8 && b == 9 && c == 0, buf};
}

// ---- gate 3: Weil/Deligne suite --------------------------------------------
Verdict gate_weil_suite() {
  const auto rep = cv::verify_weil_suite(200, false);
  double worst = 0.0;
  std::string worst_lemma = "-";
  for (const auto& r : rep.worst)
    if (r.ratio > worst) {
      worst = r.ratio;
      worst_lemma = r.lemma;
    }
  char buf[160];
  std::snprintf(buf, sizeof buf, "%zu rows to p=200, worst ratio %.4f (%s)",
                rep.rows.size(), worst, worst_lemma.c_str());
  return {rep.ok, buf};
}

// ---- gate 4: CRT and divisor-decomposition identities -----------------------
Verdict gate_crt_identities() {
  u64 n1_checks = 0, s1_checks = 0, n3_checks = 0, s2_checks = 0, lemma_checks = 0;

  // N1 multiplicativity, exact integers
  for (u64 m = 2; m <= 100; ++m)
    for (u64 n = m + 1; n <= 100; ++n) {
      if (std::gcd(m, n) != 1) continue;
      for (u64 a : {0ULL, 1ULL, 2ULL, 7ULL}) {
        if (cv::count_N1(a % (m * n), m * n).count !=
            cv::count_N1(a % m, m).count * cv::count_N1(a % n, n).count)
          return {false, "N1 multiplicativity failed at (" + std::to_string(m) +
                             "," + std::to_string(n) + ")"};
        ++n1_checks;
      }
    }

  // S1 with CRT-twisted frequencies
  for (u64 m = 2; m <= 100; ++m)
    for (u64 n = m + 1; n <= 100; ++n) {
      if (std::gcd(m, n) != 1) continue;
      const u64 D = m * n;
      const i64 ninv = static_cast<i64>(nt::invmod(n % m, m));
      const i64 minv = static_cast<i64>(nt::invmod(m % n, n));
      const u64 a = 2 + (m + n) % 3;
      const i64 h1 = 1 + static_cast<i64>(m % 3);
      const i64 h2 = static_cast<i64>(n % 5);
      const auto whole = cv::exp_sum_S1(a % D, h1, h2, D);
      const auto pm = cv::exp_sum_S1(a % m, ninv * h1 % static_cast<i64>(m),
                                     ninv * h2 % static_cast<i64>(m), m);
      const auto pn = cv::exp_sum_S1(a % n, minv * h1 % static_cast<i64>(n),
                                     minv * h2 % static_cast<i64>(n), n);
      if (!close(as_complex(whole), as_complex(pm) * as_complex(pn)))
        return {false, "S1 CRT identity failed at (" + std::to_string(m) + "," +
                           std::to_string(n) + ")"};
      ++s1_checks;
    }

  // N3 multiplicativity, exact integers (cube-sum histograms at mn <= 9900)
  for (u64 m = 2; m <= 100; ++m)
    for (u64 n = m + 1; n <= 100; ++n) {
      if (std::gcd(m, n) != 1) continue;
      const u64 a = 1 + (m + n) % 7;
      if (cv::count_N3(a % (m * n), m * n).count !=
          cv::count_N3(a % m, m).count * cv::count_N3(a % n, n).count)
        return {false, "N3 multiplicativity failed at (" + std::to_string(m) +
                           "," + std::to_string(n) + ")"};
      ++n3_checks;
    }

  // S2 with CRT-twisted frequencies, one (a, h) sample per pair
  for (u64 m = 2; m <= 100; ++m)
    for (u64 n = m + 1; n <= 100; ++n) {
      if (std::gcd(m, n) != 1) continue;
      const u64 D = m * n;
      const i64 ninv = static_cast<i64>(nt::invmod(n % m, m));
      const i64 minv = static_cast<i64>(nt::invmod(m % n, n));
      const u64 a = 1 + (m * n) % 5;
      const std::array<i64, 4> h = {1 + static_cast<i64>(m % 3),
                                    static_cast<i64>(n % 4),
                                    static_cast<i64>((m + n) % 3),
                                    1 + static_cast<i64>(n % 2)};
      std::array<i64, 4> hm, hn;
      for (int i = 0; i < 4; ++i) {
        hm[i] = ninv * h[i] % static_cast<i64>(m);
        hn[i] = minv * h[i] % static_cast<i64>(n);
      }
      const auto whole = cv::exp_sum_S2(a % D, h, D);
      const auto pm = cv::exp_sum_S2(a % m, hm, m);
      const auto pn = cv::exp_sum_S2(a % n, hn, n);
      if (!close(as_complex(whole), as_complex(pm) * as_complex(pn)))
        return {false, "S2 CRT identity failed at (" + std::to_string(m) + "," +
                           std::to_string(n) + ")"};
      ++s2_checks;
    }

  // divisor decomposition N1(a;D) = sum_{d|D} (D/d) eps_d(a), squarefree D
  for (u64 D = 2; D <= 500; ++D) {
    if (nt::mobius(D) == 0) continue;
    std::vector<u64> divs;
    for (u64 d = 1; d * d <= D; ++d)
      if (D % d == 0) {
        divs.push_back(d);
        if (d != D / d) divs.push_back(D / d);
      }
    for (u64 a = 2; a < D; ++a) {
      if (std::gcd(a * (a - 1), D) != 1) continue;
      i64 sum = 0;
      for (u64 d : divs) sum += static_cast<i64>(D / d) * cv::eps_d(a % d, d);
      if (static_cast<i64>(cv::count_N1(a, D).count) != sum)
        return {false, "divisor decomposition failed at D=" + std::to_string(D) +
                           " a=" + std::to_string(a)};
      ++lemma_checks;
    }
  }

  char buf[200];
  std::snprintf(buf, sizeof buf,
                "N1 %llu, S1 %llu, N3 %llu, S2 %llu pair checks; divisor "
                "decomposition %llu (a,D) checks, counts exact",
                (unsigned long long)n1_checks, (unsigned long long)s1_checks,
                (unsigned long long)n3_checks, (unsigned long long)s2_checks,
                (unsigned long long)lemma_checks);
  return {true, buf};
}

// ---- gate 5: two-step Buchstab identity -------------------------------------
Verdict gate_buchstab_identity() {
  bool clamped = false;
  u64 runs = 0;
  for (u64 X : {1000ULL, 10000ULL, 100000ULL})
    for (double e : {0.0, 1.0 / 12.0, 0.08}) {
      double Z = e == 0.0 ? 2.0 : std::pow(static_cast<double>(X), e);
      if (Z < 2.0) {
        Z = 2.0;  // the identity's domain starts at 2
        clamped = true;
      }
      const auto bc = sq::buchstab_identity_check(X, Z);
      if (!bc.equal || bc.residual != 0)
        return {false, "residual " + std::to_string(bc.residual) + " at X=" +
                           std::to_string(X) + " Z=" + std::to_string(Z)};
      ++runs;
    }
  std::string msg = std::to_string(runs) + " (X,Z) combinations, residual 0";
  if (clamped) msg += " (sub-2 Z values clamped to the domain minimum)";
  return {true, msg};
}

// ---- gate 6: analytic identities --------------------------------------------
Verdict gate_analytic_identities() {
  const double oi = sq::omega_integral_check(2000);
  const double pr = hm::partition_reconstruction(100, 0.05);
  const double pc7 = hm::poisson_check(1000, 7, 3, 0.05, hm::poisson_default_H(1000, 7, 0.05));
  const double pc1 = hm::poisson_check(1000, 1, 0, 0.05, hm::poisson_default_H(1000, 1, 0.05));
  const bool ok =
      std::abs(oi - 1.0) <= 1e-3 && pr <= 1e-6 && pc7 <= 1e-6 && pc1 <= 1e-6;
  char buf[200];
  std::snprintf(buf, sizeof buf,
                "omega integral %.6f (target 1+-1e-3); partition err %.2e, "
                "poisson err %.2e / %.2e (targets 1e-6)",
                oi, pr, pc7, pc1);
  return {ok, buf};
}

// ---- gate 7: enumeration scaling --------------------------------------------
u64 common_support(const sq::SieveSeries& a, const sq::SieveSeries& b) {
  u64 cnt = 0;
  size_t i = 0, j = 0;
  while (i < a.entries.size() && j < b.entries.size()) {
    if (a.entries[i].first < b.entries[j].first)
      ++i;
    else if (a.entries[i].first > b.entries[j].first)
      ++j;
    else
      ++cnt, ++i, ++j;
  }
  return cnt;
}

double prime_mass(const sq::SieveSeries& s) {
  double m = 0.0;
  for (const auto& [n, w] : s.entries)
    if (nt::is_prime(n)) m += w;
  return m;
}

Verdict gate_enumeration_scaling() {
  std::array<u64, 3> c1{}, c2{};
  std::array<double, 3> pm1{}, pm2{};
  const std::array<u64, 3> xs = {100000, 1000000, 10000000};
  for (size_t i = 0; i < xs.size(); ++i) {
    const auto b = sq::enumerate_series(sq::Form::two_squares, xs[i], 1.0);
    const auto a1 = sq::enumerate_series(sq::Form::quartic_shift, xs[i], 1.0);
    const auto a2 = sq::enumerate_series(sq::Form::cubes, xs[i], 1.0);
    c1[i] = common_support(a1, b);
    c2[i] = common_support(a2, b);
    pm1[i] = prime_mass(a1);
    pm2[i] = prime_mass(a2);
  }
  std::array<double, 2> e1{}, e2{};
  for (size_t i = 0; i < 2; ++i) {
    e1[i] = std::log10(static_cast<double>(c1[i + 1]) / static_cast<double>(c1[i]));
    e2[i] = std::log10(static_cast<double>(c2[i + 1]) / static_cast<double>(c2[i]));
  }
  const bool ok = e1[0] >= 0.70 && e1[0] <= 0.80 && e1[1] >= 0.70 && e1[1] <= 0.80 &&
                  e2[0] >= 0.78 && e2[0] <= 0.88 && e2[1] >= 0.78 && e2[1] <= 0.88;
  char buf[240];
  std::snprintf(buf, sizeof buf,
                "decade exponents b2p1 %.3f/%.3f in [0.70,0.80], cubes %.3f/%.3f "
                "in [0.78,0.88]; prime masses (recorded) b2p1 %.0f/%.0f/%.0f, "
                "cubes %.0f/%.0f/%.0f",
                e1[0], e1[1], e2[0], e2[1], pm1[0], pm1[1], pm1[2], pm2[0],
                pm2[1], pm2[2]);
  return {ok, buf};
}

// ---- gate 8: kappa convergence ----------------------------------------------
Verdict gate_kappa_convergence() {
  char buf[200];
  bool ok = true;
  std::string detail;
  for (int j : {1, 2}) {
    const auto k4 = nt::kappa(j, 10000);
    const auto k5 = nt::kappa(j, 100000);
    const double diff = std::abs(k4.value - k5.value);
    ok = ok && diff <= k4.tail_estimate;
    std::snprintf(buf, sizeof buf, "j=%d |k(1e4)-k(1e5)|=%.2e <= tail %.2e; ", j,
                  diff, k4.tail_estimate);
    detail += buf;
  }
  return {ok, detail};
}

// ---- gate 9: report determinism ---------------------------------------------
std::string slurp(const std::filesystem::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

Verdict gate_report_determinism(const char* cli, const char* scratch) {
  if (!cli || !scratch)
    return {false, "CLI path and scratch directory not provided"};
  std::filesystem::create_directories(scratch);
  const std::vector<std::pair<std::string, std::string>> configs = {
      {"omega_bounds", "omega-bounds --case 1 --eta 1e-4 --grid 100"},
      {"weil_json", "weil-verify --pmax 50"},
      {"weil_csv", "--format csv weil-verify --pmax 50"},
      {"enumerate_csv", "--format csv enumerate --form b2p1 --x 10000"},
      {"enumerate_json", "enumerate --form cubes --x 10000"},
      {"kappa", "kappa --j 2 --trunc 2000"},
      {"buchstab", "buchstab --u 3.5"},
      {"poisson", "poisson-check --n 1000 --q 7 --a 3 --delta 0.05"},
      {"typei", "typei --j 1 --x 100000 --d 10"},
      {"buchstab_identity", "buchstab-identity --x 10000 --z 2.15"},
      {"pair_stats", "pair-stats --n 500 --y 5"},
  };
  for (const auto& [name, args] : configs) {
    std::array<std::string, 3> out;
    const std::array<int, 3> threads = {1, 1, 3};  // rerun, then thread sweep
    for (int r = 0; r < 3; ++r) {
      const std::filesystem::path f =
          std::filesystem::path(scratch) / (name + "_" + std::to_string(r));
      const std::string cmd = std::string(cli) + " --no-timestamp --threads " +
                              std::to_string(threads[r]) + " --out " +
                              f.string() + " " + args;
      if (std::system(cmd.c_str()) != 0)
        return {false, "nonzero exit from: " + cmd};
      out[r] = slurp(f);
      if (out[r].empty()) return {false, name + ": empty report"};
    }
    if (out[0] != out[1])
      return {false, name + ": rerun produced different bytes"};
    if (out[0] != out[2])
      return {false, name + ": thread count changed the report bytes"};
  }
  return {true, std::to_string(configs.size()) +
                    " subcommand reports byte-identical across reruns and "
                    "thread counts"};
}

}  // namespace

int main(int argc, char** argv) {
  struct Gate {
    const char* name;
    Verdict (*run)();
    double budget_s;  // 0 = no stated budget
  };
  const char* cli = argc > 1 ? argv[1] : nullptr;
  const char* scratch = argc > 2 ? argv[2] : nullptr;

  const std::vector<Gate> gates = {
      {"sieve constants", gate_sieve_constants, 300.0},
      {"residue-pair counts", gate_remark_counts, 0.0},
      {"Weil/Deligne suite", gate_weil_suite, 600.0},
      {"CRT identities", gate_crt_identities, 0.0},
      {"Buchstab identity", gate_buchstab_identity, 0.0},
      {"analytic identities", gate_analytic_identities, 0.0},
      {"enumeration scaling", gate_enumeration_scaling, 0.0},
      {"kappa convergence", gate_kappa_convergence, 0.0},
  };

  bool all_ok = true;
  int idx = 0;
  for (const auto& g : gates) {
    ++idx;
    const auto t0 = std::chrono::steady_clock::now();
    Verdict v;
    try {
      v = g.run();
    } catch (const std::exception& e) {
      v = {false, std::string("exception: ") + e.what()};
    }
    const double dt =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    if (g.budget_s > 0.0 && dt > g.budget_s) {
      v.ok = false;
      v.detail += " [over time budget]";
    }
    std::printf("criterion %d (%s): %s — %s (%.1f s)\n", idx, g.name,
                v.ok ? "pass" : "FAIL", v.detail.c_str(), dt);
    std::fflush(stdout);
    all_ok = all_ok && v.ok;
  }

  {
    const auto t0 = std::chrono::steady_clock::now();
    Verdict v;
    try {
      v = gate_report_determinism(cli, scratch);
    } catch (const std::exception& e) {
      v = {false, std::string("exception: ") + e.what()};
    }
    const double dt =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    std::printf("criterion 9 (report determinism): %s — %s (%.1f s)\n",
                v.ok ? "pass" : "FAIL", v.detail.c_str(), dt);
    all_ok = all_ok && v.ok;
  }

  return all_ok ? 0 : 1;
}
