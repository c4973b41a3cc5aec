#include "sparseprime/harmonic.hpp"

#include <cmath>
#include <numbers>

#include "sparseprime/errors.hpp"
#include "sparseprime/parallel.hpp"
#include "sparseprime/quadrature.hpp"

namespace sparseprime::harmonic {

namespace {
constexpr double kTwoPi = 2.0 * std::numbers::pi;
}

double SmoothBump::operator()(double u) const {
  double x = (u - 1.0) / delta;
  if (x <= -1.0 || x >= 1.0) return 0.0;
  return norm * std::exp(-1.0 / (1.0 - x * x));
}

SmoothBump make_bump(double delta) {
  if (!(delta > 0.0 && delta < 0.1)) throw DomainError("make_bump: delta in (0, 1/10)");
  SmoothBump b;
  b.delta = delta;
  b.norm = 1.0;
  // int psi(1/t) dt/t = int psi(u) du/u after t -> 1/u
  double I = adaptive_simpson([&](double u) { return b(u) / u; }, 1.0 - delta, 1.0 + delta, 1e-14);
  b.norm = delta / I;
  return b;
}

std::complex<double> bump_fourier(const SmoothBump& psi, double x) {
  double lo = 1.0 - psi.delta, hi = 1.0 + psi.delta;
  double re = adaptive_simpson([&](double u) { return psi(u) * std::cos(kTwoPi * x * u); }, lo, hi,
                               1e-13);
  double im = adaptive_simpson([&](double u) { return psi(u) * std::sin(kTwoPi * x * u); }, lo, hi,
                               1e-13);
  return {re, im};
}

double partition_reconstruction(u64 N, double delta) {
  if (N < 1 || N > 10'000) throw DomainError("partition_reconstruction: N in [1, 1e4]");
  auto psi = make_bump(delta);
  KahanSum total;
  for (u64 n = 1; n <= N; ++n) {
    double nd = static_cast<double>(n);
    // psi(n/t) is supported on t in [n/(1+delta), n/(1-delta)]
    total.add(adaptive_simpson([&](double t) { return psi(nd / t) / t; }, nd / (1.0 + delta),
                               nd / (1.0 - delta), 1e-13));
  }
  double nd = static_cast<double>(N);
  return std::abs(total.value() / delta - nd) / nd;
}

double poisson_check(u64 N, u64 q, u64 a, double delta, u64 H) {
  if (q < 1 || q > 1000) throw DomainError("poisson_check: q in [1, 1e3]");
  if (N < 10 || N > 1'000'000) throw DomainError("poisson_check: N in [10, 1e6]");
  auto psi = make_bump(delta);
  a %= q;
  double Nd = static_cast<double>(N);

  KahanSum lhs;
  u64 lo = static_cast<u64>(Nd * (1.0 - delta));
  lo = lo > 2 ? lo - 2 : 1;
  u64 hi = static_cast<u64>(Nd * (1.0 + delta)) + 2;
  for (u64 n = lo + (q + a - lo % q) % q; n <= hi; n += q) lhs.add(psi(static_cast<double>(n) / Nd));

  double main = Nd / static_cast<double>(q) * bump_fourier(psi, 0.0).real();
  KahanSum osc;  // h and -h paired: 2 Re(psi_hat(hN/q) e_q(-ah))
  for (u64 h = 1; h <= H; ++h) {
    auto f = bump_fourier(psi, static_cast<double>(h) * Nd / static_cast<double>(q));
    double th = kTwoPi * static_cast<double>(a % q * h % q) / static_cast<double>(q);
    osc.add(2.0 * (f.real() * std::cos(th) + f.imag() * std::sin(th)));
  }
  double rhs = main + Nd / static_cast<double>(q) * osc.value();
  return std::abs(lhs.value() - rhs);
}

u64 poisson_default_H(u64 N, u64 q, double delta) {
  if (!(delta > 0.0 && delta < 0.1)) throw DomainError("poisson_default_H: delta in (0, 1/10)");
  double qd = static_cast<double>(q), nd = static_cast<double>(N);
  return static_cast<u64>(std::ceil(std::sqrt(qd * nd) * qd / (nd * delta)));
}

}  // namespace sparseprime::harmonic
