#include "sparseprime/sieve.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "sparseprime/errors.hpp"
#include "sparseprime/parallel.hpp"
#include "sparseprime/quadrature.hpp"

namespace sparseprime::sieve {

namespace {

// Interior maximum of (1+log(u-1))/u on [2,3]: the stationary point solves
// u/(u-1) = 1+log(u-1), i.e. u*-1 = 1/W with W the omega constant, and the
// value there is 1/(u*-1) = W.
constexpr double kUstar = 2.7632228343518968;
constexpr double kBstar = 0.5671432904097838;

double omega_mid(double u) { return (1.0 + std::log(u - 1.0)) / u; }

}  // namespace

SieveParams make_params(int j, double eta) {
  if (j != 1 && j != 2) throw DomainError("make_params: j must be 1 or 2");
  if (!(eta > 0.0) || eta > 0.01)
    throw DomainError("make_params: eta must lie in (0, 1/100]");
  SieveParams pr;
  pr.j = j;
  pr.eta = eta;
  pr.alpha = (j == 1 ? 3.0 / 4.0 : 5.0 / 6.0) - eta;
  pr.gamma = (j == 1 ? 1.0 / 12.0 : 1.0 / 18.0) - 2.0 * eta;
  pr.J[0][0] = 1.0 - pr.alpha;
  pr.J[0][1] = 1.0 - pr.alpha + pr.gamma;
  pr.J[1][0] = pr.alpha - pr.gamma;
  pr.J[1][1] = pr.alpha;
  return pr;
}

double buchstab_omega(double u) {
  if (!(u >= 1.0) || u > 5.0) throw DomainError("buchstab_omega: u must lie in [1, 5]");
  if (u <= 2.0) return 1.0 / u;
  if (u <= 3.0) return omega_mid(u);
  // u omega(u) = 1 + int_1^{u-1} omega(s) ds, peeled over known pieces.
  const double v = u - 1.0;  // in (2, 4]
  double acc = 1.0 + std::numbers::ln2;
  acc += adaptive_simpson(omega_mid, 2.0, std::min(v, 3.0), 1e-10);
  if (v > 3.0)
    acc += adaptive_simpson([](double s) { return buchstab_omega(s); }, 3.0, v, 1e-10);
  return acc / u;
}

double buchstab_upper(double u) {
  if (u < 1.0) return 0.0;
  if (u < 2.0) return 1.0 / u;
  if (u < 3.0) return omega_mid(u);
  if (u < 4.0) return 0.5644;
  return 0.5617;
}

double buchstab_upper_sup(double lo, double hi) {
  if (hi < lo) std::swap(lo, hi);
  if (hi < 1.0) return 0.0;
  double sup = 0.0;
  if (lo < 2.0) sup = std::max(sup, 1.0 / std::max(lo, 1.0));  // decreasing piece
  if (lo < 3.0 && hi >= 2.0) {
    const double a = std::max(lo, 2.0), b = std::min(hi, 3.0);
    double piece = std::max(omega_mid(a), omega_mid(b));
    if (a <= kUstar && kUstar <= b) piece = kBstar;
    sup = std::max(sup, piece);
  }
  if (hi >= 3.0 && lo < 4.0) sup = std::max(sup, 0.5644);
  if (hi >= 4.0) sup = std::max(sup, 0.5617);
  return sup;
}

namespace {

bool in_open_J(double x, const SieveParams& pr) {
  return (pr.J[0][0] < x && x < pr.J[0][1]) || (pr.J[1][0] < x && x < pr.J[1][1]);
}

// Interval tests over a box coordinate range [lo, hi]: +1 the constraint
// holds on the whole box, -1 it fails on the whole box, 0 mixed.
int cls_ge(double lo, double hi, double c) {
  if (lo >= c) return 1;
  if (hi < c) return -1;
  return 0;
}

int cls_le(double lo, double hi, double c) {
  if (hi <= c) return 1;
  if (lo > c) return -1;
  return 0;
}

int cls_not_in_J(double lo, double hi, const SieveParams& pr) {
  int st = 1;
  for (const auto& J : pr.J) {
    if (hi <= J[0] || lo >= J[1]) continue;  // disjoint from the interior
    if (lo > J[0] && hi < J[1]) return -1;   // swallowed
    st = 0;
  }
  return st;
}

struct Cls {
  int st = 1;
  // Returns false once the box is definitely outside.
  bool feed(int c) {
    if (c < 0) {
      st = -1;
      return false;
    }
    if (c == 0 && st > 0) st = 0;
    return true;
  }
};

template <int Dim>
int classify_box(const double lo[Dim], const double hi[Dim], const SieveParams& pr) {
  Cls cls;
  if (!cls.feed(cls_ge(lo[Dim - 1], hi[Dim - 1], pr.gamma))) return -1;
  for (int i = 0; i + 1 < Dim; ++i)
    if (!cls.feed(cls_ge(lo[i] - hi[i + 1], hi[i] - lo[i + 1], 0.0))) return -1;
  if (!cls.feed(cls_le(lo[0], hi[0], 0.5))) return -1;
  if constexpr (Dim == 2) {
    if (!cls.feed(cls_ge(lo[0] + 2.0 * lo[1], hi[0] + 2.0 * hi[1], pr.alpha))) return -1;
    if (!cls.feed(cls_le(lo[0] + 2.0 * lo[1], hi[0] + 2.0 * hi[1], 1.0))) return -1;
  } else {
    if (!cls.feed(cls_le(lo[0] + 2.0 * lo[1], hi[0] + 2.0 * hi[1], pr.alpha))) return -1;
    if (!cls.feed(cls_le(lo[0] + lo[1] + 2.0 * lo[2], hi[0] + hi[1] + 2.0 * hi[2], 1.0)))
      return -1;
    if (!cls.feed(cls_le(lo[0] + lo[1] + lo[2] + 2.0 * lo[3],
                         hi[0] + hi[1] + hi[2] + 2.0 * hi[3], 1.0)))
      return -1;
  }
  for (int mask = 1; mask < (1 << Dim); ++mask) {
    double slo = 0.0, shi = 0.0;
    for (int i = 0; i < Dim; ++i)
      if (mask & (1 << i)) {
        slo += lo[i];
        shi += hi[i];
      }
    if (!cls.feed(cls_not_in_J(slo, shi, pr))) return -1;
  }
  return cls.st;
}

// Exact cell integral of 1/(b_1...b_{k-1} b_k^2) times the supremum of the
// Buchstab factor over the cell's argument range; t = (1-sum b)/b_k is
// decreasing in every coordinate, so its range is corner-to-corner.
template <int Dim>
double cell_bound(const double lo[Dim], const double hi[Dim]) {
  double slo = 0.0, shi = 0.0;
  for (int i = 0; i < Dim; ++i) {
    slo += lo[i];
    shi += hi[i];
  }
  const double tmin = (1.0 - shi) / hi[Dim - 1];
  const double tmax = (1.0 - slo) / lo[Dim - 1];
  const double sup = buchstab_upper_sup(tmin, tmax);
  if (sup == 0.0) return 0.0;
  double vol = 1.0 / lo[Dim - 1] - 1.0 / hi[Dim - 1];
  for (int i = 0; i + 1 < Dim; ++i) vol *= std::log(hi[i] / lo[i]);
  return vol * sup;
}

template <int Dim>
void process_box(const double lo[Dim], const double hi[Dim], const SieveParams& pr,
                 int depth, KahanSum& acc, u64& cells) {
  const int st = classify_box<Dim>(lo, hi, pr);
  if (st < 0) return;
  if (st > 0 || depth == 0) {
    acc.add(cell_bound<Dim>(lo, hi));
    ++cells;
    return;
  }
  double mid[Dim];
  for (int i = 0; i < Dim; ++i) mid[i] = 0.5 * (lo[i] + hi[i]);
  for (int corner = 0; corner < (1 << Dim); ++corner) {
    double clo[Dim], chi[Dim];
    for (int i = 0; i < Dim; ++i) {
      clo[i] = (corner & (1 << i)) ? mid[i] : lo[i];
      chi[i] = (corner & (1 << i)) ? hi[i] : mid[i];
    }
    process_box<Dim>(clo, chi, pr, depth - 1, acc, cells);
  }
}

template <int Dim>
OmegaBound omega_bound_impl(int j, double eta, u64 grid, u64 min_grid, int depth) {
  if (grid < min_grid)
    throw GridTooCoarse("omega bound: grid below the calibrated minimum");
  if (grid > 100000) throw DomainError("omega bound: grid too large");
  const SieveParams pr = make_params(j, eta);
  const double step = (0.5 - pr.gamma) / static_cast<double>(grid);
  const auto edge = [&](u64 i) { return pr.gamma + step * static_cast<double>(i); };

  struct Part {
    KahanSum acc;
    u64 cells = 0;
  };
  std::vector<Part> parts(grid);
  parallel_chunks(grid, [&](u64 chunk) {
    Part& part = parts[chunk];
    double lo[Dim], hi[Dim];
    lo[0] = edge(chunk);
    hi[0] = edge(chunk + 1);
    u64 idx[Dim] = {};
    for (;;) {  // odometer over the remaining Dim-1 axes
      for (int i = 1; i < Dim; ++i) {
        lo[i] = edge(idx[i]);
        hi[i] = edge(idx[i] + 1);
      }
      process_box<Dim>(lo, hi, pr, depth, part.acc, part.cells);
      int axis = Dim - 1;
      while (axis >= 1 && ++idx[axis] == grid) idx[axis--] = 0;
      if (axis < 1) break;
    }
  });

  OmegaBound out;
  out.kind = Dim;
  out.j = j;
  out.grid = grid;
  out.eta = eta;
  KahanSum total;
  for (const Part& part : parts) {
    total.add(part.acc.value());
    out.cells_counted += part.cells;
  }
  out.value = total.value();
  return out;
}

}  // namespace

bool region_membership(int dim, const std::vector<double>& beta, const SieveParams& pr) {
  if (dim != 2 && dim != 4) throw DomainError("region_membership: dim must be 2 or 4");
  if (beta.size() != static_cast<size_t>(dim))
    throw DomainError("region_membership: beta size must equal dim");
  const double* b = beta.data();
  if (!(b[dim - 1] >= pr.gamma)) return false;
  for (int i = 0; i + 1 < dim; ++i)
    if (!(b[i] >= b[i + 1])) return false;
  if (!(b[0] <= 0.5)) return false;
  if (dim == 2) {
    const double s = b[0] + 2.0 * b[1];
    if (!(s >= pr.alpha && s <= 1.0)) return false;
  } else {
    if (!(b[0] + 2.0 * b[1] <= pr.alpha)) return false;
    if (!(b[0] + b[1] + 2.0 * b[2] <= 1.0)) return false;
    if (!(b[0] + b[1] + b[2] + 2.0 * b[3] <= 1.0)) return false;
  }
  for (int mask = 1; mask < (1 << dim); ++mask) {
    double s = 0.0;
    for (int i = 0; i < dim; ++i)
      if (mask & (1 << i)) s += b[i];
    if (in_open_J(s, pr)) return false;
  }
  return true;
}

OmegaBound omega2_bound(int j, double eta, u64 grid) {
  return omega_bound_impl<2>(j, eta, grid, 20, 4);
}

OmegaBound omega4_bound(int j, double eta, u64 grid) {
  return omega_bound_impl<4>(j, eta, grid, 10, 3);
}

double deficiency(int j, double eta, u64 grid) {
  const u64 grid4 = std::clamp<u64>(grid / 10, 10, 60);
  return 1.0 - omega2_bound(j, eta, grid).value - omega4_bound(j, eta, grid4).value;
}

}  // namespace sparseprime::sieve
