// ---------------------------------------------------------------------------
// sparseprime: batch front-end.  Every subcommand computes through the
// library and serializes one deterministic report (CSV or JSON) to --out.
// Exit codes: 0 success, 1 usage or computation error, 2 bound violation.
// ---------------------------------------------------------------------------

#include <algorithm>
#include <chrono>
#include <cstdio>
#include <ctime>
#include <exception>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "sparseprime/curves.hpp"
#include "sparseprime/errors.hpp"
#include "sparseprime/gauss.hpp"
#include "sparseprime/harmonic.hpp"
#include "sparseprime/ntheory.hpp"
#include "sparseprime/parallel.hpp"
#include "sparseprime/report.hpp"
#include "sparseprime/sequences.hpp"
#include "sparseprime/sieve.hpp"

namespace {

namespace nt = sparseprime::ntheory;
namespace gs = sparseprime::gauss;
namespace cv = sparseprime::curves;
namespace sq = sparseprime::sequences;
namespace hm = sparseprime::harmonic;
namespace sv = sparseprime::sieve;
namespace rp = sparseprime::report;

using rp::fmt_double;
using rp::ordered_json;
using u64 = std::uint64_t;
using i64 = std::int64_t;

struct GlobalOpts {
  std::string out = "-";
  int threads = 0;
  bool no_timestamp = false;
  std::string format = "json";
};

std::string timestamp_line() {
  const auto now = std::chrono::system_clock::now();
  const std::time_t t = std::chrono::system_clock::to_time_t(now);
  std::tm tm{};
  gmtime_r(&t, &tm);
  char buf[64];
  std::strftime(buf, sizeof buf, "# generated %Y-%m-%dT%H:%M:%SZ\n", &tm);
  return buf;
}

void emit(const GlobalOpts& g, const std::string& body) {
  std::string content;
  if (!g.no_timestamp) content += timestamp_line();
  content += body;
  rp::write_text(g.out, content);
}

std::string join_h(const std::vector<i64>& h) {
  std::string s;
  for (size_t i = 0; i < h.size(); ++i) {
    if (i) s += ';';
    s += std::to_string(h[i]);
  }
  return s;
}

ordered_json omega_json(const sv::OmegaBound& b) {
  ordered_json j;
  j["value"] = b.value;
  j["grid"] = b.grid;
  j["cells_counted"] = b.cells_counted;
  j["conservative"] = b.conservative;
  return j;
}

int run_omega_bounds(const GlobalOpts& g, int j, double eta, u64 grid) {
  const sv::OmegaBound o2 = sv::omega2_bound(j, eta, grid);
  const u64 grid4 = std::clamp<u64>(grid / 10, 10, 60);
  const sv::OmegaBound o4 = sv::omega4_bound(j, eta, grid4);
  ordered_json out;
  out["case"] = j;
  out["eta"] = eta;
  out["grid"] = grid;
  out["omega2"] = omega_json(o2);
  out["omega4"] = omega_json(o4);
  out["deficiency"] = 1.0 - o2.value - o4.value;
  emit(g, rp::json_to_string(out));
  return 0;
}

int run_weil_verify(const GlobalOpts& g, u64 pmax) {
  const cv::WeilReport rep = cv::verify_weil_suite(pmax, /*throw_on_violation=*/false);
  if (g.format == "csv") {
    rp::CsvTable t;
    t.header = {"lemma", "p", "a", "h", "observed", "bound", "ratio"};
    for (const cv::WeilRow& r : rep.rows)
      t.add_row({r.lemma, std::to_string(r.p), std::to_string(r.a), join_h(r.h),
                 fmt_double(r.observed), fmt_double(r.bound), fmt_double(r.ratio)});
    emit(g, t.to_string());
  } else {
    const auto row_json = [](const cv::WeilRow& r) {
      ordered_json jr;
      jr["lemma"] = r.lemma;
      jr["p"] = r.p;
      jr["a"] = r.a;
      jr["h"] = r.h;
      jr["observed"] = r.observed;
      jr["bound"] = r.bound;
      jr["ratio"] = r.ratio;
      return jr;
    };
    ordered_json out;
    out["p_max"] = pmax;
    out["ok"] = rep.ok;
    out["worst"] = ordered_json::array();
    for (const cv::WeilRow& r : rep.worst) out["worst"].push_back(row_json(r));
    out["rows"] = ordered_json::array();
    for (const cv::WeilRow& r : rep.rows) out["rows"].push_back(row_json(r));
    emit(g, rp::json_to_string(out));
  }
  return rep.ok ? 0 : 2;
}

sq::Form parse_form(const std::string& name) {
  if (name == "b2p1") return sq::Form::quartic_shift;
  if (name == "cubes") return sq::Form::cubes;
  if (name == "squares") return sq::Form::two_squares;
  throw sparseprime::DomainError("unknown form: " + name);
}

int run_enumerate(const GlobalOpts& g, const std::string& form_name, u64 X, u64 trunc) {
  const sq::Form form = parse_form(form_name);
  double kap = 1.0;
  if (form != sq::Form::two_squares)
    kap = nt::kappa(form == sq::Form::quartic_shift ? 1 : 2, trunc).value;
  const sq::SieveSeries series = sq::enumerate_series(form, X, kap);
  if (g.format == "csv") {
    rp::CsvTable t;
    t.header = {"n", "weight"};
    for (const auto& [n, w] : series.entries)
      t.add_row({std::to_string(n), fmt_double(w)});
    emit(g, t.to_string());
  } else {
    ordered_json out;
    out["form"] = form_name;
    out["x"] = X;
    out["kappa"] = kap;
    out["entry_count"] = series.entries.size();
    out["total_mass"] = series.total_mass();
    emit(g, rp::json_to_string(out));
  }
  return 0;
}

int run_kappa(const GlobalOpts& g, int j, u64 trunc) {
  const nt::KappaResult k = nt::kappa(j, trunc);
  ordered_json out;
  out["j"] = j;
  out["truncation"] = k.truncation;
  out["value"] = k.value;
  out["numerator"] = k.numerator;
  out["denominator"] = k.denominator;
  out["tail_estimate"] = k.tail_estimate;
  emit(g, rp::json_to_string(out));
  return 0;
}

int run_buchstab(const GlobalOpts& g, double u) {
  ordered_json out;
  out["u"] = u;
  out["omega"] = sv::buchstab_omega(u);
  out["upper"] = sv::buchstab_upper(u);
  emit(g, rp::json_to_string(out));
  return 0;
}

int run_poisson(const GlobalOpts& g, u64 N, u64 q, u64 a, double delta, i64 H) {
  const u64 HH = H >= 0 ? static_cast<u64>(H) : hm::poisson_default_H(N, q, delta);
  ordered_json out;
  out["n"] = N;
  out["q"] = q;
  out["a"] = a;
  out["delta"] = delta;
  out["h_terms"] = HH;
  out["error"] = hm::poisson_check(N, q, a, delta, HH);
  emit(g, rp::json_to_string(out));
  return 0;
}

int run_typei(const GlobalOpts& g, int j, u64 X, u64 D) {
  ordered_json out;
  out["j"] = j;
  out["x"] = X;
  out["d"] = D;
  out["max_discrepancy"] = sq::typei_discrepancy(j, X, D);
  emit(g, rp::json_to_string(out));
  return 0;
}

int run_buchstab_identity(const GlobalOpts& g, u64 X, double Z) {
  const sq::BuchstabCheck c = sq::buchstab_identity_check(X, Z);
  ordered_json out;
  out["x"] = X;
  out["z"] = Z;
  out["lhs"] = c.lhs;
  out["s1"] = c.s1;
  out["s2"] = c.s2;
  out["s3"] = c.s3;
  out["residual"] = c.residual;
  out["equal"] = c.equal;
  emit(g, rp::json_to_string(out));
  return c.equal ? 0 : 2;
}

int run_pair_stats(const GlobalOpts& g, u64 N, u64 Y) {
  const gs::PairStats st = gs::pair_stats(N, Y);
  ordered_json out;
  out["n"] = st.N;
  out["y"] = Y;
  out["sum_half"] = st.sum_half;
  out["sum_one"] = st.sum_one;
  out["count_powerful_y"] = st.count_powerful_Y;
  out["count_gcd_above_y"] = st.count_gcd_above_Y;
  emit(g, rp::json_to_string(out));
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"sparseprime: sieve-theoretic verification toolkit"};
  app.require_subcommand(1);

  GlobalOpts g;
  app.add_option("--out", g.out, "Output path, '-' for stdout")->capture_default_str();
  app.add_option("--threads", g.threads, "Worker threads (0 = auto)");
  app.add_flag("--no-timestamp", g.no_timestamp, "Suppress the timestamp header line");
  app.add_option("--format", g.format, "Report format")
      ->check(CLI::IsMember({"csv", "json"}))
      ->capture_default_str();

  int ob_case = 1;
  double ob_eta = 1e-4;
  u64 ob_grid = 400;
  CLI::App* ob = app.add_subcommand("omega-bounds", "Upper bounds for the discard integrals");
  ob->add_option("--case", ob_case, "Sequence index (1 or 2)")->required();
  ob->add_option("--eta", ob_eta, "Exponent offset eta")->capture_default_str();
  ob->add_option("--grid", ob_grid, "Subdivisions per axis (dim 2)")->capture_default_str();

  u64 wv_pmax = 100;
  CLI::App* wv = app.add_subcommand("weil-verify", "Square-root cancellation bound checks");
  wv->add_option("--pmax", wv_pmax, "Largest prime checked")->required();

  std::string en_form;
  u64 en_x = 0, en_trunc = 20000;
  CLI::App* en = app.add_subcommand("enumerate", "Enumerate a weighted window (X, 2X]");
  en->add_option("--form", en_form, "b2p1, cubes, or squares")->required();
  en->add_option("--x", en_x, "Window start X")->required();
  en->add_option("--trunc", en_trunc, "kappa truncation")->capture_default_str();

  int ka_j = 1;
  u64 ka_trunc = 20000;
  CLI::App* ka = app.add_subcommand("kappa", "Normalizing constant kappa_j");
  ka->add_option("--j", ka_j, "Sequence index (1 or 2)")->required();
  ka->add_option("--trunc", ka_trunc, "Truncation T")->capture_default_str();

  double bu_u = 2.0;
  CLI::App* bu = app.add_subcommand("buchstab", "Buchstab omega and its upper envelope");
  bu->add_option("--u", bu_u, "Argument in [1, 5]")->required();

  u64 po_n = 1000, po_q = 7, po_a = 3;
  double po_delta = 0.05;
  i64 po_h = -1;
  CLI::App* po = app.add_subcommand("poisson-check", "Truncated Poisson summation error");
  po->add_option("--n", po_n, "Scale N")->required();
  po->add_option("--q", po_q, "Modulus q")->required();
  po->add_option("--a", po_a, "Residue a")->required();
  po->add_option("--delta", po_delta, "Bump width")->capture_default_str();
  po->add_option("--hmax", po_h, "Frequency cutoff (-1 = default H)")->capture_default_str();

  int ti_j = 1;
  u64 ti_x = 100000, ti_d = 100;
  CLI::App* ti = app.add_subcommand("typei", "Type I discrepancy over d in [D, 2D)");
  ti->add_option("--j", ti_j, "Sequence index (1 or 2)")->required();
  ti->add_option("--x", ti_x, "Window start X")->required();
  ti->add_option("--d", ti_d, "Modulus block start D")->required();

  u64 bi_x = 1000;
  double bi_z = 2.0;
  CLI::App* bi = app.add_subcommand("buchstab-identity", "Exact two-step Buchstab identity");
  bi->add_option("--x", bi_x, "Window start X")->required();
  bi->add_option("--z", bi_z, "Sifting level Z")->required();

  u64 ps_n = 100, ps_y = 10;
  CLI::App* ps = app.add_subcommand("pair-stats", "Gaussian pair statistics on an annulus");
  ps->add_option("--n", ps_n, "Annulus parameter N")->required();
  ps->add_option("--y", ps_y, "Threshold Y")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 1;
  }

  sparseprime::set_thread_count(g.threads);
  try {
    if (ob->parsed()) return run_omega_bounds(g, ob_case, ob_eta, ob_grid);
    if (wv->parsed()) return run_weil_verify(g, wv_pmax);
    if (en->parsed()) return run_enumerate(g, en_form, en_x, en_trunc);
    if (ka->parsed()) return run_kappa(g, ka_j, ka_trunc);
    if (bu->parsed()) return run_buchstab(g, bu_u);
    if (po->parsed()) return run_poisson(g, po_n, po_q, po_a, po_delta, po_h);
    if (ti->parsed()) return run_typei(g, ti_j, ti_x, ti_d);
    if (bi->parsed()) return run_buchstab_identity(g, bi_x, bi_z);
    if (ps->parsed()) return run_pair_stats(g, ps_n, ps_y);
  } catch (const sparseprime::BoundViolation& e) {
    std::fprintf(stderr, "bound violation: %s\n", e.what());
    return 2;
  } catch (const std::exception& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return 1;
  }
  return 1;
}
