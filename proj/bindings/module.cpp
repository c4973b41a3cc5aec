// ---------------------------------------------------------------------------
// Python bindings: a thin mirror of the public headers.  Structs map to
// read-only attribute classes; library exceptions surface as ValueError
// (domain/precondition failures) or RuntimeError (everything else).
// ---------------------------------------------------------------------------

#include <pybind11/complex.h>
#include <pybind11/functional.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "sparseprime/curves.hpp"
#include "sparseprime/errors.hpp"
#include "sparseprime/gauss.hpp"
#include "sparseprime/harmonic.hpp"
#include "sparseprime/ntheory.hpp"
#include "sparseprime/parallel.hpp"
#include "sparseprime/sequences.hpp"
#include "sparseprime/sieve.hpp"

namespace py = pybind11;

using namespace sparseprime;

PYBIND11_MODULE(_core, m) {
  m.doc() = "sparse-sequence sieve verification core";

  py::register_exception<DomainError>(m, "DomainError", PyExc_ValueError);
  py::register_exception<NotInvertible>(m, "NotInvertible", PyExc_ValueError);
  py::register_exception<DenominatorTooSmall>(m, "DenominatorTooSmall", PyExc_ArithmeticError);
  py::register_exception<WindowTooLarge>(m, "WindowTooLarge", PyExc_ValueError);
  py::register_exception<BudgetExceeded>(m, "BudgetExceeded", PyExc_ValueError);
  py::register_exception<BoundViolation>(m, "BoundViolation", PyExc_RuntimeError);
  py::register_exception<GridTooCoarse>(m, "GridTooCoarse", PyExc_ValueError);

  m.def("set_thread_count", &set_thread_count, py::arg("n"));
  m.def("thread_count", &thread_count);

  // ntheory ------------------------------------------------------------
  m.def("factorize", [](ntheory::u64 n) { return ntheory::factorize(n).factors; },
        py::arg("n"));
  m.def("is_prime", &ntheory::is_prime, py::arg("n"));
  m.def("mobius", &ntheory::mobius, py::arg("n"));
  m.def("tau", &ntheory::tau, py::arg("n"));
  m.def("powerful_part", &ntheory::powerful_part, py::arg("n"));
  m.def("is_powerful_divisor_above", &ntheory::is_powerful_divisor_above,
        py::arg("n"), py::arg("y"));
  m.def("roots_nu_squared_plus_one", &ntheory::roots_nu_squared_plus_one, py::arg("d"));
  m.def("rho", &ntheory::rho, py::arg("j"), py::arg("d"));
  m.def("euler_phi_gaussian", &ntheory::euler_phi_gaussian, py::arg("d"));

  py::class_<ntheory::KappaResult>(m, "KappaResult")
      .def_readonly("value", &ntheory::KappaResult::value)
      .def_readonly("numerator", &ntheory::KappaResult::numerator)
      .def_readonly("denominator", &ntheory::KappaResult::denominator)
      .def_readonly("tail_estimate", &ntheory::KappaResult::tail_estimate)
      .def_readonly("truncation", &ntheory::KappaResult::truncation);
  m.def("kappa", [](int j, ntheory::u64 T) { return ntheory::kappa(j, T); },
        py::arg("j"), py::arg("t"));

  py::class_<ntheory::DivisorWitness>(m, "DivisorWitness")
      .def_readonly("d", &ntheory::DivisorWitness::d)
      .def_readonly("tau_n", &ntheory::DivisorWitness::tau_n)
      .def_readonly("tau_d", &ntheory::DivisorWitness::tau_d);
  m.def("divisor_witness", &ntheory::divisor_witness, py::arg("n"), py::arg("k"));

  // gauss --------------------------------------------------------------
  py::class_<gauss::GaussInt>(m, "GaussInt")
      .def(py::init([](gauss::i64 re, gauss::i64 im) {
             return gauss::GaussInt{re, im};
           }),
           py::arg("re"), py::arg("im"))
      .def_readonly("re", &gauss::GaussInt::re)
      .def_readonly("im", &gauss::GaussInt::im)
      .def("norm", [](gauss::GaussInt z) { return gauss::norm(z); });
  m.def("delta", &gauss::delta, py::arg("z1"), py::arg("z2"));
  m.def("unitary_squarefree_part", &gauss::unitary_squarefree_part, py::arg("d"));
  m.def("residue_a", &gauss::residue_a, py::arg("z1"), py::arg("z2"));

  py::class_<gauss::PairStats>(m, "PairStats")
      .def_readonly("n", &gauss::PairStats::N)
      .def_readonly("sum_half", &gauss::PairStats::sum_half)
      .def_readonly("sum_one", &gauss::PairStats::sum_one)
      .def_readonly("count_powerful_y", &gauss::PairStats::count_powerful_Y)
      .def_readonly("count_gcd_above_y", &gauss::PairStats::count_gcd_above_Y);
  m.def("pair_stats", &gauss::pair_stats, py::arg("n"), py::arg("y"));

  // curves --------------------------------------------------------------
  py::class_<curves::PointCount>(m, "PointCount")
      .def_readonly("modulus", &curves::PointCount::modulus)
      .def_readonly("a", &curves::PointCount::a)
      .def_readonly("count", &curves::PointCount::count)
      .def_readonly("deviation", &curves::PointCount::deviation);
  py::class_<curves::ExpSum>(m, "ExpSum")
      .def_readonly("modulus", &curves::ExpSum::modulus)
      .def_readonly("freq", &curves::ExpSum::freq)
      .def_readonly("value_re", &curves::ExpSum::value_re)
      .def_readonly("value_im", &curves::ExpSum::value_im)
      .def_readonly("exact_terms", &curves::ExpSum::exact_terms)
      .def("abs", &curves::ExpSum::abs);
  m.def("count_n1", &curves::count_N1, py::arg("a"), py::arg("d"));
  m.def("count_n2", &curves::count_N2, py::arg("gamma"), py::arg("p"));
  m.def("count_n3", &curves::count_N3, py::arg("a"), py::arg("d"));
  m.def("eps_d", &curves::eps_d, py::arg("a"), py::arg("d"));
  m.def("exp_sum_s1", &curves::exp_sum_S1, py::arg("a"), py::arg("h1"), py::arg("h2"),
        py::arg("d"));
  m.def("exp_sum_fi", &curves::exp_sum_FI, py::arg("a"), py::arg("h1"), py::arg("h2"),
        py::arg("d"));
  m.def("exp_sum_s2", &curves::exp_sum_S2, py::arg("a"), py::arg("h"), py::arg("d"));
  m.def("kloosterman", &curves::kloosterman, py::arg("k"), py::arg("a"), py::arg("p"));

  py::class_<curves::WeilRow>(m, "WeilRow")
      .def_readonly("lemma", &curves::WeilRow::lemma)
      .def_readonly("p", &curves::WeilRow::p)
      .def_readonly("a", &curves::WeilRow::a)
      .def_readonly("h", &curves::WeilRow::h)
      .def_readonly("observed", &curves::WeilRow::observed)
      .def_readonly("bound", &curves::WeilRow::bound)
      .def_readonly("ratio", &curves::WeilRow::ratio);
  py::class_<curves::WeilReport>(m, "WeilReport")
      .def_readonly("rows", &curves::WeilReport::rows)
      .def_readonly("worst", &curves::WeilReport::worst)
      .def_readonly("ok", &curves::WeilReport::ok);
  m.def("verify_weil_suite", &curves::verify_weil_suite, py::arg("p_max"),
        py::arg("throw_on_violation") = true);

  // sequences -----------------------------------------------------------
  py::enum_<sequences::Form>(m, "Form")
      .value("quartic_shift", sequences::Form::quartic_shift)
      .value("cubes", sequences::Form::cubes)
      .value("two_squares", sequences::Form::two_squares);
  py::class_<sequences::SieveSeries>(m, "SieveSeries")
      .def_readonly("form", &sequences::SieveSeries::form)
      .def_readonly("x", &sequences::SieveSeries::X)
      .def_readonly("entries", &sequences::SieveSeries::entries)
      .def("total_mass", &sequences::SieveSeries::total_mass);
  py::class_<sequences::SiftedSum>(m, "SiftedSum")
      .def_readonly("d", &sequences::SiftedSum::d)
      .def_readonly("z", &sequences::SiftedSum::Z)
      .def_readonly("value", &sequences::SiftedSum::value);
  m.def("omega_weight", &sequences::omega_weight, py::arg("c"), py::arg("d"));
  m.def("omega_integral_check", &sequences::omega_integral_check, py::arg("grid"));
  m.def("enumerate_series", &sequences::enumerate_series, py::arg("form"), py::arg("x"),
        py::arg("kappa_value"));
  m.def("rep_count_two_cubes", &sequences::rep_count_two_cubes, py::arg("n"));
  m.def("sifted_sum", &sequences::sifted_sum, py::arg("series"), py::arg("d"),
        py::arg("z"));
  m.def("typei_discrepancy", &sequences::typei_discrepancy, py::arg("j"), py::arg("x"),
        py::arg("d"));
  m.def("remark_counts", &sequences::remark_counts, py::arg("d"), py::arg("form"));
  py::class_<sequences::BuchstabCheck>(m, "BuchstabCheck")
      .def_readonly("lhs", &sequences::BuchstabCheck::lhs)
      .def_readonly("s1", &sequences::BuchstabCheck::s1)
      .def_readonly("s2", &sequences::BuchstabCheck::s2)
      .def_readonly("s3", &sequences::BuchstabCheck::s3)
      .def_readonly("residual", &sequences::BuchstabCheck::residual)
      .def_readonly("equal", &sequences::BuchstabCheck::equal);
  m.def("buchstab_identity_check", &sequences::buchstab_identity_check, py::arg("x"),
        py::arg("z"));

  // harmonic ------------------------------------------------------------
  py::class_<harmonic::SmoothBump>(m, "SmoothBump")
      .def_readonly("delta", &harmonic::SmoothBump::delta)
      .def_readonly("norm", &harmonic::SmoothBump::norm)
      .def("__call__", &harmonic::SmoothBump::operator(), py::arg("u"));
  m.def("make_bump", &harmonic::make_bump, py::arg("delta"));
  m.def("bump_fourier", &harmonic::bump_fourier, py::arg("psi"), py::arg("x"));
  m.def("partition_reconstruction", &harmonic::partition_reconstruction, py::arg("n"),
        py::arg("delta"));
  m.def("poisson_check", &harmonic::poisson_check, py::arg("n"), py::arg("q"),
        py::arg("a"), py::arg("delta"), py::arg("h"));
  m.def("poisson_default_h", &harmonic::poisson_default_H, py::arg("n"), py::arg("q"),
        py::arg("delta"));

  // sieve ---------------------------------------------------------------
  py::class_<sieve::SieveParams>(m, "SieveParams")
      .def_readonly("j", &sieve::SieveParams::j)
      .def_readonly("eta", &sieve::SieveParams::eta)
      .def_readonly("alpha", &sieve::SieveParams::alpha)
      .def_readonly("gamma", &sieve::SieveParams::gamma)
      .def_property_readonly("exclusions", [](const sieve::SieveParams& pr) {
        return std::vector<std::pair<double, double>>{
            {pr.J[0][0], pr.J[0][1]}, {pr.J[1][0], pr.J[1][1]}};
      });
  m.def("make_params", &sieve::make_params, py::arg("j"), py::arg("eta"));
  m.def("buchstab_omega", &sieve::buchstab_omega, py::arg("u"));
  m.def("buchstab_upper", &sieve::buchstab_upper, py::arg("u"));
  m.def("buchstab_upper_sup", &sieve::buchstab_upper_sup, py::arg("lo"), py::arg("hi"));
  m.def("region_membership", &sieve::region_membership, py::arg("dim"), py::arg("beta"),
        py::arg("params"));
  py::class_<sieve::OmegaBound>(m, "OmegaBound")
      .def_readonly("kind", &sieve::OmegaBound::kind)
      .def_readonly("j", &sieve::OmegaBound::j)
      .def_readonly("value", &sieve::OmegaBound::value)
      .def_readonly("grid", &sieve::OmegaBound::grid)
      .def_readonly("eta", &sieve::OmegaBound::eta)
      .def_readonly("conservative", &sieve::OmegaBound::conservative)
      .def_readonly("cells_counted", &sieve::OmegaBound::cells_counted);
  m.def("omega2_bound", &sieve::omega2_bound, py::arg("j"), py::arg("eta"),
        py::arg("grid"));
  m.def("omega4_bound", &sieve::omega4_bound, py::arg("j"), py::arg("eta"),
        py::arg("grid"));
  m.def("deficiency", &sieve::deficiency, py::arg("j"), py::arg("eta"), py::arg("grid"));
}
