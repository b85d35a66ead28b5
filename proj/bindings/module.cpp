#include <pybind11/complex.h>
#include <pybind11/eigen.h>
#include <pybind11/functional.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "qdarwin/bounds.hpp"
#include "qdarwin/channels.hpp"
#include "qdarwin/fock.hpp"
#include "qdarwin/gaussian.hpp"
#include "qdarwin/optimizer.hpp"
#include "qdarwin/verify.hpp"

namespace py = pybind11;
using namespace qdarwin;

namespace {

fock::EntropyBase parse_base(const std::string& base) {
  if (base == "bits") return fock::EntropyBase::Bits;
  if (base == "nats") return fock::EntropyBase::Nats;
  throw InvalidParameter("base must be 'bits' or 'nats'");
}

fock::GibbsMode parse_mode(const std::string& mode) {
  if (mode == "exact-tail") return fock::GibbsMode::ExactTail;
  if (mode == "renormalized") return fock::GibbsMode::Renormalized;
  throw InvalidParameter("mode must be 'exact-tail' or 'renormalized'");
}

} // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "objectivity bounds for infinite-dimensional quantum Darwinism";

  py::register_exception<Error>(m, "QdarwinError", PyExc_ValueError);

  // --- scalar types ---------------------------------------------------------

  py::class_<LogReal>(m, "LogReal")
      .def(py::init([](double v) { return LogReal::from_value(v); }))
      .def(py::init([](const std::string& s) { return LogReal::parse(s); }))
      .def_static("from_ln", &LogReal::from_ln)
      .def_static("from_decimal", &LogReal::from_decimal)
      .def_property_readonly("ln", &LogReal::ln)
      .def_property_readonly("log10", &LogReal::log10)
      .def("value", &LogReal::value)
      .def("__str__", &LogReal::str)
      .def("__repr__", [](const LogReal& n) { return "LogReal(" + n.str() + ")"; });
  py::implicitly_convertible<py::float_, LogReal>();
  py::implicitly_convertible<py::int_, LogReal>();
  py::implicitly_convertible<py::str, LogReal>();

  // --- bound formulas -------------------------------------------------------

  m.def("mean_energy_zeta", &bounds::mean_energy_zeta,
        py::arg("d"), py::arg("m"), py::arg("nbar"), py::arg("n"));
  m.def("mean_energy_m_opt", &bounds::mean_energy_m_opt, py::arg("d"), py::arg("n"));
  m.def("mean_energy_f", &bounds::mean_energy_f,
        py::arg("d"), py::arg("nbar"), py::arg("n"));
  m.def("mean_energy_analytic",
        [](double nbar, LogReal n) {
          bool degenerate = false;
          const double v = bounds::mean_energy_analytic(nbar, n, &degenerate);
          return py::make_tuple(v, degenerate);
        },
        py::arg("nbar"), py::arg("n"));
  m.def("gibbs_entropy",
        [](double omega) {
          const auto g = bounds::gibbs_entropy(omega);
          return py::make_tuple(g.mean_photons, g.entropy_nats);
        },
        py::arg("omega"));

  py::class_<bounds::ExpCutoffTerms>(m, "ExpCutoffTerms")
      .def_readonly("d_tilde", &bounds::ExpCutoffTerms::d_tilde)
      .def_readonly("mean_photons", &bounds::ExpCutoffTerms::mean_photons)
      .def_readonly("entropy_nats", &bounds::ExpCutoffTerms::entropy_nats)
      .def_readonly("entropy_bits", &bounds::ExpCutoffTerms::entropy_bits)
      .def_readonly("gamma1", &bounds::ExpCutoffTerms::gamma1)
      .def_readonly("gamma2", &bounds::ExpCutoffTerms::gamma2);
  m.def("exp_cutoff_terms", &bounds::exp_cutoff_terms,
        py::arg("omega"), py::arg("Omega"));
  m.def("exp_cutoff_zeta", &bounds::exp_cutoff_zeta,
        py::arg("d"), py::arg("omega"), py::arg("Omega"), py::arg("n"));
  m.def("exp_cutoff_d_opt",
        [](double omega, double Omega, LogReal n) {
          const auto d = bounds::exp_cutoff_d_opt(omega, Omega, n);
          return py::make_tuple(d.lambert_form, d.log_form);
        },
        py::arg("omega"), py::arg("Omega"), py::arg("n"));
  m.def("exp_cutoff_closed", &bounds::exp_cutoff_closed,
        py::arg("omega"), py::arg("Omega"), py::arg("n"));
  m.def("lambert_w0", &bounds::lambert_w0, py::arg("x"));

  // --- optimization ---------------------------------------------------------

  py::class_<optim::MeanEnergyMin>(m, "MeanEnergyMin")
      .def_readonly("d", &optim::MeanEnergyMin::d)
      .def_readonly("m", &optim::MeanEnergyMin::m)
      .def_readonly("zeta", &optim::MeanEnergyMin::zeta);
  m.def("minimize_mean_energy", &optim::minimize_mean_energy,
        py::arg("nbar"), py::arg("n"));

  py::class_<optim::ExpCutoffMin>(m, "ExpCutoffMin")
      .def_readonly("epsilon", &optim::ExpCutoffMin::epsilon)
      .def_readonly("omega", &optim::ExpCutoffMin::omega)
      .def_readonly("Omega", &optim::ExpCutoffMin::Omega)
      .def_readonly("d", &optim::ExpCutoffMin::d)
      .def_readonly("zeta", &optim::ExpCutoffMin::zeta)
      .def_readonly("route", &optim::ExpCutoffMin::route);
  m.def("minimize_exp_cutoff",
        [](double nbar, LogReal n) { return optim::minimize_exp_cutoff(nbar, n); },
        py::arg("nbar"), py::arg("n"));

  py::class_<optim::SweepRow>(m, "SweepRow")
      .def_property_readonly("n", [](const optim::SweepRow& r) { return r.n.str(); })
      .def_readonly("bound_analytic", &optim::SweepRow::bound_analytic)
      .def_readonly("bound_numeric", &optim::SweepRow::bound_numeric)
      .def_readonly("d", &optim::SweepRow::d)
      .def_readonly("m", &optim::SweepRow::m)
      .def_readonly("epsilon", &optim::SweepRow::epsilon)
      .def_readonly("omega", &optim::SweepRow::omega)
      .def_readonly("Omega", &optim::SweepRow::Omega)
      .def_readonly("route", &optim::SweepRow::route);
  m.def("log_grid", &optim::log_grid,
        py::arg("log10_min"), py::arg("log10_max"), py::arg("points"));
  m.def("default_mean_energy_grid", &optim::default_mean_energy_grid);
  m.def("default_exp_cutoff_grid", &optim::default_exp_cutoff_grid);
  m.def("sweep_mean_energy", &optim::sweep_mean_energy,
        py::arg("nbar"), py::arg("delta"), py::arg("grid"));
  m.def("sweep_exp_cutoff",
        [](double nbar, double delta, const std::vector<LogReal>& grid) {
          return optim::sweep_exp_cutoff(nbar, delta, grid);
        },
        py::arg("nbar"), py::arg("delta"), py::arg("grid"));

  py::class_<optim::PowerLawFit>(m, "PowerLawFit")
      .def_readonly("beta", &optim::PowerLawFit::beta)
      .def_readonly("alpha", &optim::PowerLawFit::alpha)
      .def_readonly("rms_log", &optim::PowerLawFit::rms_log);
  m.def("power_law_fit", &optim::power_law_fit, py::arg("rows"), py::arg("delta"));
  m.def("golden_section", &optim::golden_section,
        py::arg("f"), py::arg("a"), py::arg("b"), py::arg("tol"));

  // --- gaussian cutoff ------------------------------------------------------

  py::class_<gaussian::GaussianState>(m, "GaussianState")
      .def(py::init<std::complex<double>, double, double>(),
           py::arg("alpha"), py::arg("m"), py::arg("r"))
      .def_readonly("alpha", &gaussian::GaussianState::alpha)
      .def_readonly("thermal_photons", &gaussian::GaussianState::thermal_photons)
      .def_readonly("squeezing", &gaussian::GaussianState::squeezing)
      .def("displacement", &gaussian::GaussianState::displacement)
      .def("covariance_diag", &gaussian::GaussianState::covariance_diag)
      .def("mean_photon", &gaussian::GaussianState::mean_photon);

  py::class_<gaussian::CutoffReport>(m, "CutoffReport")
      .def_readonly("omega", &gaussian::CutoffReport::omega)
      .def_readonly("kappa_plus", &gaussian::CutoffReport::kappa_plus)
      .def_readonly("kappa_minus", &gaussian::CutoffReport::kappa_minus)
      .def_readonly("moment", &gaussian::CutoffReport::moment)
      .def_readonly("feasible", &gaussian::CutoffReport::feasible)
      .def_readonly("Omega", &gaussian::CutoffReport::Omega)
      .def_readonly("satisfies_Omega", &gaussian::CutoffReport::satisfies_Omega);

  m.def("mean_photon", &gaussian::mean_photon, py::arg("state"));
  m.def("exp_moment", &gaussian::exp_moment, py::arg("state"), py::arg("omega"),
        py::arg("Omega") = std::numeric_limits<double>::quiet_NaN());
  m.def("cutoff_params", &gaussian::cutoff_params,
        py::arg("nbar"), py::arg("eps"), py::arg("Omega"));
  py::class_<gaussian::CertifyReport>(m, "CertifyReport")
      .def_readonly("samples", &gaussian::CertifyReport::samples)
      .def_readonly("violations", &gaussian::CertifyReport::violations)
      .def_readonly("worst_moment", &gaussian::CertifyReport::worst_moment)
      .def_readonly("omega", &gaussian::CertifyReport::omega)
      .def_readonly("Omega", &gaussian::CertifyReport::Omega)
      .def_readonly("seed", &gaussian::CertifyReport::seed)
      .def_readonly("all_pass", &gaussian::CertifyReport::all_pass);
  m.def("certify_set", &gaussian::certify_set, py::arg("nbar"), py::arg("eps"),
        py::arg("Omega"), py::arg("samples"), py::arg("seed"));
  m.def("worst_moment", &gaussian::worst_moment, py::arg("omega"), py::arg("nbar"));
  m.def("max_feasible_omega", &gaussian::max_feasible_omega, py::arg("nbar"));

  // --- truncated Fock-space linear algebra -----------------------------------

  m.def("trace_norm", &fock::trace_norm, py::arg("x"));
  m.def("partial_trace",
        [](const fock::Matrix& x, int dim_a, int dim_b, const std::string& keep) {
          const fock::Keep which = (keep == "A") ? fock::Keep::SubsystemA
                                                 : fock::Keep::SubsystemB;
          if (keep != "A" && keep != "B")
            throw InvalidParameter("keep must be 'A' or 'B'");
          return fock::partial_trace(x, dim_a, dim_b, which);
        },
        py::arg("x"), py::arg("dim_a"), py::arg("dim_b"), py::arg("keep"));
  m.def("gibbs_state",
        [](double omega, int dim, const std::string& mode) {
          return fock::gibbs_state(omega, dim, parse_mode(mode)).matrix();
        },
        py::arg("omega"), py::arg("dim"), py::arg("mode") = "exact-tail");
  m.def("two_mode_squeezed",
        [](double omega, int dim) {
          return fock::two_mode_squeezed(omega, dim).matrix();
        },
        py::arg("omega"), py::arg("dim"));
  m.def("von_neumann_entropy",
        [](const fock::Matrix& rho, const std::string& base) {
          return fock::von_neumann_entropy(fock::FockState(rho), parse_base(base));
        },
        py::arg("rho"), py::arg("base") = "nats");
  m.def("mutual_information",
        [](const fock::Matrix& rho, int dim_a, int dim_b) {
          return fock::mutual_information(fock::FockState(rho), dim_a, dim_b);
        },
        py::arg("rho"), py::arg("dim_a"), py::arg("dim_b"));
  m.def("number_operator", &fock::number_operator, py::arg("dim"));

  // --- channels ---------------------------------------------------------------

  py::class_<channels::QuantumChannel>(m, "QuantumChannel")
      .def(py::init<std::vector<fock::Matrix>>(), py::arg("kraus"))
      .def_static("identity", &channels::QuantumChannel::identity, py::arg("dim"))
      .def_static("dephasing", &channels::QuantumChannel::dephasing, py::arg("dim"))
      .def_static("depolarizing", &channels::QuantumChannel::depolarizing,
                  py::arg("din"), py::arg("dout"))
      .def_property_readonly("input_dim", &channels::QuantumChannel::input_dim)
      .def_property_readonly("output_dim", &channels::QuantumChannel::output_dim)
      .def_property_readonly("kraus", &channels::QuantumChannel::kraus)
      .def("apply",
           [](const channels::QuantumChannel& ch, const fock::Matrix& x) {
             return ch.apply(x);
           },
           py::arg("x"))
      .def("choi_matrix", &channels::QuantumChannel::choi_matrix);

  m.def("random_channel", &channels::random_channel, py::arg("din"),
        py::arg("dout"), py::arg("kraus_count"), py::arg("seed"));
  m.def("truncated_choi",
        [](const channels::QuantumChannel& ch, int d) {
          return channels::truncated_choi(ch, d).state.matrix();
        },
        py::arg("channel"), py::arg("d"));
  m.def("modified_choi",
        [](const channels::QuantumChannel& ch, double omega) {
          return channels::modified_choi(ch, omega).state.matrix();
        },
        py::arg("channel"), py::arg("omega"));
  m.def("fragment_channel", &channels::fragment_channel, py::arg("channel"),
        py::arg("fragment_dims"), py::arg("fragment_index"));

  py::class_<channels::MeasurePrepare>(m, "MeasurePrepare")
      .def_property_readonly("effects", &channels::MeasurePrepare::effects)
      .def_property_readonly("prepared", &channels::MeasurePrepare::prepared)
      .def_property_readonly("weights", &channels::MeasurePrepare::weights)
      .def("apply", &channels::MeasurePrepare::apply, py::arg("x"))
      .def("to_channel", &channels::MeasurePrepare::to_channel);
  m.def("build_measure_prepare", &channels::build_measure_prepare,
        py::arg("channel"), py::arg("omega"), py::arg("fragment_dims"),
        py::arg("keep_fragment"), py::arg("measured_fragments"),
        py::arg("conditioning_povms"));

  // --- verification -----------------------------------------------------------

  py::class_<verify::SearchBudget>(m, "SearchBudget")
      .def(py::init([](int seeds, int iters) {
             return verify::SearchBudget{seeds, iters};
           }),
           py::arg("seeds") = 512, py::arg("refine_iterations") = 200)
      .def_readwrite("seeds", &verify::SearchBudget::seeds)
      .def_readwrite("refine_iterations", &verify::SearchBudget::refine_iterations);

  py::class_<verify::NormEstimate>(m, "NormEstimate")
      .def_readonly("lower_bound", &verify::NormEstimate::lower_bound)
      .def_readonly("best_input", &verify::NormEstimate::best_input)
      .def_readonly("constraint", &verify::NormEstimate::constraint);

  py::class_<verify::LemmaReport>(m, "LemmaReport")
      .def_readonly("lemma", &verify::LemmaReport::lemma)
      .def_readonly("trials", &verify::LemmaReport::trials)
      .def_readonly("skipped", &verify::LemmaReport::skipped)
      .def_readonly("worst_slack", &verify::LemmaReport::worst_slack)
      .def_readonly("worst_params", &verify::LemmaReport::worst_params)
      .def_readonly("seed", &verify::LemmaReport::seed)
      .def_readonly("passed", &verify::LemmaReport::passed)
      .def("json", [](const verify::LemmaReport& r) { return verify::to_json(r); });

  m.def("ecd_lower_bound", &verify::ecd_lower_bound, py::arg("ch0"), py::arg("ch1"),
        py::arg("nbar"), py::arg("budget") = verify::SearchBudget{},
        py::arg("seed") = 1, py::arg("search_levels") = -1);
  m.def("exp_lower_bound", &verify::exp_lower_bound, py::arg("ch0"), py::arg("ch1"),
        py::arg("omega"), py::arg("Omega"), py::arg("budget") = verify::SearchBudget{},
        py::arg("seed") = 1, py::arg("search_levels") = -1);

  m.def("check_gentle_measurement",
        [](int trials, int dim, std::uint64_t seed) {
          return verify::check_gentle_measurement(trials, dim, seed);
        },
        py::arg("trials") = 200, py::arg("dim") = 4, py::arg("seed") = 1);
  m.def("check_fock_truncation",
        [](int trials, int dim_a, int dim_c, std::uint64_t seed) {
          return verify::check_fock_truncation(trials, dim_a, dim_c, seed);
        },
        py::arg("trials") = 200, py::arg("dim_a") = 5, py::arg("dim_c") = 3,
        py::arg("seed") = 1);
  m.def("check_cj_truncation",
        [](int trials, std::uint64_t seed) {
          return verify::check_cj_truncation(trials, seed);
        },
        py::arg("trials") = 100, py::arg("seed") = 1);
  m.def("check_ecd_choi_bound",
        [](int trials, std::uint64_t seed) {
          return verify::check_ecd_choi_bound(trials, seed);
        },
        py::arg("trials") = 100, py::arg("seed") = 1);
  m.def("check_expcut_choi_bound",
        [](int trials, std::uint64_t seed) {
          return verify::check_expcut_choi_bound(trials, seed);
        },
        py::arg("trials") = 100, py::arg("seed") = 1);
  m.def("check_mutual_info_bound",
        [](int trials, std::uint64_t seed) {
          return verify::check_mutual_info_bound(trials, seed);
        },
        py::arg("trials") = 100, py::arg("seed") = 1);
  m.def("check_norm_axioms",
        [](int trials, std::uint64_t seed) {
          return verify::check_norm_axioms(trials, seed);
        },
        py::arg("trials") = 200, py::arg("seed") = 1);
  m.def("check_povm_identity",
        [](int trials, std::uint64_t seed) {
          return verify::check_povm_identity(trials, seed);
        },
        py::arg("trials") = 50, py::arg("seed") = 1);

#ifdef VERSION_INFO
  m.attr("__version__") = VERSION_INFO;
#else
  m.attr("__version__") = "0.1.0";
#endif
}
