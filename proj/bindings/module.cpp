#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <limits>

#include "infodyn/info_gain.hpp"
#include "infodyn/involution.hpp"
#include "infodyn/symbolic.hpp"
#include "infodyn/tfca.hpp"
#include "infodyn/thermo.hpp"

namespace py = pybind11;
using namespace infodyn;

namespace {

double ext_to_py(const ExtReal& v) { return v.as_double(); }

LogBase base_from_string(const std::string& b) {
  if (b == "e") return LogBase::natural;
  if (b == "2") return LogBase::two;
  if (b == "10") return LogBase::ten;
  throw Error("base must be one of 'e', '2', '10'");
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "Information gain, relative entropy, and entropy production for "
            "symbolic dynamics over finite and quadrature-discretized alphabets.";

  py::register_exception<Error>(m, "InfodynError", PyExc_RuntimeError);

  py::class_<StochasticMatrix>(m, "StochasticMatrix")
      .def(py::init<std::vector<std::vector<double>>>(), py::arg("rows"))
      .def_property_readonly("d", &StochasticMatrix::size)
      .def("rows", &StochasticMatrix::rows);

  py::class_<MarkovMeasure>(m, "MarkovMeasure")
      .def(py::init<StochasticMatrix>(), py::arg("transitions"))
      .def(py::init<StochasticMatrix, std::vector<double>>(), py::arg("transitions"),
           py::arg("stationary"))
      .def(py::init([](const std::vector<std::vector<double>>& rows) {
             return MarkovMeasure(StochasticMatrix(rows));
           }),
           py::arg("rows"))
      .def_property_readonly("d", &MarkovMeasure::alphabet_size)
      .def_property_readonly("stationary", &MarkovMeasure::stationary)
      .def("transitions", [](const MarkovMeasure& mu) { return mu.transitions().rows(); });

  py::class_<AprioriWeights>(m, "AprioriWeights")
      .def(py::init<std::vector<double>>(), py::arg("weights"))
      .def_static("counting", &AprioriWeights::counting, py::arg("d"))
      .def_static("uniform", &AprioriWeights::uniform, py::arg("d"))
      .def_property_readonly("values", &AprioriWeights::values)
      .def_property_readonly("total_mass", &AprioriWeights::total_mass);

  py::class_<Potential>(m, "Potential")
      .def(py::init<std::size_t, std::size_t, std::vector<double>>(), py::arg("d"),
           py::arg("k"), py::arg("table"))
      .def_static("constant", &Potential::constant, py::arg("d"), py::arg("k"),
                  py::arg("c"))
      .def_static("log_jacobian", &Potential::log_jacobian, py::arg("mu"))
      .def_property_readonly("d", &Potential::alphabet_size)
      .def_property_readonly("k", &Potential::depth)
      .def_property_readonly("table", &Potential::table)
      .def("transpose", &Potential::transpose)
      .def("shifted", &Potential::shifted, py::arg("c"));

  py::class_<SpectralData>(m, "SpectralData")
      .def_readonly("lam", &SpectralData::lambda)
      .def_readonly("h", &SpectralData::h)
      .def_readonly("rho", &SpectralData::rho)
      .def_property_readonly("pressure", &SpectralData::pressure);

  py::class_<JointDistribution>(m, "JointDistribution")
      .def(py::init<std::vector<std::vector<double>>>(), py::arg("table"))
      .def_property_readonly("x_marginal", &JointDistribution::x_marginal)
      .def_property_readonly("y_marginal", &JointDistribution::y_marginal);

  py::class_<ProbabilityKernel>(m, "ProbabilityKernel")
      .def(py::init<std::vector<std::vector<double>>>(), py::arg("rows"))
      .def_static("constant", &ProbabilityKernel::constant, py::arg("nu"), py::arg("r"));

  py::class_<InvolutionData>(m, "InvolutionData")
      .def_readonly("w", &InvolutionData::w)
      .def_readonly("a_minus", &InvolutionData::a_minus)
      .def_readonly("gauge", &InvolutionData::gauge);

  py::class_<SymmetryResult>(m, "SymmetryResult")
      .def_readonly("symmetric", &SymmetryResult::symmetric)
      .def_readonly("strict", &SymmetryResult::strict)
      .def_readonly("gauge", &SymmetryResult::gauge);

  py::enum_<GainRoute>(m, "GainRoute")
      .value("pressure_formula", GainRoute::pressure_formula)
      .value("cylinder_sum", GainRoute::cylinder_sum)
      .value("orbit_monte_carlo", GainRoute::orbit_monte_carlo);

  py::class_<GainReport>(m, "GainReport")
      .def_property_readonly("value",
                             [](const GainReport& r) { return ext_to_py(r.value); })
      .def_readonly("route", &GainReport::route)
      .def_readonly("n", &GainReport::n)
      .def_readonly("stderr", &GainReport::stderr_value);

  py::class_<QuadratureMeasure>(m, "QuadratureMeasure")
      .def_static("midpoint", &QuadratureMeasure::midpoint, py::arg("n"))
      .def_static("gauss_legendre", &QuadratureMeasure::gauss_legendre, py::arg("n"))
      .def_static("explicit_nodes", &QuadratureMeasure::explicit_nodes,
                  py::arg("nodes"), py::arg("weights"))
      .def_property_readonly("nodes", &QuadratureMeasure::nodes)
      .def_property_readonly("weights", &QuadratureMeasure::weights);

  py::class_<ContinuousPotential>(m, "ContinuousPotential")
      .def_static("constant", &ContinuousPotential::constant, py::arg("c"))
      .def_static("separable", &ContinuousPotential::separable, py::arg("a"),
                  py::arg("b"))
      .def_static("bilinear", &ContinuousPotential::bilinear, py::arg("alpha"),
                  py::arg("beta"), py::arg("gamma"))
      .def_static("cosine_coupling", &ContinuousPotential::cosine_coupling,
                  py::arg("alpha"))
      .def_static("grid", &ContinuousPotential::grid, py::arg("values"))
      .def_property_readonly("family", &ContinuousPotential::family);

  py::class_<TfcaEquilibrium>(m, "TfcaEquilibrium")
      .def_readonly("kernel", &TfcaEquilibrium::kernel)
      .def_readonly("density", &TfcaEquilibrium::density);

  // symbolic core
  m.def("stationary_distribution", &stationary_distribution, py::arg("m"));
  m.def("cylinder_mass", &cylinder_mass, py::arg("mu"), py::arg("word"));
  m.def("reverse_measure", &reverse_measure, py::arg("mu"));
  m.def("sample_orbit", &sample_orbit, py::arg("mu"), py::arg("n"), py::arg("seed"));
  m.def("ks_entropy", &ks_entropy, py::arg("mu"));

  // finite transfer operator
  m.def("transfer_apply", &transfer_apply, py::arg("A"), py::arg("nu"), py::arg("f"));
  m.def("spectral_data", &spectral_data, py::arg("A"), py::arg("nu"));
  m.def("normalize_potential", &normalize_potential, py::arg("A"), py::arg("s"));
  m.def("is_normalized", &is_normalized, py::arg("A"), py::arg("nu"));
  m.def("equilibrium_measure", &equilibrium_measure, py::arg("A"), py::arg("nu"));
  m.def("relative_entropy", &relative_entropy, py::arg("mu"), py::arg("nu"));
  m.def("integrate", &integrate, py::arg("A"), py::arg("eta"));

  // information gain
  m.def(
      "shannon_entropy",
      [](const std::vector<double>& p, const std::string& base) {
        return shannon_entropy(p, base_from_string(base));
      },
      py::arg("p"), py::arg("base") = "e");
  m.def(
      "conditional_entropy",
      [](const JointDistribution& pi, const std::string& base) {
        return conditional_entropy(pi, base_from_string(base));
      },
      py::arg("pi"), py::arg("base") = "e");
  m.def(
      "information_gain",
      [](const JointDistribution& pi, const std::string& base) {
        return information_gain(pi, base_from_string(base));
      },
      py::arg("pi"), py::arg("base") = "e");
  m.def(
      "joint_jacobian",
      [](const JointDistribution& pi) {
        const JacobianTable t = joint_jacobian(pi);
        std::vector<std::vector<double>> rows(t.d, std::vector<double>(t.r, 0.0));
        for (std::size_t x = 0; x < t.d; ++x)
          for (std::size_t y = 0; y < t.r; ++y) rows[x][y] = t(x, y);
        return rows;
      },
      py::arg("pi"));
  m.def(
      "kl_divergence",
      [](const std::vector<double>& p, const std::vector<double>& nu) {
        return ext_to_py(kl_divergence(p, nu));
      },
      py::arg("p"), py::arg("nu"));
  m.def(
      "kernel_information_gain",
      [](const JointDistribution& pi, const ProbabilityKernel& k) {
        return ext_to_py(kernel_information_gain(pi, k));
      },
      py::arg("pi"), py::arg("kernel"));
  m.def(
      "ig_shift",
      [](const JointDistribution& pi, const std::vector<double>& nu,
         const std::vector<std::vector<double>>& phi0, const std::string& base) {
        return ext_to_py(ig_shift(pi, nu, phi0, base_from_string(base)));
      },
      py::arg("pi"), py::arg("nu"), py::arg("phi0"), py::arg("base") = "e");
  m.def("variational_entropy_oracle", &variational_entropy_oracle, py::arg("pi"),
        py::arg("iters") = 200, py::arg("step") = 1.0);

  // involution and entropy production
  m.def("involution_kernel",
        py::overload_cast<const Potential&>(&involution_kernel), py::arg("A"));
  m.def("involution_kernel",
        py::overload_cast<const Potential&, std::vector<double>>(&involution_kernel),
        py::arg("A"), py::arg("gauge"));
  m.def("is_symmetric", &is_symmetric, py::arg("A"), py::arg("nu"),
        py::arg("tol") = 1e-10);
  m.def(
      "entropy_production_markov",
      [](const MarkovMeasure& mu) { return ext_to_py(entropy_production_markov(mu)); },
      py::arg("mu"));
  m.def("entropy_production_potential", &entropy_production_potential, py::arg("A"),
        py::arg("nu"));
  m.def("specific_gain", &specific_gain, py::arg("eta"), py::arg("A"), py::arg("nu"));
  m.def("cylinder_gain_estimate", &cylinder_gain_estimate, py::arg("eta"),
        py::arg("mu"), py::arg("n"));
  m.def("orbit_gain_estimate", &orbit_gain_estimate, py::arg("eta"), py::arg("mu"),
        py::arg("n"), py::arg("trials"), py::arg("seed"));
  m.def("orbit_gain_trials", &orbit_gain_trials, py::arg("eta"), py::arg("mu"),
        py::arg("n"), py::arg("trials"), py::arg("seed"));
  m.def("dual_eigenvalue_check", &dual_eigenvalue_check, py::arg("A"), py::arg("nu"));

  // TFCA model on [0,1]
  m.def("nystrom_spectral", &nystrom_spectral, py::arg("A"), py::arg("q"));
  m.def("tfca_equilibrium", &tfca_equilibrium, py::arg("A"), py::arg("q"));
  m.def("tfca_entropy", &tfca_entropy, py::arg("A"), py::arg("q"));
  m.def("tfca_entropy_production", &tfca_entropy_production, py::arg("A"), py::arg("q"));
}
