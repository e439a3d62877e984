#include <optional>
#include <string>
#include <vector>

#include <pybind11/eigen.h>
#include <pybind11/functional.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>
#include <pybind11/stl/filesystem.h>

#include "incw/config.hpp"
#include "incw/error.hpp"
#include "incw/experiment.hpp"
#include "incw/forward.hpp"
#include "incw/incidence.hpp"
#include "incw/objective.hpp"
#include "incw/observations.hpp"
#include "incw/optimizer.hpp"
#include "incw/sensitivity.hpp"

namespace py = pybind11;
using namespace incw;

namespace {

// A profile from Python: a float, or a sequence of nodal values.
InitialProfile to_profile(const py::object& o) {
  if (py::isinstance<py::float_>(o) || py::isinstance<py::int_>(o)) return InitialProfile(o.cast<double>());
  return InitialProfile::nodal(o.cast<std::vector<double>>());
}

py::object from_profile(const InitialProfile& p, const SpaceTimeGrid* grid = nullptr) {
  if (p.is_constant()) return py::float_(p.constant());
  if (grid) return py::cast(Eigen::VectorXd(p.sample(*grid)));
  return py::none();
}

Eigen::VectorXd values_of(const std::optional<SimplexWeights>& w) { return w ? w->values() : Eigen::VectorXd(); }

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "Incidence-weight identification for a reaction-diffusion SIR model";

  // InvalidInput (and DimensionError, ParseError) surface as ValueError subclasses.
  static py::exception<InvalidInput> invalid_input(m, "InvalidInput", PyExc_ValueError);
  static py::exception<NumericalError> numerical(m, "NumericalError", PyExc_RuntimeError);
  static py::exception<DivergenceError> divergence(m, "DivergenceError", numerical.ptr());
  py::register_exception_translator([](std::exception_ptr p) {
    try {
      if (p) std::rethrow_exception(p);
    } catch (const DivergenceError& e) {
      py::set_error(divergence, e.what());
    } catch (const NumericalError& e) {
      py::set_error(numerical, e.what());
    } catch (const InvalidInput& e) {
      py::set_error(invalid_input, e.what());
    }
  });

  py::class_<SpaceTimeGrid>(m, "SpaceTimeGrid")
      .def(py::init<double, double, int, int>(), py::arg("length"), py::arg("horizon"), py::arg("nx"), py::arg("nt"))
      .def_property_readonly("length", &SpaceTimeGrid::length)
      .def_property_readonly("horizon", &SpaceTimeGrid::horizon)
      .def_property_readonly("nx", &SpaceTimeGrid::nx)
      .def_property_readonly("nt", &SpaceTimeGrid::nt)
      .def_property_readonly("dx", &SpaceTimeGrid::dx)
      .def_property_readonly("dt", &SpaceTimeGrid::dt)
      .def("__eq__", &SpaceTimeGrid::operator==)
      .def("__repr__", [](const SpaceTimeGrid& g) {
        return "SpaceTimeGrid(" + std::to_string(g.length()) + ", " + std::to_string(g.horizon()) + ", " +
               std::to_string(g.nx()) + ", " + std::to_string(g.nt()) + ")";
      });

  py::class_<IncidenceSpec>(m, "IncidenceSpec")
      .def(py::init([](const std::string& text) { return IncidenceSpec::parse(text); }), py::arg("text"),
           "Parse `name:c1,c2,...`, e.g. `saturated:0.4,1.0`.")
      .def_property_readonly("name", [](const IncidenceSpec& s) { return std::string(s.name()); })
      .def_property_readonly("coefficients", &IncidenceSpec::coefficients)
      .def_property_readonly("depends_on_r", &IncidenceSpec::depends_on_r)
      .def("__eq__", &IncidenceSpec::operator==)
      .def("__str__", &IncidenceSpec::to_string)
      .def("__repr__", [](const IncidenceSpec& s) { return "IncidenceSpec('" + s.to_string() + "')"; });

  m.def("incidence_value", &incidence_value, py::arg("spec"), py::arg("s"), py::arg("i"), py::arg("r"));
  m.def("incidence_dS", &incidence_dS, py::arg("spec"), py::arg("s"), py::arg("i"), py::arg("r"));
  m.def("incidence_dI", &incidence_dI, py::arg("spec"), py::arg("s"), py::arg("i"), py::arg("r"));
  m.def("incidence_dR", &incidence_dR, py::arg("spec"), py::arg("s"), py::arg("i"), py::arg("r"));

  py::class_<ModelParams>(m, "ModelParams")
      .def(py::init<>())
      .def_readwrite("d1", &ModelParams::d1)
      .def_readwrite("d2", &ModelParams::d2)
      .def_readwrite("d3", &ModelParams::d3)
      .def_readwrite("gamma", &ModelParams::gamma)
      .def_readwrite("sigma", &ModelParams::sigma)
      .def_property(
          "s0", [](const ModelParams& p) { return from_profile(p.s0); },
          [](ModelParams& p, const py::object& o) { p.s0 = to_profile(o); })
      .def_property(
          "i0", [](const ModelParams& p) { return from_profile(p.i0); },
          [](ModelParams& p, const py::object& o) { p.i0 = to_profile(o); })
      .def_property(
          "r0", [](const ModelParams& p) { return from_profile(p.r0); },
          [](ModelParams& p, const py::object& o) { p.r0 = to_profile(o); })
      .def("validate", &ModelParams::validate);

  py::class_<ForwardProblem>(m, "ForwardProblem")
      .def(py::init([](const SpaceTimeGrid& g, const ModelParams& p, std::vector<IncidenceSpec> f, Eigen::VectorXd theta) {
             ForwardProblem out{g, p, std::move(f), std::move(theta)};
             out.validate();
             return out;
           }),
           py::arg("grid"), py::arg("params"), py::arg("incidences"), py::arg("theta"))
      .def_readonly("grid", &ForwardProblem::grid)
      .def_readonly("params", &ForwardProblem::params)
      .def_readonly("incidences", &ForwardProblem::incidences)
      .def_readonly("theta", &ForwardProblem::theta)
      .def_property_readonly("m", &ForwardProblem::m)
      .def("with_theta", &ForwardProblem::with_theta, py::arg("theta"));

  py::class_<StateTrajectory>(m, "StateTrajectory")
      .def_readonly("S", &StateTrajectory::S)
      .def_readonly("I", &StateTrajectory::I)
      .def_readonly("R", &StateTrajectory::R);
  py::class_<LinearizedTrajectory>(m, "LinearizedTrajectory")
      .def_readonly("Sbar", &LinearizedTrajectory::Sbar)
      .def_readonly("Ibar", &LinearizedTrajectory::Ibar)
      .def_readonly("Rbar", &LinearizedTrajectory::Rbar);
  py::class_<AdjointTrajectory>(m, "AdjointTrajectory")
      .def_readonly("P1", &AdjointTrajectory::P1)
      .def_readonly("P2", &AdjointTrajectory::P2)
      .def_readonly("P3", &AdjointTrajectory::P3);

  py::enum_<RCoupling>(m, "RCoupling").value("Frozen", RCoupling::Frozen).value("Full", RCoupling::Full);

  m.def("solve_forward", &solve_forward, py::arg("problem"), py::call_guard<py::gil_scoped_release>());
  m.def("solve_linearized", &solve_linearized, py::arg("problem"), py::arg("trajectory"), py::arg("theta_tilde"),
        py::arg("coupling") = RCoupling::Full, py::call_guard<py::gil_scoped_release>());
  m.def("solve_adjoint", &solve_adjoint, py::arg("problem"), py::arg("trajectory"), py::arg("obs"),
        py::arg("coupling") = RCoupling::Full, py::call_guard<py::gil_scoped_release>());

  py::class_<Observations>(m, "Observations")
      .def(py::init([](Field s, Field i) { return Observations{std::move(s), std::move(i), {}}; }), py::arg("S_ob"),
           py::arg("I_ob"))
      .def_readonly("S_ob", &Observations::S_ob)
      .def_readonly("I_ob", &Observations::I_ob)
      .def_property_readonly("seed", [](const Observations& o) { return o.meta.seed; })
      .def_property_readonly("noise_level", [](const Observations& o) { return o.meta.noise_level; })
      .def_property_readonly("true_theta", [](const Observations& o) -> std::optional<Eigen::VectorXd> {
        if (!o.meta.true_theta) return std::nullopt;
        return o.meta.true_theta->values();
      });

  m.def("make_observations", &make_observations, py::arg("problem"), py::arg("noise_level"), py::arg("seed"));
  m.def("save_observations", &save_observations, py::arg("obs"), py::arg("grid"), py::arg("path"));
  m.def(
      "load_observations",
      [](const std::filesystem::path& path) {
        auto f = load_observations(path);
        return py::make_tuple(f.grid, f.obs);
      },
      py::arg("path"), "Returns (grid, observations).");

  m.def("simpson2d", &simpson2d, py::arg("field"), py::arg("grid"));

  py::class_<CostReport>(m, "CostReport")
      .def_readonly("j_total", &CostReport::j_total)
      .def_readonly("misfit_s", &CostReport::misfit_s)
      .def_readonly("misfit_i", &CostReport::misfit_i)
      .def_readonly("reg", &CostReport::reg);
  m.def("cost", &cost, py::arg("problem"), py::arg("trajectory"), py::arg("obs"));
  m.def("gradient", &gradient, py::arg("problem"), py::arg("trajectory"), py::arg("adjoint"), py::arg("theta"));

  m.def(
      "project_simplex", [](const Eigen::VectorXd& v) { return Eigen::VectorXd(project_simplex(v).values()); },
      py::arg("v"));

  py::class_<OptimizerConfig>(m, "OptimizerConfig")
      .def(py::init<>())
      .def_property(
          "theta0", [](const OptimizerConfig& c) { return values_of(c.theta0); },
          [](OptimizerConfig& c, const std::optional<Eigen::VectorXd>& v) {
            c.theta0 = v ? std::optional<SimplexWeights>(SimplexWeights(*v)) : std::nullopt;
          })
      .def_readwrite("epsilon", &OptimizerConfig::epsilon)
      .def_readwrite("max_iters", &OptimizerConfig::max_iters)
      .def_readwrite("t0", &OptimizerConfig::t0)
      .def_readwrite("armijo_c", &OptimizerConfig::armijo_c)
      .def_readwrite("backtrack_ratio", &OptimizerConfig::backtrack_ratio)
      .def_readwrite("max_backtracks", &OptimizerConfig::max_backtracks);

  py::class_<IterationRecord>(m, "IterationRecord")
      .def_readonly("k", &IterationRecord::k)
      .def_readonly("theta", &IterationRecord::theta)
      .def_readonly("j", &IterationRecord::j)
      .def_readonly("grad_norm", &IterationRecord::grad_norm)
      .def_readonly("step", &IterationRecord::step)
      .def_readonly("backtracks", &IterationRecord::backtracks)
      .def_readonly("fallback", &IterationRecord::fallback);

  py::class_<IdentifyResult>(m, "IdentifyResult")
      .def_property_readonly("theta", [](const IdentifyResult& r) { return Eigen::VectorXd(r.theta.values()); })
      .def_readonly("history", &IdentifyResult::history)
      .def_property_readonly("converged", [](const IdentifyResult& r) { return r.stop == StopReason::Converged; });

  m.def(
      "identify",
      [](const ForwardProblem& problem, const Observations& obs, const OptimizerConfig& config, RCoupling coupling) {
        const PdeObjective objective(problem, obs, coupling);
        return identify(objective, config);
      },
      py::arg("problem"), py::arg("obs"), py::arg("config") = OptimizerConfig{}, py::arg("coupling") = RCoupling::Full,
      py::call_guard<py::gil_scoped_release>());

  py::class_<ExperimentConfig>(m, "ExperimentConfig")
      .def_readwrite("grid", &ExperimentConfig::grid)
      .def_readwrite("params", &ExperimentConfig::params)
      .def_readwrite("incidences", &ExperimentConfig::incidences)
      .def_readwrite("theta_true", &ExperimentConfig::theta_true)
      .def_property(
          "noise_level", [](const ExperimentConfig& c) { return c.noise.level; },
          [](ExperimentConfig& c, double v) { c.noise.level = v; })
      .def_property(
          "seed", [](const ExperimentConfig& c) { return c.noise.seed; },
          [](ExperimentConfig& c, std::uint64_t v) { c.noise.seed = v; })
      .def_readwrite("optimizer", &ExperimentConfig::optimizer)
      .def_readwrite("coupling", &ExperimentConfig::coupling)
      .def_readwrite("output_dir", &ExperimentConfig::output_dir)
      .def("problem", [](const ExperimentConfig& c, const std::optional<Eigen::VectorXd>& theta) {
             return theta ? c.problem(*theta) : c.problem();
           },
           py::arg("theta") = std::nullopt);

  m.def("parse_config", [](const std::string& text) { return parse_config(text); }, py::arg("text"));
  m.def("load_config", &load_config, py::arg("path"));

  py::class_<GradcheckReport>(m, "GradcheckReport")
      .def_readonly("theta", &GradcheckReport::theta)
      .def_readonly("direction", &GradcheckReport::direction)
      .def_property_readonly("components",
                             [](const GradcheckReport& r) {
                               py::list out;
                               for (const auto& c : r.components) {
                                 out.append(py::dict(py::arg("component") = c.component, py::arg("adjoint") = c.adjoint,
                                                     py::arg("finite_difference") = c.finite_difference,
                                                     py::arg("rel_error") = c.rel_error));
                               }
                               return out;
                             })
      .def_property_readonly("linearization", [](const GradcheckReport& r) {
        py::list out;
        for (const auto& l : r.linearization) out.append(py::make_tuple(l.epsilon, l.rel_error));
        return out;
      });

  m.def("cmd_simulate", &cmd_simulate, py::arg("config"), py::arg("theta") = std::nullopt, py::arg("out_dir"));
  m.def("cmd_make_obs", &cmd_make_obs, py::arg("config"), py::arg("out_dir"));
  m.def(
      "cmd_identify",
      [](const ExperimentConfig& cfg, const std::filesystem::path& obs, const std::filesystem::path& out) {
        return cmd_identify(cfg, obs, out);
      },
      py::arg("config"), py::arg("obs_path"), py::arg("out_dir"));
  m.def("cmd_gradcheck", &cmd_gradcheck, py::arg("config"), py::arg("obs_path"), py::arg("theta") = std::nullopt,
        py::arg("out_dir"));
}
