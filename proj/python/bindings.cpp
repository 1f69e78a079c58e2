#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <optional>
#include <string>
#include <vector>

#include "juggling/combinatorics.hpp"
#include "juggling/errors.hpp"
#include "juggling/model.hpp"
#include "juggling/msjmc.hpp"
#include "juggling/overwriting.hpp"

namespace py = pybind11;
using namespace juggling;

namespace {

// Exact values cross the boundary as "p/q" strings; the Python side turns
// them into Fractions.
py::list to_python(const std::vector<Rational>& v) {
  py::list out;
  for (const auto& x : v) out.append(x.get_str());
  return out;
}

py::list to_python(const std::vector<double>& v) {
  py::list out;
  for (double x : v) out.append(x);
  return out;
}

template <class S>
py::list dense_rows(const ChainMatrix<S>& P) {
  py::list rows;
  for (const auto& row : P.dense()) rows.append(to_python(row));
  return rows;
}

std::vector<Rational> parse_all(const std::vector<std::string>& values) {
  std::vector<Rational> out;
  for (const auto& s : values) out.push_back(parse_rational(s));
  return out;
}

template <class Fn>
auto on_backend(const ModelSpec& spec, Fn&& fn) {
  if (spec.backend == Backend::exact) return fn(Model<Rational>(spec));
  return fn(Model<double>(spec));
}

}  // namespace

PYBIND11_MODULE(_juggling, m) {
  m.doc() = "Exact engine for multispecies juggling Markov chains.";

  auto base = py::register_exception<Error>(m, "JugglingError");
  py::register_exception<InvalidArgument>(m, "InvalidArgument", base.ptr());
  py::register_exception<DegenerateParams>(m, "DegenerateParams", base.ptr());
  py::register_exception<NotNormalized>(m, "NotNormalized", base.ptr());
  py::register_exception<ReducibleChain>(m, "ReducibleChain", base.ptr());
  py::register_exception<SizeCapExceeded>(m, "SizeCapExceeded", base.ptr());

  py::class_<ModelSpec>(m, "ModelSpec")
      .def(py::init([](const std::string& model, std::vector<int> counts, int n, int T, int r, int c, int balls,
                       std::vector<std::string> z, std::vector<std::string> activities, const std::string& backend) {
             ModelSpec spec;
             spec.model = parse_model_kind(model);
             spec.counts = std::move(counts);
             spec.n = n;
             spec.alphabet = T;
             spec.rows = r;
             spec.cols = c;
             spec.balls = balls;
             spec.z = std::move(z);
             spec.activities = std::move(activities);
             if (backend == "exact") {
               spec.backend = Backend::exact;
             } else if (backend == "float") {
               spec.backend = Backend::floating;
             } else {
               throw InvalidArgument("unknown backend '" + backend + "'");
             }
             spec.validate();
             return spec;
           }),
           py::arg("model"), py::kw_only(), py::arg("counts") = std::vector<int>{}, py::arg("n") = 0,
           py::arg("T") = 0, py::arg("r") = 0, py::arg("c") = 0, py::arg("balls") = 0,
           py::arg("z") = std::vector<std::string>{}, py::arg("activities") = std::vector<std::string>{},
           py::arg("backend") = "exact")
      .def_property_readonly("model", [](const ModelSpec& s) { return std::string(model_name(s.model)); })
      .def_property_readonly("exact", [](const ModelSpec& s) { return s.backend == Backend::exact; });

  m.def("states", [](const ModelSpec& spec) { return Model<Rational>(spec).states(); });
  m.def("notes", [](const ModelSpec& spec) {
    return on_backend(spec, [](const auto& model) { return model.notes(); });
  });
  m.def("matrix", [](const ModelSpec& spec) {
    return on_backend(spec, [](const auto& model) { return dense_rows(model.matrix()); });
  });
  m.def("formula", [](const ModelSpec& spec) {
    return on_backend(spec, [](const auto& model) { return to_python(model.formula().weights); });
  });
  m.def("solve", [](const ModelSpec& spec) {
    return on_backend(spec, [](const auto& model) { return to_python(model.solve(model.matrix()).weights); });
  });

  m.def(
      "verify",
      [](const ModelSpec& spec, const std::string& suite, bool negative_control) {
        const auto report = verify_model(spec, parse_suite(suite), negative_control);
        py::list checks;
        for (const auto& c : report.checks) checks.append(py::make_tuple(c.name, c.passed, c.detail));
        py::dict out;
        out["passed"] = report.passed();
        out["checks"] = checks;
        out["notes"] = report.notes;
        return out;
      },
      py::arg("spec"), py::arg("suite") = "all", py::arg("negative_control") = false);

  m.def(
      "simulate",
      [](const ModelSpec& spec, std::size_t steps, std::uint64_t seed, std::optional<std::size_t> replicas,
         std::optional<std::size_t> horizon, std::optional<std::string> start, std::optional<std::size_t> burn_in) {
        SimulateRequest req;
        req.steps = steps;
        req.seed = seed;
        req.replicas = replicas;
        req.horizon = horizon;
        req.start = std::move(start);
        req.burn_in = burn_in;
        const auto rep = simulate_model(spec, req);
        py::dict out;
        out["states"] = rep.states;
        out["empirical"] = rep.empirical.weights;
        out["exact"] = rep.exact.weights;
        out["tv_distance"] = rep.tv_distance;
        out["seed"] = rep.seed;
        out["steps"] = rep.steps;
        out["burn_in"] = rep.burn_in;
        out["replicas"] = rep.replicas;
        out["horizon"] = rep.horizon;
        out["tv_bound"] = rep.tv_bound;
        out["notes"] = rep.notes;
        return out;
      },
      py::arg("spec"), py::arg("steps") = 0, py::arg("seed") = 1, py::arg("replicas") = py::none(),
      py::arg("horizon") = py::none(), py::arg("start") = py::none(), py::arg("burn_in") = py::none());

  m.def("stat_E", [](const std::string& w, int T, int i) { return stat_E(Word::parse(w, T), i); });
  m.def("stat_J", [](const std::string& w, int T, int m, int t) { return stat_J(Word::parse(w, T), m, t); });
  m.def("complete_homogeneous", [](int degree, const std::vector<std::string>& values) {
    const auto v = parse_all(values);
    return complete_homogeneous<Rational>(degree, v).get_str();
  });
  m.def("bumping_sequences", [](const std::string& w, int T) { return msjmc::bumping_sequences(Word::parse(w, T)); });
  m.def("apply_bump", [](const std::string& w, int T, const std::vector<int>& a) {
    return msjmc::apply_bump(Word::parse(w, T), a).to_string();
  });
  m.def("msjmc_partition_function", [](const std::vector<int>& counts, const std::vector<std::string>& z) {
    return msjmc::partition_function(TypeCounts(counts), ParamSet<Rational>(parse_all(z))).get_str();
  });
  m.def("overwriting_stationary", [](const std::string& w, int T, const std::vector<std::string>& z) {
    return overwriting::overwriting_stationary(Word::parse(w, T), ParamSet<Rational>(parse_all(z))).get_str();
  });
}
