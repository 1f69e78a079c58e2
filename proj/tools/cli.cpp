#include "cli.hpp"

#include <CLI11.hpp>

#include <algorithm>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>

namespace juggling::cli {

using nlohmann::json;

namespace {

constexpr int kSpecVersion = 1;

std::string json_scalar_text(const json& value) {
  if (value.is_string()) return value.get<std::string>();
  if (value.is_number_integer()) return std::to_string(value.get<long long>());
  if (value.is_number()) return value.dump();
  throw InvalidArgument("expected a number or a rational string, got " + value.dump());
}

std::vector<std::string> json_scalar_list(const json& value, const char* key) {
  if (!value.is_array()) throw InvalidArgument(std::string("'") + key + "' must be an array");
  std::vector<std::string> out;
  for (const auto& item : value) out.push_back(json_scalar_text(item));
  return out;
}

Backend parse_backend(std::string_view name) {
  if (name == "exact") return Backend::exact;
  if (name == "float") return Backend::floating;
  throw InvalidArgument("unknown backend '" + std::string(name) + "' (expected exact or float)");
}

std::vector<int> parse_counts(const std::string& text) {
  std::vector<int> counts;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    try {
      std::size_t used = 0;
      counts.push_back(std::stoi(item, &used));
      if (used != item.size()) throw std::invalid_argument(item);
    } catch (const std::exception&) {
      throw InvalidArgument("malformed --counts entry '" + item + "'");
    }
  }
  return counts;
}

json scalar_json(const Rational& value) { return value.get_str(); }
json scalar_json(double value) { return value; }

template <class S>
json vector_json(const std::vector<S>& values) {
  json out = json::array();
  for (const auto& v : values) out.push_back(scalar_json(v));
  return out;
}

std::uint64_t default_seed() {
  if (const char* env = std::getenv("JUGGLE_SEED")) {
    try {
      return std::stoull(env);
    } catch (const std::exception&) {
      throw InvalidArgument("JUGGLE_SEED must be a nonnegative integer");
    }
  }
  return 1;
}

struct SpecInputs {
  std::string spec_file;
  std::string model;
  std::string counts;
  std::optional<int> n, alphabet, rows, cols, balls;
  std::vector<std::string> z;
  std::vector<std::string> activities;
  std::string backend;

  void attach(CLI::App* app) {
    app->add_option("--spec", spec_file, "JSON model specification file");
    app->add_option("--model", model, "msjmc | add_drop | annihilation | overwriting | several_jugglers");
    app->add_option("--counts", counts, "type counts for msjmc, e.g. 1,1,1");
    app->add_option("--n", n, "word length");
    app->add_option("--T", alphabet, "number of ball types");
    app->add_option("--r", rows, "rows (several_jugglers)");
    app->add_option("--c", cols, "columns (several_jugglers)");
    app->add_option("--balls", balls, "number of balls (several_jugglers)");
    app->add_option("--z", z, "throw weights z_1..z_{n+1}, e.g. 1/4,1/4,1/4,1/4")->delimiter(',');
    app->add_option("--activities", activities, "activities c_1..c_T (add_drop)")->delimiter(',');
    app->add_option("--backend", backend, "exact | float");
  }

  ModelSpec resolve() const {
    ModelSpec spec;
    bool have_model = false;
    if (!spec_file.empty()) {
      std::ifstream in(spec_file);
      if (!in) throw InvalidArgument("cannot open spec file '" + spec_file + "'");
      json j;
      try {
        in >> j;
      } catch (const json::parse_error& e) {
        throw InvalidArgument("spec file '" + spec_file + "' is not valid JSON: " + e.what());
      }
      spec = spec_from_json(j);
      have_model = true;
    }
    if (!model.empty()) {
      spec.model = parse_model_kind(model);
      have_model = true;
    }
    if (!have_model) throw InvalidArgument("no model given; pass --model or --spec");
    if (!counts.empty()) spec.counts = parse_counts(counts);
    if (n) spec.n = *n;
    if (alphabet) spec.alphabet = *alphabet;
    if (rows) spec.rows = *rows;
    if (cols) spec.cols = *cols;
    if (balls) spec.balls = *balls;
    if (!z.empty()) spec.z = z;
    if (!activities.empty()) spec.activities = activities;
    if (!backend.empty()) spec.backend = parse_backend(backend);
    spec.validate();
    return spec;
  }
};

json header(const ModelSpec& spec) {
  json j;
  j["spec_version"] = kSpecVersion;
  j["spec"] = spec_to_json(spec);
  return j;
}

void print_json(std::ostream& out, const json& j) { out << j.dump(2) << '\n'; }

// ---- enumerate ------------------------------------------------------------

int cmd_enumerate(const ModelSpec& spec, const std::string& format, std::ostream& out) {
  const auto states = Model<Rational>(spec).states();
  if (format == "json") {
    json j = header(spec);
    j["count"] = states.size();
    j["states"] = states;
    print_json(out, j);
  } else {
    out << "# " << states.size() << " states\n";
    for (const auto& s : states) out << s << '\n';
  }
  return kExitOk;
}

// ---- matrix ---------------------------------------------------------------

std::string csv_text(const Rational& v) { return v.get_str(); }
std::string csv_text(double v) { return scalar_to_string(v); }

template <class S>
int emit_matrix(const Model<S>& model, const std::string& format, std::ostream& out) {
  const auto P = model.matrix();
  if (format == "csv") {
    out << "state";
    for (const auto& label : P.labels()) out << ',' << label;
    out << '\n';
    const auto dense = P.dense();
    for (std::size_t i = 0; i < P.size(); ++i) {
      out << P.label(i);
      for (const auto& v : dense[i]) out << ',' << csv_text(v);
      out << '\n';
    }
  } else if (format == "dot") {
    out << "digraph chain {\n";
    for (std::size_t i = 0; i < P.size(); ++i) out << "  \"" << P.label(i) << "\";\n";
    for (std::size_t i = 0; i < P.size(); ++i) {
      for (const auto& [j, v] : P.row(i)) {
        out << "  \"" << P.label(i) << "\" -> \"" << P.label(j) << "\" [label=\"" << csv_text(v) << "\"];\n";
      }
    }
    out << "}\n";
  } else if (format == "json") {
    json j = header(model.spec());
    j["states"] = P.labels();
    json rows = json::array();
    for (const auto& row : P.dense()) rows.push_back(vector_json(row));
    j["matrix"] = rows;
    j["notes"] = model.notes();
    print_json(out, j);
  } else {
    throw InvalidArgument("unknown matrix format '" + format + "' (expected json, csv or dot)");
  }
  return kExitOk;
}

// ---- stationary -----------------------------------------------------------

template <class S>
int emit_stationary(const Model<S>& model, const std::string& method, std::ostream& out) {
  if (method != "formula" && method != "solve" && method != "both")
    throw InvalidArgument("unknown method '" + method + "' (expected formula, solve or both)");
  json j = header(model.spec());
  j["states"] = model.states();
  std::optional<Distribution<S>> formula;
  std::optional<Distribution<S>> solved;
  if (method != "solve") {
    formula = model.formula();
    j["formula"] = vector_json(formula->weights);
  }
  if (method != "formula") {
    solved = model.solve(model.matrix());
    j["solve"] = vector_json(solved->weights);
  }
  int code = kExitOk;
  if (formula && solved) {
    bool equal = formula->weights.size() == solved->weights.size();
    for (std::size_t i = 0; equal && i < formula->weights.size(); ++i) {
      equal = scalar_equal(formula->weights[i], solved->weights[i]);
    }
    j["verdict"] = equal ? "EQUAL" : "DIFFERENT";
    if (!equal) code = kExitFailed;
  }
  j["notes"] = model.notes();
  print_json(out, j);
  return code;
}

// ---- verify ---------------------------------------------------------------

int cmd_verify(const ModelSpec& spec, const std::string& suite, bool negative_control, const std::string& format,
               std::ostream& out) {
  const auto report = verify_model(spec, parse_suite(suite), negative_control);
  if (format == "text") {
    for (const auto& check : report.checks) {
      out << (check.passed ? "PASS " : "FAIL ") << check.name;
      if (!check.detail.empty()) out << " (" << check.detail << ")";
      out << '\n';
    }
    for (const auto& note : report.notes) out << "note: " << note << '\n';
    out << (report.passed() ? "ALL PASS" : "FAILED") << '\n';
  } else {
    json j = header(spec);
    j["suite"] = suite;
    j["negative_control"] = negative_control;
    json checks = json::array();
    for (const auto& check : report.checks) {
      checks.push_back({{"name", check.name}, {"passed", check.passed}, {"detail", check.detail}});
    }
    j["checks"] = checks;
    j["notes"] = report.notes;
    j["passed"] = report.passed();
    print_json(out, j);
  }
  return report.passed() ? kExitOk : kExitFailed;
}

// ---- simulate -------------------------------------------------------------

int cmd_simulate(const ModelSpec& spec, const SimulateRequest& request, std::ostream& out) {
  const auto report = simulate_model(spec, request);
  json j = header(spec);
  j["states"] = report.states;
  j["empirical"] = report.empirical.weights;
  j["exact"] = report.exact.weights;
  j["tv_distance"] = report.tv_distance;
  j["seed"] = report.seed;
  j["start"] = report.states[report.start];
  if (report.replicas) {
    j["replicas"] = *report.replicas;
    j["horizon"] = *report.horizon;
    j["tv_bound"] = *report.tv_bound;
  } else {
    j["steps"] = report.steps;
    j["burn_in"] = report.burn_in;
  }
  j["notes"] = report.notes;
  print_json(out, j);
  return kExitOk;
}

}  // namespace

ModelSpec spec_from_json(const json& j) {
  if (!j.is_object()) throw InvalidArgument("model specification must be a JSON object");
  if (j.contains("spec_version") && j.at("spec_version") != kSpecVersion)
    throw InvalidArgument("unsupported spec_version " + j.at("spec_version").dump() + " (expected 1)");
  if (!j.contains("model")) throw InvalidArgument("model specification lacks 'model'");
  ModelSpec spec;
  try {
    spec.model = parse_model_kind(j.at("model").get<std::string>());
    if (j.contains("counts")) spec.counts = j.at("counts").get<std::vector<int>>();
    if (j.contains("n")) spec.n = j.at("n").get<int>();
    if (j.contains("T")) spec.alphabet = j.at("T").get<int>();
    if (j.contains("r")) spec.rows = j.at("r").get<int>();
    if (j.contains("c")) {
      // "c" is the column count for several_jugglers and the activities otherwise.
      if (j.at("c").is_array()) {
        spec.activities = json_scalar_list(j.at("c"), "c");
      } else {
        spec.cols = j.at("c").get<int>();
      }
    }
    if (j.contains("balls")) spec.balls = j.at("balls").get<int>();
    if (j.contains("z")) spec.z = json_scalar_list(j.at("z"), "z");
    if (j.contains("activities")) spec.activities = json_scalar_list(j.at("activities"), "activities");
    if (j.contains("backend")) spec.backend = parse_backend(j.at("backend").get<std::string>());
  } catch (const json::exception& e) {
    throw InvalidArgument(std::string("malformed model specification: ") + e.what());
  }
  return spec;
}

json spec_to_json(const ModelSpec& spec) {
  json j;
  j["spec_version"] = kSpecVersion;
  j["model"] = std::string(model_name(spec.model));
  switch (spec.model) {
    case ModelKind::msjmc: j["counts"] = spec.counts; break;
    case ModelKind::several_jugglers:
      j["r"] = spec.rows;
      j["c"] = spec.cols;
      j["balls"] = spec.balls;
      break;
    default:
      j["n"] = spec.n;
      j["T"] = spec.alphabet;
  }
  if (spec.uses_params()) j["z"] = spec.z;
  if (spec.model == ModelKind::add_drop) j["activities"] = spec.activities;
  j["backend"] = spec.backend == Backend::exact ? "exact" : "float";
  return j;
}

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Multispecies juggling Markov chains: enumerate, build, solve, verify, simulate", "juggle"};
  app.require_subcommand(1);

  SpecInputs inputs[5];
  std::string enumerate_format = "text";
  std::string matrix_format = "json";
  std::string method = "both";
  std::string suite = "all";
  std::string verify_format = "json";
  bool negative_control = false;
  SimulateRequest request;
  std::optional<std::uint64_t> seed;
  std::optional<std::string> start;

  auto* enumerate = app.add_subcommand("enumerate", "list the states in canonical order");
  inputs[0].attach(enumerate);
  enumerate->add_option("--format", enumerate_format, "text | json");

  auto* matrix = app.add_subcommand("matrix", "print the transition matrix");
  inputs[1].attach(matrix);
  matrix->add_option("--format", matrix_format, "json | csv | dot");

  auto* stationary = app.add_subcommand("stationary", "closed-form and/or solved stationary law");
  inputs[2].attach(stationary);
  stationary->add_option("--method", method, "formula | solve | both");

  auto* verify = app.add_subcommand("verify", "check lumpings, ultrafast convergence, spectrum, marginals");
  inputs[3].attach(verify);
  verify->add_option("--suite", suite, "lumping | ultrafast | spectrum | marginals | all");
  verify->add_flag("--negative-control", negative_control, "use a deliberately broken projection; checks should fail");
  verify->add_option("--format", verify_format, "json | text");

  auto* simulate = app.add_subcommand("simulate", "Monte Carlo run compared with the exact stationary law");
  inputs[4].attach(simulate);
  simulate->add_option("--steps", request.steps, "number of steps of a single run");
  simulate->add_option("--seed", seed, "RNG seed (default: $JUGGLE_SEED or 1)");
  simulate->add_option("--replicas", request.replicas, "independent runs; reports the law at --horizon");
  simulate->add_option("--horizon", request.horizon, "time at which replicas are observed (default n)");
  simulate->add_option("--start", start, "start state label (default: first state)");
  simulate->add_option("--burn-in", request.burn_in, "steps discarded from the single-run average (default steps/10)");

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kExitOk : kExitInvalid;
  }

  try {
    if (enumerate->parsed()) return cmd_enumerate(inputs[0].resolve(), enumerate_format, out);
    if (matrix->parsed()) {
      const ModelSpec spec = inputs[1].resolve();
      if (spec.backend == Backend::exact) return emit_matrix(Model<Rational>(spec), matrix_format, out);
      return emit_matrix(Model<double>(spec), matrix_format, out);
    }
    if (stationary->parsed()) {
      const ModelSpec spec = inputs[2].resolve();
      if (spec.backend == Backend::exact) return emit_stationary(Model<Rational>(spec), method, out);
      return emit_stationary(Model<double>(spec), method, out);
    }
    if (verify->parsed()) return cmd_verify(inputs[3].resolve(), suite, negative_control, verify_format, out);
    if (simulate->parsed()) {
      request.seed = seed ? *seed : default_seed();
      request.start = start;
      return cmd_simulate(inputs[4].resolve(), request, out);
    }
  } catch (const ReducibleChain& e) {
    err << "error: " << e.what() << "\n";
    return kExitFailed;
  } catch (const Error& e) {
    err << "error: " << e.what() << '\n';
    return kExitInvalid;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return kExitInvalid;
  }
  return kExitInvalid;
}

}  // namespace juggling::cli
