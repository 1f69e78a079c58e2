#include "juggling/model.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "juggling/fluctuating.hpp"
#include "juggling/jugglers.hpp"
#include "juggling/msjmc.hpp"
#include "juggling/overwriting.hpp"

namespace juggling {

std::string_view model_name(ModelKind kind) {
  switch (kind) {
    case ModelKind::msjmc: return "msjmc";
    case ModelKind::add_drop: return "add_drop";
    case ModelKind::annihilation: return "annihilation";
    case ModelKind::overwriting: return "overwriting";
    case ModelKind::several_jugglers: return "several_jugglers";
  }
  return "?";
}

ModelKind parse_model_kind(std::string_view name) {
  for (ModelKind kind : {ModelKind::msjmc, ModelKind::add_drop, ModelKind::annihilation, ModelKind::overwriting,
                         ModelKind::several_jugglers}) {
    if (name == model_name(kind)) return kind;
  }
  throw InvalidArgument("unknown model '" + std::string(name) +
                        "' (expected msjmc, add_drop, annihilation, overwriting or several_jugglers)");
}

int ModelSpec::word_length() const {
  switch (model) {
    case ModelKind::msjmc: return std::accumulate(counts.begin(), counts.end(), 0);
    case ModelKind::several_jugglers: return 0;
    default: return n;
  }
}

void ModelSpec::validate() const {
  const std::string name(model_name(model));
  if (model == ModelKind::several_jugglers) {
    if (rows < 1 || cols < 1) throw InvalidArgument("several_jugglers needs --r >= 1 and --c >= 1");
    if (balls < 0 || balls > rows * cols) throw InvalidArgument("several_jugglers needs 0 <= --balls <= r*c");
    if (!z.empty() || !activities.empty()) throw InvalidArgument("several_jugglers takes no z or activities");
    return;
  }
  if (model == ModelKind::msjmc) {
    if (counts.empty()) throw InvalidArgument("msjmc needs --counts, e.g. 1,1,1");
    for (int c : counts) {
      if (c < 1) throw InvalidArgument("msjmc counts must be positive");
    }
  } else {
    if (n < 1) throw InvalidArgument(name + " needs --n >= 1");
    const int min_alphabet = model == ModelKind::overwriting ? 2 : 1;
    if (alphabet < min_alphabet)
      throw InvalidArgument(name + " needs --T >= " + std::to_string(min_alphabet));
  }
  const int want = word_length() + 1;
  if (!z.empty() && static_cast<int>(z.size()) != want)
    throw InvalidArgument(name + ": expected " + std::to_string(want) + " z values (n+1), got " + std::to_string(z.size()));
  if (model != ModelKind::add_drop && !activities.empty()) throw InvalidArgument("activities apply to add_drop only");
  if (model == ModelKind::add_drop && !activities.empty() && static_cast<int>(activities.size()) != alphabet)
    throw InvalidArgument("add_drop: expected " + std::to_string(alphabet) + " activities, got " +
                          std::to_string(activities.size()));
}

template <class S>
Model<S>::Model(ModelSpec spec) : spec_(std::move(spec)) {
  spec_.validate();
  if (!spec_.uses_params()) return;
  const int size = spec_.word_length() + 1;
  std::vector<S> z;
  if (spec_.z.empty()) {
    for (int i = 0; i < size; ++i) z.push_back(ScalarTraits<S>::ratio(1, size));
    notes_.push_back("z defaulted to uniform 1/" + std::to_string(size));
  } else {
    for (const auto& text : spec_.z) z.push_back(parse_scalar<S>(text));
  }
  std::vector<S> c;
  if (spec_.model == ModelKind::add_drop) {
    if (spec_.activities.empty()) {
      c.assign(static_cast<std::size_t>(spec_.alphabet), ScalarTraits<S>::one());
      notes_.push_back("activities defaulted to 1");
    } else {
      for (const auto& text : spec_.activities) c.push_back(parse_scalar<S>(text));
    }
  }
  ParamSet<S> p(std::move(z), std::move(c));
  if (spec_.model == ModelKind::annihilation || spec_.model == ModelKind::overwriting) {
    if constexpr (ScalarTraits<S>::backend == Backend::floating) {
      if (!p.normalized()) {
        notes_.push_back("z rescaled to sum to 1 (sum was " + scalar_to_string(p.total()) + ")");
        p = p.rescaled();
      }
    } else {
      p.require_normalized(model_name(spec_.model));
    }
  }
  params_.emplace(std::move(p));
}

template <class S>
const ParamSet<S>& Model<S>::params() const {
  if (!params_) throw InvalidArgument(std::string(model_name(spec_.model)) + " has no parameters");
  return *params_;
}

namespace {

template <class T>
std::vector<std::string> labels_of(const std::vector<T>& states) {
  std::vector<std::string> out;
  out.reserve(states.size());
  for (const auto& s : states) out.push_back(to_string(s));
  return out;
}

fluctuating::Kind fluctuating_kind(ModelKind kind) {
  return kind == ModelKind::add_drop ? fluctuating::Kind::add_drop : fluctuating::Kind::annihilation;
}

}  // namespace

template <class S>
std::vector<std::string> Model<S>::states() const {
  switch (spec_.model) {
    case ModelKind::msjmc: return labels_of(enumerate_multiset_words(TypeCounts(spec_.counts)));
    case ModelKind::several_jugglers: return labels_of(jugglers::enumerate_arrays(spec_.rows, spec_.cols, spec_.balls));
    default: return labels_of(enumerate_alphabet_words(spec_.n, spec_.alphabet));
  }
}

template <class S>
ChainMatrix<S> Model<S>::matrix() const {
  switch (spec_.model) {
    case ModelKind::msjmc: return msjmc::build_chain(TypeCounts(spec_.counts), params());
    case ModelKind::add_drop:
    case ModelKind::annihilation:
      return fluctuating::build_chain(fluctuating_kind(spec_.model), spec_.n, spec_.alphabet, params());
    case ModelKind::overwriting: return overwriting::build_chain(spec_.n, spec_.alphabet, params());
    case ModelKind::several_jugglers: return jugglers::build_chain<S>(spec_.rows, spec_.cols, spec_.balls);
  }
  throw InvalidArgument("unknown model");
}

template <class S>
Distribution<S> Model<S>::formula() const {
  switch (spec_.model) {
    case ModelKind::msjmc: return msjmc::stationary_formula(TypeCounts(spec_.counts), params());
    case ModelKind::add_drop:
    case ModelKind::annihilation:
      return fluctuating::stationary_formula(fluctuating_kind(spec_.model), spec_.n, spec_.alphabet, params());
    case ModelKind::overwriting: return overwriting::stationary_formula(spec_.n, spec_.alphabet, params());
    case ModelKind::several_jugglers: return jugglers::stationary_formula<S>(spec_.rows, spec_.cols, spec_.balls);
  }
  throw InvalidArgument("unknown model");
}

template <class S>
Distribution<S> Model<S>::solve(const ChainMatrix<S>& P) const {
  if constexpr (ScalarTraits<S>::backend == Backend::exact) {
    return stationary_exact(P);
  } else {
    return stationary_solve(P);
  }
}

template class Model<Rational>;
template class Model<double>;

// ---- verification --------------------------------------------------------

Suite parse_suite(std::string_view name) {
  if (name == "lumping") return Suite::lumping;
  if (name == "ultrafast") return Suite::ultrafast;
  if (name == "spectrum") return Suite::spectrum;
  if (name == "marginals") return Suite::marginals;
  if (name == "all") return Suite::all;
  throw InvalidArgument("unknown suite '" + std::string(name) + "' (expected lumping, ultrafast, spectrum, marginals or all)");
}

bool VerifyReport::passed() const {
  return std::all_of(checks.begin(), checks.end(), [](const CheckResult& c) { return c.passed; });
}

namespace {

void require_cap(std::size_t size, std::size_t cap, const std::string& what) {
  if (size > cap) {
    throw SizeCapExceeded(what + " has " + std::to_string(size) + " states; verification is capped at " +
                          std::to_string(cap) + " (choose smaller parameters)");
  }
}

// Swaps the classes of the first enriched state and the first state outside
// its class; the result is still onto but no longer a lumping in general.
LumpingMap corrupt(LumpingMap map) {
  for (std::size_t j = 1; j < map.image.size(); ++j) {
    if (map.image[j] != map.image[0]) {
      std::swap(map.image[0], map.image[j]);
      break;
    }
  }
  return map;
}

CheckResult lumping_check(const std::string& name, const ChainMatrix<Rational>& enriched, const LumpingMap& map,
                          const ChainMatrix<Rational>& base) {
  const auto report = verify_lumping(enriched, map, base);
  CheckResult result{name, report.holds, ""};
  if (report.counterexample) {
    const auto& ce = *report.counterexample;
    result.detail = "state " + enriched.label(ce.enriched_state) + " sends mass " + ce.enriched_mass.get_str() +
                    " to class " + base.label(ce.base_class) + ", expected " + ce.base_mass.get_str();
  }
  return result;
}

Distribution<Rational> normalized_weights(std::vector<Rational> weights) {
  return Distribution<Rational>{std::move(weights)}.normalized();
}

CheckResult equality_check(const std::string& name, const Distribution<Rational>& got, const Distribution<Rational>& want,
                           const std::vector<std::string>& labels) {
  for (std::size_t i = 0; i < want.weights.size(); ++i) {
    if (got.weights[i] != want.weights[i]) {
      return {name, false, "differs at " + labels[i] + ": " + got.weights[i].get_str() + " vs " + want.weights[i].get_str()};
    }
  }
  return {name, true, ""};
}

void word_enriched_lumping(const Model<Rational>& model, const ChainMatrix<Rational>& base, const Distribution<Rational>& formula,
                           bool negative_control, VerifyReport& report) {
  const auto& spec = model.spec();
  const auto& p = model.params();
  std::vector<msjmc::EnrichedState> enriched;
  std::vector<Word> words;
  ChainMatrix<Rational> E;
  std::vector<Rational> weights;
  if (spec.model == ModelKind::msjmc) {
    const TypeCounts counts(spec.counts);
    enriched = msjmc::enumerate_enriched(counts);
    require_cap(enriched.size(), kVerifyEnrichedCap, "enriched chain");
    words = enumerate_multiset_words(counts);
    E = msjmc::build_enriched_chain(counts, p);
    for (const auto& s : enriched) weights.push_back(msjmc::enriched_stationary_weight(s, p));
  } else {
    const auto kind = fluctuating_kind(spec.model);
    enriched = fluctuating::enumerate_enriched(spec.n, spec.alphabet);
    require_cap(enriched.size(), kVerifyEnrichedCap, "enriched chain");
    words = enumerate_alphabet_words(spec.n, spec.alphabet);
    E = fluctuating::build_enriched_chain(kind, spec.n, spec.alphabet, p);
    for (const auto& s : enriched) weights.push_back(fluctuating::enriched_stationary_weight(kind, s, p));
  }
  LumpingMap map = msjmc::forget_auxiliary(enriched, words);
  if (negative_control) map = corrupt(map);
  report.checks.push_back(lumping_check("enriched chain lumps onto base chain", E, map, base));
  const auto pi = normalized_weights(std::move(weights));
  report.checks.push_back({"enriched product weights are stationary", is_stationary(E, pi), ""});
  report.checks.push_back(
      equality_check("projected enriched law equals base formula", project_distribution(pi, map), formula, base.labels()));
}

void overwriting_lumping(const Model<Rational>& model, const ChainMatrix<Rational>& base, const Distribution<Rational>& formula,
                         bool negative_control, VerifyReport& report) {
  const auto& spec = model.spec();
  const auto& p = model.params();
  const auto tableaux = overwriting::enumerate_tableaux(spec.n, spec.alphabet);
  require_cap(tableaux.size(), kVerifyEnrichedCap, "tableau chain");
  const auto words = enumerate_alphabet_words(spec.n, spec.alphabet);
  const auto TP = overwriting::build_tableau_chain(spec.n, spec.alphabet, p);
  LumpingMap tmap = overwriting::tableau_lumping(tableaux, words);
  if (negative_control) tmap = corrupt(tmap);
  report.checks.push_back(lumping_check("tableau chain lumps onto word chain", TP, tmap, base));
  Distribution<Rational> pi;
  for (const auto& v : tableaux) pi.weights.push_back(overwriting::tableau_stationary(v, p));
  report.checks.push_back({"tableau law is stationary", is_stationary(TP, pi), "total mass " + pi.total().get_str()});
  report.checks.push_back(
      equality_check("projected tableau law equals exact stationary", project_distribution(pi, tmap), formula, base.labels()));
  try {
    overwriting::matrix_state_count(spec.n, spec.alphabet);
  } catch (const SizeCapExceeded& e) {
    report.notes.push_back(std::string("matrix chain skipped: ") + e.what());
    return;
  }
  const auto matrices = overwriting::enumerate_matrices(spec.n, spec.alphabet);
  const auto MP = overwriting::build_matrix_chain(spec.n, spec.alphabet, p);
  LumpingMap mmap = overwriting::matrix_lumping(matrices, tableaux);
  if (negative_control) mmap = corrupt(mmap);
  report.checks.push_back(lumping_check("matrix chain lumps onto tableau chain", MP, mmap, TP));
  Distribution<Rational> tilde;
  for (const auto& m : matrices) tilde.weights.push_back(overwriting::matrix_stationary_weight(m, p));
  report.checks.push_back(equality_check("fiber sums of the matrix law equal tableau law", project_distribution(tilde, mmap), pi,
                                         TP.labels()));
}

void juggler_counts(const ModelSpec& spec, bool negative_control, VerifyReport& report) {
  const auto arrays = jugglers::enumerate_arrays(spec.rows, spec.cols, spec.balls);
  CheckResult result{"arc enrichment counts equal Pochhammer weights", true, ""};
  for (std::size_t i = 0; i < arrays.size(); ++i) {
    const std::uint64_t count = jugglers::count_arc_enrichments(arrays[i]) + (negative_control && i == 0 ? 1 : 0);
    const std::uint64_t weight = jugglers::juggler_stationary_weight(arrays[i]);
    if (count != weight) {
      result = {result.name, false,
                "state " + arrays[i].to_string() + ": " + std::to_string(count) + " enrichments, weight " + std::to_string(weight)};
      break;
    }
  }
  report.checks.push_back(result);
}

struct OverwritingChains {
  ChainMatrix<Rational> tableau;
  std::optional<ChainMatrix<Rational>> matrix;
};

OverwritingChains overwriting_chains(const Model<Rational>& model, VerifyReport& report) {
  const auto& spec = model.spec();
  require_cap(overwriting::enumerate_tableaux(spec.n, spec.alphabet).size(), kVerifyEnrichedCap, "tableau chain");
  OverwritingChains chains{overwriting::build_tableau_chain(spec.n, spec.alphabet, model.params()), std::nullopt};
  try {
    overwriting::matrix_state_count(spec.n, spec.alphabet);
    chains.matrix = overwriting::build_matrix_chain(spec.n, spec.alphabet, model.params());
  } catch (const SizeCapExceeded& e) {
    report.notes.push_back(std::string("matrix chain skipped: ") + e.what());
  }
  return chains;
}

}  // namespace

VerifyReport verify_model(const ModelSpec& input, Suite suite, bool negative_control) {
  ModelSpec spec = input;
  VerifyReport report;
  if (spec.backend == Backend::floating) {
    spec.backend = Backend::exact;
    report.notes.push_back("verification runs in exact arithmetic; z read as exact rationals");
  }
  const Model<Rational> model(spec);
  for (const auto& note : model.notes()) report.notes.push_back(note);
  require_cap(model.states().size(), kVerifyStateCap, "base chain");
  const auto P = model.matrix();
  const auto formula = model.formula();

  const bool irreducible = is_irreducible(P);
  report.checks.push_back({"irreducible", irreducible, ""});
  if (irreducible) {
    const std::size_t period = chain_period(P);
    report.checks.push_back({"aperiodic", period == 1, "period " + std::to_string(period)});
    report.checks.push_back(equality_check("stationary formula equals exact solve", formula, stationary_exact(P), P.labels()));
  }

  const bool is_overwriting = spec.model == ModelKind::overwriting;
  const auto wants = [&](Suite s) { return suite == Suite::all || suite == s; };
  if (wants(Suite::lumping)) {
    switch (spec.model) {
      case ModelKind::msjmc:
      case ModelKind::add_drop:
      case ModelKind::annihilation: word_enriched_lumping(model, P, formula, negative_control, report); break;
      case ModelKind::overwriting: overwriting_lumping(model, P, formula, negative_control, report); break;
      case ModelKind::several_jugglers: juggler_counts(spec, negative_control, report); break;
    }
  }
  const bool wants_tower = wants(Suite::ultrafast) || wants(Suite::spectrum);
  if (wants_tower && !is_overwriting) {
    report.notes.push_back("ultrafast and spectrum suites apply to the overwriting model only");
  }
  if (wants_tower && is_overwriting) {
    const auto chains = overwriting_chains(model, report);
    std::vector<std::pair<std::string, const ChainMatrix<Rational>*>> tower{{"word", &P}, {"tableau", &chains.tableau}};
    if (chains.matrix) tower.emplace_back("matrix", &*chains.matrix);
    const int n = spec.n;
    for (const auto& [name, chain] : tower) {
      if (wants(Suite::ultrafast)) {
        const auto uf = ultrafast_check(*chain, n);
        report.checks.push_back({name + " chain: P^" + std::to_string(n) + " has identical rows", uf.holds, ""});
      }
      if (wants(Suite::spectrum)) {
        report.checks.push_back({name + " chain: P^" + std::to_string(n + 1) + " = P^" + std::to_string(n),
                                 nilpotency_check(*chain, n), ""});
      }
    }
  }
  if (wants(Suite::marginals)) {
    if (!is_overwriting) {
      report.notes.push_back("marginals suite applies to the overwriting model only");
    } else {
      const auto words = enumerate_alphabet_words(spec.n, spec.alphabet);
      const auto pi = stationary_exact(P);
      const auto& p = model.params();
      const int n = spec.n;
      const int T = spec.alphabet;
      CheckResult last{"last-site marginal", true, ""};
      for (int j = 1; j <= T; ++j) {
        Rational mass = 0;
        for (std::size_t a = 0; a < words.size(); ++a) {
          if (words[a][n] == j) mass += pi.weights[a];
        }
        const Rational want = overwriting::last_site_marginal(j, n, T, p);
        if (mass != want) last = {last.name, false, "j=" + std::to_string(j) + ": " + mass.get_str() + " vs " + want.get_str()};
      }
      report.checks.push_back(last);
      if (n >= 2) {
        CheckResult joint{"joint last-two marginal", true, ""};
        for (int i = 1; i <= T; ++i) {
          for (int j = 1; j <= T; ++j) {
            Rational mass = 0;
            for (std::size_t a = 0; a < words.size(); ++a) {
              if (words[a][n - 1] == i && words[a][n] == j) mass += pi.weights[a];
            }
            const Rational want = overwriting::joint_last_two_marginal(i, j, n, T, p);
            if (mass != want) {
              joint = {joint.name, false,
                       "(i,j)=(" + std::to_string(i) + "," + std::to_string(j) + "): " + mass.get_str() + " vs " + want.get_str()};
            }
          }
        }
        report.checks.push_back(joint);
      } else {
        report.notes.push_back("joint marginal needs n >= 2");
      }
    }
  }
  return report;
}

// ---- simulation ----------------------------------------------------------

SimulateReport simulate_model(const ModelSpec& spec, const SimulateRequest& request) {
  SimulateReport report;
  ChainMatrix<double> P;
  if (spec.backend == Backend::exact) {
    const Model<Rational> model(spec);
    report.notes = model.notes();
    P = to_floating(model.matrix());
    report.exact = to_floating(model.formula());
  } else {
    const Model<double> model(spec);
    report.notes = model.notes();
    P = model.matrix();
    report.exact = model.formula();
  }
  report.states = P.labels();
  if (request.start) {
    const auto idx = P.index_of(*request.start);
    if (!idx) throw InvalidArgument("unknown start state '" + *request.start + "'");
    report.start = *idx;
  }
  report.seed = request.seed;
  if (request.replicas) {
    if (*request.replicas == 0) throw InvalidArgument("--replicas must be positive");
    const std::size_t horizon = request.horizon.value_or(
        static_cast<std::size_t>(spec.model == ModelKind::several_jugglers ? spec.rows : spec.word_length()));
    report.replicas = request.replicas;
    report.horizon = horizon;
    report.empirical = simulate_replicas(P, report.start, horizon, *request.replicas, request.seed);
    report.tv_bound = 3.0 * std::sqrt(static_cast<double>(P.size()) / static_cast<double>(*request.replicas));
  } else {
    SimulationOptions options;
    options.burn_in = request.burn_in;
    options.record_trajectory = false;
    const auto result = simulate(P, report.start, request.steps, request.seed, options);
    report.steps = request.steps;
    report.burn_in = result.burn_in;
    report.empirical = result.empirical;
  }
  report.tv_distance = total_variation(report.empirical, report.exact);
  return report;
}

}  // namespace juggling
