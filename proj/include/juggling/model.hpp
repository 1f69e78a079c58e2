#pragma once

// One entry point per model family, shared by the command-line tool and
// the Python bindings: state lists, matrices, stationary laws,
// verification suites and simulation reports.

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "juggling/chain.hpp"
#include "juggling/combinatorics.hpp"
#include "juggling/scalar.hpp"

namespace juggling {

enum class ModelKind { msjmc, add_drop, annihilation, overwriting, several_jugglers };

std::string_view model_name(ModelKind kind);
ModelKind parse_model_kind(std::string_view name);

struct ModelSpec {
  ModelKind model = ModelKind::msjmc;
  std::vector<int> counts;  // msjmc
  int n = 0;                // add_drop, annihilation, overwriting
  int alphabet = 0;
  int rows = 0;             // several_jugglers
  int cols = 0;
  int balls = 0;
  std::vector<std::string> z;           // empty: uniform
  std::vector<std::string> activities;  // add_drop; empty: all ones
  Backend backend = Backend::exact;

  // Throws InvalidArgument describing the first shape problem found.
  void validate() const;
  // Length of the words (n), or 0 for several_jugglers.
  int word_length() const;
  bool uses_params() const { return model != ModelKind::several_jugglers; }
};

template <class S>
class Model {
 public:
  explicit Model(ModelSpec spec);

  const ModelSpec& spec() const { return spec_; }
  // Only for models with parameters.
  const ParamSet<S>& params() const;
  // Adjustments made while reading the spec (defaults, rescaling).
  const std::vector<std::string>& notes() const { return notes_; }

  std::vector<std::string> states() const;
  ChainMatrix<S> matrix() const;
  // Closed form in state order, normalized (tableau sum for overwriting).
  Distribution<S> formula() const;
  // Linear solve of pi P = pi: exact elimination or LU with pivoting.
  Distribution<S> solve(const ChainMatrix<S>& P) const;

 private:
  ModelSpec spec_;
  std::optional<ParamSet<S>> params_;
  std::vector<std::string> notes_;
};

extern template class Model<Rational>;
extern template class Model<double>;

// ---- verification --------------------------------------------------------

enum class Suite { lumping, ultrafast, spectrum, marginals, all };

Suite parse_suite(std::string_view name);

struct CheckResult {
  std::string name;
  bool passed = false;
  std::string detail;
};

struct VerifyReport {
  std::vector<CheckResult> checks;
  std::vector<std::string> notes;

  bool passed() const;
};

inline constexpr std::size_t kVerifyStateCap = 5000;
inline constexpr std::size_t kVerifyEnrichedCap = 50000;

// Runs in exact arithmetic whatever the backend. With negative_control the
// lumping checks use a deliberately broken projection (two classes swapped)
// and are expected to fail. Throws SizeCapExceeded above the caps.
VerifyReport verify_model(const ModelSpec& spec, Suite suite, bool negative_control = false);

// ---- simulation ----------------------------------------------------------

struct SimulateRequest {
  std::size_t steps = 0;
  std::uint64_t seed = 0;
  // Replica mode: law of X_horizon over independent runs.
  std::optional<std::size_t> replicas;
  std::optional<std::size_t> horizon;  // defaults to n
  std::optional<std::string> start;    // state label; first state by default
  std::optional<std::size_t> burn_in;
};

struct SimulateReport {
  std::vector<std::string> states;
  Distribution<double> empirical;
  Distribution<double> exact;
  double tv_distance = 0;
  std::uint64_t seed = 0;
  std::size_t start = 0;
  std::size_t steps = 0;
  std::size_t burn_in = 0;
  std::optional<std::size_t> replicas;
  std::optional<std::size_t> horizon;
  // 3 sqrt(|S| / R) in replica mode.
  std::optional<double> tv_bound;
  std::vector<std::string> notes;
};

SimulateReport simulate_model(const ModelSpec& spec, const SimulateRequest& request);

}  // namespace juggling
