#pragma once

// Generic finite Markov chain machinery: assembling a transition matrix
// from a model's transition function, exact stationary solves, lumping
// checks, matrix-power (ultrafast / nilpotency) checks, Monte Carlo.

#include <cstddef>
#include <cstdint>
#include <functional>
#include <map>
#include <optional>
#include <random>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "juggling/errors.hpp"
#include "juggling/scalar.hpp"

namespace juggling {

// Sparse row: (column, probability) pairs sorted by column, no zeros.
template <class S>
using SparseRow = std::vector<std::pair<std::size_t, S>>;

template <class S>
class ChainMatrix {
 public:
  ChainMatrix() = default;
  // Validates nonnegativity and unit row sums.
  ChainMatrix(std::vector<std::string> labels, std::vector<SparseRow<S>> rows);

  std::size_t size() const { return rows_.size(); }
  const std::vector<std::string>& labels() const { return labels_; }
  const std::string& label(std::size_t i) const { return labels_[i]; }
  const SparseRow<S>& row(std::size_t i) const { return rows_[i]; }
  const std::vector<SparseRow<S>>& rows() const { return rows_; }

  S at(std::size_t i, std::size_t j) const;
  std::vector<std::vector<S>> dense() const;
  std::optional<std::size_t> index_of(const std::string& label) const;
  std::size_t nonzeros() const;

 private:
  std::vector<std::string> labels_;
  std::vector<SparseRow<S>> rows_;
};

extern template class ChainMatrix<Rational>;
extern template class ChainMatrix<double>;

// Assembles a ChainMatrix from an ordered state list and a transition
// function returning (successor, probability) pairs. Repeated successors
// are summed; zero-probability entries are dropped. `State` needs
// operator< and a to_string() findable by ADL.
template <class S, class State, class TransitionFn>
ChainMatrix<S> build_matrix(std::span<const State> states, TransitionFn&& transition_fn) {
  std::map<State, std::size_t> index;
  std::vector<std::string> labels;
  labels.reserve(states.size());
  for (std::size_t i = 0; i < states.size(); ++i) {
    if (!index.emplace(states[i], i).second) throw InvalidArgument("duplicate state " + to_string(states[i]));
    labels.push_back(to_string(states[i]));
  }
  std::vector<SparseRow<S>> rows(states.size());
  for (std::size_t i = 0; i < states.size(); ++i) {
    std::map<std::size_t, S> acc;
    for (auto&& [next, prob] : transition_fn(states[i])) {
      auto it = index.find(next);
      if (it == index.end()) {
        throw UnknownSuccessor("successor " + to_string(next) + " of " + labels[i] + " is not in the state list");
      }
      auto [slot, inserted] = acc.try_emplace(it->second, prob);
      if (!inserted) slot->second += prob;
    }
    for (auto& [j, p] : acc) {
      if (!scalar_is_zero(p)) rows[i].emplace_back(j, std::move(p));
    }
  }
  return ChainMatrix<S>(std::move(labels), std::move(rows));
}

template <class S>
struct Distribution {
  std::vector<S> weights;

  std::size_t size() const { return weights.size(); }
  S total() const;
  // Copy scaled to total mass 1; throws DegenerateParams on zero mass.
  Distribution normalized() const;
};

extern template struct Distribution<Rational>;
extern template struct Distribution<double>;

// Enriched-state index -> base-state index. Total and onto.
struct LumpingMap {
  std::vector<std::size_t> image;
  std::size_t base_size = 0;

  static LumpingMap identity(std::size_t size);
  void validate() const;
};

// Builds a LumpingMap from a projection function on state objects.
template <class Enriched, class Base, class ProjectFn>
LumpingMap make_lumping(std::span<const Enriched> enriched, std::span<const Base> base, ProjectFn&& project) {
  std::map<Base, std::size_t> index;
  for (std::size_t i = 0; i < base.size(); ++i) index.emplace(base[i], i);
  LumpingMap map;
  map.base_size = base.size();
  map.image.reserve(enriched.size());
  for (const Enriched& state : enriched) {
    const auto it = index.find(project(state));
    if (it == index.end()) throw UnknownSuccessor("lumping image of " + to_string(state) + " is not a base state");
    map.image.push_back(it->second);
  }
  map.validate();
  return map;
}

template <class S>
struct LumpingCounterexample {
  std::size_t enriched_state = 0;
  std::size_t base_class = 0;
  S enriched_mass{};  // sum over the class of P~[x][y]
  S base_mass{};      // P[f(x)][class]
};

template <class S>
struct LumpingReport {
  bool holds = true;
  std::optional<LumpingCounterexample<S>> counterexample;
};

template <class S>
LumpingReport<S> verify_lumping(const ChainMatrix<S>& enriched, const LumpingMap& map, const ChainMatrix<S>& base);

template <class S>
Distribution<S> project_distribution(const Distribution<S>& enriched, const LumpingMap& map);

// Structural checks on the nonzero pattern.
template <class S>
bool is_irreducible(const ChainMatrix<S>& P);
// gcd of cycle lengths; 0 for a chain that is not irreducible.
template <class S>
std::size_t chain_period(const ChainMatrix<S>& P);

// pi P == pi (exactly for rationals, within tolerance for doubles).
template <class S>
bool is_stationary(const ChainMatrix<S>& P, const Distribution<S>& pi);

// Unique normalized solution of pi P = pi by exact sparse elimination.
// Throws ReducibleChain when the nonzero pattern is not strongly connected.
Distribution<Rational> stationary_exact(const ChainMatrix<Rational>& P);

// Dense LU with partial pivoting; float backend only.
Distribution<double> stationary_solve(const ChainMatrix<double>& P);

// Power iteration cross-check for the float backend. Iterates on the lazy
// chain (I + P) / 2, which has the same stationary law and no periodicity.
Distribution<double> stationary_power(const ChainMatrix<double>& P, double tolerance = 1e-13,
                                      std::size_t max_iterations = 1'000'000);

template <class S>
SparseRow<S> row_times_matrix(const SparseRow<S>& row, const ChainMatrix<S>& P);

// P^m represented by its distinct rows: row x of P^m is rows[row_of[x]].
struct MatrixPower {
  std::vector<SparseRow<Rational>> rows;
  std::vector<std::size_t> row_of;
};

MatrixPower matrix_power(const ChainMatrix<Rational>& P, int m);

struct UltrafastResult {
  bool holds = false;
  // The common row of P^m when all rows coincide.
  std::optional<Distribution<Rational>> stationary;
};

// True iff every row of P^m is the same.
UltrafastResult ultrafast_check(const ChainMatrix<Rational>& P, int m);

// True iff P^{n+1} == P^n.
bool nilpotency_check(const ChainMatrix<Rational>& P, int n);

template <class S>
S total_variation(const Distribution<S>& p, const Distribution<S>& q);

ChainMatrix<double> to_floating(const ChainMatrix<Rational>& P);
Distribution<double> to_floating(const Distribution<Rational>& d);

// splitmix64 finalizer; replica r of a run seeded with s uses
// mix_seed(s + r).
std::uint64_t mix_seed(std::uint64_t x);

// Uniform double in [0, 1) from the top 53 bits, identical on every
// platform for a given engine state.
double uniform_unit(std::mt19937_64& rng);

struct SimulationOptions {
  // Visits at times t >= burn_in are counted (time 0 is the start).
  // Defaults to steps / 10 when unset.
  std::optional<std::size_t> burn_in;
  bool record_trajectory = true;
};

struct SimulationResult {
  std::vector<std::size_t> trajectory;  // states at times 0..steps
  Distribution<double> empirical;
  std::uint64_t seed = 0;
  std::size_t burn_in = 0;
};

// Draws successors of `state` for a chain given as a sampler.
using TransitionSampler = std::function<std::size_t(std::size_t state, std::mt19937_64& rng)>;

SimulationResult simulate(const ChainMatrix<double>& P, std::size_t start, std::size_t steps, std::uint64_t seed,
                          const SimulationOptions& options = {});
SimulationResult simulate(std::size_t state_count, const TransitionSampler& sampler, std::size_t start,
                          std::size_t steps, std::uint64_t seed, const SimulationOptions& options = {});

// Law of X_horizon estimated from independent replicas started at `start`.
Distribution<double> simulate_replicas(const ChainMatrix<double>& P, std::size_t start, std::size_t horizon,
                                       std::size_t replicas, std::uint64_t seed);

// Samples one successor of `state` from a row.
std::size_t sample_row(const SparseRow<double>& row, std::mt19937_64& rng);

}  // namespace juggling
