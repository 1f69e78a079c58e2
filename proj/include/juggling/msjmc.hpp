#pragma once

// Multispecies juggling chain with conserved type counts: a caught ball
// is rethrown and may bump a lighter ball upward, which may bump an even
// lighter one, and so on until a ball lands on top.

#include <compare>
#include <string>
#include <vector>

#include "juggling/chain.hpp"
#include "juggling/combinatorics.hpp"

namespace juggling::msjmc {

// Positions (a(1), ..., a(k)) with a(1) = 1, a(k) = n+1 and strictly
// increasing letters along the sequence (w_{n+1} counts as infinity).
using BumpSequence = std::vector<int>;

// All bumping sequences for w, in lexicographic order.
std::vector<BumpSequence> bumping_sequences(const Word& w);

// Throws InvalidArgument unless a is a bumping sequence for w.
void validate_bump(const Word& w, const BumpSequence& a);

// w^a: position a(l)-1 receives w_{a(l-1)}; everything else shifts left.
Word apply_bump(const Word& w, const BumpSequence& a);

// Q_{w,a}(i) for 2 <= i <= k. Throws DegenerateParams on a zero y.
template <class S>
S bump_factor(const Word& w, const BumpSequence& a, int i, const ParamSet<S>& p);

// Product of Q_{w,a}(i) over i in [from, k].
template <class S>
S bump_tail_probability(const Word& w, const BumpSequence& a, int from, const ParamSet<S>& p);

template <class S>
S transition_prob(const Word& w, const BumpSequence& a, const ParamSet<S>& p);

// Unnormalized stationary weight: prod_i y_{E_w(i)}.
template <class S>
S stationary_weight(const Word& w, const ParamSet<S>& p);

// Z = prod_i h_{n_i}(y_1, ..., y_{n - n_1 - ... - n_i + 1}).
template <class S>
S partition_function(const TypeCounts& counts, const ParamSet<S>& p);

template <class S>
ChainMatrix<S> build_chain(const TypeCounts& counts, const ParamSet<S>& p);

// Normalized closed-form stationary law in enumeration order.
template <class S>
Distribution<S> stationary_formula(const TypeCounts& counts, const ParamSet<S>& p);

// ---- enriched chain ------------------------------------------------------

// A word together with an auxiliary word v, 1 <= v_i <= E_w(i).
struct EnrichedState {
  Word w;
  std::vector<int> v;

  auto operator<=>(const EnrichedState&) const = default;
};

// "w|v", e.g. "132132|412211".
std::string to_string(const EnrichedState& s);

void validate_enriched(const EnrichedState& s);

// Every auxiliary word of w, lexicographically.
std::vector<std::vector<int>> auxiliary_words(const Word& w);

// All (w, v) pairs, ordered lexicographically on (w, v).
std::vector<EnrichedState> enumerate_enriched(const TypeCounts& counts);

// Auxiliary-word update shared by every word-based enriched chain: the
// bumped positions get E_{w'}(i), the others shift left.
std::vector<int> updated_auxiliary(const std::vector<int>& v, const Word& next, const BumpSequence& a);

EnrichedState enriched_step(const EnrichedState& s, const BumpSequence& a);

// prod_i z_{v_i}; same normalization as the base chain.
template <class S>
S enriched_stationary_weight(const EnrichedState& s, const ParamSet<S>& p);

template <class S>
ChainMatrix<S> build_enriched_chain(const TypeCounts& counts, const ParamSet<S>& p);

// Forget-the-auxiliary-word projection onto the base chain.
LumpingMap forget_auxiliary(const std::vector<EnrichedState>& enriched, const std::vector<Word>& base);

struct Predecessors {
  BumpSequence bump;        // the unique bumping sequence (its value set A)
  Word source;              // the unique source word
  std::vector<int> fixed_v; // v_j for j not in A; 0 at free positions
  std::vector<int> free_positions;  // A \ {n+1}: v_j ranges over 1..E_w(j)
};

// Reverse induction over positions n, n-1, ..., 2 deciding membership in
// A from the successor state alone. Throws InconsistentState if the
// reconstruction does not lead back to the given state.
Predecessors reconstruct_predecessor(const EnrichedState& next);

// Expands the free positions into the full list of predecessor states.
std::vector<EnrichedState> expand_predecessors(const Predecessors& pred);

}  // namespace juggling::msjmc
