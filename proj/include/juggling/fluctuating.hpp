#pragma once

// Add-drop and annihilation chains on all words of length n over
// {1..T}: the caught ball is discarded, a ball of a freely chosen type j
// is thrown instead and starts a bumping sequence in the word j w_2..w_n.

#include <vector>

#include "juggling/chain.hpp"
#include "juggling/combinatorics.hpp"
#include "juggling/msjmc.hpp"

namespace juggling::fluctuating {

enum class Kind { add_drop, annihilation };

// Type j of the thrown ball and a bumping sequence over j w_2..w_n.
struct InsertionChoice {
  int type = 1;
  msjmc::BumpSequence bump;
};

// j w_2 ... w_n.
Word intermediate_word(const Word& w, int type);

// Every (j, a) pair, j ascending, then a in bumping-sequence order. For
// j = T the only sequence is (1, n+1).
std::vector<InsertionChoice> insertion_choices(const Word& w);

void validate_choice(const Word& w, const InsertionChoice& choice);

// (j w_2..w_n)^a.
Word apply_choice(const Word& w, const InsertionChoice& choice);

// sum_t c_t y_{J_w(2,t)}.
template <class S>
S add_drop_normalizer(const Word& w, const ParamSet<S>& p);

template <class S>
S add_drop_prob(const Word& w, const InsertionChoice& choice, const ParamSet<S>& p);

// prod_i c_{w_i} y_{E_w(i)}.
template <class S>
S add_drop_stationary_weight(const Word& w, const ParamSet<S>& p);

// Sum over compositions n_1 + ... + n_T = n (parts may be 0) of
// c^{n} prod_i h_{n_i}(y_1, ..., y_{n - n_1 - ... - n_i + 1}).
template <class S>
S add_drop_partition(int n, int alphabet, const ParamSet<S>& p);

// Needs z_1 + ... + z_{n+1} = 1.
template <class S>
S annihilation_prob(const Word& w, const InsertionChoice& choice, const ParamSet<S>& p);

// Already a probability: sums to 1 over all words.
template <class S>
S annihilation_stationary(const Word& w, const ParamSet<S>& p);

// prod_{l=2}^T prod_{p=1}^{#{m : w_m >= l}} (1 - y_p); the factor shared
// by the plain and enriched annihilation laws.
template <class S>
S annihilation_failure_factor(const Word& w, const ParamSet<S>& p);

template <class S>
ChainMatrix<S> build_chain(Kind kind, int n, int alphabet, const ParamSet<S>& p);

// Normalized closed-form law in enumeration order.
template <class S>
Distribution<S> stationary_formula(Kind kind, int n, int alphabet, const ParamSet<S>& p);

// ---- enriched chains on (w, v) -------------------------------------------

std::vector<msjmc::EnrichedState> enumerate_enriched(int n, int alphabet);

msjmc::EnrichedState enriched_fluctuating_step(const msjmc::EnrichedState& s, const InsertionChoice& choice);

// prod c_{w_i} z_{v_i} (add-drop) or prod_{w_i<T} z_{v_i} times the
// failure factor (annihilation); both unnormalized for add-drop.
template <class S>
S enriched_stationary_weight(Kind kind, const msjmc::EnrichedState& s, const ParamSet<S>& p);

template <class S>
ChainMatrix<S> build_enriched_chain(Kind kind, int n, int alphabet, const ParamSet<S>& p);

}  // namespace juggling::fluctuating
