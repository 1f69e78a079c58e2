#include "juggling/msjmc.hpp"

#include <algorithm>
#include <limits>
#include <set>

namespace juggling::msjmc {

namespace {

// Letter at position pos, with the sentinel w_{n+1} = +infinity.
int letter_or_top(const Word& w, int pos) {
  return pos == w.size() + 1 ? std::numeric_limits<int>::max() : w[pos];
}

void extend_bumps(const Word& w, BumpSequence& prefix, std::vector<BumpSequence>& out) {
  const int n = w.size();
  const int from = prefix.back();
  const int weight = w[from];
  for (int next = from + 1; next <= n + 1; ++next) {
    if (letter_or_top(w, next) <= weight) continue;
    prefix.push_back(next);
    if (next == n + 1) {
      out.push_back(prefix);
    } else {
      extend_bumps(w, prefix, out);
    }
    prefix.pop_back();
  }
}

}  // namespace

std::vector<BumpSequence> bumping_sequences(const Word& w) {
  if (w.size() == 0) throw InvalidArgument("bumping_sequences: empty word");
  std::vector<BumpSequence> out;
  BumpSequence prefix{1};
  extend_bumps(w, prefix, out);
  return out;
}

void validate_bump(const Word& w, const BumpSequence& a) {
  const int n = w.size();
  if (a.size() < 2 || a.front() != 1 || a.back() != n + 1) {
    throw InvalidArgument("bumping sequence must start at 1 and end at n+1");
  }
  for (std::size_t l = 1; l < a.size(); ++l) {
    if (a[l] <= a[l - 1]) throw InvalidArgument("bumping sequence must be strictly increasing");
    if (letter_or_top(w, a[l]) <= w[a[l - 1]]) {
      throw InvalidArgument("bumping sequence must bump strictly lighter balls");
    }
  }
}

Word apply_bump(const Word& w, const BumpSequence& a) {
  validate_bump(w, a);
  const int n = w.size();
  std::vector<int> next(static_cast<std::size_t>(n));
  for (int i = 1; i < n; ++i) next[static_cast<std::size_t>(i - 1)] = w[i + 1];
  for (std::size_t l = 1; l < a.size(); ++l) next[static_cast<std::size_t>(a[l] - 2)] = w[a[l - 1]];
  return Word(std::move(next), w.alphabet());
}

template <class S>
S bump_factor(const Word& w, const BumpSequence& a, int i, const ParamSet<S>& p) {
  if (i < 2 || i > static_cast<int>(a.size())) throw InvalidArgument("bump_factor: index out of range");
  const int from = a[static_cast<std::size_t>(i - 2)];
  const int to = a[static_cast<std::size_t>(i - 1)];
  const int weight = w[from];
  const S& denominator = p.y(stat_J(w, from, weight));
  if (scalar_is_zero(denominator)) {
    throw DegenerateParams("zero prefix sum y_" + std::to_string(stat_J(w, from, weight)) + " in a transition denominator");
  }
  return p.z(stat_J(w, to, weight)) / denominator;
}

template <class S>
S bump_tail_probability(const Word& w, const BumpSequence& a, int from, const ParamSet<S>& p) {
  S prob = ScalarTraits<S>::one();
  for (int i = from; i <= static_cast<int>(a.size()); ++i) prob *= bump_factor(w, a, i, p);
  return prob;
}

template <class S>
S transition_prob(const Word& w, const BumpSequence& a, const ParamSet<S>& p) {
  validate_bump(w, a);
  return bump_tail_probability(w, a, 2, p);
}

template <class S>
S stationary_weight(const Word& w, const ParamSet<S>& p) {
  S weight = ScalarTraits<S>::one();
  for (int i = 1; i <= w.size(); ++i) weight *= p.y(stat_E(w, i));
  return weight;
}

template <class S>
S partition_function(const TypeCounts& counts, const ParamSet<S>& p) {
  S z = ScalarTraits<S>::one();
  int remaining = counts.total();
  for (int type = 1; type <= counts.species(); ++type) {
    remaining -= counts[type];
    std::vector<S> ys;
    for (int j = 1; j <= remaining + 1; ++j) ys.push_back(p.y(j));
    z *= complete_homogeneous<S>(counts[type], ys);
  }
  return z;
}

template <class S>
ChainMatrix<S> build_chain(const TypeCounts& counts, const ParamSet<S>& p) {
  p.require_size(counts.total() + 1, "msjmc");
  const auto words = enumerate_multiset_words(counts);
  return build_matrix<S, Word>(words, [&p](const Word& w) {
    std::vector<std::pair<Word, S>> out;
    for (const auto& a : bumping_sequences(w)) out.emplace_back(apply_bump(w, a), transition_prob(w, a, p));
    return out;
  });
}

template <class S>
Distribution<S> stationary_formula(const TypeCounts& counts, const ParamSet<S>& p) {
  p.require_size(counts.total() + 1, "msjmc");
  Distribution<S> d;
  for (const auto& w : enumerate_multiset_words(counts)) d.weights.push_back(stationary_weight(w, p));
  const S z = partition_function(counts, p);
  for (S& weight : d.weights) weight /= z;
  return d;
}

std::string to_string(const EnrichedState& s) {
  std::string out = s.w.to_string() + "|";
  const bool digits = s.w.size() <= 8;
  for (std::size_t i = 0; i < s.v.size(); ++i) {
    if (!digits && i > 0) out += ',';
    out += std::to_string(s.v[i]);
  }
  return out;
}

void validate_enriched(const EnrichedState& s) {
  if (static_cast<int>(s.v.size()) != s.w.size()) throw InvalidArgument("auxiliary word length differs from the word");
  for (int i = 1; i <= s.w.size(); ++i) {
    const int bound = stat_E(s.w, i);
    const int value = s.v[static_cast<std::size_t>(i - 1)];
    if (value < 1 || value > bound) {
      throw InvalidArgument("auxiliary entry v_" + std::to_string(i) + " = " + std::to_string(value) + " exceeds E_w(" +
                            std::to_string(i) + ") = " + std::to_string(bound));
    }
  }
}

std::vector<std::vector<int>> auxiliary_words(const Word& w) {
  const int n = w.size();
  std::vector<int> bounds(static_cast<std::size_t>(n));
  for (int i = 1; i <= n; ++i) bounds[static_cast<std::size_t>(i - 1)] = stat_E(w, i);
  std::vector<std::vector<int>> out;
  std::vector<int> v(static_cast<std::size_t>(n), 1);
  while (true) {
    out.push_back(v);
    int pos = n - 1;
    while (pos >= 0 && v[static_cast<std::size_t>(pos)] == bounds[static_cast<std::size_t>(pos)]) {
      v[static_cast<std::size_t>(pos)] = 1;
      --pos;
    }
    if (pos < 0) break;
    ++v[static_cast<std::size_t>(pos)];
  }
  return out;
}

std::vector<EnrichedState> enumerate_enriched(const TypeCounts& counts) {
  std::vector<EnrichedState> out;
  for (const auto& w : enumerate_multiset_words(counts)) {
    for (auto& v : auxiliary_words(w)) out.push_back({w, std::move(v)});
  }
  return out;
}

std::vector<int> updated_auxiliary(const std::vector<int>& v, const Word& next, const BumpSequence& a) {
  const int n = next.size();
  std::vector<int> out(static_cast<std::size_t>(n));
  for (int i = 1; i < n; ++i) out[static_cast<std::size_t>(i - 1)] = v[static_cast<std::size_t>(i)];
  for (std::size_t l = 1; l < a.size(); ++l) {
    const int pos = a[l] - 1;
    out[static_cast<std::size_t>(pos - 1)] = stat_E(next, pos);
  }
  return out;
}

EnrichedState enriched_step(const EnrichedState& s, const BumpSequence& a) {
  Word next = apply_bump(s.w, a);
  std::vector<int> v = updated_auxiliary(s.v, next, a);
  return {std::move(next), std::move(v)};
}

template <class S>
S enriched_stationary_weight(const EnrichedState& s, const ParamSet<S>& p) {
  S weight = ScalarTraits<S>::one();
  for (int value : s.v) weight *= p.z(value);
  return weight;
}

template <class S>
ChainMatrix<S> build_enriched_chain(const TypeCounts& counts, const ParamSet<S>& p) {
  p.require_size(counts.total() + 1, "msjmc");
  const auto states = enumerate_enriched(counts);
  return build_matrix<S, EnrichedState>(states, [&p](const EnrichedState& s) {
    std::vector<std::pair<EnrichedState, S>> out;
    for (const auto& a : bumping_sequences(s.w)) out.emplace_back(enriched_step(s, a), transition_prob(s.w, a, p));
    return out;
  });
}

LumpingMap forget_auxiliary(const std::vector<EnrichedState>& enriched, const std::vector<Word>& base) {
  return make_lumping<EnrichedState, Word>(enriched, base, [](const EnrichedState& s) { return s.w; });
}

Predecessors reconstruct_predecessor(const EnrichedState& next) {
  validate_enriched(next);
  const Word& w_next = next.w;
  const int n = w_next.size();
  auto v_next = [&](int i) { return next.v[static_cast<std::size_t>(i - 1)]; };

  std::set<int> positions{1, n + 1};
  for (int j = n; j >= 2; --j) {
    const int following = *positions.upper_bound(j);
    const bool relabelled = v_next(j - 1) == stat_E(w_next, j - 1);
    const bool heavier = w_next[j - 1] < w_next[following - 1];
    if (relabelled && heavier) positions.insert(j);
  }
  Predecessors pred;
  pred.bump.assign(positions.begin(), positions.end());

  std::vector<int> source(static_cast<std::size_t>(n));
  for (int j = 2; j <= n; ++j) source[static_cast<std::size_t>(j - 1)] = w_next[j - 1];
  for (std::size_t l = 0; l + 1 < pred.bump.size(); ++l) {
    source[static_cast<std::size_t>(pred.bump[l] - 1)] = w_next[pred.bump[l + 1] - 1];
  }
  pred.source = Word(std::move(source), w_next.alphabet());

  pred.fixed_v.assign(static_cast<std::size_t>(n), 0);
  for (int j = 2; j <= n; ++j) {
    if (!positions.contains(j)) pred.fixed_v[static_cast<std::size_t>(j - 1)] = v_next(j - 1);
  }
  pred.free_positions.assign(pred.bump.begin(), pred.bump.end() - 1);

  try {
    validate_bump(pred.source, pred.bump);
  } catch (const InvalidArgument&) {
    throw InconsistentState("predecessor reconstruction produced an invalid bumping sequence for " + to_string(next));
  }
  for (int j = 1; j <= n; ++j) {
    const int fixed = pred.fixed_v[static_cast<std::size_t>(j - 1)];
    if (fixed > stat_E(pred.source, j)) {
      throw InconsistentState("predecessor reconstruction violates the auxiliary bound for " + to_string(next));
    }
  }
  EnrichedState probe{pred.source, pred.fixed_v};
  for (int j : pred.free_positions) probe.v[static_cast<std::size_t>(j - 1)] = 1;
  if (enriched_step(probe, pred.bump) != next) {
    throw InconsistentState("predecessor reconstruction does not map back to " + to_string(next));
  }
  return pred;
}

std::vector<EnrichedState> expand_predecessors(const Predecessors& pred) {
  std::vector<EnrichedState> out;
  EnrichedState current{pred.source, pred.fixed_v};
  std::vector<int> bounds;
  for (int j : pred.free_positions) {
    bounds.push_back(stat_E(pred.source, j));
    current.v[static_cast<std::size_t>(j - 1)] = 1;
  }
  while (true) {
    out.push_back(current);
    int k = static_cast<int>(pred.free_positions.size()) - 1;
    while (k >= 0) {
      auto& slot = current.v[static_cast<std::size_t>(pred.free_positions[static_cast<std::size_t>(k)] - 1)];
      if (slot < bounds[static_cast<std::size_t>(k)]) {
        ++slot;
        break;
      }
      slot = 1;
      --k;
    }
    if (k < 0) break;
  }
  return out;
}

#define JUGGLING_INSTANTIATE(S)                                                                       \
  template S bump_factor(const Word&, const BumpSequence&, int, const ParamSet<S>&);                  \
  template S bump_tail_probability(const Word&, const BumpSequence&, int, const ParamSet<S>&);        \
  template S transition_prob(const Word&, const BumpSequence&, const ParamSet<S>&);                   \
  template S stationary_weight(const Word&, const ParamSet<S>&);                                      \
  template S partition_function(const TypeCounts&, const ParamSet<S>&);                               \
  template ChainMatrix<S> build_chain(const TypeCounts&, const ParamSet<S>&);                         \
  template Distribution<S> stationary_formula(const TypeCounts&, const ParamSet<S>&);                 \
  template S enriched_stationary_weight(const EnrichedState&, const ParamSet<S>&);                    \
  template ChainMatrix<S> build_enriched_chain(const TypeCounts&, const ParamSet<S>&);

JUGGLING_INSTANTIATE(Rational)
JUGGLING_INSTANTIATE(double)

#undef JUGGLING_INSTANTIATE

}  // namespace juggling::msjmc
