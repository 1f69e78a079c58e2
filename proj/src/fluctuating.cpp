#include "juggling/fluctuating.hpp"

#include <algorithm>

namespace juggling::fluctuating {

using msjmc::BumpSequence;
using msjmc::EnrichedState;

Word intermediate_word(const Word& w, int type) {
  std::vector<int> letters = w.letters();
  letters.front() = type;
  return Word(std::move(letters), w.alphabet());
}

std::vector<InsertionChoice> insertion_choices(const Word& w) {
  std::vector<InsertionChoice> out;
  for (int j = 1; j <= w.alphabet(); ++j) {
    for (auto& a : msjmc::bumping_sequences(intermediate_word(w, j))) out.push_back({j, std::move(a)});
  }
  return out;
}

void validate_choice(const Word& w, const InsertionChoice& choice) {
  if (choice.type < 1 || choice.type > w.alphabet()) throw InvalidArgument("inserted type out of range");
  msjmc::validate_bump(intermediate_word(w, choice.type), choice.bump);
}

Word apply_choice(const Word& w, const InsertionChoice& choice) {
  return msjmc::apply_bump(intermediate_word(w, choice.type), choice.bump);
}

template <class S>
S add_drop_normalizer(const Word& w, const ParamSet<S>& p) {
  S sum = ScalarTraits<S>::zero();
  for (int t = 1; t <= w.alphabet(); ++t) sum += p.c(t) * p.y(stat_J(w, 2, t));
  return sum;
}

template <class S>
S add_drop_prob(const Word& w, const InsertionChoice& choice, const ParamSet<S>& p) {
  validate_choice(w, choice);
  p.require_positive_activities(w.alphabet(), "add_drop");
  const S lambda = add_drop_normalizer(w, p);
  if (scalar_is_zero(lambda)) throw DegenerateParams("add_drop: normalizing sum is zero");
  const Word inter = intermediate_word(w, choice.type);
  const int landing = stat_J(w, choice.bump[1], choice.type);
  return p.c(choice.type) * p.z(landing) / lambda * msjmc::bump_tail_probability(inter, choice.bump, 3, p);
}

template <class S>
S add_drop_stationary_weight(const Word& w, const ParamSet<S>& p) {
  S weight = ScalarTraits<S>::one();
  for (int i = 1; i <= w.size(); ++i) weight *= p.c(w[i]) * p.y(stat_E(w, i));
  return weight;
}

namespace {

template <class F>
void for_each_composition(int total, int parts, std::vector<int>& prefix, F&& f) {
  if (static_cast<int>(prefix.size()) == parts - 1) {
    prefix.push_back(total);
    f(prefix);
    prefix.pop_back();
    return;
  }
  for (int k = 0; k <= total; ++k) {
    prefix.push_back(k);
    for_each_composition(total - k, parts, prefix, f);
    prefix.pop_back();
  }
}

}  // namespace

template <class S>
S add_drop_partition(int n, int alphabet, const ParamSet<S>& p) {
  S z = ScalarTraits<S>::zero();
  std::vector<int> prefix;
  for_each_composition(n, alphabet, prefix, [&](const std::vector<int>& parts) {
    S term = ScalarTraits<S>::one();
    int remaining = n;
    for (int i = 1; i <= alphabet; ++i) {
      const int count = parts[static_cast<std::size_t>(i - 1)];
      remaining -= count;
      std::vector<S> ys;
      for (int j = 1; j <= remaining + 1; ++j) ys.push_back(p.y(j));
      term *= power(p.c(i), count) * complete_homogeneous<S>(count, ys);
    }
    z += term;
  });
  return z;
}

template <class S>
S annihilation_prob(const Word& w, const InsertionChoice& choice, const ParamSet<S>& p) {
  validate_choice(w, choice);
  p.require_normalized("annihilation");
  S prob = ScalarTraits<S>::one();
  for (int t = 1; t < choice.type; ++t) prob *= ScalarTraits<S>::one() - p.y(stat_J(w, 2, t));
  if (choice.type == w.alphabet()) return prob;
  const Word inter = intermediate_word(w, choice.type);
  prob *= p.z(stat_J(w, choice.bump[1], choice.type));
  return prob * msjmc::bump_tail_probability(inter, choice.bump, 3, p);
}

template <class S>
S annihilation_failure_factor(const Word& w, const ParamSet<S>& p) {
  S factor = ScalarTraits<S>::one();
  for (int l = 2; l <= w.alphabet(); ++l) {
    int at_least = 0;
    for (int letter : w.letters()) at_least += letter >= l ? 1 : 0;
    for (int q = 1; q <= at_least; ++q) factor *= ScalarTraits<S>::one() - p.y(q);
  }
  return factor;
}

template <class S>
S annihilation_stationary(const Word& w, const ParamSet<S>& p) {
  p.require_normalized("annihilation");
  S weight = annihilation_failure_factor(w, p);
  for (int i = 1; i <= w.size(); ++i) {
    if (w[i] < w.alphabet()) weight *= p.y(stat_E(w, i));
  }
  return weight;
}

namespace {

template <class S>
S choice_prob(Kind kind, const Word& w, const InsertionChoice& choice, const ParamSet<S>& p) {
  return kind == Kind::add_drop ? add_drop_prob(w, choice, p) : annihilation_prob(w, choice, p);
}

template <class S>
void check_params(Kind kind, int n, int alphabet, const ParamSet<S>& p) {
  if (kind == Kind::add_drop) {
    p.require_size(n + 1, "add_drop");
    p.require_positive_activities(alphabet, "add_drop");
  } else {
    p.require_size(n + 1, "annihilation");
    p.require_normalized("annihilation");
  }
}

}  // namespace

template <class S>
ChainMatrix<S> build_chain(Kind kind, int n, int alphabet, const ParamSet<S>& p) {
  check_params(kind, n, alphabet, p);
  const auto words = enumerate_alphabet_words(n, alphabet);
  return build_matrix<S, Word>(words, [&](const Word& w) {
    std::vector<std::pair<Word, S>> out;
    for (const auto& choice : insertion_choices(w)) out.emplace_back(apply_choice(w, choice), choice_prob(kind, w, choice, p));
    return out;
  });
}

template <class S>
Distribution<S> stationary_formula(Kind kind, int n, int alphabet, const ParamSet<S>& p) {
  check_params(kind, n, alphabet, p);
  Distribution<S> d;
  for (const auto& w : enumerate_alphabet_words(n, alphabet)) {
    d.weights.push_back(kind == Kind::add_drop ? add_drop_stationary_weight(w, p) : annihilation_stationary(w, p));
  }
  if (kind == Kind::add_drop) {
    const S z = add_drop_partition(n, alphabet, p);
    for (S& weight : d.weights) weight /= z;
  }
  return d;
}

std::vector<EnrichedState> enumerate_enriched(int n, int alphabet) {
  std::vector<Word> words = enumerate_alphabet_words(n, alphabet);
  std::sort(words.begin(), words.end());
  std::vector<EnrichedState> out;
  for (const auto& w : words) {
    for (auto& v : msjmc::auxiliary_words(w)) out.push_back({w, std::move(v)});
  }
  return out;
}

EnrichedState enriched_fluctuating_step(const EnrichedState& s, const InsertionChoice& choice) {
  Word next = apply_choice(s.w, choice);
  std::vector<int> v = msjmc::updated_auxiliary(s.v, next, choice.bump);
  return {std::move(next), std::move(v)};
}

template <class S>
S enriched_stationary_weight(Kind kind, const EnrichedState& s, const ParamSet<S>& p) {
  S weight = ScalarTraits<S>::one();
  if (kind == Kind::add_drop) {
    for (int i = 1; i <= s.w.size(); ++i) weight *= p.c(s.w[i]) * p.z(s.v[static_cast<std::size_t>(i - 1)]);
    return weight;
  }
  for (int i = 1; i <= s.w.size(); ++i) {
    if (s.w[i] < s.w.alphabet()) weight *= p.z(s.v[static_cast<std::size_t>(i - 1)]);
  }
  return weight * annihilation_failure_factor(s.w, p);
}

template <class S>
ChainMatrix<S> build_enriched_chain(Kind kind, int n, int alphabet, const ParamSet<S>& p) {
  check_params(kind, n, alphabet, p);
  const auto states = enumerate_enriched(n, alphabet);
  return build_matrix<S, EnrichedState>(states, [&](const EnrichedState& s) {
    std::vector<std::pair<EnrichedState, S>> out;
    for (const auto& choice : insertion_choices(s.w)) {
      out.emplace_back(enriched_fluctuating_step(s, choice), choice_prob(kind, s.w, choice, p));
    }
    return out;
  });
}

#define JUGGLING_INSTANTIATE(S)                                                                  \
  template S add_drop_normalizer(const Word&, const ParamSet<S>&);                               \
  template S add_drop_prob(const Word&, const InsertionChoice&, const ParamSet<S>&);             \
  template S add_drop_stationary_weight(const Word&, const ParamSet<S>&);                        \
  template S add_drop_partition(int, int, const ParamSet<S>&);                                   \
  template S annihilation_prob(const Word&, const InsertionChoice&, const ParamSet<S>&);         \
  template S annihilation_stationary(const Word&, const ParamSet<S>&);                           \
  template S annihilation_failure_factor(const Word&, const ParamSet<S>&);                       \
  template ChainMatrix<S> build_chain(Kind, int, int, const ParamSet<S>&);                       \
  template Distribution<S> stationary_formula(Kind, int, int, const ParamSet<S>&);               \
  template S enriched_stationary_weight(Kind, const EnrichedState&, const ParamSet<S>&);         \
  template ChainMatrix<S> build_enriched_chain(Kind, int, int, const ParamSet<S>&);

JUGGLING_INSTANTIATE(Rational)
JUGGLING_INSTANTIATE(double)

#undef JUGGLING_INSTANTIATE

}  // namespace juggling::fluctuating
