#include <gtest/gtest.h>

#include <random>
#include <set>

#include "../support.hpp"
#include "juggling/errors.hpp"
#include "juggling/fluctuating.hpp"

using namespace juggling;
using juggling::oracle::Z;
using fluctuating::Kind;

namespace {

ParamSet<Rational> with_activities(std::mt19937_64& rng, int n, int T) {
  return ParamSet<Rational>(oracle::random_z(rng, n + 1), oracle::random_z(rng, T));
}

}  // namespace

TEST(Choices, IntermediateWordAndChoices) {
  EXPECT_EQ(fluctuating::intermediate_word(Word::parse("22", 3), 1).to_string(), "12");
  const Word w = Word::parse("22", 3);
  std::set<std::string> targets;
  for (const auto& ch : fluctuating::insertion_choices(w)) targets.insert(fluctuating::apply_choice(w, ch).to_string());
  EXPECT_EQ(targets, (std::set<std::string>{"21", "12", "22", "23"}));
  EXPECT_THROW(fluctuating::validate_choice(w, {4, {1, 3}}), InvalidArgument);
}

TEST(AddDrop, ExampleEntry) {
  std::mt19937_64 rng(31);
  for (int draw = 0; draw < 10; ++draw) {
    const auto p = with_activities(rng, 2, 3);
    const Z z{p.z_values()};
    const Rational lambda2 = p.c(1) * z.y(2) + (p.c(2) + p.c(3)) * z.y(1);
    EXPECT_EQ(fluctuating::add_drop_normalizer(Word::parse("22", 3), p), lambda2);
    EXPECT_EQ(fluctuating::add_drop_prob(Word::parse("22", 3), {1, {1, 2, 3}}, p), p.c(1) * z(2) / lambda2);
  }
}

TEST(AddDrop, RowsSumToOneAndSingleType) {
  std::mt19937_64 rng(32);
  for (int T = 1; T <= 3; ++T) {
    for (int n = 1; n <= 4; ++n) {
      const auto p = with_activities(rng, n, T);
      for (const auto& w : enumerate_alphabet_words(n, T)) {
        Rational sum = 0;
        for (const auto& ch : fluctuating::insertion_choices(w)) sum += fluctuating::add_drop_prob(w, ch, p);
        EXPECT_EQ(sum, 1);
      }
    }
  }
  const auto P = fluctuating::build_chain(Kind::add_drop, 3, 1, with_activities(rng, 3, 1));
  EXPECT_EQ(P.size(), 1u);
  EXPECT_EQ(P.at(0, 0), 1);
}

TEST(AddDrop, RejectsZeroActivity) {
  const ParamSet<Rational> p({Rational(1), Rational(1), Rational(1)}, {Rational(1), Rational(0)});
  EXPECT_THROW(fluctuating::build_chain(Kind::add_drop, 2, 2, p), InvalidArgument);
}

TEST(AddDrop, WeightsAndPartition) {
  std::mt19937_64 rng(33);
  const auto p = with_activities(rng, 3, 2);
  const Z z{p.z_values()};
  EXPECT_EQ(fluctuating::add_drop_stationary_weight(Word::parse("111", 2), p),
            p.c(1) * p.c(1) * p.c(1) * z.y(1) * z.y(1) * z.y(1));
  const auto p1 = with_activities(rng, 1, 2);
  EXPECT_EQ(fluctuating::add_drop_partition(1, 2, p1), (p1.c(1) + p1.c(2)) * p1.y(1));
  for (int T = 1; T <= 3; ++T) {
    for (int n = 1; n <= 5; ++n) {
      const auto q = with_activities(rng, n, T);
      Rational sum = 0;
      for (const auto& w : enumerate_alphabet_words(n, T)) sum += fluctuating::add_drop_stationary_weight(w, q);
      EXPECT_EQ(fluctuating::add_drop_partition(n, T, q), sum);
    }
  }
}

TEST(Annihilation, ExampleEntries) {
  std::mt19937_64 rng(34);
  const Z z{oracle::random_normalized_z(rng, 3)};
  const ParamSet<Rational> p(z.z);
  const Rational s = z(2) + z(3);
  EXPECT_EQ(fluctuating::annihilation_prob(Word::parse("11", 3), {3, {1, 3}}, p), s * s);
  EXPECT_EQ(fluctuating::annihilation_prob(Word::parse("12", 3), {2, {1, 3}}, p), z(1) * z(3));
}

TEST(Annihilation, NeedsNormalizedZ) {
  const ParamSet<Rational> p({Rational(1), Rational(1), Rational(1)});
  EXPECT_THROW(fluctuating::annihilation_prob(Word::parse("11", 3), {3, {1, 3}}, p), NotNormalized);
  EXPECT_THROW(fluctuating::annihilation_stationary(Word::parse("11", 3), p), NotNormalized);
}

TEST(Annihilation, RowsSumAndTotalMass) {
  std::mt19937_64 rng(35);
  for (int T = 1; T <= 3; ++T) {
    for (int n = 1; n <= 4; ++n) {
      const Z z{oracle::random_normalized_z(rng, n + 1)};
      const ParamSet<Rational> p(z.z);
      Rational mass = 0;
      for (const auto& w : enumerate_alphabet_words(n, T)) {
        Rational sum = 0;
        for (const auto& ch : fluctuating::insertion_choices(w)) sum += fluctuating::annihilation_prob(w, ch, p);
        EXPECT_EQ(sum, 1);
        mass += fluctuating::annihilation_stationary(w, p);
      }
      EXPECT_EQ(mass, 1);
      Rational top = 1;
      for (int l = 2; l <= T; ++l) {
        for (int q = 1; q <= n; ++q) top *= 1 - z.y(q);
      }
      EXPECT_EQ(fluctuating::annihilation_stationary(Word(std::vector<int>(static_cast<std::size_t>(n), T), T), p), top);
    }
  }
}

TEST(Reachability, FirstLetterIrrelevant) {
  std::mt19937_64 rng(36);
  for (const Kind kind : {Kind::add_drop, Kind::annihilation}) {
    const auto p = kind == Kind::add_drop ? with_activities(rng, 3, 3) : ParamSet<Rational>(oracle::random_normalized_z(rng, 4));
    const auto P = fluctuating::build_chain(kind, 3, 3, p);
    const auto words = enumerate_alphabet_words(3, 3);
    for (std::size_t a = 0; a < words.size(); ++a) {
      for (std::size_t b = 0; b < words.size(); ++b) {
        if (words[a].to_string().substr(1) != words[b].to_string().substr(1)) continue;
        std::set<std::size_t> ra, rb;
        for (const auto& [j, v] : P.row(a)) ra.insert(j);
        for (const auto& [j, v] : P.row(b)) rb.insert(j);
        EXPECT_EQ(ra, rb);
      }
    }
  }
}

TEST(Formulas, TwoLetterCaseAgreesWithSolve) {
  std::mt19937_64 rng(37);
  for (int n = 1; n <= 5; ++n) {
    const auto p = with_activities(rng, n, 2);
    const auto P = fluctuating::build_chain(Kind::add_drop, n, 2, p);
    EXPECT_EQ(fluctuating::stationary_formula(Kind::add_drop, n, 2, p).weights, oracle::dense_stationary(P));
    const ParamSet<Rational> q(oracle::random_normalized_z(rng, n + 1));
    const auto Q = fluctuating::build_chain(Kind::annihilation, n, 2, q);
    EXPECT_EQ(fluctuating::stationary_formula(Kind::annihilation, n, 2, q).weights, oracle::dense_stationary(Q));
  }
}

TEST(Enriched, StationaryAndLumping) {
  std::mt19937_64 rng(38);
  for (const Kind kind : {Kind::add_drop, Kind::annihilation}) {
    for (int T = 2; T <= 3; ++T) {
      for (int n = 1; n <= 4; ++n) {
        const auto p = kind == Kind::add_drop ? with_activities(rng, n, T)
                                              : ParamSet<Rational>(oracle::random_normalized_z(rng, n + 1));
        const auto states = fluctuating::enumerate_enriched(n, T);
        const auto Pe = fluctuating::build_enriched_chain(kind, n, T, p);
        Distribution<Rational> pe;
        for (const auto& s : states) {
          Rational weight = 1;
          const auto& L = s.w.letters();
          for (std::size_t i = 0; i < L.size(); ++i) {
            if (kind == Kind::add_drop) weight *= p.c(L[i]) * p.z(s.v[i]);
            else if (L[i] < T) weight *= p.z(s.v[i]);
          }
          if (kind == Kind::annihilation) {
            for (int l = 2; l <= T; ++l) {
              int m = 0;
              for (int x : L) m += x >= l ? 1 : 0;
              for (int q = 1; q <= m; ++q) weight *= 1 - p.y(q);
            }
          }
          EXPECT_EQ(weight, fluctuating::enriched_stationary_weight(kind, s, p));
          pe.weights.push_back(weight);
        }
        EXPECT_TRUE(is_stationary(Pe, pe));
        const auto words = enumerate_alphabet_words(n, T);
        const auto map = msjmc::forget_auxiliary(states, words);
        const auto P = fluctuating::build_chain(kind, n, T, p);
        EXPECT_TRUE(verify_lumping(Pe, map, P).holds);
        EXPECT_EQ(project_distribution(pe, map).normalized().weights, stationary_exact(P).weights);
      }
    }
  }
}
