#include <gtest/gtest.h>

#include <random>

#include "../support.hpp"
#include "juggling/chain.hpp"
#include "juggling/errors.hpp"
#include "juggling/jugglers.hpp"
#include "juggling/msjmc.hpp"
#include "juggling/overwriting.hpp"

using namespace juggling;

namespace {

ChainMatrix<Rational> one_state() { return ChainMatrix<Rational>({"x"}, {{{0, Rational(1)}}}); }

ChainMatrix<Rational> example_msjmc(std::mt19937_64& rng) {
  return msjmc::build_chain(TypeCounts({1, 1, 1}), ParamSet<Rational>(oracle::random_z(rng, 4)));
}

struct Toy {
  int value;
  auto operator<=>(const Toy&) const = default;
};
std::string to_string(const Toy& t) { return std::to_string(t.value); }

}  // namespace

TEST(BuildMatrix, SumsDuplicatesAndChecksRows) {
  const std::vector<Toy> states{{0}, {1}};
  const auto P = build_matrix<Rational, Toy>(states, [](const Toy& t) {
    return std::vector<std::pair<Toy, Rational>>{{Toy{1 - t.value}, Rational(1, 4)}, {Toy{1 - t.value}, Rational(1, 4)},
                                                 {t, Rational(1, 2)}};
  });
  EXPECT_EQ(P.at(0, 1), Rational(1, 2));
  EXPECT_EQ(P.labels(), (std::vector<std::string>{"0", "1"}));
  EXPECT_THROW((build_matrix<Rational, Toy>(states, [](const Toy& t) {
                 return std::vector<std::pair<Toy, Rational>>{{t, Rational(1, 2)}};
               })),
               RowSumError);
  EXPECT_THROW((build_matrix<Rational, Toy>(states, [](const Toy&) {
                 return std::vector<std::pair<Toy, Rational>>{{Toy{7}, Rational(1)}};
               })),
               UnknownSuccessor);
}

TEST(BuildMatrix, SingleState) {
  const auto P = one_state();
  EXPECT_EQ(P.dense(), (std::vector<std::vector<Rational>>{{1}}));
  EXPECT_EQ(stationary_exact(P).weights, std::vector<Rational>{1});
}

TEST(StationaryExact, AgreesWithDenseOracle) {
  std::mt19937_64 rng(11);
  for (int draw = 0; draw < 10; ++draw) {
    const auto P = msjmc::build_chain(TypeCounts({2, 1, 2}), ParamSet<Rational>(oracle::random_z(rng, 6)));
    const auto pi = stationary_exact(P);
    EXPECT_EQ(pi.weights, oracle::dense_stationary(P));
    EXPECT_TRUE(is_stationary(P, pi));
    EXPECT_EQ(pi.total(), 1);
  }
}

TEST(StationaryExact, JugglersExample) {
  const auto pi = stationary_exact(jugglers::build_chain<Rational>(2, 2, 2));
  EXPECT_EQ(pi.weights, oracle::normalize({6, 3, 3, 3, 3, 1}));
}

TEST(StationaryExact, RefusesReducible) {
  const ChainMatrix<Rational> P({"a", "b"}, {{{0, Rational(1)}}, {{1, Rational(1)}}});
  EXPECT_FALSE(is_irreducible(P));
  EXPECT_THROW(stationary_exact(P), ReducibleChain);
}

TEST(StationaryFloat, LuAndPowerAgreeWithExact) {
  std::mt19937_64 rng(12);
  const auto P = example_msjmc(rng);
  const auto exact = to_floating(stationary_exact(P));
  const auto lu = stationary_solve(to_floating(P));
  const auto pw = stationary_power(to_floating(P));
  EXPECT_LT(total_variation(lu, exact), 1e-12);
  EXPECT_LT(total_variation(pw, exact), 1e-10);
}

TEST(Period, DetectsCycle) {
  const ChainMatrix<Rational> P({"a", "b"}, {{{1, Rational(1)}}, {{0, Rational(1)}}});
  EXPECT_EQ(chain_period(P), 2u);
  std::mt19937_64 rng(3);
  EXPECT_EQ(chain_period(example_msjmc(rng)), 1u);
}

TEST(Lumping, IdentityAndCorrupted) {
  std::mt19937_64 rng(13);
  const auto P = example_msjmc(rng);
  EXPECT_TRUE(verify_lumping(P, LumpingMap::identity(P.size()), P).holds);
  auto map = LumpingMap::identity(P.size());
  std::swap(map.image[0], map.image[1]);
  const auto report = verify_lumping(P, map, P);
  EXPECT_FALSE(report.holds);
  ASSERT_TRUE(report.counterexample.has_value());
  EXPECT_NE(report.counterexample->enriched_mass, report.counterexample->base_mass);
}

TEST(Lumping, MsjmcEnrichedOnOneOfEach) {
  std::mt19937_64 rng(14);
  const TypeCounts tc({1, 1, 1});
  const ParamSet<Rational> p(oracle::random_z(rng, 4));
  const auto enriched = msjmc::enumerate_enriched(tc);
  const auto map = msjmc::forget_auxiliary(enriched, enumerate_multiset_words(tc));
  EXPECT_TRUE(verify_lumping(msjmc::build_enriched_chain(tc, p), map, msjmc::build_chain(tc, p)).holds);
}

TEST(Project, PointMassAndTableauLaw) {
  LumpingMap map;
  map.image = {0, 1, 1, 2};
  map.base_size = 3;
  EXPECT_EQ(project_distribution(Distribution<Rational>{{0, 0, 1, 0}}, map).weights, (std::vector<Rational>{0, 1, 0}));

  const ParamSet<Rational> p({Rational(1, 6), Rational(1, 3), Rational(1, 2)});
  const auto tableaux = overwriting::enumerate_tableaux(2, 3);
  Distribution<Rational> law;
  for (const auto& v : tableaux) law.weights.push_back(overwriting::tableau_stationary(v, p));
  const auto tmap = overwriting::tableau_lumping(tableaux, enumerate_alphabet_words(2, 3));
  EXPECT_EQ(project_distribution(law, tmap).weights, stationary_exact(overwriting::build_chain(2, 3, p)).weights);
}

TEST(Project, ArcStatesOfRightColumn) {
  // Six equally weighted enriched states project onto the right-column state.
  const auto arrays = jugglers::enumerate_arrays(2, 2, 2);
  const auto right = jugglers::BallArray::parse("01/01");
  std::size_t target = 0;
  while (!(arrays[target] == right)) ++target;
  EXPECT_EQ(jugglers::count_arc_enrichments(right), 6u);
  LumpingMap map;
  map.base_size = arrays.size();
  std::vector<Rational> uniform;
  for (std::size_t a = 0; a < arrays.size(); ++a) {
    for (std::uint64_t k = 0; k < jugglers::count_arc_enrichments(arrays[a]); ++k) {
      map.image.push_back(a);
      uniform.push_back(1);
    }
  }
  const Rational Zsum = static_cast<unsigned long>(uniform.size());
  const auto projected = project_distribution(Distribution<Rational>{uniform}, map);
  EXPECT_EQ(projected.weights[target], 6);
  EXPECT_EQ(projected.normalized().weights[target], Rational(6) / Zsum);
}

TEST(Ultrafast, OverwritingVersusMsjmc) {
  const ParamSet<Rational> p({Rational(1, 5), Rational(3, 10), Rational(1, 2)});
  const auto Pw = overwriting::build_chain(2, 3, p);
  const auto fast = ultrafast_check(Pw, 2);
  ASSERT_TRUE(fast.holds);
  EXPECT_EQ(fast.stationary->weights, stationary_exact(Pw).weights);
  EXPECT_TRUE(nilpotency_check(Pw, 2));

  std::mt19937_64 rng(15);
  const auto Pm = example_msjmc(rng);
  EXPECT_FALSE(ultrafast_check(Pm, 3).holds);
  EXPECT_FALSE(nilpotency_check(Pm, 3));

  EXPECT_TRUE(ultrafast_check(one_state(), 0).holds);
  EXPECT_TRUE(nilpotency_check(one_state(), 1));
}

TEST(Ultrafast, MatrixChainSmall) {
  const ParamSet<Rational> p({Rational(1, 7), Rational(2, 7), Rational(4, 7)});
  const auto P2 = overwriting::build_matrix_chain(2, 2, p);
  EXPECT_EQ(P2.size(), 9u);
  EXPECT_TRUE(nilpotency_check(P2, 2));
  EXPECT_TRUE(nilpotency_check(overwriting::build_matrix_chain(2, 3, p), 2));
}

TEST(TotalVariation, Values) {
  const Distribution<Rational> p{{Rational(1, 2), Rational(1, 2)}};
  const Distribution<Rational> q{{1, 0}};
  EXPECT_EQ(total_variation(p, p), 0);
  EXPECT_EQ(total_variation(Distribution<Rational>{{1, 0}}, Distribution<Rational>{{0, 1}}), 1);
  EXPECT_EQ(total_variation(p, q), Rational(1, 2));
  EXPECT_THROW(total_variation(p, Distribution<Rational>{{1}}), InvalidArgument);
}

TEST(Simulate, ZeroStepsAndReproducible) {
  std::mt19937_64 rng(16);
  const auto P = to_floating(example_msjmc(rng));
  const auto none = simulate(P, 2, 0, 9);
  EXPECT_EQ(none.empirical.weights, (std::vector<double>{0, 0, 1, 0, 0, 0}));
  const auto a = simulate(P, 0, 5000, 42);
  const auto b = simulate(P, 0, 5000, 42);
  EXPECT_EQ(a.trajectory, b.trajectory);
  EXPECT_EQ(a.burn_in, 500u);
  EXPECT_NE(a.trajectory, simulate(P, 0, 5000, 43).trajectory);
}

TEST(Simulate, MixSeedSpreads) {
  EXPECT_NE(mix_seed(0), mix_seed(1));
  EXPECT_EQ(mix_seed(12345), mix_seed(12345));
}
