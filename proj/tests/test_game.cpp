#include "doctest.h"
#include "splitnash/game.hpp"

#include <random>
#include <stdexcept>
#include <vector>

using namespace splitnash;

namespace {

// Classic dilemma: strategies 0 (cooperate) < 1 (defect) per player.
// Profiles flat-indexed (p0,p1): 0=(0,0) 1=(0,1) 2=(1,0) 3=(1,1).
StaticGame dilemma() {
  std::vector<FinitePoset> posets{FinitePoset::chain(2), FinitePoset::chain(2)};
  std::vector<std::vector<Rat>> u{
      {Rat(3), Rat(0), Rat(5), Rat(1)},
      {Rat(3), Rat(5), Rat(0), Rat(1)},
  };
  return StaticGame(std::move(posets), std::move(u));
}

StaticGame random_game(std::mt19937_64& rng, int max_players = 3, int max_strategies = 3) {
  std::uniform_int_distribution<int> np(2, max_players);
  std::uniform_int_distribution<int> ns(1, max_strategies);
  const int n = np(rng);
  std::vector<FinitePoset> posets;
  for (int i = 0; i < n; ++i) posets.push_back(FinitePoset::chain(ns(rng)));
  ProductPoset space(posets);
  std::uniform_int_distribution<int> num(-6, 6);
  std::uniform_int_distribution<int> den(1, 3);
  std::vector<std::vector<Rat>> u(static_cast<std::size_t>(n));
  for (auto& table : u) {
    table.reserve(static_cast<std::size_t>(space.size()));
    for (int x = 0; x < space.size(); ++x) table.emplace_back(num(rng), den(rng));
  }
  return StaticGame(std::move(posets), std::move(u));
}

// Separable utilities f_i(x) = g_i(x_i) + m_i(x_{-i}).
StaticGame random_separable_game(std::mt19937_64& rng) {
  std::uniform_int_distribution<int> np(2, 3);
  std::uniform_int_distribution<int> ns(1, 3);
  const int n = np(rng);
  std::vector<FinitePoset> posets;
  for (int i = 0; i < n; ++i) posets.push_back(FinitePoset::chain(ns(rng)));
  ProductPoset space(posets);
  std::uniform_int_distribution<int> num(-6, 6);
  std::vector<std::vector<Rat>> own(static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i) {
    for (int z = 0; z < posets[static_cast<std::size_t>(i)].size(); ++z) {
      own[static_cast<std::size_t>(i)].emplace_back(num(rng));
    }
  }
  std::vector<std::vector<Rat>> u(static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i) {
    std::vector<Rat> opp(static_cast<std::size_t>(space.size()));
    for (int x = 0; x < space.size(); ++x) {
      if (space.coord(x, i) == 0) opp[static_cast<std::size_t>(x)] = Rat(num(rng));
    }
    u[static_cast<std::size_t>(i)].reserve(static_cast<std::size_t>(space.size()));
    for (int x = 0; x < space.size(); ++x) {
      const int base = space.replace_coord(x, i, 0);
      u[static_cast<std::size_t>(i)].push_back(
          own[static_cast<std::size_t>(i)][static_cast<std::size_t>(space.coord(x, i))] +
          opp[static_cast<std::size_t>(base)]);
    }
  }
  return StaticGame(std::move(posets), std::move(u));
}

}  // namespace

TEST_CASE("construction validates shape") {
  CHECK_THROWS_AS(StaticGame({FinitePoset::chain(2)}, {{Rat(0), Rat(0)}}), std::invalid_argument);
  CHECK_THROWS_AS(StaticGame({FinitePoset::chain(2), FinitePoset::chain(2)},
                             {{Rat(0), Rat(0), Rat(0), Rat(0)}}),
                  std::invalid_argument);
  CHECK_THROWS_AS(StaticGame({FinitePoset::chain(2), FinitePoset::chain(2)},
                             {{Rat(0)}, {Rat(0), Rat(0), Rat(0), Rat(0)}}),
                  std::invalid_argument);
}

TEST_CASE("dilemma game: vectors, nash set, bound") {
  const StaticGame g = dilemma();
  CHECK(utility_vector(g, 0) == UtilityVector{Rat(3), Rat(3)});
  // z = (defect, cooperate) against x = (cooperate, cooperate)
  CHECK(assoc_vector(g, 2, 0) == UtilityVector{Rat(5), Rat(3)});
  CHECK(nash_set(g) == std::vector<int>{3});
  const NashCheck at0 = is_nash(g, 0);
  CHECK_FALSE(at0.nash);
  REQUIRE(at0.witness.has_value());
  CHECK(at0.witness->player == 0);
  CHECK(at0.witness->strategy == 1);
  CHECK(bound_M(g) == Rat(5));
  CHECK(replace(g, 0, 0, 1) == 2);
  CHECK(replace(g, 3, 1, 0) == 2);
  CHECK_THROWS_AS(replace(g, 0, 2, 0), std::invalid_argument);
}

TEST_CASE("associated vector at (x, x) is the utility vector") {
  std::mt19937_64 rng(8101);
  for (int trial = 0; trial < 40; ++trial) {
    const StaticGame g = random_game(rng);
    for (int x = 0; x < g.profile_count(); ++x) {
      CHECK(assoc_vector(g, x, x) == utility_vector(g, x));
    }
  }
}

TEST_CASE("deviation form and vector form of the Nash predicate agree") {
  std::mt19937_64 rng(8102);
  for (int trial = 0; trial < 60; ++trial) {
    const StaticGame g = random_game(rng);
    for (int x = 0; x < g.profile_count(); ++x) {
      CHECK(is_nash(g, x).nash == is_nash_vector_form(g, x));
    }
  }
}

TEST_CASE("leq_n is a partial order on utility vectors") {
  const UtilityVector a{Rat(1), Rat(2)};
  const UtilityVector b{Rat(1), Rat(3)};
  const UtilityVector c{Rat(0), Rat(5)};
  CHECK(leq_n(a, a));
  CHECK(leq_n(a, b));
  CHECK_FALSE(leq_n(b, a));
  CHECK_FALSE(leq_n(a, c));
  CHECK_FALSE(leq_n(c, a));
  CHECK_THROWS_AS(leq_n(a, UtilityVector{Rat(1)}), std::invalid_argument);
}

TEST_CASE("separable games are order-positive") {
  std::mt19937_64 rng(8103);
  for (int trial = 0; trial < 40; ++trial) {
    const StaticGame g = random_separable_game(rng);
    for (int i = 0; i < g.players(); ++i) {
      CHECK(is_order_positive(g, i).positive);
    }
  }
}

TEST_CASE("order positivity counterexample is a genuine ranking flip") {
  // Player 0 prefers strategy 1 against a low opponent and strategy 0 against
  // a high one.
  std::vector<FinitePoset> posets{FinitePoset::chain(2), FinitePoset::chain(2)};
  std::vector<std::vector<Rat>> u{
      {Rat(0), Rat(1), Rat(1), Rat(0)},  // f1(z,opp): (0,lo)=0 (0,hi)=1 (1,lo)=1 (1,hi)=0
      {Rat(0), Rat(0), Rat(0), Rat(0)},
  };
  const StaticGame g(std::move(posets), std::move(u));
  const auto check = is_order_positive(g, 0);
  REQUIRE_FALSE(check.positive);
  REQUIRE(check.counterexample.has_value());
  const auto& ce = *check.counterexample;
  CHECK(g.space().leq(ce.x_base, ce.y_base));
  CHECK(g.deviation_utility(0, ce.x_base, ce.z) <= g.deviation_utility(0, ce.x_base, ce.t));
  CHECK(g.deviation_utility(0, ce.y_base, ce.z) > g.deviation_utility(0, ce.y_base, ce.t));
  CHECK(is_order_positive(g, 1).positive);
}

TEST_CASE("nash_set honors the profile cap") {
  std::vector<FinitePoset> posets{FinitePoset::chain(128), FinitePoset::chain(128)};
  std::vector<std::vector<Rat>> u{std::vector<Rat>(16384, Rat(0)), std::vector<Rat>(16384, Rat(0))};
  const StaticGame g(std::move(posets), std::move(u));
  CHECK_THROWS_AS(nash_set(g), CapExceeded);
  CHECK(nash_set(g, 16384).size() == 16384u);  // constant utilities: everything is Nash
}
