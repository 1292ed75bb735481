#include "doctest.h"
#include "splitnash/dual.hpp"
#include "support.hpp"

#include <algorithm>
#include <random>
#include <stdexcept>
#include <vector>

using namespace splitnash;
using namespace splitnash::testsupport;

namespace {

// Coordinate swap on a symmetric two-player space.
ProfileOperator swap_operator(const ProductPoset& space) {
  ProfileOperator op;
  op.image.reserve(static_cast<std::size_t>(space.size()));
  for (int x = 0; x < space.size(); ++x) {
    op.image.push_back(space.encode(std::vector<int>{space.coord(x, 1), space.coord(x, 0)}));
  }
  return op;
}

}  // namespace

TEST_CASE("profile operators: identity, composition, monotonicity") {
  const ProductPoset space(chain_factors({2, 2}));
  const ProfileOperator id = ProfileOperator::identity(4);
  const ProfileOperator swap = swap_operator(space);
  CHECK(compose(id, swap) == swap);
  CHECK(compose(swap, swap) == id);
  CHECK(is_increasing(space, id).increasing);
  CHECK(is_increasing(space, swap).increasing);

  ProfileOperator bad;
  bad.image = {3, 0, 0, 0};  // bottom jumps above incomparable images
  const auto check = is_increasing(space, bad);
  REQUIRE_FALSE(check.increasing);
  const auto [x, y] = *check.counterexample;
  CHECK(space.leq(x, y));
  CHECK_FALSE(space.leq(bad(x), bad(y)));

  CHECK_THROWS_AS(compose(id, ProfileOperator::identity(3)), std::invalid_argument);
}

TEST_CASE("pi: per-player form equals the vector-order form") {
  std::mt19937_64 rng(10001);
  for (int trial = 0; trial < 40; ++trial) {
    const StaticGame g = random_game(rng, random_sizes(rng, 3, 3));
    const DualGame dual(g, random_operator(rng, g.profile_count()));
    for (int x = 0; x < g.profile_count(); ++x) {
      CHECK(pi(dual, x) == pi_vector_form(dual, x));
    }
  }
}

TEST_CASE("identity operator: split equals nash, pi is the best-reply product") {
  std::mt19937_64 rng(10002);
  for (int trial = 0; trial < 30; ++trial) {
    const StaticGame g = random_game(rng, random_sizes(rng, 3, 3));
    const DualGame dual(g, ProfileOperator::identity(g.profile_count()));
    CHECK(split_ne_set(dual) == nash_set(g));
    for (int x = 0; x < g.profile_count(); ++x) {
      // Independent description: t belongs to pi(x) iff every coordinate is a
      // best reply against x.
      std::vector<int> expected;
      for (int t = 0; t < g.profile_count(); ++t) {
        bool member = true;
        for (int i = 0; i < g.players() && member; ++i) {
          const Rat& mine = g.deviation_utility(i, x, g.space().coord(t, i));
          for (int z = 0; z < g.strategy_poset(i).size() && member; ++z) {
            member = g.deviation_utility(i, x, z) <= mine;
          }
        }
        if (member) expected.push_back(t);
      }
      CHECK(pi(dual, x) == expected);
    }
  }
}

TEST_CASE("split membership is fixed-point membership of pi") {
  std::mt19937_64 rng(10003);
  for (int trial = 0; trial < 40; ++trial) {
    const StaticGame g = random_game(rng, random_sizes(rng, 3, 3));
    const DualGame dual(g, trial % 2 == 0 ? random_operator(rng, g.profile_count())
                                          : random_monotone_operator(rng, g.space(), false));
    for (int x = 0; x < g.profile_count(); ++x) {
      const auto px = pi(dual, x);
      CHECK(is_split_ne(dual, x).split == std::binary_search(px.begin(), px.end(), x));
    }
    const GammaBuild built = gamma(dual);
    if (built.map.has_value()) {
      CHECK(fixed_points(*built.map) == split_ne_set(dual));
    } else {
      REQUIRE(built.empty_at.has_value());
      CHECK(pi(dual, *built.empty_at).empty());
    }
  }
}

TEST_CASE("static equilibrium can break in the second play") {
  // Player 1's utility is constant; player 2 prefers the opponent-swapped
  // continuation only when it raises the first coordinate.
  std::vector<FinitePoset> posets = chain_factors({2, 2});
  std::vector<std::vector<Rat>> u{
      {Rat(0), Rat(0), Rat(0), Rat(0)},
      {Rat(0), Rat(1), Rat(0), Rat(5)},
  };
  const StaticGame g(std::move(posets), std::move(u));
  const DualGame dual(g, swap_operator(g.space()));

  const int x = 1;  // (0,1)
  CHECK(is_nash(g, x).nash);
  const SplitCheck check = is_split_ne(dual, x);
  REQUIRE_FALSE(check.split);
  REQUIRE(check.witness.has_value());
  CHECK(check.witness->stage == 2);
  CHECK(check.witness->player == 1);
  CHECK(check.witness->z == 2);
  // Replay: through the swap, the deviation beats staying put.
  const int ax = dual.op(x);
  const int dev = g.space().coord(dual.op(check.witness->z), 1);
  CHECK(g.deviation_utility(1, ax, dev) > g.utility(1, ax));

  CHECK(split_ne_set(dual) == std::vector<int>{3});
  CHECK(nash_set(g) == std::vector<int>{1, 3});
}

TEST_CASE("theorem 1 conditions imply the conclusions on aligned instances") {
  std::mt19937_64 rng(10004);
  int verified = 0;
  for (int trial = 0; trial < 40; ++trial) {
    const std::vector<int> sizes = random_sizes(rng, 3, 3);
    const StaticGame g = separable_game(rng, sizes, true);
    const DualGame dual(g, random_monotone_operator(rng, g.space(), true));
    const SplitReport report = check_theorem1(dual);
    CHECK(report.condition_a);  // separable games are order-positive
    CHECK(report.condition_c);  // operator built monotone
    if (!report.conditions_hold) continue;
    ++verified;
    CHECK(report.conclusions_hold);
    CHECK(report.pi_monotone_growth);
    REQUIRE(report.matches_gamma_fixed_points.has_value());
    CHECK(*report.matches_gamma_fixed_points);
    CHECK_FALSE(report.split_ne.empty());
    REQUIRE(report.maximal_above.has_value());
    const int m_star = report.maximal_above->element;
    CHECK(std::binary_search(report.split_ne.begin(), report.split_ne.end(), m_star));
    CHECK(g.space().leq(report.witness->y_star, m_star));
    for (int s : report.split_ne) {
      const bool strictly_above = s != m_star && g.space().leq(m_star, s);
      CHECK_FALSE(strictly_above);
    }
  }
  CHECK(verified >= 30);
}

TEST_CASE("profile caps are enforced") {
  std::vector<FinitePoset> posets{FinitePoset::chain(2), FinitePoset::chain(2)};
  std::vector<std::vector<Rat>> u{std::vector<Rat>(4, Rat(0)), std::vector<Rat>(4, Rat(0))};
  const StaticGame g(std::move(posets), std::move(u));
  const DualGame dual(g, ProfileOperator::identity(4));
  CHECK_THROWS_AS(split_ne_set(dual, 3), CapExceeded);
  CHECK_THROWS_AS(gamma(dual, 3), CapExceeded);
  CHECK_THROWS_AS(check_theorem1(dual, 3), CapExceeded);
  CHECK(split_ne_set(dual, 4).size() == 4u);
}
