#include "doctest.h"
#include "splitnash/fixedpoint.hpp"

#include <algorithm>
#include <random>
#include <set>
#include <stdexcept>
#include <vector>

using namespace splitnash;

namespace {

std::vector<std::string> names(int n) {
  std::vector<std::string> out;
  for (int i = 0; i < n; ++i) out.push_back("x" + std::to_string(i));
  return out;
}

FinitePoset random_poset(std::mt19937_64& rng, int max_n) {
  std::uniform_int_distribution<int> size_dist(1, max_n);
  const int n = size_dist(rng);
  std::bernoulli_distribution edge(0.35);
  std::vector<std::pair<int, int>> covers;
  for (int a = 0; a < n; ++a)
    for (int b = a + 1; b < n; ++b)
      if (edge(rng)) covers.emplace_back(a, b);
  return FinitePoset::from_covers(names(n), covers);
}

FinitePoset diamond() {
  return FinitePoset::from_covers(names(4), {{0, 1}, {0, 2}, {1, 3}, {2, 3}});
}

SetValuedMap identity_map(FinitePoset p) {
  std::vector<std::vector<int>> values;
  for (int x = 0; x < p.size(); ++x) values.push_back({x});
  return SetValuedMap::make(std::move(p), std::move(values));
}

std::vector<std::vector<int>> random_value_sets(std::mt19937_64& rng, int n) {
  std::vector<std::vector<int>> values(static_cast<std::size_t>(n));
  std::bernoulli_distribution pick(0.4);
  std::uniform_int_distribution<int> any(0, n - 1);
  for (auto& set : values) {
    for (int v = 0; v < n; ++v)
      if (pick(rng)) set.push_back(v);
    if (set.empty()) set.push_back(any(rng));
  }
  return values;
}

// Union of raw value sets over the down-set of x: subset-monotone by
// construction, hence increasing upward.
SetValuedMap monotonized_map(std::mt19937_64& rng, FinitePoset p) {
  const int n = p.size();
  const auto raw = random_value_sets(rng, n);
  std::vector<std::vector<int>> values(static_cast<std::size_t>(n));
  for (int x = 0; x < n; ++x) {
    std::set<int> acc;
    for (int y = 0; y < n; ++y) {
      if (p.leq(y, x)) acc.insert(raw[static_cast<std::size_t>(y)].begin(),
                                  raw[static_cast<std::size_t>(y)].end());
    }
    values[static_cast<std::size_t>(x)].assign(acc.begin(), acc.end());
  }
  return SetValuedMap::make(std::move(p), std::move(values));
}

// Literal transcription of the increasing-upward condition.
bool oracle_increasing_upward(const SetValuedMap& m) {
  const int n = m.domain.size();
  for (int x = 0; x < n; ++x)
    for (int y = 0; y < n; ++y) {
      if (!m.domain.leq(x, y)) continue;
      for (int u : m.values[static_cast<std::size_t>(x)]) {
        bool dominated = false;
        for (int v : m.values[static_cast<std::size_t>(y)]) dominated = dominated || m.domain.leq(u, v);
        if (!dominated) return false;
      }
    }
  return true;
}

}  // namespace

TEST_CASE("set-valued map validation") {
  FinitePoset c2 = FinitePoset::chain(2);
  CHECK_THROWS_AS(SetValuedMap::make(c2, {{0}}), std::invalid_argument);
  CHECK_THROWS_AS(SetValuedMap::make(c2, {{0}, {}}), std::invalid_argument);
  CHECK_THROWS_AS(SetValuedMap::make(c2, {{0}, {1, 0}}), std::invalid_argument);
  CHECK_THROWS_AS(SetValuedMap::make(c2, {{0}, {2}}), std::invalid_argument);
  const SetValuedMap ok = SetValuedMap::make(c2, {{0, 1}, {1}});
  CHECK(ok.contains(0, 1));
  CHECK_FALSE(ok.contains(1, 0));
}

TEST_CASE("identity map satisfies the conditions; maximal point found") {
  const SetValuedMap m = identity_map(diamond());
  const auto report = verify_theorem_a(m);
  CHECK(report.a1.increasing);
  CHECK_FALSE(report.a1.subset_property);  // {x} is not contained in {y} for x < y
  CHECK(report.a2.all_inductive);
  REQUIRE(report.a3.has_value());
  CHECK(report.a3->y_star == 0);
  CHECK(report.conditions_hold);
  CHECK(report.fixed_point_set == std::vector<int>{0, 1, 2, 3});
  CHECK(report.conclusions_hold);
  REQUIRE(report.maximal_above.has_value());
  CHECK(report.maximal_above->element == 3);

  const auto above1 = maximal_fixed_point_above(m, 1);
  REQUIRE(above1.ok);
  CHECK(above1.element == 3);  // maximal element of {1, 3}
}

TEST_CASE("constant map ascends to the constant") {
  FinitePoset c3 = FinitePoset::chain(3);
  const SetValuedMap m = SetValuedMap::make(c3, {{1}, {1}, {1}});
  CHECK(fixed_points(m) == std::vector<int>{1});
  const auto witness = find_witness(m);
  REQUIRE(witness.has_value());
  CHECK(witness->y_star == 0);
  CHECK(witness->v_star == 1);
  const auto ascent = ascend(m, 0);
  CHECK_FALSE(ascent.stalled);
  CHECK(ascent.path == std::vector<int>{0, 1});
  const auto report = verify_theorem_a(m);
  CHECK(report.conditions_hold);
  CHECK(report.conclusions_hold);
  REQUIRE(report.maximal_above.has_value());
  CHECK(report.maximal_above->element == 1);
}

TEST_CASE("antichain swap: no witness, empty fixed-point set") {
  FinitePoset a2 = FinitePoset::antichain(2);
  const SetValuedMap m = SetValuedMap::make(a2, {{1}, {0}});
  CHECK(is_increasing_upward(m).increasing);  // only reflexive pairs to check
  CHECK_FALSE(find_witness(m).has_value());
  CHECK(fixed_points(m).empty());
  const auto report = verify_theorem_a(m);
  CHECK_FALSE(report.conditions_hold);
  CHECK_FALSE(report.conclusions_hold);
}

TEST_CASE("chain swap: increasing-upward fails and ascent stalls") {
  FinitePoset c2 = FinitePoset::chain(2);
  const SetValuedMap m = SetValuedMap::make(c2, {{1}, {0}});
  const auto check = is_increasing_upward(m);
  REQUIRE_FALSE(check.increasing);
  REQUIRE(check.counterexample.has_value());
  CHECK(check.counterexample->x == 0);
  CHECK(check.counterexample->y == 1);
  CHECK(check.counterexample->u == 1);
  const auto ascent = ascend(m, 0);
  CHECK(ascent.stalled);
  CHECK(ascent.stall_at == 1);
  CHECK(ascent.path == std::vector<int>{0, 1});
  const auto above = maximal_fixed_point_above(m, 0);
  CHECK_FALSE(above.ok);
}

TEST_CASE("increasing-upward checker agrees with its oracle on random maps") {
  std::mt19937_64 rng(9001);
  for (int trial = 0; trial < 150; ++trial) {
    const FinitePoset p = random_poset(rng, 6);
    auto values = random_value_sets(rng, p.size());
    for (auto& set : values) {
      std::sort(set.begin(), set.end());
      set.erase(std::unique(set.begin(), set.end()), set.end());
    }
    const SetValuedMap m = SetValuedMap::make(p, std::move(values));
    const auto check = is_increasing_upward(m);
    CHECK(check.increasing == oracle_increasing_upward(m));
    if (!check.increasing) {
      // Replay the counterexample.
      const auto& ce = *check.counterexample;
      CHECK(m.domain.leq(ce.x, ce.y));
      bool dominated = false;
      for (int v : m.values[static_cast<std::size_t>(ce.y)]) {
        dominated = dominated || m.domain.leq(ce.u, v);
      }
      CHECK_FALSE(dominated);
    }
    if (check.subset_property) CHECK(check.increasing);  // subset implies increasing upward
  }
}

TEST_CASE("campaign: monotonized random maps never violate the conclusions") {
  std::mt19937_64 rng(9002);
  int with_witness = 0;
  for (int trial = 0; trial < 200; ++trial) {
    const SetValuedMap m = monotonized_map(rng, random_poset(rng, 8));
    const auto check = is_increasing_upward(m);
    CHECK(check.increasing);
    CHECK(check.subset_property);
    const auto report = verify_theorem_a(m);
    if (report.conditions_hold) {
      ++with_witness;
      CHECK(report.conclusions_hold);
      CHECK_FALSE(report.fixed_point_set.empty());
      REQUIRE(report.maximal_above.has_value());
      // The maximal point really is a fixed point above the witness with
      // nothing strictly above it in the fixed-point set.
      const int m_star = report.maximal_above->element;
      CHECK(m.contains(m_star, m_star));
      CHECK(m.domain.leq(report.a3->y_star, m_star));
      for (int f : report.fixed_point_set) CHECK_FALSE(m.domain.less(m_star, f));
    }
  }
  CHECK(with_witness >= 100);
}
