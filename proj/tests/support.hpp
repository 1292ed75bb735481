#pragma once

// Shared instance generators and oracles for the unit tests and the
// acceptance suite.

#include "splitnash/dual.hpp"
#include "splitnash/game.hpp"
#include "splitnash/poset.hpp"
#include "splitnash/rational.hpp"

#include <random>
#include <vector>

namespace splitnash::testsupport {

inline std::vector<FinitePoset> chain_factors(const std::vector<int>& sizes) {
  std::vector<FinitePoset> out;
  out.reserve(sizes.size());
  for (int s : sizes) out.push_back(FinitePoset::chain(s));
  return out;
}

inline std::vector<int> random_sizes(std::mt19937_64& rng, int max_players, int max_strategies) {
  std::uniform_int_distribution<int> np(2, max_players);
  std::uniform_int_distribution<int> ns(1, max_strategies);
  std::vector<int> sizes(static_cast<std::size_t>(np(rng)));
  for (int& s : sizes) s = ns(rng);
  return sizes;
}

inline StaticGame random_game(std::mt19937_64& rng, const std::vector<int>& sizes) {
  auto posets = chain_factors(sizes);
  ProductPoset space(posets);
  std::uniform_int_distribution<int> num(-6, 6);
  std::uniform_int_distribution<int> den(1, 3);
  std::vector<std::vector<Rat>> u(sizes.size());
  for (auto& table : u) {
    table.reserve(static_cast<std::size_t>(space.size()));
    for (int x = 0; x < space.size(); ++x) table.emplace_back(num(rng), den(rng));
  }
  return StaticGame(std::move(posets), std::move(u));
}

// Separable utilities f_i(x) = g_i(x_i) + m_i(x_{-i}); always order-positive.
// When `top_aligned`, g_i attains a strict maximum at the top strategy, so
// the top profile is a per-player best reply against anything.
inline StaticGame separable_game(std::mt19937_64& rng, const std::vector<int>& sizes,
                                 bool top_aligned) {
  auto posets = chain_factors(sizes);
  ProductPoset space(posets);
  const int n = static_cast<int>(sizes.size());
  std::uniform_int_distribution<int> num(-6, 6);
  std::vector<std::vector<Rat>> own(static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i) {
    for (int z = 0; z < sizes[static_cast<std::size_t>(i)]; ++z) {
      own[static_cast<std::size_t>(i)].emplace_back(num(rng));
    }
    if (top_aligned) own[static_cast<std::size_t>(i)].back() = Rat(10);
  }
  std::vector<std::vector<Rat>> u(static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i) {
    std::vector<Rat> opp(static_cast<std::size_t>(space.size()));
    for (int x = 0; x < space.size(); ++x) {
      if (space.coord(x, i) == 0) opp[static_cast<std::size_t>(x)] = Rat(num(rng));
    }
    auto& table = u[static_cast<std::size_t>(i)];
    table.reserve(static_cast<std::size_t>(space.size()));
    for (int x = 0; x < space.size(); ++x) {
      const int base = space.replace_coord(x, i, 0);
      table.push_back(own[static_cast<std::size_t>(i)][static_cast<std::size_t>(space.coord(x, i))] +
                      opp[static_cast<std::size_t>(base)]);
    }
  }
  return StaticGame(std::move(posets), std::move(u));
}

// Random increasing operator on a product of chains, built along the flat
// (lexicographic) linear extension. With `fix_top` the all-top profile maps
// to itself, which keeps top-aligned best replies inside the image.
inline ProfileOperator random_monotone_operator(std::mt19937_64& rng, const ProductPoset& space,
                                                bool fix_top) {
  const int P = space.size();
  ProfileOperator op;
  op.image.assign(static_cast<std::size_t>(P), 0);
  for (int x = 0; x < P; ++x) {
    std::vector<int> candidates;
    for (int v = 0; v < P; ++v) {
      bool fits = true;
      for (int y = 0; y < x && fits; ++y) {
        if (space.leq(y, x)) fits = space.leq(op(y), v);
      }
      if (fits) candidates.push_back(v);
    }
    // The top profile is always a candidate, so the set is never empty.
    if (fix_top && x == P - 1) {
      op.image[static_cast<std::size_t>(x)] = P - 1;
    } else {
      std::uniform_int_distribution<std::size_t> pick(0, candidates.size() - 1);
      op.image[static_cast<std::size_t>(x)] = candidates[pick(rng)];
    }
  }
  return op;
}

inline ProfileOperator random_operator(std::mt19937_64& rng, int profile_count) {
  ProfileOperator op;
  std::uniform_int_distribution<int> pick(0, profile_count - 1);
  op.image.reserve(static_cast<std::size_t>(profile_count));
  for (int x = 0; x < profile_count; ++x) op.image.push_back(pick(rng));
  return op;
}

}  // namespace splitnash::testsupport
