#include "splitnash/game.hpp"

namespace splitnash {

StaticGame::StaticGame(std::vector<FinitePoset> strategy_posets,
                       std::vector<std::vector<Rat>> utilities)
    : space_(std::move(strategy_posets)), utilities_(std::move(utilities)) {
  if (space_.factor_count() < 2) throw std::invalid_argument("game needs at least two players");
  if (static_cast<int>(utilities_.size()) != space_.factor_count()) {
    throw std::invalid_argument("one utility table per player required");
  }
  for (const auto& table : utilities_) {
    if (static_cast<int>(table.size()) != space_.size()) {
      throw std::invalid_argument("utility table must cover the whole profile space");
    }
  }
}

int replace(const StaticGame& game, int x, int player, int z) {
  if (x < 0 || x >= game.profile_count()) throw std::invalid_argument("replace: profile out of range");
  if (player < 0 || player >= game.players()) throw std::invalid_argument("replace: player out of range");
  if (z < 0 || z >= game.strategy_poset(player).size()) {
    throw std::invalid_argument("replace: strategy out of range");
  }
  return game.space().replace_coord(x, player, z);
}

UtilityVector utility_vector(const StaticGame& game, int x) {
  UtilityVector out;
  out.reserve(static_cast<std::size_t>(game.players()));
  for (int i = 0; i < game.players(); ++i) out.push_back(game.utility(i, x));
  return out;
}

UtilityVector assoc_vector(const StaticGame& game, int z, int x) {
  UtilityVector out;
  out.reserve(static_cast<std::size_t>(game.players()));
  for (int i = 0; i < game.players(); ++i) {
    out.push_back(game.deviation_utility(i, x, game.space().coord(z, i)));
  }
  return out;
}

bool leq_n(const UtilityVector& u, const UtilityVector& v) {
  if (u.size() != v.size()) throw std::invalid_argument("leq_n: length mismatch");
  for (std::size_t i = 0; i < u.size(); ++i) {
    if (u[i] > v[i]) return false;
  }
  return true;
}

NashCheck is_nash(const StaticGame& game, int x) {
  NashCheck result;
  for (int i = 0; i < game.players(); ++i) {
    const Rat& here = game.utility(i, x);
    for (int z = 0; z < game.strategy_poset(i).size(); ++z) {
      if (game.deviation_utility(i, x, z) > here) {
        result.nash = false;
        result.witness = DeviationWitness{i, z};
        return result;
      }
    }
  }
  return result;
}

bool is_nash_vector_form(const StaticGame& game, int x) {
  const UtilityVector here = utility_vector(game, x);
  for (int z = 0; z < game.profile_count(); ++z) {
    if (!leq_n(assoc_vector(game, z, x), here)) return false;
  }
  return true;
}

std::vector<int> nash_set(const StaticGame& game, int profile_cap) {
  if (game.profile_count() > profile_cap) {
    throw CapExceeded("nash_set profile space", game.profile_count(), profile_cap);
  }
  std::vector<int> out;
  for (int x = 0; x < game.profile_count(); ++x) {
    if (is_nash(game, x).nash) out.push_back(x);
  }
  return out;
}

OrderPositivityCheck is_order_positive(const StaticGame& game, int player) {
  OrderPositivityCheck result;
  const ProductPoset& space = game.space();
  const int own = game.strategy_poset(player).size();
  // Profiles with the player's own coordinate pinned to 0 enumerate opponent
  // profiles exactly once; the product order on them is the opponent order.
  std::vector<int> bases;
  for (int x = 0; x < game.profile_count(); ++x) {
    if (space.coord(x, player) == 0) bases.push_back(x);
  }
  for (int xb : bases) {
    for (int yb : bases) {
      if (!space.leq(xb, yb)) continue;
      for (int z = 0; z < own; ++z) {
        for (int t = 0; t < own; ++t) {
          const bool low = game.deviation_utility(player, xb, z) <= game.deviation_utility(player, xb, t);
          const bool high = game.deviation_utility(player, yb, z) <= game.deviation_utility(player, yb, t);
          if (low && !high) {
            result.positive = false;
            result.counterexample = OrderPositivityCheck::Counterexample{xb, yb, z, t};
            return result;
          }
        }
      }
    }
  }
  return result;
}

Rat bound_M(const StaticGame& game) {
  Rat best(0);
  for (int i = 0; i < game.players(); ++i) {
    for (int x = 0; x < game.profile_count(); ++x) {
      Rat v = game.utility(i, x);
      if (v < 0) v = -v;
      if (v > best) best = v;
    }
  }
  return best;
}

}  // namespace splitnash
