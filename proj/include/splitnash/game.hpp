#pragma once

#include "splitnash/poset.hpp"
#include "splitnash/rational.hpp"

#include <optional>
#include <stdexcept>
#include <vector>

namespace splitnash {

inline constexpr int kDefaultProfileCap = 10000;

// Thrown when an exhaustive operation would exceed its profile-space cap.
struct CapExceeded : std::runtime_error {
  CapExceeded(const std::string& what, long long need, long long cap)
      : std::runtime_error(what + ": " + std::to_string(need) + " exceeds cap " +
                           std::to_string(cap)),
        needed(need),
        limit(cap) {}
  long long needed;
  long long limit;
};

using UtilityVector = std::vector<Rat>;

// Finite strategic game with at least two players, partially ordered strategy
// sets and total exact-rational utilities. Profiles are addressed by the flat
// index of the product of the strategy posets (player 0 most significant).
class StaticGame {
 public:
  // utilities[i][x] is player i's utility at flat profile x; every table must
  // cover the whole profile space.
  StaticGame(std::vector<FinitePoset> strategy_posets, std::vector<std::vector<Rat>> utilities);

  int players() const { return space_.factor_count(); }
  const ProductPoset& space() const { return space_; }
  const FinitePoset& strategy_poset(int i) const { return space_.factor(i); }
  int profile_count() const { return space_.size(); }

  const Rat& utility(int player, int x) const {
    return utilities_[static_cast<std::size_t>(player)][static_cast<std::size_t>(x)];
  }
  // f_i(z, x_{-i}): player i's utility after replacing their coordinate by z.
  const Rat& deviation_utility(int player, int x, int z) const {
    return utility(player, space_.replace_coord(x, player, z));
  }

 private:
  ProductPoset space_;
  std::vector<std::vector<Rat>> utilities_;
};

// Profile x with player i's strategy replaced by z, as flat indices.
int replace(const StaticGame& game, int x, int player, int z);

// f(x) = (f_1(x), ..., f_n(x)).
UtilityVector utility_vector(const StaticGame& game, int x);

// F(z, x) = (f_1(z_1, x_{-1}), ..., f_n(z_n, x_{-n})); F(x, x) = f(x).
UtilityVector assoc_vector(const StaticGame& game, int z, int x);

// Component-wise order on utility vectors. Throws on length mismatch.
bool leq_n(const UtilityVector& u, const UtilityVector& v);

struct DeviationWitness {
  int player;
  int strategy;  // profitable unilateral deviation for that player
};

struct NashCheck {
  bool nash = true;
  std::optional<DeviationWitness> witness;
};

// No player gains by a unilateral deviation; witness is the first profitable
// deviation in (player, strategy) order.
NashCheck is_nash(const StaticGame& game, int x);

// Same predicate through the associated-vector order: x is Nash iff
// F(z, x) <=^n F(x, x) for every profile z.
bool is_nash_vector_form(const StaticGame& game, int x);

// Ascending flat indices of all Nash equilibria. Throws CapExceeded if the
// profile space is larger than profile_cap.
std::vector<int> nash_set(const StaticGame& game, int profile_cap = kDefaultProfileCap);

struct OrderPositivityCheck {
  bool positive = true;
  struct Counterexample {
    // Opponent profiles are carried as flat profiles with player's own
    // coordinate set to 0; z, t are the player's strategies whose ranking
    // flips between them.
    int x_base;
    int y_base;
    int z;
    int t;
  };
  std::optional<Counterexample> counterexample;
};

// Player i's utility ranking of own strategies never flips when the opponent
// profile moves up in the product order.
OrderPositivityCheck is_order_positive(const StaticGame& game, int player);

// M = max over players and profiles of |f_i(x)|.
Rat bound_M(const StaticGame& game);

}  // namespace splitnash
