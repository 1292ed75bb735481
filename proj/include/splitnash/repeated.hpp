#pragma once

#include "splitnash/dual.hpp"

#include <optional>
#include <vector>

namespace splitnash {

inline constexpr long kDefaultCycleStepCap = 100000;

// Eventually periodic operator schedule A_1, A_2, ...: the prefix operators
// first, then the cycle repeated forever. A_0 is the identity by convention
// and is not stored.
struct OperatorSchedule {
  std::vector<ProfileOperator> prefix;
  std::vector<ProfileOperator> cycle;

  OperatorSchedule(std::vector<ProfileOperator> prefix_ops, std::vector<ProfileOperator> cycle_ops);

  static OperatorSchedule identity(int profile_count);

  int profile_count() const;
  // A_k for k >= 1.
  const ProfileOperator& op_at(long k) const;
  // Stable index of A_k's slot in the program (prefix position or cycle
  // position); equal slots guarantee equal operator streams from k on.
  int slot_of(long k) const;
};

struct CycleInfo {
  bool complete = true;
  long preperiod = 0;  // k0: first index of the recurring block
  long period = 1;     // q >= 1
  long horizon = 0;    // last composed index when detection was cut off
  // Quantifiers over all k collapse to k < k_bound().
  long k_bound() const { return complete ? preperiod + period : horizon + 1; }
};

// Memoized compositions Pi_k = A_k ... A_1 (Pi_0 = identity) with cycle
// detection on the exact state (next slot, composed table). Detection stops
// at step_cap or when the table pool exceeds an internal memory budget; the
// result is then marked incomplete and usable up to `horizon` only.
class ComposedTrajectory {
 public:
  ComposedTrajectory(const OperatorSchedule& schedule, long step_cap = kDefaultCycleStepCap);

  const CycleInfo& cycle() const { return cycle_; }
  // Pi_k; any k >= 0 when the cycle is complete, else k <= horizon.
  const ProfileOperator& pi(long k) const;

 private:
  std::vector<ProfileOperator> pool_;  // distinct composed tables
  std::vector<int> table_at_;          // k -> pool id, k < k_bound()
  CycleInfo cycle_;
};

// detect_cycle as a standalone operation.
CycleInfo detect_cycle(const OperatorSchedule& schedule, long step_cap = kDefaultCycleStepCap);

// Infinitely repeated game: at stage k the profile played is Pi_k(x).
struct RepeatedGame {
  StaticGame game;
  OperatorSchedule schedule;
  Rat rho;  // discount, 0 < rho < 1
  ComposedTrajectory trajectory;

  RepeatedGame(StaticGame g, OperatorSchedule s, Rat discount,
               long step_cap = kDefaultCycleStepCap);
};

struct ProfileSubset {
  std::vector<int> members;
  bool partial = false;  // verified only up to the detection horizon
};

// psi(x): profiles t whose whole trajectory is a per-player best reply
// against the trajectory of x, stage by stage.
ProfileSubset psi(const RepeatedGame& rep, int x);

struct InfSplitViolation {
  long k;     // stage
  int player;
  int z;      // deviating profile (flat)
};

struct InfSplitCheck {
  bool inf_split = true;
  std::optional<InfSplitViolation> witness;  // first violation in (k, player, z) order
  bool partial = false;
};

// x is an infinitely split equilibrium: at every stage k, no player gains by
// replacing the trajectory profile of x with the trajectory image of any z.
InfSplitCheck is_inf_split_ne(const RepeatedGame& rep, int x);

ProfileSubset inf_split_ne_set(const RepeatedGame& rep, int profile_cap = kDefaultProfileCap);

// Discounted value h_i(x) = sum_k rho^k f_i(Pi_k x) in exact closed form
// (prefix sum plus geometric cycle block). Throws std::logic_error when the
// cycle was not detected.
Rat discounted_utility(const RepeatedGame& rep, int player, int x);

// H_i(z, x): player i deviates to the trajectory of z while everyone else
// follows the trajectory of x.
Rat deviation_discounted_utility(const RepeatedGame& rep, int player, int z, int x);

struct RepeatedNashCheck {
  bool nash = true;
  std::optional<DeviationWitness> witness;  // witness.strategy is a flat profile z
};

// H_i(z, x) <= H_i(x, x) for every player and every z.
RepeatedNashCheck is_repeated_ne(const RepeatedGame& rep, int x);

struct Proposition1Report {
  ProfileSubset inf_split;
  std::vector<int> repeated_ne;
  bool inclusion_holds = true;
  std::optional<int> violating;  // infinitely split but not repeated-Nash
};

// Every infinitely split equilibrium is a repeated-game Nash equilibrium.
Proposition1Report check_proposition1(const RepeatedGame& rep,
                                      int profile_cap = kDefaultProfileCap);

struct Theorem2Report {
  std::vector<OrderPositivityCheck> order_positive;
  bool condition_a = true;
  bool psi_nonempty = true;
  std::optional<int> psi_empty_at;
  ValuesInductiveCheck psi_inductive;
  bool condition_b = true;
  // c) every scheduled operator increasing (prefix then cycle order).
  std::vector<MonotonicityCheck> schedule_increasing;
  bool condition_c = true;
  std::optional<WitnessPair> witness;
  bool condition_d = true;
  bool conditions_hold = false;
  bool partial = false;  // psi computed only up to the detection horizon

  std::vector<int> inf_split;
  std::optional<bool> matches_gamma_fixed_points;
  bool psi_monotone_growth = true;
  std::optional<std::pair<int, int>> growth_counterexample;

  std::optional<InductivityCheck> inf_split_inductive;
  std::optional<InductivityCheck> inf_split_above_inductive;
  std::optional<MaximalFixedPointResult> maximal_above;
  bool conclusion_nonempty = false;
  bool conclusion_inductive = false;
  bool conclusion_above_nonempty = false;
  bool conclusion_above_inductive = false;
  bool conclusion_maximal_above = false;
  bool conclusions_hold = false;
};

Theorem2Report check_theorem2(const RepeatedGame& rep, int profile_cap = kDefaultProfileCap,
                              int enum_cap = kDefaultChainEnumCap);

}  // namespace splitnash
