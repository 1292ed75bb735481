#pragma once

#include "splitnash/repeated.hpp"

#include <optional>
#include <utility>
#include <vector>

namespace splitnash {

// Composed price transforms rarely return to a previous matrix; keep the
// default search short. Exact shipped schedules cycle within a few steps.
inline constexpr long kDefaultTransformStepCap = 1000;

// Two firms selling an identical good: costs 0 < c1 <= c2, price caps above
// the costs, clamped linear demand d0 - d1 p1 - d2 p2 and tie shares
// proportional to costs on the line p1 = (c1/c2) p2. Firms can only quote
// prices from their finite grids.
struct BertrandModel {
  Rat c1, c2;
  Rat cap1, cap2;
  Rat d0, d1, d2;
  std::vector<Rat> grid1, grid2;  // ascending, contain the costs, bounded by the caps

  static BertrandModel make(Rat c1, Rat c2, Rat cap1, Rat cap2, Rat d0, Rat d1, Rat d2,
                            std::vector<Rat> grid1, std::vector<Rat> grid2);

  Rat lambda() const { return c1 / c2; }  // tie-line slope, in (0, 1]
};

// {0, step, 2 step, ..., hi}; hi must be a multiple of step.
std::vector<Rat> uniform_grid(const Rat& step, const Rat& hi);

// max(0, d0 - d1 p1 - d2 p2); prices must be nonnegative.
Rat demand(const BertrandModel& m, const Rat& p1, const Rat& p2);

struct Sales {
  Rat firm1, firm2;
};

// Sales split: firm 1 takes the whole demand below the tie line
// p1 = lambda p2, firm 2 above it; on the line the shares are c1/(c1+c2) and
// c2/(c1+c2). A firm quoting at or above its cap sells nothing.
Sales sales(const BertrandModel& m, const Rat& p1, const Rat& p2);

// (p_j - c_j) * own sales.
Rat profit(const BertrandModel& m, int firm, const Rat& p1, const Rat& p2);

struct PricePoint {
  Rat p1, p2;
  bool operator==(const PricePoint& other) const { return p1 == other.p1 && p2 == other.p2; }
};

// Column-stochastic 2x2 price mixer [[alpha, 1-beta], [1-alpha, beta]] with
// alpha, beta in [0, 1]; preserves p1 + p2. Closed under composition, so
// composed stage matrices are stored in the same two-parameter form.
struct PriceTransform {
  Rat alpha, beta;

  bool is_identity() const { return alpha == 1 && beta == 1; }
  bool operator==(const PriceTransform& other) const {
    return alpha == other.alpha && beta == other.beta;
  }

  static PriceTransform identity() { return {Rat(1), Rat(1)}; }
  static PriceTransform swap() { return {Rat(0), Rat(0)}; }
};

PriceTransform make_transform(Rat alpha, Rat beta);  // validates the ranges

struct TransformStep {
  PricePoint to;
  // Direction claims checked per step, never assumed.
  bool p1_nondecreasing;
  bool p2_nonincreasing;
};

TransformStep apply_transform(const PriceTransform& t, const PricePoint& from);

// Matrix product, outer after inner.
PriceTransform compose(const PriceTransform& outer, const PriceTransform& inner);

struct TransformSchedule {
  std::vector<PriceTransform> prefix;
  std::vector<PriceTransform> cycle;

  bool all_identity() const;
  static TransformSchedule identity();
  const PriceTransform& at(long k) const;  // M_k, k >= 1
  int slot_of(long k) const;
};

// Trajectory of a starting price pair with per-step direction flags.
struct PricePath {
  std::vector<PricePoint> points;  // points[k] after k steps
  std::vector<bool> p1_nondecreasing, p2_nonincreasing;
};

PricePath trace_prices(const TransformSchedule& s, const PricePoint& start, long steps);

// Composed stage matrices Pi_k with cycle detection on the exact (slot,
// matrix) state. Generic parameters never recur; the trajectory is then
// partial up to its horizon.
class PriceTrajectory {
 public:
  explicit PriceTrajectory(const TransformSchedule& schedule,
                           long step_cap = kDefaultTransformStepCap);

  const CycleInfo& cycle() const { return cycle_; }
  const PriceTransform& pi(long k) const;
  PricePoint at(const PricePoint& start, long k) const;

 private:
  std::vector<PriceTransform> composed_;
  CycleInfo cycle_;
};

// The one-shot grid game: player j picks an index into grid j.
StaticGame static_game(const BertrandModel& m);

// Exact index of price p in the grid, -1 if absent.
int grid_index(const std::vector<Rat>& grid, const Rat& p);

struct OffGridImage {
  PriceTransform transform;
  PricePoint from;
  PricePoint to;  // image that left the grids
};

struct ScheduleBuild {
  std::optional<OperatorSchedule> schedule;
  std::optional<OffGridImage> off_grid;
};

// Profile-operator tables for each transform; fails with the first offending
// (transform, grid point) when a transform is not grid-closed.
ScheduleBuild schedule_from_transforms(const BertrandModel& m, const TransformSchedule& s);

struct DeviationRecord {
  long k;
  int firm;              // 1 or 2
  PricePoint z;          // grid deviation profile
  Rat deviation_price;   // the firm's stage-k price under z's trajectory
  PricePoint path_point; // stage-k prices under x's trajectory
  Rat deviation_profit;
  Rat path_profit;
};

struct BertrandInfSplitCheck {
  bool inf_split = true;
  std::optional<DeviationRecord> first_violation;
  bool partial = false;
};

// Stage-wise equilibrium test at grid profile x under the matrix trajectory;
// works off-grid because profits are closed-form in exact prices.
BertrandInfSplitCheck bertrand_is_inf_split(const BertrandModel& m, const PriceTrajectory& traj,
                                            const PricePoint& x);

struct Theorem3Report {
  CycleInfo cycle;
  bool partial = false;
  bool symmetric_costs = false;
  bool all_identity = false;
  bool grid_closed = false;

  std::vector<PricePoint> inf_split_members;  // grid scan, ascending
  bool cost_profile_member = false;

  // Case analysis: symmetric costs must keep (c, c) in the set; asymmetric
  // costs with the identity schedule must keep (c1, c2) in it. With a
  // non-identity schedule the report carries explicit stage-deviation
  // evidence at (c1, c2) instead: the first violation and the one with the
  // largest profit gain.
  bool case_symmetric_applies = false;
  bool case_identity_applies = false;
  bool case_holds = false;
  std::optional<DeviationRecord> first_violation;
  std::optional<DeviationRecord> strongest_violation;

  std::vector<PricePoint> extra_members;  // members besides (c1, c2)
  // When every transform is grid-closed the table route (operator schedule +
  // repeated-game machinery) must produce the same member set.
  std::optional<bool> table_route_agrees;
};

Theorem3Report verify_theorem3(const BertrandModel& m, const TransformSchedule& s,
                               long step_cap = kDefaultTransformStepCap,
                               int profile_cap = kDefaultProfileCap);

// Discounted values of both firms at (c1, c2) under the identity schedule;
// zero margins make every stage profit vanish exactly.
std::pair<Rat, Rat> corollary4_values(const BertrandModel& m, const Rat& rho);

}  // namespace splitnash
