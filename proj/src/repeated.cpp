#include "splitnash/repeated.hpp"

#include <algorithm>
#include <map>
#include <stdexcept>

namespace splitnash {

OperatorSchedule::OperatorSchedule(std::vector<ProfileOperator> prefix_ops,
                                   std::vector<ProfileOperator> cycle_ops)
    : prefix(std::move(prefix_ops)), cycle(std::move(cycle_ops)) {
  if (cycle.empty()) throw std::invalid_argument("schedule cycle must be nonempty");
  const int n = cycle.front().size();
  if (n == 0) throw std::invalid_argument("schedule operators must be nonempty");
  for (const auto& op : prefix) {
    if (op.size() != n) throw std::invalid_argument("schedule operators must share one size");
  }
  for (const auto& op : cycle) {
    if (op.size() != n) throw std::invalid_argument("schedule operators must share one size");
  }
}

OperatorSchedule OperatorSchedule::identity(int profile_count) {
  return OperatorSchedule({}, {ProfileOperator::identity(profile_count)});
}

int OperatorSchedule::profile_count() const { return cycle.front().size(); }

const ProfileOperator& OperatorSchedule::op_at(long k) const {
  if (k < 1) throw std::invalid_argument("schedule index starts at 1");
  const long m = static_cast<long>(prefix.size());
  if (k <= m) return prefix[static_cast<std::size_t>(k - 1)];
  return cycle[static_cast<std::size_t>((k - m - 1) % static_cast<long>(cycle.size()))];
}

int OperatorSchedule::slot_of(long k) const {
  if (k < 1) throw std::invalid_argument("schedule index starts at 1");
  const long m = static_cast<long>(prefix.size());
  if (k <= m) return static_cast<int>(k - 1);
  return static_cast<int>(m + (k - m - 1) % static_cast<long>(cycle.size()));
}

ComposedTrajectory::ComposedTrajectory(const OperatorSchedule& schedule, long step_cap) {
  if (step_cap < 1) throw std::invalid_argument("step cap must be positive");
  const int P = schedule.profile_count();
  // Guard against unbounded exact-table storage for adversarial schedules.
  const long long pool_budget_ints = 20'000'000;

  std::map<std::vector<int>, int> pool_index;
  std::map<std::pair<int, int>, long> seen;  // (next slot, table id) -> k
  ProfileOperator current = ProfileOperator::identity(P);
  long k = 0;
  for (;;) {
    int id;
    if (auto it = pool_index.find(current.image); it != pool_index.end()) {
      id = it->second;
    } else {
      id = static_cast<int>(pool_.size());
      pool_.push_back(current);
      pool_index.emplace(current.image, id);
    }
    const std::pair<int, int> state{schedule.slot_of(k + 1), id};
    if (auto it = seen.find(state); it != seen.end()) {
      // Same composed table and same upcoming operator stream: everything
      // from it->second on repeats with period k - it->second.
      cycle_.complete = true;
      cycle_.preperiod = it->second;
      cycle_.period = k - it->second;
      cycle_.horizon = k - 1;
      return;
    }
    seen.emplace(state, k);
    table_at_.push_back(id);
    if (k == step_cap ||
        static_cast<long long>(pool_.size() + 1) * P > pool_budget_ints) {
      cycle_.complete = false;
      cycle_.horizon = k;
      return;
    }
    current = compose(schedule.op_at(k + 1), current);
    ++k;
  }
}

const ProfileOperator& ComposedTrajectory::pi(long k) const {
  if (k < 0) throw std::out_of_range("trajectory index negative");
  if (cycle_.complete && k >= cycle_.preperiod) {
    const long folded = cycle_.preperiod + (k - cycle_.preperiod) % cycle_.period;
    return pool_[static_cast<std::size_t>(table_at_[static_cast<std::size_t>(folded)])];
  }
  if (!cycle_.complete && k > cycle_.horizon) {
    throw std::out_of_range("trajectory verified only up to its horizon");
  }
  return pool_[static_cast<std::size_t>(table_at_[static_cast<std::size_t>(k)])];
}

CycleInfo detect_cycle(const OperatorSchedule& schedule, long step_cap) {
  return ComposedTrajectory(schedule, step_cap).cycle();
}

RepeatedGame::RepeatedGame(StaticGame g, OperatorSchedule s, Rat discount, long step_cap)
    : game(std::move(g)), schedule(std::move(s)), rho(std::move(discount)), trajectory(schedule, step_cap) {
  if (schedule.profile_count() != game.profile_count()) {
    throw std::invalid_argument("schedule does not match the game's profile space");
  }
  for (const auto& op : schedule.prefix) {
    for (int v : op.image) {
      if (v < 0 || v >= game.profile_count()) throw std::invalid_argument("operator image out of range");
    }
  }
  for (const auto& op : schedule.cycle) {
    for (int v : op.image) {
      if (v < 0 || v >= game.profile_count()) throw std::invalid_argument("operator image out of range");
    }
  }
  if (rho <= 0 || rho >= 1) throw std::invalid_argument("discount must satisfy 0 < rho < 1");
}

namespace {

// Stage-k deviation value: player i plays the stage image of z, everyone
// else follows the stage image of x.
const Rat& stage_value(const RepeatedGame& rep, long k, int player, int z, int x) {
  const ProfileOperator& pik = rep.trajectory.pi(k);
  return rep.game.deviation_utility(player, pik(x), rep.game.space().coord(pik(z), player));
}

}  // namespace

ProfileSubset psi(const RepeatedGame& rep, int x) {
  const StaticGame& g = rep.game;
  const long bound = rep.trajectory.cycle().k_bound();
  ProfileSubset out;
  out.partial = !rep.trajectory.cycle().complete;

  std::vector<std::vector<Rat>> best(static_cast<std::size_t>(bound));
  for (long k = 0; k < bound; ++k) {
    auto& row = best[static_cast<std::size_t>(k)];
    row.reserve(static_cast<std::size_t>(g.players()));
    for (int i = 0; i < g.players(); ++i) {
      Rat b = stage_value(rep, k, i, 0, x);
      for (int z = 1; z < g.profile_count(); ++z) {
        const Rat& v = stage_value(rep, k, i, z, x);
        if (v > b) b = v;
      }
      row.push_back(b);
    }
  }
  for (int t = 0; t < g.profile_count(); ++t) {
    bool member = true;
    for (long k = 0; k < bound && member; ++k) {
      for (int i = 0; i < g.players() && member; ++i) {
        member = stage_value(rep, k, i, t, x) == best[static_cast<std::size_t>(k)][static_cast<std::size_t>(i)];
      }
    }
    if (member) out.members.push_back(t);
  }
  return out;
}

InfSplitCheck is_inf_split_ne(const RepeatedGame& rep, int x) {
  const StaticGame& g = rep.game;
  const long bound = rep.trajectory.cycle().k_bound();
  InfSplitCheck result;
  result.partial = !rep.trajectory.cycle().complete;
  for (long k = 0; k < bound; ++k) {
    for (int i = 0; i < g.players(); ++i) {
      const Rat& here = g.utility(i, rep.trajectory.pi(k)(x));
      for (int z = 0; z < g.profile_count(); ++z) {
        if (stage_value(rep, k, i, z, x) > here) {
          result.inf_split = false;
          result.witness = InfSplitViolation{k, i, z};
          return result;
        }
      }
    }
  }
  return result;
}

ProfileSubset inf_split_ne_set(const RepeatedGame& rep, int profile_cap) {
  if (rep.game.profile_count() > profile_cap) {
    throw CapExceeded("inf_split_ne_set profile space", rep.game.profile_count(), profile_cap);
  }
  ProfileSubset out;
  out.partial = !rep.trajectory.cycle().complete;
  for (int x = 0; x < rep.game.profile_count(); ++x) {
    if (is_inf_split_ne(rep, x).inf_split) out.members.push_back(x);
  }
  return out;
}

namespace {

void require_cycle(const RepeatedGame& rep) {
  if (!rep.trajectory.cycle().complete) {
    throw std::logic_error("discounted values need a detected cycle");
  }
}

// sum_{k>=0} rho^k g(k) for eventually periodic g: exact prefix sum plus one
// periodic block divided by (1 - rho^q).
template <typename StageFn>
Rat discounted_sum(const RepeatedGame& rep, StageFn&& g) {
  const long k0 = rep.trajectory.cycle().preperiod;
  const long q = rep.trajectory.cycle().period;
  Rat sum(0);
  Rat power(1);  // rho^k
  for (long k = 0; k < k0; ++k) {
    sum += power * g(k);
    power *= rep.rho;
  }
  Rat block(0);
  for (long k = k0; k < k0 + q; ++k) {
    block += power * g(k);
    power *= rep.rho;
  }
  return sum + block / (Rat(1) - rat_pow(rep.rho, static_cast<unsigned long>(q)));
}

}  // namespace

Rat discounted_utility(const RepeatedGame& rep, int player, int x) {
  require_cycle(rep);
  return discounted_sum(rep, [&](long k) -> const Rat& {
    return rep.game.utility(player, rep.trajectory.pi(k)(x));
  });
}

Rat deviation_discounted_utility(const RepeatedGame& rep, int player, int z, int x) {
  require_cycle(rep);
  return discounted_sum(rep, [&](long k) -> const Rat& { return stage_value(rep, k, player, z, x); });
}

RepeatedNashCheck is_repeated_ne(const RepeatedGame& rep, int x) {
  require_cycle(rep);
  RepeatedNashCheck result;
  for (int i = 0; i < rep.game.players(); ++i) {
    const Rat here = discounted_utility(rep, i, x);
    for (int z = 0; z < rep.game.profile_count(); ++z) {
      if (deviation_discounted_utility(rep, i, z, x) > here) {
        result.nash = false;
        result.witness = DeviationWitness{i, z};
        return result;
      }
    }
  }
  return result;
}

Proposition1Report check_proposition1(const RepeatedGame& rep, int profile_cap) {
  require_cycle(rep);
  Proposition1Report report;
  report.inf_split = inf_split_ne_set(rep, profile_cap);
  for (int x = 0; x < rep.game.profile_count(); ++x) {
    if (is_repeated_ne(rep, x).nash) report.repeated_ne.push_back(x);
  }
  for (int x : report.inf_split.members) {
    if (!std::binary_search(report.repeated_ne.begin(), report.repeated_ne.end(), x)) {
      report.inclusion_holds = false;
      report.violating = x;
      break;
    }
  }
  return report;
}

Theorem2Report check_theorem2(const RepeatedGame& rep, int profile_cap, int enum_cap) {
  const StaticGame& g = rep.game;
  if (g.profile_count() > profile_cap) {
    throw CapExceeded("check_theorem2 profile space", g.profile_count(), profile_cap);
  }
  Theorem2Report report;
  report.partial = !rep.trajectory.cycle().complete;

  for (int i = 0; i < g.players(); ++i) {
    report.order_positive.push_back(is_order_positive(g, i));
    report.condition_a = report.condition_a && report.order_positive.back().positive;
  }

  const FinitePoset domain = g.space().to_poset();
  std::vector<std::vector<int>> psis;
  psis.reserve(static_cast<std::size_t>(g.profile_count()));
  for (int x = 0; x < g.profile_count(); ++x) {
    psis.push_back(psi(rep, x).members);
    if (psis.back().empty() && report.psi_nonempty) {
      report.psi_nonempty = false;
      report.psi_empty_at = x;
    }
  }
  for (int x = 0; x < g.profile_count() && report.psi_inductive.all_inductive; ++x) {
    if (psis[static_cast<std::size_t>(x)].empty()) continue;
    const InductivityCheck check = is_inductive(domain, psis[static_cast<std::size_t>(x)], enum_cap);
    if (check.method == OrderCheckMethod::FiniteTheorem) {
      report.psi_inductive.method = OrderCheckMethod::FiniteTheorem;
    }
    if (!check.inductive) {
      report.psi_inductive.all_inductive = false;
      report.psi_inductive.failing_x = x;
    }
  }
  report.condition_b = report.psi_nonempty && report.psi_inductive.all_inductive;

  for (const auto& op : rep.schedule.prefix) {
    report.schedule_increasing.push_back(is_increasing(g.space(), op));
    report.condition_c = report.condition_c && report.schedule_increasing.back().increasing;
  }
  for (const auto& op : rep.schedule.cycle) {
    report.schedule_increasing.push_back(is_increasing(g.space(), op));
    report.condition_c = report.condition_c && report.schedule_increasing.back().increasing;
  }

  for (int x = 0; x < g.profile_count() && !report.witness; ++x) {
    for (int u : psis[static_cast<std::size_t>(x)]) {
      if (g.space().leq(x, u)) {
        report.witness = WitnessPair{x, u};
        break;
      }
    }
  }
  report.condition_d = report.witness.has_value();
  report.conditions_hold =
      report.condition_a && report.condition_b && report.condition_c && report.condition_d;

  report.inf_split = inf_split_ne_set(rep, profile_cap).members;

  std::optional<SetValuedMap> map;
  if (report.psi_nonempty) {
    map = SetValuedMap::make(domain, psis);
    report.matches_gamma_fixed_points = fixed_points(*map) == report.inf_split;
  }

  for (int x = 0; x < g.profile_count() && report.psi_monotone_growth; ++x) {
    for (int y = 0; y < g.profile_count(); ++y) {
      if (!g.space().leq(x, y)) continue;
      if (!std::includes(psis[static_cast<std::size_t>(y)].begin(), psis[static_cast<std::size_t>(y)].end(),
                         psis[static_cast<std::size_t>(x)].begin(),
                         psis[static_cast<std::size_t>(x)].end())) {
        report.psi_monotone_growth = false;
        report.growth_counterexample = {x, y};
        break;
      }
    }
  }

  if (!report.conditions_hold) return report;

  report.conclusion_nonempty = !report.inf_split.empty();
  if (report.conclusion_nonempty) {
    report.inf_split_inductive = is_inductive(domain, report.inf_split, enum_cap);
    report.conclusion_inductive = report.inf_split_inductive->inductive;
  }
  std::vector<int> above;
  for (int x : report.inf_split) {
    if (g.space().leq(report.witness->y_star, x)) above.push_back(x);
  }
  report.conclusion_above_nonempty = !above.empty();
  if (report.conclusion_above_nonempty) {
    report.inf_split_above_inductive = is_inductive(domain, above, enum_cap);
    report.conclusion_above_inductive = report.inf_split_above_inductive->inductive;
  }
  report.maximal_above = maximal_fixed_point_above(*map, report.witness->y_star);
  report.conclusion_maximal_above =
      report.maximal_above->ok &&
      std::binary_search(report.inf_split.begin(), report.inf_split.end(), report.maximal_above->element);
  report.conclusions_hold = report.conclusion_nonempty && report.conclusion_inductive &&
                            report.conclusion_above_nonempty && report.conclusion_above_inductive &&
                            report.conclusion_maximal_above;
  return report;
}

}  // namespace splitnash
