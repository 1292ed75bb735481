#include "splitnash/bertrand.hpp"

#include <algorithm>
#include <map>
#include <stdexcept>
#include <tuple>
#include <utility>

namespace splitnash {

namespace {

void check_grid(const std::vector<Rat>& grid, const Rat& cost, const Rat& cap, const char* name) {
  if (grid.empty()) throw std::invalid_argument(std::string(name) + " must be nonempty");
  for (std::size_t i = 0; i < grid.size(); ++i) {
    if (grid[i] < 0) throw std::invalid_argument(std::string(name) + " has a negative price");
    if (grid[i] > cap) throw std::invalid_argument(std::string(name) + " exceeds the price cap");
    if (i > 0 && !(grid[i - 1] < grid[i])) {
      throw std::invalid_argument(std::string(name) + " must be strictly ascending");
    }
  }
  if (grid_index(grid, cost) < 0) {
    throw std::invalid_argument(std::string(name) + " must contain the firm's cost");
  }
}

PricePoint apply_point(const PriceTransform& t, const PricePoint& p) {
  return {t.alpha * p.p1 + (1 - t.beta) * p.p2, (1 - t.alpha) * p.p1 + t.beta * p.p2};
}

}  // namespace

BertrandModel BertrandModel::make(Rat c1, Rat c2, Rat cap1, Rat cap2, Rat d0, Rat d1, Rat d2,
                                  std::vector<Rat> grid1, std::vector<Rat> grid2) {
  if (!(c1 > 0)) throw std::invalid_argument("cost c1 must be positive");
  if (!(c1 <= c2)) throw std::invalid_argument("costs must satisfy c1 <= c2");
  if (!(cap1 > c1) || !(cap2 > c2)) throw std::invalid_argument("price caps must exceed the costs");
  if (!(d1 > 0) || !(d2 > 0)) throw std::invalid_argument("demand slopes must be positive");
  if (!(d0 - d1 * c1 - d2 * c2 > 0)) {
    throw std::invalid_argument("demand must be positive at the cost profile");
  }
  check_grid(grid1, c1, cap1, "grid1");
  check_grid(grid2, c2, cap2, "grid2");
  BertrandModel m;
  m.c1 = std::move(c1);
  m.c2 = std::move(c2);
  m.cap1 = std::move(cap1);
  m.cap2 = std::move(cap2);
  m.d0 = std::move(d0);
  m.d1 = std::move(d1);
  m.d2 = std::move(d2);
  m.grid1 = std::move(grid1);
  m.grid2 = std::move(grid2);
  return m;
}

std::vector<Rat> uniform_grid(const Rat& step, const Rat& hi) {
  if (!(step > 0)) throw std::invalid_argument("grid step must be positive");
  if (!(hi > 0)) throw std::invalid_argument("grid top must be positive");
  const Rat count = hi / step;
  if (denominator(count) != 1) throw std::invalid_argument("grid top must be a multiple of the step");
  const long n = static_cast<long>(numerator(count));
  std::vector<Rat> grid;
  grid.reserve(static_cast<std::size_t>(n) + 1);
  for (long i = 0; i <= n; ++i) grid.push_back(step * i);
  return grid;
}

Rat demand(const BertrandModel& m, const Rat& p1, const Rat& p2) {
  if (p1 < 0 || p2 < 0) throw std::invalid_argument("prices must be nonnegative");
  Rat v = m.d0 - m.d1 * p1 - m.d2 * p2;
  return v > 0 ? v : Rat(0);
}

Sales sales(const BertrandModel& m, const Rat& p1, const Rat& p2) {
  const Rat total = demand(m, p1, p2);
  Sales s{Rat(0), Rat(0)};
  // Trichotomy against the tie line; p1 <=> lambda p2 is exact.
  const Rat threshold = m.lambda() * p2;
  if (p1 < threshold) {
    s.firm1 = total;
  } else if (p1 == threshold) {
    s.firm1 = total * m.c1 / (m.c1 + m.c2);
    s.firm2 = total * m.c2 / (m.c1 + m.c2);
  } else {
    s.firm2 = total;
  }
  // The cap rule overrides the split: at or above its cap a firm sells nothing.
  if (p1 >= m.cap1) s.firm1 = 0;
  if (p2 >= m.cap2) s.firm2 = 0;
  return s;
}

Rat profit(const BertrandModel& m, int firm, const Rat& p1, const Rat& p2) {
  if (firm != 1 && firm != 2) throw std::invalid_argument("firm must be 1 or 2");
  const Sales s = sales(m, p1, p2);
  return firm == 1 ? (p1 - m.c1) * s.firm1 : (p2 - m.c2) * s.firm2;
}

PriceTransform make_transform(Rat alpha, Rat beta) {
  if (alpha < 0 || alpha > 1 || beta < 0 || beta > 1) {
    throw std::invalid_argument("transform parameters must lie in [0, 1]");
  }
  return {std::move(alpha), std::move(beta)};
}

TransformStep apply_transform(const PriceTransform& t, const PricePoint& from) {
  TransformStep step;
  step.to = apply_point(t, from);
  step.p1_nondecreasing = step.to.p1 >= from.p1;
  step.p2_nonincreasing = step.to.p2 <= from.p2;
  return step;
}

PriceTransform compose(const PriceTransform& outer, const PriceTransform& inner) {
  // Matrix product of two column-stochastic stages; the diagonal determines
  // the (alpha, beta) form because the columns still sum to 1.
  return {outer.alpha * inner.alpha + (1 - outer.beta) * (1 - inner.alpha),
          (1 - outer.alpha) * (1 - inner.beta) + outer.beta * inner.beta};
}

bool TransformSchedule::all_identity() const {
  const auto id = [](const PriceTransform& t) { return t.is_identity(); };
  return std::all_of(prefix.begin(), prefix.end(), id) && std::all_of(cycle.begin(), cycle.end(), id);
}

TransformSchedule TransformSchedule::identity() { return {{}, {PriceTransform::identity()}}; }

const PriceTransform& TransformSchedule::at(long k) const {
  if (k < 1) throw std::invalid_argument("schedule index starts at 1");
  if (cycle.empty()) throw std::invalid_argument("schedule cycle must be nonempty");
  const long m = static_cast<long>(prefix.size());
  if (k <= m) return prefix[static_cast<std::size_t>(k - 1)];
  return cycle[static_cast<std::size_t>((k - m - 1) % static_cast<long>(cycle.size()))];
}

int TransformSchedule::slot_of(long k) const {
  if (k < 1) throw std::invalid_argument("schedule index starts at 1");
  if (cycle.empty()) throw std::invalid_argument("schedule cycle must be nonempty");
  const long m = static_cast<long>(prefix.size());
  if (k <= m) return static_cast<int>(k - 1);
  return static_cast<int>(m + (k - m - 1) % static_cast<long>(cycle.size()));
}

PricePath trace_prices(const TransformSchedule& s, const PricePoint& start, long steps) {
  if (steps < 0) throw std::invalid_argument("step count must be nonnegative");
  PricePath path;
  path.points.push_back(start);
  for (long k = 1; k <= steps; ++k) {
    const TransformStep step = apply_transform(s.at(k), path.points.back());
    path.points.push_back(step.to);
    path.p1_nondecreasing.push_back(step.p1_nondecreasing);
    path.p2_nonincreasing.push_back(step.p2_nonincreasing);
  }
  return path;
}

PriceTrajectory::PriceTrajectory(const TransformSchedule& schedule, long step_cap) {
  if (step_cap < 1) throw std::invalid_argument("step cap must be positive");
  if (schedule.cycle.empty()) throw std::invalid_argument("schedule cycle must be nonempty");
  std::map<std::tuple<int, Rat, Rat>, long> seen;  // (next slot, matrix) -> k
  PriceTransform current = PriceTransform::identity();
  long k = 0;
  for (;;) {
    const std::tuple<int, Rat, Rat> state{schedule.slot_of(k + 1), current.alpha, current.beta};
    if (auto it = seen.find(state); it != seen.end()) {
      cycle_.complete = true;
      cycle_.preperiod = it->second;
      cycle_.period = k - it->second;
      cycle_.horizon = k - 1;
      return;
    }
    seen.emplace(state, k);
    composed_.push_back(current);
    if (k == step_cap) {
      cycle_.complete = false;
      cycle_.horizon = k;
      return;
    }
    current = compose(schedule.at(k + 1), current);
    ++k;
  }
}

const PriceTransform& PriceTrajectory::pi(long k) const {
  if (k < 0) throw std::out_of_range("trajectory index negative");
  if (cycle_.complete && k >= cycle_.preperiod) {
    const long folded = cycle_.preperiod + (k - cycle_.preperiod) % cycle_.period;
    return composed_[static_cast<std::size_t>(folded)];
  }
  if (!cycle_.complete && k > cycle_.horizon) {
    throw std::out_of_range("trajectory verified only up to its horizon");
  }
  return composed_[static_cast<std::size_t>(k)];
}

PricePoint PriceTrajectory::at(const PricePoint& start, long k) const {
  return apply_point(pi(k), start);
}

StaticGame static_game(const BertrandModel& m) {
  std::vector<std::string> labels1, labels2;
  for (const Rat& p : m.grid1) labels1.push_back(format_rational(p));
  for (const Rat& p : m.grid2) labels2.push_back(format_rational(p));
  const int n1 = static_cast<int>(m.grid1.size());
  const int n2 = static_cast<int>(m.grid2.size());
  std::vector<std::vector<Rat>> utilities(2);
  utilities[0].reserve(static_cast<std::size_t>(n1) * n2);
  utilities[1].reserve(static_cast<std::size_t>(n1) * n2);
  for (int i1 = 0; i1 < n1; ++i1) {
    for (int i2 = 0; i2 < n2; ++i2) {
      utilities[0].push_back(profit(m, 1, m.grid1[i1], m.grid2[i2]));
      utilities[1].push_back(profit(m, 2, m.grid1[i1], m.grid2[i2]));
    }
  }
  std::vector<FinitePoset> chains;
  chains.push_back(FinitePoset::chain(std::move(labels1)));
  chains.push_back(FinitePoset::chain(std::move(labels2)));
  return StaticGame(std::move(chains), std::move(utilities));
}

int grid_index(const std::vector<Rat>& grid, const Rat& p) {
  const auto it = std::lower_bound(grid.begin(), grid.end(), p);
  if (it == grid.end() || *it != p) return -1;
  return static_cast<int>(it - grid.begin());
}

ScheduleBuild schedule_from_transforms(const BertrandModel& m, const TransformSchedule& s) {
  if (s.cycle.empty()) throw std::invalid_argument("schedule cycle must be nonempty");
  const int n1 = static_cast<int>(m.grid1.size());
  const int n2 = static_cast<int>(m.grid2.size());
  ScheduleBuild build;
  const auto table_of = [&](const PriceTransform& t) -> std::optional<ProfileOperator> {
    ProfileOperator op;
    op.image.reserve(static_cast<std::size_t>(n1) * n2);
    for (int i1 = 0; i1 < n1; ++i1) {
      for (int i2 = 0; i2 < n2; ++i2) {
        const PricePoint from{m.grid1[i1], m.grid2[i2]};
        const PricePoint to = apply_point(t, from);
        const int j1 = grid_index(m.grid1, to.p1);
        const int j2 = grid_index(m.grid2, to.p2);
        if (j1 < 0 || j2 < 0) {
          build.off_grid = OffGridImage{t, from, to};
          return std::nullopt;
        }
        op.image.push_back(j1 * n2 + j2);
      }
    }
    return op;
  };
  std::vector<ProfileOperator> prefix, cycle;
  for (const PriceTransform& t : s.prefix) {
    auto op = table_of(t);
    if (!op) return build;
    prefix.push_back(std::move(*op));
  }
  for (const PriceTransform& t : s.cycle) {
    auto op = table_of(t);
    if (!op) return build;
    cycle.push_back(std::move(*op));
  }
  build.schedule = OperatorSchedule(std::move(prefix), std::move(cycle));
  return build;
}

namespace {

Rat stage_profit(const BertrandModel& m, int firm, const PricePoint& p) {
  return profit(m, firm, p.p1, p.p2);
}

// Stage-k deviation profit: the deviator's price is its coordinate of the
// stage image of z, the rival stays on the stage image of x.
Rat stage_deviation(const BertrandModel& m, int firm, const Rat& dev_price,
                    const PricePoint& path) {
  return firm == 1 ? profit(m, 1, dev_price, path.p2) : profit(m, 2, path.p1, dev_price);
}

}  // namespace

BertrandInfSplitCheck bertrand_is_inf_split(const BertrandModel& m, const PriceTrajectory& traj,
                                            const PricePoint& x) {
  BertrandInfSplitCheck out;
  out.partial = !traj.cycle().complete;
  const long bound = traj.cycle().k_bound();
  for (long k = 0; k < bound; ++k) {
    const PriceTransform& stage = traj.pi(k);
    const PricePoint path = apply_point(stage, x);
    for (int firm = 1; firm <= 2; ++firm) {
      const Rat here = stage_profit(m, firm, path);
      for (const Rat& z1 : m.grid1) {
        for (const Rat& z2 : m.grid2) {
          const PricePoint z{z1, z2};
          const PricePoint image = apply_point(stage, z);
          const Rat& dev_price = firm == 1 ? image.p1 : image.p2;
          Rat dev = stage_deviation(m, firm, dev_price, path);
          if (dev > here) {
            out.inf_split = false;
            out.first_violation =
                DeviationRecord{k, firm, z, dev_price, path, std::move(dev), here};
            return out;
          }
        }
      }
    }
  }
  return out;
}

namespace {

// Largest profit gain over the whole scanned range; ties keep the earliest
// (k, firm, lexicographic z).
std::optional<DeviationRecord> strongest_deviation(const BertrandModel& m,
                                                   const PriceTrajectory& traj,
                                                   const PricePoint& x) {
  std::optional<DeviationRecord> best;
  Rat best_gain;
  const long bound = traj.cycle().k_bound();
  for (long k = 0; k < bound; ++k) {
    const PriceTransform& stage = traj.pi(k);
    const PricePoint path = apply_point(stage, x);
    for (int firm = 1; firm <= 2; ++firm) {
      const Rat here = stage_profit(m, firm, path);
      for (const Rat& z1 : m.grid1) {
        for (const Rat& z2 : m.grid2) {
          const PricePoint z{z1, z2};
          const PricePoint image = apply_point(stage, z);
          const Rat& dev_price = firm == 1 ? image.p1 : image.p2;
          Rat dev = stage_deviation(m, firm, dev_price, path);
          if (dev <= here) continue;
          Rat gain = dev - here;
          if (!best || gain > best_gain) {
            best = DeviationRecord{k, firm, z, dev_price, path, std::move(dev), here};
            best_gain = std::move(gain);
          }
        }
      }
    }
  }
  return best;
}

}  // namespace

Theorem3Report verify_theorem3(const BertrandModel& m, const TransformSchedule& s, long step_cap,
                               int profile_cap) {
  Theorem3Report report;
  const PriceTrajectory traj(s, step_cap);
  report.cycle = traj.cycle();
  report.partial = !report.cycle.complete;
  report.symmetric_costs = m.c1 == m.c2;
  report.all_identity = s.all_identity();

  const long long profiles =
      static_cast<long long>(m.grid1.size()) * static_cast<long long>(m.grid2.size());
  if (profiles > profile_cap) {
    throw CapExceeded("verify_theorem3 profile space", profiles, profile_cap);
  }

  ScheduleBuild tables = schedule_from_transforms(m, s);
  report.grid_closed = tables.schedule.has_value();

  const PricePoint costs{m.c1, m.c2};
  const BertrandInfSplitCheck at_costs = bertrand_is_inf_split(m, traj, costs);
  report.cost_profile_member = at_costs.inf_split;
  report.first_violation = at_costs.first_violation;
  if (report.first_violation) report.strongest_violation = strongest_deviation(m, traj, costs);

  // Membership over the grid is certified only by a complete cycle; a cut-off
  // trajectory can still refute membership but never confirm it.
  if (report.cycle.complete) {
    for (const Rat& p1 : m.grid1) {
      for (const Rat& p2 : m.grid2) {
        const PricePoint x{p1, p2};
        if (bertrand_is_inf_split(m, traj, x).inf_split) {
          report.inf_split_members.push_back(x);
          if (!(x == costs)) report.extra_members.push_back(x);
        }
      }
    }
  }

  report.case_symmetric_applies = report.symmetric_costs;
  report.case_identity_applies = !report.symmetric_costs && report.all_identity;
  if (report.case_symmetric_applies || report.case_identity_applies) {
    report.case_holds = report.cost_profile_member && !report.partial;
  } else {
    // No membership claim for a non-identity schedule at unequal costs; the
    // violation records above carry the evidence.
    report.case_holds = true;
  }

  if (report.grid_closed && report.cycle.complete) {
    RepeatedGame rep(static_game(m), *tables.schedule, Rat(1, 2), step_cap);
    const int n2 = static_cast<int>(m.grid2.size());
    std::vector<PricePoint> table_members;
    for (int x = 0; x < rep.game.profile_count(); ++x) {
      if (is_inf_split_ne(rep, x).inf_split) {
        table_members.push_back(PricePoint{m.grid1[static_cast<std::size_t>(x / n2)],
                                           m.grid2[static_cast<std::size_t>(x % n2)]});
      }
    }
    report.table_route_agrees = table_members == report.inf_split_members;
  }
  return report;
}

std::pair<Rat, Rat> corollary4_values(const BertrandModel& m, const Rat& rho) {
  ScheduleBuild tables = schedule_from_transforms(m, TransformSchedule::identity());
  RepeatedGame rep(static_game(m), *tables.schedule, rho);
  const int n2 = static_cast<int>(m.grid2.size());
  const int x = grid_index(m.grid1, m.c1) * n2 + grid_index(m.grid2, m.c2);
  return {discounted_utility(rep, 0, x), discounted_utility(rep, 1, x)};
}

}  // namespace splitnash
