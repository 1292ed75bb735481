#include "splitnash/dual.hpp"

#include <algorithm>
#include <stdexcept>

namespace splitnash {

ProfileOperator ProfileOperator::identity(int profile_count) {
  ProfileOperator op;
  op.image.resize(static_cast<std::size_t>(profile_count));
  for (int x = 0; x < profile_count; ++x) op.image[static_cast<std::size_t>(x)] = x;
  return op;
}

ProfileOperator compose(const ProfileOperator& outer, const ProfileOperator& inner) {
  if (outer.size() != inner.size()) throw std::invalid_argument("compose: size mismatch");
  ProfileOperator out;
  out.image.reserve(inner.image.size());
  for (int x : inner.image) out.image.push_back(outer(x));
  return out;
}

MonotonicityCheck is_increasing(const ProductPoset& space, const ProfileOperator& op) {
  if (op.size() != space.size()) throw std::invalid_argument("operator does not match profile space");
  MonotonicityCheck result;
  for (int x = 0; x < space.size(); ++x) {
    for (int y = 0; y < space.size(); ++y) {
      if (space.leq(x, y) && !space.leq(op(x), op(y))) {
        result.increasing = false;
        result.counterexample = {x, y};
        return result;
      }
    }
  }
  return result;
}

DualGame::DualGame(StaticGame g, ProfileOperator a) : game(std::move(g)), op(std::move(a)) {
  if (op.size() != game.profile_count()) {
    throw std::invalid_argument("operator does not match the game's profile space");
  }
  for (int v : op.image) {
    if (v < 0 || v >= game.profile_count()) throw std::invalid_argument("operator image out of range");
  }
}

namespace {

// Per-player maxima of first-play and operator-image utilities against x.
struct BestReplies {
  std::vector<Rat> first;   // max_{z_i} f_i(z_i, x_{-i})
  std::vector<Rat> second;  // max_{z in S_N} f_i((Az)_i, (Ax)_{-i})
};

BestReplies best_replies(const DualGame& dual, int x) {
  const StaticGame& g = dual.game;
  const int ax = dual.op(x);
  BestReplies out;
  out.first.reserve(static_cast<std::size_t>(g.players()));
  out.second.reserve(static_cast<std::size_t>(g.players()));
  for (int i = 0; i < g.players(); ++i) {
    Rat best = g.deviation_utility(i, x, 0);
    for (int z = 1; z < g.strategy_poset(i).size(); ++z) {
      const Rat& v = g.deviation_utility(i, x, z);
      if (v > best) best = v;
    }
    out.first.push_back(best);

    Rat best2 = g.deviation_utility(i, ax, g.space().coord(dual.op(0), i));
    for (int z = 1; z < g.profile_count(); ++z) {
      const Rat& v = g.deviation_utility(i, ax, g.space().coord(dual.op(z), i));
      if (v > best2) best2 = v;
    }
    out.second.push_back(best2);
  }
  return out;
}

}  // namespace

std::vector<int> pi(const DualGame& dual, int x) {
  const StaticGame& g = dual.game;
  const int ax = dual.op(x);
  const BestReplies best = best_replies(dual, x);
  std::vector<int> out;
  for (int t = 0; t < g.profile_count(); ++t) {
    bool member = true;
    for (int i = 0; i < g.players() && member; ++i) {
      member = g.deviation_utility(i, x, g.space().coord(t, i)) == best.first[static_cast<std::size_t>(i)] &&
               g.deviation_utility(i, ax, g.space().coord(dual.op(t), i)) ==
                   best.second[static_cast<std::size_t>(i)];
    }
    if (member) out.push_back(t);
  }
  return out;
}

std::vector<int> pi_vector_form(const DualGame& dual, int x) {
  const StaticGame& g = dual.game;
  const int ax = dual.op(x);
  std::vector<int> out;
  for (int t = 0; t < g.profile_count(); ++t) {
    const UtilityVector ft = assoc_vector(g, t, x);
    const UtilityVector fat = assoc_vector(g, dual.op(t), ax);
    bool member = true;
    for (int z = 0; z < g.profile_count() && member; ++z) {
      member = leq_n(assoc_vector(g, z, x), ft) && leq_n(assoc_vector(g, dual.op(z), ax), fat);
    }
    if (member) out.push_back(t);
  }
  return out;
}

SplitCheck is_split_ne(const DualGame& dual, int x) {
  const StaticGame& g = dual.game;
  SplitCheck result;
  for (int i = 0; i < g.players(); ++i) {
    const Rat& here = g.utility(i, x);
    for (int z = 0; z < g.strategy_poset(i).size(); ++z) {
      if (g.deviation_utility(i, x, z) > here) {
        result.split = false;
        result.witness = SplitViolation{i, g.space().replace_coord(x, i, z), 1};
        return result;
      }
    }
  }
  const int ax = dual.op(x);
  for (int i = 0; i < g.players(); ++i) {
    const Rat& here = g.utility(i, ax);
    for (int z = 0; z < g.profile_count(); ++z) {
      if (g.deviation_utility(i, ax, g.space().coord(dual.op(z), i)) > here) {
        result.split = false;
        result.witness = SplitViolation{i, z, 2};
        return result;
      }
    }
  }
  return result;
}

std::vector<int> split_ne_set(const DualGame& dual, int profile_cap) {
  if (dual.game.profile_count() > profile_cap) {
    throw CapExceeded("split_ne_set profile space", dual.game.profile_count(), profile_cap);
  }
  std::vector<int> out;
  for (int x = 0; x < dual.game.profile_count(); ++x) {
    if (is_split_ne(dual, x).split) out.push_back(x);
  }
  return out;
}

GammaBuild gamma(const DualGame& dual, int profile_cap) {
  if (dual.game.profile_count() > profile_cap) {
    throw CapExceeded("gamma profile space", dual.game.profile_count(), profile_cap);
  }
  GammaBuild build;
  std::vector<std::vector<int>> values;
  values.reserve(static_cast<std::size_t>(dual.game.profile_count()));
  for (int x = 0; x < dual.game.profile_count(); ++x) {
    values.push_back(pi(dual, x));
    if (values.back().empty()) {
      build.empty_at = x;
      return build;
    }
  }
  build.map = SetValuedMap::make(dual.game.space().to_poset(), std::move(values));
  return build;
}

SplitReport check_theorem1(const DualGame& dual, int profile_cap, int enum_cap) {
  const StaticGame& g = dual.game;
  if (g.profile_count() > profile_cap) {
    throw CapExceeded("check_theorem1 profile space", g.profile_count(), profile_cap);
  }
  SplitReport report;

  for (int i = 0; i < g.players(); ++i) {
    report.order_positive.push_back(is_order_positive(g, i));
    report.condition_a = report.condition_a && report.order_positive.back().positive;
  }

  const FinitePoset domain = g.space().to_poset();
  std::vector<std::vector<int>> pis;
  pis.reserve(static_cast<std::size_t>(g.profile_count()));
  for (int x = 0; x < g.profile_count(); ++x) {
    pis.push_back(pi(dual, x));
    if (pis.back().empty() && report.pi_nonempty) {
      report.pi_nonempty = false;
      report.pi_empty_at = x;
    }
  }
  for (int x = 0; x < g.profile_count() && report.pi_inductive.all_inductive; ++x) {
    if (pis[static_cast<std::size_t>(x)].empty()) continue;
    const InductivityCheck check = is_inductive(domain, pis[static_cast<std::size_t>(x)], enum_cap);
    if (check.method == OrderCheckMethod::FiniteTheorem) {
      report.pi_inductive.method = OrderCheckMethod::FiniteTheorem;
    }
    if (!check.inductive) {
      report.pi_inductive.all_inductive = false;
      report.pi_inductive.failing_x = x;
    }
  }
  report.condition_b = report.pi_nonempty && report.pi_inductive.all_inductive;

  report.op_increasing = is_increasing(g.space(), dual.op);
  report.condition_c = report.op_increasing.increasing;

  for (int x = 0; x < g.profile_count() && !report.witness; ++x) {
    for (int u : pis[static_cast<std::size_t>(x)]) {
      if (g.space().leq(x, u)) {
        report.witness = WitnessPair{x, u};
        break;
      }
    }
  }
  report.condition_d = report.witness.has_value();
  report.conditions_hold =
      report.condition_a && report.condition_b && report.condition_c && report.condition_d;

  report.split_ne = split_ne_set(dual, profile_cap);

  std::optional<SetValuedMap> map;
  if (report.pi_nonempty) {
    map = SetValuedMap::make(domain, pis);
    report.matches_gamma_fixed_points = fixed_points(*map) == report.split_ne;
  }

  for (int x = 0; x < g.profile_count() && report.pi_monotone_growth; ++x) {
    for (int y = 0; y < g.profile_count(); ++y) {
      if (!g.space().leq(x, y)) continue;
      if (!std::includes(pis[static_cast<std::size_t>(y)].begin(), pis[static_cast<std::size_t>(y)].end(),
                         pis[static_cast<std::size_t>(x)].begin(), pis[static_cast<std::size_t>(x)].end())) {
        report.pi_monotone_growth = false;
        report.growth_counterexample = {x, y};
        break;
      }
    }
  }

  if (!report.conditions_hold) return report;

  report.conclusion_nonempty = !report.split_ne.empty();
  if (report.conclusion_nonempty) {
    report.split_inductive = is_inductive(domain, report.split_ne, enum_cap);
    report.conclusion_inductive = report.split_inductive->inductive;
  }
  std::vector<int> above;
  for (int x : report.split_ne) {
    if (g.space().leq(report.witness->y_star, x)) above.push_back(x);
  }
  report.conclusion_above_nonempty = !above.empty();
  if (report.conclusion_above_nonempty) {
    report.split_above_inductive = is_inductive(domain, above, enum_cap);
    report.conclusion_above_inductive = report.split_above_inductive->inductive;
  }
  report.maximal_above = maximal_fixed_point_above(*map, report.witness->y_star);
  report.conclusion_maximal_above =
      report.maximal_above->ok &&
      std::binary_search(report.split_ne.begin(), report.split_ne.end(), report.maximal_above->element);
  report.conclusions_hold = report.conclusion_nonempty && report.conclusion_inductive &&
                            report.conclusion_above_nonempty && report.conclusion_above_inductive &&
                            report.conclusion_maximal_above;
  return report;
}

}  // namespace splitnash
