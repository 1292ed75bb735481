#include "splitnash/fixedpoint.hpp"

#include <algorithm>
#include <stdexcept>

namespace splitnash {

SetValuedMap SetValuedMap::make(FinitePoset domain, std::vector<std::vector<int>> values) {
  if (static_cast<int>(values.size()) != domain.size()) {
    throw std::invalid_argument("set-valued map needs one value set per element");
  }
  for (auto& set : values) {
    if (set.empty()) throw std::invalid_argument("set-valued map values must be nonempty");
    for (std::size_t i = 0; i < set.size(); ++i) {
      if (set[i] < 0 || set[i] >= domain.size()) {
        throw std::invalid_argument("set-valued map value out of range");
      }
      if (i + 1 < set.size() && set[i] >= set[i + 1]) {
        throw std::invalid_argument("set-valued map values must be sorted ascending");
      }
    }
  }
  return SetValuedMap{std::move(domain), std::move(values)};
}

bool SetValuedMap::contains(int x, int v) const {
  const auto& set = values[static_cast<std::size_t>(x)];
  return std::binary_search(set.begin(), set.end(), v);
}

IncreasingUpwardCheck is_increasing_upward(const SetValuedMap& map) {
  IncreasingUpwardCheck result;
  const int n = map.domain.size();
  for (int x = 0; x < n && (result.increasing || result.subset_property); ++x) {
    for (int y = 0; y < n && (result.increasing || result.subset_property); ++y) {
      if (!map.domain.leq(x, y)) continue;
      for (int u : map.values[static_cast<std::size_t>(x)]) {
        if (result.subset_property && !map.contains(y, u)) {
          result.subset_property = false;
          result.subset_counterexample = UpwardCounterexample{x, y, u};
        }
        if (result.increasing) {
          bool dominated = false;
          for (int v : map.values[static_cast<std::size_t>(y)]) {
            if (map.domain.leq(u, v)) {
              dominated = true;
              break;
            }
          }
          if (!dominated) {
            result.increasing = false;
            result.counterexample = UpwardCounterexample{x, y, u};
          }
        }
        if (!result.increasing && !result.subset_property) break;
      }
    }
  }
  return result;
}

ValuesInductiveCheck values_inductive(const SetValuedMap& map, int enum_cap) {
  ValuesInductiveCheck result;
  for (int x = 0; x < map.domain.size(); ++x) {
    const InductivityCheck check =
        is_inductive(map.domain, map.values[static_cast<std::size_t>(x)], enum_cap);
    if (check.method == OrderCheckMethod::FiniteTheorem) {
      result.method = OrderCheckMethod::FiniteTheorem;
    }
    if (!check.inductive) {
      result.all_inductive = false;
      result.failing_x = x;
      return result;
    }
  }
  return result;
}

std::optional<WitnessPair> find_witness(const SetValuedMap& map) {
  for (int y = 0; y < map.domain.size(); ++y) {
    for (int v : map.values[static_cast<std::size_t>(y)]) {
      if (map.domain.leq(y, v)) return WitnessPair{y, v};
    }
  }
  return std::nullopt;
}

std::vector<int> fixed_points(const SetValuedMap& map) {
  std::vector<int> out;
  for (int x = 0; x < map.domain.size(); ++x) {
    if (map.contains(x, x)) out.push_back(x);
  }
  return out;
}

AscentOutcome ascend(const SetValuedMap& map, int from) {
  if (from < 0 || from >= map.domain.size()) throw std::invalid_argument("ascend: out of range");
  AscentOutcome outcome;
  outcome.path.push_back(from);
  int x = from;
  // Each move is strictly upward, so the loop visits each element at most
  // once and terminates.
  for (;;) {
    std::vector<int> candidates;
    for (int v : map.values[static_cast<std::size_t>(x)]) {
      if (map.domain.leq(x, v)) candidates.push_back(v);
    }
    if (candidates.empty()) {
      outcome.stalled = true;
      outcome.stall_at = x;
      return outcome;
    }
    const std::vector<int> tops = maximal_elements(map.domain, candidates);
    const int choice = tops.front();
    if (choice == x) return outcome;
    outcome.path.push_back(choice);
    x = choice;
  }
}

MaximalFixedPointResult maximal_fixed_point_above(const SetValuedMap& map, int y_star) {
  MaximalFixedPointResult result;
  result.ascent = ascend(map, y_star);
  if (result.ascent.stalled) return result;
  const int limit = result.ascent.last();

  // Cross-check against the exhaustive description of what "maximal fixed
  // point above y_star" means.
  std::vector<int> above;
  for (int x : fixed_points(map)) {
    if (map.domain.leq(y_star, x)) above.push_back(x);
  }
  if (above.empty()) return result;
  for (int m : maximal_elements(map.domain, above)) {
    if (map.domain.leq(limit, m)) {
      result.ok = true;
      result.element = m;
      return result;
    }
  }
  return result;
}

TheoremAReport verify_theorem_a(const SetValuedMap& map, int enum_cap) {
  TheoremAReport report;
  report.a1 = is_increasing_upward(map);
  report.a2 = values_inductive(map, enum_cap);
  report.a3 = find_witness(map);
  report.conditions_hold = report.a1.increasing && report.a2.all_inductive && report.a3.has_value();
  report.fixed_point_set = fixed_points(map);
  if (!report.conditions_hold) return report;

  report.conclusion_nonempty = !report.fixed_point_set.empty();
  if (report.conclusion_nonempty) {
    report.fixed_points_inductive = is_inductive(map.domain, report.fixed_point_set, enum_cap);
    report.conclusion_inductive = report.fixed_points_inductive->inductive;
  }
  report.maximal_above = maximal_fixed_point_above(map, report.a3->y_star);
  report.conclusion_maximal_above = report.maximal_above->ok;
  report.conclusions_hold =
      report.conclusion_nonempty && report.conclusion_inductive && report.conclusion_maximal_above;
  return report;
}

}  // namespace splitnash
