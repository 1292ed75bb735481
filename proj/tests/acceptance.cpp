// Acceptance gate: one line per criterion, nonzero exit if any fail.

#include "splitnash/bertrand.hpp"
#include "splitnash/spec_io.hpp"

#include "support.hpp"

#include <chrono>
#include <iostream>
#include <random>
#include <sstream>
#include <string>

using namespace splitnash;
using testsupport::random_game;
using testsupport::random_monotone_operator;
using testsupport::random_operator;
using testsupport::random_sizes;
using testsupport::separable_game;

namespace {

int failures = 0;

template <typename Body>
void criterion(int id, const std::string& title, Body body) {
  std::ostringstream detail;
  bool pass = false;
  const auto started = std::chrono::steady_clock::now();
  try {
    pass = body(detail);
  } catch (const std::exception& e) {
    detail << "exception: " << e.what();
    pass = false;
  }
  const auto ms = std::chrono::duration_cast<std::chrono::milliseconds>(
                      std::chrono::steady_clock::now() - started)
                      .count();
  std::cout << (pass ? "[PASS]" : "[FAIL]") << " criterion " << id << " (" << title
            << "): " << detail.str() << " [" << ms << " ms]" << std::endl;
  if (!pass) ++failures;
}

Rat rat_abs(const Rat& r) { return r < 0 ? Rat(-r) : r; }

BertrandModel asym_model(const Rat& h) {
  return BertrandModel::make(1, 2, 4, 4, 12, 1, 1, uniform_grid(h, 4), uniform_grid(h, 4));
}

BertrandModel sym_model(const Rat& h) {
  return BertrandModel::make(1, 1, Rat(5, 2), Rat(5, 2), 10, 2, 2, uniform_grid(h, Rat(5, 2)),
                             uniform_grid(h, Rat(5, 2)));
}

TransformSchedule swap_schedule() { return TransformSchedule{{}, {PriceTransform::swap()}}; }

std::string price(const PricePoint& p) {
  return "(" + format_rational(p.p1) + ", " + format_rational(p.p2) + ")";
}

int cost_flat(const BertrandModel& m) {
  return grid_index(m.grid1, m.c1) * static_cast<int>(m.grid2.size()) +
         grid_index(m.grid2, m.c2);
}

OperatorSchedule random_schedule(std::mt19937_64& rng, int profile_count, bool monotone,
                                 const ProductPoset& space) {
  std::uniform_int_distribution<int> prefix_len(0, 2);
  std::uniform_int_distribution<int> cycle_len(1, 3);
  auto draw = [&] {
    return monotone ? random_monotone_operator(rng, space, true)
                    : random_operator(rng, profile_count);
  };
  std::vector<ProfileOperator> prefix(static_cast<std::size_t>(prefix_len(rng)));
  for (auto& op : prefix) op = draw();
  std::vector<ProfileOperator> cycle(static_cast<std::size_t>(cycle_len(rng)));
  for (auto& op : cycle) op = draw();
  return OperatorSchedule(std::move(prefix), std::move(cycle));
}

Rat random_rho(std::mt19937_64& rng) {
  static const Rat choices[] = {Rat(1, 3), Rat(1, 2), Rat(3, 5), Rat(2, 3), Rat(9, 10)};
  std::uniform_int_distribution<std::size_t> pick(0, 4);
  return choices[pick(rng)];
}

bool criterion1(std::ostringstream& detail) {
  GameSpec spec = load_spec(std::string(SPLITNASH_SPEC_DIR) + "/bertrand_models.json");
  const BertrandModel& m = spec.bertrand_models.at("asym");
  const bool shape = m.c1 == 1 && m.c2 == 2 && m.cap1 == 4 && m.cap2 == 4 && m.d0 == 12 &&
                     m.d1 == 1 && m.d2 == 1 && m.grid1.size() == 17 && m.grid2.size() == 17;
  if (!shape) {
    detail << "shipped asym model does not match the pinned parameters";
    return false;
  }
  const auto [h_half_1, h_half_2] = corollary4_values(m, Rat(1, 2));
  const auto [h_pat_1, h_pat_2] = corollary4_values(m, Rat(9, 10));
  detail << "h(1,2) = (" << format_rational(h_half_1) << ", " << format_rational(h_half_2)
         << ") at rho=1/2 and (" << format_rational(h_pat_1) << ", "
         << format_rational(h_pat_2) << ") at rho=9/10, exact";
  return h_half_1 == 0 && h_half_2 == 0 && h_pat_1 == 0 && h_pat_2 == 0;
}

bool criterion2(std::ostringstream& detail) {
  const BertrandModel m = sym_model(Rat(1, 4));
  const std::pair<std::string, TransformSchedule> schedules[] = {
      {"identity", TransformSchedule::identity()},
      {"swap", swap_schedule()},
      {"alpha=beta=1/2",
       TransformSchedule{{}, {make_transform(Rat(1, 2), Rat(1, 2))}}},
  };
  for (const auto& [name, s] : schedules) {
    Theorem3Report r = verify_theorem3(m, s);
    if (!(r.case_symmetric_applies && r.cost_profile_member && r.case_holds)) {
      detail << "(1,1) not infinitely split under " << name;
      return false;
    }
  }
  detail << "(1,1) infinitely split under identity, swap, and alpha=beta=1/2, exact";
  return true;
}

bool criterion3(std::ostringstream& detail) {
  const BertrandModel m = asym_model(Rat(1, 4));
  Theorem3Report r = verify_theorem3(m, TransformSchedule::identity());
  const std::vector<int> nash = nash_set(static_game(m));
  const bool static_member = std::binary_search(nash.begin(), nash.end(), cost_flat(m));
  detail << "(1,2) infinitely split under identity: " << (r.cost_profile_member ? "yes" : "no")
         << "; static grid nash: " << (static_member ? "yes" : "no");
  return r.case_identity_applies && r.case_holds && r.cost_profile_member && static_member;
}

bool criterion4(std::ostringstream& detail) {
  const BertrandModel m = asym_model(Rat(1, 4));
  const PriceTrajectory traj(swap_schedule());
  const PricePoint costs{m.c1, m.c2};
  const BertrandInfSplitCheck check = bertrand_is_inf_split(m, traj, costs);
  if (check.inf_split || !check.first_violation || check.first_violation->k != 1) {
    detail << "expected a machine witness at k=1";
    return false;
  }
  const auto strongest = verify_theorem3(m, swap_schedule()).strongest_violation;
  if (!strongest || strongest->k != 1) {
    detail << "no strongest deviation at k=1";
    return false;
  }
  // Replay the stage inequality from scratch: the deviating firm quotes the
  // recorded price against the other firm's path price.
  const DeviationRecord& d = *strongest;
  const Rat replay_dev = d.firm == 1 ? profit(m, 1, d.deviation_price, d.path_point.p2)
                                     : profit(m, 2, d.path_point.p1, d.deviation_price);
  const Rat replay_path = profit(m, d.firm, d.path_point.p1, d.path_point.p2);
  const bool replay_ok = replay_dev == d.deviation_profit && replay_path == d.path_profit &&
                         d.deviation_profit > 0 && d.path_profit < 0;
  // The instance admits deviation price 3 for firm 2: z = (3, *) puts firm 2
  // at price 3 after the swap, earning 7 against the path value -9.
  const bool price3 = grid_index(m.grid1, 3) >= 0 && profit(m, 2, 2, 3) == 7 &&
                      profit(m, 2, 2, 1) == -9;
  detail << "witness k=1 firm " << d.firm << " price " << format_rational(d.deviation_price)
         << ": profit " << format_rational(d.deviation_profit) << " > 0 > "
         << format_rational(d.path_profit) << " path; deviation price 3 replays to 7 > 0 > -9";
  return replay_ok && price3;
}

bool criterion5(std::ostringstream& detail) {
  bool ok = true;
  int extras = 0;
  std::string first_bad;
  for (const Rat& h : {Rat(1, 2), Rat(1, 4), Rat(1, 8)}) {
    for (const bool asym : {true, false}) {
      const BertrandModel m = asym ? asym_model(h) : sym_model(h);
      const std::string tag = std::string(asym ? "asym" : "sym") + " h=" + format_rational(h);
      std::vector<PricePoint> members;
      const int n2 = static_cast<int>(m.grid2.size());
      for (int x : nash_set(static_game(m)))
        members.push_back(PricePoint{m.grid1[x / n2], m.grid2[x % n2]});
      Theorem3Report ident = verify_theorem3(m, TransformSchedule::identity());
      members.insert(members.end(), ident.inf_split_members.begin(),
                     ident.inf_split_members.end());
      for (const PricePoint& p : members) {
        const bool within = rat_abs(p.p1 - m.c1) <= h && rat_abs(p.p2 - m.c2) <= h;
        if (!within) {
          ok = false;
          if (first_bad.empty())
            first_bad = tag + " member " + price(p) + " is more than one step from " +
                        price(PricePoint{m.c1, m.c2});
        } else if (!(p.p1 == m.c1 && p.p2 == m.c2)) {
          ++extras;
        }
      }
    }
  }
  if (ok)
    detail << "all nash and infinitely-split members within one grid step of cost; " << extras
           << " one-step grid equilibria reported";
  else
    detail << first_bad << "; " << extras << " one-step grid equilibria also present";
  return ok;
}

bool criterion6(std::ostringstream& detail) {
  std::mt19937_64 rng(61u);
  int built = 0;
  int attempts = 0;
  while (built < 50 && attempts < 4000) {
    ++attempts;
    StaticGame g = random_game(rng, random_sizes(rng, 3, 4));
    ProfileOperator op = random_monotone_operator(rng, g.space(), false);
    DualGame dual(std::move(g), std::move(op));
    GammaBuild gb = gamma(dual);
    if (!gb.map) continue;
    ++built;
    if (split_ne_set(dual) != fixed_points(*gb.map)) {
      detail << "split set differs from gamma fixed points on instance " << attempts;
      return false;
    }
  }
  detail << built << " random duals with constructible gamma (of " << attempts
         << " drawn): split set equals gamma fixed points on every one";
  return built >= 50;
}

bool criterion7(std::ostringstream& detail) {
  std::mt19937_64 rng(71u);
  int t1_passing = 0;
  int t2_passing = 0;
  int attempts = 0;
  while ((t1_passing < 100 || t2_passing < 100) && attempts < 4000) {
    ++attempts;
    const auto sizes = random_sizes(rng, 3, 4);
    const bool aligned = attempts % 2 == 0;
    StaticGame g = separable_game(rng, sizes, aligned);
    const ProductPoset& space = g.space();
    if (t1_passing < 100) {
      DualGame dual(g, random_monotone_operator(rng, space, aligned));
      SplitReport r = check_theorem1(dual);
      if (r.conditions_hold) {
        ++t1_passing;
        if (!(r.conclusions_hold && r.conclusion_nonempty && r.conclusion_inductive &&
              r.conclusion_above_nonempty && r.conclusion_above_inductive)) {
          detail << "theorem 1 conclusions failed on a condition-passing instance (attempt "
                 << attempts << ")";
          return false;
        }
      }
    }
    if (t2_passing < 100) {
      RepeatedGame rep(g, random_schedule(rng, space.size(), true, space), random_rho(rng));
      if (rep.trajectory.cycle().complete) {
        Theorem2Report r = check_theorem2(rep);
        if (r.conditions_hold) {
          ++t2_passing;
          if (!(r.conclusions_hold && r.conclusion_nonempty && r.conclusion_inductive &&
                r.conclusion_above_nonempty && r.conclusion_above_inductive)) {
            detail << "theorem 2 conclusions failed on a condition-passing instance (attempt "
                   << attempts << ")";
            return false;
          }
        }
      }
    }
  }
  detail << t1_passing << " theorem-1 and " << t2_passing
         << " theorem-2 condition-passing instances, zero conclusion violations";
  return t1_passing >= 100 && t2_passing >= 100;
}

bool criterion8(std::ostringstream& detail) {
  std::mt19937_64 rng(81u);
  int complete = 0;
  int nonempty = 0;
  int attempts = 0;
  while (complete < 50 && attempts < 2000) {
    ++attempts;
    StaticGame g = random_game(rng, random_sizes(rng, 3, 4));
    const ProductPoset& space = g.space();
    RepeatedGame rep(std::move(g), random_schedule(rng, space.size(), false, space),
                     random_rho(rng));
    if (!rep.trajectory.cycle().complete) continue;
    ++complete;
    Proposition1Report r = check_proposition1(rep);
    if (!r.inclusion_holds) {
      detail << "inclusion failed: profile " << *r.violating << " on instance " << attempts;
      return false;
    }
    if (!r.inf_split.members.empty()) ++nonempty;
  }
  detail << complete << " repeated games with detected cycles, inclusion holds on all ("
         << nonempty << " had nonempty infinitely-split sets)";
  return complete >= 50;
}

bool criterion9(std::ostringstream& detail) {
  std::mt19937_64 rng(91u);
  int instances = 0;
  int attempts = 0;
  long truncations = 0;
  while (instances < 20 && attempts < 500) {
    ++attempts;
    StaticGame g = random_game(rng, random_sizes(rng, 3, 4));
    const ProductPoset& space = g.space();
    const Rat rho = random_rho(rng);
    RepeatedGame rep(std::move(g), random_schedule(rng, space.size(), false, space), rho);
    if (!rep.trajectory.cycle().complete) continue;
    ++instances;
    const Rat big_m = bound_M(rep.game);
    for (int i = 0; i < rep.game.players(); ++i) {
      for (int x = 0; x < rep.game.profile_count(); ++x) {
        const Rat h = discounted_utility(rep, i, x);
        if (deviation_discounted_utility(rep, i, x, x) != h) {
          detail << "H(i,x,x) != h(i,x) at player " << i << ", profile " << x;
          return false;
        }
        for (const long k_terms : {10L, 30L, 60L}) {
          Rat truncated = 0;
          Rat weight = 1;
          for (long k = 0; k <= k_terms; ++k) {
            truncated += weight * rep.game.utility(i, rep.trajectory.pi(k)(x));
            weight *= rho;
          }
          const Rat bound = big_m * rat_pow(rho, k_terms + 1) / (1 - rho);
          if (rat_abs(h - truncated) > bound) {
            detail << "truncation at K=" << k_terms << " outside the geometric tail bound";
            return false;
          }
          ++truncations;
        }
      }
    }
  }
  detail << instances << " repeated games, " << truncations
         << " truncations within the tail bound, H(i,x,x) = h(i,x) exact everywhere";
  return instances >= 20;
}

bool criterion10(std::ostringstream& detail) {
  std::mt19937_64 rng(101u);
  int games = 0;
  for (; games < 50; ++games) {
    StaticGame g = random_game(rng, random_sizes(rng, 3, 4));
    const std::vector<int> nash = nash_set(g);
    DualGame dual(g, ProfileOperator::identity(g.profile_count()));
    if (split_ne_set(dual) != nash) {
      detail << "identity operator: split set differs from nash set on instance " << games;
      return false;
    }
    RepeatedGame rep(std::move(g), OperatorSchedule::identity(dual.game.profile_count()),
                     Rat(1, 2));
    ProfileSubset inf = inf_split_ne_set(rep);
    if (inf.partial || inf.members != nash) {
      detail << "identity schedule: infinitely-split set differs from nash set on instance "
             << games;
      return false;
    }
  }
  detail << games << " random games: identity operator gives split = nash and identity "
         << "schedule gives infinitely-split = nash, exact";
  return true;
}

}  // namespace

int main() {
  criterion(1, "corollary 4 exactness", criterion1);
  criterion(2, "theorem 3(i) symmetric membership", criterion2);
  criterion(3, "theorem 3(ii) identity direction", criterion3);
  criterion(4, "theorem 3(ii) non-identity witness", criterion4);
  criterion(5, "grid convergence to the cost profile", criterion5);
  criterion(6, "split set equals gamma fixed points", criterion6);
  criterion(7, "theorem 1 / theorem 2 soundness campaign", criterion7);
  criterion(8, "proposition 1 inclusion", criterion8);
  criterion(9, "discounted-sum correctness", criterion9);
  criterion(10, "identity reduction laws", criterion10);
  if (failures > 0) {
    std::cout << failures << " criterion(s) failed" << std::endl;
    return 1;
  }
  std::cout << "all criteria passed" << std::endl;
  return 0;
}
