#include "splitnash/report.hpp"

#include <algorithm>
#include <chrono>
#include <sstream>

namespace splitnash {

namespace {

using nlohmann::json;

struct CommandResult {
  json result = json::object();
  std::vector<std::string> lines;
  int exit_code = 0;
};

std::string yn(bool b) { return b ? "yes" : "no"; }

const char* method_name(OrderCheckMethod m) {
  return m == OrderCheckMethod::Enumerated ? "enumerated" : "finite-theorem";
}

template <typename Map>
std::string resolve(const Map& entries, const std::string& target, const char* kind) {
  if (!target.empty()) {
    if (!entries.count(target))
      throw SpecError(std::string("unknown ") + kind + " \"" + target + "\"");
    return target;
  }
  if (entries.empty()) throw SpecError(std::string("spec defines no ") + kind + " entries");
  if (entries.size() > 1) {
    std::string names;
    for (const auto& [name, entry] : entries) {
      if (!names.empty()) names += ", ";
      names += name;
    }
    throw SpecError(std::string("ambiguous ") + kind + ": pick one of {" + names +
                    "} with --game");
  }
  return entries.begin()->first;
}

json profile_json(const StaticGame& g, int x) {
  return json{{"index", x}, {"profile", g.space().label(x)}};
}

json profiles_json(const StaticGame& g, const std::vector<int>& xs) {
  json out = json::array();
  for (int x : xs) out.push_back(profile_json(g, x));
  return out;
}

std::string profiles_text(const StaticGame& g, const std::vector<int>& xs) {
  if (xs.empty()) return "(none)";
  std::string s;
  for (int x : xs) {
    if (!s.empty()) s += " ";
    s += g.space().label(x);
  }
  return s;
}

json labels_json(const FinitePoset& domain, const std::vector<int>& xs) {
  json out = json::array();
  for (int x : xs) out.push_back(json{{"index", x}, {"profile", domain.label(x)}});
  return out;
}

std::string labels_text(const FinitePoset& domain, const std::vector<int>& xs) {
  if (xs.empty()) return "(none)";
  std::string s;
  for (int x : xs) {
    if (!s.empty()) s += " ";
    s += domain.label(x);
  }
  return s;
}

json price_json(const PricePoint& p) {
  return json::array({format_rational(p.p1), format_rational(p.p2)});
}

std::string price_text(const PricePoint& p) {
  return "(" + format_rational(p.p1) + ", " + format_rational(p.p2) + ")";
}

json prices_json(const std::vector<PricePoint>& ps) {
  json out = json::array();
  for (const PricePoint& p : ps) out.push_back(price_json(p));
  return out;
}

std::string prices_text(const std::vector<PricePoint>& ps) {
  if (ps.empty()) return "(none)";
  std::string s;
  for (const PricePoint& p : ps) {
    if (!s.empty()) s += " ";
    s += price_text(p);
  }
  return s;
}

json inductivity_json(const InductivityCheck& c) {
  json j{{"inductive", c.inductive}, {"method", method_name(c.method)}};
  if (c.chain_without_bound) j["chain_without_bound"] = *c.chain_without_bound;
  return j;
}

json values_inductive_json(const ValuesInductiveCheck& c) {
  json j{{"all_inductive", c.all_inductive}, {"method", method_name(c.method)}};
  if (c.failing_x) j["failing_x"] = *c.failing_x;
  return j;
}

json cycle_json(const CycleInfo& c) {
  return json{{"complete", c.complete},
              {"preperiod", c.preperiod},
              {"period", c.period},
              {"horizon", c.horizon}};
}

std::string cycle_text(const CycleInfo& c) {
  if (c.complete)
    return "cycle: preperiod " + std::to_string(c.preperiod) + ", period " +
           std::to_string(c.period);
  return "cycle: not detected within " + std::to_string(c.horizon) + " composed steps";
}

json order_positive_json(const StaticGame& g, const std::vector<OrderPositivityCheck>& checks) {
  json out = json::array();
  for (std::size_t i = 0; i < checks.size(); ++i) {
    json entry{{"player", i}, {"positive", checks[i].positive}};
    if (checks[i].counterexample) {
      const auto& ce = *checks[i].counterexample;
      entry["counterexample"] = json{{"x_base", g.space().label(ce.x_base)},
                                     {"y_base", g.space().label(ce.y_base)},
                                     {"z", ce.z},
                                     {"t", ce.t}};
    }
    out.push_back(std::move(entry));
  }
  return out;
}

json monotonicity_json(const StaticGame& g, const MonotonicityCheck& c) {
  json j{{"increasing", c.increasing}};
  if (c.counterexample)
    j["counterexample"] = json{{"x", g.space().label(c.counterexample->first)},
                               {"y", g.space().label(c.counterexample->second)}};
  return j;
}

json maximal_json(const FinitePoset& domain, const MaximalFixedPointResult& m) {
  json path = json::array();
  for (int x : m.ascent.path) path.push_back(domain.label(x));
  json j{{"ok", m.ok}, {"ascent_path", path}};
  if (m.ok) j["element"] = json{{"index", m.element}, {"profile", domain.label(m.element)}};
  if (m.ascent.stalled) j["stalled_at"] = domain.label(m.ascent.stall_at);
  return j;
}

json deviation_json(const DeviationRecord& d) {
  return json{{"k", d.k},
              {"firm", d.firm},
              {"z", price_json(d.z)},
              {"deviation_price", format_rational(d.deviation_price)},
              {"path_point", price_json(d.path_point)},
              {"deviation_profit", format_rational(d.deviation_profit)},
              {"path_profit", format_rational(d.path_profit)}};
}

std::string deviation_text(const DeviationRecord& d) {
  return "stage k=" + std::to_string(d.k) + " firm " + std::to_string(d.firm) + " via z=" +
         price_text(d.z) + " prices at " + format_rational(d.deviation_price) + ": profit " +
         format_rational(d.deviation_profit) + " vs path " + price_text(d.path_point) +
         " profit " + format_rational(d.path_profit);
}

CommandResult cmd_validate(const GameSpec& spec) {
  CommandResult r;
  r.result = json{{"posets", spec.posets.size()},
                  {"games", spec.games.size()},
                  {"operators", spec.operators.size()},
                  {"duals", spec.duals.size()},
                  {"schedules", spec.schedules.size()},
                  {"repeated", spec.repeated.size()},
                  {"bertrand_models", spec.bertrand_models.size()},
                  {"bertrand", spec.bertrand.size()}};
  std::ostringstream line;
  line << "spec valid: " << spec.posets.size() << " posets, " << spec.games.size() << " games, "
       << spec.operators.size() << " operators, " << spec.duals.size() << " duals, "
       << spec.schedules.size() << " schedules, " << spec.repeated.size() << " repeated, "
       << spec.bertrand_models.size() << " bertrand models, " << spec.bertrand.size()
       << " bertrand entries";
  r.lines.push_back(line.str());
  return r;
}

CommandResult cmd_nash(const GameSpec& spec, const std::string& name) {
  const StaticGame& g = spec.games.at(name).game;
  std::vector<int> set = nash_set(g, spec.caps.profile);
  CommandResult r;
  r.result = json{{"game", name},
                  {"profile_count", g.profile_count()},
                  {"nash", profiles_json(g, set)}};
  r.lines.push_back("profiles: " + std::to_string(g.profile_count()));
  r.lines.push_back("nash equilibria (" + std::to_string(set.size()) +
                    "): " + profiles_text(g, set));
  return r;
}

CommandResult cmd_split(const GameSpec& spec, const std::string& name) {
  DualGame dual = build_dual(spec, name);
  std::vector<int> set = split_ne_set(dual, spec.caps.profile);
  CommandResult r;
  r.result = json{{"dual", name},
                  {"profile_count", dual.game.profile_count()},
                  {"split", profiles_json(dual.game, set)}};
  r.lines.push_back("profiles: " + std::to_string(dual.game.profile_count()));
  r.lines.push_back("split equilibria (" + std::to_string(set.size()) +
                    "): " + profiles_text(dual.game, set));
  GammaBuild gb = gamma(dual, spec.caps.profile);
  if (gb.map) {
    bool matches = fixed_points(*gb.map) == set;
    r.result["matches_gamma_fixed_points"] = matches;
    r.lines.push_back("matches gamma fixed points: " + yn(matches));
    if (!matches) r.exit_code = 1;
  } else {
    r.result["matches_gamma_fixed_points"] = nullptr;
    r.lines.push_back("gamma not constructible: pi empty at " +
                      dual.game.space().label(*gb.empty_at));
  }
  return r;
}

CommandResult cmd_infsplit(const GameSpec& spec, const std::string& name) {
  RepeatedGame rep = build_repeated(spec, name);
  ProfileSubset set = inf_split_ne_set(rep, spec.caps.profile);
  CommandResult r;
  r.result = json{{"repeated", name},
                  {"profile_count", rep.game.profile_count()},
                  {"cycle", cycle_json(rep.trajectory.cycle())},
                  {"members", profiles_json(rep.game, set.members)},
                  {"partial", set.partial}};
  r.lines.push_back(cycle_text(rep.trajectory.cycle()));
  r.lines.push_back("infinitely split equilibria (" + std::to_string(set.members.size()) +
                    "): " + profiles_text(rep.game, set.members));
  if (set.partial) r.lines.push_back("partial: verified only up to the detection horizon");
  return r;
}

CommandResult cmd_discounted(const GameSpec& spec, const std::string& name) {
  RepeatedGame rep = build_repeated(spec, name);
  CommandResult r;
  r.result = json{{"repeated", name},
                  {"rho", format_rational(rep.rho)},
                  {"cycle", cycle_json(rep.trajectory.cycle())}};
  r.lines.push_back(cycle_text(rep.trajectory.cycle()));
  json values = json::array();
  for (int x = 0; x < rep.game.profile_count(); ++x) {
    json h = json::array();
    std::string h_text;
    for (int i = 0; i < rep.game.players(); ++i) {
      Rat v = discounted_utility(rep, i, x);
      h.push_back(format_rational(v));
      if (!h_text.empty()) h_text += ", ";
      h_text += format_rational(v);
    }
    json entry = profile_json(rep.game, x);
    entry["h"] = std::move(h);
    values.push_back(std::move(entry));
    r.lines.push_back(rep.game.space().label(x) + ": h = (" + h_text + ")");
  }
  r.result["values"] = std::move(values);
  return r;
}

CommandResult cmd_theorem_a(const GameSpec& spec, const std::string& name) {
  DualGame dual = build_dual(spec, name);
  CommandResult r;
  r.result["dual"] = name;
  GammaBuild gb = gamma(dual, spec.caps.profile);
  if (!gb.map) {
    r.result["gamma_constructible"] = false;
    r.result["pi_empty_at"] = dual.game.space().label(*gb.empty_at);
    r.result["conditions_hold"] = false;
    r.lines.push_back("gamma not constructible: pi empty at " +
                      dual.game.space().label(*gb.empty_at));
    r.lines.push_back("conditions hold: no");
    return r;
  }
  const FinitePoset& domain = gb.map->domain;
  TheoremAReport rep = verify_theorem_a(*gb.map, spec.caps.chain_enum);
  r.result["gamma_constructible"] = true;
  json a1{{"increasing", rep.a1.increasing}, {"subset_property", rep.a1.subset_property}};
  if (rep.a1.counterexample)
    a1["counterexample"] = json{{"x", domain.label(rep.a1.counterexample->x)},
                                {"y", domain.label(rep.a1.counterexample->y)},
                                {"u", domain.label(rep.a1.counterexample->u)}};
  r.result["a1_increasing_upward"] = std::move(a1);
  r.result["a2_values_inductive"] = values_inductive_json(rep.a2);
  if (rep.a3)
    r.result["a3_witness"] = json{{"y_star", domain.label(rep.a3->y_star)},
                                  {"v_star", domain.label(rep.a3->v_star)}};
  r.result["conditions_hold"] = rep.conditions_hold;
  r.result["fixed_points"] = labels_json(domain, rep.fixed_point_set);
  if (rep.fixed_points_inductive)
    r.result["fixed_points_inductive"] = inductivity_json(*rep.fixed_points_inductive);
  if (rep.maximal_above) r.result["maximal_above"] = maximal_json(domain, *rep.maximal_above);
  r.result["conclusions"] = json{{"nonempty", rep.conclusion_nonempty},
                                 {"inductive", rep.conclusion_inductive},
                                 {"maximal_above", rep.conclusion_maximal_above}};
  r.result["conclusions_hold"] = rep.conclusions_hold;

  r.lines.push_back("a1 increasing upward: " + yn(rep.a1.increasing));
  r.lines.push_back("a2 values inductive: " + yn(rep.a2.all_inductive) + " (" +
                    method_name(rep.a2.method) + ")");
  r.lines.push_back(rep.a3 ? "a3 witness: y*=" + domain.label(rep.a3->y_star) + " v*=" +
                                 domain.label(rep.a3->v_star)
                           : "a3 witness: none");
  r.lines.push_back("conditions hold: " + yn(rep.conditions_hold));
  r.lines.push_back("fixed points (" + std::to_string(rep.fixed_point_set.size()) +
                    "): " + labels_text(domain, rep.fixed_point_set));
  r.lines.push_back("conclusions hold: " + yn(rep.conclusions_hold));
  if (rep.conditions_hold && !rep.conclusions_hold) {
    r.exit_code = 1;
    r.lines.push_back("claim failed: conditions hold but a conclusion does not");
  }
  return r;
}

CommandResult cmd_theorem1(const GameSpec& spec, const std::string& name) {
  DualGame dual = build_dual(spec, name);
  const StaticGame& g = dual.game;
  SplitReport rep = check_theorem1(dual, spec.caps.profile, spec.caps.chain_enum);
  CommandResult r;
  r.result["dual"] = name;
  r.result["condition_a_order_positive"] =
      json{{"holds", rep.condition_a}, {"players", order_positive_json(g, rep.order_positive)}};
  json b{{"holds", rep.condition_b},
         {"pi_nonempty", rep.pi_nonempty},
         {"pi_inductive", values_inductive_json(rep.pi_inductive)}};
  if (rep.pi_empty_at) b["pi_empty_at"] = g.space().label(*rep.pi_empty_at);
  r.result["condition_b_pi"] = std::move(b);
  r.result["condition_c_operator_increasing"] =
      json{{"holds", rep.condition_c}, {"check", monotonicity_json(g, rep.op_increasing)}};
  json d{{"holds", rep.condition_d}};
  if (rep.witness)
    d["witness"] = json{{"x_prime", g.space().label(rep.witness->y_star)},
                        {"u_prime", g.space().label(rep.witness->v_star)}};
  r.result["condition_d_witness"] = std::move(d);
  r.result["conditions_hold"] = rep.conditions_hold;
  r.result["split"] = profiles_json(g, rep.split_ne);
  r.result["matches_gamma_fixed_points"] =
      rep.matches_gamma_fixed_points ? json(*rep.matches_gamma_fixed_points) : json(nullptr);
  json growth{{"holds", rep.pi_monotone_growth}};
  if (rep.growth_counterexample)
    growth["counterexample"] = json{{"x", g.space().label(rep.growth_counterexample->first)},
                                    {"y", g.space().label(rep.growth_counterexample->second)}};
  r.result["pi_monotone_growth"] = std::move(growth);
  if (rep.split_inductive) r.result["split_inductive"] = inductivity_json(*rep.split_inductive);
  if (rep.split_above_inductive)
    r.result["split_above_inductive"] = inductivity_json(*rep.split_above_inductive);
  if (rep.maximal_above)
    r.result["maximal_above"] = maximal_json(g.space().to_poset(), *rep.maximal_above);
  r.result["conclusions"] = json{{"nonempty", rep.conclusion_nonempty},
                                 {"inductive", rep.conclusion_inductive},
                                 {"above_nonempty", rep.conclusion_above_nonempty},
                                 {"above_inductive", rep.conclusion_above_inductive},
                                 {"maximal_above", rep.conclusion_maximal_above}};
  r.result["conclusions_hold"] = rep.conclusions_hold;

  r.lines.push_back("condition a (order positive): " + yn(rep.condition_a));
  r.lines.push_back("condition b (pi nonempty, values inductive): " + yn(rep.condition_b));
  r.lines.push_back("condition c (operator increasing): " + yn(rep.condition_c));
  r.lines.push_back("condition d (witness pair): " + yn(rep.condition_d) +
                    (rep.witness ? " at x'=" + g.space().label(rep.witness->y_star) + " u'=" +
                                       g.space().label(rep.witness->v_star)
                                 : ""));
  r.lines.push_back("conditions hold: " + yn(rep.conditions_hold));
  r.lines.push_back("split equilibria (" + std::to_string(rep.split_ne.size()) +
                    "): " + profiles_text(g, rep.split_ne));
  r.lines.push_back("conclusions hold: " + yn(rep.conclusions_hold));
  if (rep.conditions_hold && !rep.conclusions_hold) {
    r.exit_code = 1;
    r.lines.push_back("claim failed: conditions hold but a conclusion does not");
  }
  return r;
}

CommandResult cmd_theorem2(const GameSpec& spec, const std::string& name) {
  RepeatedGame rep_game = build_repeated(spec, name);
  const StaticGame& g = rep_game.game;
  Theorem2Report rep = check_theorem2(rep_game, spec.caps.profile, spec.caps.chain_enum);
  CommandResult r;
  r.result["repeated"] = name;
  r.result["cycle"] = cycle_json(rep_game.trajectory.cycle());
  r.result["partial"] = rep.partial;
  r.result["condition_a_order_positive"] =
      json{{"holds", rep.condition_a}, {"players", order_positive_json(g, rep.order_positive)}};
  json b{{"holds", rep.condition_b},
         {"psi_nonempty", rep.psi_nonempty},
         {"psi_inductive", values_inductive_json(rep.psi_inductive)}};
  if (rep.psi_empty_at) b["psi_empty_at"] = g.space().label(*rep.psi_empty_at);
  r.result["condition_b_psi"] = std::move(b);
  json sched = json::array();
  bool c_holds = rep.condition_c;
  for (const MonotonicityCheck& mc : rep.schedule_increasing)
    sched.push_back(monotonicity_json(g, mc));
  r.result["condition_c_schedule_increasing"] = json{{"holds", c_holds}, {"checks", sched}};
  json d{{"holds", rep.condition_d}};
  if (rep.witness)
    d["witness"] = json{{"x_prime", g.space().label(rep.witness->y_star)},
                        {"u_prime", g.space().label(rep.witness->v_star)}};
  r.result["condition_d_witness"] = std::move(d);
  r.result["conditions_hold"] = rep.conditions_hold;
  r.result["inf_split"] = profiles_json(g, rep.inf_split);
  r.result["matches_gamma_fixed_points"] =
      rep.matches_gamma_fixed_points ? json(*rep.matches_gamma_fixed_points) : json(nullptr);
  json growth{{"holds", rep.psi_monotone_growth}};
  if (rep.growth_counterexample)
    growth["counterexample"] = json{{"x", g.space().label(rep.growth_counterexample->first)},
                                    {"y", g.space().label(rep.growth_counterexample->second)}};
  r.result["psi_monotone_growth"] = std::move(growth);
  if (rep.inf_split_inductive)
    r.result["inf_split_inductive"] = inductivity_json(*rep.inf_split_inductive);
  if (rep.inf_split_above_inductive)
    r.result["inf_split_above_inductive"] = inductivity_json(*rep.inf_split_above_inductive);
  if (rep.maximal_above)
    r.result["maximal_above"] = maximal_json(g.space().to_poset(), *rep.maximal_above);
  r.result["conclusions"] = json{{"nonempty", rep.conclusion_nonempty},
                                 {"inductive", rep.conclusion_inductive},
                                 {"above_nonempty", rep.conclusion_above_nonempty},
                                 {"above_inductive", rep.conclusion_above_inductive},
                                 {"maximal_above", rep.conclusion_maximal_above}};
  r.result["conclusions_hold"] = rep.conclusions_hold;

  r.lines.push_back(cycle_text(rep_game.trajectory.cycle()));
  r.lines.push_back("condition a (order positive): " + yn(rep.condition_a));
  r.lines.push_back("condition b (psi nonempty, values inductive): " + yn(rep.condition_b));
  r.lines.push_back("condition c (schedule increasing): " + yn(rep.condition_c));
  r.lines.push_back("condition d (witness pair): " + yn(rep.condition_d));
  r.lines.push_back("conditions hold: " + yn(rep.conditions_hold));
  r.lines.push_back("infinitely split equilibria (" + std::to_string(rep.inf_split.size()) +
                    "): " + profiles_text(g, rep.inf_split));
  r.lines.push_back("conclusions hold: " + yn(rep.conclusions_hold));
  if (rep.partial) r.lines.push_back("partial: verified only up to the detection horizon");
  if (rep.conditions_hold && (!rep.conclusions_hold || rep.partial)) {
    r.exit_code = 1;
    r.lines.push_back(rep.partial ? "claim unresolved: cycle cap cut the verification off"
                                  : "claim failed: conditions hold but a conclusion does not");
  }
  return r;
}

CommandResult cmd_prop1(const GameSpec& spec, const std::string& name) {
  RepeatedGame rep_game = build_repeated(spec, name);
  const StaticGame& g = rep_game.game;
  Proposition1Report rep = check_proposition1(rep_game, spec.caps.profile);
  CommandResult r;
  r.result["repeated"] = name;
  r.result["inf_split"] =
      json{{"members", profiles_json(g, rep.inf_split.members)}, {"partial", rep.inf_split.partial}};
  r.result["repeated_ne"] = profiles_json(g, rep.repeated_ne);
  r.result["inclusion_holds"] = rep.inclusion_holds;
  if (rep.violating) r.result["violating"] = profile_json(g, *rep.violating);
  r.lines.push_back("infinitely split (" + std::to_string(rep.inf_split.members.size()) +
                    "): " + profiles_text(g, rep.inf_split.members));
  r.lines.push_back("repeated nash (" + std::to_string(rep.repeated_ne.size()) +
                    "): " + profiles_text(g, rep.repeated_ne));
  r.lines.push_back("inclusion holds: " + yn(rep.inclusion_holds));
  if (!rep.inclusion_holds) {
    r.exit_code = 1;
    r.lines.push_back("claim failed: " + g.space().label(*rep.violating) +
                      " is infinitely split but not repeated-nash");
  }
  return r;
}

CommandResult cmd_bertrand_theorem3(const GameSpec& spec, const std::string& name) {
  const BertrandEntry& entry = spec.bertrand.at(name);
  const BertrandModel& m = spec.bertrand_models.at(entry.model);
  Theorem3Report rep =
      verify_theorem3(m, entry.transforms, spec.caps.transform_steps, spec.caps.profile);
  CommandResult r;
  r.result["bertrand"] = name;
  r.result["model"] = entry.model;
  r.result["cycle"] = cycle_json(rep.cycle);
  r.result["partial"] = rep.partial;
  r.result["symmetric_costs"] = rep.symmetric_costs;
  r.result["all_identity"] = rep.all_identity;
  r.result["grid_closed"] = rep.grid_closed;
  r.result["cost_profile"] = price_json(PricePoint{m.c1, m.c2});
  r.result["cost_profile_member"] = rep.cost_profile_member;
  r.result["members"] = prices_json(rep.inf_split_members);
  r.result["extra_members"] = prices_json(rep.extra_members);
  r.result["case_symmetric_applies"] = rep.case_symmetric_applies;
  r.result["case_identity_applies"] = rep.case_identity_applies;
  r.result["case_holds"] = rep.case_holds;
  if (rep.first_violation) r.result["first_violation"] = deviation_json(*rep.first_violation);
  if (rep.strongest_violation)
    r.result["strongest_violation"] = deviation_json(*rep.strongest_violation);
  r.result["table_route_agrees"] =
      rep.table_route_agrees ? json(*rep.table_route_agrees) : json(nullptr);

  r.lines.push_back(cycle_text(rep.cycle));
  r.lines.push_back("symmetric costs: " + yn(rep.symmetric_costs) +
                    ", identity schedule: " + yn(rep.all_identity) +
                    ", grid closed: " + yn(rep.grid_closed));
  r.lines.push_back("cost profile " + price_text(PricePoint{m.c1, m.c2}) +
                    " infinitely split: " + yn(rep.cost_profile_member));
  if (rep.cycle.complete) {
    r.lines.push_back("members (" + std::to_string(rep.inf_split_members.size()) +
                      "): " + prices_text(rep.inf_split_members));
    r.lines.push_back("extra members (" + std::to_string(rep.extra_members.size()) +
                      "): " + prices_text(rep.extra_members));
  }
  if (rep.first_violation) r.lines.push_back("first violation: " + deviation_text(*rep.first_violation));
  if (rep.strongest_violation)
    r.lines.push_back("strongest violation: " + deviation_text(*rep.strongest_violation));
  if (rep.table_route_agrees)
    r.lines.push_back("table route agrees: " + yn(*rep.table_route_agrees));
  if (rep.partial) r.lines.push_back("partial: verified only up to the detection horizon");
  if (rep.case_symmetric_applies)
    r.lines.push_back("case: symmetric costs, membership asserted");
  else if (rep.case_identity_applies)
    r.lines.push_back("case: identity schedule, membership asserted");
  else
    r.lines.push_back("case: no membership asserted (asymmetric costs, non-identity schedule)");
  r.lines.push_back("case holds: " + yn(rep.case_holds));
  if (!rep.case_holds) {
    r.exit_code = 1;
    r.lines.push_back(rep.partial ? "claim unresolved: transform step cap cut the verification off"
                                  : "claim failed: asserted membership does not hold");
  }
  return r;
}

CommandResult cmd_bertrand_corollary4(const GameSpec& spec, const std::string& name) {
  const BertrandEntry& entry = spec.bertrand.at(name);
  if (!entry.transforms.all_identity())
    throw SpecError("bertrand-corollary4 needs an identity transform schedule; entry \"" + name +
                    "\" is not identity");
  const BertrandModel& m = spec.bertrand_models.at(entry.model);
  auto [h1, h2] = corollary4_values(m, entry.rho);
  const bool zero = h1 == 0 && h2 == 0;
  CommandResult r;
  r.result["bertrand"] = name;
  r.result["model"] = entry.model;
  r.result["rho"] = format_rational(entry.rho);
  r.result["price"] = price_json(PricePoint{m.c1, m.c2});
  r.result["h"] = json::array({format_rational(h1), format_rational(h2)});
  r.result["zero"] = zero;
  r.lines.push_back("price " + price_text(PricePoint{m.c1, m.c2}) + ", rho " +
                    format_rational(entry.rho));
  r.lines.push_back("h = (" + format_rational(h1) + ", " + format_rational(h2) + ")");
  r.lines.push_back("discounted values zero: " + yn(zero));
  if (!zero) {
    r.exit_code = 1;
    r.lines.push_back("claim failed: discounted value at the cost profile is not zero");
  }
  return r;
}

CommandResult cmd_bertrand_static(const GameSpec& spec, const std::string& name) {
  const BertrandModel& m = spec.bertrand_models.at(name);
  StaticGame g = static_game(m);
  std::vector<int> set = nash_set(g, spec.caps.profile);
  const int n2 = static_cast<int>(m.grid2.size());
  const int cost_flat =
      grid_index(m.grid1, m.c1) * n2 + grid_index(m.grid2, m.c2);
  const bool member = std::binary_search(set.begin(), set.end(), cost_flat);
  std::vector<PricePoint> points;
  points.reserve(set.size());
  for (int x : set) points.push_back(PricePoint{m.grid1[x / n2], m.grid2[x % n2]});
  CommandResult r;
  r.result["model"] = name;
  r.result["profile_count"] = g.profile_count();
  r.result["nash"] = prices_json(points);
  r.result["cost_profile"] = price_json(PricePoint{m.c1, m.c2});
  r.result["cost_profile_nash"] = member;
  r.lines.push_back("profiles: " + std::to_string(g.profile_count()));
  r.lines.push_back("nash equilibria (" + std::to_string(points.size()) +
                    "): " + prices_text(points));
  r.lines.push_back("cost profile " + price_text(PricePoint{m.c1, m.c2}) +
                    " nash: " + yn(member));
  if (!member) {
    r.exit_code = 1;
    r.lines.push_back("claim failed: the cost profile is not a grid nash equilibrium");
  }
  return r;
}

bool command_asserts(const std::string& command) {
  return command == "theoremA" || command == "theorem1" || command == "theorem2" ||
         command == "prop1" || command == "bertrand-theorem3" ||
         command == "bertrand-corollary4" || command == "bertrand-static";
}

}  // namespace

AnalysisReport run_command(const GameSpec& spec, const std::string& command,
                           const std::string& target, std::optional<long> seed) {
  const auto started = std::chrono::steady_clock::now();
  json envelope = json::object();
  envelope["command"] = command;
  envelope["caps"] = json{{"profile", spec.caps.profile},
                          {"cycle_steps", spec.caps.cycle_steps},
                          {"chain_enum", spec.caps.chain_enum},
                          {"transform_steps", spec.caps.transform_steps}};
  if (seed) envelope["seed"] = *seed;

  std::string resolved;
  CommandResult r;
  int exit_code = 0;
  try {
    if (command == "validate") {
      r = cmd_validate(spec);
    } else if (command == "nash") {
      resolved = resolve(spec.games, target, "game");
      r = cmd_nash(spec, resolved);
    } else if (command == "split") {
      resolved = resolve(spec.duals, target, "dual");
      r = cmd_split(spec, resolved);
    } else if (command == "infsplit") {
      resolved = resolve(spec.repeated, target, "repeated game");
      r = cmd_infsplit(spec, resolved);
    } else if (command == "discounted") {
      resolved = resolve(spec.repeated, target, "repeated game");
      r = cmd_discounted(spec, resolved);
    } else if (command == "theoremA") {
      resolved = resolve(spec.duals, target, "dual");
      r = cmd_theorem_a(spec, resolved);
    } else if (command == "theorem1") {
      resolved = resolve(spec.duals, target, "dual");
      r = cmd_theorem1(spec, resolved);
    } else if (command == "theorem2") {
      resolved = resolve(spec.repeated, target, "repeated game");
      r = cmd_theorem2(spec, resolved);
    } else if (command == "prop1") {
      resolved = resolve(spec.repeated, target, "repeated game");
      r = cmd_prop1(spec, resolved);
    } else if (command == "bertrand-theorem3") {
      resolved = resolve(spec.bertrand, target, "bertrand entry");
      r = cmd_bertrand_theorem3(spec, resolved);
    } else if (command == "bertrand-corollary4") {
      resolved = resolve(spec.bertrand, target, "bertrand entry");
      r = cmd_bertrand_corollary4(spec, resolved);
    } else if (command == "bertrand-static") {
      resolved = resolve(spec.bertrand_models, target, "bertrand model");
      r = cmd_bertrand_static(spec, resolved);
    } else {
      throw SpecError("unknown command \"" + command + "\"");
    }
    exit_code = r.exit_code;
  } catch (const SpecError& e) {
    envelope["error"] = e.what();
    envelope["exit"] = 2;
    const auto elapsed = std::chrono::steady_clock::now() - started;
    envelope["timing_ms"] =
        std::chrono::duration_cast<std::chrono::milliseconds>(elapsed).count();
    AnalysisReport out;
    out.exit_code = 2;
    out.machine = std::move(envelope);
    out.text = "command: " + command + "\nerror: " + e.what() + "\nexit: 2\n";
    return out;
  } catch (const CapExceeded& e) {
    r = CommandResult{};
    r.result = json{{"partial", true}, {"cap_exceeded", e.what()}};
    r.lines = {"cap exceeded: " + std::string(e.what())};
    exit_code = command_asserts(command) ? 1 : 0;
    if (exit_code == 1) r.lines.push_back("claim unresolved: a cap cut the verification off");
  } catch (const std::logic_error& e) {
    r = CommandResult{};
    r.result = json{{"partial", true}, {"cycle_undetected", e.what()}};
    r.lines = {"cycle not detected within the step cap: " + std::string(e.what())};
    exit_code = command_asserts(command) ? 1 : 0;
    if (exit_code == 1) r.lines.push_back("claim unresolved: a cap cut the verification off");
  }

  if (!resolved.empty()) envelope["target"] = resolved;
  envelope["result"] = std::move(r.result);
  envelope["exit"] = exit_code;
  const auto elapsed = std::chrono::steady_clock::now() - started;
  envelope["timing_ms"] = std::chrono::duration_cast<std::chrono::milliseconds>(elapsed).count();

  std::ostringstream text;
  text << "command: " << command << "\n";
  if (!resolved.empty()) text << "target: " << resolved << "\n";
  text << "caps: profile=" << spec.caps.profile << " cycle_steps=" << spec.caps.cycle_steps
       << " chain_enum=" << spec.caps.chain_enum
       << " transform_steps=" << spec.caps.transform_steps << "\n";
  for (const std::string& line : r.lines) text << line << "\n";
  text << "exit: " << exit_code << "\n";

  AnalysisReport out;
  out.exit_code = exit_code;
  out.machine = std::move(envelope);
  out.text = text.str();
  return out;
}

}  // namespace splitnash
