#include "splitnash/spec_io.hpp"

#include <fstream>
#include <sstream>
#include <utility>

namespace splitnash {

namespace {

using nlohmann::json;

[[noreturn]] void fail(const std::string& message) { throw SpecError(message); }

const json& member(const json& obj, const char* key, const std::string& where) {
  auto it = obj.find(key);
  if (it == obj.end()) fail(where + ": missing key \"" + key + "\"");
  return *it;
}

void check_keys(const json& obj, const std::string& where,
                std::initializer_list<const char*> allowed) {
  for (auto it = obj.begin(); it != obj.end(); ++it) {
    bool known = false;
    for (const char* key : allowed) known = known || it.key() == key;
    if (!known) fail(where + ": unknown key \"" + it.key() + "\"");
  }
}

const json& expect_object(const json& j, const std::string& where) {
  if (!j.is_object()) fail(where + ": expected an object");
  return j;
}

const json& expect_array(const json& j, const std::string& where) {
  if (!j.is_array()) fail(where + ": expected an array");
  return j;
}

std::string expect_string(const json& j, const std::string& where) {
  if (!j.is_string()) fail(where + ": expected a string");
  return j.get<std::string>();
}

long expect_integer(const json& j, const std::string& where) {
  if (!j.is_number_integer()) fail(where + ": expected an integer");
  return j.get<long>();
}

Rat parse_rat(const json& j, const std::string& where) {
  if (j.is_number_integer()) return Rat(j.get<long long>());
  if (!j.is_string()) fail(where + ": expected a rational \"p/q\" string or an integer");
  try {
    return parse_rational(j.get<std::string>());
  } catch (const std::invalid_argument& e) {
    fail(where + ": " + e.what());
  }
}

std::vector<Rat> parse_rat_array(const json& j, const std::string& where) {
  expect_array(j, where);
  std::vector<Rat> out;
  out.reserve(j.size());
  for (std::size_t i = 0; i < j.size(); ++i)
    out.push_back(parse_rat(j[i], where + "[" + std::to_string(i) + "]"));
  return out;
}

std::vector<std::string> parse_labels(const json& j, const std::string& where) {
  expect_array(j, where);
  if (j.empty()) fail(where + ": must be nonempty");
  std::vector<std::string> labels;
  labels.reserve(j.size());
  for (std::size_t i = 0; i < j.size(); ++i)
    labels.push_back(expect_string(j[i], where + "[" + std::to_string(i) + "]"));
  return labels;
}

int label_index(const std::vector<std::string>& labels, const std::string& label,
                const std::string& where) {
  for (std::size_t i = 0; i < labels.size(); ++i)
    if (labels[i] == label) return static_cast<int>(i);
  fail(where + ": unknown element \"" + label + "\"");
}

std::vector<std::pair<int, int>> parse_pairs(const json& j, const std::vector<std::string>& labels,
                                             const std::string& where) {
  expect_array(j, where);
  std::vector<std::pair<int, int>> pairs;
  pairs.reserve(j.size());
  for (std::size_t i = 0; i < j.size(); ++i) {
    const std::string at = where + "[" + std::to_string(i) + "]";
    expect_array(j[i], at);
    if (j[i].size() != 2) fail(at + ": expected a [from, to] label pair");
    pairs.emplace_back(label_index(labels, expect_string(j[i][0], at), at),
                       label_index(labels, expect_string(j[i][1], at), at));
  }
  return pairs;
}

FinitePoset parse_poset(const std::string& name, const json& j) {
  const std::string where = "poset \"" + name + "\"";
  expect_object(j, where);
  check_keys(j, where, {"chain", "antichain", "elements", "covers", "leq"});
  if (j.contains("chain")) {
    if (j.size() != 1) fail(where + ": \"chain\" form takes no other keys");
    const json& c = j["chain"];
    if (c.is_number_integer()) {
      long n = c.get<long>();
      if (n < 1) fail(where + ": chain length must be at least 1");
      return FinitePoset::chain(static_cast<int>(n));
    }
    return FinitePoset::chain(parse_labels(c, where + ".chain"));
  }
  if (j.contains("antichain")) {
    if (j.size() != 1) fail(where + ": \"antichain\" form takes no other keys");
    long n = expect_integer(j["antichain"], where + ".antichain");
    if (n < 1) fail(where + ": antichain size must be at least 1");
    return FinitePoset::antichain(static_cast<int>(n));
  }
  std::vector<std::string> labels = parse_labels(member(j, "elements", where), where + ".elements");
  for (std::size_t a = 0; a < labels.size(); ++a)
    for (std::size_t b = a + 1; b < labels.size(); ++b)
      if (labels[a] == labels[b]) fail(where + ": duplicate element \"" + labels[a] + "\"");
  const bool has_covers = j.contains("covers");
  const bool has_leq = j.contains("leq");
  if (has_covers == has_leq)
    fail(where + ": give exactly one of \"covers\" or \"leq\" with \"elements\"");
  if (has_covers) {
    auto covers = parse_pairs(j["covers"], labels, where + ".covers");
    try {
      return FinitePoset::from_covers(std::move(labels), covers);
    } catch (const std::invalid_argument& e) {
      fail(where + ": " + e.what());
    }
  }
  auto relation = parse_pairs(j["leq"], labels, where + ".leq");
  auto result = FinitePoset::validate(std::move(labels), relation);
  if (!result.ok()) fail(where + ": " + result.violation->message);
  return *std::move(result.poset);
}

GameEntry parse_game(const GameSpec& spec, const std::string& name, const json& j) {
  const std::string where = "game \"" + name + "\"";
  expect_object(j, where);
  check_keys(j, where, {"players", "utilities"});
  std::vector<std::string> players = parse_labels(member(j, "players", where), where + ".players");
  if (players.size() < 2)
    fail(where + ": needs at least two players (n >= 2), got " + std::to_string(players.size()));
  std::vector<FinitePoset> posets;
  for (const std::string& p : players) {
    auto it = spec.posets.find(p);
    if (it == spec.posets.end()) fail(where + ": unknown poset \"" + p + "\"");
    posets.push_back(it->second);
  }
  const json& tables = expect_array(member(j, "utilities", where), where + ".utilities");
  if (tables.size() != players.size())
    fail(where + ": utilities must have one table per player");
  std::vector<std::vector<Rat>> utilities;
  for (std::size_t i = 0; i < tables.size(); ++i)
    utilities.push_back(
        parse_rat_array(tables[i], where + ".utilities[" + std::to_string(i) + "]"));
  try {
    return GameEntry{std::move(players), StaticGame(std::move(posets), std::move(utilities))};
  } catch (const std::invalid_argument& e) {
    fail(where + ": " + e.what());
  }
}

OperatorEntry parse_operator(const GameSpec& spec, const std::string& name, const json& j) {
  const std::string where = "operator \"" + name + "\"";
  expect_object(j, where);
  check_keys(j, where, {"game", "image"});
  std::string game = expect_string(member(j, "game", where), where + ".game");
  auto it = spec.games.find(game);
  if (it == spec.games.end()) fail(where + ": unknown game \"" + game + "\"");
  const int profiles = it->second.game.profile_count();
  const json& image_json = expect_array(member(j, "image", where), where + ".image");
  if (static_cast<int>(image_json.size()) != profiles)
    fail(where + ": image must be total on the " + std::to_string(profiles) +
         " profiles of game \"" + game + "\"");
  std::vector<int> image;
  image.reserve(image_json.size());
  for (std::size_t x = 0; x < image_json.size(); ++x) {
    const std::string at = where + ".image[" + std::to_string(x) + "]";
    long v = expect_integer(image_json[x], at);
    if (v < 0 || v >= profiles)
      fail(at + ": " + std::to_string(v) + " is not a profile index of game \"" + game + "\"");
    image.push_back(static_cast<int>(v));
  }
  return OperatorEntry{std::move(game), ProfileOperator{std::move(image)}};
}

DualEntry parse_dual(const GameSpec& spec, const std::string& name, const json& j) {
  const std::string where = "dual \"" + name + "\"";
  expect_object(j, where);
  check_keys(j, where, {"game", "operator"});
  std::string game = expect_string(member(j, "game", where), where + ".game");
  if (!spec.games.count(game)) fail(where + ": unknown game \"" + game + "\"");
  std::string op = expect_string(member(j, "operator", where), where + ".operator");
  auto it = spec.operators.find(op);
  if (it == spec.operators.end()) fail(where + ": unknown operator \"" + op + "\"");
  if (it->second.game != game)
    fail(where + ": operator \"" + op + "\" is defined on game \"" + it->second.game +
         "\", not \"" + game + "\"");
  return DualEntry{std::move(game), std::move(op)};
}

std::vector<std::string> parse_operator_names(const GameSpec& spec, const std::string& game,
                                              const json& j, const std::string& where) {
  expect_array(j, where);
  std::vector<std::string> names;
  names.reserve(j.size());
  for (std::size_t i = 0; i < j.size(); ++i) {
    const std::string at = where + "[" + std::to_string(i) + "]";
    std::string op = expect_string(j[i], at);
    auto it = spec.operators.find(op);
    if (it == spec.operators.end()) fail(at + ": unknown operator \"" + op + "\"");
    if (it->second.game != game)
      fail(at + ": operator \"" + op + "\" is defined on game \"" + it->second.game +
           "\", not \"" + game + "\"");
    names.push_back(std::move(op));
  }
  return names;
}

ScheduleEntry parse_schedule(const GameSpec& spec, const std::string& name, const json& j) {
  const std::string where = "schedule \"" + name + "\"";
  expect_object(j, where);
  check_keys(j, where, {"game", "prefix", "cycle"});
  std::string game = expect_string(member(j, "game", where), where + ".game");
  if (!spec.games.count(game)) fail(where + ": unknown game \"" + game + "\"");
  std::vector<std::string> prefix;
  if (j.contains("prefix"))
    prefix = parse_operator_names(spec, game, j["prefix"], where + ".prefix");
  std::vector<std::string> cycle =
      parse_operator_names(spec, game, member(j, "cycle", where), where + ".cycle");
  if (cycle.empty()) fail(where + ": cycle must be nonempty");
  return ScheduleEntry{std::move(game), std::move(prefix), std::move(cycle)};
}

Rat parse_rho(const json& j, const std::string& where) {
  Rat rho = parse_rat(member(j, "rho", where), where + ".rho");
  if (!(rho > 0 && rho < 1)) fail(where + ": rho must satisfy 0 < rho < 1");
  return rho;
}

RepeatedEntry parse_repeated(const GameSpec& spec, const std::string& name, const json& j) {
  const std::string where = "repeated \"" + name + "\"";
  expect_object(j, where);
  check_keys(j, where, {"game", "schedule", "rho"});
  std::string game = expect_string(member(j, "game", where), where + ".game");
  if (!spec.games.count(game)) fail(where + ": unknown game \"" + game + "\"");
  std::string schedule = expect_string(member(j, "schedule", where), where + ".schedule");
  auto it = spec.schedules.find(schedule);
  if (it == spec.schedules.end()) fail(where + ": unknown schedule \"" + schedule + "\"");
  if (it->second.game != game)
    fail(where + ": schedule \"" + schedule + "\" is defined on game \"" + it->second.game +
         "\", not \"" + game + "\"");
  return RepeatedEntry{std::move(game), std::move(schedule), parse_rho(j, where)};
}

BertrandModel parse_bertrand_model(const std::string& name, const json& j) {
  const std::string where = "bertrand model \"" + name + "\"";
  expect_object(j, where);
  check_keys(j, where, {"c1", "c2", "cap1", "cap2", "demand", "grid_step", "grid1", "grid2"});
  Rat c1 = parse_rat(member(j, "c1", where), where + ".c1");
  Rat c2 = parse_rat(member(j, "c2", where), where + ".c2");
  Rat cap1 = parse_rat(member(j, "cap1", where), where + ".cap1");
  Rat cap2 = parse_rat(member(j, "cap2", where), where + ".cap2");
  std::vector<Rat> d = parse_rat_array(member(j, "demand", where), where + ".demand");
  if (d.size() != 3) fail(where + ".demand: expected [d0, d1, d2]");
  std::vector<Rat> grid1, grid2;
  const bool has_step = j.contains("grid_step");
  const bool has_grids = j.contains("grid1") || j.contains("grid2");
  if (has_step == has_grids)
    fail(where + ": give exactly one of \"grid_step\" or \"grid1\"+\"grid2\"");
  try {
    if (has_step) {
      Rat step = parse_rat(j["grid_step"], where + ".grid_step");
      grid1 = uniform_grid(step, cap1);
      grid2 = uniform_grid(step, cap2);
    } else {
      grid1 = parse_rat_array(member(j, "grid1", where), where + ".grid1");
      grid2 = parse_rat_array(member(j, "grid2", where), where + ".grid2");
    }
    return BertrandModel::make(c1, c2, cap1, cap2, d[0], d[1], d[2], std::move(grid1),
                               std::move(grid2));
  } catch (const std::invalid_argument& e) {
    fail(where + ": " + e.what());
  }
}

std::vector<PriceTransform> parse_transforms(const json& j, const std::string& where) {
  expect_array(j, where);
  std::vector<PriceTransform> out;
  out.reserve(j.size());
  for (std::size_t i = 0; i < j.size(); ++i) {
    const std::string at = where + "[" + std::to_string(i) + "]";
    expect_object(j[i], at);
    check_keys(j[i], at, {"alpha", "beta"});
    Rat alpha = parse_rat(member(j[i], "alpha", at), at + ".alpha");
    Rat beta = parse_rat(member(j[i], "beta", at), at + ".beta");
    try {
      out.push_back(make_transform(alpha, beta));
    } catch (const std::invalid_argument& e) {
      fail(at + ": " + e.what());
    }
  }
  return out;
}

BertrandEntry parse_bertrand(const GameSpec& spec, const std::string& name, const json& j) {
  const std::string where = "bertrand \"" + name + "\"";
  expect_object(j, where);
  check_keys(j, where, {"model", "prefix", "cycle", "rho"});
  std::string model = expect_string(member(j, "model", where), where + ".model");
  if (!spec.bertrand_models.count(model)) fail(where + ": unknown bertrand model \"" + model + "\"");
  TransformSchedule transforms;
  if (j.contains("prefix")) transforms.prefix = parse_transforms(j["prefix"], where + ".prefix");
  transforms.cycle = parse_transforms(member(j, "cycle", where), where + ".cycle");
  if (transforms.cycle.empty()) fail(where + ": cycle must be nonempty");
  return BertrandEntry{std::move(model), std::move(transforms), parse_rho(j, where)};
}

void parse_caps(SpecCaps& caps, const json& j) {
  const std::string where = "caps";
  expect_object(j, where);
  check_keys(j, where, {"profile", "cycle_steps", "chain_enum", "transform_steps"});
  auto positive = [&](const char* key, long fallback) {
    if (!j.contains(key)) return fallback;
    long v = expect_integer(j[key], where + "." + key);
    if (v < 1) fail(where + "." + key + ": must be positive");
    return v;
  };
  caps.profile = static_cast<int>(positive("profile", caps.profile));
  caps.cycle_steps = positive("cycle_steps", caps.cycle_steps);
  caps.chain_enum = static_cast<int>(positive("chain_enum", caps.chain_enum));
  caps.transform_steps = positive("transform_steps", caps.transform_steps);
}

template <typename Entry, typename Parse>
void parse_section(std::map<std::string, Entry>& out, const json& doc, const char* section,
                   Parse parse) {
  if (!doc.contains(section)) return;
  const json& sec = expect_object(doc[section], section);
  for (auto it = sec.begin(); it != sec.end(); ++it) {
    if (it.key().empty()) fail(std::string(section) + ": entry names must be nonempty");
    out.emplace(it.key(), parse(it.key(), *it));
  }
}

// Cover pairs of a validated poset: a < b with nothing strictly between.
std::vector<std::pair<int, int>> cover_pairs(const FinitePoset& p) {
  std::vector<std::pair<int, int>> covers;
  for (int a = 0; a < p.size(); ++a)
    for (int b = 0; b < p.size(); ++b) {
      if (!p.less(a, b)) continue;
      bool direct = true;
      for (int c = 0; c < p.size() && direct; ++c)
        direct = !(p.less(a, c) && p.less(c, b));
      if (direct) covers.emplace_back(a, b);
    }
  return covers;
}

json rat_json(const Rat& value) { return format_rational(value); }

json rat_array_json(const std::vector<Rat>& values) {
  json out = json::array();
  for (const Rat& v : values) out.push_back(rat_json(v));
  return out;
}

json poset_json(const FinitePoset& p) {
  json covers = json::array();
  for (auto [a, b] : cover_pairs(p)) covers.push_back(json::array({p.label(a), p.label(b)}));
  return json{{"elements", p.labels()}, {"covers", covers}};
}

json game_json(const GameEntry& entry) {
  json tables = json::array();
  for (int i = 0; i < entry.game.players(); ++i) {
    json row = json::array();
    for (int x = 0; x < entry.game.profile_count(); ++x)
      row.push_back(rat_json(entry.game.utility(i, x)));
    tables.push_back(std::move(row));
  }
  return json{{"players", entry.players}, {"utilities", tables}};
}

json transforms_json(const std::vector<PriceTransform>& ts) {
  json out = json::array();
  for (const PriceTransform& t : ts)
    out.push_back(json{{"alpha", rat_json(t.alpha)}, {"beta", rat_json(t.beta)}});
  return out;
}

}  // namespace

GameSpec parse_spec(const json& doc) {
  expect_object(doc, "document");
  check_keys(doc, "document",
             {"caps", "posets", "games", "operators", "duals", "schedules", "repeated",
              "bertrand_models", "bertrand"});
  GameSpec spec;
  if (doc.contains("caps")) parse_caps(spec.caps, doc["caps"]);
  parse_section(spec.posets, doc, "posets",
                [](const std::string& n, const json& j) { return parse_poset(n, j); });
  parse_section(spec.games, doc, "games",
                [&](const std::string& n, const json& j) { return parse_game(spec, n, j); });
  parse_section(spec.operators, doc, "operators",
                [&](const std::string& n, const json& j) { return parse_operator(spec, n, j); });
  parse_section(spec.duals, doc, "duals",
                [&](const std::string& n, const json& j) { return parse_dual(spec, n, j); });
  parse_section(spec.schedules, doc, "schedules",
                [&](const std::string& n, const json& j) { return parse_schedule(spec, n, j); });
  parse_section(spec.repeated, doc, "repeated",
                [&](const std::string& n, const json& j) { return parse_repeated(spec, n, j); });
  parse_section(spec.bertrand_models, doc, "bertrand_models",
                [](const std::string& n, const json& j) { return parse_bertrand_model(n, j); });
  parse_section(spec.bertrand, doc, "bertrand",
                [&](const std::string& n, const json& j) { return parse_bertrand(spec, n, j); });
  return spec;
}

GameSpec parse_spec_text(const std::string& text) {
  json doc;
  try {
    doc = json::parse(text);
  } catch (const json::parse_error& e) {
    fail(std::string("parse error: ") + e.what());
  }
  return parse_spec(doc);
}

GameSpec load_spec(const std::string& path) {
  std::ifstream in(path);
  if (!in) fail("cannot open spec file: " + path);
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return parse_spec_text(buffer.str());
}

json serialize_spec(const GameSpec& spec) {
  json doc = json::object();
  doc["caps"] = json{{"profile", spec.caps.profile},
                     {"cycle_steps", spec.caps.cycle_steps},
                     {"chain_enum", spec.caps.chain_enum},
                     {"transform_steps", spec.caps.transform_steps}};
  auto section = [&](const char* name, const auto& entries, auto to_json) {
    if (entries.empty()) return;
    json sec = json::object();
    for (const auto& [key, value] : entries) sec[key] = to_json(value);
    doc[name] = std::move(sec);
  };
  section("posets", spec.posets, [](const FinitePoset& p) { return poset_json(p); });
  section("games", spec.games, [](const GameEntry& g) { return game_json(g); });
  section("operators", spec.operators, [](const OperatorEntry& a) {
    return json{{"game", a.game}, {"image", a.op.image}};
  });
  section("duals", spec.duals, [](const DualEntry& d) {
    return json{{"game", d.game}, {"operator", d.op}};
  });
  section("schedules", spec.schedules, [](const ScheduleEntry& s) {
    return json{{"game", s.game}, {"prefix", s.prefix}, {"cycle", s.cycle}};
  });
  section("repeated", spec.repeated, [](const RepeatedEntry& r) {
    return json{{"game", r.game}, {"schedule", r.schedule}, {"rho", rat_json(r.rho)}};
  });
  section("bertrand_models", spec.bertrand_models, [](const BertrandModel& m) {
    return json{{"c1", rat_json(m.c1)},       {"c2", rat_json(m.c2)},
                {"cap1", rat_json(m.cap1)},   {"cap2", rat_json(m.cap2)},
                {"demand", json::array({rat_json(m.d0), rat_json(m.d1), rat_json(m.d2)})},
                {"grid1", rat_array_json(m.grid1)},
                {"grid2", rat_array_json(m.grid2)}};
  });
  section("bertrand", spec.bertrand, [](const BertrandEntry& b) {
    return json{{"model", b.model},
                {"prefix", transforms_json(b.transforms.prefix)},
                {"cycle", transforms_json(b.transforms.cycle)},
                {"rho", rat_json(b.rho)}};
  });
  return doc;
}

DualGame build_dual(const GameSpec& spec, const std::string& name) {
  auto it = spec.duals.find(name);
  if (it == spec.duals.end()) fail("unknown dual \"" + name + "\"");
  return DualGame(spec.games.at(it->second.game).game, spec.operators.at(it->second.op).op);
}

OperatorSchedule build_schedule(const GameSpec& spec, const std::string& name) {
  auto it = spec.schedules.find(name);
  if (it == spec.schedules.end()) fail("unknown schedule \"" + name + "\"");
  auto ops = [&](const std::vector<std::string>& names) {
    std::vector<ProfileOperator> out;
    out.reserve(names.size());
    for (const std::string& n : names) out.push_back(spec.operators.at(n).op);
    return out;
  };
  return OperatorSchedule(ops(it->second.prefix), ops(it->second.cycle));
}

RepeatedGame build_repeated(const GameSpec& spec, const std::string& name) {
  auto it = spec.repeated.find(name);
  if (it == spec.repeated.end()) fail("unknown repeated game \"" + name + "\"");
  return RepeatedGame(spec.games.at(it->second.game).game,
                      build_schedule(spec, it->second.schedule), it->second.rho,
                      spec.caps.cycle_steps);
}

}  // namespace splitnash
