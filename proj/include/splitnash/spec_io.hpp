#pragma once

#include "splitnash/bertrand.hpp"
#include "splitnash/repeated.hpp"

#include "json.hpp"

#include <map>
#include <stdexcept>
#include <string>
#include <vector>

namespace splitnash {

// Input document rejected: parse error, dangling reference, axiom violation,
// or a constraint named in the message.
struct SpecError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Exhaustive-search limits, settable per document and echoed in every report.
struct SpecCaps {
  int profile = kDefaultProfileCap;
  long cycle_steps = kDefaultCycleStepCap;
  int chain_enum = kDefaultChainEnumCap;
  long transform_steps = kDefaultTransformStepCap;
};

struct GameEntry {
  std::vector<std::string> players;  // poset names
  StaticGame game;
};

struct OperatorEntry {
  std::string game;
  ProfileOperator op;
};

struct DualEntry {
  std::string game;
  std::string op;
};

struct ScheduleEntry {
  std::string game;
  std::vector<std::string> prefix;
  std::vector<std::string> cycle;
};

struct RepeatedEntry {
  std::string game;
  std::string schedule;
  Rat rho;
};

struct BertrandEntry {
  std::string model;
  TransformSchedule transforms;
  Rat rho;
};

// A fully validated document: every cross-reference resolves, every operator
// is total on its game, every rational parsed. Sections are name-keyed maps,
// so iteration (and serialization) order is deterministic.
struct GameSpec {
  SpecCaps caps;
  std::map<std::string, FinitePoset> posets;
  std::map<std::string, GameEntry> games;
  std::map<std::string, OperatorEntry> operators;
  std::map<std::string, DualEntry> duals;
  std::map<std::string, ScheduleEntry> schedules;
  std::map<std::string, RepeatedEntry> repeated;
  std::map<std::string, BertrandModel> bertrand_models;
  std::map<std::string, BertrandEntry> bertrand;
};

// Accepted poset forms: {"chain": n | [labels]}, {"antichain": n},
// {"elements": [...], "covers": [[a,b]...]} or the same with "leq" listing
// the complete relation (reflexive pairs included; axiom violations are
// reported through the poset validator). Rationals are "p/q" strings or
// integers. Throws SpecError on any defect.
GameSpec parse_spec(const nlohmann::json& doc);
GameSpec parse_spec_text(const std::string& text);
GameSpec load_spec(const std::string& path);

// Normal form: caps always present, empty sections omitted, posets as
// elements + cover pairs, grids explicit, rationals as strings. Parsing the
// result reproduces the spec; serializing again is byte-identical.
nlohmann::json serialize_spec(const GameSpec& spec);

// Assembled objects for commands. Construction can throw CapExceeded (cycle
// detection honors caps.cycle_steps via the trajectory step cap).
DualGame build_dual(const GameSpec& spec, const std::string& name);
OperatorSchedule build_schedule(const GameSpec& spec, const std::string& name);
RepeatedGame build_repeated(const GameSpec& spec, const std::string& name);

}  // namespace splitnash
