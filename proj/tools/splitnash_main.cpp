#include "splitnash/report.hpp"

#include "CLI11.hpp"

#include <fstream>
#include <iostream>
#include <optional>

int main(int argc, char** argv) {
  CLI::App app{"Exact split / infinitely split equilibrium analysis on finite posets"};
  std::string command;
  std::string spec_path;
  std::string target;
  std::string out_path;
  std::string format = "text";
  long seed_value = 0;

  app.add_option("command", command,
                 "validate | nash | split | infsplit | discounted | theoremA | theorem1 | "
                 "theorem2 | prop1 | bertrand-theorem3 | bertrand-corollary4 | bertrand-static")
      ->required();
  app.add_option("--spec", spec_path, "spec document (JSON)")->required();
  app.add_option("--game", target, "entry name inside the spec (default: the sole entry)");
  app.add_option("--out", out_path, "write the machine-readable report to this path");
  app.add_option("--format", format, "report format on stdout")
      ->check(CLI::IsMember({"text", "machine"}));
  auto* seed_option = app.add_option("--seed", seed_value, "echoed into the report");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  splitnash::GameSpec spec;
  try {
    spec = splitnash::load_spec(spec_path);
  } catch (const splitnash::SpecError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }

  std::optional<long> seed;
  if (seed_option->count() > 0) seed = seed_value;
  const splitnash::AnalysisReport report = splitnash::run_command(spec, command, target, seed);

  if (!out_path.empty()) {
    std::ofstream out(out_path);
    if (!out) {
      std::cerr << "error: cannot write " << out_path << "\n";
      return 2;
    }
    out << report.machine.dump(2) << "\n";
  }
  if (format == "machine") {
    std::cout << report.machine.dump(2) << "\n";
  } else {
    std::cout << report.text;
  }
  return report.exit_code;
}
