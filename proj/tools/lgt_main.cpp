// lgt: run a JSON scenario or a randomized property suite, print the report.

#include <iostream>

#include "CLI11.hpp"
#include "lgt/cli.hpp"
#include "lgt/error.hpp"

namespace {

int emit(const lgt::Report& rep) {
  std::cout << rep.to_json().dump(2) << "\n";
  return rep.exit_code();
}

int run_named_suite(const std::string& name, const lgt::SuiteOptions& opt) {
  try {
    return emit(lgt::run_suite(name, opt));
  } catch (const lgt::Error& e) {
    lgt::Report rep;
    rep.status = "invalid";
    rep.witness = {{"error", std::string(lgt::errc_name(e.code()))}, {"message", e.what()}};
    if (e.code() == lgt::Errc::UnknownSuite) rep.witness["known"] = lgt::suite_names();
    return emit(rep);
  }
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Exact elementary-group and local-global toolkit"};
  app.require_subcommand(0, 1);

  std::string scenario, suite;
  lgt::SuiteOptions opt;
  bool list = false;

  // Flat form: lgt --scenario f.json | lgt --suite NAME --seed N
  app.add_option("--scenario", scenario, "Scenario JSON file");
  app.add_option("--suite", suite, "Property suite name");
  app.add_option("--seed", opt.seed, "Random seed");
  app.add_option("--max-size", opt.max_size, "Cap on matrix size / word length");
  app.add_option("--cases", opt.cases, "Number of random cases (0: suite default)");
  app.add_flag("--verbose", opt.verbose, "Include per-case log in the report");
  app.add_flag("--list", list, "List the property suites");

  auto* run = app.add_subcommand("run", "Run a scenario file");
  run->add_option("--scenario", scenario, "Scenario JSON file")->required();

  auto* st = app.add_subcommand("suite", "Run a randomized property suite");
  st->add_option("--name,name", suite, "Suite name")->required();
  st->add_option("--seed", opt.seed, "Random seed");
  st->add_option("--max-size", opt.max_size, "Cap on matrix size / word length");
  st->add_option("--cases", opt.cases, "Number of random cases (0: suite default)");
  st->add_flag("--verbose", opt.verbose, "Include per-case log in the report");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? 0 : 2;
  }

  if (list) {
    for (const auto& n : lgt::suite_names()) std::cout << n << "\n";
    return 0;
  }
  if (!scenario.empty() && !suite.empty()) {
    std::cerr << "give either a scenario or a suite, not both\n";
    return 2;
  }
  if (!scenario.empty()) return emit(lgt::run_scenario_file(scenario));
  if (!suite.empty()) return run_named_suite(suite, opt);
  std::cerr << app.help();
  return 2;
}
