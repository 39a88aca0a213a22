#include "suite_harness.hpp"

namespace lgt {

namespace {

std::vector<suites::Entry> registry() {
  auto all = suites::algebra_suites();
  for (auto& e : suites::calculus_suites()) all.push_back(std::move(e));
  return all;
}

}  // namespace

std::vector<std::string> suite_names() {
  std::vector<std::string> out;
  for (const auto& e : registry()) out.emplace_back(e.name);
  return out;
}

Report run_suite(const std::string& name, const SuiteOptions& opt) {
  for (const auto& e : registry()) {
    if (name != e.name) continue;
    suites::Run run(opt);
    e.fn(run);
    Report rep;
    rep.witness = {{"suite", name},
                   {"seed", opt.seed},
                   {"cases", run.cases},
                   {"failures", run.failures},
                   {"first_counterexample", run.first}};
    if (opt.verbose) rep.witness["log"] = run.log;
    rep.add(name, run.failures == 0 && run.cases > 0,
            std::to_string(run.cases - run.failures) + "/" + std::to_string(run.cases) + " cases hold");
    rep.finish();
    return rep;
  }
  throw Error(Errc::UnknownSuite, "no suite named '" + name + "'");
}

}  // namespace lgt
