#pragma once

// Shared plumbing for the randomized suites (not installed).

#include <algorithm>
#include <functional>

#include "lgt/cli.hpp"
#include "lgt/lgp.hpp"
#include "lgt/random.hpp"

namespace lgt::suites {

struct Run {
  explicit Run(const SuiteOptions& o) : opt(o), rng(o.seed) {}

  SuiteOptions opt;
  Rng rng;
  long cases = 0;
  long failures = 0;
  nlohmann::json first = nullptr;
  nlohmann::json log = nlohmann::json::array();

  int count(int dflt) const { return opt.cases > 0 ? opt.cases : dflt; }
  int cap(int n) const { return opt.max_size > 0 ? std::min(n, opt.max_size) : n; }

  // One case: body fills `ce` with whatever identifies it and returns
  // whether the property held. Library errors count as failures.
  void check(const std::function<bool(nlohmann::json& ce)>& body) {
    ++cases;
    nlohmann::json ce = nlohmann::json::object();
    bool ok = false;
    try {
      ok = body(ce);
    } catch (const Error& e) {
      ce["error"] = e.what();
    }
    if (opt.verbose) log.push_back({{"case", cases}, {"pass", ok}, {"data", ce}});
    if (ok) return;
    ++failures;
    if (first.is_null()) first = ce;
  }
};

using SuiteFn = std::function<void(Run&)>;
struct Entry {
  const char* name;
  SuiteFn fn;
};

std::vector<Entry> algebra_suites();  // rings, matform, transvect
std::vector<Entry> calculus_suites(); // commcalc, lgp, cli

inline nlohmann::json enc(const RingElem& a) { return a.ctx()->to_json(a); }

inline FormKind pick_kind(Rng& rng) {
  switch (rng.range(0, 2)) {
    case 0: return FormKind::Linear;
    case 1: return FormKind::Symplectic;
    default: return FormKind::Orthogonal;
  }
}

inline Ctx loc_powers(Ctx A, long s) { return ring_localize(A, MultSet{MultShape::Powers, A->from_int(s)}); }

}  // namespace lgt::suites
