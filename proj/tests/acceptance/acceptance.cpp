// Copyright 2026 The mqsolve Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

// Acceptance report: one PASS/FAIL line per criterion. `--stretch` adds the
// slow optional runs; `--only N` runs a single criterion and
// `--stretch-case K` only the K-th optional run.

#include <chrono>
#include <cstdio>
#include <cstdlib>
#include <cstring>
#include <functional>
#include <map>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "mq/games.hpp"
#include "mq/monoid.hpp"
#include "mq/octal.hpp"
#include "mq/oracle.hpp"
#include "mq/quotient.hpp"
#include "mq/store.hpp"

using namespace mq;

namespace {

// Wall-clock limits in seconds, per criterion.
constexpr double kLimit[] = {0, 10, 120, 60, 30, 5, 600, 600, 600, 300, 1800};
constexpr std::size_t kClosureBudget = 20'000'000;
constexpr CheckBound kOracleBound{5, 12};

struct Outcome_ {
  bool pass = true;
  std::string detail;
  void fail(const std::string& why) {
    if (pass) detail = why;
    pass = false;
  }
};

struct Expected {
  const char* code;
  std::uint32_t period, preperiod;
  std::size_t order;
  bool r8;
};
const Expected kRegression[] = {
    {"0.34", 8, 7, 12, false},   {"0.123", 5, 5, 20, false}, {"4.56", 4, 11, 8, true},
    {"0.3131", 2, 7, 12, false}, {"0.3101", 2, 5, 14, false}, {"0.1231", 5, 5, 20, false},
};

// Solutions shared between criteria, computed once.
std::map<std::string, QuotientSolution>& solutions() {
  static std::map<std::string, QuotientSolution> s;
  return s;
}
const QuotientSolution& solved(const std::string& code) {
  auto& s = solutions();
  auto it = s.find(code);
  if (it == s.end()) it = s.emplace(code, solve_octal(octal::parse_octal_code(code), {})).first;
  return it->second;
}
std::vector<std::string> solved_codes() {
  std::vector<std::string> v{"0.75", "0.15"};
  for (const auto& e : kRegression) v.push_back(e.code);
  return v;
}

std::string numbers(const QuotientSolution& s) {
  std::ostringstream os;
  os << "(" << s.period << ", " << s.preperiod << ", " << s.monoid.size() << ")";
  return os.str();
}

Pretension tree_quotient(const std::string& notation, const Budgets& b = {}) {
  const auto g = games::parse_star_notation(notation);
  return solve_closed_system(games::closure_system(std::vector<games::GameId>{g}).system, b);
}

std::string star_power(unsigned k) {
  // *2^k as notation; heaps above 9 have no digit.
  const auto g = games::nim_heap(1u << k);
  return games::print_star_notation(g);
}

// ---------------------------------------------------------------------------

Outcome_ criterion1() {
  Outcome_ r;
  const QuotientSolution& s = solved("0.75");
  if (s.period != 2 || s.preperiod != 8 || s.monoid.size() != 8) r.fail("got " + numbers(s));
  auto iso = is_isomorphic(s.monoid, make_r8());
  if (!iso) r.fail("not isomorphic to R_8");
  if (r.pass) r.detail = "(2, 8, 8), isomorphic to R_8";
  return r;
}

Outcome_ criterion2() {
  Outcome_ r;
  const QuotientSolution& s = solved("0.15");
  if (s.period != 10 || s.preperiod != 66 || s.monoid.size() != 42 ||
      s.monoid.p_set().count() != 12) {
    r.fail("got " + numbers(s) + " |P| " + std::to_string(s.monoid.p_set().count()));
  }
  // Letters of the published prefix must match Φ(1..15) under one injective relabelling.
  const char* prefix[] = {"a", "a", "1", "a", "a", "b", "b", "a", "b", "b", "a", "a", "1", "c", "c"};
  std::map<std::string, Elem> to;
  std::map<Elem, std::string> from;
  for (std::size_t n = 1; n <= 15; ++n) {
    const std::string w = prefix[n - 1];
    const Elem x = s.phi.at(n);
    auto [it, fresh] = to.emplace(w, x);
    auto [jt, jfresh] = from.emplace(x, w);
    if (it->second != x || jt->second != w) r.fail("prefix differs at heap " + std::to_string(n));
  }
  if (to["1"] != s.monoid.identity()) r.fail("'1' is not the identity");
  std::vector<Elem> from1(s.phi.begin() + 1, s.phi.end());
  const auto rep = store::check_presentation(s.monoid, s.generators, from1, store::guiles_fixture());
  if (!rep.match) r.fail("presentation: " + rep.differences.front());
  if (r.pass) r.detail = "(10, 66, 42), |P| 12, prefix and presentation match";
  return r;
}

Outcome_ criterion3() {
  Outcome_ r;
  for (const auto& e : kRegression) {
    const auto t0 = std::chrono::steady_clock::now();
    const QuotientSolution& s = solved(e.code);
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    if (s.period != e.period || s.preperiod != e.preperiod || s.monoid.size() != e.order) {
      r.fail(std::string(e.code) + " got " + numbers(s));
    }
    if (e.r8 && !is_isomorphic(s.monoid, make_r8())) r.fail(std::string(e.code) + " not R_8");
    if (secs > 60) r.fail(std::string(e.code) + " took " + std::to_string(secs) + " s");
  }
  if (r.pass) r.detail = "6 codes exact";
  return r;
}

Outcome_ criterion4() {
  Outcome_ r;
  for (unsigned n = 1; n <= 4; ++n) {
    const std::string g = star_power(n - 1);
    const Pretension p = tree_quotient(g);
    if (!is_isomorphic(p.monoid, make_tame(n))) r.fail("cl(" + g + ") is not T_" + std::to_string(n));
  }
  for (unsigned n = 2; n <= 8; ++n) {
    const BipartiteMonoid t = make_tame(n);
    if (t.size() != (std::size_t{1} << n) + 2) r.fail("|T_" + std::to_string(n) + "|");
    const Kernel k = kernel(t);
    if (k.elements.count() != (std::size_t{1} << n)) r.fail("kernel of T_" + std::to_string(n));
    k.elements.for_each([&](std::size_t x) {
      if (t.mul(static_cast<Elem>(x), static_cast<Elem>(x)) != k.z) r.fail("kernel square");
    });
  }
  if (r.pass) r.detail = "T_1..T_4 from trees; T_2..T_8 orders and kernels";
  return r;
}

Outcome_ criterion5() {
  Outcome_ r;
  QuotientSolver solver;
  solver.add_generator("*", {Position{}});
  solver.add_generator("*2", {Position{}, Position::single(0)});
  BipartiteMonoid m = solver.monoid();
  name_elements(m, solver.phi());
  auto elem = [&](const std::string& name) {
    for (Elem x = 0; x < m.size(); ++x) {
      if (m.name(x) == name) return x;
    }
    throw std::runtime_error("no element " + name);
  };
  auto names = [&](const ElementSet& s) {
    std::set<std::string> out;
    s.for_each([&](std::size_t x) { out.insert(m.name(static_cast<Elem>(x))); });
    return out;
  };
  using Sets = std::set<std::set<std::string>>;
  const std::vector<std::tuple<std::string, std::set<std::string>, Sets>> panels{
      {"1", {"a", "b", "ab"}, {{"a"}}},
      {"b", {"1", "a", "ab", "b2", "ab2"}, {{"1", "a"}, {"b2", "ab2"}}},
      {"b2", {"b", "ab", "ab2"}, {{"b"}, {"ab"}, {"ab2"}}},
      {"a", {"1", "b", "ab"}, {{"1"}}},
      {"ab", {"1", "a", "b", "b2", "ab2"}, {{"1", "a", "b"}, {"b", "b2", "ab2"}}},
      {"ab2", {"b", "ab", "b2"}, {{"b2"}}},
  };
  for (const auto& [x, max, anti] : panels) {
    const MexPreimage pre = mex_preimage_structure(solver.algebra(), m, elem(x));
    if (names(pre.max) != max) r.fail("meximal set of " + x);
    Sets got;
    for (const auto& e : pre.antichain) got.insert(names(e));
    if (got != anti) r.fail("antichain of " + x);
  }
  if (r.pass) r.detail = "6 meximal sets, 6 antichains";
  return r;
}

// Structural checks on one verified pretension.
void structure(const std::string& label, const Pretension& p, const GeneratorSystem& sys,
               Outcome_& r, std::size_t& pairs) {
  const BipartiteMonoid& m = p.monoid;
  if (m.size() > 1) {
    if (m.size() % 2) r.fail(label + ": odd order");
    if (m.size() == 4) r.fail(label + ": order 4");
    bool has_a = false;
    for (Elem x = 0; x < m.size(); ++x) {
      if (x != m.identity() && m.mul(x, x) == m.identity()) has_a = true;
    }
    if (!has_a) r.fail(label + ": no a with a^2 = 1");
  }
  for (Elem x = 0; x < m.size(); ++x) {
    if (m.p_quotient(x).empty()) r.fail(label + ": no y with xy in P");
  }
  const Kernel k = kernel(m);
  if (!k.elements.intersects(m.p_set())) r.fail(label + ": K misses P");
  const TransitionAlgebra t = transition_closure(p, sys, kClosureBudget);
  pairs += t.size();
  for (const auto& tp : t.pairs()) {
    if (tp.e.test(tp.x)) r.fail(label + ": x in E");
    if (!tp.e.subset_of(meximal_set(m, tp.x))) r.fail(label + ": E outside M_x");
  }
}

Outcome_ criterion6() {
  Outcome_ r;
  std::size_t pairs = 0, count = 0;
  for (const auto& code : solved_codes()) {
    const QuotientSolution& s = solved(code);
    const GeneratorSystem sys =
        octal::heap_system(octal::parse_octal_code(code), static_cast<std::uint32_t>(s.heaps_computed));
    const Pretension p{s.monoid, std::vector<Elem>(s.phi.begin() + 1, s.phi.begin() + 1 + sys.size())};
    structure(code, p, sys, r, pairs);
    ++count;
  }
  for (unsigned n = 1; n <= 4; ++n) {
    const auto g = games::parse_star_notation(star_power(n - 1));
    const auto ts = games::closure_system(std::vector<games::GameId>{g});
    structure("T_" + std::to_string(n), solve_closed_system(ts.system, {}), ts.system, r, pairs);
    ++count;
  }
  if (r.pass) r.detail = std::to_string(count) + " quotients, " + std::to_string(pairs) + " transition pairs";
  return r;
}

Outcome_ criterion7() {
  Outcome_ r;
  std::size_t checked = 0;
  for (const auto& code : solved_codes()) {
    const QuotientSolution& s = solved(code);
    const GeneratorSystem sys = octal::heap_system(octal::parse_octal_code(code), kOracleBound.max_heap);
    oracle::OutcomeOracle o(sys);
    for (const auto& pos : oracle::positions_up_to(sys.size(), kOracleBound.max_parts)) {
      Elem x = s.monoid.identity();
      for (auto g : pos.parts()) x = s.monoid.mul(x, s.phi.at(g + 1));
      if (s.monoid.in_p(x) != (o.outcome(pos) == Outcome::P)) {
        r.fail(code + ": mismatch");
        break;
      }
      ++checked;
    }
  }
  if (r.pass) r.detail = std::to_string(checked) + " positions, zero mismatches";
  return r;
}

Outcome_ criterion8() {
  Outcome_ r;
  auto codes = solved_codes();
  codes.push_back("0.71");
  std::size_t regular = 0;
  for (const auto& code : codes) {
    const octal::OctalCode c = octal::parse_octal_code(code);
    const QuotientSolution& s = solved(code);
    const Classification k = classify(s, c, octal::grundy_sequence(c, 2000), kOracleBound);
    if (!k.faithful) r.fail(code + ": unfaithful");
    if (k.faithful_checked_to.max_parts < kOracleBound.max_parts ||
        k.faithful_checked_to.max_heap < kOracleBound.max_heap) {
      r.fail(code + ": bound too small");
    }
    if (k.regular) {
      ++regular;
      if (!k.correspondence) r.fail(code + ": kernel correspondence fails");
    }
    if (!k.normal_periodicity) r.fail(code + ": normal period not found");
    else if (!k.normal_period_divides) r.fail(code + ": normal period does not divide");
  }
  const QuotientSolution& s71 = solved("0.71");
  if (s71.period != 6) r.fail("0.71 misère period " + std::to_string(s71.period));
  if (r.pass) {
    r.detail = std::to_string(codes.size()) + " codes faithful to 5 heaps of size 12; " +
               std::to_string(regular) + " regular; 0.71 2 | 6";
  }
  return r;
}

Outcome_ criterion9() {
  Outcome_ r;
  const oracle::CoinSlideReport rep = oracle::verify_coinslide_claims();
  std::size_t cases = 0;
  for (const auto& c : rep.checks) {
    cases += c.cases;
    if (!c.passed) r.fail(c.name + ": " + c.counterexample);
  }
  if (r.pass) r.detail = std::to_string(rep.checks.size()) + " claims, " + std::to_string(cases) + " cases";
  return r;
}

Outcome_ criterion10() {
  Outcome_ r;
  const Pretension a = partial_quotient(octal::parse_octal_code("0.36"), 20, {});
  const Pretension b = partial_quotient(octal::parse_octal_code("0.37"), 15, {});
  if (a.monoid.size() != 304) r.fail("Q_20(0.36) order " + std::to_string(a.monoid.size()));
  if (b.monoid.size() != 304) r.fail("Q_15(0.37) order " + std::to_string(b.monoid.size()));
  if (r.pass && !is_isomorphic(a.monoid, b.monoid)) r.fail("not isomorphic");
  if (r.pass) r.detail = "both 304, isomorphic";
  return r;
}

// ---------------------------------------------------------------------------

// case 0 runs all four. Returns the number of failures.
int stretch(int which) {
  int index = 0, failures = 0;
  auto timed = [&](const char* name, const std::function<std::string()>& f) {
    if (++index != which && which != 0) return;
    const auto t0 = std::chrono::steady_clock::now();
    std::string what;
    try {
      what = f();
    } catch (const std::exception& e) {
      what = std::string("FAIL ") + e.what();
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    if (what.rfind("PASS", 0) != 0) ++failures;
    std::printf("stretch  %-34s %s [%.1f s]\n", name, what.c_str(), secs);
    std::fflush(stdout);
  };
  // Raise further through the MQ_BUDGET_* variables on larger machines.
  Budgets big;
  big.max_quotient = 20000;
  big.max_outcomes = 30'000'000;
  big = Budgets::from_env(big);
  timed("solve 0.644", [&] {
    Budgets b = big;
    b.max_heap = 8000;
    const QuotientSolution s = solve_octal(octal::parse_octal_code("0.644"), b);
    const bool ok = s.period == 442 && s.preperiod == 3255 && s.monoid.size() == 172;
    return std::string(ok ? "PASS " : "FAIL ") + numbers(s);
  });
  auto periods = [](const BipartiteMonoid& m) {
    std::size_t best = 0;
    for (Elem x = 0; x < m.size(); ++x) best = std::max(best, element_period(m, x).period);
    return best;
  };
  timed("*(2#1)(2#0)4310", [&] {
    const Pretension p = tree_quotient("*(2#1)(2#0)4310", big);
    bool period4 = false;
    for (Elem x = 0; x < p.monoid.size(); ++x) period4 |= element_period(p.monoid, x).period == 4;
    const bool ok = p.monoid.size() == 120 && period4;
    return std::string(ok ? "PASS" : "FAIL") + " order " + std::to_string(p.monoid.size()) +
           " max element period " + std::to_string(periods(p.monoid));
  });
  timed("*(2#210)(2#30)3#21", [&] {
    const Pretension p = tree_quotient("*(2#210)(2#30)3#21", big);
    bool period6 = false;
    for (Elem x = 0; x < p.monoid.size(); ++x) period6 |= element_period(p.monoid, x).period == 6;
    const bool ok = p.monoid.size() == 200 && period6;
    return std::string(ok ? "PASS" : "FAIL") + " order " + std::to_string(p.monoid.size()) +
           " max element period " + std::to_string(periods(p.monoid));
  });
  timed("partial-quotient 0.07 33", [&] {
    const Pretension p = partial_quotient(octal::parse_octal_code("0.07"), 33, big);
    const bool ok = p.monoid.size() == 638 && p.monoid.p_set().count() == 109;
    return std::string(ok ? "PASS" : "FAIL") + " order " + std::to_string(p.monoid.size()) +
           " |P| " + std::to_string(p.monoid.p_set().count());
  });
  return failures;
}

}  // namespace

int main(int argc, char** argv) {
  bool run_stretch = false;
  int only = 0, stretch_case = 0;
  for (int i = 1; i < argc; ++i) {
    if (std::strcmp(argv[i], "--stretch") == 0) run_stretch = true;
    else if (std::strcmp(argv[i], "--only") == 0 && i + 1 < argc) only = std::atoi(argv[++i]);
    else if (std::strcmp(argv[i], "--stretch-case") == 0 && i + 1 < argc) {
      run_stretch = true;
      only = -1;
      stretch_case = std::atoi(argv[++i]);
    }
    else {
      std::fprintf(stderr, "usage: acceptance [--only N] [--stretch] [--stretch-case 1-4]\n");
      return 1;
    }
  }
  const std::vector<std::pair<const char*, Outcome_ (*)()>> criteria{
      {"solve 0.75 matches R_8 row", criterion1},
      {"solve 0.15 (Guiles)", criterion2},
      {"regression set", criterion3},
      {"tame tower", criterion4},
      {"mex structure of T(*2)", criterion5},
      {"structure theorems", criterion6},
      {"oracle equivalence", criterion7},
      {"kernel and normal play", criterion8},
      {"coin-sliding claims", criterion9},
      {"Q_20(0.36) vs Q_15(0.37)", criterion10},
  };
  int failed = 0;
  for (std::size_t i = 0; i < criteria.size(); ++i) {
    const int id = static_cast<int>(i + 1);
    if (only && id != only) continue;
    const auto t0 = std::chrono::steady_clock::now();
    Outcome_ r;
    try {
      r = criteria[i].second();
    } catch (const std::exception& e) {
      r.fail(std::string("exception: ") + e.what());
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    if (secs > kLimit[id]) r.fail("over time limit");
    if (!r.pass) ++failed;
    std::printf("%s %2d  %-28s %s [%.1f s, limit %.0f s]\n", r.pass ? "PASS" : "FAIL", id,
                criteria[i].first, r.detail.c_str(), secs, kLimit[id]);
    std::fflush(stdout);
  }
  if (run_stretch) failed += stretch(stretch_case);
  return failed == 0 ? 0 : 1;
}
