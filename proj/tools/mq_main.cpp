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

// mq: command-line front end for the misère quotient solver.
//
// Exit codes: 0 success, 1 bad input, 2 budget exceeded, 3 failed appendix
// claim.

#include <algorithm>
#include <iomanip>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "mq/games.hpp"
#include "mq/monoid.hpp"
#include "mq/octal.hpp"
#include "mq/oracle.hpp"
#include "mq/quotient.hpp"
#include "mq/store.hpp"

namespace {

using namespace mq;

constexpr int kOk = 0;
constexpr int kBadInput = 1;
constexpr int kBudget = 2;
constexpr int kClaimFailed = 3;

struct BudgetFlags {
  std::optional<std::size_t> max_heap, max_quotient, closure_pairs, max_witness, max_outcomes;

  void attach(CLI::App* cmd, bool with_heap) {
    if (with_heap) cmd->add_option("--max-heap", max_heap, "Largest heap tried");
    cmd->add_option("--max-quotient", max_quotient, "Largest quotient order allowed");
    cmd->add_option("--max-closure-pairs", closure_pairs, "Transition algebra size cap");
    cmd->add_option("--max-witness", max_witness, "Largest seed witness size");
    cmd->add_option("--max-outcomes", max_outcomes, "Outcome memo cap per growth step");
  }

  Budgets resolve() const {
    Budgets b = Budgets::from_env();
    if (max_heap) b.max_heap = *max_heap;
    if (max_quotient) b.max_quotient = *max_quotient;
    if (closure_pairs) b.max_closure_pairs = *closure_pairs;
    if (max_witness) b.max_witness = *max_witness;
    if (max_outcomes) b.max_outcomes = *max_outcomes;
    return b;
  }
};

void print_phi_rows(std::ostream& out, const BipartiteMonoid& m, const std::vector<Elem>& phi,
                    std::size_t first_heap) {
  out << "values of heap n, rows of 10:\n";
  std::size_t n = first_heap;
  for (std::size_t i = 0; i < phi.size(); ++i, ++n) {
    if (i == 0 || n % 10 == 0) {
      if (i > 0) out << '\n';
      out << std::setw(5) << (n / 10) * 10 << "+ ";
      for (std::size_t pad = n % 10; pad > 0; --pad) out << "  .";
    }
    out << ' ' << std::setw(2) << m.name(phi[i]);
  }
  out << '\n';
}

void print_presentation(std::ostream& out, const BipartiteMonoid& m,
                        const std::vector<Elem>& gens) {
  Presentation pr = find_relations(m, gens);
  auto letters = default_letters(gens.size());
  out << "generators:";
  for (const auto& l : letters) out << ' ' << l;
  out << "\nrelations:";
  for (const auto& r : pr.relations) {
    out << ' ' << word_string(r.lhs, letters) << '=' << word_string(r.rhs, letters);
  }
  out << "\nP:";
  for (Elem x = 0; x < m.size(); ++x) {
    if (m.in_p(x)) out << ' ' << m.name(x);
  }
  out << '\n';
}

void emit_record(const store::SolutionRecord& rec, bool json, const std::string& out_path) {
  if (!out_path.empty()) store::save_solution(rec, out_path);
  if (json) std::cout << store::to_text(rec);
}

void print_budget(const SolveBudgetExceeded& e) {
  std::cerr << "budget exceeded: " << e.what() << '\n'
            << "last verified quotient covers " << e.generators_done()
            << " generators and has order " << e.partial_order() << '\n';
}

int cmd_solve(const std::string& code_text, const BudgetFlags& flags, bool json,
              const std::string& out_path) {
  const auto code = octal::parse_octal_code(code_text);
  const Budgets b = flags.resolve();
  QuotientSolution sol;
  try {
    sol = solve_octal(code, b);
  } catch (const SolveBudgetExceeded& e) {
    print_budget(e);
    if (json) {
      nlohmann::json j{{"source", code.str()},
                       {"status", "budget_exceeded"},
                       {"generators_done", e.generators_done()},
                       {"partial_order", e.partial_order()}};
      std::cout << j.dump(2) << '\n';
    }
    return kBudget;
  }
  store::SolutionRecord rec = store::record_from(sol);
  const CheckBound bound;
  const auto grundy = octal::grundy_sequence(
      code, std::max<std::uint32_t>(bound.max_heap, 2 * sol.heaps_computed + 64));
  rec.classification = classify(sol, code, grundy, bound);
  if (!json) {
    std::cout << "code " << sol.source << '\n'
              << "period " << sol.period << '\n'
              << "preperiod " << sol.preperiod << '\n'
              << "|Q| " << sol.monoid.size() << '\n'
              << "|P| " << sol.monoid.p_set().count() << '\n'
              << "heaps computed " << sol.heaps_computed << '\n';
    print_phi_rows(std::cout, sol.monoid, sol.phi, 0);
    print_presentation(std::cout, sol.monoid, sol.generators);
  }
  emit_record(rec, json, out_path);
  return kOk;
}

int cmd_partial(const std::string& code_text, std::uint32_t n, const BudgetFlags& flags,
                bool json, const std::string& out_path) {
  const auto code = octal::parse_octal_code(code_text);
  Pretension p;
  try {
    p = partial_quotient(code, n, flags.resolve());
  } catch (const SolveBudgetExceeded& e) {
    print_budget(e);
    return kBudget;
  }
  store::SolutionRecord rec;
  rec.source = code.str();
  rec.partial_n = n;
  rec.order = p.monoid.size();
  rec.p_order = p.monoid.p_set().count();
  rec.phi_sequence.push_back(p.monoid.identity());
  rec.phi_sequence.insert(rec.phi_sequence.end(), p.phi.begin(), p.phi.end());
  rec.generators = name_elements(p.monoid, rec.phi_sequence);
  rec.monoid = p.monoid;
  if (!json) {
    std::cout << "code " << rec.source << '\n'
              << "heaps 1.." << n << '\n'
              << "|Q| " << p.monoid.size() << '\n'
              << "|P| " << *rec.p_order << '\n';
    print_phi_rows(std::cout, p.monoid, rec.phi_sequence, 0);
  }
  emit_record(rec, json, out_path);
  return kOk;
}

std::vector<std::string> split_plus(const std::string& text) {
  std::vector<std::string> out;
  std::stringstream ss(text);
  for (std::string item; std::getline(ss, item, '+');) {
    const auto a = item.find_first_not_of(" \t");
    const auto b = item.find_last_not_of(" \t");
    if (a == std::string::npos) throw ParseError("empty summand", 0);
    out.push_back(item.substr(a, b - a + 1));
  }
  if (out.empty()) throw ParseError("empty position", 0);
  return out;
}

int cmd_outcome(const std::string& spec, bool normal, bool json) {
  Outcome o;
  if (spec.rfind("game", 0) == 0) {
    std::vector<games::GameId> parts;
    for (const auto& s : split_plus(spec.substr(4))) parts.push_back(games::parse_star_notation(s));
    o = normal ? games::normal_outcome(parts) : games::misere_outcome(parts);
  } else {
    const auto colon = spec.find(':');
    if (colon == std::string::npos) throw ParseError("expected CODE:h1+h2+... or game ...", 0);
    const auto code = octal::parse_octal_code(spec.substr(0, colon));
    std::vector<std::uint32_t> heaps;
    for (const auto& s : split_plus(spec.substr(colon + 1))) {
      std::size_t used = 0;
      unsigned long h = 0;
      try {
        h = std::stoul(s, &used);
      } catch (const std::exception&) {
        used = 0;
      }
      if (used != s.size() || s.empty()) throw ParseError("bad heap size '" + s + "'", colon + 1);
      if (h > 0) heaps.push_back(static_cast<std::uint32_t>(h));
    }
    const std::uint32_t top = heaps.empty() ? 0 : *std::max_element(heaps.begin(), heaps.end());
    if (normal) {
      const auto g = octal::grundy_sequence(code, top);
      std::uint32_t x = 0;
      for (auto h : heaps) x ^= g[h - 1];
      o = x == 0 ? Outcome::P : Outcome::N;
    } else {
      const GeneratorSystem sys = octal::heap_system(code, top);
      std::vector<std::uint32_t> parts;
      for (auto h : heaps) parts.push_back(h - 1);
      o = oracle::brute_misere_outcome(sys, Position(parts));
    }
  }
  if (json) {
    nlohmann::json j{{"outcome", std::string(1, to_char(o))},
                     {"play", normal ? "normal" : "misere"}};
    std::cout << j.dump(2) << '\n';
  } else {
    std::cout << to_char(o) << '\n';
  }
  return kOk;
}

int cmd_quotient(const std::vector<std::string>& notations, const BudgetFlags& flags,
                 bool json, const std::string& out_path) {
  std::vector<games::GameId> roots;
  for (const auto& s : notations) roots.push_back(games::parse_star_notation(s));
  const games::TreeSystem ts = games::closure_system(roots);
  Pretension p;
  try {
    p = solve_closed_system(ts.system, flags.resolve());
  } catch (const SolveBudgetExceeded& e) {
    print_budget(e);
    return kBudget;
  }
  store::SolutionRecord rec;
  for (std::size_t i = 0; i < notations.size(); ++i) {
    rec.source += (i ? " + " : "") + notations[i];
  }
  std::vector<Elem> images;
  for (auto r : roots) {
    auto it = std::find(ts.games.begin(), ts.games.end(), r);
    images.push_back(it == ts.games.end() ? p.monoid.identity()
                                          : p.phi[static_cast<std::size_t>(it - ts.games.begin())]);
  }
  rec.generators = name_elements(p.monoid, p.phi);
  rec.order = p.monoid.size();
  rec.p_order = p.monoid.p_set().count();
  rec.phi_sequence = p.phi;
  rec.monoid = p.monoid;
  if (!json) {
    const auto ti = tame_index(p.monoid);
    std::cout << "|Q| " << p.monoid.size() << '\n'
              << "|P| " << *rec.p_order << '\n'
              << "tame index " << (ti ? std::to_string(*ti) : "none (wild)") << '\n';
    for (std::size_t g = 0; g < ts.games.size(); ++g) {
      std::cout << "  " << games::print_star_notation(ts.games[g]) << " -> "
                << p.monoid.name(p.phi[g]) << '\n';
    }
    for (std::size_t i = 0; i < roots.size(); ++i) {
      std::cout << notations[i] << " maps to " << p.monoid.name(images[i]) << '\n';
    }
    print_presentation(std::cout, p.monoid, rec.generators);
  }
  emit_record(rec, json, out_path);
  return kOk;
}

int cmd_classify(const std::string& path, bool json) {
  std::vector<std::string> warnings;
  store::SolutionRecord rec = store::load_solution(path, &warnings);
  for (const auto& w : warnings) std::cerr << "warning: " << w << '\n';
  if (!rec.monoid) throw std::invalid_argument("record carries no monoid");
  const BipartiteMonoid& m = *rec.monoid;
  std::optional<Classification> c;
  if (rec.period && rec.preperiod && !rec.partial_n) {
    const auto code = octal::parse_octal_code(rec.source);
    QuotientSolution sol;
    sol.source = rec.source;
    sol.period = *rec.period;
    sol.preperiod = *rec.preperiod;
    sol.monoid = m;
    sol.phi = rec.phi_sequence;
    sol.generators = rec.generators;
    const CheckBound bound;
    const auto grundy = octal::grundy_sequence(
        code, std::max<std::uint32_t>(bound.max_heap,
                                      2 * static_cast<std::uint32_t>(sol.phi.size()) + 64));
    c = classify(sol, code, grundy, bound);
    rec.classification = c;
  }
  if (json) {
    std::cout << store::to_text(rec);
    return kOk;
  }
  const auto ti = tame_index(m);
  const Kernel k = kernel(m);
  std::cout << "source " << rec.source << '\n'
            << "|Q| " << m.size() << '\n'
            << "tame index " << (ti ? std::to_string(*ti) : "none (wild)") << '\n'
            << "regular " << (is_regular(m) ? "yes" : "no") << '\n'
            << "normal " << (is_normal(m) ? "yes" : "no") << '\n'
            << "kernel order " << k.elements.count() << '\n'
            << "kernel identity " << m.name(k.z) << '\n';
  if (c) {
    std::cout << "faithful " << (c->faithful ? "yes" : "no") << " (checked to "
              << c->faithful_checked_to.max_parts << " heaps of size <= "
              << c->faithful_checked_to.max_heap << ", " << c->positions_checked
              << " positions)\n"
              << "kernel correspondence " << (c->correspondence ? "holds" : "fails") << '\n';
    if (c->normal_periodicity) {
      std::cout << "normal period " << c->normal_periodicity->period << " preperiod "
                << c->normal_periodicity->preperiod << ", divides misere period: "
                << (c->normal_period_divides ? "yes" : "no") << '\n';
    }
    for (const auto& n : c->notes) std::cout << "note: " << n << '\n';
  }
  return kOk;
}

int cmd_verify_appendix(const oracle::CoinRanges& r, bool json) {
  const auto rep = oracle::verify_coinslide_claims(r);
  if (json) {
    nlohmann::json j = nlohmann::json::array();
    for (const auto& c : rep.checks) {
      j.push_back({{"claim", c.name},
                   {"passed", c.passed},
                   {"cases", c.cases},
                   {"counterexample", c.counterexample}});
    }
    std::cout << j.dump(2) << '\n';
  } else {
    for (const auto& c : rep.checks) {
      std::cout << (c.passed ? "PASS " : "FAIL ") << std::left << std::setw(48) << c.name
                << std::right << std::setw(8) << c.cases << " cases";
      if (!c.passed) std::cout << "  counterexample " << c.counterexample;
      std::cout << '\n';
    }
  }
  return rep.all_passed() ? kOk : kClaimFailed;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Misère quotients of impartial games"};
  app.require_subcommand(1);
  unsigned threads = 0;
  app.add_option("--threads", threads, "Cap on worker threads (the solver runs on one)");

  bool json = false;
  std::string out_path;

  std::string code;
  BudgetFlags solve_flags;
  auto* solve = app.add_subcommand("solve", "Solve an octal game");
  solve->add_option("code", code, "Octal code, e.g. 0.75")->required();
  solve_flags.attach(solve, true);
  solve->add_option("--out", out_path, "Write a .mqsol record");
  solve->add_flag("--json", json, "Print the record instead of text");

  std::uint32_t n = 0;
  BudgetFlags partial_flags;
  auto* partial = app.add_subcommand("partial-quotient", "Quotient of heaps 1..n");
  partial->add_option("code", code, "Octal code")->required();
  partial->add_option("n", n, "Largest heap")->required()->check(CLI::PositiveNumber);
  partial_flags.attach(partial, false);
  partial->add_option("--out", out_path, "Write a .mqsol record");
  partial->add_flag("--json", json, "Print the record instead of text");

  std::string spec;
  bool normal = false;
  auto* outcome = app.add_subcommand("outcome", "Outcome of a position");
  outcome->add_option("spec", spec, "CODE:h1+h2+... or \"game NOTATION [+ NOTATION...]\"")
      ->required();
  outcome->add_flag("--normal", normal, "Normal play instead of misère");
  outcome->add_flag("--json", json, "Machine-readable output");

  std::vector<std::string> notations;
  BudgetFlags quotient_flags;
  auto* quotient = app.add_subcommand("quotient", "Quotient of the closure of some games");
  quotient->add_option("games", notations, "Games in star notation")->required();
  quotient_flags.attach(quotient, false);
  quotient->add_option("--out", out_path, "Write a .mqsol record");
  quotient->add_flag("--json", json, "Print the record instead of text");

  std::string file;
  auto* cls = app.add_subcommand("classify", "Structure report for a saved solution");
  cls->add_option("file", file, ".mqsol file")->required()->check(CLI::ExistingFile);
  cls->add_flag("--json", json, "Print the record with its classification");

  oracle::CoinRanges ranges;
  auto* appendix = app.add_subcommand("verify-appendix", "Coin-sliding outcome claims");
  appendix->add_option("--i", ranges.i, "Coins on A")->capture_default_str();
  appendix->add_option("--j", ranges.j, "Coins on B")->capture_default_str();
  appendix->add_option("--k", ranges.k, "Coins on C")->capture_default_str();
  appendix->add_option("--l", ranges.l, "Coins on D")->capture_default_str();
  appendix->add_option("--m", ranges.m, "Coins on E")->capture_default_str();
  appendix->add_flag("--json", json, "Machine-readable output");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kBadInput;
  }

  try {
    if (*solve) return cmd_solve(code, solve_flags, json, out_path);
    if (*partial) return cmd_partial(code, n, partial_flags, json, out_path);
    if (*outcome) return cmd_outcome(spec, normal, json);
    if (*quotient) return cmd_quotient(notations, quotient_flags, json, out_path);
    if (*cls) return cmd_classify(file, json);
    if (*appendix) return cmd_verify_appendix(ranges, json);
  } catch (const SolveBudgetExceeded& e) {
    print_budget(e);
    return kBudget;
  } catch (const BudgetExceeded& e) {
    std::cerr << "budget exceeded: " << e.what() << '\n';
    return kBudget;
  } catch (const ParseError& e) {
    std::cerr << "parse error: " << e.what() << '\n';
    return kBadInput;
  } catch (const store::SchemaError& e) {
    std::cerr << "bad solution file: " << e.what() << '\n';
    return kBadInput;
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kBadInput;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kBadInput;
  }
  return kBadInput;
}
