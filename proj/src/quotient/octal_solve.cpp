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

#include <map>
#include <stdexcept>

#include "mq/quotient.hpp"

namespace mq {

std::vector<Elem> name_elements(BipartiteMonoid& m, const std::vector<Elem>& phi) {
  std::vector<Elem> gens;
  ElementSet sub = generated(m, gens);
  auto consider = [&](Elem x) {
    if (sub.test(x)) return;
    gens.push_back(x);
    sub = generated(m, gens);
  };
  for (Elem x : phi) consider(x);
  for (Elem x = 0; x < m.size(); ++x) consider(x);
  Presentation pr = find_relations(m, gens);
  auto letters = default_letters(gens.size());
  std::vector<std::string> names;
  names.reserve(m.size());
  for (Elem x = 0; x < m.size(); ++x) names.push_back(word_string(pr.normal_form[x], letters));
  m.set_names(std::move(names));
  return gens;
}

namespace {

std::vector<Position> heap_option_positions(const octal::OctalCode& code, std::uint32_t n) {
  std::vector<Position> opts;
  for (const auto& hp : octal::heap_options(code, n)) {
    std::vector<std::uint32_t> parts;
    for (auto h : hp) parts.push_back(h - 1);
    opts.emplace_back(std::move(parts));
  }
  return opts;
}

}  // namespace

QuotientSolution solve_octal(const octal::OctalCode& code, const Budgets& budgets) {
  QuotientSolver solver(budgets);
  const std::size_t d = code.last_nonzero_index();
  std::vector<Elem> seq;
  for (std::uint32_t n = 1; n <= budgets.max_heap; ++n) {
    solver.add_generator(std::to_string(n), heap_option_positions(code, n));
    seq.assign(1, solver.monoid().identity());
    seq.insert(seq.end(), solver.phi().begin(), solver.phi().end());
    if (auto per = octal::find_periodicity(seq, d)) {
      QuotientSolution sol;
      sol.source = code.str();
      sol.preperiod = per->preperiod;
      sol.period = per->period;
      sol.monoid = solver.monoid();
      sol.phi = seq;
      sol.heaps_computed = n;
      sol.generators = name_elements(sol.monoid, sol.phi);
      return sol;
    }
  }
  throw SolveBudgetExceeded("no period certified up to heap " +
                                std::to_string(budgets.max_heap),
                            solver.system().size(), solver.monoid().size());
}

Pretension partial_quotient(const octal::OctalCode& code, std::uint32_t n,
                            const Budgets& budgets) {
  QuotientSolver solver(budgets);
  for (std::uint32_t h = 1; h <= n; ++h) {
    solver.add_generator(std::to_string(h), heap_option_positions(code, h));
  }
  Pretension p = solver.pretension();
  std::vector<Elem> seq{p.monoid.identity()};
  seq.insert(seq.end(), p.phi.begin(), p.phi.end());
  name_elements(p.monoid, seq);
  return p;
}

Classification classify(const QuotientSolution& sol, const octal::OctalCode& code,
                        const std::vector<std::uint32_t>& grundy, CheckBound bound) {
  const BipartiteMonoid& m = sol.monoid;
  Classification c;
  c.tame_index = tame_index(m);
  c.regular = is_regular(m);
  c.normal = is_normal(m);
  Kernel k = kernel(m);
  c.kernel_order = k.elements.count();
  c.p_order = m.p_set().count();
  if (grundy.size() < bound.max_heap) {
    throw std::invalid_argument("classify: Grundy values do not cover the check bound");
  }
  auto phi_heap = [&](std::uint32_t n) -> Elem {
    if (n < sol.phi.size()) return sol.phi[n];
    if (sol.period == 0) throw std::invalid_argument("classify: heap beyond solution");
    std::uint32_t r = sol.preperiod + (n - sol.preperiod) % sol.period;
    return sol.phi.at(r);
  };
  std::map<Elem, std::uint32_t> value_of;     // Phi -> Grundy
  std::map<Elem, std::uint32_t> kvalue_of;    // z Phi -> Grundy
  std::map<std::uint32_t, Elem> kelem_of;     // Grundy -> z Phi
  bool faithful = true;
  bool correspondence = true;
  for_each_heap_position(bound, [&](const std::vector<std::uint32_t>& parts) {
    Elem x = m.identity();
    std::uint32_t gv = 0;
    for (auto h : parts) {
      x = m.mul(x, phi_heap(h));
      gv ^= grundy[h - 1];
    }
    ++c.positions_checked;
    auto [it, fresh] = value_of.emplace(x, gv);
    if (!fresh && it->second != gv) faithful = false;
    Elem zx = m.mul(k.z, x);
    auto [kt, kfresh] = kvalue_of.emplace(zx, gv);
    if (!kfresh && kt->second != gv) correspondence = false;
    auto [gt, gfresh] = kelem_of.emplace(gv, zx);
    if (!gfresh && gt->second != zx) correspondence = false;
  });
  c.faithful = faithful;
  c.faithful_checked_to = bound;
  c.correspondence = correspondence;
  if (!faithful) c.notes.push_back("unfaithful: equal images with different Grundy values");
  if (!c.regular) c.notes.push_back("irregular: kernel correspondence not expected");
  c.normal_periodicity = octal::normal_periodicity(code, grundy);
  if (c.normal_periodicity && sol.period > 0) {
    c.normal_period_divides = sol.period % c.normal_periodicity->period == 0;
  } else if (!c.normal_periodicity) {
    c.notes.push_back("normal period not certified from the supplied Grundy values");
  }
  return c;
}

}  // namespace mq
