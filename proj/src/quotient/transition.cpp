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

#include <algorithm>
#include <cstdlib>
#include <stdexcept>
#include <string>

#include "mq/quotient.hpp"

namespace mq {

namespace {

std::size_t env_or(const char* name, std::size_t fallback) {
  const char* v = std::getenv(name);
  if (v == nullptr || *v == '\0') return fallback;
  try {
    return static_cast<std::size_t>(std::stoull(v));
  } catch (const std::exception&) {
    throw std::invalid_argument(std::string("bad value for ") + name + ": " + v);
  }
}

}  // namespace

Budgets Budgets::from_env(Budgets b) {
  b.max_heap = env_or("MQ_BUDGET_MAX_HEAP", b.max_heap);
  b.max_quotient = env_or("MQ_BUDGET_MAX_QUOTIENT", b.max_quotient);
  b.max_closure_pairs = env_or("MQ_BUDGET_CLOSURE_PAIRS", b.max_closure_pairs);
  b.max_witness = env_or("MQ_BUDGET_MAX_WITNESS", b.max_witness);
  b.max_outcomes = env_or("MQ_BUDGET_MAX_OUTCOMES", b.max_outcomes);
  return b;
}

Elem phi_of(const BipartiteMonoid& m, const std::vector<Elem>& phi,
            const Position& pos) {
  Elem r = m.identity();
  for (auto g : pos.parts()) r = m.mul(r, phi.at(g));
  return r;
}

ElementSet option_images(const BipartiteMonoid& m, const std::vector<Elem>& phi,
                         const GeneratorSystem& sys, std::size_t g) {
  ElementSet e(m.size());
  for (const auto& o : sys.options.at(g)) e.set(phi_of(m, phi, o));
  return e;
}

// Transition algebra ---------------------------------------------------------

TransitionAlgebra::TransitionAlgebra(const BipartiteMonoid& m) {
  TransitionPair one{m.identity(), ElementSet(m.size())};
  index_.emplace(one, 0);
  pairs_.push_back(std::move(one));
  done_.push_back(0);
}

TransitionPair TransitionAlgebra::product(const BipartiteMonoid& m,
                                          const TransitionPair& a,
                                          const TransitionPair& b) {
  TransitionPair r{m.mul(a.x, b.x), ElementSet(m.size())};
  a.e.for_each([&](std::size_t y) { r.e.set(m.mul(b.x, static_cast<Elem>(y))); });
  b.e.for_each([&](std::size_t y) { r.e.set(m.mul(a.x, static_cast<Elem>(y))); });
  return r;
}

bool TransitionAlgebra::contains(const TransitionPair& t) const {
  return index_.count(t) != 0;
}

std::optional<std::size_t> TransitionAlgebra::find(const TransitionPair& t) const {
  auto it = index_.find(t);
  if (it == index_.end()) return std::nullopt;
  return it->second;
}

void TransitionAlgebra::add_generator(const BipartiteMonoid& m,
                                      const TransitionPair& g, std::size_t budget) {
  if (std::find(gens_.begin(), gens_.end(), g) != gens_.end()) return;
  gens_.push_back(g);
  close(m, budget);
}

void TransitionAlgebra::close(const BipartiteMonoid& m, std::size_t budget) {
  for (std::size_t i = 0; i < pairs_.size(); ++i) {
    while (done_[i] < gens_.size()) {
      TransitionPair t = product(m, pairs_[i], gens_[done_[i]]);
      ++done_[i];
      if (index_.count(t)) continue;
      if (pairs_.size() >= budget) {
        throw BudgetExceeded("transition algebra exceeds " + std::to_string(budget) +
                             " pairs");
      }
      index_.emplace(t, pairs_.size());
      pairs_.push_back(std::move(t));
      done_.push_back(0);
    }
  }
}

TransitionAlgebra transition_closure(const Pretension& p, const GeneratorSystem& sys,
                                     std::size_t budget) {
  TransitionAlgebra t(p.monoid);
  for (std::size_t g = 0; g < sys.size(); ++g) {
    t.add_generator(p.monoid, {p.phi.at(g), option_images(p.monoid, p.phi, sys, g)},
                    budget);
  }
  return t;
}

bool pair_consistent(const BipartiteMonoid& m, const TransitionPair& t) {
  if (t.e.empty()) return !m.in_p(t.x);
  return m.in_p(t.x) == !t.e.intersects(m.p_set());
}

Verdict verify_algebra(const BipartiteMonoid& m, const TransitionAlgebra& t) {
  for (const auto& pair : t.pairs()) {
    if (!pair_consistent(m, pair)) return {false, pair};
  }
  return {true, std::nullopt};
}

Verdict verify_pretension(const Pretension& p, const GeneratorSystem& sys,
                          std::size_t budget) {
  return verify_algebra(p.monoid, transition_closure(p, sys, budget));
}

// Mex rule -------------------------------------------------------------------

ElementSet meximal_set(const BipartiteMonoid& m, Elem x) {
  ElementSet px = m.p_quotient(x);
  ElementSet out(m.size());
  for (Elem y = 0; y < m.size(); ++y) {
    if (!px.intersects(m.p_quotient(y))) out.set(y);
  }
  return out;
}

namespace {

class MexChecker {
 public:
  MexChecker(const TransitionAlgebra& t, const BipartiteMonoid& m) : t_(t), m_(m) {
    pq_.reserve(m.size());
    for (Elem x = 0; x < m.size(); ++x) pq_.push_back(m.p_quotient(x));
  }

  bool in_meximal(Elem x, const ElementSet& images) const {
    bool ok = true;
    images.for_each([&](std::size_t y) {
      if (ok && pq_[x].intersects(pq_[y])) ok = false;
    });
    return ok;
  }

  // Condition (ii) of the mex rule for x and nonempty images.
  bool transition_condition(Elem x, const ElementSet& images) const {
    ElementPeriod per = element_period(m_, x);
    const std::size_t span = per.preperiod + per.period;
    Elem v = m_.identity();  // x^n
    for (std::size_t n = 0; n < span; ++n) {
      Elem u = m_.mul(v, x);  // x^{n+1}
      ElementSet rescue(m_.size());  // y with v x' y in P for some x' in images
      images.for_each([&](std::size_t xp) { rescue |= pq_[m_.mul(v, static_cast<Elem>(xp))]; });
      for (const auto& pair : t_.pairs()) {
        if (m_.in_p(m_.mul(u, pair.x))) continue;
        if (pair.e.intersects(pq_[u])) continue;
        if (rescue.test(pair.x)) continue;
        return false;
      }
      v = u;
    }
    return true;
  }

  bool satisfies(Elem x, const ElementSet& images) const {
    return in_meximal(x, images) && transition_condition(x, images);
  }

 private:
  const TransitionAlgebra& t_;
  const BipartiteMonoid& m_;
  std::vector<ElementSet> pq_;
};

}  // namespace

std::optional<Elem> mex_function(const TransitionAlgebra& t, const BipartiteMonoid& m,
                                 const ElementSet& images) {
  if (images.empty()) return m.identity();
  MexChecker check(t, m);
  std::optional<Elem> found;
  for (Elem x = 0; x < m.size(); ++x) {
    if (!check.satisfies(x, images)) continue;
    if (found) {
      throw std::logic_error("mex rule satisfied by two elements " + m.name(*found) +
                             " and " + m.name(x) + "; quotient is not reduced");
    }
    found = x;
  }
  return found;
}

MexPreimage mex_preimage_structure(const TransitionAlgebra& t,
                                   const BipartiteMonoid& m, Elem x,
                                   std::size_t max_bits) {
  MexPreimage out;
  out.max = meximal_set(m, x);
  std::vector<std::size_t> bits = out.max.members();
  if (bits.size() > max_bits) {
    throw BudgetExceeded("meximal set has " + std::to_string(bits.size()) +
                         " elements; enumeration limit is " + std::to_string(max_bits));
  }
  MexChecker check(t, m);
  const std::size_t k = bits.size();
  std::vector<std::uint64_t> masks;
  for (std::uint64_t mask = 1; mask < (std::uint64_t{1} << k); ++mask) masks.push_back(mask);
  std::stable_sort(masks.begin(), masks.end(), [](std::uint64_t a, std::uint64_t b) {
    return std::popcount(a) < std::popcount(b);
  });
  std::vector<std::uint64_t> minimal;
  for (std::uint64_t mask : masks) {
    bool above = false;
    for (auto lo : minimal) {
      if ((lo & mask) == lo) {
        above = true;
        break;
      }
    }
    if (above) continue;
    ElementSet e(m.size());
    for (std::size_t i = 0; i < k; ++i) {
      if (mask >> i & 1) e.set(bits[i]);
    }
    if (check.transition_condition(x, e)) {
      minimal.push_back(mask);
      out.antichain.push_back(std::move(e));
    }
  }
  std::stable_sort(out.antichain.begin(), out.antichain.end(),
                   [](const ElementSet& a, const ElementSet& b) {
                     if (a.count() != b.count()) return a.count() < b.count();
                     return a.members() < b.members();
                   });
  return out;
}

}  // namespace mq
