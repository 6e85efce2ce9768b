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

// Misère quotients of closed game systems: transition algebras, verification
// of candidate quotients, the generalized mex rule, and the incremental solver.

#ifndef MQ_QUOTIENT_HPP_
#define MQ_QUOTIENT_HPP_

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <unordered_map>
#include <vector>

#include "mq/core.hpp"
#include "mq/element_set.hpp"
#include "mq/monoid.hpp"
#include "mq/octal.hpp"

namespace mq {

struct Budgets {
  std::size_t max_heap = 200;
  std::size_t max_quotient = 4096;
  std::size_t max_closure_pairs = 2'000'000;
  /// Largest seed witness size tried when a quotient has to grow.
  std::size_t max_witness = 4;
  /// Cap on memoized outcomes per growth attempt.
  std::size_t max_outcomes = 20'000'000;

  /// Applies MQ_BUDGET_MAX_HEAP, MQ_BUDGET_MAX_QUOTIENT,
  /// MQ_BUDGET_CLOSURE_PAIRS, MQ_BUDGET_MAX_WITNESS and MQ_BUDGET_MAX_OUTCOMES.
  static Budgets from_env(Budgets base);
  static Budgets from_env() { return from_env(Budgets{}); }
};

/// A candidate quotient: a monoid, its P-portion, and images of generators.
struct Pretension {
  BipartiteMonoid monoid;
  std::vector<Elem> phi;
};

Elem phi_of(const BipartiteMonoid& m, const std::vector<Elem>& phi,
            const Position& pos);
/// Images of the options of generator g.
ElementSet option_images(const BipartiteMonoid& m, const std::vector<Elem>& phi,
                         const GeneratorSystem& sys, std::size_t g);

struct TransitionPair {
  Elem x = 0;
  ElementSet e;
  friend bool operator==(const TransitionPair&, const TransitionPair&) = default;
};

/// The submonoid of Q x Pow(Q) generated by generator pairs under
/// (x,E)(y,F) = (xy, yE u xF).
class TransitionAlgebra {
 public:
  TransitionAlgebra() = default;
  explicit TransitionAlgebra(const BipartiteMonoid& m);

  /// Adds a generator pair and closes; throws BudgetExceeded past `budget`.
  void add_generator(const BipartiteMonoid& m, const TransitionPair& g,
                     std::size_t budget);

  const std::vector<TransitionPair>& pairs() const { return pairs_; }
  const std::vector<TransitionPair>& generators() const { return gens_; }
  std::size_t size() const { return pairs_.size(); }
  bool contains(const TransitionPair& t) const;
  std::optional<std::size_t> find(const TransitionPair& t) const;

  static TransitionPair product(const BipartiteMonoid& m, const TransitionPair& a,
                                const TransitionPair& b);

 private:
  struct Hash {
    std::size_t operator()(const TransitionPair& t) const noexcept {
      return t.e.hash() * 31 + t.x;
    }
  };
  void close(const BipartiteMonoid& m, std::size_t budget);

  std::vector<TransitionPair> pairs_;
  std::vector<std::size_t> done_;  // generators already applied per pair
  std::vector<TransitionPair> gens_;
  std::unordered_map<TransitionPair, std::size_t, Hash> index_;
};

TransitionAlgebra transition_closure(const Pretension& p, const GeneratorSystem& sys,
                                     std::size_t budget);

/// The outcome criterion on one pair: E empty implies x not in P; otherwise
/// x in P iff E misses P.
bool pair_consistent(const BipartiteMonoid& m, const TransitionPair& t);

struct Verdict {
  bool valid = false;
  std::optional<TransitionPair> counterexample;
};
Verdict verify_algebra(const BipartiteMonoid& m, const TransitionAlgebra& t);
Verdict verify_pretension(const Pretension& p, const GeneratorSystem& sys,
                          std::size_t budget);

ElementSet meximal_set(const BipartiteMonoid& m, Elem x);

/// The x with `images` inside M_x that satisfies the transition condition,
/// or nothing when the quotient must grow. Empty images give the identity.
std::optional<Elem> mex_function(const TransitionAlgebra& t, const BipartiteMonoid& m,
                                 const ElementSet& images);

struct MexPreimage {
  ElementSet max;
  std::vector<ElementSet> antichain;  // by size, then lexicographic
};
/// Throws BudgetExceeded when |M_x| > max_bits.
MexPreimage mex_preimage_structure(const TransitionAlgebra& t,
                                   const BipartiteMonoid& m, Elem x,
                                   std::size_t max_bits = 22);

/// Thrown when the solver cannot finish within budget; carries the last
/// verified state.
class SolveBudgetExceeded : public BudgetExceeded {
 public:
  SolveBudgetExceeded(const std::string& what, std::size_t generators_done,
                      std::size_t order)
      : BudgetExceeded(what), generators_done_(generators_done), order_(order) {}
  /// Number of generators covered by the last verified quotient.
  std::size_t generators_done() const { return generators_done_; }
  std::size_t partial_order() const { return order_; }

 private:
  std::size_t generators_done_;
  std::size_t order_;
};

/// Incremental solver: generators are added one at a time, each with options
/// over earlier generators. The state is always a verified, reduced quotient
/// of the generators added so far.
class QuotientSolver {
 public:
  explicit QuotientSolver(Budgets budgets = {});

  struct Step {
    Elem element = 0;
    bool grew = false;
  };
  Step add_generator(std::string label, std::vector<Position> options);

  const GeneratorSystem& system() const { return sys_; }
  const BipartiteMonoid& monoid() const { return q_; }
  const std::vector<Elem>& phi() const { return phi_; }
  const TransitionAlgebra& algebra() const { return t_; }
  Pretension pretension() const { return {q_, phi_}; }
  /// Number of times the quotient had to grow.
  std::size_t growth_count() const { return growths_; }

 private:
  void grow();

  Budgets budgets_;
  GeneratorSystem sys_;
  BipartiteMonoid q_;
  std::vector<Elem> phi_;
  TransitionAlgebra t_;
  std::size_t growths_ = 0;
};

/// Result of adding one game to a verified pretension.
struct Extension {
  QuotientSolver solver;
  Elem element = 0;
  bool grew = false;
};
Extension extend_with_game(QuotientSolver solver, std::vector<Position> options);

Pretension solve_closed_system(const GeneratorSystem& sys, const Budgets& budgets);

struct QuotientSolution {
  std::string source;  // octal code or game notation
  std::uint32_t preperiod = 0;
  std::uint32_t period = 0;
  BipartiteMonoid monoid;       // reduced, elements named
  std::vector<Elem> phi;        // phi[n] = image of heap n; phi[0] is 1
  std::vector<Elem> generators; // named a, b, c, ... in this order
  std::size_t heaps_computed = 0;
};

/// Names generators by first appearance along `phi` and every element by its
/// normal-form word; returns the generators.
std::vector<Elem> name_elements(BipartiteMonoid& m, const std::vector<Elem>& phi);

QuotientSolution solve_octal(const octal::OctalCode& code, const Budgets& budgets);
/// Quotient of heaps 1..n; phi has one entry per heap (no entry for heap 0).
Pretension partial_quotient(const octal::OctalCode& code, std::uint32_t n,
                            const Budgets& budgets);

/// Bound for exhaustive position checks: up to `max_parts` heaps, each of size
/// at most `max_heap`.
struct CheckBound {
  std::uint32_t max_parts = 5;
  std::uint32_t max_heap = 12;
};

struct Classification {
  std::optional<unsigned> tame_index;
  bool regular = false;
  bool normal = false;
  std::size_t kernel_order = 0;
  std::size_t p_order = 0;
  bool faithful = false;  // no conflict within the bound
  CheckBound faithful_checked_to;
  std::size_t positions_checked = 0;
  /// Kernel correspondence zPhi(G) = zPhi(H) iff equal Grundy values, on the
  /// same position set. Only meaningful when regular and faithful.
  bool correspondence = false;
  std::optional<octal::Periodicity> normal_periodicity;
  bool normal_period_divides = false;
  std::vector<std::string> notes;
};

Classification classify(const QuotientSolution& sol, const octal::OctalCode& code,
                        const std::vector<std::uint32_t>& grundy, CheckBound bound);

/// Calls f(parts) for every multiset of heap sizes in [1, max_heap] with at most
/// max_parts parts (including the empty one), parts ascending.
template <typename F>
void for_each_heap_position(const CheckBound& b, F&& f) {
  std::vector<std::uint32_t> parts;
  auto rec = [&](auto&& self, std::uint32_t lo) -> void {
    f(static_cast<const std::vector<std::uint32_t>&>(parts));
    if (parts.size() == b.max_parts) return;
    for (std::uint32_t h = lo; h <= b.max_heap; ++h) {
      parts.push_back(h);
      self(self, h);
      parts.pop_back();
    }
  };
  rec(rec, 1);
}

}  // namespace mq

#endif  // MQ_QUOTIENT_HPP_
