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
#include <iostream>
#include <map>
#include <optional>
#include <span>
#include <stdexcept>
#include <unordered_map>

#include "mq/quotient.hpp"

namespace mq {

namespace {

using Parts = std::vector<std::uint32_t>;

struct PartsHash {
  std::size_t operator()(const Parts& v) const noexcept {
    std::uint64_t h = 0xcbf29ce484222325ULL ^ v.size();
    for (auto x : v) {
      h ^= x;
      h *= 0x100000001b3ULL;
    }
    return static_cast<std::size_t>(h ^ (h >> 29));
  }
};

Parts merged(const Parts& a, const Parts& b) {
  Parts out;
  out.reserve(a.size() + b.size());
  std::merge(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(out));
  return out;
}

enum class Compression { kGenByValue, kGenByPair, kByValue, kByPair, kNone };

// Outcome oracle for positions G + kH, where H is the newest generator and G
// lies in the old system. Positions without H are decided by the current
// quotient, which is exact for them. The rest are found by recursion, with
// results shared between all G of the same class: the old image of G at the
// coarsest level, its transition pair at the next, and G itself at the last.
class Surrogate {
 public:
  Surrogate(const GeneratorSystem& sys, const BipartiteMonoid& q,
            const std::vector<Elem>& phi, const TransitionAlgebra& t,
            Compression level, std::size_t max_outcomes)
      : sys_(sys), q_(q), phi_(phi), t_(t), level_(level),
        fresh_(static_cast<std::uint32_t>(sys.size() - 1)),
        max_outcomes_(max_outcomes) {
    rep_.resize(fresh_);
    std::map<std::uint64_t, std::uint32_t> first;
    for (std::uint32_t i = 0; i < fresh_; ++i) {
      std::uint64_t key = i;
      if (level_ == Compression::kByValue || level_ == Compression::kGenByValue) {
        key = phi_[i];
      }
      if (level_ == Compression::kByPair || level_ == Compression::kGenByPair) {
        pair_of_.push_back({phi_[i], option_images(q_, phi_, sys_, i)});
        key = *t_.find(pair_of_.back());
      }
      rep_[i] = first.emplace(key, i).first->second;
      if (rep_[i] == i) gens_.push_back(i);
    }
    gens_.push_back(fresh_);
    folding_ = level_ == Compression::kGenByValue || level_ == Compression::kGenByPair;
    if (folding_) {
      fold_at_.assign(fresh_, {0, 1});
      for (std::uint32_t i = 0; i < fresh_; ++i) {
        ElementPeriod e = element_period(q_, phi_[i]);
        fold_at_[i] = {e.preperiod + e.period + kFoldMargin, e.period};
      }
    }
  }

  const std::vector<std::uint32_t>& gens() const { return gens_; }
  std::uint32_t rep(std::uint32_t g) const { return g == fresh_ ? g : rep_[g]; }

  bool is_p(const Parts& in) {
    Parts folded;
    if (folding_) folded = fold(in);
    const Parts& pos = folding_ ? folded : in;
    std::size_t k = 0;
    while (k < pos.size() && pos[pos.size() - 1 - k] == fresh_) ++k;
    if (k == 0) return q_.in_p(image(pos, pos.size()));
    const std::size_t old = pos.size() - k;
    if (auto it = exact_.find(pos); it != exact_.end()) return it->second;
    std::uint64_t kk = 0;
    if (keyed()) {
      kk = key(pos, old, k);
      if (auto it = keyed_.find(kk); it != keyed_.end()) return it->second;
    }
    bool p = true;
    bool any_option = false;
    Parts next;
    Parts squeezed;
    for (std::size_t i = 0; i < pos.size() && p; ++i) {
      if (i > 0 && pos[i] == pos[i - 1]) continue;
      for (const Position& o : sys_.options[pos[i]]) {
        any_option = true;
        next.clear();
        next.reserve(pos.size() + o.size());
        std::span<const std::uint32_t> op = o.parts();
        if (level_ == Compression::kGenByValue || level_ == Compression::kGenByPair) {
          squeezed.clear();
          for (auto c : op) squeezed.push_back(rep(c));
          std::sort(squeezed.begin(), squeezed.end());
          op = squeezed;
        }
        std::size_t a = 0, b = 0;
        while (a < pos.size() || b < op.size()) {
          if (a == i) {
            ++a;
            continue;
          }
          if (b == op.size() || (a < pos.size() && pos[a] <= op[b])) {
            next.push_back(pos[a++]);
          } else {
            next.push_back(op[b++]);
          }
        }
        if (is_p(next)) {
          p = false;
          break;
        }
      }
    }
    if (!any_option) p = false;
    if (stored_ >= max_outcomes_) {
      throw BudgetExceeded("outcome memo exceeds " + std::to_string(max_outcomes_) +
                           " positions");
    }
    ++stored_;
    exact_.emplace(pos, p);
    if (keyed()) keyed_.emplace(kk, p);
    return p;
  }

 private:
  // Caps the multiplicity of each old generator, assuming its powers repeat
  // as they do in the old quotient (checked later by verification).
  static constexpr std::size_t kFoldMargin = 4;

  Parts fold(const Parts& pos) const {
    Parts folded;
    for (std::size_t i = 0; i < pos.size();) {
      std::size_t j = i;
      while (j < pos.size() && pos[j] == pos[i]) ++j;
      std::size_t c = j - i;
      if (pos[i] != fresh_) {
        auto [limit, period] = fold_at_[pos[i]];
        if (c >= limit) c = limit - period + (c - limit) % period;
      }
      folded.insert(folded.end(), c, pos[i]);
      i = j;
    }
    return folded;
  }

  bool keyed() const {
    return level_ == Compression::kByValue || level_ == Compression::kByPair;
  }

  Elem image(const Parts& pos, std::size_t len) const {
    Elem r = q_.identity();
    for (std::size_t i = 0; i < len; ++i) r = q_.mul(r, phi_[pos[i]]);
    return r;
  }

  std::uint64_t key(const Parts& pos, std::size_t old, std::size_t k) const {
    std::uint64_t cls;
    if (level_ == Compression::kByValue) {
      cls = image(pos, old);
    } else {
      TransitionPair t{q_.identity(), ElementSet(q_.size())};
      for (std::size_t i = 0; i < old; ++i) {
        t = TransitionAlgebra::product(q_, t, pair_of_[pos[i]]);
      }
      cls = *t_.find(t);
    }
    return (cls << 24) | k;
  }

  const GeneratorSystem& sys_;
  const BipartiteMonoid& q_;
  const std::vector<Elem>& phi_;
  const TransitionAlgebra& t_;
  Compression level_;
  std::uint32_t fresh_;
  std::size_t max_outcomes_;
  std::size_t stored_ = 0;
  std::vector<std::uint32_t> rep_;
  std::vector<std::uint32_t> gens_;
  std::vector<TransitionPair> pair_of_;
  bool folding_ = false;
  std::vector<std::pair<std::size_t, std::size_t>> fold_at_;
  std::unordered_map<std::uint64_t, bool> keyed_;
  std::unordered_map<Parts, bool, PartsHash> exact_;
};

struct Candidate {
  BipartiteMonoid monoid;
  std::vector<Elem> phi;  // every generator of the true system
};

// Enumerates the monoid generated by the surrogate generators, identifying
// positions with equal outcomes against a witness set that is closed under
// adding the representatives found.
class CandidateBuilder {
 public:
  struct Abandoned {};

  CandidateBuilder(Surrogate& s, std::size_t seed_size, std::size_t max_quotient,
                   std::size_t soft_cap, std::size_t generators_done,
                   std::size_t current_order)
      : s_(s), max_quotient_(max_quotient), soft_cap_(soft_cap),
        done_(generators_done), order_(current_order) {
    Parts cur;
    auto rec = [&](auto&& self, std::size_t from) -> void {
      witnesses_.push_back(cur);
      if (cur.size() == seed_size) return;
      for (std::size_t j = from; j < s_.gens().size(); ++j) {
        cur.push_back(s_.gens()[j]);
        self(self, j);
        cur.pop_back();
      }
    };
    rec(rec, 0);
    std::sort(witnesses_.begin(), witnesses_.end());
  }

  std::optional<Candidate> build(const GeneratorSystem& sys) {
    for (;;) {
      enumerate();
      if (std::getenv("MQ_TRACE")) {
        std::cerr << "  build: " << reps_.size() << " reps, " << witnesses_.size()
                  << " witnesses\n";
      }
      std::vector<Parts> extra;
      for (const auto& r : reps_) {
        if (!std::binary_search(witnesses_.begin(), witnesses_.end(), r)) {
          extra.push_back(r);
        }
      }
      if (extra.empty()) break;
      witnesses_.insert(witnesses_.end(), extra.begin(), extra.end());
      std::sort(witnesses_.begin(), witnesses_.end());
      witnesses_.erase(std::unique(witnesses_.begin(), witnesses_.end()), witnesses_.end());
    }
    return assemble(sys);
  }

 private:
  std::vector<bool> signature(const Parts& x) {
    std::vector<bool> sig(witnesses_.size());
    for (std::size_t i = 0; i < witnesses_.size(); ++i) {
      sig[i] = s_.is_p(merged(x, witnesses_[i]));
    }
    return sig;
  }

  void enumerate() {
    const auto& gens = s_.gens();
    reps_.assign(1, Parts{});
    parent_.assign(1, {0, 0});
    gen_mul_.clear();
    std::unordered_map<std::vector<bool>, Elem> index;
    index.emplace(signature(Parts{}), 0);
    for (std::size_t e = 0; e < reps_.size(); ++e) {
      gen_mul_.emplace_back(gens.size());
      for (std::size_t j = 0; j < gens.size(); ++j) {
        Parts x = reps_[e];
        x.insert(std::upper_bound(x.begin(), x.end(), gens[j]), gens[j]);
        auto [it, fresh] = index.emplace(signature(x), static_cast<Elem>(reps_.size()));
        if (fresh) {
          if (reps_.size() >= soft_cap_) throw Abandoned{};
          if (reps_.size() >= max_quotient_) {
            throw SolveBudgetExceeded(
                "quotient order exceeds " + std::to_string(max_quotient_), done_, order_);
          }
          reps_.push_back(std::move(x));
          parent_.push_back({static_cast<Elem>(e), static_cast<std::uint32_t>(j)});
        }
        gen_mul_[e][j] = it->second;
      }
    }
  }

  std::optional<Candidate> assemble(const GeneratorSystem& sys) {
    const std::size_t n = reps_.size();
    const auto& gens = s_.gens();
    std::vector<Elem> mul(n * n);
    for (Elem e = 0; e < n; ++e) {
      mul[e * n + 0] = e;
      for (Elem f = 1; f < n; ++f) {
        auto [par, j] = parent_[f];
        mul[e * n + f] = gen_mul_[mul[e * n + par]][j];
      }
    }
    for (Elem e = 0; e < n; ++e) {
      for (Elem f = e + 1; f < n; ++f) {
        if (mul[e * n + f] != mul[f * n + e]) return std::nullopt;
      }
    }
    for (Elem e = 0; e < n; ++e) {
      for (Elem f = 0; f < n; ++f) {
        for (std::size_t j = 0; j < gens.size(); ++j) {
          if (gen_mul_[mul[e * n + f]][j] != mul[e * n + gen_mul_[f][j]]) {
            return std::nullopt;
          }
        }
      }
    }
    ElementSet p(n);
    for (Elem e = 0; e < n; ++e) {
      if (s_.is_p(reps_[e])) p.set(e);
    }
    Candidate c{BipartiteMonoid(n, std::move(mul), 0, std::move(p)), {}};
    std::map<std::uint32_t, std::size_t> slot;
    for (std::size_t j = 0; j < gens.size(); ++j) slot[gens[j]] = j;
    for (std::uint32_t g = 0; g < sys.size(); ++g) {
      c.phi.push_back(gen_mul_[0][slot.at(s_.rep(g))]);
    }
    return c;
  }

  Surrogate& s_;
  std::size_t max_quotient_;
  std::size_t soft_cap_;
  std::size_t done_;
  std::size_t order_;
  std::vector<Parts> witnesses_;
  std::vector<Parts> reps_;
  std::vector<std::pair<Elem, std::uint32_t>> parent_;
  std::vector<std::vector<Elem>> gen_mul_;
};

}  // namespace

QuotientSolver::QuotientSolver(Budgets budgets)
    : budgets_(budgets), q_(), t_(q_) {}

QuotientSolver::Step QuotientSolver::add_generator(std::string label,
                                                   std::vector<Position> options) {
  const std::size_t g = sys_.size();
  for (const auto& o : options) {
    for (auto c : o.parts()) {
      if (c >= g) throw std::invalid_argument("option uses a later generator");
    }
  }
  sys_.add(std::move(label), std::move(options));
  if (sys_.options[g].empty()) {
    phi_.push_back(q_.identity());
    return {q_.identity(), false};
  }
  ElementSet images = option_images(q_, phi_, sys_, g);
  if (auto x = mex_function(t_, q_, images)) {
    phi_.push_back(*x);
    const std::size_t before = t_.size();
    try {
      t_.add_generator(q_, {*x, images}, budgets_.max_closure_pairs);
    } catch (const SolveBudgetExceeded&) {
      throw;
    } catch (const BudgetExceeded& e) {
      throw SolveBudgetExceeded(e.what(), g, q_.size());
    }
    for (std::size_t i = before; i < t_.size(); ++i) {
      if (!pair_consistent(q_, t_.pairs()[i])) {
        throw std::logic_error("mex step produced an inconsistent transition pair");
      }
    }
    return {*x, false};
  }
  grow();
  return {phi_[g], true};
}

void QuotientSolver::grow() {
  const std::size_t g = sys_.size() - 1;
  static const bool trace = std::getenv("MQ_TRACE") != nullptr;
  std::string last_failure = "no candidate verified";
  for (Compression level :
       {Compression::kGenByValue, Compression::kGenByPair, Compression::kByValue,
        Compression::kByPair, Compression::kNone}) {
    const bool heuristic = level != Compression::kNone;
    // Keyed levels can mistake the outcome of positions with the new
    // generator; when they do the enumeration tends to run away.
    const std::size_t cap =
        heuristic ? std::max<std::size_t>(64, 8 * q_.size()) : budgets_.max_quotient + 1;
    try {
      Surrogate s(sys_, q_, phi_, t_, level, budgets_.max_outcomes);
      for (std::size_t w = 1; w <= budgets_.max_witness; ++w) {
        CandidateBuilder builder(s, w, budgets_.max_quotient, cap, g, q_.size());
        std::optional<Candidate> c = builder.build(sys_);
        if (trace) {
          std::cerr << "grow " << sys_.labels[g] << " level " << static_cast<int>(level)
                    << " w " << w << " -> " << (c ? std::to_string(c->monoid.size()) : "x")
                    << '\n';
        }
        if (!c) {
          last_failure = "inconsistent table";
          continue;
        }
        Pretension pre{c->monoid, c->phi};
        Verdict v = verify_pretension(pre, sys_, budgets_.max_closure_pairs);
        if (!v.valid) {
          last_failure = "candidate failed verification";
          continue;
        }
        Reduction r = reduce(pre.monoid);
        q_ = r.monoid;
        phi_.clear();
        for (Elem x : pre.phi) phi_.push_back(r.projection[x]);
        t_ = transition_closure({q_, phi_}, sys_, budgets_.max_closure_pairs);
        ++growths_;
        return;
      }
    } catch (const CandidateBuilder::Abandoned&) {
      if (trace) std::cerr << "grow " << sys_.labels[g] << " level abandoned\n";
      last_failure = "candidate too large";
    } catch (const SolveBudgetExceeded& e) {
      if (!heuristic) throw;
      if (trace) std::cerr << "grow " << sys_.labels[g] << " level " << e.what() << '\n';
      last_failure = "candidate too large";
    } catch (const BudgetExceeded& e) {
      if (!heuristic) throw SolveBudgetExceeded(e.what(), g, q_.size());
      if (trace) std::cerr << "grow " << sys_.labels[g] << " level " << e.what() << '\n';
      last_failure = e.what();
    }
  }
  throw SolveBudgetExceeded("could not extend the quotient by generator " +
                                sys_.labels[g] + " (" + last_failure + ")",
                            g, q_.size());
}

Extension extend_with_game(QuotientSolver solver, std::vector<Position> options) {
  auto step = solver.add_generator("G" + std::to_string(solver.system().size()),
                                   std::move(options));
  return {std::move(solver), step.element, step.grew};
}

Pretension solve_closed_system(const GeneratorSystem& sys, const Budgets& budgets) {
  sys.validate();
  QuotientSolver s(budgets);
  for (std::size_t g = 0; g < sys.size(); ++g) {
    s.add_generator(sys.labels[g], sys.options[g]);
  }
  return s.pretension();
}

}  // namespace mq
