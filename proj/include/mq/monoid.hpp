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

// Finite commutative monoids with a distinguished P-portion.

#ifndef MQ_MONOID_HPP_
#define MQ_MONOID_HPP_

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "mq/element_set.hpp"

namespace mq {

using Elem = std::uint32_t;

/// The pair (Q, P): a commutative monoid given by its full table, and a subset.
class BipartiteMonoid {
 public:
  BipartiteMonoid();  // the trivial monoid with P empty
  BipartiteMonoid(std::size_t size, std::vector<Elem> mul, Elem identity,
                  ElementSet p_set, std::vector<std::string> names = {});

  std::size_t size() const { return n_; }
  Elem mul(Elem x, Elem y) const { return mul_[x * n_ + y]; }
  Elem identity() const { return identity_; }
  bool in_p(Elem x) const { return p_.test(x); }
  const ElementSet& p_set() const { return p_; }
  const std::vector<Elem>& table() const { return mul_; }

  /// Display name; falls back to "#i".
  std::string name(Elem x) const;
  const std::vector<std::string>& names() const { return names_; }
  void set_names(std::vector<std::string> names);

  Elem pow(Elem x, std::size_t k) const;

  /// Throws std::invalid_argument unless the table is closed, commutative,
  /// associative and has a two-sided identity.
  void validate() const;

  /// {z : xz in P}.
  ElementSet p_quotient(Elem x) const;

 private:
  std::size_t n_ = 1;
  std::vector<Elem> mul_;
  Elem identity_ = 0;
  ElementSet p_;
  std::vector<std::string> names_;
};

/// True iff `image` is a multiplicative, identity-preserving, P-reflecting map.
bool is_homomorphism(const BipartiteMonoid& src, const BipartiteMonoid& dst,
                     const std::vector<Elem>& image);

bool indistinguishable(const BipartiteMonoid& m, Elem x, Elem y);

struct Reduction {
  BipartiteMonoid monoid;
  std::vector<Elem> projection;  // element of m -> element of the reduction
};
Reduction reduce(const BipartiteMonoid& m);
bool is_reduced(const BipartiteMonoid& m);

/// A P-preserving isomorphism m1 -> m2, if one exists.
std::optional<std::vector<Elem>> is_isomorphic(const BipartiteMonoid& m1,
                                               const BipartiteMonoid& m2);

/// T_n: trivial for n = 0, <a | a^2 = 1> with P = {a} for n = 1, and for
/// n >= 2 the monoid {1, a} u K with K = Z_2^n and P = {a, z}.
BipartiteMonoid make_tame(unsigned n);
/// <a,b,c | a^2=1, b^3=b, bc=ab, c^2=b^2>, P = {a, b^2}.
BipartiteMonoid make_r8();
std::optional<unsigned> tame_index(const BipartiteMonoid& m);

std::vector<Elem> idempotents(const BipartiteMonoid& m);
struct Kernel {
  Elem z = 0;
  ElementSet elements;
};
Kernel kernel(const BipartiteMonoid& m);

struct ElementPeriod {
  std::size_t preperiod = 0;
  std::size_t period = 1;
  friend bool operator==(const ElementPeriod&, const ElementPeriod&) = default;
};
ElementPeriod element_period(const BipartiteMonoid& m, Elem x);

bool is_regular(const BipartiteMonoid& m);
bool is_normal(const BipartiteMonoid& m);

/// The submonoid generated by `gens`.
ElementSet generated(const BipartiteMonoid& m, const std::vector<Elem>& gens);

/// Restriction of m to a submonoid given as a set (which must be closed and
/// contain the identity). `embedding[i]` is the element of m behind i.
struct Restriction {
  BipartiteMonoid monoid;
  std::vector<Elem> embedding;
};
Restriction restrict_to(const BipartiteMonoid& m, const ElementSet& sub);

/// Commutative words over generators, as exponent vectors.
using Word = std::vector<std::uint32_t>;
std::string word_string(const Word& w, const std::vector<std::string>& letters);

struct Relation {
  Word lhs;
  Word rhs;
};

/// Normal forms of every element (degree first, then heavier on earlier
/// generators) and the minimal non-normal words rewritten to their normal
/// forms. Throws std::invalid_argument if gens do not generate m.
struct Presentation {
  std::vector<Word> normal_form;  // per element
  std::vector<Relation> relations;
};
Presentation find_relations(const BipartiteMonoid& m, const std::vector<Elem>& gens);

/// "a".."z", then "A".."Z", then "[52]", "[53]", ...
std::vector<std::string> default_letters(std::size_t k);

}  // namespace mq

#endif  // MQ_MONOID_HPP_
