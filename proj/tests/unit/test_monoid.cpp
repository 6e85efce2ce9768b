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

#include <doctest.h>

#include <random>
#include <set>
#include <vector>

#include "helpers.hpp"
#include "mq/monoid.hpp"

using namespace mq;
using mq::test::cyclic;
using mq::test::named;
using mq::test::permuted;
using mq::test::product_pullback;
using mq::test::random_permutation;
using mq::test::set_of;

namespace {

void check_table(const BipartiteMonoid& m) {
  CHECK_NOTHROW(m.validate());
  for (Elem x = 0; x < m.size(); ++x) {
    for (Elem y = 0; y < m.size(); ++y) {
      REQUIRE(m.mul(x, y) == m.mul(y, x));
      for (Elem z = 0; z < m.size(); ++z) {
        REQUIRE(m.mul(m.mul(x, y), z) == m.mul(x, m.mul(y, z)));
      }
    }
  }
}

bool pairwise_distinguishable(const BipartiteMonoid& m) {
  for (Elem x = 0; x < m.size(); ++x) {
    for (Elem y = x + 1; y < m.size(); ++y) {
      if (indistinguishable(m, x, y)) return false;
    }
  }
  return true;
}

// A random cyclic monoid with a random P.
BipartiteMonoid random_cyclic(std::mt19937& rng) {
  std::uniform_int_distribution<std::size_t> idx(0, 3), per(1, 4);
  const std::size_t i = idx(rng), p = per(rng);
  std::vector<Elem> ps;
  std::bernoulli_distribution coin(0.4);
  for (Elem x = 0; x < i + p; ++x) {
    if (coin(rng)) ps.push_back(x);
  }
  return cyclic(i, p, ps);
}

}  // namespace

TEST_SUITE("monoid") {

TEST_CASE("tame monoids") {
  CHECK(make_tame(0).size() == 1);
  CHECK(make_tame(0).p_set().count() == 0);
  const BipartiteMonoid t1 = make_tame(1);
  CHECK(t1.size() == 2);
  CHECK(t1.p_set() == set_of(t1, {"a"}));
  const BipartiteMonoid t2 = make_tame(2);
  CHECK(t2.size() == 6);
  CHECK(t2.p_set() == set_of(t2, {"a", "b2"}));
  const Elem a = named(t2, "a"), b = named(t2, "b");
  CHECK(t2.mul(a, a) == t2.identity());
  CHECK(t2.pow(b, 3) == b);
  CHECK(make_tame(3).size() == 10);
  for (unsigned n = 0; n <= 4; ++n) check_table(make_tame(n));
}

TEST_CASE("property: |T_n| = 2^n + 2 with a kernel of order 2^n") {
  for (unsigned n = 2; n <= 8; ++n) {
    CAPTURE(n);
    const BipartiteMonoid t = make_tame(n);
    CHECK(t.size() == (std::size_t{1} << n) + 2);
    const Kernel k = kernel(t);
    CHECK(k.elements.count() == (std::size_t{1} << n));
    CHECK(tame_index(t) == n);
    CHECK(is_reduced(t));
    CHECK(is_normal(t));
    for (Elem x = 0; x < t.size(); ++x) {
      if (k.elements.test(x)) CHECK(t.mul(x, x) == k.z);
    }
  }
}

TEST_CASE("R_8") {
  const BipartiteMonoid r = make_r8();
  CHECK(r.size() == 8);
  check_table(r);
  const Elem a = named(r, "a"), b = named(r, "b"), c = named(r, "c");
  CHECK(r.mul(c, c) == r.mul(b, b));
  CHECK(r.mul(b, c) == r.mul(a, b));
  CHECK(r.mul(a, a) == r.identity());
  CHECK(r.pow(b, 3) == b);
  CHECK(r.p_set() == set_of(r, {"a", "b2"}));
  CHECK(is_reduced(r));
  CHECK_FALSE(tame_index(r).has_value());
  CHECK(is_normal(r));
  const Kernel k = kernel(r);
  CHECK(k.z == named(r, "b2"));
  CHECK(k.elements.test(named(r, "ab2")));
}

TEST_CASE("indistinguishability") {
  const BipartiteMonoid t2 = make_tame(2);
  for (Elem x = 0; x < t2.size(); ++x) CHECK(indistinguishable(t2, x, x));
  CHECK_FALSE(indistinguishable(t2, t2.identity(), named(t2, "a")));
  const BipartiteMonoid empty_p = cyclic(2, 3, {});
  for (Elem x = 0; x < empty_p.size(); ++x) CHECK(indistinguishable(empty_p, 0, x));
}

TEST_CASE("reduction") {
  const BipartiteMonoid t2 = make_tame(2);
  CHECK(reduce(t2).monoid.size() == 6);
  CHECK(is_isomorphic(reduce(t2).monoid, t2));
  CHECK(reduce(cyclic(3, 2, {})).monoid.size() == 1);
  // x^(2+4) = x^2 with P = {x, x^3, x^5}: the tail 2 mod 2 collapses.
  const Reduction r = reduce(cyclic(2, 4, {1, 3, 5}));
  CHECK(r.monoid.size() == 2);
  CHECK(is_homomorphism(cyclic(2, 4, {1, 3, 5}), r.monoid, r.projection));
}

TEST_CASE("property: reductions are reduced, idempotent and unique") {
  std::mt19937 rng(11);
  for (int trial = 0; trial < 200; ++trial) {
    const BipartiteMonoid q = random_cyclic(rng);
    const BipartiteMonoid extra = random_cyclic(rng);
    const BipartiteMonoid big = product_pullback(q, extra);
    check_table(big);
    const Reduction rb = reduce(big), rq = reduce(q);
    CHECK(pairwise_distinguishable(rb.monoid));
    CHECK(is_homomorphism(big, rb.monoid, rb.projection));
    // The projection big -> q is a surjective homomorphism, so both reduce alike.
    CHECK(is_isomorphic(rb.monoid, rq.monoid).has_value());
    CHECK(is_isomorphic(reduce(rb.monoid).monoid, rb.monoid).has_value());
  }
}

TEST_CASE("property: isomorphism survives relabelling") {
  std::mt19937 rng(5);
  for (const BipartiteMonoid& m : {make_tame(2), make_tame(3), make_r8(), make_tame(4)}) {
    for (int trial = 0; trial < 10; ++trial) {
      const auto perm = random_permutation(m.size(), rng);
      const BipartiteMonoid pm = permuted(m, perm);
      auto iso = is_isomorphic(m, pm);
      REQUIRE(iso);
      CHECK(is_homomorphism(m, pm, *iso));
      CHECK(std::set<Elem>(iso->begin(), iso->end()).size() == m.size());
      CHECK(tame_index(pm) == tame_index(m));
    }
  }
}

TEST_CASE("non-isomorphic pairs") {
  CHECK_FALSE(is_isomorphic(make_tame(1), make_tame(2)));
  CHECK_FALSE(is_isomorphic(make_r8(), make_tame(2)));
  CHECK_FALSE(is_isomorphic(make_r8(), make_tame(3)));
  // Same table, different P.
  CHECK_FALSE(is_isomorphic(cyclic(1, 2, {1}), cyclic(1, 2, {2})));
}

TEST_CASE("idempotents and kernels") {
  const BipartiteMonoid t2 = make_tame(2);
  const auto ids = idempotents(t2);
  CHECK(std::set<Elem>(ids.begin(), ids.end()) ==
        std::set<Elem>{t2.identity(), named(t2, "b2")});
  const Kernel k = kernel(t2);
  CHECK(k.z == named(t2, "b2"));
  CHECK(k.elements == set_of(t2, {"b2", "ab2", "b", "ab"}));
  const Kernel trivial = kernel(make_tame(0));
  CHECK(trivial.z == 0);
  CHECK(trivial.elements.count() == 1);
}

TEST_CASE("property: kernels are groups around z") {
  std::mt19937 rng(3);
  std::vector<BipartiteMonoid> ms{make_tame(3), make_r8()};
  for (int i = 0; i < 50; ++i) ms.push_back(random_cyclic(rng));
  for (const auto& m : ms) {
    const Kernel k = kernel(m);
    CHECK(m.mul(k.z, k.z) == k.z);
    for (Elem x = 0; x < m.size(); ++x) {
      if (!k.elements.test(x)) continue;
      CHECK(m.mul(x, k.z) == x);
      bool has_inverse = false;
      for (Elem y = 0; y < m.size(); ++y) {
        if (k.elements.test(y) && m.mul(x, y) == k.z) has_inverse = true;
      }
      CHECK(has_inverse);
    }
  }
}

TEST_CASE("element periods") {
  const BipartiteMonoid t2 = make_tame(2);
  CHECK(element_period(t2, t2.identity()) == ElementPeriod{0, 1});
  CHECK(element_period(make_tame(1), 1) == ElementPeriod{0, 2});
  CHECK(element_period(t2, named(t2, "b")) == ElementPeriod{1, 2});
  CHECK(element_period(cyclic(3, 5, {}), 1) == ElementPeriod{3, 5});
}

TEST_CASE("regular and normal") {
  CHECK(is_normal(make_tame(2)));
  CHECK(is_regular(make_tame(2)));
  // <x | x^2 = x^3>, P = {x}: K = {x^2}, missing P.
  const BipartiteMonoid m = cyclic(2, 1, {1});
  CHECK_FALSE(is_regular(m));
  CHECK_FALSE(is_normal(m));
}

TEST_CASE("generated submonoids and restriction") {
  const BipartiteMonoid t2 = make_tame(2);
  const ElementSet sub = generated(t2, {named(t2, "b")});
  CHECK(sub == set_of(t2, {"1", "b", "b2"}));
  const Restriction r = restrict_to(t2, sub);
  CHECK(r.monoid.size() == 3);
  check_table(r.monoid);
  CHECK(generated(t2, {}).count() == 1);
}

TEST_CASE("relations") {
  const auto letters = default_letters(2);
  const BipartiteMonoid t1 = make_tame(1);
  const Presentation p1 = find_relations(t1, {named(t1, "a")});
  REQUIRE(p1.relations.size() == 1);
  CHECK(word_string(p1.relations[0].lhs, letters) == "a2");
  CHECK(word_string(p1.relations[0].rhs, letters) == "1");
  const BipartiteMonoid t2 = make_tame(2);
  const Presentation p2 = find_relations(t2, {named(t2, "a"), named(t2, "b")});
  std::set<std::string> rels;
  for (const auto& r : p2.relations) {
    rels.insert(word_string(r.lhs, letters) + "=" + word_string(r.rhs, letters));
  }
  CHECK(rels.count("a2=1"));
  CHECK(rels.count("b3=b"));
  CHECK(find_relations(make_tame(0), {}).relations.empty());
  CHECK_THROWS_AS(find_relations(t2, {named(t2, "a")}), std::invalid_argument);
}

TEST_CASE("property: normal forms rebuild the table") {
  for (const BipartiteMonoid& m : {make_tame(3), make_r8()}) {
    std::vector<Elem> gens;
    for (const char* g : {"a", "b", "c"}) {
      try {
        gens.push_back(named(m, g));
      } catch (const std::out_of_range&) {
      }
    }
    const Presentation p = find_relations(m, gens);
    auto eval = [&](const Word& w) {
      Elem x = m.identity();
      for (std::size_t i = 0; i < w.size(); ++i) x = m.mul(x, m.pow(gens[i], w[i]));
      return x;
    };
    for (Elem x = 0; x < m.size(); ++x) CHECK(eval(p.normal_form[x]) == x);
    for (const auto& r : p.relations) CHECK(eval(r.lhs) == eval(r.rhs));
  }
}

TEST_CASE("invalid tables are rejected") {
  // Commutative but (1*1)*2 = 1 while 1*(1*2) = 2.
  std::vector<Elem> mul{0, 1, 2, 1, 2, 2, 2, 2, 1};
  BipartiteMonoid bad(3, mul, 0, ElementSet(3));
  CHECK_THROWS_AS(bad.validate(), std::invalid_argument);
  std::vector<Elem> noncomm{0, 1, 1, 1};
  noncomm[1 * 2 + 0] = 0;
  BipartiteMonoid nc(2, noncomm, 0, ElementSet(2));
  CHECK_THROWS_AS(nc.validate(), std::invalid_argument);
}

}  // TEST_SUITE
