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

#include <algorithm>
#include <functional>
#include <map>
#include <random>
#include <set>
#include <vector>

#include "mq/games.hpp"

using namespace mq;
using namespace mq::games;

namespace {

// All games born by day `d`, by brute subset enumeration.
std::vector<GameId> born_by(unsigned d) {
  std::vector<GameId> all{kZero};
  for (unsigned day = 1; day <= d; ++day) {
    std::vector<GameId> next;
    const std::size_t k = all.size();
    for (std::size_t mask = 0; mask < (std::size_t{1} << k); ++mask) {
      std::vector<GameId> opts;
      for (std::size_t i = 0; i < k; ++i) {
        if (mask >> i & 1) opts.push_back(all[i]);
      }
      next.push_back(make_game(opts));
    }
    all = next;
  }
  return all;
}

// Unmemoized misère recursion over sums.
bool reference_p(std::vector<GameId> pos) {
  bool any = false;
  for (std::size_t i = 0; i < pos.size(); ++i) {
    for (GameId o : options_of(pos[i])) {
      any = true;
      auto next = pos;
      next[i] = o;
      if (reference_p(next)) return false;
    }
  }
  return any;
}

// Grundy value of a sum by direct mex over moves in one component.
std::uint32_t reference_grundy(const std::vector<GameId>& pos) {
  std::set<std::uint32_t> seen;
  for (std::size_t i = 0; i < pos.size(); ++i) {
    for (GameId o : options_of(pos[i])) {
      auto next = pos;
      next[i] = o;
      seen.insert(reference_grundy(next));
    }
  }
  std::uint32_t m = 0;
  while (seen.count(m)) ++m;
  return m;
}

std::uint32_t total_birthday(const std::vector<GameId>& pos) {
  std::uint32_t b = 0;
  for (auto g : pos) b += birthday(g);
  return b;
}

// Multisets of up to `parts` games from `pool` with total birthday <= `limit`.
std::vector<std::vector<GameId>> small_positions(const std::vector<GameId>& pool,
                                                 std::size_t parts, std::uint32_t limit) {
  std::vector<std::vector<GameId>> out;
  std::vector<GameId> cur;
  std::function<void(std::size_t)> rec = [&](std::size_t from) {
    out.push_back(cur);
    if (cur.size() == parts) return;
    for (std::size_t i = from; i < pool.size(); ++i) {
      cur.push_back(pool[i]);
      if (total_birthday(cur) <= limit) rec(i);
      cur.pop_back();
    }
  };
  rec(0);
  return out;
}

GameId random_game(std::mt19937& rng, unsigned depth) {
  if (depth == 0) return kZero;
  std::uniform_int_distribution<int> width(0, 3);
  std::vector<GameId> opts;
  for (int i = width(rng); i > 0; --i) opts.push_back(random_game(rng, depth - 1));
  return make_game(opts);
}

}  // namespace

TEST_SUITE("games") {

TEST_CASE("zero and nim heaps") {
  CHECK(parse_star_notation("0") == kZero);
  CHECK(options_of(kZero).empty());
  CHECK(nim_heap(0) == kZero);
  CHECK(options_of(nim_heap(1)) == std::vector<GameId>{kZero});
  auto opts3 = options_of(nim_heap(3));
  CHECK(opts3 == std::vector<GameId>{kZero, nim_heap(1), nim_heap(2)});
  CHECK(as_nim_heap(nim_heap(5)) == 5u);
  CHECK_FALSE(as_nim_heap(make_game({nim_heap(2)})).has_value());
}

TEST_CASE("interning shares equal trees") {
  const GameId a = make_game({nim_heap(2), kZero, nim_heap(2)});
  const GameId b = make_game({kZero, nim_heap(2)});
  CHECK(a == b);
  const auto before = interned_count();
  make_game({kZero, nim_heap(2)});
  CHECK(interned_count() == before);
}

TEST_CASE("star notation parses per the grammar") {
  const GameId g = parse_star_notation("*2#320");
  const GameId wrapped = make_game({nim_heap(2)});
  auto opts = options_of(g);
  CHECK(opts.size() == 4);
  for (GameId want : {wrapped, nim_heap(3), nim_heap(2), kZero}) {
    CHECK(std::count(opts.begin(), opts.end(), want) == 1);
  }
  const GameId e = parse_star_notation("*(2#0)0");
  const GameId d = make_game({wrapped, kZero});
  CHECK(options_of(e) == std::vector<GameId>{kZero, d});
  CHECK(parse_star_notation("*") == nim_heap(1));
  CHECK(parse_star_notation("*2") == nim_heap(2));
  CHECK(parse_star_notation("*2#") == wrapped);
}

TEST_CASE("syntax errors carry positions") {
  for (const char* bad : {"", "*(2", "*2)", "*()", "*#", "*a", "x", "*2##(", "0 0", "*1(#)"}) {
    CAPTURE(bad);
    CHECK_THROWS_AS(parse_star_notation(bad), ParseError);
  }
  try {
    parse_star_notation("*2)");
    FAIL("expected a parse error");
  } catch (const ParseError& e) {
    CHECK(e.where() == 2);
  }
}

TEST_CASE("printing") {
  CHECK(print_star_notation(kZero) == "0");
  CHECK(print_star_notation(nim_heap(1)) == "*");
  CHECK(print_star_notation(nim_heap(2)) == "*2");
  CHECK(print_star_notation(parse_star_notation("*(2#0)0")) == "*(2#0)0");
  CHECK(print_star_notation(parse_star_notation("*2#")) == "*2#");
  // Nim-heaps past 9 have no digit and print structurally.
  const GameId big = make_game({nim_heap(12)});
  CHECK(parse_star_notation(print_star_notation(big)) == big);
}

TEST_CASE("property: print then parse is the identity") {
  std::mt19937 rng(7);
  for (int trial = 0; trial < 300; ++trial) {
    const GameId g = random_game(rng, 1 + trial % 5);
    CAPTURE(print_star_notation(g));
    CHECK(parse_star_notation(print_star_notation(g)) == g);
  }
  for (GameId g : born_by(3)) CHECK(parse_star_notation(print_star_notation(g)) == g);
}

TEST_CASE("grundy values") {
  CHECK(grundy_value(kZero) == 0);
  CHECK(grundy_value(parse_star_notation("*2#")) == 0);
  const char* boxes[] = {"*", "*2", "*2#", "*2#0", "*(2#0)0"};
  const std::uint32_t want[] = {1, 2, 0, 1, 2};
  for (int i = 0; i < 5; ++i) CHECK(grundy_value(parse_star_notation(boxes[i])) == want[i]);
}

TEST_CASE("property: grundy value of a sum is the xor") {
  const auto pool = born_by(3);
  for (const auto& pos : small_positions(pool, 3, 6)) {
    std::uint32_t x = 0;
    for (auto g : pos) x ^= grundy_value(g);
    CHECK(reference_grundy(pos) == x);
  }
}

TEST_CASE("outcomes") {
  const GameId star = nim_heap(1);
  CHECK(misere_outcome(std::vector<GameId>{}) == Outcome::N);
  CHECK(misere_outcome(std::vector<GameId>{star}) == Outcome::P);
  CHECK(misere_outcome(std::vector<GameId>{star, star}) == Outcome::N);
  CHECK(normal_outcome(std::vector<GameId>{}) == Outcome::P);
  CHECK(normal_outcome(std::vector<GameId>{star}) == Outcome::N);
  CHECK(normal_outcome(std::vector<GameId>{nim_heap(2), nim_heap(2)}) == Outcome::P);
}

TEST_CASE("property: memoized misère outcome matches plain recursion") {
  auto pool = born_by(3);
  pool.push_back(parse_star_notation("*(2#0)0"));
  pool.push_back(parse_star_notation("*2#320"));
  std::size_t checked = 0;
  for (const auto& pos : small_positions(pool, 4, 8)) {
    const bool want = reference_p(pos);
    CHECK((misere_outcome(pos) == Outcome::P) == want);
    ++checked;
  }
  CHECK(checked > 1000);
}

TEST_CASE("property: adding * + * keeps the misère outcome") {
  const GameId star = nim_heap(1);
  for (auto pos : small_positions(born_by(3), 3, 6)) {
    const Outcome o = misere_outcome(pos);
    pos.push_back(star);
    pos.push_back(star);
    CHECK(misere_outcome(pos) == o);
  }
}

TEST_CASE("closure systems list every nonzero subgame once, children first") {
  const GameId e = parse_star_notation("*(2#0)0");
  const TreeSystem ts = closure_system(std::vector<GameId>{e});
  CHECK(ts.games.size() == 5);
  CHECK(ts.games.back() == e);
  ts.system.validate();
  for (std::size_t g = 0; g < ts.games.size(); ++g) {
    CHECK(ts.system.options[g].size() == options_of(ts.games[g]).size());
  }
  CHECK(closure_system(std::vector<GameId>{kZero}).games.empty());
}

}  // TEST_SUITE
