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

#include "mq/games.hpp"

#include <algorithm>
#include <deque>
#include <functional>
#include <mutex>
#include <shared_mutex>
#include <unordered_map>
#include <unordered_set>

namespace mq::games {
namespace {

struct VecHash {
  std::size_t operator()(const std::vector<GameId>& v) const noexcept {
    std::uint64_t h = 0xcbf29ce484222325ULL ^ v.size();
    for (auto x : v) {
      h ^= x;
      h *= 0x100000001b3ULL;
    }
    return static_cast<std::size_t>(h ^ (h >> 31));
  }
};

struct Node {
  std::vector<GameId> options;  // canonical order
  std::uint32_t birthday = 0;
  std::uint32_t grundy = 0;
};

class Table {
 public:
  Table() { intern_sorted({}); }

  GameId intern(std::vector<GameId> opts) {
    std::sort(opts.begin(), opts.end());
    opts.erase(std::unique(opts.begin(), opts.end()), opts.end());
    {
      std::shared_lock lock(mu_);
      auto it = index_.find(opts);
      if (it != index_.end()) return it->second;
      for (auto o : opts) {
        if (o >= nodes_.size()) throw std::out_of_range("unknown game id");
      }
    }
    std::unique_lock lock(mu_);
    return intern_sorted(std::move(opts));
  }

  // Callers hold no lock; nodes are never moved (deque) or mutated.
  const Node& node(GameId g) const {
    std::shared_lock lock(mu_);
    if (g >= nodes_.size()) throw std::out_of_range("unknown game id");
    return nodes_[g];
  }

  std::size_t size() const {
    std::shared_lock lock(mu_);
    return nodes_.size();
  }

 private:
  GameId intern_sorted(std::vector<GameId> opts) {
    auto it = index_.find(opts);
    if (it != index_.end()) return it->second;
    Node n;
    std::vector<bool> seen;
    for (auto o : opts) {
      const Node& c = nodes_[o];
      n.birthday = std::max(n.birthday, c.birthday + 1);
      if (seen.size() <= c.grundy) seen.resize(c.grundy + 1, false);
      seen[c.grundy] = true;
    }
    while (n.grundy < seen.size() && seen[n.grundy]) ++n.grundy;
    n.options = opts;
    std::sort(n.options.begin(), n.options.end(), [&](GameId a, GameId b) {
      auto ba = nodes_[a].birthday, bb = nodes_[b].birthday;
      return ba != bb ? ba < bb : a < b;
    });
    auto id = static_cast<GameId>(nodes_.size());
    nodes_.push_back(std::move(n));
    index_.emplace(std::move(opts), id);
    return id;
  }

  mutable std::shared_mutex mu_;
  std::deque<Node> nodes_;
  std::unordered_map<std::vector<GameId>, GameId, VecHash> index_;
};

Table& table() {
  static Table t;
  return t;
}

class OutcomeMemo {
 public:
  std::optional<Outcome> find(const std::vector<GameId>& key) const {
    std::shared_lock lock(mu_);
    auto it = memo_.find(key);
    if (it == memo_.end()) return std::nullopt;
    return it->second;
  }
  void insert(std::vector<GameId> key, Outcome o) {
    std::unique_lock lock(mu_);
    memo_.emplace(std::move(key), o);
  }

 private:
  mutable std::shared_mutex mu_;
  std::unordered_map<std::vector<GameId>, Outcome, VecHash> memo_;
};

OutcomeMemo& outcome_memo() {
  static OutcomeMemo m;
  return m;
}

// `pos` is sorted and free of zeros.
Outcome misere_rec(const std::vector<GameId>& pos) {
  if (pos.empty()) return Outcome::N;
  if (auto hit = outcome_memo().find(pos)) return *hit;
  Outcome result = Outcome::P;
  for (std::size_t i = 0; i < pos.size() && result == Outcome::P; ++i) {
    if (i > 0 && pos[i] == pos[i - 1]) continue;
    for (GameId opt : table().node(pos[i]).options) {
      std::vector<GameId> next;
      next.reserve(pos.size());
      for (std::size_t j = 0; j < pos.size(); ++j) {
        if (j != i) next.push_back(pos[j]);
      }
      if (opt != kZero) {
        next.insert(std::upper_bound(next.begin(), next.end(), opt), opt);
      }
      if (misere_rec(next) == Outcome::P) {
        result = Outcome::N;
        break;
      }
    }
  }
  outcome_memo().insert(pos, result);
  return result;
}

// Star-notation parser ------------------------------------------------------

class Parser {
 public:
  explicit Parser(std::string_view s) : s_(s) {}

  GameId parse() {
    if (s_ == "0") return kZero;
    if (s_.empty()) throw ParseError("empty game text", 0);
    if (s_[0] != '*') throw ParseError("expected '0' or '*'", 0);
    pos_ = 1;
    if (pos_ == s_.size()) return nim_heap(1);
    std::vector<GameId> items = parse_items();
    if (pos_ != s_.size()) {
      throw ParseError(s_[pos_] == ')' ? "unbalanced ')'" : "unexpected character",
                       pos_);
    }
    return items.size() == 1 ? items[0] : make_game(std::move(items));
  }

 private:
  std::vector<GameId> parse_items() {
    std::vector<GameId> items;
    while (pos_ < s_.size() && s_[pos_] != ')') {
      items.push_back(parse_item());
    }
    if (items.empty()) throw ParseError("empty item list", pos_);
    return items;
  }

  GameId parse_item() {
    GameId g = parse_atom();
    if (pos_ < s_.size() && s_[pos_] == '#') {
      ++pos_;
      g = make_game({g});
    }
    return g;
  }

  GameId parse_atom() {
    char c = s_[pos_];
    if (c >= '0' && c <= '9') {
      ++pos_;
      return nim_heap(static_cast<std::uint32_t>(c - '0'));
    }
    if (c == '(') {
      std::size_t open = pos_++;
      std::vector<GameId> items = parse_items();
      if (pos_ >= s_.size()) throw ParseError("unbalanced '('", open);
      ++pos_;
      return items.size() == 1 ? items[0] : make_game(std::move(items));
    }
    if (c == '#') throw ParseError("stray '#'", pos_);
    throw ParseError(std::string("unexpected character '") + c + "'", pos_);
  }

  std::string_view s_;
  std::size_t pos_ = 0;
};

void print_item(GameId g, std::string& out);

// Options as printed: latest-born first, ties by id descending.
std::vector<GameId> print_order(GameId g) {
  std::vector<GameId> opts = table().node(g).options;
  std::sort(opts.begin(), opts.end(), [](GameId x, GameId y) {
    const auto bx = table().node(x).birthday, by = table().node(y).birthday;
    return bx != by ? bx > by : x > y;
  });
  return opts;
}

// An atom: a digit, or a parenthesised item list denoting g.
void print_atom(GameId g, std::string& out) {
  if (auto n = as_nim_heap(g); n && *n <= 9) {
    out += static_cast<char>('0' + *n);
    return;
  }
  out += '(';
  const auto& opts = table().node(g).options;
  if (opts.size() == 1) {
    print_atom(opts[0], out);
    out += '#';
  } else {
    for (auto o : print_order(g)) print_item(o, out);
  }
  out += ')';
}

void print_item(GameId g, std::string& out) {
  if (auto n = as_nim_heap(g); n && *n <= 9) {
    out += static_cast<char>('0' + *n);
    return;
  }
  const auto& opts = table().node(g).options;
  if (opts.size() == 1) {
    print_atom(opts[0], out);
    out += '#';
    return;
  }
  print_atom(g, out);
}

}  // namespace

GameId make_game(std::vector<GameId> options) {
  return table().intern(std::move(options));
}

std::vector<GameId> options_of(GameId g) { return table().node(g).options; }

std::uint32_t birthday(GameId g) { return table().node(g).birthday; }

std::uint32_t grundy_value(GameId g) { return table().node(g).grundy; }

std::size_t interned_count() { return table().size(); }

GameId nim_heap(std::uint32_t n) {
  std::vector<GameId> opts;
  opts.reserve(n);
  for (std::uint32_t i = 0; i < n; ++i) opts.push_back(make_game(opts));
  return make_game(std::move(opts));
}

std::optional<std::uint32_t> as_nim_heap(GameId g) {
  const Node& n = table().node(g);
  if (n.grundy != n.options.size() || n.birthday != n.options.size()) {
    return std::nullopt;
  }
  // Options have distinct Grundy values 0..k-1 and birthdays < k; each must be
  // a smaller Nim-heap.
  for (auto o : n.options) {
    const Node& c = table().node(o);
    if (c.grundy != c.birthday || !as_nim_heap(o)) return std::nullopt;
  }
  return static_cast<std::uint32_t>(n.options.size());
}

GameId parse_star_notation(std::string_view text) { return Parser(text).parse(); }

std::string print_star_notation(GameId g) {
  if (g == kZero) return "0";
  if (auto n = as_nim_heap(g); n && *n == 1) return "*";
  std::string out = "*";
  if (auto n = as_nim_heap(g); n && *n <= 9) {
    out += static_cast<char>('0' + *n);
    return out;
  }
  const auto& opts = table().node(g).options;
  if (opts.size() == 1) {
    print_atom(opts[0], out);
    out += '#';
  } else {
    for (auto o : print_order(g)) print_item(o, out);
  }
  return out;
}

Outcome misere_outcome(std::span<const GameId> components) {
  std::vector<GameId> pos;
  for (auto g : components) {
    if (g != kZero) pos.push_back(g);
  }
  std::sort(pos.begin(), pos.end());
  return misere_rec(pos);
}

Outcome normal_outcome(std::span<const GameId> components) {
  std::uint32_t x = 0;
  for (auto g : components) x ^= grundy_value(g);
  return x == 0 ? Outcome::P : Outcome::N;
}

TreeSystem closure_system(std::span<const GameId> roots) {
  std::unordered_set<GameId> seen;
  std::vector<GameId> stack(roots.begin(), roots.end());
  while (!stack.empty()) {
    GameId g = stack.back();
    stack.pop_back();
    if (g == kZero || !seen.insert(g).second) continue;
    for (auto o : table().node(g).options) stack.push_back(o);
  }
  TreeSystem ts;
  ts.games.assign(seen.begin(), seen.end());
  std::sort(ts.games.begin(), ts.games.end(), [](GameId a, GameId b) {
    auto ba = birthday(a), bb = birthday(b);
    return ba != bb ? ba < bb : a < b;
  });
  std::unordered_map<GameId, std::uint32_t> index;
  for (std::size_t i = 0; i < ts.games.size(); ++i) {
    index[ts.games[i]] = static_cast<std::uint32_t>(i);
  }
  for (GameId g : ts.games) {
    std::vector<Position> opts;
    for (auto o : table().node(g).options) {
      opts.push_back(o == kZero ? Position{} : Position::single(index.at(o)));
    }
    ts.system.add(print_star_notation(g), std::move(opts));
  }
  return ts;
}

}  // namespace mq::games
