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

#include "mq/oracle.hpp"

#include <algorithm>
#include <mutex>
#include <sstream>
#include <stdexcept>
#include <unordered_map>

namespace mq::oracle {

std::size_t OutcomeOracle::CountsHash::operator()(const Counts& c) const noexcept {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (auto x : c) {
    h ^= x;
    h *= 0x100000001b3ULL;
  }
  return static_cast<std::size_t>(h);
}

OutcomeOracle::OutcomeOracle(const GeneratorSystem& sys) : sys_(sys) { sys_.validate(); }

std::size_t OutcomeOracle::memo_size() const {
  std::shared_lock lock(mu_);
  return memo_.size();
}

Outcome OutcomeOracle::outcome(const Position& pos) {
  Counts c(sys_.size(), 0);
  for (auto g : pos.parts()) {
    if (g >= sys_.size()) throw std::out_of_range("position uses an unknown generator");
    ++c[g];
  }
  return is_p(c) ? Outcome::P : Outcome::N;
}

bool OutcomeOracle::is_p(Counts& c) {
  {
    std::shared_lock lock(mu_);
    auto it = memo_.find(c);
    if (it != memo_.end()) return it->second;
  }
  bool any_option = false;
  bool p = true;
  for (std::size_t g = 0; g < c.size() && p; ++g) {
    if (c[g] == 0) continue;
    --c[g];
    for (const Position& o : sys_.options[g]) {
      any_option = true;
      for (auto x : o.parts()) ++c[x];
      const bool option_p = is_p(c);
      for (auto x : o.parts()) --c[x];
      if (option_p) {
        p = false;
        break;
      }
    }
    ++c[g];
  }
  if (!any_option) p = false;
  std::unique_lock lock(mu_);
  memo_.emplace(c, p);
  return p;
}

Outcome brute_misere_outcome(const GeneratorSystem& sys, const Position& pos) {
  OutcomeOracle o(sys);
  return o.outcome(pos);
}

std::vector<Position> positions_up_to(std::size_t generators, std::size_t bound) {
  std::vector<Position> out;
  std::vector<std::uint32_t> cur;
  for (std::size_t size = 0; size <= bound; ++size) {
    auto rec = [&](auto&& self, std::uint32_t from) -> void {
      if (cur.size() == size) {
        out.emplace_back(cur);
        return;
      }
      for (std::uint32_t g = from; g < generators; ++g) {
        cur.push_back(g);
        self(self, g);
        cur.pop_back();
      }
    };
    rec(rec, 0);
    if (generators == 0) break;
  }
  return out;
}

BruteQuotient brute_quotient(const GeneratorSystem& sys, std::size_t bound) {
  OutcomeOracle oracle(sys);
  BruteQuotient q;
  q.positions = positions_up_to(sys.size(), bound);
  const auto& witnesses = q.positions;
  auto signature = [&](const Position& x) {
    std::vector<bool> sig(witnesses.size());
    for (std::size_t w = 0; w < witnesses.size(); ++w) {
      sig[w] = oracle.outcome(x.plus(witnesses[w])) == Outcome::P;
    }
    return sig;
  };
  std::unordered_map<std::vector<bool>, Elem> index;
  for (const Position& x : q.positions) {
    auto [it, fresh] = index.emplace(signature(x), static_cast<Elem>(q.representatives.size()));
    if (fresh) q.representatives.push_back(x);
    q.class_of.push_back(it->second);
  }
  for (std::uint32_t g = 0; g < sys.size() && bound > 0; ++g) {
    auto it = std::find(q.positions.begin(), q.positions.end(), Position::single(g));
    q.phi.push_back(q.class_of[it - q.positions.begin()]);
  }

  const std::size_t n = q.classes();
  std::vector<Elem> mul(n * n);
  for (Elem a = 0; a < n; ++a) {
    for (Elem b = a; b < n; ++b) {
      auto it = index.find(signature(q.representatives[a].plus(q.representatives[b])));
      if (it == index.end()) return q;
      mul[a * n + b] = mul[b * n + a] = it->second;
    }
  }
  ElementSet p(n);
  for (Elem a = 0; a < n; ++a) {
    if (oracle.outcome(q.representatives[a]) == Outcome::P) p.set(a);
  }
  BipartiteMonoid m(n, std::move(mul), 0, std::move(p));
  try {
    m.validate();
  } catch (const std::invalid_argument&) {
    return q;
  }
  q.monoid = std::move(m);
  return q;
}

std::string CoinTuple::str() const {
  std::ostringstream s;
  s << '(' << i << ',' << j << ',' << k << ',' << l << ',' << m << ')';
  return s.str();
}

CoinSlide::CoinSlide(CoinTuple max) : max_(max) {
  if (max.i < 0 || max.j < 0 || max.k < 0 || max.l < 0 || max.m < 0) {
    throw std::invalid_argument("coin counts must be non-negative");
  }
  // Sliding pushes coins left, so each box must also hold what can arrive.
  dm_ = max.m + 1;
  dl_ = max.l + max.m + 1;
  dk_ = max.k + dl_;
  dj_ = max.j + dk_;
  di_ = max.i + dj_;
  cell_.assign(static_cast<std::size_t>(di_) * dj_ * dk_ * dl_ * dm_, 0);
  auto at = [&](int i, int j, int k, int l, int m) -> std::uint8_t {
    if (i < 0 || j < 0 || k < 0 || l < 0 || m < 0) return 2;  // not a move
    if (i >= di_ || j >= dj_ || k >= dk_ || l >= dl_ || m >= dm_) return 0;
    return cell_[index(i, j, k, l, m)];
  };
  for (int m = 0; m < dm_; ++m) {
    for (int l = 0; l < dl_; ++l) {
      for (int k = 0; k < dk_; ++k) {
        for (int j = 0; j < dj_; ++j) {
          for (int i = 0; i < di_; ++i) {
            std::uint8_t v;
            if (i + j + k + l + m == 0) {
              v = 2;
            } else {
              const std::uint8_t opts[] = {
                  i > 0 ? at(i - 1, j, k, l, m) : std::uint8_t{2},
                  j > 0 ? at(i + 1, j - 1, k, l, m) : std::uint8_t{2},
                  j > 0 ? at(i, j - 1, k, l, m) : std::uint8_t{2},
                  k > 0 ? at(i, j + 1, k - 1, l, m) : std::uint8_t{2},
                  l > 0 ? at(i, j, k + 1, l - 1, m) : std::uint8_t{2},
                  l > 0 ? at(i, j, k, l - 1, m) : std::uint8_t{2},
                  m > 0 ? at(i, j, k, l + 1, m - 1) : std::uint8_t{2},
                  m > 0 ? at(i, j, k, l, m - 1) : std::uint8_t{2},
              };
              bool some_p = false, some_unknown = false;
              for (auto o : opts) {
                some_p |= o == 1;
                some_unknown |= o == 0;
              }
              v = some_p ? 2 : (some_unknown ? 0 : 1);
            }
            cell_[index(i, j, k, l, m)] = v;
          }
        }
      }
    }
  }
}

std::size_t CoinSlide::index(int i, int j, int k, int l, int m) const {
  return (((static_cast<std::size_t>(m) * dl_ + l) * dk_ + k) * dj_ + j) * di_ + i;
}

Outcome CoinSlide::outcome(const CoinTuple& t) const {
  if (t.i < 0 || t.j < 0 || t.k < 0 || t.l < 0 || t.m < 0 || t.i >= di_ ||
      t.j >= dj_ || t.k >= dk_ || t.l >= dl_ || t.m >= dm_) {
    throw std::out_of_range("coin tuple " + t.str() + " outside the table");
  }
  const std::uint8_t v = cell_[index(t.i, t.j, t.k, t.l, t.m)];
  if (v == 0) throw std::out_of_range("coin tuple " + t.str() + " not decided by the table");
  return v == 1 ? Outcome::P : Outcome::N;
}

Outcome coinslide_outcome(int i, int j, int k, int l, int m) {
  return CoinSlide({i, j, k, l, m}).outcome({i, j, k, l, m});
}

std::string coinslide_grid(const CoinSlide& table) {
  std::ostringstream s;
  for (int i = 0; i <= 1; ++i) {
    for (int j = 0; j <= 1; ++j) {
      for (int k = 0; k <= 2; ++k) {
        s << "i=" << i << " j=" << j << " k=" << k << '\n';
        for (int m = 0; m < 18; ++m) {
          for (int l = 0; l < 14; ++l) {
            const bool lo = table.outcome({i, j, k, l, m}) == Outcome::P;
            const bool hi = table.outcome({i, j + 2, k, l, m}) == Outcome::P;
            s << (lo && hi ? '#' : hi ? 'x' : lo ? 'o' : '.');
          }
          s << '\n';
        }
      }
    }
  }
  return s.str();
}

bool CoinSlideReport::all_passed() const {
  return std::all_of(checks.begin(), checks.end(),
                     [](const ClaimCheck& c) { return c.passed; });
}

namespace {

ClaimCheck claim(std::string name) {
  ClaimCheck c;
  c.name = std::move(name);
  return c;
}

void expect(ClaimCheck& c, bool ok, const std::string& what) {
  ++c.cases;
  if (!ok && c.passed) {
    c.passed = false;
    c.counterexample = what;
  }
}

}  // namespace

CoinSlideReport verify_coinslide_claims(const CoinRanges& r) {
  if (r.i < 1 || r.j < 3 || r.k < 3 || r.l < 14 || r.m < 18) {
    throw std::invalid_argument("ranges must cover i<=1, j<=3, k<=3, l<=14, m<=18");
  }
  // j + 2 is needed for the grid glyphs and the B-period check.
  const CoinSlide t({r.i, r.j + 2, r.k, r.l, r.m});
  auto o = [&](int i, int j, int k, int l, int m) { return t.outcome({i, j, k, l, m}); };
  CoinSlideReport rep;

  ClaimCheck parity = claim("k>=3 parity rule");
  for (int i = 0; i <= r.i; ++i)
    for (int j = 0; j <= r.j; ++j)
      for (int k = 3; k <= r.k; ++k)
        for (int l = 0; l <= r.l; ++l)
          for (int m = 0; m <= r.m; ++m) {
            const bool p = (i + l) % 2 == 0 && (j + m) % 2 == 0;
            expect(parity, (o(i, j, k, l, m) == Outcome::P) == p,
                   CoinTuple{i, j, k, l, m}.str());
          }
  rep.checks.push_back(parity);

  ClaimCheck grid = claim("k<=2 grid matches frozen fixture");
  const std::string fresh = coinslide_grid(t);
  expect(grid, fresh == frozen_coinslide_grid(), "regenerated grid differs");
  rep.checks.push_back(grid);

  ClaimCheck bperiod = claim("j>=2: adding 2B keeps the outcome");
  for (int i = 0; i <= r.i; ++i)
    for (int j = 2; j <= r.j; ++j)
      for (int k = 0; k <= r.k; ++k)
        for (int l = 0; l <= r.l; ++l)
          for (int m = 0; m <= r.m; ++m) {
            expect(bperiod, o(i, j, k, l, m) == o(i, j + 2, k, l, m),
                   CoinTuple{i, j, k, l, m}.str());
          }
  rep.checks.push_back(bperiod);

  ClaimCheck dagger = claim("recurrence for l>=4 or m>=12");
  for (int i = 0; i <= r.i; ++i)
    for (int j = 0; j <= r.j; ++j)
      for (int k = 0; k <= r.k; ++k)
        for (int l = 0; l + 2 <= r.l; ++l)
          for (int m = 0; m + 2 <= r.m; ++m) {
            if (l < 4 && m < 12) continue;
            const std::string at = CoinTuple{i, j, k, l, m}.str();
            const Outcome g = o(i, j, k, l, m);
            expect(dagger, o(i, j, k, l + 2, m + 2) == g, at + " +2D+2E");
            if (m < 3) expect(dagger, o(i, j, k, l + 2, m) == g, at + " +2D");
            if (l < 3) expect(dagger, o(i, j, k, l, m + 2) == g, at + " +2E");
          }
  rep.checks.push_back(dagger);

  ClaimCheck diagonal = claim("odd l>=3: lD+mE is P iff m=l+7");
  for (int l = 3; l + 7 <= r.m && l <= r.l; l += 2) {
    for (int m = 0; m <= r.m; ++m) {
      expect(diagonal, (o(0, 0, 0, l, m) == Outcome::P) == (m == l + 7),
             CoinTuple{0, 0, 0, l, m}.str());
    }
  }
  rep.checks.push_back(diagonal);

  ClaimCheck witnesses = claim("(2n+3)D pairwise distinguished by (2n+10)E");
  for (int a = 0; 2 * a + 10 <= r.m && 2 * a + 3 <= r.l; ++a) {
    for (int b = 0; 2 * b + 10 <= r.m && 2 * b + 3 <= r.l; ++b) {
      if (a == b) continue;
      const int w = 2 * a + 10;
      const bool split = o(0, 0, 0, 2 * a + 3, w) != o(0, 0, 0, 2 * b + 3, w);
      expect(witnesses, split,
             std::to_string(2 * a + 3) + "D vs " + std::to_string(2 * b + 3) + "D");
    }
  }
  rep.checks.push_back(witnesses);
  return rep;
}

}  // namespace mq::oracle
