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

#include "mq/monoid.hpp"

#include <algorithm>
#include <map>
#include <stdexcept>
#include <unordered_map>

namespace mq {

BipartiteMonoid::BipartiteMonoid() : n_(1), mul_{0}, identity_(0), p_(1) {}

BipartiteMonoid::BipartiteMonoid(std::size_t size, std::vector<Elem> mul,
                                 Elem identity, ElementSet p_set,
                                 std::vector<std::string> names)
    : n_(size), mul_(std::move(mul)), identity_(identity), p_(std::move(p_set)) {
  if (n_ == 0) throw std::invalid_argument("monoid must be nonempty");
  if (mul_.size() != n_ * n_) throw std::invalid_argument("table size mismatch");
  if (identity_ >= n_) throw std::invalid_argument("identity out of range");
  if (p_.universe() != n_) throw std::invalid_argument("P-set universe mismatch");
  set_names(std::move(names));
}

void BipartiteMonoid::set_names(std::vector<std::string> names) {
  if (!names.empty() && names.size() != n_) {
    throw std::invalid_argument("name count mismatch");
  }
  names_ = std::move(names);
}

std::string BipartiteMonoid::name(Elem x) const {
  if (!names_.empty()) return names_[x];
  return "#" + std::to_string(x);
}

Elem BipartiteMonoid::pow(Elem x, std::size_t k) const {
  Elem r = identity_;
  for (std::size_t i = 0; i < k; ++i) r = mul(r, x);
  return r;
}

void BipartiteMonoid::validate() const {
  for (auto v : mul_) {
    if (v >= n_) throw std::invalid_argument("table entry out of range");
  }
  for (Elem x = 0; x < n_; ++x) {
    if (mul(identity_, x) != x || mul(x, identity_) != x) {
      throw std::invalid_argument("identity law fails");
    }
    for (Elem y = x + 1; y < n_; ++y) {
      if (mul(x, y) != mul(y, x)) throw std::invalid_argument("not commutative");
    }
  }
  for (Elem x = 0; x < n_; ++x) {
    for (Elem y = 0; y < n_; ++y) {
      Elem xy = mul(x, y);
      for (Elem z = 0; z < n_; ++z) {
        if (mul(xy, z) != mul(x, mul(y, z))) {
          throw std::invalid_argument("not associative");
        }
      }
    }
  }
}

ElementSet BipartiteMonoid::p_quotient(Elem x) const {
  ElementSet s(n_);
  for (Elem z = 0; z < n_; ++z) {
    if (in_p(mul(x, z))) s.set(z);
  }
  return s;
}

bool is_homomorphism(const BipartiteMonoid& src, const BipartiteMonoid& dst,
                     const std::vector<Elem>& image) {
  if (image.size() != src.size()) return false;
  for (auto v : image) {
    if (v >= dst.size()) return false;
  }
  if (image[src.identity()] != dst.identity()) return false;
  for (Elem x = 0; x < src.size(); ++x) {
    if (src.in_p(x) != dst.in_p(image[x])) return false;
    for (Elem y = x; y < src.size(); ++y) {
      if (image[src.mul(x, y)] != dst.mul(image[x], image[y])) return false;
    }
  }
  return true;
}

bool indistinguishable(const BipartiteMonoid& m, Elem x, Elem y) {
  for (Elem z = 0; z < m.size(); ++z) {
    if (m.in_p(m.mul(x, z)) != m.in_p(m.mul(y, z))) return false;
  }
  return true;
}

namespace {

struct SetHash {
  std::size_t operator()(const ElementSet& s) const noexcept { return s.hash(); }
};

}  // namespace

Reduction reduce(const BipartiteMonoid& m) {
  const std::size_t n = m.size();
  std::unordered_map<ElementSet, Elem, SetHash> classes;
  Reduction r;
  r.projection.resize(n);
  std::vector<Elem> rep;
  for (Elem x = 0; x < n; ++x) {
    auto [it, fresh] = classes.emplace(m.p_quotient(x), static_cast<Elem>(rep.size()));
    if (fresh) rep.push_back(x);
    r.projection[x] = it->second;
  }
  const std::size_t k = rep.size();
  std::vector<Elem> mul(k * k);
  ElementSet p(k);
  std::vector<std::string> names;
  for (Elem i = 0; i < k; ++i) {
    if (m.in_p(rep[i])) p.set(i);
    if (!m.names().empty()) names.push_back(m.name(rep[i]));
    for (Elem j = 0; j < k; ++j) mul[i * k + j] = r.projection[m.mul(rep[i], rep[j])];
  }
  r.monoid = BipartiteMonoid(k, std::move(mul), r.projection[m.identity()],
                             std::move(p), std::move(names));
  return r;
}

bool is_reduced(const BipartiteMonoid& m) { return reduce(m).monoid.size() == m.size(); }

// Isomorphism ----------------------------------------------------------------

namespace {

// Colors from local invariants, refined by the multiset of (color(y),
// color(xy)) over all y. Colors are shared between the two monoids so that
// equal colors mean equal invariants.
void refine_colors(const BipartiteMonoid& m1, const BipartiteMonoid& m2,
                   std::vector<std::uint32_t>& c1, std::vector<std::uint32_t>& c2) {
  auto initial = [](const BipartiteMonoid& m) {
    std::vector<std::vector<std::uint64_t>> keys(m.size());
    std::vector<std::size_t> pq(m.size());
    for (Elem x = 0; x < m.size(); ++x) pq[x] = m.p_quotient(x).count();
    for (Elem x = 0; x < m.size(); ++x) {
      auto per = element_period(m, x);
      std::size_t fixers = 0;
      for (Elem y = 0; y < m.size(); ++y) fixers += m.mul(x, y) == x;
      keys[x] = {m.in_p(x), x == m.identity(), per.preperiod, per.period,
                 pq[x], fixers};
    }
    return keys;
  };
  auto k1 = initial(m1);
  auto k2 = initial(m2);
  std::map<std::vector<std::uint64_t>, std::uint32_t> dict;
  auto assign = [&](const std::vector<std::vector<std::uint64_t>>& keys,
                    std::vector<std::uint32_t>& colors) {
    colors.resize(keys.size());
    for (std::size_t i = 0; i < keys.size(); ++i) {
      auto [it, fresh] = dict.emplace(keys[i], static_cast<std::uint32_t>(dict.size()));
      colors[i] = it->second;
    }
  };
  assign(k1, c1);
  assign(k2, c2);
  std::size_t classes = dict.size();
  for (;;) {
    auto step = [](const BipartiteMonoid& m, const std::vector<std::uint32_t>& c) {
      std::vector<std::vector<std::uint64_t>> keys(m.size());
      for (Elem x = 0; x < m.size(); ++x) {
        std::vector<std::uint64_t> pairs(m.size());
        for (Elem y = 0; y < m.size(); ++y) {
          pairs[y] = (std::uint64_t{c[y]} << 32) | c[m.mul(x, y)];
        }
        std::sort(pairs.begin(), pairs.end());
        keys[x].push_back(c[x]);
        keys[x].insert(keys[x].end(), pairs.begin(), pairs.end());
      }
      return keys;
    };
    auto n1 = step(m1, c1);
    auto n2 = step(m2, c2);
    dict.clear();
    assign(n1, c1);
    assign(n2, c2);
    std::size_t distinct1 = 0;
    {
      std::vector<std::uint32_t> s = c1;
      std::sort(s.begin(), s.end());
      distinct1 = static_cast<std::size_t>(std::unique(s.begin(), s.end()) - s.begin());
    }
    if (distinct1 == classes) break;
    classes = distinct1;
  }
}

class IsoSearch {
 public:
  IsoSearch(const BipartiteMonoid& a, const BipartiteMonoid& b,
            std::vector<std::uint32_t> ca, std::vector<std::uint32_t> cb)
      : a_(a), b_(b), ca_(std::move(ca)), cb_(std::move(cb)),
        img_(a.size(), kUnset), used_(b.size(), 0) {}

  std::optional<std::vector<Elem>> run() {
    choose_generators();
    std::vector<Elem> trail;
    if (!assign(a_.identity(), b_.identity(), trail)) return std::nullopt;
    mapped_.push_back(a_.identity());
    if (search(0)) return img_;
    return std::nullopt;
  }

 private:
  static constexpr Elem kUnset = ~Elem{0};

  void choose_generators() {
    std::map<std::uint32_t, std::size_t> class_size;
    for (auto c : ca_) ++class_size[c];
    std::vector<Elem> order(a_.size());
    for (Elem x = 0; x < a_.size(); ++x) order[x] = x;
    std::stable_sort(order.begin(), order.end(), [&](Elem x, Elem y) {
      return class_size[ca_[x]] < class_size[ca_[y]];
    });
    ElementSet sub = generated(a_, {});
    for (Elem x : order) {
      if (sub.test(x)) continue;
      gens_.push_back(x);
      sub = generated(a_, gens_);
      if (sub.count() == a_.size()) break;
    }
  }

  bool assign(Elem x, Elem y, std::vector<Elem>& trail) {
    if (img_[x] != kUnset) return img_[x] == y;
    if (used_[y] || ca_[x] != cb_[y]) return false;
    img_[x] = y;
    used_[y] = 1;
    trail.push_back(x);
    return true;
  }

  void undo(std::vector<Elem>& trail, std::size_t mapped_size) {
    for (Elem x : trail) {
      used_[img_[x]] = 0;
      img_[x] = kUnset;
    }
    trail.clear();
    mapped_.resize(mapped_size);
  }

  // Closes the partial map under multiplication by generators 0..k.
  bool extend(std::size_t k, std::vector<Elem>& trail) {
    for (std::size_t i = 0; i < mapped_.size(); ++i) {
      Elem x = mapped_[i];
      for (std::size_t j = 0; j <= k; ++j) {
        Elem g = gens_[j];
        Elem xg = a_.mul(x, g);
        Elem target = b_.mul(img_[x], img_[g]);
        bool fresh = img_[xg] == kUnset;
        if (!assign(xg, target, trail)) return false;
        if (fresh) mapped_.push_back(xg);
      }
    }
    return true;
  }

  bool search(std::size_t k) {
    if (k == gens_.size()) return mapped_.size() == a_.size();
    Elem g = gens_[k];
    std::size_t mark = mapped_.size();
    std::vector<Elem> trail;
    if (img_[g] != kUnset) {
      if (extend(k, trail) && search(k + 1)) return true;
      undo(trail, mark);
      return false;
    }
    for (Elem y = 0; y < b_.size(); ++y) {
      if (cb_[y] != ca_[g]) continue;
      if (assign(g, y, trail)) {
        mapped_.push_back(g);
        if (extend(k, trail) && search(k + 1)) return true;
      }
      undo(trail, mark);
    }
    return false;
  }

  const BipartiteMonoid& a_;
  const BipartiteMonoid& b_;
  std::vector<std::uint32_t> ca_, cb_;
  std::vector<Elem> img_;
  std::vector<char> used_;
  std::vector<Elem> gens_;
  std::vector<Elem> mapped_;
};

}  // namespace

std::optional<std::vector<Elem>> is_isomorphic(const BipartiteMonoid& m1,
                                               const BipartiteMonoid& m2) {
  if (m1.size() != m2.size() || m1.p_set().count() != m2.p_set().count()) {
    return std::nullopt;
  }
  std::vector<std::uint32_t> c1, c2;
  refine_colors(m1, m2, c1, c2);
  {
    auto s1 = c1, s2 = c2;
    std::sort(s1.begin(), s1.end());
    std::sort(s2.begin(), s2.end());
    if (s1 != s2) return std::nullopt;
  }
  auto result = IsoSearch(m1, m2, c1, c2).run();
  if (result && !is_homomorphism(m1, m2, *result)) {
    throw std::logic_error("isomorphism search produced a non-homomorphism");
  }
  return result;
}

// Standard constructions -----------------------------------------------------

BipartiteMonoid make_tame(unsigned n) {
  if (n == 0) return BipartiteMonoid();
  if (n == 1) {
    ElementSet p(2);
    p.set(1);
    return BipartiteMonoid(2, {0, 1, 1, 0}, 0, p, {"1", "a"});
  }
  if (n > 20) throw std::invalid_argument("make_tame: n too large");
  // 0 = 1, 1 = a, 2 + mask = kernel element with coordinates `mask` in Z_2^n,
  // where bit 0 is za and bit i (i >= 1) is b_i; mask 0 is z.
  const std::size_t kn = std::size_t{1} << n;
  const std::size_t size = kn + 2;
  std::vector<Elem> mul(size * size);
  auto kel = [](std::size_t mask) { return static_cast<Elem>(2 + mask); };
  for (std::size_t x = 0; x < size; ++x) {
    for (std::size_t y = 0; y < size; ++y) {
      Elem r;
      if (x == 0) {
        r = static_cast<Elem>(y);
      } else if (y == 0) {
        r = static_cast<Elem>(x);
      } else if (x == 1 && y == 1) {
        r = 0;
      } else if (x == 1) {
        r = kel((y - 2) ^ 1);
      } else if (y == 1) {
        r = kel((x - 2) ^ 1);
      } else {
        r = kel((x - 2) ^ (y - 2));
      }
      mul[x * size + y] = r;
    }
  }
  ElementSet p(size);
  p.set(1);
  p.set(kel(0));
  std::vector<std::string> names(size);
  names[0] = "1";
  names[1] = "a";
  auto letters = default_letters(n + 1);
  for (std::size_t mask = 0; mask < kn; ++mask) {
    // z = b^2; za = a b^2; b_i with i >= 1 written with letters b, c, ...
    std::string s = (mask & 1) ? "a" : "";
    int bits = 0;
    for (unsigned i = 1; i < n; ++i) {
      if (mask >> i & 1) {
        s += letters[i];
        ++bits;
      }
    }
    if (bits == 0) s += letters[1] + "2";
    names[kel(mask)] = s;
  }
  return BipartiteMonoid(size, std::move(mul), 0, p, std::move(names));
}

BipartiteMonoid make_r8() {
  struct E {
    int i, j, k;
  };
  std::vector<E> elems;
  for (int k = 0; k < 2; ++k) {
    for (int j = 0; j < 3; ++j) {
      for (int i = 0; i < 2; ++i) {
        if (k == 1 && j > 0) continue;
        elems.push_back({i, j, k});
      }
    }
  }
  auto index = [&](E e) -> Elem {
    for (Elem t = 0; t < elems.size(); ++t) {
      if (elems[t].i == e.i && elems[t].j == e.j && elems[t].k == e.k) return t;
    }
    throw std::logic_error("make_r8: element not found");
  };
  auto normalize = [](E e) {
    e.i %= 2;
    if (e.k == 2) {
      e.k = 0;
      e.j += 2;
    }
    if (e.k == 1 && e.j >= 1) {
      e.i ^= 1;
      e.k = 0;
    }
    while (e.j >= 3) e.j -= 2;
    return e;
  };
  const std::size_t n = elems.size();
  std::vector<Elem> mul(n * n);
  for (Elem x = 0; x < n; ++x) {
    for (Elem y = 0; y < n; ++y) {
      E e{elems[x].i + elems[y].i, elems[x].j + elems[y].j, elems[x].k + elems[y].k};
      mul[x * n + y] = index(normalize(e));
    }
  }
  ElementSet p(n);
  p.set(index({1, 0, 0}));
  p.set(index({0, 2, 0}));
  std::vector<std::string> names;
  for (const E& e : elems) {
    std::string s = e.i ? "a" : "";
    if (e.j == 1) s += "b";
    if (e.j == 2) s += "b2";
    if (e.k == 1) s += "c";
    names.push_back(s.empty() ? "1" : s);
  }
  return BipartiteMonoid(n, std::move(mul), index({0, 0, 0}), p, std::move(names));
}

std::optional<unsigned> tame_index(const BipartiteMonoid& m) {
  const std::size_t s = m.size();
  if (s == 1) return is_isomorphic(m, make_tame(0)) ? std::optional<unsigned>(0) : std::nullopt;
  if (s == 2) return is_isomorphic(m, make_tame(1)) ? std::optional<unsigned>(1) : std::nullopt;
  std::size_t k = s - 2;
  if (k < 4 || (k & (k - 1)) != 0) return std::nullopt;
  unsigned n = 0;
  while ((std::size_t{1} << n) < k) ++n;
  if (is_isomorphic(m, make_tame(n))) return n;
  return std::nullopt;
}

// Kernel and periods ---------------------------------------------------------

std::vector<Elem> idempotents(const BipartiteMonoid& m) {
  std::vector<Elem> out;
  for (Elem x = 0; x < m.size(); ++x) {
    if (m.mul(x, x) == x) out.push_back(x);
  }
  return out;
}

Kernel kernel(const BipartiteMonoid& m) {
  Kernel k;
  k.z = m.identity();
  for (Elem e : idempotents(m)) k.z = m.mul(k.z, e);
  k.elements = ElementSet(m.size());
  for (Elem w = 0; w < m.size(); ++w) {
    Elem x = m.mul(k.z, w);  // z divides x
    if (k.elements.test(x)) continue;
    for (Elem v = 0; v < m.size(); ++v) {
      if (m.mul(x, v) == k.z) {
        k.elements.set(x);
        break;
      }
    }
  }
  return k;
}

ElementPeriod element_period(const BipartiteMonoid& m, Elem x) {
  std::vector<std::size_t> first(m.size(), ~std::size_t{0});
  Elem cur = m.identity();
  for (std::size_t i = 0;; ++i) {
    if (first[cur] != ~std::size_t{0}) return {first[cur], i - first[cur]};
    first[cur] = i;
    cur = m.mul(cur, x);
  }
}

bool is_regular(const BipartiteMonoid& m) {
  Kernel k = kernel(m);
  std::size_t c = 0;
  k.elements.for_each([&](std::size_t x) { c += m.in_p(static_cast<Elem>(x)); });
  return c == 1;
}

bool is_normal(const BipartiteMonoid& m) {
  Kernel k = kernel(m);
  std::size_t c = 0;
  k.elements.for_each([&](std::size_t x) { c += m.in_p(static_cast<Elem>(x)); });
  return c == 1 && m.in_p(k.z);
}

ElementSet generated(const BipartiteMonoid& m, const std::vector<Elem>& gens) {
  ElementSet s(m.size());
  std::vector<Elem> queue{m.identity()};
  s.set(m.identity());
  for (std::size_t i = 0; i < queue.size(); ++i) {
    for (Elem g : gens) {
      Elem y = m.mul(queue[i], g);
      if (!s.test(y)) {
        s.set(y);
        queue.push_back(y);
      }
    }
  }
  return s;
}

Restriction restrict_to(const BipartiteMonoid& m, const ElementSet& sub) {
  Restriction r;
  std::vector<Elem> index(m.size(), ~Elem{0});
  sub.for_each([&](std::size_t x) {
    index[x] = static_cast<Elem>(r.embedding.size());
    r.embedding.push_back(static_cast<Elem>(x));
  });
  const std::size_t k = r.embedding.size();
  if (index[m.identity()] == ~Elem{0}) {
    throw std::invalid_argument("restrict_to: identity missing");
  }
  std::vector<Elem> mul(k * k);
  ElementSet p(k);
  std::vector<std::string> names;
  for (Elem i = 0; i < k; ++i) {
    if (m.in_p(r.embedding[i])) p.set(i);
    if (!m.names().empty()) names.push_back(m.name(r.embedding[i]));
    for (Elem j = 0; j < k; ++j) {
      Elem v = index[m.mul(r.embedding[i], r.embedding[j])];
      if (v == ~Elem{0}) throw std::invalid_argument("restrict_to: not closed");
      mul[i * k + j] = v;
    }
  }
  r.monoid = BipartiteMonoid(k, std::move(mul), index[m.identity()], std::move(p),
                             std::move(names));
  return r;
}

// Presentations --------------------------------------------------------------

std::vector<std::string> default_letters(std::size_t k) {
  std::vector<std::string> out;
  for (std::size_t i = 0; i < k; ++i) {
    if (i < 26) {
      out.emplace_back(1, static_cast<char>('a' + i));
    } else if (i < 52) {
      out.emplace_back(1, static_cast<char>('A' + (i - 26)));
    } else {
      out.push_back("[" + std::to_string(i) + "]");
    }
  }
  return out;
}

std::string word_string(const Word& w, const std::vector<std::string>& letters) {
  std::string s;
  for (std::size_t i = 0; i < w.size(); ++i) {
    if (w[i] == 0) continue;
    s += letters[i];
    if (w[i] > 1) s += std::to_string(w[i]);
  }
  return s.empty() ? "1" : s;
}

namespace {

std::uint32_t degree(const Word& w) {
  std::uint32_t d = 0;
  for (auto e : w) d += e;
  return d;
}

// Degree first; within a degree, larger exponents on earlier letters first.
bool word_less(const Word& a, const Word& b) {
  auto da = degree(a), db = degree(b);
  if (da != db) return da < db;
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (a[i] != b[i]) return a[i] > b[i];
  }
  return false;
}

}  // namespace

Presentation find_relations(const BipartiteMonoid& m, const std::vector<Elem>& gens) {
  const std::size_t k = gens.size();
  const std::size_t n = m.size();
  Presentation pr;
  pr.normal_form.assign(n, Word{});
  std::vector<char> named(n, 0);
  std::map<Word, Elem> normal;  // normal word -> element
  Word one(k, 0);
  named[m.identity()] = 1;
  pr.normal_form[m.identity()] = one;
  normal.emplace(one, m.identity());
  std::vector<Word> layer{one};
  while (!layer.empty()) {
    std::vector<Word> candidates;
    for (const Word& w : layer) {
      for (std::size_t g = 0; g < k; ++g) {
        Word u = w;
        ++u[g];
        candidates.push_back(std::move(u));
      }
    }
    std::sort(candidates.begin(), candidates.end(), word_less);
    candidates.erase(std::unique(candidates.begin(), candidates.end()), candidates.end());
    std::vector<Word> next;
    for (const Word& u : candidates) {
      bool all_normal = true;
      Elem value = 0;
      bool have_value = false;
      for (std::size_t g = 0; g < k && all_normal; ++g) {
        if (u[g] == 0) continue;
        Word v = u;
        --v[g];
        auto it = normal.find(v);
        if (it == normal.end()) {
          all_normal = false;
        } else if (!have_value) {
          value = m.mul(it->second, gens[g]);
          have_value = true;
        }
      }
      if (!all_normal) continue;
      if (!named[value]) {
        named[value] = 1;
        pr.normal_form[value] = u;
        normal.emplace(u, value);
        next.push_back(u);
      } else {
        pr.relations.push_back({u, pr.normal_form[value]});
      }
    }
    layer = std::move(next);
  }
  if (normal.size() != n) {
    throw std::invalid_argument("find_relations: generators do not generate the monoid");
  }
  return pr;
}

}  // namespace mq
