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

// Small shared helpers for the unit tests.

#ifndef MQ_TESTS_HELPERS_HPP_
#define MQ_TESTS_HELPERS_HPP_

#include <algorithm>
#include <numeric>
#include <random>
#include <stdexcept>
#include <string>
#include <vector>

#include "mq/monoid.hpp"

namespace mq::test {

/// Element of m whose display name is `name`.
inline Elem named(const BipartiteMonoid& m, const std::string& name) {
  for (Elem x = 0; x < m.size(); ++x) {
    if (m.name(x) == name) return x;
  }
  throw std::out_of_range("no element named " + name);
}

inline ElementSet set_of(const BipartiteMonoid& m, const std::vector<std::string>& names) {
  ElementSet s(m.size());
  for (const auto& n : names) s.set(named(m, n));
  return s;
}

/// The same monoid with elements renumbered by `perm` (old -> new).
inline BipartiteMonoid permuted(const BipartiteMonoid& m, const std::vector<Elem>& perm) {
  const std::size_t n = m.size();
  std::vector<Elem> mul(n * n);
  ElementSet p(n);
  std::vector<std::string> names(n);
  for (Elem x = 0; x < n; ++x) {
    if (m.in_p(x)) p.set(perm[x]);
    names[perm[x]] = m.name(x);
    for (Elem y = 0; y < n; ++y) mul[perm[x] * n + perm[y]] = perm[m.mul(x, y)];
  }
  return BipartiteMonoid(n, std::move(mul), perm[m.identity()], std::move(p), std::move(names));
}

inline std::vector<Elem> random_permutation(std::size_t n, std::mt19937& rng) {
  std::vector<Elem> perm(n);
  std::iota(perm.begin(), perm.end(), Elem{0});
  std::shuffle(perm.begin(), perm.end(), rng);
  return perm;
}

/// Direct product m x c with P pulled back from m, so the projection onto m is
/// a surjective homomorphism.
inline BipartiteMonoid product_pullback(const BipartiteMonoid& m, const BipartiteMonoid& c) {
  const std::size_t a = m.size(), b = c.size(), n = a * b;
  std::vector<Elem> mul(n * n);
  ElementSet p(n);
  for (Elem x = 0; x < n; ++x) {
    if (m.in_p(x / b)) p.set(x);
    for (Elem y = 0; y < n; ++y) {
      mul[x * n + y] = m.mul(x / b, y / b) * b + c.mul(x % b, y % b);
    }
  }
  return BipartiteMonoid(n, std::move(mul), m.identity() * b + c.identity(), std::move(p));
}

/// The cyclic monoid <x | x^(i+p) = x^i> with the given P.
inline BipartiteMonoid cyclic(std::size_t index, std::size_t period, const std::vector<Elem>& p) {
  const std::size_t n = index + period;
  auto norm = [&](std::size_t e) { return e < n ? e : index + (e - index) % period; };
  std::vector<Elem> mul(n * n);
  for (std::size_t x = 0; x < n; ++x) {
    for (std::size_t y = 0; y < n; ++y) mul[x * n + y] = static_cast<Elem>(norm(x + y));
  }
  ElementSet ps(n);
  for (Elem x : p) ps.set(x);
  return BipartiteMonoid(n, std::move(mul), 0, std::move(ps));
}

}  // namespace mq::test

#endif  // MQ_TESTS_HELPERS_HPP_
