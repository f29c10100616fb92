#pragma once

// Independent oracles for the test suites. These deliberately avoid the
// library's set machinery: raw element vectors, payload-sorted dedup, double
// loops. Expected values asserted in the tests were computed with these.

#include <algorithm>
#include <string>
#include <vector>

#include "entro/group.hpp"
#include "entro/groups/direct_sum.hpp"

namespace oracles {

using entro::Element;
using entro::Group;

inline void sort_dedup(std::vector<Element>& v) {
  std::sort(v.begin(), v.end(), [](const Element& a, const Element& b) { return a.payload < b.payload; });
  v.erase(std::unique(v.begin(), v.end(),
                      [](const Element& a, const Element& b) { return a.payload == b.payload; }),
          v.end());
}

inline bool contains(const std::vector<Element>& v, const Element& e) {
  for (const auto& x : v)
    if (x.payload == e.payload) return true;
  return false;
}

inline std::vector<Element> naive_product(const Group& g, const std::vector<Element>& xs,
                                          const std::vector<Element>& ys) {
  std::vector<Element> out;
  out.reserve(xs.size() * ys.size());
  for (const auto& a : xs)
    for (const auto& b : ys) out.push_back(g.multiply(a, b));
  sort_dedup(out);
  return out;
}

/// T_n(phi, X) = X phi(X) ... phi^{n-1}(X) by direct expansion.
inline std::vector<Element> naive_trajectory(const Group& g,
                                             const std::function<Element(const Element&)>& phi,
                                             const std::vector<Element>& x, unsigned n) {
  std::vector<Element> t{g.identity()};
  std::vector<Element> img = x;
  for (unsigned k = 0; k < n; ++k) {
    t = naive_product(g, t, img);
    std::vector<Element> next;
    next.reserve(img.size());
    for (const auto& e : img) next.push_back(phi(e));
    sort_dedup(next);
    img = std::move(next);
  }
  return t;
}

/// #{xB : x in X} by pairwise equivalence x ~ y iff x^{-1} y in B.
inline std::size_t naive_coset_count(const Group& g, const std::vector<Element>& xs,
                                     const std::vector<Element>& bs) {
  std::vector<Element> reps;
  for (const auto& x : xs) {
    bool seen = false;
    for (const auto& r : reps) {
      if (contains(bs, g.multiply(g.invert(r), x))) {
        seen = true;
        break;
      }
    }
    if (!seen) reps.push_back(x);
  }
  return reps.size();
}

/// Subgroup closure by repeated full pairwise products and inversions.
inline std::vector<Element> naive_closure(const Group& g, std::vector<Element> gens, std::size_t cap) {
  gens.push_back(g.identity());
  sort_dedup(gens);
  while (true) {
    std::vector<Element> next = gens;
    for (const auto& a : gens) next.push_back(g.invert(a));
    for (const auto& a : gens)
      for (const auto& b : gens) next.push_back(g.multiply(a, b));
    sort_dedup(next);
    if (next.size() == gens.size()) return next;
    if (next.size() > cap) throw std::runtime_error("naive_closure: cap exceeded");
    gens = std::move(next);
  }
}

/// All m^k dense tuples on coordinates 0..k-1 of Z_m^(N): the independent
/// enumeration behind the Bernoulli-shift expectations |T_k| = m^k.
inline std::vector<Element> dense_tuples(const entro::DirectSumGroup& g, unsigned k) {
  const unsigned m = g.base_order();
  std::vector<Element> out;
  std::vector<unsigned> digits(k, 0);
  while (true) {
    entro::DirectSumGroup::Coords c;
    for (unsigned i = 0; i < k; ++i)
      if (digits[i]) c.emplace_back(static_cast<std::int32_t>(i), static_cast<std::uint8_t>(digits[i]));
    out.push_back(g.encode(c));
    unsigned i = 0;
    for (; i < k; ++i) {
      if (++digits[i] < m) break;
      digits[i] = 0;
    }
    if (i == k) break;
  }
  sort_dedup(out);
  return out;
}

/// Word balls by breadth-first search over the Cayley graph: |B_d| for
/// d = 0..radius. The generator list should contain the identity's neighbours
/// (inverses included by the caller when needed).
inline std::vector<std::size_t> bfs_ball_sizes(const Group& g, const std::vector<Element>& gens,
                                               unsigned radius) {
  std::vector<Element> ball{g.identity()};
  std::vector<Element> frontier = ball;
  std::vector<std::size_t> sizes{1};
  for (unsigned d = 1; d <= radius; ++d) {
    std::vector<Element> next;
    for (const auto& w : frontier)
      for (const auto& s : gens) next.push_back(g.multiply(w, s));
    sort_dedup(next);
    std::vector<Element> fresh;
    for (const auto& e : next)
      if (!contains(ball, e)) fresh.push_back(e);
    ball.insert(ball.end(), fresh.begin(), fresh.end());
    sort_dedup(ball);
    sizes.push_back(ball.size());
    frontier = std::move(fresh);
  }
  return sizes;
}

}  // namespace oracles
