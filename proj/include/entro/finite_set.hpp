#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <functional>
#include <string>
#include <unordered_set>
#include <utility>
#include <vector>

#include "entro/core.hpp"
#include "entro/group.hpp"

namespace entro {

inline constexpr std::size_t kDefaultMaxSize = std::size_t{1} << 20;

/// A non-empty, duplicate-free finite subset of one ambient group.
/// Elements are kept in the canonical (fingerprint, payload) order, so
/// equality, membership and set fingerprints are all exact and cheap.
class FiniteSubset {
public:
  FiniteSubset(Group::Ptr group, std::vector<Element> elems) : group_(std::move(group)) {
    if (!group_) throw UsageError("FiniteSubset: null group");
    if (elems.empty()) throw UsageError("FiniteSubset: empty sets are rejected");
    for (const auto& e : elems) group_->require_owns(e, "FiniteSubset");
    std::sort(elems.begin(), elems.end());
    elems.erase(std::unique(elems.begin(), elems.end()), elems.end());
    elems_ = std::move(elems);
  }

  static FiniteSubset singleton(const Group::Ptr& group, Element e) {
    return FiniteSubset(group, {std::move(e)});
  }

  static FiniteSubset identity_of(const Group::Ptr& group) {
    return singleton(group, group->identity());
  }

  const Group::Ptr& group() const { return group_; }
  std::size_t size() const { return elems_.size(); }
  const std::vector<Element>& elements() const { return elems_; }

  bool contains(const Element& e) const {
    auto it = std::lower_bound(elems_.begin(), elems_.end(), e);
    return it != elems_.end() && *it == e;
  }

  bool contains_identity() const { return contains(group_->identity()); }

  FiniteSubset with_identity() const {
    if (contains_identity()) return *this;
    auto elems = elems_;
    elems.push_back(group_->identity());
    return FiniteSubset(group_, std::move(elems));
  }

  std::uint64_t set_fingerprint() const {
    std::uint64_t h = detail::mix64(elems_.size());
    for (const auto& e : elems_) h = detail::mix64(h ^ e.fingerprint);
    return h;
  }

  friend bool operator==(const FiniteSubset& a, const FiniteSubset& b) {
    return a.group_->tag() == b.group_->tag() && a.elems_ == b.elems_;
  }
  friend bool operator!=(const FiniteSubset& a, const FiniteSubset& b) { return !(a == b); }

private:
  Group::Ptr group_;
  std::vector<Element> elems_;
};

/// True iff 1 ∈ X and X is closed under multiplication and inversion.
/// Exhaustive; meant for desk-scale sets.
inline bool is_subgroup(const FiniteSubset& x) {
  if (!x.contains_identity()) return false;
  const auto& g = *x.group();
  for (const auto& a : x.elements()) {
    if (!x.contains(g.invert(a))) return false;
  }
  for (const auto& a : x.elements()) {
    for (const auto& b : x.elements()) {
      if (!x.contains(g.multiply(a, b))) return false;
    }
  }
  return true;
}

/// is_subgroup with the quadratic closure sweep capped: exhaustive up to
/// `exhaustive_cap` elements, randomized product sampling beyond (identity
/// and inverse checks stay exhaustive). Large trajectory stages are checked
/// this way where closure is already guaranteed by theory.
inline bool is_subgroup_capped(const FiniteSubset& x, std::size_t exhaustive_cap = 4096,
                               std::size_t samples = 4096, std::uint64_t seed = 0x5eedull) {
  if (x.size() <= exhaustive_cap) return is_subgroup(x);
  if (!x.contains_identity()) return false;
  const auto& g = *x.group();
  for (const auto& a : x.elements())
    if (!x.contains(g.invert(a))) return false;
  std::mt19937_64 rng(seed ^ x.set_fingerprint());
  std::uniform_int_distribution<std::size_t> pick(0, x.size() - 1);
  for (std::size_t i = 0; i < samples; ++i) {
    const Element& a = x.elements()[pick(rng)];
    const Element& b = x.elements()[pick(rng)];
    if (!x.contains(g.multiply(a, b))) return false;
  }
  return true;
}

/// A finite subset verified (or constructed) to be a subgroup.
class FiniteSubgroup {
public:
  /// Verifies closure exhaustively; throws UsageError when X is not a subgroup.
  explicit FiniteSubgroup(FiniteSubset set) : set_(std::move(set)) {
    if (!is_subgroup(set_)) throw UsageError("FiniteSubgroup: set is not closed");
  }

  /// For sets whose closure is guaranteed by construction (e.g. closure output).
  struct AlreadyClosed {};
  FiniteSubgroup(FiniteSubset set, AlreadyClosed) : set_(std::move(set)) {}

  static FiniteSubgroup trivial(const Group::Ptr& group) {
    return FiniteSubgroup(FiniteSubset::identity_of(group), AlreadyClosed{});
  }

  const FiniteSubset& set() const { return set_; }
  const Group::Ptr& group() const { return set_.group(); }
  std::size_t size() const { return set_.size(); }
  const std::vector<Element>& elements() const { return set_.elements(); }
  bool contains(const Element& e) const { return set_.contains(e); }
  bool verified_closed() const { return true; }

  friend bool operator==(const FiniteSubgroup& a, const FiniteSubgroup& b) { return a.set_ == b.set_; }
  friend bool operator!=(const FiniteSubgroup& a, const FiniteSubgroup& b) { return !(a == b); }

private:
  FiniteSubset set_;
};

namespace detail {

/// Open-addressing dedup buffer for large set products: elements live in one
/// contiguous vector, the probe table holds indices. Avoids the per-node
/// allocations of unordered_set on the hot path.
class DedupBuffer {
public:
  explicit DedupBuffer(std::size_t expected = 16) { rehash(slot_count_for(expected)); }

  bool insert(Element&& e) {
    if ((elems_.size() + 1) * 2 > slots_.size()) rehash(slots_.size() * 2);
    std::size_t i = static_cast<std::size_t>(e.fingerprint) & mask_;
    while (slots_[i] != 0) {
      const Element& existing = elems_[slots_[i] - 1];
      if (existing.fingerprint == e.fingerprint && existing.payload == e.payload) return false;
      i = (i + 1) & mask_;
    }
    elems_.push_back(std::move(e));
    slots_[i] = static_cast<std::uint32_t>(elems_.size());
    return true;
  }

  std::size_t size() const { return elems_.size(); }
  std::vector<Element> take() { return std::move(elems_); }

private:
  static std::size_t slot_count_for(std::size_t expected) {
    std::size_t n = 32;
    while (n < expected * 2) n <<= 1;
    return n;
  }

  void rehash(std::size_t n) {
    slots_.assign(n, 0);
    mask_ = n - 1;
    for (std::size_t k = 0; k < elems_.size(); ++k) {
      std::size_t i = static_cast<std::size_t>(elems_[k].fingerprint) & mask_;
      while (slots_[i] != 0) i = (i + 1) & mask_;
      slots_[i] = static_cast<std::uint32_t>(k + 1);
    }
  }

  std::vector<Element> elems_;
  std::vector<std::uint32_t> slots_;
  std::size_t mask_ = 0;
};

}  // namespace detail

/// {xy | x ∈ X, y ∈ Y}, deduplicated. |XY| ≤ |X||Y|; throws BudgetExceeded
/// when the result would outgrow max_size.
inline FiniteSubset multiply_sets(const FiniteSubset& x, const FiniteSubset& y,
                                  std::size_t max_size = kDefaultMaxSize) {
  if (x.group()->tag() != y.group()->tag())
    throw UsageError("multiply_sets: operands belong to different groups");
  const auto& g = *x.group();
  detail::DedupBuffer seen(std::min(max_size, x.size() * y.size()));
  for (const auto& a : x.elements()) {
    for (const auto& b : y.elements()) {
      seen.insert(g.multiply(a, b));
      if (seen.size() > max_size)
        throw BudgetExceeded("multiply_sets: product exceeds max_size", max_size);
    }
  }
  return FiniteSubset(x.group(), seen.take());
}

inline FiniteSubset apply_map_to_set(const FiniteSubset& x,
                                     const std::function<Element(const Element&)>& f) {
  std::vector<Element> out;
  out.reserve(x.size());
  for (const auto& e : x.elements()) out.push_back(f(e));
  return FiniteSubset(x.group(), std::move(out));
}

/// Smallest subgroup containing S: closure under multiplication by the
/// generators and their inverses, identity adjoined. Terminates whenever the
/// generated subgroup is finite; otherwise hits the max_size budget
/// (signalling a non-locally-finite ambient group or a too-small budget).
inline FiniteSubgroup subgroup_generate(const FiniteSubset& s, std::size_t max_size = kDefaultMaxSize) {
  const auto& g = *s.group();
  std::vector<Element> gens;
  for (const auto& e : s.elements()) {
    gens.push_back(e);
    gens.push_back(g.invert(e));
  }
  std::sort(gens.begin(), gens.end());
  gens.erase(std::unique(gens.begin(), gens.end()), gens.end());

  std::unordered_set<Element, ElementHash> seen;
  std::vector<Element> frontier{g.identity()};
  seen.insert(g.identity());
  while (!frontier.empty()) {
    std::vector<Element> next;
    for (const auto& w : frontier) {
      for (const auto& gen : gens) {
        Element p = g.multiply(w, gen);
        if (seen.insert(p).second) {
          if (seen.size() > max_size)
            throw BudgetExceeded("subgroup_generate: closure exceeds max_size", max_size);
          next.push_back(std::move(p));
        }
      }
    }
    frontier = std::move(next);
  }
  std::vector<Element> out(seen.begin(), seen.end());
  return FiniteSubgroup(FiniteSubset(s.group(), std::move(out)), FiniteSubgroup::AlreadyClosed{});
}

/// ℓ(X) = log|X| in nats.
inline double ell(const FiniteSubset& x) { return std::log(static_cast<double>(x.size())); }

inline double ell(const FiniteSubgroup& b) { return ell(b.set()); }

/// Number of distinct left cosets {xB | x ∈ X}, counted exactly via the
/// minimum-element representative of each coset in the (fingerprint, payload)
/// order. [XB : B] as an integer.
inline std::size_t coset_count(const FiniteSubset& x, const FiniteSubgroup& b) {
  if (x.group()->tag() != b.group()->tag())
    throw UsageError("coset_count: operands belong to different groups");
  const auto& g = *x.group();
  std::unordered_set<Element, ElementHash> reps;
  reps.reserve(x.size() * 2);
  for (const auto& a : x.elements()) {
    Element best = g.multiply(a, b.elements().front());
    for (std::size_t i = 1; i < b.size(); ++i) {
      Element c = g.multiply(a, b.elements()[i]);
      if (c < best) best = std::move(c);
    }
    reps.insert(std::move(best));
  }
  return reps.size();
}

/// ℓ(X, B) = log [XB : B] in nats.
inline double ell_rel(const FiniteSubset& x, const FiniteSubgroup& b) {
  return std::log(static_cast<double>(coset_count(x, b)));
}

}  // namespace entro
