#pragma once

#include <atomic>
#include <memory>
#include <optional>
#include <random>
#include <string>
#include <vector>

#include "entro/core.hpp"

namespace entro {

/// An ambient group presented as an oracle: identity, multiply, invert and
/// decidable equality on finitely encoded elements. Instances are immutable
/// and freely shareable; every element carries the tag of its owner.
class Group {
public:
  using Ptr = std::shared_ptr<const Group>;

  virtual ~Group() = default;

  std::uint32_t tag() const { return tag_; }
  const Element& identity() const { return identity_; }

  virtual Element multiply(const Element& a, const Element& b) const = 0;
  virtual Element invert(const Element& a) const = 0;

  /// Human-readable construction record.
  virtual std::string describe() const = 0;

  /// Pretty-print an element (cycle notation for permutations, etc.).
  virtual std::string format(const Element& e) const = 0;

  /// Parse the format produced by format(); nullopt on failure.
  virtual std::optional<Element> parse(const std::string& text) const { (void)text; return std::nullopt; }

  /// Group order when finite and known.
  virtual std::optional<std::uint64_t> order() const { return std::nullopt; }

  /// Full element list; only for finite, enumerable groups.
  virtual std::vector<Element> elements() const {
    throw UnsupportedError("group '" + describe() + "' is not enumerable");
  }

  /// A random element, used by property suites. Deterministic given the rng state.
  virtual Element sample(std::mt19937_64& rng) const = 0;

  bool owns(const Element& e) const { return e.group_tag == tag_; }

  void require_owns(const Element& e, const char* where) const {
    if (!owns(e)) throw UsageError(std::string(where) + ": element belongs to a different group");
  }

protected:
  Group() : tag_(next_tag()) {}

  Element make(std::string payload) const { return make_element(std::move(payload), tag_); }

  void set_identity(Element e) { identity_ = std::move(e); }

  static std::uint32_t next_tag() {
    static std::atomic<std::uint32_t> counter{1};
    return counter.fetch_add(1);
  }

private:
  std::uint32_t tag_;
  Element identity_;
};

}  // namespace entro
