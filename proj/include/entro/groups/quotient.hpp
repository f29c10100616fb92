#pragma once

#include <functional>
#include <string>
#include <unordered_set>
#include <vector>

#include "entro/group.hpp"

namespace entro {

/// G/H presented concretely: elements are canonical coset representatives
/// (chosen by a caller-supplied canonicalize map, constant on cosets), and
/// multiplication is canonicalize(a·b) in the parent group.
class QuotientGroup final : public Group {
public:
  QuotientGroup(Group::Ptr parent, std::function<Element(const Element&)> canonicalize, std::string name)
      : parent_(std::move(parent)), canon_(std::move(canonicalize)), name_(std::move(name)) {
    set_identity(project(parent_->identity()));
  }

  const Group::Ptr& parent() const { return parent_; }

  /// Parent element -> quotient element (the canonical representative, retagged).
  Element project(const Element& g) const {
    parent_->require_owns(g, "quotient projection");
    return with_tag(canon_(g), tag());
  }

  /// Quotient element -> its representative in the parent group.
  Element lift(const Element& q) const {
    require_owns(q, "quotient lift");
    return with_tag(q, parent_->tag());
  }

  Element multiply(const Element& a, const Element& b) const override {
    return project(parent_->multiply(lift(a), lift(b)));
  }

  Element invert(const Element& a) const override { return project(parent_->invert(lift(a))); }

  std::string describe() const override { return parent_->describe() + " / " + name_; }

  std::string format(const Element& e) const override { return "[" + parent_->format(lift(e)) + "]"; }

  std::optional<Element> parse(const std::string& text) const override {
    std::string inner = text;
    if (inner.size() >= 2 && inner.front() == '[' && inner.back() == ']')
      inner = inner.substr(1, inner.size() - 2);
    auto g = parent_->parse(inner);
    if (!g) return std::nullopt;
    return project(*g);
  }

  std::optional<std::uint64_t> order() const override {
    if (!parent_->order()) return std::nullopt;
    if (!order_cache_) order_cache_ = elements().size();
    return order_cache_;
  }

  std::vector<Element> elements() const override {
    std::unordered_set<Element, ElementHash> seen;
    for (const auto& g : parent_->elements()) seen.insert(project(g));
    return std::vector<Element>(seen.begin(), seen.end());
  }

  Element sample(std::mt19937_64& rng) const override { return project(parent_->sample(rng)); }

private:
  Group::Ptr parent_;
  std::function<Element(const Element&)> canon_;
  std::string name_;
  mutable std::optional<std::uint64_t> order_cache_;
};

}  // namespace entro
