#pragma once

#include <string>
#include <vector>

#include "entro/group.hpp"

namespace entro {

/// Direct product of finitely many groups, componentwise operations.
/// Encoding: for each factor, a u32 length prefix followed by the factor payload.
class DirectProductGroup final : public Group {
public:
  explicit DirectProductGroup(std::vector<Group::Ptr> factors) : factors_(std::move(factors)) {
    if (factors_.empty()) throw ConstructionError("direct_product: needs at least one factor");
    std::vector<Element> ids;
    for (const auto& f : factors_) ids.push_back(f->identity());
    set_identity(encode(ids));
  }

  const std::vector<Group::Ptr>& factors() const { return factors_; }

  std::vector<Element> decode(const Element& e) const {
    require_owns(e, "direct_product");
    std::vector<Element> out;
    out.reserve(factors_.size());
    std::size_t pos = 0;
    for (const auto& f : factors_) {
      std::uint32_t len = detail::get_u32(e.payload, pos);
      pos += 4;
      out.push_back(make_element(e.payload.substr(pos, len), f->tag()));
      pos += len;
    }
    return out;
  }

  Element encode(const std::vector<Element>& parts) const {
    if (parts.size() != factors_.size()) throw UsageError("direct_product: component count mismatch");
    std::string p;
    for (std::size_t i = 0; i < parts.size(); ++i) {
      factors_[i]->require_owns(parts[i], "direct_product");
      detail::put_u32(p, static_cast<std::uint32_t>(parts[i].payload.size()));
      p += parts[i].payload;
    }
    return make(std::move(p));
  }

  Element multiply(const Element& a, const Element& b) const override {
    auto pa = decode(a), pb = decode(b);
    std::vector<Element> out;
    out.reserve(factors_.size());
    for (std::size_t i = 0; i < factors_.size(); ++i) out.push_back(factors_[i]->multiply(pa[i], pb[i]));
    return encode(out);
  }

  Element invert(const Element& a) const override {
    auto pa = decode(a);
    std::vector<Element> out;
    out.reserve(factors_.size());
    for (std::size_t i = 0; i < factors_.size(); ++i) out.push_back(factors_[i]->invert(pa[i]));
    return encode(out);
  }

  std::string describe() const override {
    std::string out;
    for (std::size_t i = 0; i < factors_.size(); ++i) {
      if (i) out += " x ";
      out += factors_[i]->describe();
    }
    return out;
  }

  std::string format(const Element& e) const override {
    auto parts = decode(e);
    std::string out = "<";
    for (std::size_t i = 0; i < parts.size(); ++i) {
      if (i) out += ", ";
      out += factors_[i]->format(parts[i]);
    }
    return out + ">";
  }

  std::optional<std::uint64_t> order() const override {
    std::uint64_t n = 1;
    for (const auto& f : factors_) {
      auto o = f->order();
      if (!o) return std::nullopt;
      n *= *o;
    }
    return n;
  }

  std::vector<Element> elements() const override {
    std::vector<std::vector<Element>> per;
    per.reserve(factors_.size());
    for (const auto& f : factors_) per.push_back(f->elements());
    std::vector<Element> out;
    std::vector<std::size_t> idx(factors_.size(), 0);
    while (true) {
      std::vector<Element> parts;
      parts.reserve(factors_.size());
      for (std::size_t i = 0; i < factors_.size(); ++i) parts.push_back(per[i][idx[i]]);
      out.push_back(encode(parts));
      std::size_t i = 0;
      for (; i < factors_.size(); ++i) {
        if (++idx[i] < per[i].size()) break;
        idx[i] = 0;
      }
      if (i == factors_.size()) break;
    }
    return out;
  }

  Element sample(std::mt19937_64& rng) const override {
    std::vector<Element> parts;
    parts.reserve(factors_.size());
    for (const auto& f : factors_) parts.push_back(f->sample(rng));
    return encode(parts);
  }

private:
  std::vector<Group::Ptr> factors_;
};

}  // namespace entro
