#pragma once

#include <algorithm>
#include <cstring>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "entro/group.hpp"

namespace entro {

enum class IndexSet { Naturals, Integers };

/// Restricted direct sum Z_m^(I) with I = N or Z: finitely supported
/// sequences of residues mod m under coordinatewise addition.
///
/// Encoding: sorted sparse (int32 index, uint8 value) records, zero values
/// omitted, which makes equality and fingerprints canonical.
class DirectSumGroup final : public Group {
public:
  DirectSumGroup(unsigned base_order, IndexSet index)
      : m_(base_order), index_(index) {
    if (m_ < 2 || m_ > 255) throw ConstructionError("restricted_direct_sum: base order must be in [2,255]");
    set_identity(make(std::string{}));
  }

  unsigned base_order() const { return m_; }
  IndexSet index_set() const { return index_; }

  using Coords = std::vector<std::pair<std::int32_t, std::uint8_t>>;  // sorted by index

  Coords decode(const Element& e) const {
    require_owns(e, "direct_sum");
    Coords c;
    const std::string& p = e.payload;
    c.reserve(p.size() / 5);
    for (std::size_t pos = 0; pos + 5 <= p.size(); pos += 5) {
      c.emplace_back(detail::get_i32(p, pos), detail::get_u8(p, pos + 4));
    }
    return c;
  }

  Element encode(const Coords& sorted_nonzero) const {
    std::string p;
    p.reserve(sorted_nonzero.size() * 5);
    for (const auto& [idx, val] : sorted_nonzero) {
      if (val == 0 || val >= m_) throw UsageError("direct_sum: value out of range");
      if (index_ == IndexSet::Naturals && idx < 0)
        throw UsageError("direct_sum: negative index in Z_m^(N)");
      detail::put_i32(p, idx);
      detail::put_u8(p, val);
    }
    return make(std::move(p));
  }

  /// Single-coordinate element idx -> val.
  Element unit(std::int32_t idx, unsigned val) const {
    val %= m_;
    if (val == 0) return identity();
    return encode({{idx, static_cast<std::uint8_t>(val)}});
  }

  Element multiply(const Element& a, const Element& b) const override {
    // merge two sorted sparse vectors, adding values mod m; assembled in a
    // stack buffer so each product costs one allocation
    require_owns(a, "direct_sum");
    require_owns(b, "direct_sum");
    const std::string& pa = a.payload;
    const std::string& pb = b.payload;
    char stack[320];
    const bool small = pa.size() + pb.size() <= sizeof(stack);
    std::string heap;
    char* out = stack;
    if (!small) {
      heap.resize(pa.size() + pb.size());
      out = heap.data();
    }
    std::size_t i = 0, j = 0, w = 0;
    while (i < pa.size() || j < pb.size()) {
      if (j >= pb.size() || (i < pa.size() && detail::get_i32(pa, i) < detail::get_i32(pb, j))) {
        std::memcpy(out + w, pa.data() + i, 5);
        w += 5;
        i += 5;
      } else if (i >= pa.size() || detail::get_i32(pb, j) < detail::get_i32(pa, i)) {
        std::memcpy(out + w, pb.data() + j, 5);
        w += 5;
        j += 5;
      } else {
        unsigned v = (detail::get_u8(pa, i + 4) + detail::get_u8(pb, j + 4)) % m_;
        if (v != 0) {
          std::memcpy(out + w, pa.data() + i, 4);
          out[w + 4] = static_cast<char>(v);
          w += 5;
        }
        i += 5;
        j += 5;
      }
    }
    if (small) return make(std::string(out, w));
    heap.resize(w);
    return make(std::move(heap));
  }

  Element invert(const Element& a) const override {
    Coords c = decode(a);
    for (auto& [idx, val] : c) val = static_cast<std::uint8_t>((m_ - val) % m_);
    return encode(c);
  }

  std::string describe() const override {
    return "Z" + std::to_string(m_) + (index_ == IndexSet::Naturals ? "^(N)" : "^(Z)");
  }

  std::string format(const Element& e) const override {
    Coords c = decode(e);
    if (c.empty()) return "0";
    std::string out;
    for (std::size_t i = 0; i < c.size(); ++i) {
      if (i) out += "+";
      out += std::to_string(unsigned(c[i].second)) + "e" + std::to_string(c[i].first);
    }
    return out;
  }

  std::optional<Element> parse(const std::string& text) const override {
    if (text == "0") return identity();
    Coords c;
    std::istringstream ss(text);
    std::string term;
    while (std::getline(ss, term, '+')) {
      auto epos = term.find('e');
      if (epos == std::string::npos) return std::nullopt;
      try {
        unsigned val = static_cast<unsigned>(std::stoul(term.substr(0, epos)));
        std::int32_t idx = static_cast<std::int32_t>(std::stol(term.substr(epos + 1)));
        if (val % m_ == 0) continue;
        c.emplace_back(idx, static_cast<std::uint8_t>(val % m_));
      } catch (...) {
        return std::nullopt;
      }
    }
    std::sort(c.begin(), c.end());
    try {
      return encode(c);
    } catch (const UsageError&) {
      return std::nullopt;
    }
  }

  Element sample(std::mt19937_64& rng) const override {
    // finite support within a small window of coordinates
    std::uniform_int_distribution<int> nsup(0, 3);
    std::uniform_int_distribution<std::int32_t> idx(index_ == IndexSet::Naturals ? 0 : -4, 4);
    std::uniform_int_distribution<unsigned> val(1, m_ - 1);
    Coords c;
    int n = nsup(rng);
    for (int i = 0; i < n; ++i) {
      std::int32_t k = idx(rng);
      bool dup = false;
      for (auto& [existing, _] : c) dup |= (existing == k);
      if (!dup) c.emplace_back(k, static_cast<std::uint8_t>(val(rng)));
    }
    std::sort(c.begin(), c.end());
    return encode(c);
  }

private:
  unsigned m_;
  IndexSet index_;
};

}  // namespace entro
