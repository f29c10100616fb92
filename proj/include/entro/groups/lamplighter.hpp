#pragma once

#include <algorithm>
#include <string>
#include <utility>
#include <vector>

#include "entro/group.hpp"

namespace entro {

/// The lamplighter-style wreath product Z_b^(Z) ⋊ Z: pairs (f, k) of a
/// finitely supported lamp configuration and an integer shift, with
/// (f, k)(g, l) = (f + shift_k(g), k + l). Not locally finite: (0, 1) has
/// infinite order. The classical counterexample to additivity lives here
/// with b = 2.
///
/// Encoding: int32 shift, then sorted (int32 index, uint8 value) lamp records.
class LamplighterGroup final : public Group {
public:
  explicit LamplighterGroup(unsigned base_order = 2) : b_(base_order) {
    if (b_ < 2 || b_ > 255) throw ConstructionError("lamplighter: base order must be in [2,255]");
    std::string id;
    detail::put_i32(id, 0);
    set_identity(make(std::move(id)));
  }

  unsigned base_order() const { return b_; }

  struct Parts {
    std::int32_t shift = 0;
    std::vector<std::pair<std::int32_t, std::uint8_t>> lamps;  // sorted by index, values in 1..b-1
  };

  Parts decode(const Element& e) const {
    require_owns(e, "lamplighter");
    Parts p;
    p.shift = detail::get_i32(e.payload, 0);
    for (std::size_t pos = 4; pos + 5 <= e.payload.size(); pos += 5)
      p.lamps.emplace_back(detail::get_i32(e.payload, pos), detail::get_u8(e.payload, pos + 4));
    return p;
  }

  Element encode(const Parts& p) const {
    std::string out;
    detail::put_i32(out, p.shift);
    for (const auto& [idx, val] : p.lamps) {
      if (val == 0 || val >= b_) throw UsageError("lamplighter: lamp value out of range");
      detail::put_i32(out, idx);
      detail::put_u8(out, val);
    }
    return make(std::move(out));
  }

  Element shift_element(std::int32_t k) const {
    Parts p;
    p.shift = k;
    return encode(p);
  }

  Element lamp(std::int32_t idx, unsigned val = 1) const {
    Parts p;
    val %= b_;
    if (val) p.lamps.emplace_back(idx, static_cast<std::uint8_t>(val));
    return encode(p);
  }

  Element multiply(const Element& a, const Element& bb) const override {
    Parts pa = decode(a), pb = decode(bb);
    // f + shift_k(g): lamp i of g lands at i + k
    Parts out;
    out.shift = pa.shift + pb.shift;
    out.lamps.reserve(pa.lamps.size() + pb.lamps.size());
    std::size_t i = 0, j = 0;
    while (i < pa.lamps.size() || j < pb.lamps.size()) {
      std::int32_t ia = i < pa.lamps.size() ? pa.lamps[i].first : INT32_MAX;
      std::int32_t jb = j < pb.lamps.size() ? pb.lamps[j].first + pa.shift : INT32_MAX;
      if (ia < jb) {
        out.lamps.push_back(pa.lamps[i++]);
      } else if (jb < ia) {
        out.lamps.emplace_back(jb, pb.lamps[j++].second);
      } else {
        unsigned v = (pa.lamps[i].second + pb.lamps[j].second) % b_;
        if (v) out.lamps.emplace_back(ia, static_cast<std::uint8_t>(v));
        ++i;
        ++j;
      }
    }
    return encode(out);
  }

  Element invert(const Element& a) const override {
    Parts pa = decode(a);
    Parts out;
    out.shift = -pa.shift;
    out.lamps.reserve(pa.lamps.size());
    for (const auto& [idx, val] : pa.lamps)
      out.lamps.emplace_back(idx - pa.shift, static_cast<std::uint8_t>((b_ - val) % b_));
    return encode(out);
  }

  std::string describe() const override {
    return "Z" + std::to_string(b_) + "^(Z) x| Z (lamplighter)";
  }

  std::string format(const Element& e) const override {
    Parts p = decode(e);
    std::string out = "(";
    if (p.lamps.empty()) out += "0";
    for (std::size_t i = 0; i < p.lamps.size(); ++i) {
      if (i) out += "+";
      out += std::to_string(unsigned(p.lamps[i].second)) + "e" + std::to_string(p.lamps[i].first);
    }
    out += "; t^" + std::to_string(p.shift) + ")";
    return out;
  }

  Element sample(std::mt19937_64& rng) const override {
    std::uniform_int_distribution<std::int32_t> sh(-2, 2), idx(-3, 3);
    std::uniform_int_distribution<unsigned> nv(0, 2), val(1, b_ - 1);
    Parts p;
    p.shift = sh(rng);
    unsigned n = nv(rng);
    for (unsigned i = 0; i < n; ++i) {
      std::int32_t k = idx(rng);
      bool dup = false;
      for (auto& [existing, _] : p.lamps) dup |= (existing == k);
      if (!dup) p.lamps.emplace_back(k, static_cast<std::uint8_t>(val(rng)));
    }
    std::sort(p.lamps.begin(), p.lamps.end());
    return encode(p);
  }

private:
  unsigned b_;
};

}  // namespace entro
