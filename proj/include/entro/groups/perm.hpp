#pragma once

#include <algorithm>
#include <cctype>
#include <map>
#include <numeric>
#include <sstream>
#include <string>
#include <vector>

#include "entro/group.hpp"

namespace entro {

/// Finitary permutations of the positive integers: every element moves only
/// finitely many points. With a support bound n this is the finite symmetric
/// group on {1..n}; without one it is S_fin(N+), which is locally finite but
/// not finitely quasihamiltonian.
///
/// Encoding: the moved points only, as sorted (point, image) pairs.
/// Composition is right-to-left: (a·b)(x) = a(b(x)).
class FinitaryPermGroup final : public Group {
public:
  explicit FinitaryPermGroup(std::optional<unsigned> support_bound = std::nullopt)
      : bound_(support_bound) {
    if (bound_ && *bound_ < 1) throw ConstructionError("finitary_permutations: bound must be >= 1");
    set_identity(make(std::string{}));
  }

  using Mapping = std::map<unsigned, unsigned>;  // moved points -> images

  Mapping decode(const Element& e) const {
    require_owns(e, "perm");
    Mapping m;
    const std::string& p = e.payload;
    for (std::size_t pos = 0; pos + 8 <= p.size(); pos += 8) {
      m.emplace(detail::get_u32(p, pos), detail::get_u32(p, pos + 4));
    }
    return m;
  }

  Element encode(const Mapping& m) const {
    std::string p;
    for (const auto& [pt, img] : m) {
      if (pt == img) continue;  // drop fixed points for canonicity
      if (pt == 0 || img == 0) throw UsageError("perm: points are positive integers");
      if (bound_ && (pt > *bound_ || img > *bound_))
        throw UsageError("perm: point exceeds the support bound");
      detail::put_u32(p, pt);
      detail::put_u32(p, img);
    }
    return make(std::move(p));
  }

  Element from_cycles(const std::vector<std::vector<unsigned>>& cycles) const {
    Mapping m;
    for (const auto& c : cycles) {
      for (std::size_t i = 0; i < c.size(); ++i) {
        unsigned from = c[i], to = c[(i + 1) % c.size()];
        if (m.count(from)) throw UsageError("perm: repeated point in cycle list");
        m[from] = to;
      }
    }
    return encode(m);
  }

  Element transposition(unsigned a, unsigned b) const { return from_cycles({{a, b}}); }

  Element multiply(const Element& a, const Element& b) const override {
    Mapping ma = decode(a), mb = decode(b);
    Mapping out;
    auto apply_a = [&](unsigned x) {
      auto it = ma.find(x);
      return it == ma.end() ? x : it->second;
    };
    for (const auto& [x, bx] : mb) out[x] = apply_a(bx);
    for (const auto& [x, ax] : ma)
      if (!mb.count(x)) out[x] = ax;
    return encode(out);
  }

  Element invert(const Element& a) const override {
    Mapping m = decode(a), out;
    for (const auto& [x, y] : m) out[y] = x;
    return encode(out);
  }

  std::string describe() const override {
    return bound_ ? "S" + std::to_string(*bound_) + " (permutations of {1.." + std::to_string(*bound_) + "})"
                  : "S_fin(N+) (finitary permutations)";
  }

  std::string format(const Element& e) const override {
    Mapping m = decode(e);
    if (m.empty()) return "()";
    std::string out;
    std::map<unsigned, bool> done;
    for (const auto& [start, _] : m) {
      if (done[start]) continue;
      out += "(";
      unsigned x = start;
      bool first = true;
      do {
        if (!first) out += " ";
        out += std::to_string(x);
        done[x] = true;
        x = m.at(x);
        first = false;
      } while (x != start);
      out += ")";
    }
    return out;
  }

  std::optional<Element> parse(const std::string& text) const override {
    std::vector<std::vector<unsigned>> cycles;
    std::size_t i = 0;
    while (i < text.size()) {
      if (std::isspace(static_cast<unsigned char>(text[i]))) { ++i; continue; }
      if (text[i] != '(') return std::nullopt;
      std::size_t close = text.find(')', i);
      if (close == std::string::npos) return std::nullopt;
      std::istringstream ss(text.substr(i + 1, close - i - 1));
      std::vector<unsigned> cyc;
      unsigned v;
      while (ss >> v) cyc.push_back(v);
      if (!cyc.empty()) cycles.push_back(std::move(cyc));
      i = close + 1;
    }
    try {
      return from_cycles(cycles);
    } catch (const UsageError&) {
      return std::nullopt;
    }
  }

  std::optional<std::uint64_t> order() const override {
    if (!bound_) return std::nullopt;
    std::uint64_t f = 1;
    for (unsigned i = 2; i <= *bound_; ++i) f *= i;
    return f;
  }

  std::vector<Element> elements() const override {
    if (!bound_) throw UnsupportedError("S_fin(N+) is infinite");
    std::vector<unsigned> perm(*bound_);
    std::iota(perm.begin(), perm.end(), 1u);
    std::vector<Element> out;
    do {
      Mapping m;
      for (unsigned i = 0; i < *bound_; ++i) m[i + 1] = perm[i];
      out.push_back(encode(m));
    } while (std::next_permutation(perm.begin(), perm.end()));
    return out;
  }

  Element sample(std::mt19937_64& rng) const override {
    unsigned n = bound_ ? *bound_ : 6;  // unbounded group: sample within a small window
    std::vector<unsigned> perm(n);
    std::iota(perm.begin(), perm.end(), 1u);
    std::shuffle(perm.begin(), perm.end(), rng);
    Mapping m;
    for (unsigned i = 0; i < n; ++i) m[i + 1] = perm[i];
    return encode(m);
  }

  std::optional<unsigned> support_bound() const { return bound_; }

private:
  std::optional<unsigned> bound_;
};

}  // namespace entro
