#pragma once

#include <numeric>
#include <sstream>
#include <string>
#include <vector>

#include "entro/group.hpp"

namespace entro {

/// Z_m^k ⋊_α Z_q with α(x)(a) = e^x · a coordinatewise. Multiplication is
/// (a, x)(b, y) = (a + α(x)(b), x + y). The action exponent e must be a unit
/// mod m with e^q ≡ 1 (mod m), so α is an action by automorphisms.
///
/// The catalog's H_k groups are instances with m = 9, e = 4, q = 3.
///
/// Encoding: k bytes of base values followed by one actor byte.
class SemidirectGroup final : public Group {
public:
  SemidirectGroup(unsigned base_order, unsigned base_rank, unsigned actor_order, unsigned action_exponent)
      : m_(base_order), k_(base_rank), q_(actor_order), e_(action_exponent % base_order) {
    if (m_ < 2 || m_ > 255) throw ConstructionError("semidirect: base order must be in [2,255]");
    if (k_ < 1 || k_ > 16) throw ConstructionError("semidirect: base rank must be in [1,16]");
    if (q_ < 1 || q_ > 255) throw ConstructionError("semidirect: actor order must be in [1,255]");
    if (std::gcd(e_, m_) != 1)
      throw ConstructionError("semidirect: action exponent is not a unit mod the base order");
    unsigned p = 1;
    for (unsigned i = 0; i < q_; ++i) p = (p * e_) % m_;
    if (p != 1)
      throw ConstructionError("semidirect: action exponent^actor_order != 1 mod base order (not an action)");
    // powers of e mod m for each actor value
    epow_.assign(q_, 1);
    for (unsigned x = 1; x < q_; ++x) epow_[x] = (epow_[x - 1] * e_) % m_;
    std::string id(k_ + 1, '\0');
    set_identity(make(std::move(id)));
  }

  unsigned base_order() const { return m_; }
  unsigned base_rank() const { return k_; }
  unsigned actor_order() const { return q_; }
  unsigned action_exponent() const { return e_; }

  struct Parts {
    std::vector<std::uint8_t> base;  // k values mod m
    std::uint8_t actor;              // value mod q
  };

  Parts decode(const Element& el) const {
    require_owns(el, "semidirect");
    Parts p;
    p.base.assign(el.payload.begin(), el.payload.begin() + k_);
    p.actor = static_cast<std::uint8_t>(el.payload[k_]);
    return p;
  }

  Element encode(const Parts& p) const {
    std::string out(p.base.begin(), p.base.end());
    out.push_back(static_cast<char>(p.actor % q_));
    return make(std::move(out));
  }

  Element from_values(const std::vector<unsigned>& base, unsigned actor) const {
    Parts p;
    p.base.resize(k_, 0);
    for (unsigned i = 0; i < k_ && i < base.size(); ++i) p.base[i] = static_cast<std::uint8_t>(base[i] % m_);
    p.actor = static_cast<std::uint8_t>(actor % q_);
    return encode(p);
  }

  Element multiply(const Element& a, const Element& b) const override {
    Parts pa = decode(a), pb = decode(b);
    unsigned scale = epow_[pa.actor];
    Parts out;
    out.base.resize(k_);
    for (unsigned i = 0; i < k_; ++i)
      out.base[i] = static_cast<std::uint8_t>((pa.base[i] + scale * pb.base[i]) % m_);
    out.actor = static_cast<std::uint8_t>((pa.actor + pb.actor) % q_);
    return encode(out);
  }

  Element invert(const Element& a) const override {
    Parts pa = decode(a);
    // (b, y) with y = -x and b = -α(y)(a)
    Parts out;
    out.actor = static_cast<std::uint8_t>((q_ - pa.actor) % q_);
    unsigned scale = epow_[out.actor];
    out.base.resize(k_);
    for (unsigned i = 0; i < k_; ++i)
      out.base[i] = static_cast<std::uint8_t>((m_ - (scale * pa.base[i]) % m_) % m_);
    return encode(out);
  }

  std::string describe() const override {
    return "Z" + std::to_string(m_) + "^" + std::to_string(k_) + " x| Z" + std::to_string(q_) +
           " (action a -> " + std::to_string(e_) + "^x a)";
  }

  std::string format(const Element& el) const override {
    Parts p = decode(el);
    std::string out = "(";
    for (unsigned i = 0; i < k_; ++i) {
      if (i) out += ",";
      out += std::to_string(unsigned(p.base[i]));
    }
    out += ";" + std::to_string(unsigned(p.actor)) + ")";
    return out;
  }

  std::optional<Element> parse(const std::string& text) const override {
    if (text.size() < 2 || text.front() != '(' || text.back() != ')') return std::nullopt;
    std::string inner = text.substr(1, text.size() - 2);
    auto semi = inner.find(';');
    if (semi == std::string::npos) return std::nullopt;
    std::vector<unsigned> base;
    std::istringstream ss(inner.substr(0, semi));
    std::string tok;
    while (std::getline(ss, tok, ',')) {
      try { base.push_back(static_cast<unsigned>(std::stoul(tok))); } catch (...) { return std::nullopt; }
    }
    if (base.size() != k_) return std::nullopt;
    try {
      return from_values(base, static_cast<unsigned>(std::stoul(inner.substr(semi + 1))));
    } catch (...) {
      return std::nullopt;
    }
  }

  std::optional<std::uint64_t> order() const override {
    std::uint64_t n = q_;
    for (unsigned i = 0; i < k_; ++i) n *= m_;
    return n;
  }

  std::vector<Element> elements() const override {
    std::vector<Element> out;
    out.reserve(static_cast<std::size_t>(*order()));
    Parts p;
    p.base.assign(k_, 0);
    for (unsigned x = 0; x < q_; ++x) {
      p.actor = static_cast<std::uint8_t>(x);
      std::fill(p.base.begin(), p.base.end(), 0);
      while (true) {
        out.push_back(encode(p));
        unsigned i = 0;
        for (; i < k_; ++i) {
          if (++p.base[i] < m_) break;
          p.base[i] = 0;
        }
        if (i == k_) break;
      }
    }
    return out;
  }

  Element sample(std::mt19937_64& rng) const override {
    Parts p;
    p.base.resize(k_);
    std::uniform_int_distribution<unsigned> bv(0, m_ - 1), av(0, q_ - 1);
    for (unsigned i = 0; i < k_; ++i) p.base[i] = static_cast<std::uint8_t>(bv(rng));
    p.actor = static_cast<std::uint8_t>(av(rng));
    return encode(p);
  }

private:
  unsigned m_, k_, q_, e_;
  std::vector<unsigned> epow_;
};

}  // namespace entro
