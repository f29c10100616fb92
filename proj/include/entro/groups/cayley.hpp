#pragma once

#include <string>
#include <vector>

#include "entro/group.hpp"

namespace entro {

/// Finite group given by its full multiplication table. The table is
/// validated as a group at construction: row 0 / column 0 must realize the
/// identity, every element needs an inverse, and associativity is checked
/// exhaustively (the table sizes used here make the n^3 sweep cheap).
class CayleyTableGroup final : public Group {
public:
  CayleyTableGroup(std::string name, std::vector<std::vector<unsigned>> table,
                   std::vector<std::string> element_names = {})
      : name_(std::move(name)), table_(std::move(table)), names_(std::move(element_names)) {
    const std::size_t n = table_.size();
    if (n == 0) throw ConstructionError("cayley_table: empty table");
    for (const auto& row : table_) {
      if (row.size() != n) throw ConstructionError("cayley_table: table is not square");
      for (unsigned v : row)
        if (v >= n) throw ConstructionError("cayley_table: entry out of range");
    }
    if (!names_.empty() && names_.size() != n)
      throw ConstructionError("cayley_table: element_names size mismatch");
    // identity must be index 0
    for (std::size_t i = 0; i < n; ++i) {
      if (table_[0][i] != i || table_[i][0] != i)
        throw ConstructionError("cayley_table: index 0 is not an identity");
    }
    inverse_.assign(n, n);
    for (std::size_t a = 0; a < n; ++a) {
      for (std::size_t b = 0; b < n; ++b) {
        if (table_[a][b] == 0 && table_[b][a] == 0) inverse_[a] = static_cast<unsigned>(b);
      }
      if (inverse_[a] == n) throw ConstructionError("cayley_table: element without inverse");
    }
    for (std::size_t a = 0; a < n; ++a)
      for (std::size_t b = 0; b < n; ++b)
        for (std::size_t c = 0; c < n; ++c)
          if (table_[table_[a][b]][c] != table_[a][table_[b][c]])
            throw ConstructionError("cayley_table: not associative");
    set_identity(encode(0));
  }

  unsigned index_of(const Element& e) const {
    require_owns(e, "cayley");
    return detail::get_u32(e.payload, 0);
  }

  Element encode(unsigned idx) const {
    std::string p;
    detail::put_u32(p, idx);
    return make(std::move(p));
  }

  Element multiply(const Element& a, const Element& b) const override {
    return encode(table_[index_of(a)][index_of(b)]);
  }

  Element invert(const Element& a) const override { return encode(inverse_[index_of(a)]); }

  std::string describe() const override { return name_ + " (cayley table, order " + std::to_string(table_.size()) + ")"; }

  std::string format(const Element& e) const override {
    unsigned i = index_of(e);
    return names_.empty() ? "g" + std::to_string(i) : names_[i];
  }

  std::optional<Element> parse(const std::string& text) const override {
    for (std::size_t i = 0; i < table_.size(); ++i) {
      if (format(encode(static_cast<unsigned>(i))) == text) return encode(static_cast<unsigned>(i));
    }
    return std::nullopt;
  }

  std::optional<std::uint64_t> order() const override { return table_.size(); }

  std::vector<Element> elements() const override {
    std::vector<Element> out;
    out.reserve(table_.size());
    for (std::size_t i = 0; i < table_.size(); ++i) out.push_back(encode(static_cast<unsigned>(i)));
    return out;
  }

  Element sample(std::mt19937_64& rng) const override {
    std::uniform_int_distribution<std::size_t> d(0, table_.size() - 1);
    return encode(static_cast<unsigned>(d(rng)));
  }

private:
  std::string name_;
  std::vector<std::vector<unsigned>> table_;
  std::vector<std::string> names_;
  std::vector<unsigned> inverse_;
};

/// Cyclic group of order m as a Cayley table; used for the m-torsion
/// truncations of Q/Z and other small cyclic building blocks.
inline std::shared_ptr<const CayleyTableGroup> make_cyclic_group(unsigned m, std::string name = "") {
  if (m == 0) throw ConstructionError("cyclic group: order must be positive");
  std::vector<std::vector<unsigned>> table(m, std::vector<unsigned>(m));
  for (unsigned a = 0; a < m; ++a)
    for (unsigned b = 0; b < m; ++b) table[a][b] = (a + b) % m;
  std::vector<std::string> names;
  names.reserve(m);
  for (unsigned a = 0; a < m; ++a) names.push_back(std::to_string(a));
  if (name.empty()) name = "Z" + std::to_string(m);
  return std::make_shared<CayleyTableGroup>(std::move(name), std::move(table), std::move(names));
}

/// The quaternion group Q8 with elements {1,-1,i,-i,j,-j,k,-k}.
inline std::shared_ptr<const CayleyTableGroup> make_quaternion_group() {
  // indices: 0:1 1:-1 2:i 3:-i 4:j 5:-j 6:k 7:-k
  auto neg = [](unsigned x) -> unsigned { return x ^ 1u; };
  std::vector<std::vector<unsigned>> t(8, std::vector<unsigned>(8));
  // products of the positive units; signs handled below
  const unsigned I = 2, J = 4, K = 6, ONE = 0;
  auto base = [&](unsigned a, unsigned b) -> unsigned {
    // a,b in {ONE, I, J, K}; returns signed index of a*b
    if (a == ONE) return b;
    if (b == ONE) return a;
    if (a == b) return 1;  // i*i = j*j = k*k = -1
    if (a == I && b == J) return K;
    if (a == J && b == K) return I;
    if (a == K && b == I) return J;
    if (a == J && b == I) return neg(K);
    if (a == K && b == J) return neg(I);
    return neg(J);  // a == I && b == K
  };
  for (unsigned a = 0; a < 8; ++a) {
    for (unsigned b = 0; b < 8; ++b) {
      unsigned p = base(a & ~1u, b & ~1u);
      unsigned sign = (a & 1u) ^ (b & 1u);
      t[a][b] = sign ? neg(p) : p;
    }
  }
  return std::make_shared<CayleyTableGroup>(
      "Q8", std::move(t), std::vector<std::string>{"1", "-1", "i", "-i", "j", "-j", "k", "-k"});
}

}  // namespace entro
