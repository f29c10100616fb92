#pragma once

#include <algorithm>
#include <map>
#include <memory>
#include <set>
#include <string>
#include <vector>

#include "entro/dynamics.hpp"
#include "entro/entropy.hpp"
#include "entro/finite_set.hpp"
#include "entro/group_spec.hpp"

namespace entro {

enum class GroupClass {
  locally_finite,
  finitely_quasihamiltonian,
  quasihamiltonian,
  torsion_FC,
  torsion_abelian,
};

inline const char* to_string(GroupClass c) {
  switch (c) {
    case GroupClass::locally_finite: return "locally_finite";
    case GroupClass::finitely_quasihamiltonian: return "finitely_quasihamiltonian";
    case GroupClass::quasihamiltonian: return "quasihamiltonian";
    case GroupClass::torsion_FC: return "torsion_FC";
    default: return "torsion_abelian";
  }
}

/// One named group of the catalog with its class labels (the diagram
/// placement) and a provenance note.
struct CatalogEntry {
  std::string name;
  GroupSpec spec;
  std::set<GroupClass> known_class;
  std::string notes;

  bool is(GroupClass c) const { return known_class.count(c) > 0; }
  Group::Ptr build() const { return build_group(spec); }
};

inline std::vector<CatalogEntry> catalog() {
  const std::set<GroupClass> all5 = {
      GroupClass::locally_finite, GroupClass::finitely_quasihamiltonian, GroupClass::quasihamiltonian,
      GroupClass::torsion_FC, GroupClass::torsion_abelian};
  const std::set<GroupClass> finite_qh = {
      GroupClass::locally_finite, GroupClass::finitely_quasihamiltonian, GroupClass::quasihamiltonian,
      GroupClass::torsion_FC};
  const std::set<GroupClass> finite_nonqh = {
      GroupClass::locally_finite, GroupClass::finitely_quasihamiltonian, GroupClass::torsion_FC};

  std::vector<CatalogEntry> out;
  out.push_back({"Q8", GroupSpec::q8(), finite_qh, "quaternion group; non-abelian quasihamiltonian"});
  out.push_back({"S3", GroupSpec::finitary_permutations(3), finite_nonqh,
                 "symmetric group on 3 points; not quasihamiltonian"});
  out.push_back({"H1", GroupSpec::semidirect(9, 1, 3, 4), finite_qh,
                 "Z9 x| Z3 with a -> 4^x a; 1-coordinate truncation of the infinite Z9^N x| Z3"});
  out.push_back({"H2", GroupSpec::semidirect(9, 2, 3, 4), finite_qh,
                 "Z9^2 x| Z3 with a -> 4^x a; 2-coordinate truncation"});
  out.push_back({"S3xH1", GroupSpec::direct_product({GroupSpec::finitary_permutations(3), GroupSpec::semidirect(9, 1, 3, 4)}),
                 finite_nonqh, "finite truncation of S3 x (Z9^N x| Z3)"});
  out.push_back({"S3xH2", GroupSpec::direct_product({GroupSpec::finitary_permutations(3), GroupSpec::semidirect(9, 2, 3, 4)}),
                 finite_nonqh, "finite truncation of S3 x (Z9^N x| Z3)"});
  out.push_back({"Sfin", GroupSpec::finitary_permutations(), {GroupClass::locally_finite},
                 "finitary symmetric group on N+; locally finite, not finitely quasihamiltonian"});
  for (unsigned m : {2u, 3u, 4u, 6u}) {
    out.push_back({"Z" + std::to_string(m) + "N", GroupSpec::restricted_direct_sum(m, IndexSet::Naturals),
                   all5, "restricted direct sum over N"});
    out.push_back({"Z" + std::to_string(m) + "Z", GroupSpec::restricted_direct_sum(m, IndexSet::Integers),
                   all5, "restricted direct sum over Z"});
  }
  for (unsigned m : {2u, 3u, 4u, 6u, 12u}) {
    out.push_back({"QZtor" + std::to_string(m), GroupSpec::cyclic(m), all5,
                   std::to_string(m) + "-torsion truncation of Q/Z"});
  }
  out.push_back({"lamplighter2", GroupSpec::lamplighter(2), {},
                 "Z2^(Z) x| Z; not locally finite; additivity counterexample"});
  return out;
}

inline const CatalogEntry catalog_entry(const std::string& name) {
  for (auto& e : catalog())
    if (e.name == name) return e;
  throw UsageError("catalog: no entry named '" + name + "'");
}

namespace detail {

/// All elements of a direct-sum truncation: values in {0, step, 2*step, ...}
/// on the given coordinates. (m/step)^#coords elements.
inline std::vector<Element> dsum_box(const DirectSumGroup& g, const std::vector<std::int32_t>& coords,
                                     unsigned step = 1) {
  const unsigned m = g.base_order();
  if (step == 0 || m % step != 0) throw UsageError("dsum_box: step must divide the base order");
  const unsigned vals = m / step;  // per-coordinate choices, including 0
  std::vector<Element> out;
  std::vector<unsigned> digits(coords.size(), 0);
  while (true) {
    DirectSumGroup::Coords c;
    for (std::size_t i = 0; i < coords.size(); ++i)
      if (digits[i]) c.emplace_back(coords[i], static_cast<std::uint8_t>(digits[i] * step));
    std::sort(c.begin(), c.end());
    out.push_back(g.encode(c));
    std::size_t i = 0;
    for (; i < coords.size(); ++i) {
      if (++digits[i] < vals) break;
      digits[i] = 0;
    }
    if (i == coords.size()) break;
  }
  return out;
}

inline std::vector<std::int32_t> dsum_truncation_coords(const DirectSumGroup& g, unsigned k) {
  std::vector<std::int32_t> coords;
  if (g.index_set() == IndexSet::Naturals) {
    for (unsigned i = 0; i <= k; ++i) coords.push_back(static_cast<std::int32_t>(i));
  } else {
    for (std::int32_t i = -static_cast<std::int32_t>(k) - 1; i <= static_cast<std::int32_t>(k) + 1; ++i)
      coords.push_back(i);
  }
  return coords;
}

/// All permutations supported in {1..n} as elements of S_fin.
inline std::vector<Element> symmetric_truncation(const FinitaryPermGroup& g, unsigned n) {
  std::vector<unsigned> perm(n);
  for (unsigned i = 0; i < n; ++i) perm[i] = i + 1;
  std::vector<Element> out;
  do {
    FinitaryPermGroup::Mapping m;
    for (unsigned i = 0; i < n; ++i) m[i + 1] = perm[i];
    out.push_back(g.encode(m));
  } while (std::next_permutation(perm.begin(), perm.end()));
  return out;
}

inline std::uint64_t factorial(unsigned n) {
  std::uint64_t f = 1;
  for (unsigned i = 2; i <= n; ++i) f *= i;
  return f;
}

/// All lamplighter elements with zero shift and lamps within [-k, k].
inline std::vector<Element> lamplighter_base_box(const LamplighterGroup& g, unsigned k) {
  const unsigned b = g.base_order();
  const unsigned width = 2 * k + 1;
  std::vector<Element> out;
  std::vector<unsigned> digits(width, 0);
  while (true) {
    LamplighterGroup::Parts p;
    for (unsigned i = 0; i < width; ++i)
      if (digits[i]) p.lamps.emplace_back(static_cast<std::int32_t>(i) - static_cast<std::int32_t>(k),
                                          static_cast<std::uint8_t>(digits[i]));
    out.push_back(g.encode(p));
    unsigned i = 0;
    for (; i < width; ++i) {
      if (++digits[i] < b) break;
      digits[i] = 0;
    }
    if (i == width) break;
  }
  return out;
}

}  // namespace detail

/// The cofinal chain of finite subgroups used to sweep h(φ): coordinate
/// truncations for direct sums, support truncations S_n for finitary
/// permutations, products of factor chains, the whole group when finite.
/// Throws UnsupportedError for groups that are not locally finite.
inline SubgroupFamily finite_subgroup_family(const Group::Ptr& g, std::size_t size_bound = kDefaultMaxSize) {
  if (auto ds = std::dynamic_pointer_cast<const DirectSumGroup>(g)) {
    return [ds, size_bound](unsigned k) -> std::optional<FiniteSubgroup> {
      auto coords = detail::dsum_truncation_coords(*ds, k);
      double size = std::pow(double(ds->base_order()), double(coords.size()));
      if (size > double(size_bound)) return std::nullopt;
      return FiniteSubgroup(FiniteSubset(ds, detail::dsum_box(*ds, coords)), FiniteSubgroup::AlreadyClosed{});
    };
  }
  if (auto pg = std::dynamic_pointer_cast<const FinitaryPermGroup>(g)) {
    if (!pg->support_bound()) {
      return [pg, size_bound](unsigned k) -> std::optional<FiniteSubgroup> {
        unsigned n = k + 2;  // S_2, S_3, ...
        if (detail::factorial(n) > size_bound) return std::nullopt;
        return FiniteSubgroup(FiniteSubset(pg, detail::symmetric_truncation(*pg, n)),
                              FiniteSubgroup::AlreadyClosed{});
      };
    }
  }
  if (auto pr = std::dynamic_pointer_cast<const DirectProductGroup>(g)) {
    std::vector<SubgroupFamily> factor_fams;
    for (const auto& f : pr->factors()) factor_fams.push_back(finite_subgroup_family(f, size_bound));
    return [pr, factor_fams, size_bound](unsigned k) -> std::optional<FiniteSubgroup> {
      std::vector<std::vector<Element>> parts;
      bool any_fresh = false;
      for (const auto& fam : factor_fams) {
        std::optional<FiniteSubgroup> member;
        unsigned used = 0;
        for (unsigned j = 0; j <= k; ++j) {
          auto m = fam(j);
          if (!m) break;
          member = std::move(m);
          used = j;
        }
        if (!member) return std::nullopt;
        any_fresh |= (used == k);
        parts.push_back(member->elements());
      }
      if (k > 0 && !any_fresh) return std::nullopt;  // every factor exhausted earlier
      std::size_t total = 1;
      for (const auto& p : parts) {
        total *= p.size();
        if (total > size_bound) return std::nullopt;
      }
      std::vector<Element> elems;
      elems.reserve(total);
      std::vector<std::size_t> idx(parts.size(), 0);
      while (true) {
        std::vector<Element> tuple;
        tuple.reserve(parts.size());
        for (std::size_t i = 0; i < parts.size(); ++i) tuple.push_back(parts[i][idx[i]]);
        elems.push_back(pr->encode(tuple));
        std::size_t i = 0;
        for (; i < parts.size(); ++i) {
          if (++idx[i] < parts[i].size()) break;
          idx[i] = 0;
        }
        if (i == parts.size()) break;
      }
      return FiniteSubgroup(FiniteSubset(pr, std::move(elems)), FiniteSubgroup::AlreadyClosed{});
    };
  }
  if (std::dynamic_pointer_cast<const LamplighterGroup>(g))
    throw UnsupportedError("finite_subgroup_family: the lamplighter is not locally finite");
  if (auto n = g->order(); n) {
    // finite group: the chain is the group itself, repeated so that sweeps
    // certify the supremum by stabilization
    return [g, n, size_bound](unsigned) -> std::optional<FiniteSubgroup> {
      if (*n > size_bound) return std::nullopt;
      return FiniteSubgroup(FiniteSubset(g, g->elements()), FiniteSubgroup::AlreadyClosed{});
    };
  }
  throw UnsupportedError("finite_subgroup_family: no cofinal chain known for " + g->describe());
}

inline SubgroupFamily finite_subgroup_family(const CatalogEntry& entry, const Group::Ptr& g,
                                             std::size_t size_bound = kDefaultMaxSize) {
  if (!entry.is(GroupClass::locally_finite))
    throw UnsupportedError("finite_subgroup_family: '" + entry.name + "' is not locally finite");
  return finite_subgroup_family(g, size_bound);
}

/// Increasing word balls of {1, lamp(0), t, t^-1} in the lamplighter, the
/// finite-subset family behind the negative control. The radius step of 2
/// makes consecutive member entropies differ by about 2·log(golden ratio),
/// enough to trip the divergence detector.
inline SubsetFamily lamplighter_ball_family(const std::shared_ptr<const LamplighterGroup>& g,
                                            std::size_t max_size = kDefaultMaxSize,
                                            unsigned radius_step = 2) {
  FiniteSubset gens(g, {g->identity(), g->lamp(0), g->shift_element(1), g->shift_element(-1)});
  auto cache = std::make_shared<std::vector<FiniteSubset>>();
  cache->push_back(gens);  // ball of radius 1
  return [g, gens, cache, max_size, radius_step](unsigned k) -> std::optional<FiniteSubset> {
    unsigned radius = radius_step * (k + 1);
    try {
      while (cache->size() < radius) cache->push_back(multiply_sets(cache->back(), gens, max_size));
    } catch (const BudgetExceeded&) {
      return std::nullopt;
    }
    return (*cache)[radius - 1];
  };
}

/// Center of a finite group, by enumeration.
inline FiniteSubgroup center_of(const Group::Ptr& g) {
  auto elems = g->elements();
  std::vector<Element> center;
  for (const auto& x : elems) {
    bool central = true;
    for (const auto& y : elems) {
      if (g->multiply(x, y) != g->multiply(y, x)) {
        central = false;
        break;
      }
    }
    if (central) center.push_back(x);
  }
  return FiniteSubgroup(FiniteSubset(g, std::move(center)), FiniteSubgroup::AlreadyClosed{});
}

/// Named φ-invariant normal subgroups shipped with the catalog groups:
///   trivial | full | center | mod:<d> (direct sums) | base (lamplighter) |
///   factor:<i> (direct products).
inline NormalSubgroupSpec catalog_normal_subgroup(const Group::Ptr& g, const std::string& name) {
  if (name == "trivial") return NormalSubgroupSpec::trivial(g);
  if (name == "full") return NormalSubgroupSpec::whole(g);
  if (name == "center") {
    if (!g->order()) throw UnsupportedError("center: only available for finite groups");
    return NormalSubgroupSpec::from_finite(g, center_of(g), "center");
  }
  if (name.rfind("mod:", 0) == 0) {
    auto ds = std::dynamic_pointer_cast<const DirectSumGroup>(g);
    if (!ds) throw UsageError("mod:<d> subgroups live in restricted direct sums");
    unsigned d = static_cast<unsigned>(std::stoul(name.substr(4)));
    const unsigned m = ds->base_order();
    if (d < 2 || m % d != 0) throw UsageError("mod:<d> requires a divisor d of the base order, d >= 2");
    NormalSubgroupSpec h;
    h.ambient = g;
    h.name = name;
    h.member = [ds, d](const Element& e) {
      for (const auto& [idx, val] : ds->decode(e))
        if (val % d != 0) return false;
      return true;
    };
    h.canonicalize = [ds, d](const Element& e) {
      // byte-level: reduce each value record mod d, dropping zeros
      const std::string& p = e.payload;
      std::string out;
      out.reserve(p.size());
      for (std::size_t pos = 0; pos + 5 <= p.size(); pos += 5) {
        std::uint8_t r = static_cast<std::uint8_t>(detail::get_u8(p, pos + 4) % d);
        if (r) {
          out.append(p, pos, 4);
          detail::put_u8(out, r);
        }
      }
      return make_element(std::move(out), ds->tag());
    };
    h.truncation = [ds, d](unsigned k) -> std::optional<FiniteSubgroup> {
      auto coords = detail::dsum_truncation_coords(*ds, k);
      double size = std::pow(double(ds->base_order() / d), double(coords.size()));
      if (size > double(kDefaultMaxSize)) return std::nullopt;
      return FiniteSubgroup(FiniteSubset(ds, detail::dsum_box(*ds, coords, d)), FiniteSubgroup::AlreadyClosed{});
    };
    return h;
  }
  if (name == "base") {
    auto lp = std::dynamic_pointer_cast<const LamplighterGroup>(g);
    if (!lp) throw UsageError("the 'base' subgroup lives in the lamplighter");
    NormalSubgroupSpec h;
    h.ambient = g;
    h.name = "base";
    h.member = [lp](const Element& e) { return lp->decode(e).shift == 0; };
    h.canonicalize = [lp](const Element& e) { return lp->shift_element(lp->decode(e).shift); };
    h.truncation = [lp](unsigned k) -> std::optional<FiniteSubgroup> {
      if (std::pow(double(lp->base_order()), double(2 * k + 1)) > double(kDefaultMaxSize)) return std::nullopt;
      return FiniteSubgroup(FiniteSubset(lp, detail::lamplighter_base_box(*lp, k)),
                            FiniteSubgroup::AlreadyClosed{});
    };
    return h;
  }
  if (name.rfind("factor:", 0) == 0) {
    auto pr = std::dynamic_pointer_cast<const DirectProductGroup>(g);
    if (!pr) throw UsageError("factor:<i> subgroups live in direct products");
    std::size_t i = static_cast<std::size_t>(std::stoul(name.substr(7)));
    if (i >= pr->factors().size()) throw UsageError("factor index out of range");
    NormalSubgroupSpec h;
    h.ambient = g;
    h.name = name;
    h.member = [pr, i](const Element& e) {
      auto parts = pr->decode(e);
      for (std::size_t j = 0; j < parts.size(); ++j)
        if (j != i && parts[j] != pr->factors()[j]->identity()) return false;
      return true;
    };
    h.canonicalize = [pr, i](const Element& e) {
      auto parts = pr->decode(e);
      parts[i] = pr->factors()[i]->identity();
      return pr->encode(parts);
    };
    auto ffam = finite_subgroup_family(pr->factors()[i]);
    h.truncation = [pr, i, ffam](unsigned k) -> std::optional<FiniteSubgroup> {
      auto member = ffam(k);
      if (!member) return std::nullopt;
      std::vector<Element> elems;
      elems.reserve(member->size());
      for (const auto& x : member->elements()) {
        std::vector<Element> parts;
        for (std::size_t j = 0; j < pr->factors().size(); ++j)
          parts.push_back(j == i ? x : pr->factors()[j]->identity());
        elems.push_back(pr->encode(parts));
      }
      return FiniteSubgroup(FiniteSubset(pr, std::move(elems)), FiniteSubgroup::AlreadyClosed{});
    };
    return h;
  }
  throw UsageError("unknown normal subgroup name '" + name + "'");
}

/// Textual endomorphism specs: id | inner:<element> | shift | shift_inv |
/// backshift | scale:<c> | proj_actor | scale_base:<c> |
/// product:<spec>|<spec>... | compose:<f>;<g>.
inline Endomorphism parse_endomorphism(const Group::Ptr& g, const std::string& text) {
  if (text == "id" || text == "identity") return Endomorphism::identity(g);
  if (text.rfind("inner:", 0) == 0) {
    auto e = g->parse(text.substr(6));
    if (!e) throw UsageError("inner: cannot parse element '" + text.substr(6) + "'");
    return Endomorphism::inner(g, *e);
  }
  if (text.rfind("compose:", 0) == 0) {
    auto body = text.substr(8);
    auto semi = body.find(';');
    if (semi == std::string::npos) throw UsageError("compose: expected 'compose:<f>;<g>'");
    return compose(parse_endomorphism(g, body.substr(0, semi)), parse_endomorphism(g, body.substr(semi + 1)));
  }
  if (auto ds = std::dynamic_pointer_cast<const DirectSumGroup>(g)) {
    if (text == "shift") {
      return Endomorphism(g, "shift", [ds](const Element& e) {
        auto c = ds->decode(e);
        for (auto& [idx, val] : c) ++idx;
        return ds->encode(c);
      });
    }
    if (text == "shift_inv") {
      if (ds->index_set() != IndexSet::Integers)
        throw UsageError("shift_inv: only invertible on Z-indexed sums (use backshift on N)");
      return Endomorphism(g, "shift_inv", [ds](const Element& e) {
        auto c = ds->decode(e);
        for (auto& [idx, val] : c) --idx;
        return ds->encode(c);
      });
    }
    if (text == "backshift") {
      return Endomorphism(g, "backshift", [ds](const Element& e) {
        auto c = ds->decode(e);
        DirectSumGroup::Coords out;
        for (auto& [idx, val] : c)
          if (ds->index_set() == IndexSet::Integers || idx > 0) out.emplace_back(idx - 1, val);
        return ds->encode(out);
      });
    }
    if (text.rfind("scale:", 0) == 0) {
      unsigned c = static_cast<unsigned>(std::stoul(text.substr(6)));
      return Endomorphism(g, text, [ds, c](const Element& e) {
        auto coords = ds->decode(e);
        DirectSumGroup::Coords out;
        for (auto& [idx, val] : coords) {
          std::uint8_t v = static_cast<std::uint8_t>((val * c) % ds->base_order());
          if (v) out.emplace_back(idx, v);
        }
        return ds->encode(out);
      });
    }
  }
  if (auto sd = std::dynamic_pointer_cast<const SemidirectGroup>(g)) {
    if (text == "proj_actor") {
      return Endomorphism(g, "proj_actor", [sd](const Element& e) {
        auto p = sd->decode(e);
        std::fill(p.base.begin(), p.base.end(), 0);
        return sd->encode(p);
      });
    }
    if (text.rfind("scale_base:", 0) == 0) {
      unsigned c = static_cast<unsigned>(std::stoul(text.substr(11)));
      return Endomorphism(g, text, [sd, c](const Element& e) {
        auto p = sd->decode(e);
        for (auto& v : p.base) v = static_cast<std::uint8_t>((v * c) % sd->base_order());
        return sd->encode(p);
      });
    }
  }
  if (auto pr = std::dynamic_pointer_cast<const DirectProductGroup>(g)) {
    if (text.rfind("product:", 0) == 0) {
      std::vector<Endomorphism> comps;
      std::string body = text.substr(8);
      std::size_t start = 0;
      for (std::size_t i = 0; i < pr->factors().size(); ++i) {
        std::size_t bar = (i + 1 == pr->factors().size()) ? std::string::npos : body.find('|', start);
        std::string part = body.substr(start, bar == std::string::npos ? std::string::npos : bar - start);
        comps.push_back(parse_endomorphism(pr->factors()[i], part));
        if (bar == std::string::npos) break;
        start = bar + 1;
      }
      if (comps.size() != pr->factors().size())
        throw UsageError("product: expected one endomorphism spec per factor");
      bool all_id = true;
      for (const auto& c : comps) all_id &= c.is_identity_map();
      return Endomorphism(
          g, text,
          [pr, comps](const Element& e) {
            auto parts = pr->decode(e);
            for (std::size_t i = 0; i < parts.size(); ++i) parts[i] = comps[i](parts[i]);
            return pr->encode(parts);
          },
          all_id);
    }
  }
  throw UsageError("unknown endomorphism spec '" + text + "' for " + g->describe());
}

struct NamedEndo {
  std::string spec;
  Endomorphism endo;
};

/// The endomorphisms the catalog exercises for each group: the identity,
/// deduplicated inner automorphisms (small finite groups), shifts and scalar
/// maps on direct sums, the actor projection on semidirect products, and
/// componentwise maps on direct products.
inline std::vector<NamedEndo> catalog_endomorphisms(const Group::Ptr& g, std::size_t inner_cap = 6) {
  std::vector<NamedEndo> out;
  out.push_back({"id", Endomorphism::identity(g)});

  if (auto ds = std::dynamic_pointer_cast<const DirectSumGroup>(g)) {
    out.push_back({"shift", parse_endomorphism(g, "shift")});
    out.push_back({"backshift", parse_endomorphism(g, "backshift")});
    if (ds->index_set() == IndexSet::Integers) out.push_back({"shift_inv", parse_endomorphism(g, "shift_inv")});
    if (ds->base_order() > 2) {
      out.push_back({"scale:2", parse_endomorphism(g, "scale:2")});
      std::string neg = "scale:" + std::to_string(ds->base_order() - 1);
      out.push_back({neg, parse_endomorphism(g, neg)});
    }
    return out;
  }
  if (std::dynamic_pointer_cast<const LamplighterGroup>(g)) {
    auto lp = std::dynamic_pointer_cast<const LamplighterGroup>(g);
    out.push_back({"inner:" + g->format(lp->shift_element(1)), Endomorphism::inner(g, lp->shift_element(1))});
    out.push_back({"inner:" + g->format(lp->lamp(0)), Endomorphism::inner(g, lp->lamp(0))});
    return out;
  }
  if (auto pg = std::dynamic_pointer_cast<const FinitaryPermGroup>(g); pg && !pg->support_bound()) {
    out.push_back({"inner:(1 2)", Endomorphism::inner(g, pg->transposition(1, 2))});
    out.push_back({"inner:(1 2 3)", Endomorphism::inner(g, pg->from_cycles({{1, 2, 3}}))});
    return out;
  }

  if (auto sd = std::dynamic_pointer_cast<const SemidirectGroup>(g)) {
    out.push_back({"proj_actor", parse_endomorphism(g, "proj_actor")});
    std::string sc = "scale_base:" + std::to_string(sd->action_exponent());
    out.push_back({sc, parse_endomorphism(g, sc)});
  }
  if (auto pr = std::dynamic_pointer_cast<const DirectProductGroup>(g)) {
    // one non-identity endomorphism per factor, extended by identities
    for (std::size_t i = 0; i < pr->factors().size(); ++i) {
      auto fend = catalog_endomorphisms(pr->factors()[i], 2);
      for (const auto& ne : fend) {
        if (ne.spec == "id") continue;
        std::string spec = "product:";
        for (std::size_t j = 0; j < pr->factors().size(); ++j) {
          if (j) spec += "|";
          spec += (j == i ? ne.spec : "id");
        }
        out.push_back({spec, parse_endomorphism(g, spec)});
        break;
      }
    }
  }

  // deduplicated inner automorphisms of small finite groups
  if (auto n = g->order(); n && *n <= 512) {
    auto elems = g->elements();
    std::vector<std::vector<Element>> images_seen;
    for (const auto& x : elems) {
      auto inner = Endomorphism::inner(g, x);
      std::vector<Element> img;
      img.reserve(elems.size());
      for (const auto& y : elems) img.push_back(inner(y));
      bool dup = false;
      for (const auto& seen : images_seen) dup |= (seen == img);
      bool is_id = true;
      for (std::size_t i = 0; i < elems.size(); ++i) is_id &= (img[i] == elems[i]);
      if (dup || is_id) continue;
      images_seen.push_back(std::move(img));
      out.push_back({"inner:" + g->format(x), std::move(inner)});
      if (images_seen.size() >= inner_cap) break;
    }
  }
  return out;
}

}  // namespace entro
