#pragma once

#include <algorithm>
#include <optional>
#include <string>
#include <unordered_set>
#include <vector>

#include "entro/finite_set.hpp"
#include "entro/group.hpp"
#include "entro/groups/perm.hpp"

namespace entro {

/// Outcome of an FE = EF test. When the sets differ, `witness` is an element
/// of the symmetric difference together with the side it belongs to.
struct PermutabilityReport {
  bool permutes = false;
  std::size_t product_size = 0;  // |FE|
  std::optional<Element> witness;
  std::string witness_side;  // "FE\\EF" or "EF\\FE"
};

/// FE = EF, i.e. F and E permute (equivalently FE is a subgroup).
inline PermutabilityReport sets_permute(const FiniteSubgroup& f, const FiniteSubgroup& e,
                                        std::size_t max_size = kDefaultMaxSize) {
  if (f.group()->tag() != e.group()->tag())
    throw UsageError("sets_permute: subgroups belong to different groups");
  auto fe = multiply_sets(f.set(), e.set(), max_size);
  auto ef = multiply_sets(e.set(), f.set(), max_size);
  PermutabilityReport rep;
  rep.product_size = fe.size();
  if (fe == ef) {
    rep.permutes = true;
    return rep;
  }
  for (const auto& x : fe.elements()) {
    if (!ef.contains(x)) {
      rep.witness = x;
      rep.witness_side = "FE\\EF";
      return rep;
    }
  }
  for (const auto& x : ef.elements()) {
    if (!fe.contains(x)) {
      rep.witness = x;
      rep.witness_side = "EF\\FE";
      return rep;
    }
  }
  return rep;  // unreachable for well-formed sets
}

enum class FCCertification { exhaustive_truncation, sampled, structural };

inline const char* to_string(FCCertification c) {
  switch (c) {
    case FCCertification::exhaustive_truncation: return "exhaustive_truncation";
    case FCCertification::sampled: return "sampled";
    default: return "structural";
  }
}

/// Evidence that F permutes with every member of a test family: the
/// computable shadow of F ∈ F_C(G).
struct FCFamilyEvidence {
  bool all_permuted = true;
  FCCertification certification = FCCertification::sampled;
  std::vector<std::size_t> failed_against;  // indices into the test family
};

/// Pairwise permutability of F against every member of the family.
/// `family_is_complete` marks families known to contain every subgroup of a
/// finite truncation (then the certification is exhaustive).
inline FCFamilyEvidence fc_member_test(const FiniteSubgroup& f,
                                       const std::vector<FiniteSubgroup>& test_family,
                                       bool family_is_complete = false,
                                       std::size_t max_size = kDefaultMaxSize) {
  FCFamilyEvidence ev;
  ev.certification = family_is_complete ? FCCertification::exhaustive_truncation : FCCertification::sampled;
  for (std::size_t i = 0; i < test_family.size(); ++i) {
    if (!sets_permute(f, test_family[i], max_size).permutes) {
      ev.all_permuted = false;
      ev.failed_against.push_back(i);
    }
  }
  return ev;
}

/// All subgroups of a finite group (|G| <= 4096): breadth-first closure of
/// the subgroup lattice, extending each known subgroup by one element and
/// regenerating. Complete and duplicate-free.
inline std::vector<FiniteSubgroup> subgroup_enumerate(const Group::Ptr& g, std::size_t order_cap = 4096) {
  auto order = g->order();
  if (!order) throw UsageError("subgroup_enumerate: group is not known to be finite");
  if (*order > order_cap) throw BudgetExceeded("subgroup_enumerate: order cap exceeded", order_cap);
  auto elems = g->elements();

  std::vector<FiniteSubgroup> subs;
  std::unordered_set<std::uint64_t> seen_fp;
  std::vector<std::size_t> frontier;

  auto add = [&](FiniteSubgroup s) -> bool {
    std::uint64_t fp = s.set().set_fingerprint();
    if (!seen_fp.insert(fp).second) return false;
    // fingerprint collisions would drop a subgroup; verify by full compare
    for (const auto& existing : subs)
      if (existing == s) return false;
    subs.push_back(std::move(s));
    return true;
  };

  add(FiniteSubgroup::trivial(g));
  frontier.push_back(0);
  while (!frontier.empty()) {
    std::vector<std::size_t> next;
    for (std::size_t si : frontier) {
      for (const auto& x : elems) {
        if (subs[si].contains(x)) continue;
        auto gen_elems = subs[si].elements();
        gen_elems.push_back(x);
        auto bigger = subgroup_generate(FiniteSubset(g, std::move(gen_elems)), *order);
        if (add(std::move(bigger))) next.push_back(subs.size() - 1);
      }
    }
    frontier = std::move(next);
  }
  std::sort(subs.begin(), subs.end(),
            [](const FiniteSubgroup& a, const FiniteSubgroup& b) {
              if (a.size() != b.size()) return a.size() < b.size();
              return a.set().elements() < b.set().elements();
            });
  return subs;
}

/// The witness that S_fin(N+) is not finitely quasihamiltonian
/// (Example construction: H = S_m ⊇ S_n, N = <(n, m+1)>, then HN ≠ NH and
/// the 3-cycle (1 n m+1) = (1 n)·(n m+1) lies in the difference).
struct SfinWitnessReport {
  unsigned n = 0, m = 0;
  bool products_differ = false;
  std::size_t hn_size = 0, nh_size = 0;
  Element witness;              // an element of the symmetric difference
  std::string witness_cycles;   // cycle notation
  std::string witness_side;     // which product contains it
  bool three_cycle_in_difference = false;  // (1 n m+1) found on one side only
};

inline SfinWitnessReport sfin_noncofinal_witness(unsigned n, unsigned m,
                                                 std::size_t max_size = kDefaultMaxSize) {
  if (!(1 < n && n <= m)) throw UsageError("sfin_noncofinal_witness: need 1 < n <= m");
  auto sfin = std::make_shared<FinitaryPermGroup>();

  // H = S_m: permutations supported in {1..m}, generated by (1 2) and (1 2 .. m)
  std::vector<Element> gens{sfin->transposition(1, 2)};
  if (m > 2) {
    std::vector<unsigned> cyc(m);
    for (unsigned i = 0; i < m; ++i) cyc[i] = i + 1;
    gens.push_back(sfin->from_cycles({cyc}));
  }
  auto h = subgroup_generate(FiniteSubset(sfin, std::move(gens)), max_size);
  auto tau = sfin->transposition(n, m + 1);
  auto nn = subgroup_generate(FiniteSubset::singleton(sfin, tau), max_size);

  auto hn = multiply_sets(h.set(), nn.set(), max_size);
  auto nh = multiply_sets(nn.set(), h.set(), max_size);

  SfinWitnessReport rep;
  rep.n = n;
  rep.m = m;
  rep.hn_size = hn.size();
  rep.nh_size = nh.size();
  rep.products_differ = !(hn == nh);
  if (rep.products_differ) {
    for (const auto& x : hn.elements()) {
      if (!nh.contains(x)) {
        rep.witness = x;
        rep.witness_side = "HN\\NH";
        break;
      }
    }
    if (rep.witness.payload.empty() && rep.witness_side.empty()) {
      for (const auto& x : nh.elements()) {
        if (!hn.contains(x)) {
          rep.witness = x;
          rep.witness_side = "NH\\HN";
          break;
        }
      }
    }
    rep.witness_cycles = sfin->format(rep.witness);
    Element three_cycle = sfin->from_cycles({{1, n, m + 1}});
    rep.three_cycle_in_difference = hn.contains(three_cycle) != nh.contains(three_cycle);
  }
  return rep;
}

}  // namespace entro
