#include <doctest.h>

#include <random>

#include "entro/catalog.hpp"
#include "entro/permutability.hpp"

using namespace entro;

TEST_CASE("sets_permute: F = E, Q8 pairs, S3 witness") {
  auto q8 = catalog_entry("Q8").build();
  auto i = q8->parse("i").value(), j = q8->parse("j").value();
  auto fi = subgroup_generate(FiniteSubset::singleton(q8, i));
  auto fj = subgroup_generate(FiniteSubset::singleton(q8, j));
  CHECK(sets_permute(fi, fi).permutes);

  auto rep = sets_permute(fi, fj);
  CHECK(rep.permutes);
  CHECK(rep.product_size == 8);  // <i><j> = Q8

  auto s3 = catalog_entry("S3").build();
  auto pg = std::dynamic_pointer_cast<const FinitaryPermGroup>(s3);
  auto f = subgroup_generate(FiniteSubset::singleton(s3, pg->transposition(1, 2)));
  auto e = subgroup_generate(FiniteSubset::singleton(s3, pg->transposition(1, 3)));
  auto bad = sets_permute(f, e);
  CHECK_FALSE(bad.permutes);
  CHECK(bad.product_size == 4);
  REQUIRE(bad.witness.has_value());
  CHECK_FALSE(bad.witness_side.empty());
}

TEST_CASE("permutability is symmetric and characterizes subgroup products") {
  std::mt19937_64 rng(41);
  for (const auto& name : {"S3", "Q8", "QZtor12"}) {
    auto g = catalog_entry(name).build();
    for (int it = 0; it < 15; ++it) {
      auto f = subgroup_generate(FiniteSubset::singleton(g, g->sample(rng)));
      auto e = subgroup_generate(FiniteSubset::singleton(g, g->sample(rng)));
      auto fe = sets_permute(f, e);
      auto ef = sets_permute(e, f);
      CHECK(fe.permutes == ef.permutes);
      auto prod = multiply_sets(f.set(), e.set());
      CHECK(fe.permutes == is_subgroup(prod));
      if (fe.permutes) {
        // |FE| = |F||E| / |F n E|
        std::size_t inter = 0;
        for (const auto& x : f.elements()) inter += e.contains(x) ? 1 : 0;
        CHECK(fe.product_size * inter == f.size() * e.size());
      }
    }
  }
}

TEST_CASE("subgroup_enumerate: known counts") {
  CHECK(subgroup_enumerate(build_group(GroupSpec::cyclic(4))).size() == 3);
  CHECK(subgroup_enumerate(catalog_entry("Q8").build()).size() == 6);
  // duplicates-free, all genuinely subgroups, every cyclic subgroup present
  auto s3 = catalog_entry("S3").build();
  auto subs = subgroup_enumerate(s3);
  CHECK(subs.size() == 6);
  for (std::size_t a = 0; a < subs.size(); ++a) {
    CHECK(is_subgroup(subs[a].set()));
    for (std::size_t b = a + 1; b < subs.size(); ++b) CHECK_FALSE(subs[a] == subs[b]);
  }
  for (const auto& x : s3->elements()) {
    auto cyc = subgroup_generate(FiniteSubset::singleton(s3, x));
    bool found = false;
    for (const auto& s : subs) found |= (s == cyc);
    CHECK(found);
  }
}

TEST_CASE("subgroup_enumerate: order cap and infinite groups are rejected") {
  CHECK_THROWS_AS(subgroup_enumerate(catalog_entry("S3").build(), 2), BudgetExceeded);
  CHECK_THROWS_AS(subgroup_enumerate(catalog_entry("Z2N").build()), UsageError);
}

TEST_CASE("fc_member_test: trivial subgroup, Q8, and the S3 failure") {
  auto q8 = catalog_entry("Q8").build();
  auto subs = subgroup_enumerate(q8);
  auto triv = FiniteSubgroup::trivial(q8);
  auto ev = fc_member_test(triv, subs, true);
  CHECK(ev.all_permuted);
  CHECK(ev.certification == FCCertification::exhaustive_truncation);

  for (const auto& f : subs) CHECK(fc_member_test(f, subs, true).all_permuted);

  auto s3 = catalog_entry("S3").build();
  auto s3subs = subgroup_enumerate(s3);
  auto pg = std::dynamic_pointer_cast<const FinitaryPermGroup>(s3);
  auto f12 = subgroup_generate(FiniteSubset::singleton(s3, pg->transposition(1, 2)));
  auto ev2 = fc_member_test(f12, s3subs, true);
  CHECK_FALSE(ev2.all_permuted);
  CHECK_FALSE(ev2.failed_against.empty());
}

TEST_CASE("H1 truncation is quasihamiltonian: every subgroup pair permutes") {
  auto h1 = catalog_entry("H1").build();
  auto subs = subgroup_enumerate(h1);
  CHECK(subs.size() >= 6);
  for (std::size_t a = 0; a < subs.size(); ++a)
    for (std::size_t b = a; b < subs.size(); ++b) {
      CAPTURE(a);
      CAPTURE(b);
      CHECK(sets_permute(subs[a], subs[b]).permutes);
    }
}

TEST_CASE("normal subgroups permute with everything (torsion FC structural route)") {
  for (const auto& name : {"S3", "Q8", "S3xH1"}) {
    auto g = catalog_entry(name).build();
    auto subs = subgroup_enumerate(g);
    auto elems = g->elements();
    for (const auto& n : subs) {
      bool normal = true;
      for (const auto& x : elems) {
        for (const auto& h : n.elements())
          if (!n.contains(g->multiply(g->multiply(x, h), g->invert(x)))) {
            normal = false;
            break;
          }
        if (!normal) break;
      }
      if (!normal) continue;
      for (const auto& e : subs) CHECK(sets_permute(n, e).permutes);
    }
  }
}

TEST_CASE("sfin_noncofinal_witness at (3,4), (3,5), (2,2)") {
  for (auto [n, m] : {std::pair<unsigned, unsigned>{3, 4}, {3, 5}, {2, 2}}) {
    CAPTURE(n);
    CAPTURE(m);
    auto w = sfin_noncofinal_witness(n, m);
    CHECK(w.products_differ);
    CHECK(w.hn_size == w.nh_size);
    CHECK(w.three_cycle_in_difference);
    CHECK_FALSE(w.witness_cycles.empty());
    CHECK_FALSE(w.witness_side.empty());
  }
  CHECK_THROWS_AS(sfin_noncofinal_witness(1, 4), UsageError);
  CHECK_THROWS_AS(sfin_noncofinal_witness(4, 3), UsageError);
}
