#include <doctest.h>

#include <cmath>
#include <random>

#include "entro/catalog.hpp"
#include "entro/dynamics.hpp"
#include "oracles.hpp"

using namespace entro;

TEST_CASE("endo_power: k = 0 is the identity, shifts compose, inner powers") {
  auto g = catalog_entry("Z2N").build();
  auto ds = std::dynamic_pointer_cast<const DirectSumGroup>(g);
  auto shift = parse_endomorphism(g, "shift");
  auto p0 = endo_power(shift, 0);
  CHECK(p0(ds->unit(3, 1)) == ds->unit(3, 1));
  auto p2 = endo_power(shift, 2);
  CHECK(p2(ds->unit(0, 1)) == ds->unit(2, 1));

  auto q8 = catalog_entry("Q8").build();
  auto i = q8->parse("i").value();
  auto inner_i = Endomorphism::inner(q8, i);
  auto inner_i2 = Endomorphism::inner(q8, q8->multiply(i, i));
  auto pow2 = endo_power(inner_i, 2);
  for (const auto& x : q8->elements()) CHECK(pow2(x) == inner_i2(x));
}

TEST_CASE("check_endomorphism rejects non-homomorphisms") {
  auto q8 = catalog_entry("Q8").build();
  // inversion is not an endomorphism of a non-abelian group
  Endomorphism bad(q8, "invert", [q8](const Element& e) { return q8->invert(e); });
  std::mt19937_64 rng(2);
  CHECK_THROWS_AS(check_endomorphism(bad, rng), InvarianceError);
}

TEST_CASE("restrict: whole group, mod:3 subgroup, trivial subgroup") {
  auto g = catalog_entry("Z6N").build();
  auto ds = std::dynamic_pointer_cast<const DirectSumGroup>(g);
  auto shift = parse_endomorphism(g, "shift");

  auto whole = NormalSubgroupSpec::whole(g);
  auto r1 = restrict_endo(shift, whole);
  CHECK(r1(ds->unit(1, 5)) == shift(ds->unit(1, 5)));

  auto h = catalog_normal_subgroup(g, "mod:3");
  auto r2 = restrict_endo(shift, h);
  // the restriction behaves as a shift on a copy of Z2^(N): values stay in {0,3}
  auto img = r2(ds->unit(0, 3));
  CHECK(img == ds->unit(1, 3));
  CHECK(h.member(img));
  CHECK_THROWS_AS(r2(ds->unit(0, 2)), UsageError);  // outside H

  auto triv = NormalSubgroupSpec::trivial(g);
  auto r3 = restrict_endo(shift, triv);
  CHECK(r3(g->identity()) == g->identity());
}

TEST_CASE("restrict: invariance violation witnessed at application") {
  auto s3 = catalog_entry("S3").build();
  auto pg = std::dynamic_pointer_cast<const FinitaryPermGroup>(s3);
  auto sub = subgroup_generate(FiniteSubset::singleton(s3, pg->transposition(1, 2)));
  auto h = NormalSubgroupSpec::from_finite(s3, sub, "<(1 2)>");
  auto phi = parse_endomorphism(s3, "inner:(1 2 3)");
  auto r = restrict_endo(phi, h);
  CHECK_THROWS_AS(r(pg->transposition(1, 2)), InvarianceError);
}

TEST_CASE("induce_quotient: trivial H gives an isomorphic copy") {
  auto q8 = catalog_entry("Q8").build();
  auto phi = parse_endomorphism(q8, "inner:i");
  auto h = NormalSubgroupSpec::trivial(q8);
  std::mt19937_64 rng(3);
  auto qs = induce_quotient(phi, h, rng);
  CHECK(qs.quotient->order() == 8);
  for (const auto& x : q8->elements()) CHECK(qs.quotient->lift(qs.project(x)) == x);
}

TEST_CASE("induce_quotient: Z6^(N) / mod:3 is a copy of Z3^(N)") {
  auto g = catalog_entry("Z6N").build();
  auto ds = std::dynamic_pointer_cast<const DirectSumGroup>(g);
  auto shift = parse_endomorphism(g, "shift");
  auto h = catalog_normal_subgroup(g, "mod:3");
  std::mt19937_64 rng(4);
  auto qs = induce_quotient(shift, h, rng);

  auto q4 = qs.project(ds->unit(0, 4));  // 4 mod 3 = 1
  auto q1 = qs.project(ds->unit(0, 1));
  CHECK(q4 == q1);
  // [1] + [2] = [0] coordinatewise
  auto sum = qs.quotient->multiply(qs.project(ds->unit(0, 1)), qs.project(ds->unit(0, 2)));
  CHECK(sum == qs.quotient->identity());
  // induced map commutes with the projection
  for (int i = 0; i < 50; ++i) {
    auto x = g->sample(rng);
    CHECK(qs.induced(qs.project(x)) == qs.project(shift(x)));
  }
}

TEST_CASE("induce_quotient: lamplighter / base is a copy of Z") {
  auto lp = std::dynamic_pointer_cast<const LamplighterGroup>(catalog_entry("lamplighter2").build());
  auto id = Endomorphism::identity(lp);
  auto h = catalog_normal_subgroup(lp, "base");
  std::mt19937_64 rng(5);
  auto qs = induce_quotient(id, h, rng);
  auto a = lp->multiply(lp->lamp(2), lp->shift_element(2));
  auto b = lp->multiply(lp->lamp(-1), lp->shift_element(3));
  auto p = qs.quotient->multiply(qs.project(a), qs.project(b));
  CHECK(p == qs.project(lp->shift_element(5)));
  CHECK_FALSE(qs.project(lp->shift_element(1)) == qs.quotient->identity());
}

TEST_CASE("induce_quotient requires a canonicalizer") {
  auto g = catalog_entry("Z6N").build();
  auto h = catalog_normal_subgroup(g, "mod:3");
  h.canonicalize = nullptr;
  std::mt19937_64 rng(6);
  CHECK_THROWS_AS(induce_quotient(Endomorphism::identity(g), h, rng), UnsupportedError);
}

TEST_CASE("trajectory: T_0 = {1}, Bernoulli T_3, stability under identity") {
  auto g = catalog_entry("Z2N").build();
  auto ds = std::dynamic_pointer_cast<const DirectSumGroup>(g);
  auto shift = parse_endomorphism(g, "shift");
  FiniteSubset x0(g, {g->identity(), ds->unit(0, 1)});

  Trajectory traj(shift, x0);
  CHECK(traj.stage(0).size() == 1);
  CHECK(traj.stage(0).contains(g->identity()));
  traj.extend_to(3);
  CHECK(traj.stage(3).size() == 8);
  auto oracle = oracles::dense_tuples(*ds, 3);
  for (const auto& e : traj.stage(3).elements()) CHECK(oracles::contains(oracle, e));

  // cache reuse: extending again returns the same set
  auto again = traj.extend_to(3);
  CHECK(again == traj.stage(3));

  // naive expansion agrees
  auto naive = oracles::naive_trajectory(*g, [&](const Element& e) { return shift(e); }, x0.elements(), 3);
  CHECK(naive.size() == 8);

  // phi = id on a subgroup: T_n = F for n >= 1
  auto f = subgroup_generate(FiniteSubset(g, {ds->unit(0, 1), ds->unit(1, 1)}));
  Trajectory tid(Endomorphism::identity(g), f.set());
  tid.extend_to(5);
  for (int n = 1; n <= 5; ++n) CHECK(tid.stage(n) == f.set());
  CHECK(tid.stabilized());
}

TEST_CASE("trajectory: monotone cache when 1 is in X") {
  std::mt19937_64 rng(7);
  auto g = catalog_entry("Z3N").build();
  auto shift = parse_endomorphism(g, "shift");
  for (int it = 0; it < 10; ++it) {
    std::vector<Element> elems{g->identity()};
    for (int i = 0; i < 3; ++i) elems.push_back(g->sample(rng));
    Trajectory traj(shift, FiniteSubset(g, elems));
    traj.extend_to(5);
    for (int n = 0; n < 5; ++n)
      for (const auto& e : traj.stage(n).elements()) CHECK(traj.stage(n + 1).contains(e));
  }
}

TEST_CASE("trajectory: budget exhaustion keeps the partial cache") {
  auto g = catalog_entry("Z6N").build();
  auto ds = std::dynamic_pointer_cast<const DirectSumGroup>(g);
  auto shift = parse_endomorphism(g, "shift");
  std::vector<Element> x0{g->identity()};
  for (unsigned v = 1; v < 6; ++v) x0.push_back(ds->unit(0, v));
  Trajectory traj(shift, FiniteSubset(g, x0));
  ExtendOptions opt;
  opt.max_size = 300;  // 6^3 = 216 fits, 6^4 = 1296 does not
  CHECK_THROWS_AS(traj.extend_to(6, opt), BudgetExceeded);
  CHECK(traj.computed() == 3);
  CHECK(traj.stage(3).size() == 216);
}

TEST_CASE("coset-count transport and projection of trajectories") {
  auto g = catalog_entry("Z6N").build();
  auto ds = std::dynamic_pointer_cast<const DirectSumGroup>(g);
  auto shift = parse_endomorphism(g, "shift");
  auto h = catalog_normal_subgroup(g, "mod:3");
  std::mt19937_64 rng(8);
  auto qs = induce_quotient(shift, h, rng);

  std::vector<Element> x0{g->identity()};
  for (unsigned v = 1; v < 6; ++v) x0.push_back(ds->unit(0, v));
  FiniteSubset x(g, x0);

  Trajectory tg(shift, x);
  Trajectory tq(qs.induced, qs.project_set(x));
  for (unsigned n = 0; n <= 4; ++n) {
    const auto& tn = tg.extend_to(n);
    const auto& qn = tq.extend_to(n);
    // pi(T_n(phi, X)) = T_n(phi~, pi(X)) as sets
    CHECK(qs.project_set(tn) == qn);
    // l(pi(T_n)) = l(T_n, H): coset count via canonical representatives
    std::unordered_set<Element, ElementHash> reps;
    for (const auto& e : tn.elements()) reps.insert(h.canonicalize(e));
    CHECK(reps.size() == qn.size());
  }
}

TEST_CASE("ell_rel does not grow under endomorphic images") {
  std::mt19937_64 rng(9);
  for (const auto& name : {"Q8", "S3", "H1"}) {
    auto g = catalog_entry(name).build();
    auto endos = catalog_endomorphisms(g);
    for (int it = 0; it < 10; ++it) {
      std::vector<Element> xs{g->sample(rng), g->sample(rng), g->sample(rng)};
      FiniteSubset x(g, xs);
      auto b = subgroup_generate(FiniteSubset::singleton(g, g->sample(rng)));
      for (const auto& ne : endos) {
        auto phix = ne.endo.map_set(x);
        auto phib = subgroup_generate(ne.endo.map_set(b.set()));
        CHECK(coset_count(phix, phib) <= coset_count(x, b));
      }
    }
  }
}

TEST_CASE("images_commute_check: abelian, Q8 subgroups, S3 witness") {
  auto z = catalog_entry("Z6N").build();
  auto ds = std::dynamic_pointer_cast<const DirectSumGroup>(z);
  auto shift = parse_endomorphism(z, "shift");
  FiniteSubgroup f0(FiniteSubset(z, {z->identity(), ds->unit(0, 3)}), FiniteSubgroup::AlreadyClosed{});
  CHECK(images_commute_check(shift, f0, 5).ok);

  auto s3 = catalog_entry("S3").build();
  auto pg = std::dynamic_pointer_cast<const FinitaryPermGroup>(s3);
  auto f = subgroup_generate(FiniteSubset::singleton(s3, pg->transposition(1, 2)));
  auto phi = parse_endomorphism(s3, "inner:(1 2 3)");
  auto res = images_commute_check(phi, f, 1);
  CHECK_FALSE(res.ok);
  REQUIRE(res.witness.has_value());
  CHECK(res.witness->first == 0);
  CHECK(res.witness->second == 1);
}

TEST_CASE("trajectory_subgroup_check: passes on shifts, fails at n = 2 in S3") {
  auto z3 = catalog_entry("Z3N").build();
  auto ds = std::dynamic_pointer_cast<const DirectSumGroup>(z3);
  auto shift = parse_endomorphism(z3, "shift");
  FiniteSubgroup f(FiniteSubset(z3, {z3->identity(), ds->unit(0, 1), ds->unit(0, 2)}),
                   FiniteSubgroup::AlreadyClosed{});
  Trajectory traj(shift, f.set());
  CHECK(trajectory_subgroup_check(traj, 6).ok);
  CHECK(traj.stage(6).size() == 729);  // Z3^6

  auto s3 = catalog_entry("S3").build();
  auto pg = std::dynamic_pointer_cast<const FinitaryPermGroup>(s3);
  auto fs = subgroup_generate(FiniteSubset::singleton(s3, pg->transposition(1, 2)));
  Trajectory ts(parse_endomorphism(s3, "inner:(1 2 3)"), fs.set());
  auto res = trajectory_subgroup_check(ts, 6);
  CHECK_FALSE(res.ok);
  CHECK(res.first_failure == 2);
  CHECK(ts.stage(2).size() == 4);

  Trajectory ttriv(parse_endomorphism(s3, "inner:(1 2 3)"), FiniteSubset::identity_of(s3));
  CHECK(trajectory_subgroup_check(ttriv, 6).ok);
}
