#include <doctest.h>

#include <algorithm>

#include "entro/entro.hpp"

using namespace entro;

TEST_CASE("estimate serialization: JSON carries nats and log2, CSV lines match") {
  auto g = catalog_entry("Z2N").build();
  auto ds = std::dynamic_pointer_cast<const DirectSumGroup>(g);
  auto est = entropy_H(parse_endomorphism(g, "shift"),
                       FiniteSubset(g, {g->identity(), ds->unit(0, 1)}));
  auto j = to_json(est);
  CHECK(j["schema_version"] == 1);
  CHECK(j.contains("exact_nats"));
  CHECK(j["exact_log2"].get<double>() == doctest::Approx(1.0).epsilon(1e-9));
  CHECK(j["sequence"].size() == est.sequence.size());
  CHECK(j["stage_sizes"].size() == est.stage_sizes.size());

  auto csv = to_csv(est);
  std::size_t lines = std::count(csv.begin(), csv.end(), '\n');
  CHECK(lines == est.sequence.size() + 1);
  CHECK(csv.rfind("exponent,value_nats,value_log2", 0) == 0);
}

TEST_CASE("AT report serialization") {
  ATExperiment exp;
  exp.label = "q8-json";
  exp.group = GroupSpec::q8();
  exp.endo_spec = "inner:j";
  exp.normal_subgroup = "center";
  exp.chain_depth = 2;
  auto rep = run_at_experiment(exp);
  auto j = to_json(rep);
  CHECK(j["label"] == "q8-json");
  CHECK(j["verdict"] == "additivity_holds_exact");
  CHECK(j["h_G"]["overall"].contains("exact_nats"));
  CHECK(j["chain_checks"].size() == 3);
  CHECK(j["rel_cross_validated"] == true);
}

TEST_CASE("permutability matrix CSV") {
  auto s3 = catalog_entry("S3").build();
  auto subs = subgroup_enumerate(s3);
  auto csv = permutability_matrix_csv(subs);
  CHECK(csv.rfind("subgroup,S0", 0) == 0);
  // 6 subgroups: header + 6 rows
  CHECK(std::count(csv.begin(), csv.end(), '\n') == 7);
  // S3 has a non-permutable pair somewhere
  CHECK(csv.find(",0") != std::string::npos);
}

TEST_CASE("sfin witness serialization") {
  auto w = sfin_noncofinal_witness(3, 4);
  auto j = to_json(w);
  CHECK(j["products_differ"] == true);
  CHECK(j["three_cycle_in_difference"] == true);
  CHECK(j["n"] == 3);
  CHECK(j["m"] == 4);
}
