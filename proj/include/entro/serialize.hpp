#pragma once

#include <cmath>
#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "entro/at.hpp"
#include "entro/entropy.hpp"
#include "entro/permutability.hpp"

namespace entro {

inline constexpr double kLn2 = 0.6931471805599453;

/// Estimates serialize with both nats and log2 values.
inline nlohmann::json to_json(const EntropyEstimate& est) {
  nlohmann::json j;
  j["schema_version"] = 1;
  j["sequence"] = nlohmann::json::array();
  for (const auto& p : est.sequence)
    j["sequence"].push_back({{"exponent", p.exponent}, {"value_nats", p.value}, {"value_log2", p.value / kLn2}});
  j["upper_bound_nats"] = est.upper_bound;
  j["upper_bound_log2"] = est.upper_bound / kLn2;
  if (est.exact) {
    j["exact_nats"] = *est.exact;
    j["exact_log2"] = *est.exact / kLn2;
    j["method"] = est.method ? to_string(*est.method) : "";
  }
  j["stage_sizes"] = est.stage_sizes;
  j["truncated"] = est.truncated;
  j["identity_adjoined"] = est.identity_adjoined;
  j["invariant_violated"] = est.invariant_violated;
  j["flags"] = est.flags;
  j["budget_used"] = {{"stages_computed", est.budget_used.stages_computed},
                      {"largest_stage", est.budget_used.largest_stage},
                      {"elapsed_seconds", est.budget_used.elapsed_seconds}};
  return j;
}

inline std::string to_csv(const EntropyEstimate& est) {
  std::ostringstream out;
  out << "exponent,value_nats,value_log2\n";
  out.precision(17);
  for (const auto& p : est.sequence) out << p.exponent << "," << p.value << "," << p.value / kLn2 << "\n";
  return out.str();
}

inline nlohmann::json to_json(const SweepResult& sw) {
  nlohmann::json j;
  j["overall"] = to_json(sw.overall);
  j["stabilized"] = sw.stabilized;
  j["family_exhausted"] = sw.family_exhausted;
  j["diverging"] = sw.diverging;
  j["members"] = nlohmann::json::array();
  for (const auto& row : sw.table)
    j["members"].push_back(
        {{"index", row.index}, {"size", row.member_size}, {"estimate", to_json(row.estimate)}});
  return j;
}

inline nlohmann::json to_json(const ChainRecord& c) {
  return {{"n", c.n},
          {"a_size", c.a_size},
          {"c_size", c.c_size},
          {"b_size", c.b_size},
          {"rel_cosets", c.rel_cosets},
          {"inequality_ok", c.inequality_ok},
          {"pi_identity_ok", c.pi_identity_ok}};
}

inline nlohmann::json to_json(const ATReport& rep) {
  nlohmann::json j;
  j["schema_version"] = 1;
  j["label"] = rep.label;
  j["verdict"] = to_string(rep.verdict);
  j["tolerance"] = rep.tolerance;
  j["h_G"] = to_json(rep.sweep_G);
  j["h_H"] = to_json(rep.sweep_H);
  j["h_Q"] = to_json(rep.sweep_Q);
  j["rel_cross_validated"] = rep.rel_cross_validated;
  j["certification"] = {{"level", to_string(rep.certification.level)}, {"checks", rep.certification.checks}};
  j["chain_checks"] = nlohmann::json::array();
  for (const auto& c : rep.chain_checks) j["chain_checks"].push_back(to_json(c));
  j["notes"] = rep.notes;
  return j;
}

/// Permutability matrix over an enumerated subgroup list: rows/columns are
/// subgroup ids, cells are 1 when the pair permutes.
inline std::string permutability_matrix_csv(const std::vector<FiniteSubgroup>& subs) {
  std::ostringstream out;
  out << "subgroup";
  for (std::size_t i = 0; i < subs.size(); ++i) out << ",S" << i;
  out << "\n";
  for (std::size_t i = 0; i < subs.size(); ++i) {
    out << "S" << i << "(order " << subs[i].size() << ")";
    for (std::size_t j = 0; j < subs.size(); ++j)
      out << "," << (sets_permute(subs[i], subs[j]).permutes ? 1 : 0);
    out << "\n";
  }
  return out.str();
}

inline nlohmann::json to_json(const SfinWitnessReport& w) {
  return {{"n", w.n},
          {"m", w.m},
          {"products_differ", w.products_differ},
          {"hn_size", w.hn_size},
          {"nh_size", w.nh_size},
          {"witness", w.witness_cycles},
          {"witness_side", w.witness_side},
          {"three_cycle_in_difference", w.three_cycle_in_difference}};
}

}  // namespace entro
