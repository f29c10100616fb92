// entropy: algebraic entropy of group endomorphisms, permutability tests,
// and Addition Theorem experiments on the built-in group catalog.
//
// Exit codes: 0 success, 2 usage error, 3 budget-truncated result,
// 4 invariant violation detected.

#include <fstream>
#include <iostream>
#include <sstream>
#include <string>

#include <CLI11.hpp>

#include "entro/entro.hpp"

namespace {

using namespace entro;

constexpr int kExitOk = 0;
constexpr int kExitUsage = 2;
constexpr int kExitTruncated = 3;
constexpr int kExitViolation = 4;

nlohmann::json load_json(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw UsageError("cannot open '" + path + "'");
  nlohmann::json j;
  in >> j;
  return j;
}

void write_file(const std::string& path, const std::string& content) {
  std::ofstream out(path);
  if (!out) throw UsageError("cannot write '" + path + "'");
  out << content;
}

/// --group accepts either a spec file or "catalog:<name>".
Group::Ptr resolve_group(const std::string& arg, std::string* label = nullptr) {
  if (arg.rfind("catalog:", 0) == 0) {
    auto entry = catalog_entry(arg.substr(8));
    if (label) *label = entry.name;
    return entry.build();
  }
  auto spec = GroupSpec::from_json(load_json(arg));
  if (label) *label = spec.variant;
  return build_group(spec);
}

void print_estimate(const EntropyEstimate& est, std::ostream& os) {
  os << "  n   l(T_2^n)/2^n [nats]   [log2]\n";
  for (const auto& p : est.sequence) {
    os << "  " << p.exponent << "   " << p.value << "   " << p.value / kLn2 << "\n";
  }
  os << "  upper bound: " << est.upper_bound << " nats (" << est.upper_bound / kLn2 << " log2)\n";
  if (est.exact)
    os << "  exact: " << *est.exact << " nats (" << to_string(*est.method) << ")\n";
  else
    os << "  exact: not certified (upper bound only)\n";
  if (est.identity_adjoined) os << "  note: identity adjoined to the base set\n";
  if (est.truncated) os << "  note: truncated by budget\n";
  for (const auto& f : est.flags) os << "  flag: " << f << "\n";
  if (est.invariant_violated) os << "  INVARIANT VIOLATION: 2^n sequence not non-increasing\n";
}

int estimate_exit_code(const EntropyEstimate& est) {
  if (est.invariant_violated) return kExitViolation;
  if (est.truncated && !est.exact) return kExitTruncated;
  return kExitOk;
}

int cmd_compute(const std::string& group_arg, const std::string& endo_arg, const std::string& set_arg,
                unsigned max_exp, std::size_t max_size, const std::string& json_out,
                const std::string& csv_out) {
  std::string label;
  auto g = resolve_group(group_arg, &label);
  auto phi = parse_endomorphism(g, endo_arg);
  BudgetPolicy budget;
  budget.max_exponent = max_exp;
  budget.max_set_size = max_size;

  EntropyEstimate est;
  nlohmann::json extra;
  if (set_arg == "family") {
    SubsetFamily family;
    if (auto lp = std::dynamic_pointer_cast<const LamplighterGroup>(g))
      family = lamplighter_ball_family(lp, budget.max_set_size);
    else
      family = as_subset_family(finite_subgroup_family(g, budget.max_set_size));
    auto sweep = entropy_h(phi, family, budget);
    std::cout << "h(" << phi.name() << ") sweep over " << sweep.table.size() << " members of "
              << g->describe() << "\n";
    for (const auto& row : sweep.table)
      std::cout << "  member " << row.index << " |F|=" << row.member_size << "  H="
                << row.estimate.value() << (row.estimate.exact ? " (exact)" : " (upper bound)") << "\n";
    std::cout << (sweep.stabilized ? "  supremum stabilized\n" : "  supremum not stabilized\n");
    if (sweep.diverging) std::cout << "  diverging (h = infinity candidate)\n";
    est = sweep.overall;
    std::cout << "  h value: " << est.value() << " nats (" << est.value() / kLn2 << " log2)"
              << (est.exact ? " exact" : "") << "\n";
    extra = to_json(sweep);
  } else {
    std::vector<Element> elems;
    std::string body = set_arg;
    if (body.rfind("explicit:", 0) == 0) body = body.substr(9);
    std::stringstream ss(body);
    std::string tok;
    while (std::getline(ss, tok, '/')) {
      auto e = g->parse(tok);
      if (!e) throw UsageError("cannot parse element '" + tok + "' in " + g->describe());
      elems.push_back(*e);
    }
    if (elems.empty()) throw UsageError("--set needs 'family' or 'explicit:<el>/<el>/...'");
    est = entropy_H(phi, FiniteSubset(g, std::move(elems)), budget);
    std::cout << "H(" << phi.name() << ", X) on " << g->describe() << "\n";
    print_estimate(est, std::cout);
    extra = to_json(est);
  }
  if (!json_out.empty()) write_file(json_out, extra.dump(2) + "\n");
  if (!csv_out.empty()) write_file(csv_out, to_csv(est));
  return estimate_exit_code(est);
}

void print_at_report(const ATReport& rep, std::ostream& os) {
  os << rep.label << "\n";
  auto line = [&](const char* name, const SweepResult& sw) {
    const auto& e = sw.overall;
    os << "  " << name << " = " << e.value() << " nats (" << e.value() / kLn2 << " log2)"
       << (e.exact ? " [exact]" : " [upper bound]");
    if (sw.diverging) os << " [diverging: h = infinity candidate]";
    os << "\n";
  };
  line("h(phi)      ", rep.sweep_G);
  line("h(phi|H)    ", rep.sweep_H);
  line("h(phi~ G/H) ", rep.sweep_Q);
  os << "  verdict: " << to_string(rep.verdict) << "\n";
  os << "  rel/quotient cross-validated: " << (rep.rel_cross_validated ? "yes" : "NO") << "\n";
  os << "  certification: " << to_string(rep.certification.level) << " (" << rep.certification.checks
     << " checks)\n";
  if (!rep.chain_checks.empty()) {
    bool all = true;
    for (const auto& c : rep.chain_checks) all &= c.inequality_ok && c.pi_identity_ok;
    os << "  chain checks (n <= " << rep.chain_checks.back().n << "): " << (all ? "pass" : "FAIL") << "\n";
  }
  for (const auto& n : rep.notes) os << "  note: " << n << "\n";
}

int at_exit_code(const ATReport& rep) {
  if (rep.verdict == ATVerdict::violation_flag) return kExitViolation;
  if (rep.verdict == ATVerdict::inconclusive_budget) return kExitTruncated;
  return kExitOk;
}

int cmd_at_verify(const std::string& exp_path, const std::string& budget_path, const std::string& json_out) {
  auto exp = ATExperiment::from_json(load_json(exp_path));
  if (!budget_path.empty()) {
    auto b = load_json(budget_path);
    exp.budget.max_exponent = b.value("max_exponent", exp.budget.max_exponent);
    exp.budget.max_set_size = b.value("max_set_size", exp.budget.max_set_size);
    exp.budget.time_cap_seconds = b.value("time_cap_seconds", exp.budget.time_cap_seconds);
    exp.budget.stabilization_window = b.value("stabilization_window", exp.budget.stabilization_window);
    exp.budget.max_family_members = b.value("max_family_members", exp.budget.max_family_members);
  }
  auto rep = run_at_experiment(exp);
  print_at_report(rep, std::cout);
  if (!json_out.empty()) write_file(json_out, to_json(rep).dump(2) + "\n");
  return at_exit_code(rep);
}

int cmd_suite(const std::string& roster, const std::string& json_out) {
  if (roster != "default") throw UsageError("unknown roster '" + roster + "'");
  auto reports = run_catalog_suite();
  nlohmann::json all = nlohmann::json::array();
  int rc = kExitOk;
  for (const auto& rep : reports) {
    print_at_report(rep, std::cout);
    std::cout << "\n";
    all.push_back(to_json(rep));
    if (rep.verdict == ATVerdict::violation_flag) rc = kExitViolation;
  }
  if (!json_out.empty()) write_file(json_out, all.dump(2) + "\n");
  return rc;
}

int cmd_permute(const std::string& group_arg, bool enumerate, const std::string& csv_out) {
  std::string label;
  auto g = resolve_group(group_arg, &label);
  if (!enumerate) throw UsageError("permute currently requires --enumerate");
  auto subs = subgroup_enumerate(g);
  std::cout << label << ": " << subs.size() << " subgroups\n";
  std::size_t failures = 0;
  std::optional<std::pair<std::size_t, std::size_t>> first_fail;
  for (std::size_t i = 0; i < subs.size(); ++i)
    for (std::size_t j = i + 1; j < subs.size(); ++j)
      if (!sets_permute(subs[i], subs[j]).permutes) {
        ++failures;
        if (!first_fail) first_fail = {i, j};
      }
  if (failures == 0) {
    std::cout << "all subgroup pairs permute (quasihamiltonian at this truncation)\n";
  } else {
    std::cout << failures << " non-permutable pairs; first: S" << first_fail->first << " (order "
              << subs[first_fail->first].size() << ") vs S" << first_fail->second << " (order "
              << subs[first_fail->second].size() << ")\n";
  }
  if (!csv_out.empty()) write_file(csv_out, permutability_matrix_csv(subs));
  return kExitOk;
}

struct Example {
  std::string name;
  std::string description;
  int (*run)();
};

int example_bernoulli() {
  for (unsigned m : {2u, 3u, 6u}) {
    auto g = build_group(GroupSpec::restricted_direct_sum(m, IndexSet::Naturals));
    auto ds = std::dynamic_pointer_cast<const DirectSumGroup>(g);
    std::vector<Element> x0;
    for (unsigned v = 0; v < m; ++v) x0.push_back(ds->unit(0, v));
    auto est = entropy_H(parse_endomorphism(g, "shift"), FiniteSubset(g, std::move(x0)));
    std::cout << "shift on Z" << m << "^(N), X = coordinate-0 subgroup; log " << m << " = "
              << std::log(double(m)) << "\n";
    print_estimate(est, std::cout);
  }
  return kExitOk;
}

int example_at_z6() {
  auto rep = run_at_experiment(default_roster()[0]);
  print_at_report(rep, std::cout);
  return at_exit_code(rep);
}

int example_q8() { return cmd_permute("catalog:Q8", true, ""); }

int example_h1() { return cmd_permute("catalog:H1", true, ""); }

int example_s3() {
  auto g = catalog_entry("S3").build();
  auto pg = std::dynamic_pointer_cast<const FinitaryPermGroup>(g);
  auto f = subgroup_generate(FiniteSubset::singleton(g, pg->transposition(1, 2)));
  auto e = subgroup_generate(FiniteSubset::singleton(g, pg->transposition(1, 3)));
  auto rep = sets_permute(f, e);
  std::cout << "S3: F = <(1 2)>, E = <(1 3)>: |FE| = " << rep.product_size
            << ", permute: " << (rep.permutes ? "yes" : "no") << "\n";
  if (rep.witness) std::cout << "witness " << g->format(*rep.witness) << " in " << rep.witness_side << "\n";
  auto phi = parse_endomorphism(g, "inner:(1 2 3)");
  Trajectory traj(phi, f.set());
  auto chk = trajectory_subgroup_check(traj, 4);
  std::cout << "T_n(inner((1 2 3)), F) subgroup chain: "
            << (chk.ok ? "all subgroups" : "fails at n = " + std::to_string(*chk.first_failure)) << "\n";
  return kExitOk;
}

int example_sfin() {
  for (auto [n, m] : {std::pair<unsigned, unsigned>{3, 4}, {3, 5}}) {
    auto w = sfin_noncofinal_witness(n, m);
    std::cout << "S_fin(N+): H = S_" << m << ", N = <(" << n << " " << m + 1 << ")>: |HN| = " << w.hn_size
              << ", |NH| = " << w.nh_size << ", HN == NH: " << (w.products_differ ? "no" : "yes")
              << ", witness " << w.witness_cycles << " in " << w.witness_side << "\n";
  }
  return kExitOk;
}

int example_lamplighter() {
  auto lp = std::dynamic_pointer_cast<const LamplighterGroup>(build_group(GroupSpec::lamplighter(2)));
  FiniteSubset gens(lp, {lp->identity(), lp->lamp(0), lp->shift_element(1), lp->shift_element(-1)});
  Trajectory traj(Endomorphism::identity(lp), gens);
  ExtendOptions opt;
  opt.max_size = std::size_t{1} << 21;
  traj.extend_to(17, opt);
  std::cout << "word balls of {1, lamp(0), t, t^-1} in the lamplighter:\n  n |T_n| increment\n";
  for (std::size_t n = 0; n <= 16; ++n) {
    double inc = std::log(double(traj.stage(n + 1).size()) / double(traj.stage(n).size()));
    std::cout << "  " << n << " " << traj.stage(n).size() << " " << inc << "\n";
  }
  auto rep = run_at_experiment(default_roster().back());
  print_at_report(rep, std::cout);
  return kExitOk;
}

int example_rel_quotient() {
  auto exp = default_roster()[0];
  ResolvedExperiment rexp(exp);
  auto member = *rexp.g_family(0);
  auto rel = entropy_H_rel(rexp.endo, member, rexp.h, exp.budget);
  auto quo = entropy_H(rexp.quotient.induced, rexp.quotient.project_set(member), exp.budget);
  std::cout << "Z6^(N) shift, X = coordinate-0 subgroup, H = mod:3\n"
            << "  n   l(T_2^n,H)/2^n   l(T_2^n(quotient))/2^n\n";
  for (std::size_t i = 0; i < std::min(rel.sequence.size(), quo.sequence.size()); ++i)
    std::cout << "  " << rel.sequence[i].exponent << "   " << rel.sequence[i].value << "   "
              << quo.sequence[i].value << "\n";
  return kExitOk;
}

const std::vector<Example>& examples() {
  static const std::vector<Example> ex = {
      {"bernoulli-shift", "shift entropy on Z_m^(N) for m = 2,3,6 (exact log m)", example_bernoulli},
      {"at-z6", "Addition Theorem on Z6^(N) with H the {0,3}-valued subgroup", example_at_z6},
      {"q8-permutability", "all subgroup pairs of Q8 permute", example_q8},
      {"h1-quasihamiltonian", "all subgroup pairs of Z9 x| Z3 permute", example_h1},
      {"s3-witness", "non-permutable pair in S3 and the failing trajectory chain", example_s3},
      {"sfin-witness", "HN != NH witnesses in the finitary symmetric group", example_sfin},
      {"lamplighter-growth", "exponential ball growth and the h = infinity candidate flag", example_lamplighter},
      {"rel-quotient", "relative estimator vs explicit quotient, term by term", example_rel_quotient},
  };
  return ex;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"algebraic entropy of group endomorphisms"};
  app.require_subcommand(1);

  std::string group_arg, endo_arg = "id", set_arg = "family", json_out, csv_out;
  unsigned max_exp = 4;
  std::size_t max_size = kDefaultMaxSize;

  auto* compute = app.add_subcommand("compute", "entropy of one endomorphism");
  compute->add_option("--group", group_arg, "group spec JSON file or catalog:<name>")->required();
  compute->add_option("--endo", endo_arg, "endomorphism spec (id, shift, inner:<el>, ...)");
  compute->add_option("--set", set_arg, "'family' or explicit:<el>/<el>/...");
  compute->add_option("--max-exp", max_exp, "largest exponent n of T_{2^n}");
  compute->add_option("--max-size", max_size, "per-stage cardinality budget");
  compute->add_option("--json", json_out, "write the full estimate as JSON");
  compute->add_option("--csv", csv_out, "write the 2^n sequence as CSV");

  std::string exp_path, budget_path;
  auto* at = app.add_subcommand("at-verify", "run one Addition Theorem experiment");
  at->add_option("--experiment", exp_path, "experiment JSON file")->required();
  at->add_option("--budget", budget_path, "budget JSON file");
  at->add_option("--json", json_out, "write the report as JSON");

  std::string roster = "default";
  auto* suite = app.add_subcommand("suite", "run the built-in experiment roster");
  suite->add_option("--roster", roster, "roster name");
  suite->add_option("--json", json_out, "write all reports as JSON");

  bool enumerate = false;
  auto* permute = app.add_subcommand("permute", "permutability matrix of a finite group");
  permute->add_option("--group", group_arg, "group spec JSON file or catalog:<name>")->required();
  permute->add_flag("--enumerate", enumerate, "enumerate all subgroups");
  permute->add_option("--csv", csv_out, "write the permutability matrix as CSV");

  auto* ex = app.add_subcommand("examples", "list or run the worked examples");
  std::string ex_action, ex_name;
  ex->add_option("action", ex_action, "'list' or 'run'")->required();
  ex->add_option("name", ex_name, "example name (for 'run')");

  CLI11_PARSE(app, argc, argv);

  try {
    if (compute->parsed()) return cmd_compute(group_arg, endo_arg, set_arg, max_exp, max_size, json_out, csv_out);
    if (at->parsed()) return cmd_at_verify(exp_path, budget_path, json_out);
    if (suite->parsed()) return cmd_suite(roster, json_out);
    if (permute->parsed()) return cmd_permute(group_arg, enumerate, csv_out);
    if (ex->parsed()) {
      if (ex_action == "list") {
        for (const auto& e : examples()) std::cout << e.name << "  -  " << e.description << "\n";
        return kExitOk;
      }
      if (ex_action == "run") {
        for (const auto& e : examples())
          if (e.name == ex_name) return e.run();
        throw UsageError("no example named '" + ex_name + "' (try 'examples list')");
      }
      throw UsageError("examples: action must be 'list' or 'run'");
    }
  } catch (const UsageError& e) {
    std::cerr << "usage error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const ConstructionError& e) {
    std::cerr << "construction error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const UnsupportedError& e) {
    std::cerr << "unsupported: " << e.what() << "\n";
    return kExitUsage;
  } catch (const BudgetExceeded& e) {
    std::cerr << "budget exceeded: " << e.what() << "\n";
    return kExitTruncated;
  } catch (const InvarianceError& e) {
    std::cerr << "invariant violation: " << e.what() << " (witness: " << e.witness() << ")\n";
    return kExitViolation;
  } catch (const nlohmann::json::exception& e) {
    std::cerr << "json error: " << e.what() << "\n";
    return kExitUsage;
  }
  return kExitUsage;
}
