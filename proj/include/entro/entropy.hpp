#pragma once

#include <chrono>
#include <cmath>
#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <unordered_set>
#include <vector>

#include "entro/dynamics.hpp"
#include "entro/finite_set.hpp"

namespace entro {

inline constexpr double kIncrementTol = 1e-12;
inline constexpr double kExactCompareTol = 1e-9;

struct BudgetPolicy {
  unsigned max_exponent = 4;                     // compute up to T_{2^max_exponent}
  std::size_t max_set_size = kDefaultMaxSize;    // per-stage cardinality cap
  double time_cap_seconds = 120.0;
  unsigned stabilization_window = 3;
  unsigned max_family_members = 8;               // sweep cap

  void validate() const {
    if (max_set_size == 0 || time_cap_seconds <= 0 || stabilization_window == 0 || max_family_members == 0)
      throw UsageError("BudgetPolicy: all fields must be positive");
  }
};

struct BudgetUsage {
  std::size_t stages_computed = 0;  // largest k with T_k materialized
  std::size_t largest_stage = 0;    // max |T_k|
  double elapsed_seconds = 0.0;
};

/// One entropy estimate: the decreasing sequence ℓ(T_{2^n})/2^n, its minimum
/// as the upper bound, an optional exact value with the method that produced
/// it, and the raw per-stage data the report renders.
struct EntropyEstimate {
  enum class Method { stabilized_ratio, identity_map, trivial };

  struct Point {
    unsigned exponent;  // n
    double value;       // ℓ(T_{2^n})/2^n, nats
  };

  std::vector<Point> sequence;
  double upper_bound = 0.0;
  std::optional<double> exact;
  std::optional<Method> method;
  std::vector<std::uint64_t> stage_sizes;  // |T_k| for k = 0..K
  BudgetUsage budget_used;
  bool truncated = false;
  bool identity_adjoined = false;
  bool invariant_violated = false;  // the 2^n sequence failed to be non-increasing
  std::vector<std::string> flags;

  /// Exact value when certified, otherwise the best (smallest) upper bound.
  double value() const { return exact ? *exact : upper_bound; }

  double ell_at(std::size_t k) const { return std::log(static_cast<double>(stage_sizes.at(k))); }

  /// ℓ(T_{k+1}) - ℓ(T_k), computed from the exact integer ratio.
  double increment(std::size_t k) const {
    return std::log(static_cast<double>(stage_sizes.at(k + 1)) / static_cast<double>(stage_sizes.at(k)));
  }
  std::size_t increment_count() const { return stage_sizes.empty() ? 0 : stage_sizes.size() - 1; }
};

inline const char* to_string(EntropyEstimate::Method m) {
  switch (m) {
    case EntropyEstimate::Method::stabilized_ratio: return "stabilized_ratio";
    case EntropyEstimate::Method::identity_map: return "identity_map";
    default: return "trivial";
  }
}

namespace detail {

/// Shared driver for the absolute and relative estimators: extends the
/// trajectory stage by stage, records a per-stage cardinality, and applies
/// the exactness rules.
///
/// Exactness (stabilized_ratio): with increments d_0..d_{K-1}, let t be the
/// last index whose increment differs from the final one by more than 1e-12
/// (t = -1 when none). The estimate is exact when K >= window and the final
/// window of increments sits at least two steps past the transient:
/// K - window - t >= 2. The exact value is the stable increment, since
/// eventually-constant increments force ℓ(T_n)/n to converge to that constant.
inline EntropyEstimate run_entropy_core(Trajectory& traj, const BudgetPolicy& budget,
                                        const std::function<std::uint64_t(const FiniteSubset&)>& stage_count,
                                        bool stabilize_shortcut) {
  budget.validate();
  const auto start = std::chrono::steady_clock::now();
  ExtendOptions opt;
  opt.max_size = budget.max_set_size;
  opt.deadline = start + std::chrono::duration_cast<std::chrono::steady_clock::duration>(
                             std::chrono::duration<double>(budget.time_cap_seconds));

  EntropyEstimate est;
  est.stage_sizes.push_back(stage_count(traj.stage(0)));  // |T_0| = 1 (rel: one coset)
  const std::size_t k_target = std::size_t{1} << budget.max_exponent;

  for (std::size_t k = 1; k <= k_target; ++k) {
    try {
      traj.extend_to(k, opt);
    } catch (const BudgetExceeded&) {
      est.truncated = true;
      break;
    }
    est.stage_sizes.push_back(stage_count(traj.stage(k)));
    est.budget_used.largest_stage = std::max(est.budget_used.largest_stage, traj.stage(k).size());
    if (stabilize_shortcut && k >= 2 && traj.stabilized()) {
      // bounded trajectory: entropy is exactly zero
      est.exact = 0.0;
      est.method = traj.endo().is_identity_map() ? EntropyEstimate::Method::identity_map
                                                 : EntropyEstimate::Method::trivial;
      break;
    }
  }
  est.budget_used.stages_computed = est.stage_sizes.size() - 1;
  est.budget_used.elapsed_seconds =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();

  // the 2^n subsequence
  for (unsigned n = 0; n <= budget.max_exponent; ++n) {
    std::size_t idx = std::size_t{1} << n;
    if (idx > est.budget_used.stages_computed) break;
    est.sequence.push_back({n, est.ell_at(idx) / static_cast<double>(idx)});
  }
  if (!est.sequence.empty()) {
    est.upper_bound = est.sequence.front().value;
    for (const auto& p : est.sequence) {
      if (p.value > est.upper_bound + kIncrementTol) est.invariant_violated = true;
      est.upper_bound = std::min(est.upper_bound, p.value);
    }
    for (std::size_t i = 1; i < est.sequence.size(); ++i)
      if (est.sequence[i].value > est.sequence[i - 1].value + kIncrementTol) est.invariant_violated = true;
  }

  if (!est.exact) {
    const std::size_t k_incr = est.increment_count();
    const unsigned w = budget.stabilization_window;
    if (k_incr >= w) {
      const double stable = est.increment(k_incr - 1);
      std::ptrdiff_t t = -1;
      for (std::ptrdiff_t i = static_cast<std::ptrdiff_t>(k_incr) - 1; i >= 0; --i) {
        if (std::abs(est.increment(i) - stable) > kIncrementTol) {
          t = i;
          break;
        }
      }
      if (static_cast<std::ptrdiff_t>(k_incr) - static_cast<std::ptrdiff_t>(w) - t >= 2) {
        est.exact = std::max(0.0, stable);
        est.method = EntropyEstimate::Method::stabilized_ratio;
      }
    }
  }
  if (est.exact && !est.sequence.empty() && *est.exact > est.upper_bound + kIncrementTol)
    est.invariant_violated = true;

  // annotation: sub-exponential tail (increments shrinking toward zero)
  if (!est.exact && est.increment_count() >= budget.stabilization_window + 1) {
    bool shrinking = true;
    const std::size_t k_incr = est.increment_count();
    for (std::size_t i = k_incr - budget.stabilization_window; i + 1 <= k_incr - 1; ++i)
      shrinking &= est.increment(i + 1) <= est.increment(i) + kIncrementTol;
    if (shrinking && est.increment(k_incr - 1) < 0.1) est.flags.push_back("h_zero_candidate");
  }
  return est;
}

}  // namespace detail

/// H(φ, X) by the decreasing scheme inf_n ℓ(T_{2^n}(φ,X))/2^n. The identity
/// is adjoined to X when absent (recorded in the estimate); budget exhaustion
/// yields a truncated estimate rather than an error.
inline EntropyEstimate entropy_H(const Endomorphism& phi, const FiniteSubset& x,
                                 const BudgetPolicy& budget = {}) {
  bool adjoined = !x.contains_identity();
  Trajectory traj(phi, adjoined ? x.with_identity() : x);
  auto est = detail::run_entropy_core(
      traj, budget, [](const FiniteSubset& t) { return static_cast<std::uint64_t>(t.size()); }, true);
  est.identity_adjoined = adjoined;
  return est;
}

/// Relative estimator: inf_n ℓ(T_{2^n}(φ,X), H)/2^n computed
/// inside G via the canonicalize map, without building the quotient. This
/// equals H(φ̄_{G/H}, π(X)).
inline EntropyEstimate entropy_H_rel(const Endomorphism& phi, const FiniteSubset& x,
                                     const NormalSubgroupSpec& h, const BudgetPolicy& budget = {}) {
  if (!h.has_canonicalizer())
    throw UnsupportedError("entropy_H_rel: subgroup '" + h.name + "' has no canonicalize map");
  if (h.ambient->tag() != phi.domain()->tag())
    throw UsageError("entropy_H_rel: subgroup belongs to a different group");
  auto canon = h.canonicalize;
  auto count_cosets = [canon](const FiniteSubset& t) {
    std::unordered_set<Element, ElementHash> reps;
    reps.reserve(t.size() * 2);
    for (const auto& e : t.elements()) reps.insert(canon(e));
    return static_cast<std::uint64_t>(reps.size());
  };
  bool adjoined = !x.contains_identity();
  Trajectory traj(phi, adjoined ? x.with_identity() : x);
  auto est = detail::run_entropy_core(traj, budget, count_cosets, true);
  est.identity_adjoined = adjoined;
  return est;
}

/// A cofinal-by-construction increasing family: k -> k-th member, nullopt
/// once exhausted.
using SubsetFamily = std::function<std::optional<FiniteSubset>(unsigned)>;
using SubgroupFamily = std::function<std::optional<FiniteSubgroup>(unsigned)>;

inline SubsetFamily as_subset_family(SubgroupFamily f) {
  return [f = std::move(f)](unsigned k) -> std::optional<FiniteSubset> {
    auto s = f(k);
    if (!s) return std::nullopt;
    return s->set();
  };
}

struct SweepMemberRow {
  unsigned index = 0;
  std::size_t member_size = 0;
  EntropyEstimate estimate;
};

/// Result of a family sweep for h(φ) = sup over the family of H(φ, -).
struct SweepResult {
  EntropyEstimate overall;  // value() = running supremum; exact when certified
  std::vector<SweepMemberRow> table;
  bool stabilized = false;        // sup constant across the last window of members
  bool family_exhausted = false;  // the family generator ran out (sup attained on a cofinal family)
  bool diverging = false;         // h = ∞ candidate
};

/// h(φ) over an increasing cofinal family: running supremum of H(φ, F_k)
/// under a shared budget. Divergence flag: three consecutive member-to-member
/// gains of at least log 2. Exactness: every member exact and the supremum
/// stabilized across the window (or the family exhausted).
inline SweepResult entropy_h(const Endomorphism& phi, const SubsetFamily& family,
                             const BudgetPolicy& budget = {}) {
  budget.validate();
  const auto start = std::chrono::steady_clock::now();
  SweepResult res;
  double sup = 0.0;
  bool any = false;
  bool all_exact = true;
  std::vector<double> member_values;

  for (unsigned k = 0; k < budget.max_family_members; ++k) {
    if (std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count() >
        budget.time_cap_seconds) {
      res.overall.truncated = true;
      break;
    }
    auto member = family(k);
    if (!member) {
      res.family_exhausted = true;
      break;
    }
    if (member->size() > budget.max_set_size) {
      if (!any) throw UnsupportedError("entropy_h: family exhausted before any member fits the budget");
      res.overall.truncated = true;
      break;
    }
    EntropyEstimate est = entropy_H(phi, *member, budget);
    any = true;
    all_exact &= est.exact.has_value();
    res.overall.truncated |= est.truncated;
    res.overall.invariant_violated |= est.invariant_violated;
    sup = std::max(sup, est.value());
    member_values.push_back(est.value());
    res.table.push_back({k, member->size(), std::move(est)});

    const unsigned w = budget.stabilization_window;
    if (member_values.size() >= w) {
      bool stable = true;
      for (std::size_t i = member_values.size() - w; i < member_values.size(); ++i)
        stable &= std::abs(member_values[i] - sup) <= kIncrementTol;
      if (stable) {
        res.stabilized = true;
        break;
      }
    }
    if (member_values.size() >= 4) {
      bool diverging = true;
      for (std::size_t i = member_values.size() - 3; i < member_values.size(); ++i)
        diverging &= member_values[i] - member_values[i - 1] >= std::log(2.0) - kExactCompareTol;
      if (diverging) {
        res.diverging = true;
        res.overall.flags.push_back("h_infinity_candidate");
        break;
      }
    }
  }
  if (!any) throw UnsupportedError("entropy_h: empty family");

  res.overall.upper_bound = sup;
  if (all_exact && res.stabilized) {
    res.overall.exact = sup;
    res.overall.method = EntropyEstimate::Method::stabilized_ratio;
  }
  res.overall.budget_used.elapsed_seconds =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  for (const auto& row : res.table) {
    res.overall.budget_used.largest_stage =
        std::max(res.overall.budget_used.largest_stage, row.estimate.budget_used.largest_stage);
    res.overall.budget_used.stages_computed =
        std::max(res.overall.budget_used.stages_computed, row.estimate.budget_used.stages_computed);
  }
  return res;
}

inline SweepResult entropy_h(const Endomorphism& phi, const SubgroupFamily& family,
                             const BudgetPolicy& budget = {}) {
  return entropy_h(phi, as_subset_family(family), budget);
}

/// Checks whether n -> ℓ(T_{2^n}(φ,X), T_{2^n}(φ,F))/2^n is
/// non-increasing for F in F_C(G). The trajectory of F must consist of
/// subgroups up to 2^N (precondition, verified here).
struct RelativeMonotoneResult {
  bool ok = true;
  std::vector<double> values;  // per n
  std::optional<unsigned> first_violation;
};

inline RelativeMonotoneResult relative_monotone_check(const Endomorphism& phi, const FiniteSubset& x,
                                                      const FiniteSubgroup& f, unsigned n_max,
                                                      std::size_t max_size = kDefaultMaxSize) {
  ExtendOptions opt;
  opt.max_size = max_size;
  Trajectory tf(phi, f.set());
  auto pre = trajectory_subgroup_check(tf, std::size_t{1} << n_max, opt);
  if (!pre.ok)
    throw UsageError("relative_monotone_check: T_" + std::to_string(*pre.first_failure) +
                     "(phi,F) is not a subgroup (F is effectively outside F_C)");
  Trajectory tx(phi, x.contains_identity() ? x : x.with_identity());
  RelativeMonotoneResult res;
  for (unsigned n = 0; n <= n_max; ++n) {
    std::size_t idx = std::size_t{1} << n;
    const FiniteSubset& txn = tx.extend_to(idx, opt);
    FiniteSubgroup bn(tf.stage(idx), FiniteSubgroup::AlreadyClosed{});
    double v = ell_rel(txn, bn) / static_cast<double>(idx);
    if (!res.values.empty() && v > res.values.back() + kIncrementTol) {
      res.ok = false;
      if (!res.first_violation) res.first_violation = n;
    }
    res.values.push_back(v);
  }
  return res;
}

}  // namespace entro
