#pragma once

#include <chrono>
#include <functional>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "entro/core.hpp"
#include "entro/finite_set.hpp"
#include "entro/group.hpp"
#include "entro/groups/quotient.hpp"

namespace entro {

/// An endomorphism of an ambient group: an element map with the
/// homomorphism contract. The contract is certified separately
/// (exhaustively on small finite groups, by sampling otherwise).
class Endomorphism {
public:
  Endomorphism(Group::Ptr domain, std::string name, std::function<Element(const Element&)> map,
               bool is_identity = false)
      : domain_(std::move(domain)), name_(std::move(name)), map_(std::move(map)), identity_(is_identity) {}

  static Endomorphism identity(Group::Ptr domain) {
    return Endomorphism(std::move(domain), "id", [](const Element& e) { return e; }, true);
  }

  static Endomorphism inner(Group::Ptr domain, const Element& g) {
    domain->require_owns(g, "inner automorphism");
    auto ginv = domain->invert(g);
    auto dom = domain;
    std::string name = "inner(" + domain->format(g) + ")";
    return Endomorphism(domain, std::move(name), [dom, g, ginv](const Element& x) {
      return dom->multiply(dom->multiply(g, x), ginv);
    });
  }

  const Group::Ptr& domain() const { return domain_; }
  const std::string& name() const { return name_; }
  bool is_identity_map() const { return identity_; }

  Element operator()(const Element& e) const {
    domain_->require_owns(e, "endomorphism");
    return map_(e);
  }

  FiniteSubset map_set(const FiniteSubset& x) const {
    std::vector<Element> out;
    out.reserve(x.size());
    for (const auto& e : x.elements()) out.push_back((*this)(e));
    return FiniteSubset(x.group(), std::move(out));
  }

private:
  Group::Ptr domain_;
  std::string name_;
  std::function<Element(const Element&)> map_;
  bool identity_;
};

/// k-fold composition; k = 0 is the identity map.
inline Endomorphism endo_power(const Endomorphism& phi, unsigned k) {
  if (k == 0) return Endomorphism::identity(phi.domain());
  if (k == 1) return phi;
  return Endomorphism(phi.domain(), phi.name() + "^" + std::to_string(k), [phi, k](const Element& e) {
    Element x = e;
    for (unsigned i = 0; i < k; ++i) x = phi(x);
    return x;
  });
}

inline Endomorphism compose(const Endomorphism& f, const Endomorphism& g) {
  if (f.domain()->tag() != g.domain()->tag()) throw UsageError("compose: domain mismatch");
  return Endomorphism(f.domain(), f.name() + "*" + g.name(),
                      [f, g](const Element& e) { return f(g(e)); });
}

struct Certification {
  enum class Level { exhaustive, sampled };
  Level level = Level::sampled;
  std::size_t checks = 0;
};

inline const char* to_string(Certification::Level lvl) {
  return lvl == Certification::Level::exhaustive ? "exhaustive" : "sampled";
}

/// Certifies map(1)=1 and map(xy)=map(x)map(y): exhaustively when the domain
/// is finite with at most `exhaustive_cap` elements, otherwise on sampled
/// pairs. Throws InvarianceError with the witness pair on failure.
inline Certification check_endomorphism(const Endomorphism& phi, std::mt19937_64& rng,
                                        std::size_t samples = 10000, std::size_t exhaustive_cap = 4096) {
  const auto& g = *phi.domain();
  if (phi(g.identity()) != g.identity())
    throw InvarianceError("endomorphism '" + phi.name() + "' does not fix the identity",
                          g.format(g.identity()));
  Certification cert;
  auto check_pair = [&](const Element& x, const Element& y) {
    if (phi(g.multiply(x, y)) != g.multiply(phi(x), phi(y)))
      throw InvarianceError("endomorphism '" + phi.name() + "' violates the homomorphism law",
                            g.format(x) + ", " + g.format(y));
    ++cert.checks;
  };
  auto n = g.order();
  if (n && *n <= exhaustive_cap) {
    auto elems = g.elements();
    for (const auto& x : elems)
      for (const auto& y : elems) check_pair(x, y);
    cert.level = Certification::Level::exhaustive;
  } else {
    for (std::size_t i = 0; i < samples; ++i) check_pair(g.sample(rng), g.sample(rng));
    cert.level = Certification::Level::sampled;
  }
  return cert;
}

/// A (possibly infinite) normal subgroup H of an ambient group, presented by
/// a membership oracle and an optional coset-canonicalization map; an
/// optional chain of finite truncations inside H supports exhaustive
/// certification and H-side entropy sweeps.
struct NormalSubgroupSpec {
  Group::Ptr ambient;
  std::string name;
  std::function<bool(const Element&)> member;
  /// g -> a chosen representative of gH; constant on cosets. May be null.
  std::function<Element(const Element&)> canonicalize;
  /// k -> k-th member of an increasing chain of finite subgroups of H
  /// (cofinal in F(H) when H is locally finite). May be null.
  std::function<std::optional<FiniteSubgroup>(unsigned)> truncation;

  bool has_canonicalizer() const { return static_cast<bool>(canonicalize); }

  static NormalSubgroupSpec trivial(Group::Ptr g) {
    NormalSubgroupSpec h;
    h.ambient = g;
    h.name = "trivial";
    Element id = g->identity();
    h.member = [id](const Element& e) { return e == id; };
    h.canonicalize = [](const Element& e) { return e; };
    h.truncation = [g](unsigned) -> std::optional<FiniteSubgroup> { return FiniteSubgroup::trivial(g); };
    return h;
  }

  static NormalSubgroupSpec whole(Group::Ptr g) {
    NormalSubgroupSpec h;
    h.ambient = g;
    h.name = "G";
    h.member = [](const Element&) { return true; };
    Element id = g->identity();
    h.canonicalize = [id](const Element&) { return id; };
    return h;
  }

  /// Any subgroup of a finite group, canonicalized by the minimum element of
  /// each coset in the (fingerprint, payload) order.
  static NormalSubgroupSpec from_finite(Group::Ptr g, FiniteSubgroup sub, std::string name) {
    NormalSubgroupSpec h;
    h.ambient = g;
    h.name = std::move(name);
    auto subp = std::make_shared<FiniteSubgroup>(std::move(sub));
    h.member = [subp](const Element& e) { return subp->contains(e); };
    h.canonicalize = [g, subp](const Element& x) {
      Element best = g->multiply(x, subp->elements().front());
      for (std::size_t i = 1; i < subp->size(); ++i) {
        Element c = g->multiply(x, subp->elements()[i]);
        if (c < best) best = std::move(c);
      }
      return best;
    };
    h.truncation = [subp](unsigned) -> std::optional<FiniteSubgroup> { return *subp; };
    return h;
  }
};

/// Certifies that H is a subgroup, normal, and φ-invariant. Uses the
/// truncation chain exhaustively when available; falls back to sampling.
/// Throws InvarianceError carrying a witness on any failure.
inline Certification certify_invariant_normal(const Endomorphism& phi, const NormalSubgroupSpec& h,
                                              std::mt19937_64& rng, std::size_t samples = 10000,
                                              unsigned truncation_depth = 3) {
  if (!h.ambient || h.ambient->tag() != phi.domain()->tag())
    throw UsageError("certify_invariant_normal: subgroup belongs to a different group");
  const auto& g = *h.ambient;
  if (!h.member(g.identity()))
    throw InvarianceError("subgroup '" + h.name + "' does not contain the identity", "1");

  Certification cert;
  bool exhaustive = false;
  std::vector<Element> h_elems;
  if (h.truncation) {
    // take the deepest available truncation as the certification sample of H
    std::optional<FiniteSubgroup> best;
    for (unsigned k = 0; k < truncation_depth; ++k) {
      auto t = h.truncation(k);
      if (!t) break;
      best = std::move(t);
    }
    if (best) {
      h_elems = best->elements();
      exhaustive = static_cast<bool>(g.order());  // finite ambient + full truncation
    }
  }
  if (h_elems.empty()) {
    for (std::size_t i = 0; i < samples / 10; ++i) {
      Element e = g.sample(rng);
      if (h.member(e)) h_elems.push_back(e);
    }
    h_elems.push_back(g.identity());
  }

  for (const auto& x : h_elems) {
    if (!h.member(x))
      throw InvarianceError("truncation of '" + h.name + "' leaks outside the membership oracle", g.format(x));
    if (!h.member(g.invert(x)))
      throw InvarianceError("subgroup '" + h.name + "' is not closed under inversion", g.format(x));
    if (!h.member(phi(x)))
      throw InvarianceError("subgroup '" + h.name + "' is not " + phi.name() + "-invariant", g.format(x));
    ++cert.checks;
  }
  for (const auto& x : h_elems)
    for (const auto& y : h_elems) {
      if (!h.member(g.multiply(x, y)))
        throw InvarianceError("subgroup '" + h.name + "' is not closed under multiplication",
                              g.format(x) + ", " + g.format(y));
      ++cert.checks;
    }

  // normality: g h g^-1 stays in H for ambient samples
  std::vector<Element> ambient_samples;
  if (auto n = g.order(); n && *n <= 4096) {
    ambient_samples = g.elements();
  } else {
    for (std::size_t i = 0; i < 64; ++i) ambient_samples.push_back(g.sample(rng));
    exhaustive = false;
  }
  for (const auto& a : ambient_samples) {
    const Element ainv = g.invert(a);
    for (const auto& x : h_elems) {
      if (!h.member(g.multiply(g.multiply(a, x), ainv)))
        throw InvarianceError("subgroup '" + h.name + "' is not normal", g.format(a) + " conj " + g.format(x));
      ++cert.checks;
    }
  }

  // canonicalize must be constant on cosets and pick representatives in gH
  if (h.canonicalize) {
    for (const auto& a : ambient_samples) {
      Element ra = h.canonicalize(a);
      if (!h.member(g.multiply(g.invert(a), ra)))
        throw InvarianceError("canonicalize('" + h.name + "') leaves the coset", g.format(a));
      for (const auto& x : h_elems) {
        if (h.canonicalize(g.multiply(a, x)) != ra)
          throw InvarianceError("canonicalize('" + h.name + "') is not constant on cosets",
                                g.format(a) + ", " + g.format(x));
        ++cert.checks;
      }
    }
  }
  cert.level = exhaustive ? Certification::Level::exhaustive : Certification::Level::sampled;
  return cert;
}

/// φ restricted to H: the same map with its domain contract narrowed.
/// Certification of φ-invariance is the caller's step (certify_invariant_normal);
/// this only re-labels and guards applications.
inline Endomorphism restrict_endo(const Endomorphism& phi, const NormalSubgroupSpec& h) {
  auto member = h.member;
  std::string hname = h.name;
  auto gptr = phi.domain();
  return Endomorphism(
      gptr, phi.name() + "|" + h.name,
      [phi, member, hname, gptr](const Element& e) {
        if (!member(e)) throw UsageError("restricted endomorphism applied outside " + hname);
        Element out = phi(e);
        if (!member(out))
          throw InvarianceError("restriction to '" + hname + "' is not invariant", gptr->format(e));
        return out;
      },
      phi.is_identity_map());
}

/// The induced system on G/H: quotient oracle over canonical representatives,
/// the projection π, and φ̄ with φ̄∘π = π∘φ.
struct QuotientSystem {
  std::shared_ptr<const QuotientGroup> quotient;
  Endomorphism induced;

  Element project(const Element& g) const { return quotient->project(g); }

  FiniteSubset project_set(const FiniteSubset& x) const {
    std::vector<Element> out;
    out.reserve(x.size());
    for (const auto& e : x.elements()) out.push_back(quotient->project(e));
    return FiniteSubset(quotient, std::move(out));
  }
};

/// Builds G/H and φ̄_{G/H}. H must be normal and φ-invariant (certify first)
/// and must carry a canonicalize map. Well-definedness of φ̄ on sampled
/// cosets is re-checked here; violations indicate a broken canonicalizer.
inline QuotientSystem induce_quotient(const Endomorphism& phi, const NormalSubgroupSpec& h,
                                      std::mt19937_64& rng, std::size_t samples = 256) {
  if (!h.has_canonicalizer())
    throw UnsupportedError("induce_quotient: subgroup '" + h.name + "' has no canonicalize map");
  auto gptr = phi.domain();
  auto q = std::make_shared<QuotientGroup>(gptr, h.canonicalize, h.name);
  Endomorphism induced(
      q, phi.name() + "~(" + gptr->describe() + "/" + h.name + ")",
      [q, phi](const Element& x) { return q->project(phi(q->lift(x))); }, phi.is_identity_map());

  // spot-check: φ̄(π(g)) must not depend on the representative
  for (std::size_t i = 0; i < samples; ++i) {
    Element g = gptr->sample(rng);
    Element via_induced = induced(q->project(g));
    Element direct = q->project(phi(g));
    if (via_induced != direct)
      throw InvarianceError("induced map is ill-defined on a sampled coset", gptr->format(g));
  }
  return QuotientSystem{std::move(q), std::move(induced)};
}

struct ExtendOptions {
  std::size_t max_size = kDefaultMaxSize;
  std::optional<std::chrono::steady_clock::time_point> deadline;
};

/// The cached chain T_0 ⊆ T_1 ⊆ ... of trajectory sets
/// T_n(φ, X) = X·φ(X)···φ^{n-1}(X), built incrementally as
/// T_{n+1} = T_n · φ^n(X) with the φ^k(X) images cached.
class Trajectory {
public:
  Trajectory(Endomorphism phi, FiniteSubset base)
      : phi_(std::move(phi)), base_(std::move(base)) {
    if (phi_.domain()->tag() != base_.group()->tag())
      throw UsageError("Trajectory: base set and endomorphism domain differ");
    stages_.push_back(FiniteSubset::identity_of(base_.group()));  // T_0 = {1}
  }

  const Endomorphism& endo() const { return phi_; }
  const FiniteSubset& base() const { return base_; }
  std::size_t computed() const { return stages_.size() - 1; }  // largest cached n

  const FiniteSubset& stage(std::size_t n) const {
    if (n >= stages_.size()) throw UsageError("Trajectory::stage: not computed yet");
    return stages_[n];
  }

  const FiniteSubset& image(std::size_t k) {
    while (images_.size() <= k) {
      images_.push_back(images_.empty() ? base_ : phi_.map_set(images_.back()));
    }
    return images_[k];
  }

  /// Returns T_n, computing incrementally; repeated calls reuse the cache.
  /// On budget exhaustion throws BudgetExceeded with the cache retained.
  const FiniteSubset& extend_to(std::size_t n, const ExtendOptions& opt = {}) {
    while (computed() < n) {
      if (opt.deadline && std::chrono::steady_clock::now() > *opt.deadline)
        throw BudgetExceeded("Trajectory: time budget exhausted", 0);
      std::size_t k = computed();
      const FiniteSubset& img = image(k);  // φ^k(X)
      stages_.push_back(multiply_sets(stages_.back(), img, opt.max_size));
    }
    return stages_[n];
  }

  /// Detects that the trajectory has provably stabilized: the image sequence
  /// φ^k(X) has entered a cycle and the trajectory repeated across one full
  /// period, which forces T_n to stay in a bounded family forever.
  bool stabilized() const {
    for (std::size_t j = 1; j < images_.size() && j <= computed(); ++j) {
      for (std::size_t i = 0; i < j; ++i) {
        if (!(images_[i] == images_[j])) continue;
        std::size_t period = j - i;
        // need T_{n0+period} == T_{n0} for some n0 >= j
        for (std::size_t n0 = j; n0 + period <= computed(); ++n0) {
          if (stages_[n0] == stages_[n0 + period]) return true;
        }
      }
    }
    return false;
  }

private:
  Endomorphism phi_;
  FiniteSubset base_;
  std::vector<FiniteSubset> stages_;
  std::vector<FiniteSubset> images_;
};

/// Checks that the trajectory images commute as sets: φ^n(F)·φ^m(F) = φ^m(F)·φ^n(F) for all
/// 0 <= n,m <= N. Returns the first violating pair if any.
struct CommuteCheckResult {
  bool ok = true;
  std::optional<std::pair<unsigned, unsigned>> witness;
};

inline CommuteCheckResult images_commute_check(const Endomorphism& phi, const FiniteSubgroup& f,
                                               unsigned n_max, std::size_t max_size = kDefaultMaxSize) {
  std::vector<FiniteSubset> imgs{f.set()};
  for (unsigned k = 1; k <= n_max; ++k) imgs.push_back(phi.map_set(imgs.back()));
  for (unsigned n = 0; n <= n_max; ++n) {
    for (unsigned m = n + 1; m <= n_max; ++m) {
      auto ab = multiply_sets(imgs[n], imgs[m], max_size);
      auto ba = multiply_sets(imgs[m], imgs[n], max_size);
      if (!(ab == ba)) return {false, std::make_pair(n, m)};
    }
  }
  return {};
}

/// Checks that T_n(φ, F) is a subgroup for every n <= N (true for F in
/// F_C(G)); returns the first failing index otherwise.
struct SubgroupChainResult {
  bool ok = true;
  std::optional<std::size_t> first_failure;
};

inline SubgroupChainResult trajectory_subgroup_check(Trajectory& traj, std::size_t n_max,
                                                     const ExtendOptions& opt = {}) {
  for (std::size_t n = 0; n <= n_max; ++n) {
    traj.extend_to(n, opt);
    if (!is_subgroup(traj.stage(n))) return {false, n};
  }
  return {};
}

}  // namespace entro
