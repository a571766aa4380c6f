#pragma once

// Cycling and decycling, cyclically-weighted predicates, reduction into the
// super summit set, generation of USS/RSSS by minimal-conjugator closure,
// and the power-and-cycle search for cyclically weighted representatives.

#include <cstdint>
#include <deque>
#include <map>
#include <optional>
#include <set>
#include <stdexcept>
#include <string>
#include <unordered_map>
#include <unordered_set>
#include <vector>

#include "braid/canonical.hpp"

namespace braid {

// A conjugation result: witness^{-1} * source * witness == value.
struct Conjugated {
  CanonicalBraid value;
  CanonicalBraid witness;
};

// c(x) = Delta^u x_2..x_k tau^u(x_1), conjugation by tau^u(H(x)).
inline Conjugated cycling(const CanonicalBraid& x) {
  if (x.canonical_length() == 0) return {x, CanonicalBraid::identity(x.n())};
  const PermutationBraid w = tau(x.head(), static_cast<int>(x.inf() & 1));
  std::vector<PermutationBraid> fac(x.factors().begin() + 1, x.factors().end());
  fac.push_back(w);
  return {CanonicalBraid::normalized(x.n(), x.inf(), std::move(fac)),
          CanonicalBraid::from_permutation(w)};
}

// d(x) = Delta^u tau^u(x_k) x_1..x_{k-1}, conjugation by T(x)^{-1}.
inline Conjugated decycling(const CanonicalBraid& x) {
  if (x.canonical_length() == 0) return {x, CanonicalBraid::identity(x.n())};
  const PermutationBraid t = x.tail();
  std::vector<PermutationBraid> fac;
  fac.reserve(x.canonical_length());
  fac.push_back(tau(t, static_cast<int>(x.inf() & 1)));
  fac.insert(fac.end(), x.factors().begin(), x.factors().end() - 1);
  return {CanonicalBraid::normalized(x.n(), x.inf(), std::move(fac)),
          CanonicalBraid::identity(x.n()).times_inverse(t)};
}

// Tail weighted against the twisted head. Pure Delta powers count as
// cyclically weighted: they are fixed by cycling.
inline bool is_cyclically_weighted(const CanonicalBraid& x) {
  if (x.canonical_length() == 0) return true;
  return is_weighted_pair(x.tail(), tau(x.head(), static_cast<int>(x.inf() & 1)));
}

// H(x tau^u(x_1)) == H(x): the head survives appending the twisted head.
inline bool is_weakly_cyclically_weighted(const CanonicalBraid& x) {
  if (x.canonical_length() == 0) return true;
  const PermutationBraid h = x.head();
  const CanonicalBraid z = x.times(tau(h, static_cast<int>(x.inf() & 1)));
  return z.canonical_length() >= 1 && z.inf() == x.inf() && z.head() == h;
}

// El-Rifai--Morton reduction: cycle while the infimum can rise, decycle
// while the supremum can fall; a full orbit without gain certifies the
// summit value on that side.
inline Conjugated reduce_to_sss(const CanonicalBraid& x) {
  CanonicalBraid y = x;
  CanonicalBraid w = CanonicalBraid::identity(x.n());
  bool progressed = true;
  while (progressed) {
    progressed = false;
    for (;;) {  // raise inf
      std::set<std::string> seen{y.key()};
      CanonicalBraid z = y;
      CanonicalBraid wz = CanonicalBraid::identity(x.n());
      bool gained = false;
      for (;;) {
        Conjugated c = cycling(z);
        z = c.value;
        wz = wz.times(c.witness);
        if (z.inf() > y.inf()) {
          y = z;
          w = w.times(wz);
          gained = true;
          progressed = true;
          break;
        }
        if (!seen.insert(z.key()).second) break;
      }
      if (!gained) break;
    }
    for (;;) {  // lower sup
      std::set<std::string> seen{y.key()};
      CanonicalBraid z = y;
      CanonicalBraid wz = CanonicalBraid::identity(x.n());
      bool gained = false;
      for (;;) {
        Conjugated c = decycling(z);
        z = c.value;
        wz = wz.times(c.witness);
        if (z.sup() < y.sup()) {
          y = z;
          w = w.times(wz);
          gained = true;
          progressed = true;
          break;
        }
        if (!seen.insert(z.key()).second) break;
      }
      if (!gained) break;
    }
  }
  return {y, w};
}

struct CyclingOrbit {
  std::vector<CanonicalBraid> elements;  // closed: cycling of last is first
  int period() const { return static_cast<int>(elements.size()); }
};

// The periodic part of the cycling trajectory from y.
inline CyclingOrbit cycling_orbit(const CanonicalBraid& y) {
  std::map<std::string, size_t> seen;
  std::vector<CanonicalBraid> trail;
  CanonicalBraid z = y;
  for (;;) {
    const auto [it, fresh] = seen.emplace(z.key(), trail.size());
    if (!fresh) {
      return {std::vector<CanonicalBraid>(trail.begin() + it->second, trail.end())};
    }
    trail.push_back(z);
    z = cycling(z).value;
  }
}

enum class InvariantSetKind { SSS, USS, RSSS };
enum class CandidatePolicy { Full, Restricted };

namespace detail {

inline bool is_cycling_periodic(const CanonicalBraid& y) {
  std::set<std::string> seen;
  CanonicalBraid z = y;
  for (;;) {
    z = cycling(z).value;
    if (z == y) return true;
    if (!seen.insert(z.key()).second) return false;
  }
}

inline bool is_decycling_periodic(const CanonicalBraid& y) {
  std::set<std::string> seen;
  CanonicalBraid z = y;
  for (;;) {
    z = decycling(z).value;
    if (z == y) return true;
    if (!seen.insert(z.key()).second) return false;
  }
}

// Walk the cycling trajectory into its periodic part, keeping the witness.
inline Conjugated cycling_periodicize(const CanonicalBraid& y) {
  std::map<std::string, size_t> seen;
  std::vector<CanonicalBraid> witnesses;
  CanonicalBraid z = y;
  CanonicalBraid w = CanonicalBraid::identity(y.n());
  for (;;) {
    const auto [it, fresh] = seen.emplace(z.key(), witnesses.size());
    if (!fresh) {
      return {z, witnesses[it->second]};
    }
    witnesses.push_back(w);
    Conjugated c = cycling(z);
    z = c.value;
    w = w.times(c.witness);
  }
}

inline Conjugated decycling_periodicize(const CanonicalBraid& y) {
  std::map<std::string, size_t> seen;
  std::vector<CanonicalBraid> witnesses;
  CanonicalBraid z = y;
  CanonicalBraid w = CanonicalBraid::identity(y.n());
  for (;;) {
    const auto [it, fresh] = seen.emplace(z.key(), witnesses.size());
    if (!fresh) return {z, witnesses[it->second]};
    witnesses.push_back(w);
    Conjugated c = decycling(z);
    z = c.value;
    w = w.times(c.witness);
  }
}

}  // namespace detail

// Conjugate x into an element satisfying the defining condition of `kind`.
// USS: cycling-periodic at summit inf/sup. RSSS: periodic under both cycling
// and decycling. The alternation below settles quickly in practice; a
// breadth-first sweep over the super summit set backs it up.
inline Conjugated settle(const CanonicalBraid& x, InvariantSetKind kind) {
  Conjugated s = reduce_to_sss(x);
  if (kind == InvariantSetKind::SSS) return s;
  CanonicalBraid y = s.value;
  CanonicalBraid w = s.witness;
  if (kind == InvariantSetKind::USS) {
    Conjugated p = detail::cycling_periodicize(y);
    return {p.value, w.times(p.witness)};
  }
  std::set<std::string> visited;
  for (;;) {
    Conjugated p = detail::cycling_periodicize(y);
    y = p.value;
    w = w.times(p.witness);
    if (detail::is_decycling_periodic(y)) return {y, w};
    Conjugated q = detail::decycling_periodicize(y);
    y = q.value;
    w = w.times(q.witness);
    if (detail::is_cycling_periodic(y)) return {y, w};
    if (!visited.insert(y.key()).second) break;  // alternation looped
  }
  // Breadth-first search through the super summit set.
  std::map<std::string, Conjugated> frontier;
  std::set<std::string> seen;
  frontier.emplace(y.key(), Conjugated{y, w});
  seen.insert(y.key());
  while (!frontier.empty()) {
    std::map<std::string, Conjugated> next;
    for (const auto& [key, node] : frontier) {
      for (const PermutationBraid& g : left_subwords(PermutationBraid::half_twist(x.n()))) {
        if (g.is_identity()) continue;
        Conjugated r = reduce_to_sss(node.value.conjugated_by(g));
        if (r.value.inf() != node.value.inf() || r.value.sup() != node.value.sup()) continue;
        if (!seen.insert(r.value.key()).second) continue;
        CanonicalBraid wr = node.witness.times(CanonicalBraid::from_permutation(g)).times(r.witness);
        Conjugated p = detail::cycling_periodicize(r.value);
        CanonicalBraid cand = p.value;
        if (detail::is_decycling_periodic(cand)) return {cand, wr.times(p.witness)};
        next.emplace(r.value.key(), Conjugated{r.value, wr});
      }
    }
    frontier = std::move(next);
  }
  throw std::logic_error("settle: no doubly periodic element found");
}

struct InvariantSetResult {
  InvariantSetKind kind = InvariantSetKind::USS;
  CandidatePolicy policy = CandidatePolicy::Restricted;
  long long summit_inf = 0;
  long long summit_sup = 0;
  // Orbits in canonical order; each orbit rotated to start at its least key.
  std::vector<std::vector<CanonicalBraid>> orbits;
  // Witness per element key: conjugates the input onto that element.
  std::map<std::string, CanonicalBraid> witnesses;
  size_t element_budget = 0;
  bool budget_exhausted = false;

  size_t orbit_count() const { return orbits.size(); }
  size_t element_count() const { return witnesses.size(); }
  bool contains(const std::string& key) const { return witnesses.count(key) > 0; }
};

namespace detail {

inline std::vector<PermutationBraid> candidate_conjugators(const CanonicalBraid& y,
                                                           CandidatePolicy policy) {
  const int n = y.n();
  if (policy == CandidatePolicy::Full)
    return left_subwords(PermutationBraid::half_twist(n));  // all of S_n
  if (y.canonical_length() == 0) return {};
  std::vector<PermutationBraid> out =
      left_subwords(tau(y.head(), static_cast<int>(y.inf() & 1)));
  std::vector<PermutationBraid> add = left_subwords(right_complement(y.tail()));
  std::set<std::vector<int>> seen;
  for (const auto& p : out) seen.insert(p.images());
  for (auto& p : add)
    if (seen.insert(p.images()).second) out.push_back(std::move(p));
  return out;
}

}  // namespace detail

// Closure of the invariant set under candidate conjugators, orbit by orbit.
// An optional stop key turns the closure into a membership search.
inline InvariantSetResult generate_invariant_set(
    const CanonicalBraid& x, InvariantSetKind kind,
    CandidatePolicy policy = CandidatePolicy::Restricted, size_t element_budget = 200000,
    const std::string* stop_key = nullptr) {
  if (kind == InvariantSetKind::SSS)
    throw std::invalid_argument("set generation covers USS and RSSS");
  InvariantSetResult res;
  res.kind = kind;
  res.policy = policy;
  res.element_budget = element_budget;

  const Conjugated seed = settle(x, kind);
  res.summit_inf = seed.value.inf();
  res.summit_sup = seed.value.sup();

  std::deque<CanonicalBraid> work;
  auto add_orbit = [&](const CanonicalBraid& first, const CanonicalBraid& first_witness) {
    CyclingOrbit orbit = cycling_orbit(first);
    // Rotate so the orbit starts at its least key; recompute witnesses along
    // the cycle from the given entry point.
    std::vector<CanonicalBraid> elems = orbit.elements;
    std::vector<CanonicalBraid> wits(elems.size());
    size_t entry = 0;
    for (size_t i = 0; i < elems.size(); ++i)
      if (elems[i] == first) { entry = i; break; }
    wits[entry] = first_witness;
    for (size_t s = 1; s < elems.size(); ++s) {
      const size_t i = (entry + s) % elems.size();
      const size_t prev = (entry + s - 1) % elems.size();
      wits[i] = wits[prev].times(cycling(elems[prev]).witness);
    }
    size_t least = 0;
    for (size_t i = 1; i < elems.size(); ++i)
      if (elems[i].key() < elems[least].key()) least = i;
    std::vector<CanonicalBraid> rotated;
    rotated.reserve(elems.size());
    for (size_t s = 0; s < elems.size(); ++s) {
      const size_t i = (least + s) % elems.size();
      rotated.push_back(elems[i]);
      res.witnesses.emplace(elems[i].key(), wits[i]);
      work.push_back(elems[i]);
    }
    res.orbits.push_back(std::move(rotated));
  };

  add_orbit(seed.value, seed.witness);
  while (!work.empty()) {
    if (stop_key && res.contains(*stop_key)) return res;
    if (res.element_count() > element_budget) {
      res.budget_exhausted = true;
      return res;
    }
    const CanonicalBraid y = work.front();
    work.pop_front();
    const CanonicalBraid wy = res.witnesses.at(y.key());
    for (const PermutationBraid& g : detail::candidate_conjugators(y, policy)) {
      if (g.is_identity()) continue;
      const Conjugated s = settle(y.conjugated_by(g), kind);
      if (res.contains(s.value.key())) continue;
      add_orbit(s.value, wy.times(CanonicalBraid::from_permutation(g)).times(s.witness));
    }
  }
  // Canonical orbit order for deterministic output.
  std::sort(res.orbits.begin(), res.orbits.end(),
            [](const auto& a, const auto& b) { return a.front().key() < b.front().key(); });
  return res;
}

struct PowerCycleResult {
  long long power = 1;      // M
  long long cyclings = 0;   // N
  CanonicalBraid value;     // cyclically weighted conjugate of x^M
  CanonicalBraid witness;   // witness^{-1} x^M witness == value
};

struct PowerCycleBudgets {
  long long max_power = 0;     // 0: default 2 D^2, D = n(n-1)/2
  long long max_cyclings = 0;  // 0: default min(n! * len, cap)
  long long cycling_cap = 1000000;
};

// Search the least M such that iterated cycling of the summit reduction of
// x^M reaches a cyclically weighted braid within the cycling budget.
inline std::optional<PowerCycleResult> power_and_cycle(const CanonicalBraid& x,
                                                       PowerCycleBudgets budgets = {}) {
  const long long D = static_cast<long long>(x.n()) * (x.n() - 1) / 2;
  const long long max_power = budgets.max_power > 0 ? budgets.max_power : 2 * D * D;
  long long factorial = 1;
  for (int i = 2; i <= x.n() && factorial < budgets.cycling_cap; ++i) factorial *= i;

  CanonicalBraid xm = CanonicalBraid::identity(x.n());
  for (long long m = 1; m <= max_power; ++m) {
    xm = xm.times(x);
    Conjugated s = reduce_to_sss(xm);
    long long budget = budgets.max_cyclings > 0
                           ? budgets.max_cyclings
                           : std::min(budgets.cycling_cap,
                                      factorial * std::max<long long>(1, s.value.canonical_length()));
    CanonicalBraid y = s.value;
    CanonicalBraid w = s.witness;
    for (long long i = 0; i <= budget; ++i) {
      if (is_cyclically_weighted(y)) return PowerCycleResult{m, i, y, w};
      Conjugated c = cycling(y);
      y = c.value;
      w = w.times(c.witness);
    }
  }
  return std::nullopt;
}

}  // namespace braid
