#ifndef CODIAG_CODIAG_HPP
#define CODIAG_CODIAG_HPP

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "codiag/automaton.hpp"
#include "codiag/emptiness.hpp"
#include "codiag/runs.hpp"

namespace codiag {

/// Counterexample to delta-codiagnosability: a faulty run whose fault is at
/// least delta old, plus one non-faulty run per site with the same
/// site-projected trace.
struct AmbiguousTuple {
  Run faulty;
  std::vector<Run> per_site;
};

struct SearchStats {
  std::size_t states = 0;
  double seconds = 0.0;
};

struct DeltaVerdict {
  bool codiagnosable = true;
  std::optional<AmbiguousTuple> witness;
  SearchStats stats;
};

/// Decides delta-codiagnosability of `a` under the observation family by a
/// reachability check on the product of the delay monitor with one observer
/// per site (through the region graph for timed automata).
DeltaVerdict check_delta_codiag(const Automaton& a, int delta,
                                const ObservationFamily& fam,
                                const SearchBudget& budget = {});

struct CodiagVerdict {
  bool codiagnosable = true;  // for some finite delta
  std::optional<AmbiguousTuple> witness;  // finite unrolling of the lasso
  SearchStats stats;
};

/// Decides whether any finite delta works, via a Buchi check on the product
/// of the fault tagger with the observers (timed automata additionally carry
/// the divergence gadget; finite automata carry the participation bit).
CodiagVerdict check_codiag(const Automaton& a, const ObservationFamily& fam,
                           const SearchBudget& budget = {});

struct OptimalDelayResult {
  std::optional<int> delta;  // smallest workable delay; nullopt = none
  std::vector<std::pair<int, bool>> probes;  // (delta, codiagnosable) history
  SearchStats stats;
};

/// Smallest delta for which `a` is delta-codiagnosable, by binary search over
/// [0, U]; monotonicity in delta makes the search sound. U is 2 * |L|^n for
/// finite automata (L the locations, n the number of sites) and the size of
/// the reachable region graph of the tagger-observer product for timed
/// automata (with a closed-form region-count bound as fallback). Probes 0 and
/// U first; if the U probe exceeds the budget the bound is grown by doubling
/// from the largest failing probe instead.
OptimalDelayResult optimal_delay(const Automaton& a,
                                 const ObservationFamily& fam,
                                 const SearchBudget& budget = {});

struct VerifyResult {
  bool ok = true;
  std::string reason;
};

/// Replays an ambiguous tuple against the model: the faulty run must be valid
/// with fault age >= delta (steps, finite automata) or > delta (time, timed
/// automata), each per-site run valid, fault-free, and site-projection equal
/// to the faulty run's projection.
VerifyResult verify_ambiguous_tuple(const Automaton& a, int delta,
                                    const ObservationFamily& fam,
                                    const AmbiguousTuple& t);

}  // namespace codiag

#endif
