#ifndef CODIAG_COMPOSE_HPP
#define CODIAG_COMPOSE_HPP

#include <cstddef>
#include <utility>
#include <vector>

#include "codiag/automaton.hpp"

namespace codiag {

/// Materialized product plus the decode tables that fold its runs back onto
/// component runs. states[l] lists the component locations behind product
/// location l (plus trailing extras such as a participation bit or a visit
/// counter, when the construction has one); moves[t] lists the (component,
/// component-transition) pairs that fire together in product transition t.
struct ProductResult {
  Automaton a;
  std::vector<std::vector<LocId>> states;
  std::vector<std::vector<std::pair<int, int>>> moves;
  std::vector<int> clock_offset;  // component k's clocks start here in a.clocks
};

/// Synchronous product. A shared letter fires jointly in every component whose
/// alphabet contains it (guards conjoined, resets unioned); tau and fault
/// steps interleave in exactly one component. Invariants are conjoined; clocks
/// are renamed `x@k` for component k to stay disjoint. Only the reachable part
/// is materialized (StateBudgetExceeded past max_states); finals =
/// everywhere-final tuples; repeated is left empty (see
/// buchi_counter_product, or derive a set from `states` afterwards).
ProductResult product(const std::vector<const Automaton*>& components,
                      std::size_t max_states = 1000000);

/// Buchi intersection: the product extended with a visit counter c in 0..n
/// (appended as the last entry of each `states` row). c advances past
/// component k when component k sits in its repeated set; c = n closes a
/// round and those states form the repeated set of the result.
ProductResult buchi_counter_product(
    const std::vector<const Automaton*>& components,
    std::size_t max_states = 1000000);

/// Delay monitor A^f(delta): two copies of A plus a Bad location. The fault
/// switches copy 0 -> copy 1 silently. TA: a fresh clock t is reset on the
/// switch and Bad is entered on t > delta. FA: copy 1 carries a step counter
/// saturating at delta and Bad is entered once the counter reaches delta.
/// Finals = {Bad}; Bad is the last location. Later fault edges survive as
/// silent copies inside copy 1.
Automaton fault_monitor(const Automaton& a, int delta);

/// Location of Bad in a fault_monitor result.
inline LocId monitor_bad(const Automaton& monitor) {
  return static_cast<LocId>(monitor.locations.size()) - 1;
}

/// Boolean fault tagger A^f: two copies, fault edges become silent switches
/// into the faulty copy. Locations |L|.. are the faulty copy.
Automaton fault_tagger(const Automaton& a);

inline bool tagger_is_faulty(const Automaton& original, LocId tagger_loc) {
  return tagger_loc >= static_cast<LocId>(original.locations.size());
}

/// Site observer A_i*: fault edges removed, letters outside `site_alphabet`
/// relabelled tau (their guards and resets kept), parking self-loops
/// (l, true, b, {}, l) added for every letter b outside the site alphabet,
/// every location final. Its finite words are exactly the inverse projection
/// of the site's view of the non-faulty traces.
Automaton site_observer(const Automaton& a,
                        const std::vector<ActionId>& site_alphabet, int site);

/// Two-location divergence gadget over a fresh clock: invariant x <= 1 on both
/// locations, x = 1 edges back and forth resetting x, repeated = location 1.
/// Omega-runs visiting location 1 infinitely often are exactly the
/// time-divergent ones.
Automaton divergence_automaton(const std::string& clock_name);

/// Finite-automata only: product of a fault tagger with site observers,
/// extended with a bit z (last `states` entry) recording whether the tagger
/// took part in the latest move - everything except a private observer tau.
/// Repeated = tagger-faulty and z = 1, so accepted omega-runs keep the faulty
/// run itself alive. Timed automata do not need this: pair the product with
/// divergence_automaton instead, where time makes every component progress.
/// Component 0 is the tagger, 1.. the observers.
ProductResult z_flag_product(const Automaton& original, const Automaton& tagger,
                             const std::vector<Automaton>& observers,
                             std::size_t max_states = 1000000);

}  // namespace codiag

#endif
