#ifndef CODIAG_AUTOMATON_HPP
#define CODIAG_AUTOMATON_HPP

#include <optional>
#include <string>
#include <vector>

#include "codiag/errors.hpp"
#include "codiag/rational.hpp"

namespace codiag {

using LocId = int;
using ClockId = int;

/// Actions: values >= 0 index the observable alphabet of the automaton.
/// kTau is the silent action; fault channels are encoded as -(1+k), so the
/// fault tracked by every analysis (channel 1) is kFault = -2. Analyses accept
/// single-channel models only; select_fault_channel() collapses multi-channel
/// models first.
using ActionId = int;
inline constexpr ActionId kTau = -1;
inline constexpr ActionId kFault = -2;

inline bool is_fault(ActionId a) { return a <= kFault; }
inline bool is_observable(ActionId a) { return a >= 0; }
inline int fault_channel(ActionId a) { return -a - 1; }  // kFault -> 1

enum class Cmp { LT, LE, EQ, GE, GT };

/// One rectangular atom `clock cmp constant` (constants are nonnegative ints;
/// rational granularity enters only via global scaling in diagnoser synthesis).
struct ClockAtom {
  ClockId clock;
  Cmp cmp;
  int bound;
  bool operator==(const ClockAtom&) const = default;
};

/// Conjunction of atoms; empty means true.
struct ClockConstraint {
  std::vector<ClockAtom> atoms;
  bool operator==(const ClockConstraint&) const = default;

  bool is_true() const { return atoms.empty(); }
  ClockConstraint conjoin(const ClockConstraint& other) const;
};

using ClockValuation = std::vector<Rat>;

bool atom_satisfied(const ClockAtom& a, const ClockValuation& v);
bool constraint_satisfied(const ClockConstraint& g, const ClockValuation& v);

/// Provenance of a transition in a constructed automaton; lets witnesses be
/// folded back onto runs of the original model. Plain user models use kPlain.
enum class TransTag {
  kPlain,        // copied from the source automaton (origin = its index)
  kFaultSwitch,  // fault edge turned silent by a monitor/tagger construction
  kBadEdge,      // monitor edge into the Bad location
  kRelabeled,    // observer edge whose letter was hidden (made tau)
  kSelfLoop,     // observer parking loop on a letter outside its site alphabet
  kCopySwitch,   // delay-monitor copy-2 -> copy-3 switch
  kSynthetic,    // anything else added by a construction
};

struct Transition {
  LocId from = 0;
  ClockConstraint guard;
  ActionId action = kTau;
  std::vector<ClockId> resets;  // sorted, unique
  LocId to = 0;
  TransTag tag = TransTag::kPlain;
  int origin = -1;  // index of the source transition, if tag says so

  bool operator==(const Transition& o) const {
    return from == o.from && guard == o.guard && action == o.action &&
           resets == o.resets && to == o.to;
  }
};

enum class Kind { FA, TA };

/// A finite automaton (Kind::FA, no clocks) or timed automaton (Kind::TA).
/// Location invariants are conjunctions of upper bounds (x < c, x <= c).
/// `finals` accept finite runs; `repeated` accept infinite runs (Buchi).
struct Automaton {
  Kind kind = Kind::FA;
  std::string name;
  std::vector<std::string> locations;
  LocId initial = 0;
  std::vector<std::string> clocks;
  std::vector<std::string> alphabet;
  std::vector<ClockConstraint> invariants;  // one per location
  std::vector<Transition> transitions;
  std::vector<LocId> finals;    // sorted
  std::vector<LocId> repeated;  // sorted

  int action_of(const std::string& name) const;  // "fault.k" -> -(1+k)
  std::string action_name(ActionId a) const;
  bool is_final(LocId l) const;
  bool is_repeated(LocId l) const;
};

struct State {
  LocId loc = 0;
  ClockValuation clocks;
  bool operator==(const State&) const = default;
};

inline State initial_state(const Automaton& a) {
  return State{a.initial, ClockValuation(a.clocks.size(), Rat(0))};
}

struct ValidationReport {
  std::vector<std::string> errors;
  std::vector<std::string> warnings;
  bool ok() const { return errors.empty(); }
};

/// Structural checks: id ranges, reserved names, invariant shape, FA purity
/// (no clocks/guards/resets), duplicate names. Locations with no outgoing
/// transition earn a warning (the progress assumption); add_tau_loops repairs.
ValidationReport validate(const Automaton& a);

/// Returns a copy with a `true`-guarded tau self-loop added at every location
/// that has no outgoing transition.
Automaton add_tau_loops(const Automaton& a);

/// Keeps channel `k` as the tracked fault and relabels every other fault
/// channel to tau.
Automaton select_fault_channel(const Automaton& a, int k);

/// Multiplies every guard/invariant constant by m (time rescaling).
Automaton scale_constants(const Automaton& a, long long m);

/// Largest constant per clock over guards and invariants (>= 0).
std::vector<int> max_constants(const Automaton& a);

/// Per-location outgoing transition indices, in declaration order.
std::vector<std::vector<int>> outgoing_index(const Automaton& a);

/// Time elapse by d >= 0; throws InvariantViolation (with the supremum of the
/// admissible delay) if the location invariant is left.
State delay_successor(const Automaton& a, const State& s, const Rat& d);

/// All enabled discrete moves from s: guard holds now, target invariant holds
/// after resets. Deterministic order = transition declaration order.
std::vector<std::pair<int, State>> discrete_successors(const Automaton& a,
                                                       const State& s);

/// Single-transition step; returns nothing if the move is not enabled.
std::optional<State> discrete_step(const Automaton& a, const State& s,
                                   int trans_index);

/// Decentralized observation family: one observable sub-alphabet per site,
/// stored as sorted ActionIds into the model's alphabet.
struct ObservationFamily {
  std::vector<std::vector<ActionId>> sites;

  std::size_t size() const { return sites.size(); }
  bool observes(int site, ActionId a) const;
};

ObservationFamily family_from_names(
    const Automaton& a, const std::vector<std::vector<std::string>>& names);

}  // namespace codiag

#endif
