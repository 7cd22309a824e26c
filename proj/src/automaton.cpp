#include "codiag/automaton.hpp"

#include <algorithm>
#include <set>
#include <unordered_map>
#include <unordered_set>

namespace codiag {

ClockConstraint ClockConstraint::conjoin(const ClockConstraint& other) const {
  ClockConstraint out = *this;
  out.atoms.insert(out.atoms.end(), other.atoms.begin(), other.atoms.end());
  return out;
}

bool atom_satisfied(const ClockAtom& a, const ClockValuation& v) {
  const Rat x = v[static_cast<std::size_t>(a.clock)];
  const Rat c(a.bound);
  switch (a.cmp) {
    case Cmp::LT: return x < c;
    case Cmp::LE: return x <= c;
    case Cmp::EQ: return x == c;
    case Cmp::GE: return x >= c;
    case Cmp::GT: return x > c;
  }
  return false;
}

bool constraint_satisfied(const ClockConstraint& g, const ClockValuation& v) {
  for (const auto& a : g.atoms)
    if (!atom_satisfied(a, v)) return false;
  return true;
}

int Automaton::action_of(const std::string& n) const {
  if (n == "tau") return kTau;
  if (n == "fault") return kFault;
  if (n.rfind("fault.", 0) == 0) {
    int k = std::atoi(n.c_str() + 6);
    if (k >= 1) return -1 - k;
  }
  for (std::size_t i = 0; i < alphabet.size(); ++i)
    if (alphabet[i] == n) return static_cast<int>(i);
  return kTau - 1000000;  // sentinel: not found
}

std::string Automaton::action_name(ActionId a) const {
  if (a == kTau) return "tau";
  if (a == kFault) return "fault";
  if (a < kFault) return "fault." + std::to_string(fault_channel(a));
  return alphabet[static_cast<std::size_t>(a)];
}

bool Automaton::is_final(LocId l) const {
  return std::binary_search(finals.begin(), finals.end(), l);
}

bool Automaton::is_repeated(LocId l) const {
  return std::binary_search(repeated.begin(), repeated.end(), l);
}

namespace {

bool valid_loc(const Automaton& a, LocId l) {
  return l >= 0 && l < static_cast<LocId>(a.locations.size());
}

bool valid_clock(const Automaton& a, ClockId c) {
  return c >= 0 && c < static_cast<ClockId>(a.clocks.size());
}

bool valid_action(const Automaton& a, ActionId x) {
  return x == kTau || x <= kFault ||
         (x >= 0 && x < static_cast<ActionId>(a.alphabet.size()));
}

void check_names(const std::vector<std::string>& names, const char* what,
                 ValidationReport& rep) {
  std::unordered_set<std::string> seen;
  for (const auto& n : names) {
    if (n.empty())
      rep.errors.push_back(std::string("empty ") + what + " name");
    else if (!seen.insert(n).second)
      rep.errors.push_back(std::string("duplicate ") + what + " name '" + n +
                           "'");
  }
}

}  // namespace

ValidationReport validate(const Automaton& a) {
  ValidationReport rep;
  check_names(a.locations, "location", rep);
  check_names(a.clocks, "clock", rep);
  check_names(a.alphabet, "letter", rep);
  for (const auto& n : a.alphabet)
    if (n == "tau" || n == "fault" || n.rfind("fault.", 0) == 0)
      rep.errors.push_back("letter '" + n + "' is a reserved name");
  if (a.locations.empty()) rep.errors.push_back("automaton has no locations");
  if (!valid_loc(a, a.initial))
    rep.errors.push_back("initial location out of range");
  if (a.invariants.size() != a.locations.size())
    rep.errors.push_back("invariant count does not match location count");
  if (a.kind == Kind::FA && !a.clocks.empty())
    rep.errors.push_back("finite automaton declares clocks");

  auto check_guard = [&](const ClockConstraint& g, const std::string& where,
                         bool upper_only) {
    for (const auto& atom : g.atoms) {
      if (!valid_clock(a, atom.clock))
        rep.errors.push_back("unknown clock in " + where);
      if (atom.bound < 0)
        rep.errors.push_back("negative constant in " + where);
      if (upper_only && atom.cmp != Cmp::LT && atom.cmp != Cmp::LE)
        rep.errors.push_back("invariant must use only upper bounds in " +
                             where);
    }
  };
  for (std::size_t l = 0; l < a.invariants.size(); ++l)
    check_guard(a.invariants[l], "invariant of " + a.locations[l], true);

  for (std::size_t i = 0; i < a.transitions.size(); ++i) {
    const auto& t = a.transitions[i];
    const std::string where = "transition #" + std::to_string(i);
    if (!valid_loc(a, t.from) || !valid_loc(a, t.to))
      rep.errors.push_back(where + " references an unknown location");
    if (!valid_action(a, t.action))
      rep.errors.push_back(where + " references an unknown action");
    check_guard(t.guard, where, false);
    for (ClockId c : t.resets)
      if (!valid_clock(a, c))
        rep.errors.push_back(where + " resets an unknown clock");
    if (a.kind == Kind::FA && (!t.guard.atoms.empty() || !t.resets.empty()))
      rep.errors.push_back(where + " uses clocks in a finite automaton");
  }
  for (LocId l : a.finals)
    if (!valid_loc(a, l)) rep.errors.push_back("final location out of range");
  for (LocId l : a.repeated)
    if (!valid_loc(a, l))
      rep.errors.push_back("repeated location out of range");

  if (rep.ok()) {
    std::vector<bool> has_out(a.locations.size(), false);
    for (const auto& t : a.transitions) has_out[t.from] = true;
    for (std::size_t l = 0; l < a.locations.size(); ++l)
      if (!has_out[l])
        rep.warnings.push_back("location '" + a.locations[l] +
                               "' has no outgoing transition (progress "
                               "assumption; see add_tau_loops)");
  }
  return rep;
}

Automaton add_tau_loops(const Automaton& a) {
  Automaton out = a;
  std::vector<bool> has_out(a.locations.size(), false);
  for (const auto& t : a.transitions) has_out[t.from] = true;
  for (LocId l = 0; l < static_cast<LocId>(a.locations.size()); ++l)
    if (!has_out[l])
      out.transitions.push_back(
          Transition{l, {}, kTau, {}, l, TransTag::kSynthetic, -1});
  return out;
}

Automaton select_fault_channel(const Automaton& a, int k) {
  Automaton out = a;
  for (auto& t : out.transitions) {
    if (is_fault(t.action))
      t.action = (fault_channel(t.action) == k) ? kFault : kTau;
  }
  return out;
}

Automaton scale_constants(const Automaton& a, long long m) {
  Automaton out = a;
  auto scale = [&](ClockConstraint& g) {
    for (auto& atom : g.atoms) atom.bound = static_cast<int>(atom.bound * m);
  };
  for (auto& inv : out.invariants) scale(inv);
  for (auto& t : out.transitions) scale(t.guard);
  return out;
}

std::vector<int> max_constants(const Automaton& a) {
  std::vector<int> k(a.clocks.size(), 0);
  auto visit = [&](const ClockConstraint& g) {
    for (const auto& atom : g.atoms)
      k[static_cast<std::size_t>(atom.clock)] =
          std::max(k[static_cast<std::size_t>(atom.clock)], atom.bound);
  };
  for (const auto& inv : a.invariants) visit(inv);
  for (const auto& t : a.transitions) visit(t.guard);
  return k;
}

std::vector<std::vector<int>> outgoing_index(const Automaton& a) {
  std::vector<std::vector<int>> out(a.locations.size());
  for (std::size_t i = 0; i < a.transitions.size(); ++i)
    out[a.transitions[i].from].push_back(static_cast<int>(i));
  return out;
}

State delay_successor(const Automaton& a, const State& s, const Rat& d) {
  if (d < Rat(0)) throw Error("negative delay");
  State next = s;
  for (auto& x : next.clocks) x += d;
  const auto& inv = a.invariants[s.loc];
  if (!constraint_satisfied(inv, next.clocks)) {
    // Supremum of admissible delay under the (upper-bound) invariant.
    Rat sup = d;
    bool any = false;
    for (const auto& atom : inv.atoms) {
      const Rat slack = Rat(atom.bound) - s.clocks[atom.clock];
      if (!any || slack < sup) sup = slack;
      any = true;
    }
    if (sup < Rat(0)) sup = Rat(0);
    throw InvariantViolation("delay leaves invariant of location '" +
                                 a.locations[s.loc] + "'",
                             sup);
  }
  return next;
}

std::optional<State> discrete_step(const Automaton& a, const State& s,
                                   int trans_index) {
  const auto& t = a.transitions[static_cast<std::size_t>(trans_index)];
  if (t.from != s.loc) return std::nullopt;
  if (!constraint_satisfied(t.guard, s.clocks)) return std::nullopt;
  State next{t.to, s.clocks};
  for (ClockId c : t.resets) next.clocks[static_cast<std::size_t>(c)] = Rat(0);
  if (!constraint_satisfied(a.invariants[t.to], next.clocks))
    return std::nullopt;
  return next;
}

std::vector<std::pair<int, State>> discrete_successors(const Automaton& a,
                                                       const State& s) {
  std::vector<std::pair<int, State>> out;
  for (std::size_t i = 0; i < a.transitions.size(); ++i) {
    if (a.transitions[i].from != s.loc) continue;
    if (auto nxt = discrete_step(a, s, static_cast<int>(i)))
      out.emplace_back(static_cast<int>(i), *nxt);
  }
  return out;
}

bool ObservationFamily::observes(int site, ActionId a) const {
  if (a < 0) return false;
  const auto& v = sites[static_cast<std::size_t>(site)];
  return std::binary_search(v.begin(), v.end(), a);
}

ObservationFamily family_from_names(
    const Automaton& a, const std::vector<std::vector<std::string>>& names) {
  ObservationFamily fam;
  for (const auto& site : names) {
    std::vector<ActionId> ids;
    for (const auto& n : site) {
      ActionId id = a.action_of(n);
      if (id < 0) throw Error("site letter '" + n + "' not in the alphabet");
      ids.push_back(id);
    }
    std::sort(ids.begin(), ids.end());
    ids.erase(std::unique(ids.begin(), ids.end()), ids.end());
    fam.sites.push_back(std::move(ids));
  }
  return fam;
}

}  // namespace codiag
