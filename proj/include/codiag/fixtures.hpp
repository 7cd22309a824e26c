#ifndef CODIAG_FIXTURES_HPP
#define CODIAG_FIXTURES_HPP

#include <string>
#include <vector>

#include "codiag/automaton.hpp"
#include "codiag/model_io.hpp"

namespace codiag {

struct Fixture {
  std::string name;
  Automaton model;
  std::vector<std::vector<std::string>> family;
  int delta = 0;  // suggested delay for the bundled scenario
  std::vector<Resource> resources;
  std::string notes;
};

/// Built-in models exercised throughout the tests:
///   remark      timed, single observable `a`; codiagnosable with delay 1
///               but no estimator announcement is possible at time <= 1.
///   remark-u    untimed skeleton of `remark`; not codiagnosable at all.
///   conf        two-site untimed model: fault then a.b versus non-faulty
///               a-only and b-only branches. Not codiagnosable when the
///               sites split {a} / {b}; delay 2 when one site sees both.
///   conf-joint  `conf` with the single all-seeing site.
///   codiag-ok   untimed, fault.a vs tau.b; delay 1 under sites {a} / {b}.
///   conf-ta     timed variant of `conf` where guards break the ambiguity
///               for the a-site alone.
Fixture builtin_fixture(const std::string& name);
std::vector<std::string> builtin_fixture_names();

/// Disjoint union of deterministic finite automata over a shared alphabet,
/// rigged so that the intersection of their languages is nonempty iff a fault
/// can stay hidden: clearing gadget for hardness experiments. The `dfas` must
/// be fault-free and tau-free with nonempty alphabets.
Fixture intersection_fixture(const std::vector<Automaton>& dfas);

/// Chain of k small DFAs with pairwise-thinning languages; intersection is
/// empty iff `empty` (used to stress intersection_fixture both ways).
std::vector<Automaton> chain_dfas(int k, bool empty);

/// Normal form for intersection emptiness: every machine gains a fresh
/// letter `lam` from its accepting states to a new sink, the first machine
/// accepts only at the sink, the others accept everywhere. Intersection
/// emptiness of the outputs equals that of the inputs, with all the
/// "acceptance" burden carried by the first machine.
std::vector<Automaton> kozen_chain(const std::vector<Automaton>& dfas);

}  // namespace codiag

#endif
