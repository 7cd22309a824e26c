#ifndef CODIAG_TESTS_SUPPORT_HPP
#define CODIAG_TESTS_SUPPORT_HPP

#include <cstdint>
#include <random>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "codiag/automaton.hpp"
#include "codiag/emptiness.hpp"
#include "codiag/runs.hpp"
#include "codiag/synth.hpp"

namespace codiag::testing {

using Rng = std::mt19937;

/// Uniform integer in [lo, hi].
int rand_int(Rng& rng, int lo, int hi);

/// Random explicit graph for the search tests: adjacency lists plus
/// accepting flags. Densities hover around avg_degree edges per vertex.
std::pair<std::vector<std::vector<int>>, std::vector<bool>> random_graph(
    Rng& rng, int n, double avg_degree = 2.5, double accept_prob = 0.25);

struct FaOptions {
  int max_states = 6;
  int alphabet = 3;
  int max_edges = 12;
  bool with_fault = true;
  bool with_tau = true;
  bool with_finals = false;
  bool progress_loops = true;  // tau self-loops at dead ends
};

/// Random finite automaton over letters a, b, c, ... with location L0 initial.
Automaton random_fa(Rng& rng, const FaOptions& opt);

struct TaOptions {
  int max_states = 4;
  int alphabet = 2;
  int clocks = 1;
  int max_const = 1;
  int max_edges = 6;
  bool with_fault = false;
  bool with_tau = true;
  bool with_finals = true;
  bool with_invariants = true;
  bool progress_loops = true;
};

/// Random timed automaton; guards and invariants use constants <= max_const,
/// invariants are upper bounds only and always admit the initial valuation.
Automaton random_ta(Rng& rng, const TaOptions& opt);

/// Random partial DFA (deterministic, letter-only) with a random accepting
/// set; used for the intersection-emptiness reductions.
Automaton random_dfa(Rng& rng, int max_states, int letters);

/// Random observation family with `sites` nonempty sites over a's alphabet.
ObservationFamily random_family(Rng& rng, const Automaton& a, int sites);

/// Letter names per site.
std::vector<std::vector<std::string>> family_names(const Automaton& a,
                                                   const ObservationFamily& f);

/// Direct evaluation of the ambiguity condition for finite automata: explores
/// configurations (real location, fault bit, step age saturated at delta,
/// per-site sets of non-faulty explanations closed under moves the site
/// cannot see) and reports delta-codiagnosability. Independent of the
/// product/monitor machinery.
bool oracle_delta_codiag_fa(const Automaton& a, int delta,
                            const ObservationFamily& fam);

/// Full-depth compliance check of a diagnoser tuple: walks configurations
/// (plant location, fault bit, saturated age, per-site diagnoser locations
/// and latches). Returns an empty string when every reachable configuration
/// is compliant (no announcement without fault; some site announced whenever
/// the fault is at least delta steps old), else a description.
std::string def3_violation_fa(const Automaton& a, int delta,
                              const ObservationFamily& fam,
                              const std::vector<SiteDiagnoser>& ds,
                              std::size_t max_configs = 300000);

/// SCC-based emptiness oracle: is there a cycle through an accepting vertex
/// reachable from `initial`?
bool scc_has_accepting_cycle(int n, int initial,
                             const std::vector<std::vector<int>>& adj,
                             const std::vector<bool>& accepting);

/// Do the given letter-only automata accept a common word? BFS over joint
/// states; letters are matched by name, a missing letter blocks.
bool dfa_intersection_nonempty(const std::vector<Automaton>& dfas);

/// All observable words of length <= maxlen accepted by the finite-automaton
/// view of `a` (guards ignored; tau and fault edges are silent).
std::set<std::vector<std::string>> bounded_language(const Automaton& a,
                                                    int maxlen);

/// Membership of one observable word, by subset simulation.
bool accepts_word_fa(const Automaton& a,
                     const std::vector<std::string>& word);

/// Replays a search witness on an explicit graph: every step must follow an
/// edge, a cycle must close on its seed and pass through an accepting vertex.
bool witness_on_graph_ok(const std::vector<std::vector<int>>& adj,
                         const std::vector<bool>& accepting, int initial,
                         const SearchWitness& w, bool need_cycle);

/// Reference explanation set for an observed site word of a timed automaton,
/// by bounded run enumeration: the (location, fault bit) endpoints of runs
/// whose site projection equals `w` exactly (letters, gaps and duration).
std::set<std::pair<int, bool>> explanations_by_enumeration(
    const Automaton& a, const std::vector<std::string>& site,
    const TimedWord& w, const EnumOptions& opt);

}  // namespace codiag::testing

#endif
