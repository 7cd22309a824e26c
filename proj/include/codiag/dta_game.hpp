#ifndef CODIAG_DTA_GAME_HPP
#define CODIAG_DTA_GAME_HPP

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "codiag/automaton.hpp"
#include "codiag/model_io.hpp"
#include "codiag/runs.hpp"

namespace codiag {

/// Three copies of a timed automaton tracking fault age against delta:
/// copy 1 = not yet faulty, copy 2 = faulty with age clock z <= delta
/// (invariant strengthened accordingly), copy 3 = past the deadline, entered
/// by a silent z = delta switch; copy 3 keeps the original invariants.
/// Location ids: copy c in {1,2,3} holds the original location l at
/// (c-1)*|L| + l.
Automaton three_copy(const Automaton& a, int delta);

inline int three_copy_copy(const Automaton& original, LocId loc) {
  return 1 + static_cast<int>(loc / static_cast<LocId>(original.locations.size()));
}

/// Most-permissive single-clock machine over the resource: one location, and
/// for every letter, every minimal guard over the clock (points [k,k], open
/// intervals (k,k+1), and the unbounded tail beyond max_const) and each reset
/// choice, one self-loop. With no clock the guards collapse to `true`.
/// Constants are expressed in granularity units (clock grid 1/den), so pair
/// it with a plant scaled by res.granularity_den.
Automaton universal_automaton(const Resource& res, int site);

/// Safety game for one site. Player 1 (the environment) proposes the next
/// observable event as a pair (minimal guard on the diagnoser clock, letter);
/// player 0 answers with the reset choice. Positions of player 1 are
/// subsets of region-product states closed under silent moves and delays;
/// a position is bad when it mixes a copy-1 explanation with a copy-3
/// explanation strictly past the deadline.
struct DtaGame {
  struct Choice {
    bool reset = false;
    int target = 0;  // p1 node
  };
  struct P0Node {
    int from = 0;  // p1 node
    int guard = 0;  // index into guards
    ActionId action = 0;
    std::vector<Choice> choices;
  };
  struct P1Node {
    std::vector<int> members;  // H node ids, sorted
    bool bad = false;
    bool all_faulty = false;  // members nonempty and none in copy 1
    std::vector<int> moves;   // p0 node ids
  };

  std::vector<P1Node> p1;
  std::vector<P0Node> p0;
  int initial = 0;
  std::vector<ClockConstraint> guards;  // over the diagnoser clock (id 0)
  std::vector<std::string> letters;     // site alphabet
  long long scale = 1;                  // granularity denominator applied
};

DtaGame build_game(const Automaton& a, int delta, const Resource& res,
                   int site, std::size_t max_nodes = 200000);

/// Positional safety strategy for player 0: for every p0 node a choice index,
/// or nullopt when player 0 cannot stay safe from the initial position.
/// Ties resolve to the lowest safe choice index.
std::optional<std::vector<int>> solve_safety(const DtaGame& g);

/// Deterministic one-clock diagnoser with guard constants in units of
/// 1/granularity_den. Accepting locations announce; announcements latch.
struct DtaDiagnoser {
  int site = 0;
  long long granularity_den = 1;
  Automaton dta;
};

/// Folds a winning strategy into the diagnoser DFA-with-clock: locations are
/// the reachable p1 positions, edges follow the strategy's reset choices,
/// accepting = positions whose explanations are all faulty.
DtaDiagnoser strategy_to_dta(const DtaGame& g, const std::vector<int>& strategy,
                             const Resource& res, int site);

/// Latched verdicts of one diagnoser along a site-projected timed word
/// (durations in plain time units; they are scaled internally). outputs[k] =
/// verdict after k letters, evaluated just after the letter; the last entry
/// accounts for the trailing delay as well.
std::vector<bool> evaluate_dta(const DtaDiagnoser& d, const TimedWord& w);

struct DtaSynthesisResult {
  bool success = false;
  std::vector<DtaDiagnoser> diagnosers;  // one per winning site used
  std::vector<int> winning_sites;        // sites whose game player 0 wins
  std::string note;
};

/// Tries to assemble a codiagnosing tuple within the per-site resources:
/// solves each site's game, then checks that the combined announcers meet
/// every deadline (a diagnoser tuple must flag every run whose fault age
/// exceeds delta). A single winning site suffices; otherwise combinations of
/// winning sites are checked, and failure of all of them is reported as
/// unsuccessful with a note.
DtaSynthesisResult codiag_dta_synthesis(const Automaton& a, int delta,
                                        const std::vector<Resource>& res,
                                        std::size_t max_nodes = 200000);

/// Deadline check used by codiag_dta_synthesis, exposed for tests: true iff
/// no run of the plant reaches fault age strictly beyond delta while every
/// supplied diagnoser still tracks a non-faulty explanation.
bool diagnosers_cover_deadlines(const Automaton& a, int delta,
                                const std::vector<DtaDiagnoser>& ds,
                                std::size_t max_nodes = 1000000);

}  // namespace codiag

#endif
