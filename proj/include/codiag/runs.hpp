#ifndef CODIAG_RUNS_HPP
#define CODIAG_RUNS_HPP

#include <cstddef>
#include <string>
#include <vector>

#include "codiag/automaton.hpp"

namespace codiag {

/// One run step: wait `delay`, then fire transition `trans`.
/// FA runs keep all delays at zero.
struct RunStep {
  Rat delay;
  int trans;
  bool operator==(const RunStep&) const = default;
};

/// A finite run: start state, steps, then a trailing delay.
struct Run {
  State start;
  std::vector<RunStep> steps;
  Rat trailing = Rat(0);
  bool operator==(const Run&) const = default;
};

/// Replays the run from its start state; throws Error if any move is illegal
/// (bad guard, invariant violation, dangling index).
State replay_run(const Automaton& a, const Run& r);

bool run_is_valid(const Automaton& a, const Run& r);

/// A timed word over named letters: gaps.size() == letters.size() + 1,
/// alternating gap-letter-...-letter-gap. FA words carry all-zero gaps.
struct TimedWord {
  std::vector<Rat> gaps{Rat(0)};
  std::vector<std::string> letters;
  bool operator==(const TimedWord&) const = default;

  Rat duration() const;
  void append(const Rat& gap, const std::string& letter);  // extends the tail
  void extend_time(const Rat& gap);
};

/// Observable trace of a run: silent steps (tau and every fault channel)
/// disappear and their delays merge into the neighbouring gaps.
TimedWord trace_of(const Automaton& a, const Run& r);

/// Projection onto a site alphabet: letters outside `keep` are erased, their
/// gaps merged. Elapsed time is preserved.
TimedWord project(const TimedWord& w, const std::vector<std::string>& keep);

/// Drops durations.
std::vector<std::string> untime(const TimedWord& w);

/// TA: total elapsed time. FA: number of discrete steps (as a Rat).
Rat duration_of(const Automaton& a, const Run& r);

enum class RunClassKind { NonFaulty, Faulty, DeltaFaulty };

struct RunClass {
  RunClassKind kind = RunClassKind::NonFaulty;
  /// Fault age = suffix duration after the *first* fault step: elapsed time for
  /// TA, number of discrete steps (any label) for FA. Zero when non-faulty.
  Rat fault_age = Rat(0);
  bool operator==(const RunClass&) const = default;
};

/// Classifies against detection delay `delta`. FA runs are DeltaFaulty when the
/// fault age reaches delta (>=); TA runs when it exceeds delta (>). The
/// asymmetry mirrors discrete step-counting vs continuous elapse: a TA run
/// dwelling to age exactly delta is still classified Faulty.
RunClass classify_run(const Automaton& a, const Run& r, int delta);

struct EnumOptions {
  int max_steps = 3;
  /// Delay grid for TA enumeration; every gap is a multiple of `grid`.
  Rat grid = Rat(1);
  /// Per-gap delay cap; 0 means "largest guard constant + 1".
  Rat max_delay = Rat(0);
  /// Also emit copies of each run with nonzero trailing delays (TA only).
  bool with_trailing = false;
  std::size_t max_runs = 2'000'000;
};

/// Exhaustive bounded run enumeration (the ground-truth oracle the rest of the
/// toolkit is tested against). Deterministic order; prefix-closed in the sense
/// that every emitted run's step-prefixes are emitted too. Throws
/// BudgetExceeded past max_runs.
std::vector<Run> enumerate_runs(const Automaton& a, const EnumOptions& opt);

}  // namespace codiag

#endif
