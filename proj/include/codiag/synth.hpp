#ifndef CODIAG_SYNTH_HPP
#define CODIAG_SYNTH_HPP

#include <optional>
#include <string>
#include <vector>

#include "codiag/automaton.hpp"
#include "codiag/rational.hpp"
#include "codiag/runs.hpp"

namespace codiag {

/// Deterministic complete site diagnoser for a finite automaton: subset
/// construction over the fault tagger, one DFA per site over that site's
/// letters. Accepting (= announcing) locations are the nonempty subsets whose
/// members are all faulty; announcements latch in evaluate_diagnoser.
struct SiteDiagnoser {
  int site = 0;
  Automaton dfa;  // finite, deterministic, complete over the site alphabet
};

/// Builds the diagnoser tuple. Throws NotCodiagnosable (with the ambiguity
/// witness message) when the model is not delta-codiagnosable under fam.
std::vector<SiteDiagnoser> synthesize_fa_codiagnosers(
    const Automaton& a, int delta, const ObservationFamily& fam);

/// Latched run of one diagnoser: outputs[k] is the verdict after the first k
/// letters (size = letters + 1). Unknown letters throw ValidationError.
std::vector<bool> evaluate_diagnoser(const SiteDiagnoser& d,
                                     const std::vector<std::string>& letters);

/// Joint verdict: or over the tuple, each latched.
std::vector<bool> evaluate_diagnosers(const std::vector<SiteDiagnoser>& ds,
                                      const std::vector<std::string>& letters);

/// Online state estimator for one site of a timed automaton. Feed it delays
/// and observed letters; it maintains the set of (location, fault bit)
/// explanations of the observation so far and announces - and latches - once
/// every explanation is faulty with fault age >= delta. Empty explanation
/// sets (impossible observations) throw InconsistentObservation.
class Estimator {
 public:
  struct Item {
    LocId loc = 0;
    bool faulty = false;
    bool operator==(const Item& o) const {
      return loc == o.loc && faulty == o.faulty;
    }
  };
  struct Verdict {
    bool announce = false;  // latched
    std::vector<Item> items;  // deduplicated, sorted
  };

  Estimator(const Automaton& a, const std::vector<std::string>& site_letters,
            int delta);

  /// Let `gap` time units pass (gap >= 0).
  Verdict advance(const Rat& gap);
  /// Observe `letter` at the current instant.
  Verdict observe(const std::string& letter);
  /// Convenience: replay a site-projected timed word from scratch.
  Verdict feed_word(const TimedWord& w);

  const Verdict& current() const { return verdict_; }

 private:
  void recompute();

  const Automaton& a_;
  std::vector<ActionId> site_;
  int delta_;
  std::vector<std::pair<Rat, ActionId>> events_;  // (gap, letter or kTau=pure delay)
  bool latched_ = false;
  Verdict verdict_;
};

}  // namespace codiag

#endif
