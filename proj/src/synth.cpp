#include "codiag/synth.hpp"

#include <algorithm>
#include <deque>
#include <map>
#include <numeric>
#include <set>

#include "codiag/codiag.hpp"
#include "codiag/compose.hpp"
#include "codiag/errors.hpp"
#include "codiag/regions.hpp"

namespace codiag {
namespace {

std::vector<LocId> closure_under(const Automaton& tagger,
                                 const std::vector<std::vector<int>>& out,
                                 std::vector<LocId> seed,
                                 const std::vector<ActionId>& visible) {
  std::set<LocId> seen(seed.begin(), seed.end());
  std::deque<LocId> queue(seed.begin(), seed.end());
  while (!queue.empty()) {
    LocId l = queue.front();
    queue.pop_front();
    for (int t : out[l]) {
      const auto& tr = tagger.transitions[t];
      bool silent_here =
          !is_observable(tr.action) ||
          !std::binary_search(visible.begin(), visible.end(), tr.action);
      if (!silent_here) continue;
      if (seen.insert(tr.to).second) queue.push_back(tr.to);
    }
  }
  return {seen.begin(), seen.end()};
}

std::string subset_name(const Automaton& tagger,
                        const std::vector<LocId>& subset) {
  if (subset.empty()) return "{}";
  std::string s = "{";
  for (std::size_t i = 0; i < subset.size(); ++i) {
    if (i) s += ',';
    s += tagger.locations[subset[i]];
  }
  s += '}';
  return s;
}

}  // namespace

std::vector<SiteDiagnoser> synthesize_fa_codiagnosers(
    const Automaton& a, int delta, const ObservationFamily& fam) {
  if (a.kind != Kind::FA)
    throw ValidationError("subset-diagnoser synthesis needs a finite automaton");
  DeltaVerdict v = check_delta_codiag(a, delta, fam);
  if (!v.codiagnosable)
    throw NotCodiagnosable("model is not codiagnosable at delay " +
                           std::to_string(delta));

  Automaton tagger = fault_tagger(a);
  auto out = outgoing_index(tagger);
  std::vector<SiteDiagnoser> ds;
  for (std::size_t site = 0; site < fam.size(); ++site) {
    const auto& visible = fam.sites[site];
    SiteDiagnoser d;
    d.site = static_cast<int>(site);
    d.dfa.kind = Kind::FA;
    d.dfa.name = a.name + "_diag" + std::to_string(site);
    for (ActionId act : visible) d.dfa.alphabet.push_back(a.alphabet[act]);

    std::map<std::vector<LocId>, LocId> index;
    std::vector<std::vector<LocId>> subsets;
    auto intern = [&](std::vector<LocId> s) {
      auto it = index.find(s);
      if (it != index.end()) return it->second;
      LocId id = static_cast<LocId>(subsets.size());
      index.emplace(s, id);
      d.dfa.locations.push_back(subset_name(tagger, s));
      subsets.push_back(std::move(s));
      return id;
    };
    intern(closure_under(tagger, out, {tagger.initial}, visible));
    d.dfa.initial = 0;
    for (LocId head = 0; head < static_cast<LocId>(subsets.size()); ++head) {
      std::vector<LocId> cur = subsets[head];
      for (ActionId sym = 0;
           sym < static_cast<ActionId>(d.dfa.alphabet.size()); ++sym) {
        ActionId model_act = visible[sym];
        std::vector<LocId> moved;
        for (LocId l : cur)
          for (int t : out[l])
            if (tagger.transitions[t].action == model_act)
              moved.push_back(tagger.transitions[t].to);
        std::sort(moved.begin(), moved.end());
        moved.erase(std::unique(moved.begin(), moved.end()), moved.end());
        std::vector<LocId> next =
            moved.empty() ? moved : closure_under(tagger, out, moved, visible);
        Transition tr;
        tr.from = head;
        tr.action = sym;
        tr.to = intern(std::move(next));
        tr.tag = TransTag::kSynthetic;
        d.dfa.transitions.push_back(tr);
      }
    }
    d.dfa.invariants.assign(d.dfa.locations.size(), ClockConstraint{});
    for (LocId l = 0; l < static_cast<LocId>(subsets.size()); ++l) {
      const auto& s = subsets[l];
      bool announce = !s.empty();
      for (LocId member : s)
        announce = announce && tagger_is_faulty(a, member);
      if (announce) d.dfa.finals.push_back(l);
    }
    ds.push_back(std::move(d));
  }
  return ds;
}

std::vector<bool> evaluate_diagnoser(const SiteDiagnoser& d,
                                     const std::vector<std::string>& letters) {
  std::vector<bool> out;
  LocId cur = d.dfa.initial;
  bool latch = d.dfa.is_final(cur);
  out.push_back(latch);
  auto idx = outgoing_index(d.dfa);
  for (const auto& s : letters) {
    ActionId act = d.dfa.action_of(s);
    if (act < 0)
      throw ValidationError("letter '" + s + "' is outside the site alphabet");
    bool moved = false;
    for (int t : idx[cur])
      if (d.dfa.transitions[t].action == act) {
        cur = d.dfa.transitions[t].to;
        moved = true;
        break;
      }
    if (!moved)
      throw ValidationError("diagnoser is not complete on letter '" + s + "'");
    latch = latch || d.dfa.is_final(cur);
    out.push_back(latch);
  }
  return out;
}

std::vector<bool> evaluate_diagnosers(const std::vector<SiteDiagnoser>& ds,
                                      const std::vector<std::string>& letters) {
  // Each diagnoser sees its own projection of the joint letter stream.
  std::vector<bool> joint(letters.size() + 1, false);
  for (const auto& d : ds) {
    std::vector<std::string> own;
    std::vector<std::size_t> positions;  // joint index after each own letter
    for (std::size_t i = 0; i < letters.size(); ++i)
      if (d.dfa.action_of(letters[i]) >= 0) {
        own.push_back(letters[i]);
        positions.push_back(i + 1);
      }
    std::vector<bool> mine = evaluate_diagnoser(d, own);
    // Spread latched verdicts over the joint timeline.
    std::size_t at = 0;
    bool cur = mine[0];
    for (std::size_t i = 0; i <= letters.size(); ++i) {
      while (at < positions.size() && positions[at] <= i) {
        cur = mine[at + 1];
        ++at;
      }
      joint[i] = joint[i] || cur;
    }
  }
  return joint;
}

Estimator::Estimator(const Automaton& a,
                     const std::vector<std::string>& site_letters, int delta)
    : a_(a), delta_(delta) {
  if (a.kind != Kind::TA)
    throw ValidationError("the estimator follows a timed automaton");
  if (delta < 0) throw ValidationError("negative delay");
  for (const auto& s : site_letters) {
    ActionId act = a.action_of(s);
    if (act < 0)
      throw ValidationError("site letter '" + s + "' is not in the alphabet");
    site_.push_back(act);
  }
  std::sort(site_.begin(), site_.end());
  site_.erase(std::unique(site_.begin(), site_.end()), site_.end());
  recompute();
}

Estimator::Verdict Estimator::advance(const Rat& gap) {
  if (gap < Rat(0)) throw ValidationError("negative delay step");
  events_.emplace_back(gap, kTau);
  recompute();
  return verdict_;
}

Estimator::Verdict Estimator::observe(const std::string& letter) {
  ActionId act = a_.action_of(letter);
  if (act < 0 || !std::binary_search(site_.begin(), site_.end(), act))
    throw ValidationError("letter '" + letter +
                          "' is not observable at this site");
  events_.emplace_back(Rat(0), act);
  recompute();
  return verdict_;
}

Estimator::Verdict Estimator::feed_word(const TimedWord& w) {
  events_.clear();
  latched_ = false;
  for (std::size_t i = 0; i < w.letters.size(); ++i) {
    advance(w.gaps[i]);
    observe(w.letters[i]);
  }
  advance(w.gaps.back());
  return verdict_;
}

void Estimator::recompute() {
  // Common denominator of every delay seen so far; at that granularity each
  // gap is an integer number of region-graph macro ticks.
  long long m = 1;
  for (const auto& [gap, act] : events_) {
    long long den = gap.denominator();
    m = std::lcm(m, den);
    if (m > 1000000)
      throw BudgetExceeded("estimator granularity exceeded 1e6");
  }

  // Fault tagger with an age clock t reset on the first-fault switches, then
  // an elapse clock e measuring each gap; all constants scaled by m.
  const int nloc = static_cast<int>(a_.locations.size());
  Automaton tagger = fault_tagger(a_);
  std::string tname = "t";
  while (std::find(tagger.clocks.begin(), tagger.clocks.end(), tname) !=
         tagger.clocks.end())
    tname += "_";
  tagger.clocks.push_back(tname);
  ClockId tclock = static_cast<ClockId>(tagger.clocks.size()) - 1;
  for (auto& tr : tagger.transitions)
    if (tr.tag == TransTag::kFaultSwitch && tr.from < nloc)
      tr.resets.push_back(tclock);
  Automaton scaled = scale_constants(tagger, m);
  std::string ename = "e";
  while (std::find(scaled.clocks.begin(), scaled.clocks.end(), ename) !=
         scaled.clocks.end())
    ename += "_";
  scaled.clocks.push_back(ename);
  ClockId eclock = static_cast<ClockId>(scaled.clocks.size()) - 1;
  auto out = outgoing_index(scaled);

  std::vector<int> maxk = max_constants(scaled);
  long long age_bound = static_cast<long long>(delta_) * m;
  if (age_bound > 1000000)
    throw BudgetExceeded("estimator age bound exceeded 1e6");
  maxk[tclock] = std::max<int>(maxk[tclock], static_cast<int>(age_bound));

  struct Elem {
    LocId loc;
    Region region;
  };
  auto elem_key = [](const Elem& el) {
    return std::to_string(el.loc) + "@" + region_key(el.region);
  };

  // Closure under silent moves and exactly `ticks` units of elapse, measured
  // by the e clock; e is reset again in the survivors.
  auto step_gap = [&](std::vector<Elem> cur, long long ticks,
                      std::vector<int>& mk) -> std::vector<Elem> {
    mk[eclock] = static_cast<int>(ticks);
    std::set<std::string> seen;
    std::deque<Elem> queue;
    std::vector<Elem> result;
    auto push = [&](Elem el) {
      if (seen.insert(elem_key(el)).second) queue.push_back(std::move(el));
    };
    for (auto& el : cur) {
      el.region = region_reset(el.region, {eclock});
      push(std::move(el));
    }
    std::size_t explored = 0;
    while (!queue.empty()) {
      Elem el = queue.front();
      queue.pop_front();
      if (++explored > 200000)
        throw BudgetExceeded("estimator closure exceeded 2e5 regions");
      // Keep elements whose elapse clock reads exactly `ticks`.
      if (region_satisfies(el.region, ClockAtom{eclock, Cmp::EQ,
                                                static_cast<int>(ticks)}))
        result.push_back(el);
      if (auto succ = region_time_successor(el.region, mk);
          succ && region_satisfies(*succ, scaled.invariants[el.loc]) &&
          !region_satisfies(*succ, ClockAtom{eclock, Cmp::GT,
                                             static_cast<int>(ticks)}))
        push(Elem{el.loc, *succ});
      for (int t : out[el.loc]) {
        const auto& tr = scaled.transitions[t];
        if (is_observable(tr.action)) continue;
        if (!region_satisfies(el.region, tr.guard)) continue;
        Region nr = region_reset(el.region, tr.resets);
        if (!region_satisfies(nr, scaled.invariants[tr.to])) continue;
        push(Elem{tr.to, nr});
      }
    }
    return result;
  };

  std::vector<Elem> cur;
  cur.push_back(Elem{
      scaled.initial,
      region_of(ClockValuation(scaled.clocks.size(), Rat(0)), maxk)});
  // The initial instant still closes under silent moves.
  cur = step_gap(std::move(cur), 0, maxk);
  for (const auto& [gap, act] : events_) {
    long long ticks = gap.numerator() * (m / gap.denominator());
    cur = step_gap(std::move(cur), ticks, maxk);
    if (act != kTau) {
      std::vector<Elem> next;
      std::set<std::string> seen;
      for (const auto& el : cur)
        for (int t : out[el.loc]) {
          const auto& tr = scaled.transitions[t];
          if (tr.action != act) continue;
          if (!region_satisfies(el.region, tr.guard)) continue;
          Region nr = region_reset(el.region, tr.resets);
          if (!region_satisfies(nr, scaled.invariants[tr.to])) continue;
          Elem nel{tr.to, std::move(nr)};
          if (seen.insert(elem_key(nel)).second) next.push_back(std::move(nel));
        }
      cur = step_gap(std::move(next), 0, maxk);
    }
    if (cur.empty())
      throw InconsistentObservation(
          "observation matches no run of the model");
  }

  Verdict v;
  bool announce = !cur.empty();
  std::set<std::pair<LocId, bool>> items;
  for (const auto& el : cur) {
    bool faulty = el.loc >= nloc;
    items.emplace(el.loc % nloc, faulty);
    bool aged = region_satisfies(
        el.region, ClockAtom{tclock, Cmp::GE, static_cast<int>(age_bound)});
    announce = announce && faulty && aged;
  }
  for (auto [loc, faulty] : items) v.items.push_back(Item{loc, faulty});
  latched_ = latched_ || announce;
  v.announce = latched_;
  verdict_ = std::move(v);
}

}  // namespace codiag
