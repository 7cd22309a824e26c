// Acceptance suite: eight self-contained criteria, one pass/fail line each.
// Run with the criterion number (1-8) as the only argument, or "all".
// Seeds, instance counts and wall-clock limits are pinned here on purpose.

#include <chrono>
#include <iostream>
#include <map>
#include <set>
#include <string>
#include <vector>

#include "codiag/codiag.hpp"
#include "codiag/compose.hpp"
#include "codiag/dta_game.hpp"
#include "codiag/errors.hpp"
#include "codiag/fixtures.hpp"
#include "codiag/model_io.hpp"
#include "codiag/regions.hpp"
#include "codiag/runs.hpp"
#include "codiag/spaces.hpp"
#include "codiag/synth.hpp"
#include "support.hpp"

using namespace codiag;
using namespace codiag::testing;

namespace {

struct Outcome {
  bool pass = true;
  std::string detail;

  void fail(const std::string& why) {
    pass = false;
    if (!detail.empty()) detail += "; ";
    detail += why;
  }
  void note(const std::string& what) {
    if (pass && detail.empty()) detail = what;
  }
};

double seconds_since(std::chrono::steady_clock::time_point t0) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0)
      .count();
}

std::string fmt(double s) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%.2fs", s);
  return buf;
}

// ---------------------------------------------------------------------------
// 1: the timed showcase model is (1, {{a}})-codiagnosable, the estimator
// announces after `2 a` and stays silent after `3 a`, and the untimed
// skeleton is not codiagnosable for any delay up to 10. Budget: 1 second.
Outcome criterion1() {
  Outcome o;
  auto t0 = std::chrono::steady_clock::now();

  Fixture f = builtin_fixture("remark");
  ObservationFamily fam = family_from_names(f.model, f.family);
  if (!check_delta_codiag(f.model, 1, fam).codiagnosable)
    o.fail("timed model should be codiagnosable at delay 1");

  Estimator fast(f.model, {"a"}, 1);
  fast.advance(Rat(2));
  if (!fast.observe("a").announce)
    o.fail("estimator must announce after `2 a`");
  Estimator slow(f.model, {"a"}, 1);
  slow.advance(Rat(3));
  if (slow.observe("a").announce || slow.advance(Rat(5)).announce)
    o.fail("estimator must stay silent after `3 a`");

  Fixture u = builtin_fixture("remark-u");
  ObservationFamily ufam = family_from_names(u.model, u.family);
  for (int delta = 0; delta <= 10; ++delta)
    if (check_delta_codiag(u.model, delta, ufam).codiagnosable)
      o.fail("untimed skeleton wrongly codiagnosable at delay " +
             std::to_string(delta));
  if (check_codiag(u.model, ufam).codiagnosable)
    o.fail("untimed skeleton wrongly codiagnosable for some delay");

  double el = seconds_since(t0);
  if (el >= 1.0) o.fail("exceeded the 1s budget (" + fmt(el) + ")");
  o.note("fixture verdicts, estimator behaviour and 11 delay probes in " +
         fmt(el));
  return o;
}

// ---------------------------------------------------------------------------
// 2: the reduction from intersection emptiness. For 200 seeded DFA pairs the
// delay-1 verdict on the reduction gadget must mirror whether the two
// languages intersect. Budget: 30 seconds.
Outcome criterion2() {
  Outcome o;
  auto t0 = std::chrono::steady_clock::now();
  Rng rng(20202);
  int nonempty_cases = 0;

  for (int trial = 0; trial < 200 && o.pass; ++trial) {
    std::vector<Automaton> pair;
    for (int i = 0; i < 2; ++i) {
      Automaton d = random_dfa(rng, 5, 3);
      d.name = "d" + std::to_string(i);
      pair.push_back(d);
    }
    bool nonempty = dfa_intersection_nonempty(pair);
    nonempty_cases += nonempty ? 1 : 0;

    Fixture rf = intersection_fixture(pair);
    if (rf.delta != 1) {
      o.fail("reduction gadget should target delay 1");
      break;
    }
    ObservationFamily fam = family_from_names(rf.model, rf.family);
    DeltaVerdict v = check_delta_codiag(rf.model, 1, fam);
    if (v.codiagnosable == nonempty) {
      o.fail("trial " + std::to_string(trial) + ": verdict " +
             (v.codiagnosable ? "codiag" : "not-codiag") +
             " disagrees with intersection " +
             (nonempty ? "nonempty" : "empty"));
      break;
    }
    if (!v.codiagnosable) {
      if (!v.witness) {
        o.fail("trial " + std::to_string(trial) + ": missing witness");
        break;
      }
      VerifyResult vr = verify_ambiguous_tuple(rf.model, 1, fam, *v.witness);
      if (!vr.ok) {
        o.fail("trial " + std::to_string(trial) +
               ": witness rejected: " + vr.reason);
        break;
      }
    }
  }
  if (nonempty_cases < 20 || nonempty_cases > 180)
    o.fail("degenerate sample: " + std::to_string(nonempty_cases) +
           "/200 nonempty intersections");

  double el = seconds_since(t0);
  if (el >= 30.0) o.fail("exceeded the 30s budget (" + fmt(el) + ")");
  o.note("200 reductions (" + std::to_string(nonempty_cases) +
         " nonempty) in " + fmt(el));
  return o;
}

// ---------------------------------------------------------------------------
// 3: the product/monitor decision procedure against the direct
// configuration-set evaluation, on 300 seeded finite automata; negative
// verdicts must replay, and depth-bounded run enumeration must never find an
// ambiguity the checker missed. Budget: 2 minutes.
Outcome criterion3() {
  Outcome o;
  auto t0 = std::chrono::steady_clock::now();
  Rng rng(30303);
  int negatives = 0, probes = 0;

  for (int trial = 0; trial < 300 && o.pass; ++trial) {
    FaOptions opt;
    opt.max_states = 6;
    opt.alphabet = rand_int(rng, 2, 3);
    opt.max_edges = 12;
    Automaton a = random_fa(rng, opt);
    int sites = rand_int(rng, 1, 2);
    ObservationFamily fam = random_family(rng, a, sites);
    int delta = rand_int(rng, 0, 4);

    DeltaVerdict v = check_delta_codiag(a, delta, fam);
    bool oracle = oracle_delta_codiag_fa(a, delta, fam);
    if (v.codiagnosable != oracle) {
      o.fail("trial " + std::to_string(trial) + ": checker says " +
             (v.codiagnosable ? "codiag" : "not-codiag") +
             ", configuration oracle says " +
             (oracle ? "codiag" : "not-codiag"));
      break;
    }
    if (!v.codiagnosable) {
      ++negatives;
      if (!v.witness ||
          !verify_ambiguous_tuple(a, delta, fam, *v.witness).ok) {
        o.fail("trial " + std::to_string(trial) + ": bad witness");
        break;
      }
    }

    // Depth-bounded soundness probe with the run enumerator: a run-level
    // ambiguity within the horizon forces a negative verdict.
    if (trial % 10 != 0) continue;
    EnumOptions eo;
    eo.max_steps = std::min(delta + 2, 5);
    eo.max_runs = 150000;
    std::vector<Run> runs;
    try {
      runs = enumerate_runs(a, eo);
    } catch (const BudgetExceeded&) {
      continue;  // horizon too wide for this instance; skip the probe
    }
    ++probes;
    auto fams = family_names(a, fam);
    std::vector<std::set<std::vector<std::string>>> clean(fam.size());
    struct FaultyProj {
      std::vector<std::vector<std::string>> per_site;
    };
    std::vector<FaultyProj> bad;
    for (const Run& r : runs) {
      RunClass c = classify_run(a, r, delta);
      TimedWord w = trace_of(a, r);
      if (c.kind == RunClassKind::NonFaulty) {
        for (std::size_t i = 0; i < fam.size(); ++i)
          clean[i].insert(untime(project(w, fams[i])));
      } else if (c.kind == RunClassKind::DeltaFaulty) {
        FaultyProj fp;
        for (std::size_t i = 0; i < fam.size(); ++i)
          fp.per_site.push_back(untime(project(w, fams[i])));
        bad.push_back(fp);
      }
    }
    for (const auto& fp : bad) {
      bool all_twinned = true;
      for (std::size_t i = 0; i < fam.size(); ++i)
        all_twinned = all_twinned && clean[i].count(fp.per_site[i]) > 0;
      if (all_twinned && v.codiagnosable) {
        o.fail("trial " + std::to_string(trial) +
               ": enumerated ambiguity contradicts a positive verdict");
        break;
      }
    }
  }

  double el = seconds_since(t0);
  if (el >= 120.0) o.fail("exceeded the 120s budget (" + fmt(el) + ")");
  o.note("300 automata, " + std::to_string(negatives) + " negatives, " +
         std::to_string(probes) + " enumeration probes in " + fmt(el));
  return o;
}

// ---------------------------------------------------------------------------
// 4: language facts. (a) The product's bounded language equals the joint
// inverse projections on 100 seeded component lists (words up to length 5).
// (b) The region construction preserves untimed languages on 100 seeded
// timed automata: untimed words of grid runs up to 3 discrete steps equal
// the region automaton's words up to 3 letters. The grids (1/2 for one
// clock, 1/6 for two) realize every region path of that depth.
Outcome criterion4() {
  Outcome o;
  auto t0 = std::chrono::steady_clock::now();
  Rng rng(40404);
  int nonempty_products = 0, nonempty_regions = 0;

  for (int trial = 0; trial < 100 && o.pass; ++trial) {
    int comps = 2 + (trial % 2);
    std::vector<Automaton> as;
    for (int i = 0; i < comps; ++i) {
      FaOptions opt;
      opt.max_states = 4;
      opt.alphabet = i == 0 ? 3 : 2;  // later components are sub-alphabets
      opt.max_edges = 8;
      opt.with_fault = false;
      opt.with_finals = true;
      opt.progress_loops = false;
      Automaton a = random_fa(rng, opt);
      a.name = "c" + std::to_string(i);
      as.push_back(a);
    }
    std::vector<const Automaton*> ptrs;
    for (const auto& a : as) ptrs.push_back(&a);
    ProductResult pr = product(ptrs);

    auto lhs = bounded_language(pr.a, 5);
    std::set<std::vector<std::string>> rhs;
    std::vector<std::vector<std::string>> frontier{{}};
    while (!frontier.empty()) {
      std::vector<std::vector<std::string>> next;
      for (const auto& w : frontier) {
        bool all = true;
        for (const auto& a : as) {
          std::vector<std::string> p;
          for (const auto& l : w)
            if (a.action_of(l) >= 0) p.push_back(l);
          all = all && accepts_word_fa(a, p);
        }
        if (all) rhs.insert(w);
        if (w.size() < 5)
          for (const auto& l : as[0].alphabet) {
            auto v = w;
            v.push_back(l);
            next.push_back(v);
          }
      }
      frontier = next;
    }
    if (lhs != rhs)
      o.fail("product-language trial " + std::to_string(trial) +
             ": bounded languages differ (" + std::to_string(lhs.size()) +
             " vs " + std::to_string(rhs.size()) + " words)");
    if (!lhs.empty()) ++nonempty_products;
  }

  for (int trial = 0; trial < 100 && o.pass; ++trial) {
    bool two_clocks = trial >= 80;
    TaOptions opt;
    opt.with_tau = false;  // every discrete step emits a letter
    opt.with_fault = false;
    opt.with_finals = true;
    opt.progress_loops = false;
    opt.clocks = two_clocks ? 2 : 1;
    opt.max_states = two_clocks ? 3 : 4;
    opt.alphabet = 2;
    opt.max_edges = two_clocks ? 4 : 6;
    opt.max_const = two_clocks ? 1 : 2;
    Automaton a = random_ta(rng, opt);

    int k = 0;
    for (int c : max_constants(a)) k = std::max(k, c);
    EnumOptions eo;
    eo.max_steps = 3;
    eo.grid = two_clocks ? Rat(1, 6) : Rat(1, 2);
    eo.max_delay = Rat(k + 1);
    std::set<std::vector<std::string>> timed_words;
    for (const Run& r : enumerate_runs(a, eo))
      if (a.is_final(replay_run(a, r).loc))
        timed_words.insert(untime(trace_of(a, r)));

    RegionGraph rg = region_graph(a);
    auto region_words = bounded_language(region_graph_automaton(a, rg), 3);
    if (timed_words != region_words) {
      o.fail("region trial " + std::to_string(trial) + " (" +
             (two_clocks ? "2" : "1") + " clocks): " +
             std::to_string(timed_words.size()) + " grid words vs " +
             std::to_string(region_words.size()) + " region words");
    }
    if (!timed_words.empty()) ++nonempty_regions;
  }
  if (nonempty_products < 20 || nonempty_regions < 20)
    o.fail("vacuous sample: " + std::to_string(nonempty_products) +
           " nonempty product languages, " + std::to_string(nonempty_regions) +
           " nonempty region languages");

  o.note("100 product-language (" + std::to_string(nonempty_products) +
         " nonempty) and 100 region-language (" +
         std::to_string(nonempty_regions) + " nonempty) instances in " +
         fmt(seconds_since(t0)));
  return o;
}

// ---------------------------------------------------------------------------
// 5: the optimal delay of a codiagnosable finite automaton stays within the
// 2 * |L|^n product bound, the probe history is monotone, and the reported
// delay is minimal.
Outcome criterion5() {
  Outcome o;
  auto t0 = std::chrono::steady_clock::now();
  Rng rng(50505);
  int collected = 0, rejected = 0;

  for (int attempt = 0; attempt < 400 && collected < 60 && o.pass; ++attempt) {
    FaOptions opt;
    opt.max_states = 5;
    opt.alphabet = rand_int(rng, 2, 3);
    opt.max_edges = 10;
    Automaton a = random_fa(rng, opt);
    int sites = rand_int(rng, 1, 2);
    ObservationFamily fam = random_family(rng, a, sites);

    if (!check_codiag(a, fam).codiagnosable) {
      ++rejected;
      if (rejected <= 20 && optimal_delay(a, fam).delta.has_value())
        o.fail("non-codiagnosable instance got a finite optimal delay");
      continue;
    }
    ++collected;

    OptimalDelayResult r = optimal_delay(a, fam);
    if (!r.delta) {
      o.fail("codiagnosable instance got no optimal delay");
      break;
    }
    long long bound = 2;
    for (int i = 0; i < sites; ++i)
      bound *= static_cast<long long>(a.locations.size());
    if (*r.delta > bound) {
      o.fail("optimal delay " + std::to_string(*r.delta) +
             " exceeds the bound " + std::to_string(bound));
      break;
    }
    for (auto [d, ok] : r.probes)
      if (ok != (d >= *r.delta)) {
        o.fail("probe history is not monotone at delta " + std::to_string(d));
        break;
      }
    if (!check_delta_codiag(a, *r.delta, fam).codiagnosable)
      o.fail("reported delay is not actually codiagnosable");
    if (*r.delta > 0 &&
        check_delta_codiag(a, *r.delta - 1, fam).codiagnosable)
      o.fail("reported delay is not minimal");
  }
  if (collected < 60)
    o.fail("only " + std::to_string(collected) +
           "/60 codiagnosable instances found");

  o.note(std::to_string(collected) + " codiagnosable + " +
         std::to_string(rejected) + " rejected instances in " +
         fmt(seconds_since(t0)));
  return o;
}

// ---------------------------------------------------------------------------
// 6: synthesized diagnoser tuples comply with their contract on every
// reachable configuration (exhaustive walk) and on every enumerated run
// within the horizon; ambiguity witnesses of rejected instances replay.
Outcome criterion6() {
  Outcome o;
  auto t0 = std::chrono::steady_clock::now();
  Rng rng(60606);
  int collected = 0, witnesses = 0;
  long long aged_runs = 0;

  for (int attempt = 0; attempt < 400 && collected < 40 && o.pass; ++attempt) {
    FaOptions opt;
    opt.max_states = 6;
    opt.alphabet = rand_int(rng, 2, 3);
    opt.max_edges = 11;
    Automaton a = random_fa(rng, opt);
    int sites = rand_int(rng, 1, 2);
    ObservationFamily fam = random_family(rng, a, sites);
    int delta = rand_int(rng, 0, 3);

    DeltaVerdict v = check_delta_codiag(a, delta, fam);
    if (!v.codiagnosable) {
      if (v.witness && verify_ambiguous_tuple(a, delta, fam, *v.witness).ok) {
        ++witnesses;
      } else {
        o.fail("rejected instance lacks a replayable witness");
      }
      continue;
    }
    ++collected;

    std::vector<SiteDiagnoser> ds;
    try {
      ds = synthesize_fa_codiagnosers(a, delta, fam);
    } catch (const NotCodiagnosable& e) {
      o.fail(std::string("synthesis refused a codiagnosable instance: ") +
             e.what());
      break;
    }
    std::string bad = def3_violation_fa(a, delta, fam, ds);
    if (!bad.empty()) {
      o.fail("configuration walk: " + bad);
      break;
    }

    EnumOptions eo;
    eo.max_steps = 6;
    eo.max_runs = 150000;
    std::vector<Run> runs;
    try {
      runs = enumerate_runs(a, eo);
    } catch (const BudgetExceeded&) {
      eo.max_steps = 4;
      runs = enumerate_runs(a, eo);
    }
    for (const Run& r : runs) {
      RunClass c = classify_run(a, r, delta);
      bool announce = evaluate_diagnosers(ds, untime(trace_of(a, r))).back();
      if (c.kind == RunClassKind::NonFaulty && announce) {
        o.fail("a diagnoser announced on a non-faulty run");
        break;
      }
      if (c.kind == RunClassKind::DeltaFaulty) {
        ++aged_runs;
        if (!announce) {
          o.fail("no diagnoser announced on an aged faulty run");
          break;
        }
      }
    }
  }
  if (collected < 40)
    o.fail("only " + std::to_string(collected) +
           "/40 codiagnosable instances found");
  if (o.pass && aged_runs < 5)
    o.fail("vacuous run-level check: only " + std::to_string(aged_runs) +
           " aged faulty runs enumerated");

  o.note(std::to_string(collected) + " tuples verified, " +
         std::to_string(witnesses) + " rejection witnesses replayed in " +
         fmt(seconds_since(t0)));
  return o;
}

// ---------------------------------------------------------------------------
// 7: deterministic timed-automaton synthesis at desk scale. The timed
// showcase model with resource ({a}, {y}, 2, 1) at delay 1 and the timed
// two-site variant at delay 2 must synthesize; tuples are checked against
// run enumeration to depth 6; one-site answers coincide with the raw safety
// game. Budget: 5 minutes.
Outcome criterion7() {
  Outcome o;
  auto t0 = std::chrono::steady_clock::now();

  auto check_tuple = [&](const Automaton& a, int delta,
                         const std::vector<Resource>& res,
                         const std::vector<DtaDiagnoser>& ds,
                         const std::string& label) {
    EnumOptions eo;
    eo.max_steps = 6;
    eo.grid = Rat(1, 2);
    eo.max_runs = 500000;
    int kmax = 0;
    for (int c : max_constants(a)) kmax = std::max(kmax, c);
    Rat tmax = Rat(kmax + delta + 2);
    std::size_t checked = 0, clean = 0, due = 0;
    for (const Run& base : enumerate_runs(a, eo)) {
      State end = replay_run(a, base);
      for (Rat t(0); t <= tmax; t += Rat(1, 2)) {
        if (t > Rat(0)) {
          try {
            delay_successor(a, end, t);
          } catch (const InvariantViolation&) {
            break;  // longer dwells only get worse
          }
        }
        Run r = base;
        r.trailing = t;
        RunClass c = classify_run(a, r, delta);
        TimedWord w = trace_of(a, r);
        bool announce = false;
        for (const auto& d : ds)
          announce = announce ||
                     evaluate_dta(d, project(w, res[d.site].alphabet)).back();
        ++checked;
        if (c.kind == RunClassKind::NonFaulty) {
          ++clean;
          if (announce) {
            o.fail(label + ": announced on a non-faulty run (" +
                   write_trace(w, true) + ")");
            return;
          }
        }
        if (c.kind == RunClassKind::DeltaFaulty) {
          ++due;
          if (!announce) {
            o.fail(label + ": missed the deadline on " + write_trace(w, true));
            return;
          }
        }
      }
      if (!o.pass) return;
    }
    if (clean == 0 || due == 0) {
      o.fail(label + ": vacuous check (" + std::to_string(clean) +
             " non-faulty, " + std::to_string(due) + " aged faulty)");
      return;
    }
    if (!o.detail.empty()) o.detail += "; ";
    o.detail += label + ": " + std::to_string(checked) + " extensions (" +
                std::to_string(due) + " aged)";
  };

  // One-site showcase.
  Fixture f = builtin_fixture("remark");
  Resource res;
  res.alphabet = {"a"};
  res.clocks = {"y"};
  res.max_const = 2;
  res.granularity_den = 1;
  DtaSynthesisResult r1 = codiag_dta_synthesis(f.model, 1, {res});
  if (!r1.success || r1.diagnosers.size() != 1)
    o.fail("one-site synthesis failed: " + r1.note);
  else
    check_tuple(f.model, 1, {res}, r1.diagnosers, "showcase");

  // One-site answers coincide with the raw safety game.
  bool game_wins = solve_safety(build_game(f.model, 1, res, 0)).has_value();
  if (game_wins != r1.success)
    o.fail("safety game and synthesis disagree on the showcase");
  Resource weak = res;
  weak.max_const = 0;
  bool weak_wins = solve_safety(build_game(f.model, 1, weak, 0)).has_value();
  DtaSynthesisResult rweak = codiag_dta_synthesis(f.model, 1, {weak});
  if (weak_wins || rweak.success)
    o.fail("a constant-free clock should lose the showcase game");

  // Two-site timed variant.
  Fixture c = builtin_fixture("conf-ta");
  if (c.resources.size() != 2) {
    o.fail("timed two-site fixture should bundle two resources");
  } else {
    DtaSynthesisResult r2 = codiag_dta_synthesis(c.model, 2, c.resources);
    if (!r2.success)
      o.fail("two-site synthesis failed: " + r2.note);
    else
      check_tuple(c.model, 2, c.resources, r2.diagnosers, "two-site");

    // Restricting to the first resource alone is still a win (one site).
    DtaSynthesisResult rone =
        codiag_dta_synthesis(c.model, 2, {c.resources[0]});
    bool one_wins =
        solve_safety(build_game(c.model, 2, c.resources[0], 0)).has_value();
    if (!one_wins || !rone.success)
      o.fail("first-site game and synthesis should both win");
  }

  double el = seconds_since(t0);
  if (el >= 300.0) o.fail("exceeded the 300s budget (" + fmt(el) + ")");
  if (o.pass) {
    if (!o.detail.empty()) o.detail += "; ";
    o.detail += "games agree, done in " + fmt(el);
  }
  return o;
}

// ---------------------------------------------------------------------------
// 8: the on-the-fly cycle search against an SCC decomposition, on 500 seeded
// explicit graphs of up to a thousand states.
Outcome criterion8() {
  Outcome o;
  auto t0 = std::chrono::steady_clock::now();
  Rng rng(80808);
  int cycles = 0;

  for (int trial = 0; trial < 500 && o.pass; ++trial) {
    int n = rand_int(rng, 1, 1000);
    auto [adj, acc] = random_graph(rng, n);
    ExplicitGraphSpace space(n, 0, adj, acc);
    SearchBudget budget{2000000};
    auto w = buchi_check(space, budget);
    bool oracle = scc_has_accepting_cycle(n, 0, adj, acc);
    if (w.has_value() != oracle) {
      o.fail("trial " + std::to_string(trial) + ": search says " +
             (w ? "cycle" : "no cycle") + ", SCC oracle disagrees");
      break;
    }
    if (w) {
      ++cycles;
      if (!witness_on_graph_ok(adj, acc, 0, *w, true)) {
        o.fail("trial " + std::to_string(trial) +
               ": lasso witness does not replay");
        break;
      }
    }
  }
  if (cycles < 50 || cycles > 450)
    o.fail("degenerate sample: " + std::to_string(cycles) +
           "/500 graphs had accepting cycles");

  o.note("500 graphs, " + std::to_string(cycles) + " lassos replayed in " +
         fmt(seconds_since(t0)));
  return o;
}

}  // namespace

int main(int argc, char** argv) {
  std::vector<Outcome (*)()> criteria{criterion1, criterion2, criterion3,
                                      criterion4, criterion5, criterion6,
                                      criterion7, criterion8};
  int lo = 1, hi = 8;
  if (argc == 2 && std::string(argv[1]) != "all") {
    int n = std::atoi(argv[1]);
    if (n < 1 || n > 8) {
      std::cerr << "usage: " << argv[0] << " [1-8|all]\n";
      return 2;
    }
    lo = hi = n;
  }
  bool all_pass = true;
  for (int i = lo; i <= hi; ++i) {
    Outcome o;
    try {
      o = criteria[i - 1]();
    } catch (const std::exception& e) {
      o.pass = false;
      o.detail = std::string("unhandled exception: ") + e.what();
    }
    std::cout << "criterion " << i << ": " << (o.pass ? "PASS" : "FAIL");
    if (!o.detail.empty()) std::cout << " - " << o.detail;
    std::cout << "\n";
    all_pass = all_pass && o.pass;
  }
  return all_pass ? 0 : 1;
}
