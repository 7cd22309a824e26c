#include "codiag/dta_game.hpp"

#include <algorithm>
#include <deque>
#include <map>
#include <numeric>
#include <set>

#include "codiag/compose.hpp"
#include "codiag/emptiness.hpp"
#include "codiag/errors.hpp"
#include "codiag/regions.hpp"
#include "codiag/spaces.hpp"

namespace codiag {
namespace {

/// Minimal guards over one clock with constants 0..K: the points [k,k], the
/// open strips (k,k+1) and the unbounded tail (K,inf). Any rectangular guard
/// is a union of these, so offering exactly these loses no strategy.
std::vector<ClockConstraint> minimal_guards(long long K, bool has_clock) {
  std::vector<ClockConstraint> gs;
  if (!has_clock) {
    gs.emplace_back();
    return gs;
  }
  for (long long k = 0; k <= K; ++k) {
    ClockConstraint eq;
    eq.atoms.push_back(ClockAtom{0, Cmp::EQ, static_cast<int>(k)});
    gs.push_back(eq);
    if (k < K) {
      ClockConstraint open;
      open.atoms.push_back(ClockAtom{0, Cmp::GT, static_cast<int>(k)});
      open.atoms.push_back(ClockAtom{0, Cmp::LT, static_cast<int>(k + 1)});
      gs.push_back(open);
    }
  }
  ClockConstraint top;
  top.atoms.push_back(ClockAtom{0, Cmp::GT, static_cast<int>(K)});
  gs.push_back(top);
  return gs;
}

long long scaled_max_const(const Resource& res) {
  long long K = static_cast<long long>(res.max_const) * res.granularity_den;
  if (K > 1000000)
    throw ResourceTooLarge("resource guard range exceeds 1e6 grid points");
  return K;
}

}  // namespace

Automaton three_copy(const Automaton& a, int delta) {
  if (a.kind != Kind::TA)
    throw ValidationError("the three-copy construction needs a timed automaton");
  if (delta < 0) throw ValidationError("negative delay");
  const int n = static_cast<int>(a.locations.size());
  Automaton m;
  m.kind = Kind::TA;
  m.name = a.name + "_3copy";
  m.alphabet = a.alphabet;
  m.clocks = a.clocks;
  std::string zname = "z";
  while (std::find(m.clocks.begin(), m.clocks.end(), zname) != m.clocks.end())
    zname += "_";
  m.clocks.push_back(zname);
  ClockId zc = static_cast<ClockId>(m.clocks.size()) - 1;
  m.initial = a.initial;
  for (int copy = 0; copy < 3; ++copy)
    for (int l = 0; l < n; ++l) {
      m.locations.push_back(a.locations[l] + "@" + std::to_string(copy + 1));
      ClockConstraint inv = a.invariants[l];
      if (copy == 1) inv.atoms.push_back(ClockAtom{zc, Cmp::LE, delta});
      m.invariants.push_back(inv);
    }
  for (int i = 0; i < static_cast<int>(a.transitions.size()); ++i) {
    const auto& tr = a.transitions[i];
    if (is_fault(tr.action)) {
      Transition sw = tr;
      sw.action = kTau;
      sw.to = tr.to + n;
      sw.resets.push_back(zc);
      std::sort(sw.resets.begin(), sw.resets.end());
      sw.tag = TransTag::kFaultSwitch;
      sw.origin = i;
      m.transitions.push_back(sw);
      for (int copy = 1; copy < 3; ++copy) {
        Transition later = tr;
        later.action = kTau;
        later.from = tr.from + copy * n;
        later.to = tr.to + copy * n;
        later.tag = TransTag::kFaultSwitch;
        later.origin = i;
        m.transitions.push_back(later);
      }
    } else {
      for (int copy = 0; copy < 3; ++copy) {
        Transition t = tr;
        t.from = tr.from + copy * n;
        t.to = tr.to + copy * n;
        t.tag = TransTag::kPlain;
        t.origin = i;
        m.transitions.push_back(t);
      }
    }
  }
  for (int l = 0; l < n; ++l) {
    Transition sw;
    sw.from = n + l;
    sw.to = 2 * n + l;
    sw.action = kTau;
    sw.guard.atoms.push_back(ClockAtom{zc, Cmp::EQ, delta});
    sw.tag = TransTag::kCopySwitch;
    m.transitions.push_back(sw);
  }
  return m;
}

Automaton universal_automaton(const Resource& res, int site) {
  if (res.clocks.size() > 1)
    throw ResourceTooLarge(
        "rectangular guards describe at most one diagnoser clock");
  if (res.alphabet.empty())
    throw ValidationError("diagnoser resource has an empty alphabet");
  Automaton u;
  u.kind = Kind::TA;
  u.name = "universal" + std::to_string(site);
  u.alphabet = res.alphabet;
  bool has_clock = !res.clocks.empty();
  if (has_clock) u.clocks = {res.clocks[0]};
  u.locations = {"U"};
  u.invariants.emplace_back();
  u.initial = 0;
  auto guards = minimal_guards(has_clock ? scaled_max_const(res) : 0,
                               has_clock);
  for (ActionId act = 0; act < static_cast<ActionId>(res.alphabet.size());
       ++act)
    for (const auto& g : guards) {
      Transition t;
      t.from = 0;
      t.to = 0;
      t.action = act;
      t.guard = g;
      t.tag = TransTag::kSynthetic;
      u.transitions.push_back(t);
      if (has_clock) {
        Transition r = t;
        r.resets = {0};
        u.transitions.push_back(r);
      }
    }
  return u;
}

DtaGame build_game(const Automaton& a, int delta, const Resource& res,
                   int site, std::size_t max_nodes) {
  for (const auto& s : res.alphabet)
    if (std::find(a.alphabet.begin(), a.alphabet.end(), s) == a.alphabet.end())
      throw ValidationError("resource letter '" + s +
                            "' is not in the plant alphabet");
  const long long m = res.granularity_den;
  const bool has_clock = !res.clocks.empty();
  Automaton plant = scale_constants(three_copy(a, delta), m);
  Automaton u = universal_automaton(res, site);
  ProductResult P = product({&plant, &u}, max_nodes);
  RegionGraph rg = region_graph(P.a, max_nodes);

  DtaGame g;
  g.guards = minimal_guards(has_clock ? scaled_max_const(res) : 0, has_clock);
  g.letters = res.alphabet;
  g.scale = m;

  // Per-node facts: which copy of the plant, and whether strictly past the
  // deadline (the z clock beyond delta*m).
  const int nloc = static_cast<int>(a.locations.size());
  const ClockId zc =
      P.clock_offset[0] + static_cast<ClockId>(a.clocks.size());
  const int deltam = static_cast<int>(delta * m);
  std::vector<int> node_copy(rg.nodes.size());
  std::vector<char> node_strict3(rg.nodes.size());
  for (std::size_t i = 0; i < rg.nodes.size(); ++i) {
    LocId ploc = P.states[rg.nodes[i].loc][0];
    node_copy[i] = ploc / nloc;
    node_strict3[i] =
        node_copy[i] == 2 &&
        region_satisfies(rg.nodes[i].region, ClockAtom{zc, Cmp::GT, deltam});
  }

  // Symbol of each region edge: -1 for invisible (delays, plant-only moves),
  // else (guard, letter, reset) encoded densely.
  const int nletters = static_cast<int>(res.alphabet.size());
  const int nguards = static_cast<int>(g.guards.size());
  auto encode = [&](int gi, int letter, int r) {
    return (gi * nletters + letter) * 2 + r;
  };
  // Map a universal-automaton transition to its (guard, reset); the letter is
  // its action. Guard identity is positional in `g.guards`.
  std::vector<std::pair<int, int>> u_meta(u.transitions.size());
  for (std::size_t t = 0; t < u.transitions.size(); ++t) {
    const auto& tr = u.transitions[t];
    int gi = -1;
    for (int j = 0; j < nguards; ++j)
      if (g.guards[j] == tr.guard) {
        gi = j;
        break;
      }
    u_meta[t] = {gi, tr.resets.empty() ? 0 : 1};
  }
  std::vector<int> edge_symbol(rg.edges.size(), -1);
  for (std::size_t e = 0; e < rg.edges.size(); ++e) {
    if (rg.edges[e].delay) continue;
    for (auto [k, t] : P.moves[rg.edges[e].trans])
      if (k == 1) {
        int letter = u.transitions[t].action;
        edge_symbol[e] =
            encode(u_meta[t].first, letter, u_meta[t].second);
      }
  }

  auto closure = [&](std::vector<int> seed) {
    std::set<int> seen(seed.begin(), seed.end());
    std::deque<int> queue(seed.begin(), seed.end());
    while (!queue.empty()) {
      int s = queue.front();
      queue.pop_front();
      for (int e : rg.out[s])
        if (edge_symbol[e] == -1 && seen.insert(rg.edges[e].to).second)
          queue.push_back(rg.edges[e].to);
    }
    return std::vector<int>(seen.begin(), seen.end());
  };

  std::map<std::vector<int>, int> index;
  auto intern = [&](std::vector<int> subset) {
    auto it = index.find(subset);
    if (it != index.end()) return it->second;
    if (g.p1.size() >= max_nodes)
      throw StateBudgetExceeded("game exceeded " + std::to_string(max_nodes) +
                                " positions");
    int id = static_cast<int>(g.p1.size());
    index.emplace(subset, id);
    DtaGame::P1Node node;
    bool any1 = false;
    bool strict3 = false;
    for (int s : subset) {
      any1 = any1 || node_copy[s] == 0;
      strict3 = strict3 || node_strict3[s];
    }
    node.bad = any1 && strict3;
    node.all_faulty = !subset.empty() && !any1;
    node.members = std::move(subset);
    g.p1.push_back(std::move(node));
    return id;
  };

  g.initial = intern(closure({rg.initial}));
  for (int head = 0; head < static_cast<int>(g.p1.size()); ++head) {
    std::vector<int> members = g.p1[head].members;  // copy: p1 grows
    for (int gi = 0; gi < nguards; ++gi)
      for (int letter = 0; letter < nletters; ++letter) {
        std::vector<std::vector<int>> moved(2);
        for (int s : members)
          for (int e : rg.out[s]) {
            if (edge_symbol[e] == encode(gi, letter, 0))
              moved[0].push_back(rg.edges[e].to);
            else if (edge_symbol[e] == encode(gi, letter, 1))
              moved[1].push_back(rg.edges[e].to);
          }
        DtaGame::P0Node p0;
        p0.from = head;
        p0.guard = gi;
        p0.action = letter;
        for (int r = 0; r < (has_clock ? 2 : 1); ++r) {
          if (moved[r].empty()) continue;
          std::sort(moved[r].begin(), moved[r].end());
          moved[r].erase(std::unique(moved[r].begin(), moved[r].end()),
                         moved[r].end());
          DtaGame::Choice c;
          c.reset = r == 1;
          c.target = intern(closure(moved[r]));
          p0.choices.push_back(c);
        }
        if (p0.choices.empty()) continue;
        int p0id = static_cast<int>(g.p0.size());
        g.p0.push_back(std::move(p0));
        g.p1[head].moves.push_back(p0id);
      }
  }
  return g;
}

namespace {

/// Backward attractor of the bad positions for the environment.
void losing_sets(const DtaGame& g, std::vector<char>& lose1,
                 std::vector<char>& lose0) {
  lose1.assign(g.p1.size(), 0);
  lose0.assign(g.p0.size(), 0);
  for (std::size_t i = 0; i < g.p1.size(); ++i) lose1[i] = g.p1[i].bad;
  bool changed = true;
  while (changed) {
    changed = false;
    for (std::size_t i = 0; i < g.p0.size(); ++i) {
      if (lose0[i]) continue;
      bool all = true;
      for (const auto& c : g.p0[i].choices) all = all && lose1[c.target];
      if (all) {
        lose0[i] = 1;
        changed = true;
      }
    }
    for (std::size_t j = 0; j < g.p1.size(); ++j) {
      if (lose1[j]) continue;
      for (int p0id : g.p1[j].moves)
        if (lose0[p0id]) {
          lose1[j] = 1;
          changed = true;
          break;
        }
    }
  }
}

}  // namespace

std::optional<std::vector<int>> solve_safety(const DtaGame& g) {
  std::vector<char> lose1, lose0;
  losing_sets(g, lose1, lose0);
  if (lose1[g.initial]) return std::nullopt;
  std::vector<int> strat(g.p0.size(), 0);
  for (std::size_t i = 0; i < g.p0.size(); ++i)
    for (std::size_t c = 0; c < g.p0[i].choices.size(); ++c)
      if (!lose1[g.p0[i].choices[c].target]) {
        strat[i] = static_cast<int>(c);
        break;
      }
  return strat;
}

DtaDiagnoser strategy_to_dta(const DtaGame& g, const std::vector<int>& strategy,
                             const Resource& res, int site) {
  DtaDiagnoser d;
  d.site = site;
  d.granularity_den = res.granularity_den;
  Automaton& dta = d.dta;
  dta.kind = Kind::TA;
  dta.name = "dta_diag" + std::to_string(site);
  dta.alphabet = res.alphabet;
  if (!res.clocks.empty()) dta.clocks = {res.clocks[0]};

  std::map<int, LocId> locs;  // p1 id -> dta location
  std::deque<int> queue;
  auto intern = [&](int p1) {
    auto it = locs.find(p1);
    if (it != locs.end()) return it->second;
    LocId id = static_cast<LocId>(dta.locations.size());
    dta.locations.push_back("q" + std::to_string(id));
    locs.emplace(p1, id);
    queue.push_back(p1);
    return id;
  };
  dta.initial = intern(g.initial);
  std::vector<std::pair<int, LocId>> order;
  while (!queue.empty()) {
    int p1 = queue.front();
    queue.pop_front();
    order.emplace_back(p1, locs[p1]);
    for (int p0id : g.p1[p1].moves) {
      const auto& p0 = g.p0[p0id];
      const auto& choice = p0.choices[strategy[p0id]];
      intern(choice.target);
    }
  }
  LocId sink = static_cast<LocId>(dta.locations.size());
  dta.locations.push_back("sink");
  for (auto [p1, from] : order) {
    std::set<std::pair<int, int>> covered;  // (guard, letter)
    for (int p0id : g.p1[p1].moves) {
      const auto& p0 = g.p0[p0id];
      const auto& choice = p0.choices[strategy[p0id]];
      Transition t;
      t.from = from;
      t.guard = g.guards[p0.guard];
      t.action = p0.action;
      if (choice.reset) t.resets = {0};
      t.to = locs[choice.target];
      t.tag = TransTag::kSynthetic;
      dta.transitions.push_back(t);
      covered.emplace(p0.guard, p0.action);
    }
    // Complete the machine: unmatched observations park in the sink.
    for (int gi = 0; gi < static_cast<int>(g.guards.size()); ++gi)
      for (int letter = 0; letter < static_cast<int>(g.letters.size());
           ++letter)
        if (!covered.count({gi, letter})) {
          Transition t;
          t.from = from;
          t.guard = g.guards[gi];
          t.action = letter;
          t.to = sink;
          t.tag = TransTag::kSynthetic;
          dta.transitions.push_back(t);
        }
  }
  for (int letter = 0; letter < static_cast<int>(g.letters.size()); ++letter) {
    Transition t;
    t.from = sink;
    t.to = sink;
    t.action = letter;
    t.tag = TransTag::kSynthetic;
    dta.transitions.push_back(t);
  }
  dta.invariants.assign(dta.locations.size(), ClockConstraint{});
  for (auto [p1, from] : order)
    if (g.p1[p1].all_faulty) dta.finals.push_back(from);
  std::sort(dta.finals.begin(), dta.finals.end());
  return d;
}

std::vector<bool> evaluate_dta(const DtaDiagnoser& d, const TimedWord& w) {
  const bool has_clock = !d.dta.clocks.empty();
  ClockValuation v(has_clock ? 1 : 0, Rat(0));
  LocId cur = d.dta.initial;
  bool latch = d.dta.is_final(cur);
  bool dead = false;
  std::vector<bool> out{latch};
  auto idx = outgoing_index(d.dta);
  for (std::size_t i = 0; i < w.letters.size(); ++i) {
    if (has_clock) v[0] += w.gaps[i] * Rat(d.granularity_den);
    ActionId act = d.dta.action_of(w.letters[i]);
    if (act < 0)
      throw ValidationError("letter '" + w.letters[i] +
                            "' is outside the diagnoser alphabet");
    if (!dead) {
      bool moved = false;
      for (int t : idx[cur]) {
        const auto& tr = d.dta.transitions[t];
        if (tr.action != act || !constraint_satisfied(tr.guard, v)) continue;
        cur = tr.to;
        if (!tr.resets.empty()) v[0] = Rat(0);
        moved = true;
        break;
      }
      if (!moved) dead = true;
      latch = latch || d.dta.is_final(cur);
    }
    out.push_back(latch);
  }
  return out;
}

bool diagnosers_cover_deadlines(const Automaton& a, int delta,
                                const std::vector<DtaDiagnoser>& ds,
                                std::size_t max_nodes) {
  long long scale = 1;
  for (const auto& d : ds) scale = std::lcm(scale, d.granularity_den);
  Automaton monitor = scale_constants(fault_monitor(a, delta), scale);
  std::vector<Automaton> scaled;
  for (const auto& d : ds)
    scaled.push_back(scale_constants(d.dta, scale / d.granularity_den));
  std::vector<const Automaton*> comps{&monitor};
  for (const auto& s : scaled) comps.push_back(&s);
  ProductResult P = product(comps, max_nodes);
  LocId bad = monitor_bad(monitor);
  RegionSpace sp(
      P.a,
      [&](LocId l) {
        if (P.states[l][0] != bad) return false;
        for (std::size_t k = 0; k < ds.size(); ++k)
          if (scaled[k].is_final(P.states[l][k + 1])) return false;
        return true;
      },
      max_nodes);
  SearchBudget budget;
  budget.max_states = max_nodes;
  return !reach_check(sp, budget).has_value();
}

DtaSynthesisResult codiag_dta_synthesis(const Automaton& a, int delta,
                                        const std::vector<Resource>& res,
                                        std::size_t max_nodes) {
  DtaSynthesisResult result;
  std::vector<DtaGame> games;
  std::vector<std::vector<int>> strategies;
  std::vector<int> winners;
  for (std::size_t i = 0; i < res.size(); ++i) {
    DtaGame g = build_game(a, delta, res[i], static_cast<int>(i), max_nodes);
    auto s = solve_safety(g);
    if (s) {
      winners.push_back(static_cast<int>(i));
      games.push_back(std::move(g));
      strategies.push_back(std::move(*s));
    }
  }
  result.winning_sites = winners;
  if (winners.empty()) {
    result.note = "no site can stay safe within its resource";
    return result;
  }
  // One safe site usually suffices: its subsets announce whenever every
  // explanation is past-fault, and safety promises that happens by each
  // strict deadline.
  for (std::size_t j = 0; j < winners.size(); ++j) {
    DtaDiagnoser d =
        strategy_to_dta(games[j], strategies[j], res[winners[j]], winners[j]);
    if (diagnosers_cover_deadlines(a, delta, {d}, max_nodes)) {
      result.success = true;
      result.diagnosers = {std::move(d)};
      result.note = "site " + std::to_string(winners[j]) + " alone";
      return result;
    }
  }
  std::vector<DtaDiagnoser> all;
  for (std::size_t j = 0; j < winners.size(); ++j)
    all.push_back(
        strategy_to_dta(games[j], strategies[j], res[winners[j]], winners[j]));
  if (diagnosers_cover_deadlines(a, delta, all, max_nodes)) {
    result.success = true;
    result.diagnosers = std::move(all);
    result.note = "all safe sites together";
    return result;
  }
  // Sweep alternative positional strategies (lowest-index default above):
  // every per-position safe choice combination, within a global cap.
  long long combos = 1;
  std::vector<std::vector<std::vector<int>>> options(winners.size());
  for (std::size_t j = 0; j < winners.size(); ++j) {
    std::vector<char> lose1, lose0;
    losing_sets(games[j], lose1, lose0);
    options[j].resize(games[j].p0.size());
    for (std::size_t i = 0; i < games[j].p0.size(); ++i) {
      const auto& cs = games[j].p0[i].choices;
      for (std::size_t c = 0; c < cs.size(); ++c)
        if (!lose1[cs[c].target]) options[j][i].push_back(static_cast<int>(c));
      if (options[j][i].empty()) options[j][i].push_back(0);
      combos *= static_cast<long long>(options[j][i].size());
      if (combos > 10000) {
        result.note =
            "no single safe site or default tuple meets every deadline and "
            "the strategy sweep exceeds 10000 combinations";
        return result;
      }
    }
  }
  std::vector<std::size_t> pick;
  std::vector<std::pair<std::size_t, std::size_t>> slots;
  for (std::size_t j = 0; j < options.size(); ++j)
    for (std::size_t i = 0; i < options[j].size(); ++i)
      if (options[j][i].size() > 1) slots.emplace_back(j, i);
  pick.assign(slots.size(), 0);
  while (true) {
    std::vector<std::vector<int>> strats = strategies;
    for (std::size_t s = 0; s < slots.size(); ++s) {
      auto [j, i] = slots[s];
      strats[j][i] = options[j][i][pick[s]];
    }
    std::vector<DtaDiagnoser> tuple;
    for (std::size_t j = 0; j < winners.size(); ++j)
      tuple.push_back(
          strategy_to_dta(games[j], strats[j], res[winners[j]], winners[j]));
    if (diagnosers_cover_deadlines(a, delta, tuple, max_nodes)) {
      result.success = true;
      result.diagnosers = std::move(tuple);
      result.note = "safe-strategy sweep";
      return result;
    }
    std::size_t s = 0;
    while (s < pick.size() && ++pick[s] == options[slots[s].first]
                                              [slots[s].second].size())
      pick[s++] = 0;
    if (s == pick.size()) break;
  }
  result.note =
      "no positional safe-strategy tuple within the given resources meets "
      "every deadline";
  return result;
}

}  // namespace codiag
