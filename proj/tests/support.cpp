#include "support.hpp"

#include <algorithm>
#include <cstddef>
#include <deque>
#include <map>
#include <queue>

namespace codiag::testing {

namespace {

int pick(Rng& rng, int lo, int hi) {  // inclusive
  return std::uniform_int_distribution<int>(lo, hi)(rng);
}

bool chance(Rng& rng, double p) {
  return std::uniform_real_distribution<double>(0.0, 1.0)(rng) < p;
}

const char* kLetterNames[] = {"a", "b", "c", "d", "e"};
const char* kClockNames[] = {"x", "y"};

}  // namespace

int rand_int(Rng& rng, int lo, int hi) { return pick(rng, lo, hi); }

std::pair<std::vector<std::vector<int>>, std::vector<bool>> random_graph(
    Rng& rng, int n, double avg_degree, double accept_prob) {
  std::vector<std::vector<int>> adj(n);
  std::vector<bool> acc(n, false);
  int edges = static_cast<int>(avg_degree * n);
  for (int e = 0; e < edges; ++e)
    adj[pick(rng, 0, n - 1)].push_back(pick(rng, 0, n - 1));
  for (int i = 0; i < n; ++i) acc[i] = chance(rng, accept_prob);
  return {adj, acc};
}

Automaton random_fa(Rng& rng, const FaOptions& opt) {
  Automaton a;
  a.kind = Kind::FA;
  a.name = "random_fa";
  int m = pick(rng, 2, std::max(2, opt.max_states));
  for (int i = 0; i < m; ++i) a.locations.push_back("L" + std::to_string(i));
  for (int i = 0; i < opt.alphabet; ++i) a.alphabet.push_back(kLetterNames[i]);
  a.invariants.assign(a.locations.size(), ClockConstraint{});

  int edges = pick(rng, m, std::max(m, opt.max_edges));
  bool has_fault = false;
  for (int e = 0; e < edges; ++e) {
    Transition t;
    t.from = pick(rng, 0, m - 1);
    t.to = pick(rng, 0, m - 1);
    if (opt.with_fault && chance(rng, 0.15)) {
      t.action = kFault;
      has_fault = true;
    } else if (opt.with_tau && chance(rng, 0.2)) {
      t.action = kTau;
    } else {
      t.action = pick(rng, 0, opt.alphabet - 1);
    }
    a.transitions.push_back(t);
  }
  if (opt.with_fault && !has_fault) {
    Transition t;
    t.from = pick(rng, 0, m - 1);
    t.to = pick(rng, 0, m - 1);
    t.action = kFault;
    a.transitions.push_back(t);
  }
  if (opt.with_finals) {
    for (int i = 0; i < m; ++i)
      if (chance(rng, 0.3)) a.finals.push_back(i);
    if (a.finals.empty()) a.finals.push_back(pick(rng, 0, m - 1));
  }
  if (opt.progress_loops) a = add_tau_loops(a);
  return a;
}

Automaton random_ta(Rng& rng, const TaOptions& opt) {
  Automaton a;
  a.kind = Kind::TA;
  a.name = "random_ta";
  int m = pick(rng, 2, std::max(2, opt.max_states));
  for (int i = 0; i < m; ++i) a.locations.push_back("L" + std::to_string(i));
  for (int i = 0; i < opt.alphabet; ++i) a.alphabet.push_back(kLetterNames[i]);
  for (int i = 0; i < opt.clocks; ++i) a.clocks.push_back(kClockNames[i]);
  a.invariants.assign(a.locations.size(), ClockConstraint{});

  if (opt.with_invariants) {
    for (int i = 0; i < m; ++i) {
      if (!chance(rng, 0.4)) continue;
      ClockAtom at;
      at.clock = pick(rng, 0, opt.clocks - 1);
      if (opt.max_const >= 1 && chance(rng, 0.5)) {
        at.cmp = Cmp::LT;
        at.bound = pick(rng, 1, opt.max_const);
      } else {
        at.cmp = Cmp::LE;
        at.bound = pick(rng, 0, opt.max_const);
      }
      a.invariants[i].atoms.push_back(at);
    }
  }

  int edges = pick(rng, m, std::max(m, opt.max_edges));
  bool has_fault = false;
  for (int e = 0; e < edges; ++e) {
    Transition t;
    t.from = pick(rng, 0, m - 1);
    t.to = pick(rng, 0, m - 1);
    if (opt.with_fault && chance(rng, 0.2)) {
      t.action = kFault;
      has_fault = true;
    } else if (opt.with_tau && chance(rng, 0.2)) {
      t.action = kTau;
    } else {
      t.action = pick(rng, 0, opt.alphabet - 1);
    }
    int atoms = chance(rng, 0.6) ? 1 : (chance(rng, 0.5) ? 0 : 2);
    for (int g = 0; g < atoms; ++g) {
      ClockAtom at;
      at.clock = pick(rng, 0, opt.clocks - 1);
      at.cmp = static_cast<Cmp>(pick(rng, 0, 4));
      at.bound = pick(rng, 0, opt.max_const);
      t.guard.atoms.push_back(at);
    }
    for (int c = 0; c < opt.clocks; ++c)
      if (chance(rng, 0.35)) t.resets.push_back(c);
    a.transitions.push_back(t);
  }
  if (opt.with_fault && !has_fault) {
    Transition t;
    t.from = pick(rng, 0, m - 1);
    t.to = pick(rng, 0, m - 1);
    t.action = kFault;
    a.transitions.push_back(t);
  }
  if (opt.with_finals) {
    for (int i = 0; i < m; ++i)
      if (chance(rng, 0.35)) a.finals.push_back(i);
    if (a.finals.empty()) a.finals.push_back(pick(rng, 0, m - 1));
  }
  if (opt.progress_loops) a = add_tau_loops(a);
  return a;
}

Automaton random_dfa(Rng& rng, int max_states, int letters) {
  Automaton a;
  a.kind = Kind::FA;
  a.name = "random_dfa";
  int m = pick(rng, 1, std::max(1, max_states));
  for (int i = 0; i < m; ++i) a.locations.push_back("S" + std::to_string(i));
  for (int i = 0; i < letters; ++i) a.alphabet.push_back(kLetterNames[i]);
  a.invariants.assign(a.locations.size(), ClockConstraint{});
  for (int s = 0; s < m; ++s) {
    for (int l = 0; l < letters; ++l) {
      if (!chance(rng, 0.8)) continue;
      Transition t;
      t.from = s;
      t.action = l;
      t.to = pick(rng, 0, m - 1);
      a.transitions.push_back(t);
    }
  }
  for (int i = 0; i < m; ++i)
    if (chance(rng, 0.35)) a.finals.push_back(i);
  return a;
}

ObservationFamily random_family(Rng& rng, const Automaton& a, int sites) {
  ObservationFamily fam;
  int k = static_cast<int>(a.alphabet.size());
  for (int s = 0; s < sites; ++s) {
    std::vector<ActionId> site;
    for (int l = 0; l < k; ++l)
      if (chance(rng, 0.55)) site.push_back(l);
    if (site.empty()) site.push_back(pick(rng, 0, k - 1));
    fam.sites.push_back(site);
  }
  return fam;
}

std::vector<std::vector<std::string>> family_names(const Automaton& a,
                                                   const ObservationFamily& f) {
  std::vector<std::vector<std::string>> out;
  for (const auto& site : f.sites) {
    std::vector<std::string> names;
    for (ActionId id : site) names.push_back(a.alphabet[id]);
    out.push_back(names);
  }
  return out;
}

namespace {

/// Set of locations closed under moves invisible to a site, never following
/// fault edges (explanation sets track non-faulty behaviours only).
class SiteStepper {
 public:
  SiteStepper(const Automaton& a, const std::vector<ActionId>& site)
      : a_(a), out_(outgoing_index(a)) {
    for (ActionId id : site) observed_.insert(id);
  }

  std::vector<int> closure(std::vector<int> locs) const {
    std::vector<char> in(a_.locations.size(), 0);
    std::deque<int> work(locs.begin(), locs.end());
    for (int l : locs) in[l] = 1;
    while (!work.empty()) {
      int l = work.front();
      work.pop_front();
      for (int ti : out_[l]) {
        const Transition& t = a_.transitions[ti];
        if (is_fault(t.action)) continue;
        bool invisible = t.action == kTau ||
                         (is_observable(t.action) && !observed_.count(t.action));
        if (!invisible || in[t.to]) continue;
        in[t.to] = 1;
        work.push_back(t.to);
      }
    }
    std::vector<int> res;
    for (std::size_t i = 0; i < in.size(); ++i)
      if (in[i]) res.push_back(static_cast<int>(i));
    return res;
  }

  std::vector<int> observe(const std::vector<int>& locs, ActionId act) const {
    std::vector<char> in(a_.locations.size(), 0);
    for (int l : locs)
      for (int ti : out_[l]) {
        const Transition& t = a_.transitions[ti];
        if (t.action == act) in[t.to] = 1;
      }
    std::vector<int> res;
    for (std::size_t i = 0; i < in.size(); ++i)
      if (in[i]) res.push_back(static_cast<int>(i));
    return closure(res);
  }

  bool sees(ActionId act) const { return observed_.count(act) != 0; }

 private:
  const Automaton& a_;
  std::vector<std::vector<int>> out_;
  std::set<ActionId> observed_;
};

}  // namespace

bool oracle_delta_codiag_fa(const Automaton& a, int delta,
                            const ObservationFamily& fam) {
  std::vector<SiteStepper> steppers;
  for (const auto& site : fam.sites) steppers.emplace_back(a, site);
  auto out = outgoing_index(a);

  // Config: [loc, faulty, age] ++ concatenated per-site explanation sets
  // (separator -1 between sites).
  struct Config {
    int loc;
    int faulty;
    int age;
    std::vector<std::vector<int>> sets;
  };
  auto key_of = [](const Config& c) {
    std::vector<int> k{c.loc, c.faulty, c.age};
    for (const auto& s : c.sets) {
      k.push_back(-1);
      k.insert(k.end(), s.begin(), s.end());
    }
    return k;
  };

  Config init;
  init.loc = a.initial;
  init.faulty = 0;
  init.age = 0;
  for (const auto& st : steppers)
    init.sets.push_back(st.closure({a.initial}));

  std::set<std::vector<int>> seen{key_of(init)};
  std::deque<Config> work{init};
  while (!work.empty()) {
    Config c = work.front();
    work.pop_front();
    if (c.faulty && c.age >= delta) {
      bool all = true;
      for (const auto& s : c.sets)
        if (s.empty()) all = false;
      if (all) return false;  // ambiguous delta-faulty configuration
    }
    for (int ti : out[c.loc]) {
      const Transition& t = a.transitions[ti];
      Config n;
      n.loc = t.to;
      n.faulty = c.faulty || is_fault(t.action);
      n.age = c.faulty ? std::min(delta, c.age + 1) : 0;
      for (std::size_t i = 0; i < steppers.size(); ++i) {
        if (is_observable(t.action) && steppers[i].sees(t.action))
          n.sets.push_back(steppers[i].observe(c.sets[i], t.action));
        else
          n.sets.push_back(c.sets[i]);
      }
      auto k = key_of(n);
      if (seen.insert(k).second) work.push_back(n);
    }
  }
  return true;
}

std::string def3_violation_fa(const Automaton& a, int delta,
                              const ObservationFamily& fam,
                              const std::vector<SiteDiagnoser>& ds,
                              std::size_t max_configs) {
  auto out = outgoing_index(a);
  // Per diagnoser: (loc, action-in-dfa) -> successor, plus the map from the
  // plant's ActionId to the diagnoser's own alphabet.
  struct Dn {
    const SiteDiagnoser* d;
    std::map<std::pair<int, int>, int> step;
    std::map<ActionId, int> plant_to_dfa;
  };
  std::vector<Dn> dns;
  for (const auto& d : ds) {
    Dn dn;
    dn.d = &d;
    for (const auto& t : d.dfa.transitions)
      dn.step[{t.from, t.action}] = t.to;
    for (ActionId id : fam.sites[d.site]) {
      int own = d.dfa.action_of(a.alphabet[id]);
      dn.plant_to_dfa[id] = own;
    }
    dns.push_back(std::move(dn));
  }

  struct Config {
    int loc;
    int faulty;
    int age;
    std::vector<int> dlocs;
    std::vector<int> latch;
  };
  auto key_of = [](const Config& c) {
    std::vector<int> k{c.loc, c.faulty, c.age};
    k.insert(k.end(), c.dlocs.begin(), c.dlocs.end());
    k.insert(k.end(), c.latch.begin(), c.latch.end());
    return k;
  };
  auto check = [&](const Config& c) -> std::string {
    bool any = false;
    for (int l : c.latch) any = any || l;
    if (!c.faulty && any)
      return "a site announces on a non-faulty run (plant " +
             a.locations[c.loc] + ")";
    if (c.faulty && c.age >= delta && !any)
      return "no site announces on a run with fault age >= " +
             std::to_string(delta) + " (plant " + a.locations[c.loc] + ")";
    return "";
  };

  Config init;
  init.loc = a.initial;
  init.faulty = 0;
  init.age = 0;
  for (const auto& dn : dns) {
    init.dlocs.push_back(dn.d->dfa.initial);
    init.latch.push_back(dn.d->dfa.is_final(dn.d->dfa.initial) ? 1 : 0);
  }
  if (auto v = check(init); !v.empty()) return v;

  std::set<std::vector<int>> seen{key_of(init)};
  std::deque<Config> work{init};
  while (!work.empty()) {
    Config c = work.front();
    work.pop_front();
    for (int ti : out[c.loc]) {
      const Transition& t = a.transitions[ti];
      Config n;
      n.loc = t.to;
      n.faulty = c.faulty || is_fault(t.action);
      n.age = c.faulty ? std::min(delta, c.age + 1) : 0;
      n.dlocs = c.dlocs;
      n.latch = c.latch;
      if (is_observable(t.action)) {
        for (std::size_t i = 0; i < dns.size(); ++i) {
          auto it = dns[i].plant_to_dfa.find(t.action);
          if (it == dns[i].plant_to_dfa.end()) continue;  // site is blind
          auto st = dns[i].step.find({c.dlocs[i], it->second});
          if (st == dns[i].step.end())
            return "diagnoser " + std::to_string(i) +
                   " is not complete on letter " + a.alphabet[t.action];
          n.dlocs[i] = st->second;
          if (dns[i].d->dfa.is_final(st->second)) n.latch[i] = 1;
        }
      }
      auto k = key_of(n);
      if (!seen.insert(k).second) continue;
      if (seen.size() > max_configs) return "BUDGET";
      if (auto v = check(n); !v.empty()) return v;
      work.push_back(n);
    }
  }
  return "";
}

bool scc_has_accepting_cycle(int n, int initial,
                             const std::vector<std::vector<int>>& adj,
                             const std::vector<bool>& accepting) {
  // Reachable subgraph first.
  std::vector<char> reach(n, 0);
  {
    std::deque<int> work{initial};
    reach[initial] = 1;
    while (!work.empty()) {
      int v = work.front();
      work.pop_front();
      for (int w : adj[v])
        if (!reach[w]) {
          reach[w] = 1;
          work.push_back(w);
        }
    }
  }
  // Iterative Tarjan over the reachable part.
  std::vector<int> index(n, -1), low(n, 0), comp(n, -1);
  std::vector<char> on_stack(n, 0);
  std::vector<int> stack;
  int next_index = 0, next_comp = 0;
  struct Frame {
    int v;
    std::size_t child;
  };
  for (int root = 0; root < n; ++root) {
    if (!reach[root] || index[root] != -1) continue;
    std::vector<Frame> call{{root, 0}};
    index[root] = low[root] = next_index++;
    stack.push_back(root);
    on_stack[root] = 1;
    while (!call.empty()) {
      Frame& f = call.back();
      if (f.child < adj[f.v].size()) {
        int w = adj[f.v][f.child++];
        if (!reach[w]) continue;
        if (index[w] == -1) {
          index[w] = low[w] = next_index++;
          stack.push_back(w);
          on_stack[w] = 1;
          call.push_back({w, 0});
        } else if (on_stack[w]) {
          low[f.v] = std::min(low[f.v], index[w]);
        }
      } else {
        int v = f.v;
        call.pop_back();
        if (!call.empty())
          low[call.back().v] = std::min(low[call.back().v], low[v]);
        if (low[v] == index[v]) {
          // Pop one component.
          std::vector<int> members;
          while (true) {
            int w = stack.back();
            stack.pop_back();
            on_stack[w] = 0;
            comp[w] = next_comp;
            members.push_back(w);
            if (w == v) break;
          }
          ++next_comp;
          bool has_acc = false;
          for (int w : members)
            if (accepting[w]) has_acc = true;
          if (!has_acc) continue;
          bool cyclic = members.size() > 1;
          if (!cyclic)
            for (int w : adj[members[0]])
              if (w == members[0]) cyclic = true;
          if (cyclic) return true;
        }
      }
    }
  }
  return false;
}

bool dfa_intersection_nonempty(const std::vector<Automaton>& dfas) {
  std::size_t k = dfas.size();
  std::set<std::string> letters;
  for (const auto& d : dfas)
    for (const auto& l : d.alphabet) letters.insert(l);

  // Per machine and letter name: successor map (missing entry blocks).
  std::vector<std::map<std::pair<int, std::string>, int>> step(k);
  for (std::size_t i = 0; i < k; ++i)
    for (const auto& t : dfas[i].transitions)
      if (is_observable(t.action))
        step[i][{t.from, dfas[i].alphabet[t.action]}] = t.to;

  std::vector<int> init;
  for (const auto& d : dfas) init.push_back(d.initial);
  std::set<std::vector<int>> seen{init};
  std::deque<std::vector<int>> work{init};
  while (!work.empty()) {
    std::vector<int> s = work.front();
    work.pop_front();
    bool all_final = true;
    for (std::size_t i = 0; i < k; ++i)
      if (!dfas[i].is_final(s[i])) all_final = false;
    if (all_final) return true;
    for (const auto& l : letters) {
      std::vector<int> n(k);
      bool ok = true;
      for (std::size_t i = 0; i < k && ok; ++i) {
        auto it = step[i].find({s[i], l});
        if (it == step[i].end())
          ok = false;
        else
          n[i] = it->second;
      }
      if (ok && seen.insert(n).second) work.push_back(n);
    }
  }
  return false;
}

namespace {

std::vector<int> silent_closure(const Automaton& a,
                                const std::vector<std::vector<int>>& out,
                                std::vector<int> locs) {
  std::vector<char> in(a.locations.size(), 0);
  std::deque<int> work(locs.begin(), locs.end());
  for (int l : locs) in[l] = 1;
  while (!work.empty()) {
    int l = work.front();
    work.pop_front();
    for (int ti : out[l]) {
      const Transition& t = a.transitions[ti];
      if (is_observable(t.action) || in[t.to]) continue;
      in[t.to] = 1;
      work.push_back(t.to);
    }
  }
  std::vector<int> res;
  for (std::size_t i = 0; i < in.size(); ++i)
    if (in[i]) res.push_back(static_cast<int>(i));
  return res;
}

std::vector<int> letter_step(const Automaton& a,
                             const std::vector<std::vector<int>>& out,
                             const std::vector<int>& locs,
                             const std::string& letter) {
  std::vector<char> in(a.locations.size(), 0);
  for (int l : locs)
    for (int ti : out[l]) {
      const Transition& t = a.transitions[ti];
      if (is_observable(t.action) && a.alphabet[t.action] == letter)
        in[t.to] = 1;
    }
  std::vector<int> res;
  for (std::size_t i = 0; i < in.size(); ++i)
    if (in[i]) res.push_back(static_cast<int>(i));
  return silent_closure(a, out, res);
}

bool hits_final(const Automaton& a, const std::vector<int>& locs) {
  for (int l : locs)
    if (a.is_final(l)) return true;
  return false;
}

}  // namespace

std::set<std::vector<std::string>> bounded_language(const Automaton& a,
                                                    int maxlen) {
  auto out = outgoing_index(a);
  std::set<std::vector<std::string>> words;
  struct Node {
    std::vector<std::string> word;
    std::vector<int> locs;
  };
  std::deque<Node> work{{{}, silent_closure(a, out, {a.initial})}};
  while (!work.empty()) {
    Node n = work.front();
    work.pop_front();
    if (hits_final(a, n.locs)) words.insert(n.word);
    if (static_cast<int>(n.word.size()) >= maxlen) continue;
    for (const auto& l : a.alphabet) {
      std::vector<int> next = letter_step(a, out, n.locs, l);
      if (next.empty()) continue;
      Node m;
      m.word = n.word;
      m.word.push_back(l);
      m.locs = std::move(next);
      work.push_back(std::move(m));
    }
  }
  return words;
}

bool accepts_word_fa(const Automaton& a,
                     const std::vector<std::string>& word) {
  auto out = outgoing_index(a);
  std::vector<int> locs = silent_closure(a, out, {a.initial});
  for (const auto& l : word) {
    locs = letter_step(a, out, locs, l);
    if (locs.empty()) return false;
  }
  return hits_final(a, locs);
}

bool witness_on_graph_ok(const std::vector<std::vector<int>>& adj,
                         const std::vector<bool>& accepting, int initial,
                         const SearchWitness& w, bool need_cycle) {
  auto has_edge = [&](int from, int to) {
    for (int v : adj[from])
      if (v == to) return true;
    return false;
  };
  if (w.states.empty() || w.states.front() != initial) return false;
  for (std::size_t i = 0; i + 1 < w.states.size(); ++i)
    if (!has_edge(w.states[i], w.states[i + 1])) return false;
  if (!need_cycle) return accepting[w.states.back()];
  if (w.cycle_states.empty()) return false;
  int seed = w.states.back();
  int prev = seed;
  bool acc = accepting[seed];
  for (int v : w.cycle_states) {
    if (!has_edge(prev, v)) return false;
    acc = acc || accepting[v];
    prev = v;
  }
  return w.cycle_states.back() == seed && acc;
}

std::set<std::pair<int, bool>> explanations_by_enumeration(
    const Automaton& a, const std::vector<std::string>& site,
    const TimedWord& w, const EnumOptions& opt) {
  std::set<std::pair<int, bool>> items;
  for (const Run& r : enumerate_runs(a, opt)) {
    TimedWord tw = project(trace_of(a, r), site);
    if (!(tw == w)) continue;
    State end = replay_run(a, r);
    RunClass rc = classify_run(a, r, 0);
    items.insert({end.loc, rc.kind != RunClassKind::NonFaulty});
  }
  return items;
}

}  // namespace codiag::testing
