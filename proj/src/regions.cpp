#include "codiag/regions.hpp"

#include <algorithm>
#include <map>
#include <unordered_map>

#include "codiag/errors.hpp"

namespace codiag {

std::string region_key(const Region& r) {
  std::string s;
  for (int i : r.interval) {
    s += std::to_string(i);
    s += ',';
  }
  s += '|';
  for (const auto& grp : r.frac_order) {
    for (ClockId c : grp) {
      s += std::to_string(c);
      s += ',';
    }
    s += ';';
  }
  return s;
}

Region region_of(const std::vector<Rat>& v, const std::vector<int>& maxk) {
  Region r;
  r.interval.resize(v.size());
  std::map<Rat, std::vector<ClockId>> groups;
  for (std::size_t c = 0; c < v.size(); ++c) {
    if (v[c] < Rat(0)) throw Error("negative clock value");
    int k = maxk[c];
    if (v[c] > Rat(k)) {
      r.interval[c] = 2 * k + 1;
      continue;
    }
    long long fl = rat_floor(v[c]);
    Rat fr = rat_frac(v[c]);
    if (fr == Rat(0)) {
      r.interval[c] = static_cast<int>(2 * fl);
    } else {
      r.interval[c] = static_cast<int>(2 * fl + 1);
      groups[fr].push_back(static_cast<ClockId>(c));
    }
  }
  for (auto& [fr, clocks] : groups) r.frac_order.push_back(clocks);
  return r;
}

bool region_clock_top(const Region& r, ClockId c,
                      const std::vector<int>& maxk) {
  return r.interval[c] == 2 * maxk[c] + 1;
}

bool region_satisfies(const Region& r, const ClockAtom& atom) {
  // Valid whenever the atom's bound is within the clock's maximal constant;
  // then interval index i compares against 2*bound exactly.
  int i = r.interval[atom.clock];
  int b2 = 2 * atom.bound;
  switch (atom.cmp) {
    case Cmp::LT: return i < b2;
    case Cmp::LE: return i <= b2;
    case Cmp::EQ: return i == b2;
    case Cmp::GE: return i >= b2;
    case Cmp::GT: return i > b2;
  }
  return false;
}

bool region_satisfies(const Region& r, const ClockConstraint& g) {
  for (const auto& at : g.atoms)
    if (!region_satisfies(r, at)) return false;
  return true;
}

Region region_reset(const Region& r, const std::vector<ClockId>& clocks) {
  Region out = r;
  for (ClockId c : clocks) out.interval[c] = 0;
  std::vector<std::vector<ClockId>> fo;
  for (const auto& grp : out.frac_order) {
    std::vector<ClockId> keep;
    for (ClockId c : grp)
      if (!std::binary_search(clocks.begin(), clocks.end(), c))
        keep.push_back(c);
    if (!keep.empty()) fo.push_back(std::move(keep));
  }
  out.frac_order = std::move(fo);
  return out;
}

std::optional<Region> region_time_successor(const Region& r,
                                            const std::vector<int>& maxk) {
  Region out = r;
  // Clocks sitting on an integer move first (into open intervals, or beyond
  // the constant); otherwise the largest-fraction group hits the next integer.
  std::vector<ClockId> on_point;
  for (std::size_t c = 0; c < r.interval.size(); ++c)
    if (r.interval[c] % 2 == 0 && !region_clock_top(r, c, maxk))
      on_point.push_back(static_cast<ClockId>(c));
  if (!on_point.empty()) {
    std::vector<ClockId> fresh;
    for (ClockId c : on_point) {
      if (r.interval[c] == 2 * maxk[c]) {
        out.interval[c] = 2 * maxk[c] + 1;  // past the constant
      } else {
        out.interval[c] += 1;
        fresh.push_back(c);
      }
    }
    if (!fresh.empty())
      out.frac_order.insert(out.frac_order.begin(), fresh);
    return out;
  }
  if (out.frac_order.empty()) return std::nullopt;  // everything is beyond
  std::vector<ClockId> last = out.frac_order.back();
  out.frac_order.pop_back();
  for (ClockId c : last) out.interval[c] += 1;  // open -> next point
  return out;
}

Region region_shift(const Region& r, long long d,
                    const std::vector<int>& maxk) {
  if (d < 0) throw Error("negative region shift");
  if (d == 0) return r;
  Region out = r;
  for (std::size_t c = 0; c < r.interval.size(); ++c) {
    if (region_clock_top(r, c, maxk)) continue;
    long long ni = r.interval[c] + 2 * d;
    out.interval[c] = ni >= 2 * maxk[c] + 1 ? 2 * maxk[c] + 1
                                            : static_cast<int>(ni);
  }
  std::vector<std::vector<ClockId>> fo;
  for (const auto& grp : out.frac_order) {
    std::vector<ClockId> keep;
    for (ClockId c : grp)
      if (!region_clock_top(out, c, maxk)) keep.push_back(c);
    if (!keep.empty()) fo.push_back(std::move(keep));
  }
  out.frac_order = std::move(fo);
  return out;
}

Region region_add_zero_clock(const Region& r) {
  Region out = r;
  out.interval.push_back(0);
  return out;
}

Region region_drop_clock(const Region& r, ClockId c) {
  Region out;
  for (std::size_t i = 0; i < r.interval.size(); ++i)
    if (static_cast<ClockId>(i) != c) out.interval.push_back(r.interval[i]);
  for (const auto& grp : r.frac_order) {
    std::vector<ClockId> keep;
    for (ClockId g : grp)
      if (g != c) keep.push_back(g > c ? g - 1 : g);
    if (!keep.empty()) out.frac_order.push_back(keep);
  }
  return out;
}

std::vector<Rat> region_representative(const Region& r,
                                       const std::vector<int>& maxk) {
  std::vector<Rat> v(r.interval.size(), Rat(0));
  long long g = static_cast<long long>(r.frac_order.size());
  std::vector<Rat> frac(r.interval.size(), Rat(0));
  for (long long gi = 0; gi < g; ++gi)
    for (ClockId c : r.frac_order[gi]) frac[c] = Rat(gi + 1, g + 1);
  for (std::size_t c = 0; c < r.interval.size(); ++c) {
    if (region_clock_top(r, c, maxk)) {
      v[c] = Rat(maxk[c] + 1);
    } else {
      v[c] = Rat(r.interval[c] / 2) + frac[c];
    }
  }
  return v;
}

RegionGraph region_graph(const Automaton& a, std::size_t max_nodes) {
  if (a.kind != Kind::TA) throw ValidationError("region graph needs a TA");
  RegionGraph rg;
  rg.maxk = max_constants(a);
  auto out_trans = outgoing_index(a);
  std::unordered_map<std::string, int> index;
  auto intern = [&](LocId loc, const Region& r) {
    std::string key = std::to_string(loc) + "@" + region_key(r);
    auto it = index.find(key);
    if (it != index.end()) return it->second;
    if (rg.nodes.size() >= max_nodes)
      throw StateBudgetExceeded("region graph exceeded " +
                                std::to_string(max_nodes) + " nodes");
    int id = static_cast<int>(rg.nodes.size());
    index.emplace(std::move(key), id);
    rg.nodes.push_back(RegionNode{loc, r});
    rg.out.emplace_back();
    return id;
  };

  Region r0 = region_of(ClockValuation(a.clocks.size(), Rat(0)), rg.maxk);
  if (!region_satisfies(r0, a.invariants[a.initial]))
    throw ValidationError("initial state violates its invariant");
  rg.initial = intern(a.initial, r0);
  for (std::size_t head = 0; head < rg.nodes.size(); ++head) {
    RegionNode node = rg.nodes[head];
    if (auto succ = region_time_successor(node.region, rg.maxk);
        succ && region_satisfies(*succ, a.invariants[node.loc])) {
      int to = intern(node.loc, *succ);
      rg.out[head].push_back(static_cast<int>(rg.edges.size()));
      rg.edges.push_back(RegionEdge{static_cast<int>(head), to, true, -1});
    }
    for (int t : out_trans[node.loc]) {
      const auto& tr = a.transitions[t];
      if (!region_satisfies(node.region, tr.guard)) continue;
      Region nr = region_reset(node.region, tr.resets);
      if (!region_satisfies(nr, a.invariants[tr.to])) continue;
      int to = intern(tr.to, nr);
      rg.out[head].push_back(static_cast<int>(rg.edges.size()));
      rg.edges.push_back(RegionEdge{static_cast<int>(head), to, false, t});
    }
  }
  return rg;
}

Automaton region_graph_automaton(const Automaton& a, const RegionGraph& rg) {
  Automaton g;
  g.kind = Kind::FA;
  g.name = a.name + "_regions";
  g.alphabet = a.alphabet;
  g.initial = rg.initial;
  for (std::size_t i = 0; i < rg.nodes.size(); ++i) {
    g.locations.push_back(a.locations[rg.nodes[i].loc] + "@" +
                          region_key(rg.nodes[i].region));
    g.invariants.emplace_back();
    if (a.is_final(rg.nodes[i].loc)) g.finals.push_back(static_cast<LocId>(i));
    if (a.is_repeated(rg.nodes[i].loc))
      g.repeated.push_back(static_cast<LocId>(i));
  }
  for (const auto& e : rg.edges) {
    Transition t;
    t.from = e.from;
    t.to = e.to;
    if (e.delay) {
      t.action = kTau;
      t.tag = TransTag::kSynthetic;
    } else {
      t.action = a.transitions[e.trans].action;
      t.tag = TransTag::kPlain;
      t.origin = e.trans;
    }
    g.transitions.push_back(t);
  }
  return g;
}

}  // namespace codiag
