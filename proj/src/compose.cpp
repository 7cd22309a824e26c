#include "codiag/compose.hpp"

#include <algorithm>
#include <deque>
#include <map>
#include <string>

#include "codiag/errors.hpp"

namespace codiag {
namespace {

std::string tuple_name(const std::vector<const Automaton*>& comps,
                       const std::vector<LocId>& locs) {
  std::string s = "(";
  for (std::size_t k = 0; k < comps.size(); ++k) {
    if (k) s += ',';
    s += comps[k]->locations[locs[k]];
  }
  s += ')';
  return s;
}

ClockConstraint shift_clocks(const ClockConstraint& g, int offset) {
  ClockConstraint out = g;
  for (auto& at : out.atoms) at.clock += offset;
  return out;
}

std::vector<ClockId> shift_resets(const std::vector<ClockId>& r, int offset) {
  std::vector<ClockId> out = r;
  for (auto& c : out) c += offset;
  return out;
}

/// Joint moves available from a component tuple: per shared letter the
/// cartesian combinations of participant edges, plus every silent edge alone.
struct JointMove {
  ActionId action = kTau;
  std::vector<std::pair<int, int>> parts;  // (component, transition index)
};

class ProductBuilder {
 public:
  ProductBuilder(const std::vector<const Automaton*>& comps,
                 std::size_t max_states)
      : comps_(comps), max_states_(max_states) {
    if (comps.empty()) throw ValidationError("product of zero components");
    res_.a.kind = Kind::FA;
    res_.a.name = "product";
    for (std::size_t k = 0; k < comps.size(); ++k) {
      const Automaton& c = *comps[k];
      if (c.kind == Kind::TA) res_.a.kind = Kind::TA;
      res_.clock_offset.push_back(static_cast<int>(res_.a.clocks.size()));
      for (const auto& x : c.clocks)
        res_.a.clocks.push_back(x + "@" + std::to_string(k));
      for (const auto& s : c.alphabet)
        if (std::find(res_.a.alphabet.begin(), res_.a.alphabet.end(), s) ==
            res_.a.alphabet.end())
          res_.a.alphabet.push_back(s);
      out_.push_back(outgoing_index(c));
    }
    // participants_[letter id in the product alphabet] = component list
    participants_.resize(res_.a.alphabet.size());
    for (std::size_t li = 0; li < res_.a.alphabet.size(); ++li)
      for (std::size_t k = 0; k < comps.size(); ++k)
        if (std::find(comps[k]->alphabet.begin(), comps[k]->alphabet.end(),
                      res_.a.alphabet[li]) != comps[k]->alphabet.end())
          participants_[li].push_back(static_cast<int>(k));
  }

  /// extra = trailing synthetic state components (participation bit/counter);
  /// extra_init is its initial value. step_extra computes the next value from
  /// (current extra, the joint move, next component locs); accepts nullptr.
  ProductResult build(int extra_init,
                      int (*step_extra)(const ProductBuilder&, int,
                                        const JointMove&,
                                        const std::vector<LocId>&),
                      bool with_extra) {
    std::vector<LocId> init;
    for (const auto* c : comps_) init.push_back(c->initial);
    if (with_extra) init.push_back(extra_init);
    intern(init);
    for (std::size_t head = 0; head < res_.states.size(); ++head) {
      std::vector<LocId> locs = res_.states[head];  // copy: states grows
      int extra = 0;
      if (with_extra) {
        extra = locs.back();
        locs.pop_back();
      }
      for (const auto& mv : joint_moves(locs)) {
        std::vector<LocId> next = locs;
        ClockConstraint guard;
        std::vector<ClockId> resets;
        for (auto [k, t] : mv.parts) {
          const auto& tr = comps_[k]->transitions[t];
          next[k] = tr.to;
          guard = guard.conjoin(shift_clocks(tr.guard, res_.clock_offset[k]));
          auto rs = shift_resets(tr.resets, res_.clock_offset[k]);
          resets.insert(resets.end(), rs.begin(), rs.end());
        }
        std::sort(resets.begin(), resets.end());
        if (with_extra)
          next.push_back(step_extra(*this, extra, mv, next));
        int to = intern(next);
        Transition tr;
        tr.from = static_cast<LocId>(head);
        tr.guard = guard;
        tr.action = mv.action;
        tr.resets = resets;
        tr.to = to;
        tr.tag = TransTag::kSynthetic;
        res_.a.transitions.push_back(tr);
        res_.moves.push_back(mv.parts);
      }
    }
    for (LocId l = 0; l < static_cast<LocId>(res_.states.size()); ++l) {
      bool fin = true;
      for (std::size_t k = 0; k < comps_.size(); ++k)
        fin = fin && comps_[k]->is_final(res_.states[l][k]);
      if (fin) res_.a.finals.push_back(l);
    }
    return std::move(res_);
  }

  const std::vector<const Automaton*>& comps() const { return comps_; }

 private:
  int intern(const std::vector<LocId>& locs) {
    auto it = index_.find(locs);
    if (it != index_.end()) return it->second;
    if (res_.states.size() >= max_states_)
      throw StateBudgetExceeded("product exceeded " +
                                std::to_string(max_states_) + " states");
    int id = static_cast<int>(res_.states.size());
    index_.emplace(locs, id);
    res_.states.push_back(locs);
    std::string name = tuple_name(comps_, std::vector<LocId>(
                                              locs.begin(),
                                              locs.begin() + comps_.size()));
    for (std::size_t k = comps_.size(); k < locs.size(); ++k)
      name += "/" + std::to_string(locs[k]);
    res_.a.locations.push_back(name);
    ClockConstraint inv;
    for (std::size_t k = 0; k < comps_.size(); ++k)
      inv = inv.conjoin(shift_clocks(comps_[k]->invariants[locs[k]],
                                     res_.clock_offset[k]));
    res_.a.invariants.push_back(inv);
    return id;
  }

  std::vector<JointMove> joint_moves(const std::vector<LocId>& locs) {
    std::vector<JointMove> moves;
    // Silent moves interleave.
    for (std::size_t k = 0; k < comps_.size(); ++k)
      for (int t : out_[k][locs[k]])
        if (!is_observable(comps_[k]->transitions[t].action)) {
          JointMove mv;
          mv.action = comps_[k]->transitions[t].action;
          mv.parts = {{static_cast<int>(k), t}};
          moves.push_back(std::move(mv));
        }
    // Shared letters synchronize all their participants.
    for (std::size_t li = 0; li < res_.a.alphabet.size(); ++li) {
      const auto& who = participants_[li];
      if (who.empty()) continue;
      std::vector<std::vector<int>> options;
      bool possible = true;
      for (int k : who) {
        options.emplace_back();
        for (int t : out_[k][locs[k]]) {
          const auto& tr = comps_[k]->transitions[t];
          if (is_observable(tr.action) &&
              comps_[k]->alphabet[tr.action] == res_.a.alphabet[li])
            options.back().push_back(t);
        }
        if (options.back().empty()) {
          possible = false;
          break;
        }
      }
      if (!possible) continue;
      std::vector<std::size_t> pick(options.size(), 0);
      while (true) {
        JointMove mv;
        mv.action = static_cast<ActionId>(li);
        for (std::size_t j = 0; j < who.size(); ++j)
          mv.parts.emplace_back(who[j], options[j][pick[j]]);
        moves.push_back(std::move(mv));
        std::size_t j = 0;
        while (j < pick.size() && ++pick[j] == options[j].size())
          pick[j++] = 0;
        if (j == pick.size()) break;
      }
    }
    return moves;
  }

  std::vector<const Automaton*> comps_;
  std::size_t max_states_;
  ProductResult res_;
  std::map<std::vector<LocId>, int> index_;
  std::vector<std::vector<std::vector<int>>> out_;
  std::vector<std::vector<int>> participants_;
};

}  // namespace

ProductResult product(const std::vector<const Automaton*>& components,
                      std::size_t max_states) {
  ProductBuilder b(components, max_states);
  return b.build(0, nullptr, false);
}

ProductResult buchi_counter_product(
    const std::vector<const Automaton*>& components, std::size_t max_states) {
  ProductBuilder b(components, max_states);
  auto step = [](const ProductBuilder& pb, int c, const JointMove&,
                 const std::vector<LocId>& next) -> int {
    int n = static_cast<int>(pb.comps().size());
    if (c == n) c = 0;
    while (c < n && pb.comps()[c]->is_repeated(next[c])) ++c;
    return c;
  };
  // Initial counter also advances through already-repeated components.
  int n = static_cast<int>(components.size());
  int c0 = 0;
  while (c0 < n && components[c0]->is_repeated(components[c0]->initial)) ++c0;
  ProductResult r = b.build(c0, step, true);
  for (LocId l = 0; l < static_cast<LocId>(r.states.size()); ++l)
    if (r.states[l].back() == n) r.a.repeated.push_back(l);
  return r;
}

Automaton fault_monitor(const Automaton& a, int delta) {
  if (delta < 0) throw ValidationError("negative delay");
  const int n = static_cast<int>(a.locations.size());
  Automaton m;
  m.kind = a.kind;
  m.name = a.name + "_monitor";
  m.alphabet = a.alphabet;
  m.initial = a.initial;

  if (a.kind == Kind::TA) {
    m.clocks = a.clocks;
    std::string t = "t";
    while (std::find(m.clocks.begin(), m.clocks.end(), t) != m.clocks.end())
      t += "_";
    m.clocks.push_back(t);
    ClockId tc = static_cast<ClockId>(m.clocks.size()) - 1;
    for (int copy = 0; copy < 2; ++copy)
      for (int l = 0; l < n; ++l) {
        m.locations.push_back(a.locations[l] + (copy ? "!" : ""));
        m.invariants.push_back(a.invariants[l]);
      }
    m.locations.push_back("Bad");
    m.invariants.emplace_back();
    LocId bad = 2 * n;
    for (int i = 0; i < static_cast<int>(a.transitions.size()); ++i) {
      const auto& tr = a.transitions[i];
      if (is_fault(tr.action)) {
        // First fault: copy 0 -> copy 1, made silent, resets the age clock.
        Transition sw = tr;
        sw.action = kTau;
        sw.to = tr.to + n;
        sw.resets.push_back(tc);
        sw.tag = TransTag::kFaultSwitch;
        sw.origin = i;
        m.transitions.push_back(sw);
        // Later faults stay inside copy 1 as silent steps (no age reset).
        Transition later = tr;
        later.action = kTau;
        later.from = tr.from + n;
        later.to = tr.to + n;
        later.tag = TransTag::kFaultSwitch;
        later.origin = i;
        m.transitions.push_back(later);
      } else {
        Transition t0 = tr;
        t0.tag = TransTag::kPlain;
        t0.origin = i;
        m.transitions.push_back(t0);
        Transition t1 = t0;
        t1.from = tr.from + n;
        t1.to = tr.to + n;
        m.transitions.push_back(t1);
      }
    }
    for (int l = 0; l < n; ++l) {
      Transition bedge;
      bedge.from = n + l;
      bedge.guard.atoms.push_back(ClockAtom{tc, Cmp::GT, delta});
      bedge.action = kTau;
      bedge.to = bad;
      bedge.tag = TransTag::kBadEdge;
      m.transitions.push_back(bedge);
    }
    m.finals = {bad};
    return m;
  }

  // Finite automaton: copy 1 carries a saturating post-fault step counter.
  // Layout: copy 0 = locations 0..n-1; (l, c) = n + c*n + l; Bad last.
  auto faulty = [&](int l, int c) { return n + c * n + l; };
  for (int l = 0; l < n; ++l) m.locations.push_back(a.locations[l]);
  for (int c = 0; c <= delta; ++c)
    for (int l = 0; l < n; ++l)
      m.locations.push_back(a.locations[l] + "!" + std::to_string(c));
  m.locations.push_back("Bad");
  LocId bad = static_cast<LocId>(m.locations.size()) - 1;
  m.invariants.assign(m.locations.size(), ClockConstraint{});
  for (int i = 0; i < static_cast<int>(a.transitions.size()); ++i) {
    const auto& tr = a.transitions[i];
    if (is_fault(tr.action)) {
      Transition sw = tr;
      sw.action = kTau;
      sw.to = faulty(tr.to, 0);
      sw.tag = TransTag::kFaultSwitch;
      sw.origin = i;
      m.transitions.push_back(sw);
      for (int c = 0; c <= delta; ++c) {
        Transition later = tr;
        later.action = kTau;
        later.from = faulty(tr.from, c);
        later.to = faulty(tr.to, std::min(c + 1, delta));
        later.tag = TransTag::kFaultSwitch;
        later.origin = i;
        m.transitions.push_back(later);
      }
    } else {
      Transition t0 = tr;
      t0.tag = TransTag::kPlain;
      t0.origin = i;
      m.transitions.push_back(t0);
      for (int c = 0; c <= delta; ++c) {
        Transition t1 = t0;
        t1.from = faulty(tr.from, c);
        t1.to = faulty(tr.to, std::min(c + 1, delta));
        m.transitions.push_back(t1);
      }
    }
  }
  for (int l = 0; l < n; ++l) {
    Transition bedge;
    bedge.from = faulty(l, delta);
    bedge.action = kTau;
    bedge.to = bad;
    bedge.tag = TransTag::kBadEdge;
    m.transitions.push_back(bedge);
  }
  m.finals = {bad};
  return m;
}

Automaton fault_tagger(const Automaton& a) {
  const int n = static_cast<int>(a.locations.size());
  Automaton t;
  t.kind = a.kind;
  t.name = a.name + "_tagger";
  t.alphabet = a.alphabet;
  t.clocks = a.clocks;
  t.initial = a.initial;
  for (int copy = 0; copy < 2; ++copy)
    for (int l = 0; l < n; ++l) {
      t.locations.push_back(a.locations[l] + (copy ? "!" : ""));
      t.invariants.push_back(a.invariants[l]);
    }
  for (int i = 0; i < static_cast<int>(a.transitions.size()); ++i) {
    const auto& tr = a.transitions[i];
    if (is_fault(tr.action)) {
      Transition sw = tr;
      sw.action = kTau;
      sw.to = tr.to + n;
      sw.tag = TransTag::kFaultSwitch;
      sw.origin = i;
      t.transitions.push_back(sw);
      Transition later = sw;
      later.from = tr.from + n;
      t.transitions.push_back(later);
    } else {
      Transition t0 = tr;
      t0.tag = TransTag::kPlain;
      t0.origin = i;
      t.transitions.push_back(t0);
      Transition t1 = t0;
      t1.from = tr.from + n;
      t1.to = tr.to + n;
      t.transitions.push_back(t1);
    }
  }
  return t;
}

Automaton site_observer(const Automaton& a,
                        const std::vector<ActionId>& site_alphabet, int site) {
  Automaton o;
  o.kind = a.kind;
  o.name = a.name + "_obs" + std::to_string(site);
  o.alphabet = a.alphabet;
  o.clocks = a.clocks;
  o.locations = a.locations;
  o.invariants = a.invariants;
  o.initial = a.initial;
  auto in_site = [&](ActionId act) {
    return std::binary_search(site_alphabet.begin(), site_alphabet.end(), act);
  };
  for (int i = 0; i < static_cast<int>(a.transitions.size()); ++i) {
    const auto& tr = a.transitions[i];
    if (is_fault(tr.action)) continue;
    Transition t = tr;
    t.origin = i;
    if (is_observable(tr.action) && !in_site(tr.action)) {
      t.action = kTau;
      t.tag = TransTag::kRelabeled;
    } else {
      t.tag = TransTag::kPlain;
    }
    o.transitions.push_back(t);
  }
  for (LocId l = 0; l < static_cast<LocId>(a.locations.size()); ++l)
    for (ActionId act = 0; act < static_cast<ActionId>(a.alphabet.size());
         ++act)
      if (!in_site(act)) {
        Transition loop;
        loop.from = l;
        loop.to = l;
        loop.action = act;
        loop.tag = TransTag::kSelfLoop;
        o.transitions.push_back(loop);
      }
  o.finals.resize(a.locations.size());
  for (LocId l = 0; l < static_cast<LocId>(a.locations.size()); ++l)
    o.finals[l] = l;
  return o;
}

Automaton divergence_automaton(const std::string& clock_name) {
  Automaton d;
  d.kind = Kind::TA;
  d.name = "divergence";
  d.clocks = {clock_name};
  d.locations = {"Div0", "Div1"};
  ClockConstraint inv;
  inv.atoms.push_back(ClockAtom{0, Cmp::LE, 1});
  d.invariants = {inv, inv};
  for (int l = 0; l < 2; ++l) {
    Transition t;
    t.from = l;
    t.to = 1 - l;
    t.guard.atoms.push_back(ClockAtom{0, Cmp::EQ, 1});
    t.action = kTau;
    t.resets = {0};
    t.tag = TransTag::kSynthetic;
    d.transitions.push_back(t);
  }
  d.finals = {0, 1};
  d.repeated = {1};
  return d;
}

ProductResult z_flag_product(const Automaton& original, const Automaton& tagger,
                             const std::vector<Automaton>& observers,
                             std::size_t max_states) {
  if (original.kind != Kind::FA)
    throw ValidationError("participation-bit product is for finite automata");
  std::vector<const Automaton*> comps{&tagger};
  for (const auto& o : observers) comps.push_back(&o);
  ProductBuilder b(comps, max_states);
  auto step = [](const ProductBuilder&, int, const JointMove& mv,
                 const std::vector<LocId>&) -> int {
    // The tagger is component 0; it participates in every shared letter and
    // in its own silent moves.
    for (auto [k, t] : mv.parts)
      if (k == 0) return 1;
    return 0;
  };
  ProductResult r = b.build(1, step, true);
  for (LocId l = 0; l < static_cast<LocId>(r.states.size()); ++l)
    if (tagger_is_faulty(original, r.states[l][0]) && r.states[l].back() == 1)
      r.a.repeated.push_back(l);
  return r;
}

}  // namespace codiag
