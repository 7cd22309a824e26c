#include "codiag/spaces.hpp"

#include <utility>

#include "codiag/errors.hpp"

namespace codiag {

ExplicitGraphSpace::ExplicitGraphSpace(int n, int initial,
                                       std::vector<std::vector<int>> adj,
                                       std::vector<bool> accepting)
    : initial_(initial), accepting_(std::move(accepting)) {
  edges_.resize(n);
  for (int s = 0; s < n; ++s)
    for (std::size_t j = 0; j < adj[s].size(); ++j)
      edges_[s].push_back(SpaceEdge{static_cast<int>(j), adj[s][j]});
}

AutomatonSpace::AutomatonSpace(const Automaton& a,
                               std::function<bool(LocId)> accept)
    : a_(a), accept_(std::move(accept)) {}

const std::vector<SpaceEdge>& AutomatonSpace::successors(int state) {
  auto it = cache_.find(state);
  if (it != cache_.end()) return it->second;
  std::vector<SpaceEdge> out;
  for (int t = 0; t < static_cast<int>(a_.transitions.size()); ++t)
    if (a_.transitions[t].from == state)
      out.push_back(SpaceEdge{t, a_.transitions[t].to});
  return cache_.emplace(state, std::move(out)).first->second;
}

RegionSpace::RegionSpace(const Automaton& a, std::function<bool(LocId)> accept,
                         std::size_t max_nodes)
    : a_(a),
      accept_(std::move(accept)),
      max_nodes_(max_nodes),
      maxk_(max_constants(a)),
      out_trans_(outgoing_index(a)) {
  if (a.kind != Kind::TA)
    throw ValidationError("region space needs a timed automaton");
}

int RegionSpace::intern(LocId loc, const Region& r) {
  std::string key = std::to_string(loc) + "@" + region_key(r);
  auto it = index_.find(key);
  if (it != index_.end()) return it->second;
  if (nodes_.size() >= max_nodes_)
    throw StateBudgetExceeded("region space exceeded " +
                              std::to_string(max_nodes_) + " nodes");
  int id = static_cast<int>(nodes_.size());
  index_.emplace(std::move(key), id);
  nodes_.push_back(RegionNode{loc, r});
  edges_.emplace_back();
  expanded_.push_back(false);
  return id;
}

int RegionSpace::initial() {
  Region r0 = region_of(ClockValuation(a_.clocks.size(), Rat(0)), maxk_);
  if (!region_satisfies(r0, a_.invariants[a_.initial]))
    throw ValidationError("initial state violates its invariant");
  return intern(a_.initial, r0);
}

const std::vector<SpaceEdge>& RegionSpace::successors(int state) {
  if (expanded_[state]) return edges_[state];
  RegionNode node = nodes_[state];  // copy: nodes_ may grow below
  std::vector<SpaceEdge> out;
  if (auto succ = region_time_successor(node.region, maxk_);
      succ && region_satisfies(*succ, a_.invariants[node.loc]))
    out.push_back(SpaceEdge{-1, intern(node.loc, *succ)});
  for (int t : out_trans_[node.loc]) {
    const auto& tr = a_.transitions[t];
    if (!region_satisfies(node.region, tr.guard)) continue;
    Region nr = region_reset(node.region, tr.resets);
    if (!region_satisfies(nr, a_.invariants[tr.to])) continue;
    out.push_back(SpaceEdge{t, intern(tr.to, nr)});
  }
  edges_[state] = std::move(out);
  expanded_[state] = true;
  return edges_[state];
}

bool RegionSpace::accepting(int state) {
  return accept_(nodes_[state].loc);
}

}  // namespace codiag
