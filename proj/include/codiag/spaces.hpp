#ifndef CODIAG_SPACES_HPP
#define CODIAG_SPACES_HPP

#include <functional>
#include <unordered_map>
#include <vector>

#include "codiag/automaton.hpp"
#include "codiag/emptiness.hpp"
#include "codiag/regions.hpp"

namespace codiag {

/// Fixed graph given up front; used by tests and oracles.
class ExplicitGraphSpace : public SearchSpace {
 public:
  ExplicitGraphSpace(int n, int initial, std::vector<std::vector<int>> adj,
                     std::vector<bool> accepting);

  int initial() override { return initial_; }
  const std::vector<SpaceEdge>& successors(int state) override {
    return edges_[state];
  }
  bool accepting(int state) override { return accepting_[state]; }
  std::size_t size() const override { return edges_.size(); }

 private:
  int initial_;
  std::vector<std::vector<SpaceEdge>> edges_;
  std::vector<bool> accepting_;
};

/// Walks the discrete location graph of an automaton (guards ignored, so use
/// it on finite automata or on region-graph views). Edge labels are
/// transition indices. `accept` decides acceptance per location.
class AutomatonSpace : public SearchSpace {
 public:
  AutomatonSpace(const Automaton& a, std::function<bool(LocId)> accept);

  int initial() override { return a_.initial; }
  const std::vector<SpaceEdge>& successors(int state) override;
  bool accepting(int state) override { return accept_(state); }
  std::size_t size() const override { return a_.locations.size(); }

 private:
  const Automaton& a_;
  std::function<bool(LocId)> accept_;
  std::unordered_map<int, std::vector<SpaceEdge>> cache_;
};

/// Walks the region graph of a timed automaton on the fly. States are region
/// nodes (interned densely); edge labels are region-edge encodings:
/// label >= 0 is a discrete transition index, label == -1 a time successor.
class RegionSpace : public SearchSpace {
 public:
  RegionSpace(const Automaton& a, std::function<bool(LocId)> accept,
              std::size_t max_nodes = 1000000);

  int initial() override;
  const std::vector<SpaceEdge>& successors(int state) override;
  bool accepting(int state) override;
  std::size_t size() const override { return nodes_.size(); }

  const RegionNode& node(int state) const { return nodes_[state]; }
  const std::vector<int>& maxk() const { return maxk_; }

 private:
  int intern(LocId loc, const Region& r);

  const Automaton& a_;
  std::function<bool(LocId)> accept_;
  std::size_t max_nodes_;
  std::vector<int> maxk_;
  std::vector<RegionNode> nodes_;
  std::vector<std::vector<SpaceEdge>> edges_;
  std::vector<bool> expanded_;
  std::unordered_map<std::string, int> index_;
  std::vector<std::vector<int>> out_trans_;  // per location
};

}  // namespace codiag

#endif
