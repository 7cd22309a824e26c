#ifndef CODIAG_REGIONS_HPP
#define CODIAG_REGIONS_HPP

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "codiag/automaton.hpp"

namespace codiag {

/// Clock region in the classic Alur-Dill sense, relative to per-clock maximal
/// constants K[c]. Each clock stores an interval index:
///   2*m   -> the point [m,m]            (0 <= m <= K[c])
///   2*m+1 -> the open interval (m,m+1)  (0 <= m <  K[c])
///   2*K[c]+1 -> beyond K[c]             ("top")
/// Clocks inside open intervals are additionally grouped by the order of
/// their fractional parts: frac_order lists the groups from smallest to
/// largest fraction, each group sorted by clock id.
struct Region {
  std::vector<int> interval;
  std::vector<std::vector<ClockId>> frac_order;

  bool operator==(const Region& o) const {
    return interval == o.interval && frac_order == o.frac_order;
  }
};

/// Compact canonical encoding, usable as a hash key.
std::string region_key(const Region& r);

/// Region containing the valuation v.
Region region_of(const std::vector<Rat>& v, const std::vector<int>& maxk);

/// True if the clock sits strictly beyond its maximal constant.
bool region_clock_top(const Region& r, ClockId c, const std::vector<int>& maxk);

bool region_satisfies(const Region& r, const ClockAtom& atom);
bool region_satisfies(const Region& r, const ClockConstraint& g);

Region region_reset(const Region& r, const std::vector<ClockId>& clocks);

/// Immediate time successor; nullopt when the region is unbounded in every
/// clock (time can elapse without leaving it).
std::optional<Region> region_time_successor(const Region& r,
                                            const std::vector<int>& maxk);

/// Region after letting exactly d (integer) time units pass. Exact because an
/// integer shift moves every clock by the same whole amount.
Region region_shift(const Region& r, long long d, const std::vector<int>& maxk);

/// Append a fresh clock at value 0 (new highest clock id).
Region region_add_zero_clock(const Region& r);

/// Remove clock c, renumbering the higher clocks down by one.
Region region_drop_clock(const Region& r, ClockId c);

/// A representative valuation of the region (fractions chosen evenly inside
/// (0,1); top clocks get K[c] + 1).
std::vector<Rat> region_representative(const Region& r,
                                       const std::vector<int>& maxk);

/// Node and edge of an explicit region graph. Edges are either a discrete
/// transition of the underlying automaton (trans = its index, delay = false)
/// or a time-successor move (delay = true, trans = -1).
struct RegionNode {
  LocId loc = 0;
  Region region;
};

struct RegionEdge {
  int from = 0;
  int to = 0;
  bool delay = false;
  int trans = -1;
};

struct RegionGraph {
  std::vector<RegionNode> nodes;
  std::vector<RegionEdge> edges;
  std::vector<std::vector<int>> out;  // node -> edge indices
  int initial = 0;
  std::vector<int> maxk;  // per clock of the source automaton
};

/// Explicit region graph of a TA (reachable part), throwing
/// StateBudgetExceeded past max_nodes. Invariants restrict both the nodes
/// (every node satisfies its location invariant) and delay edges.
RegionGraph region_graph(const Automaton& a, std::size_t max_nodes = 1000000);

/// Finite-automaton view of a region graph: locations = nodes, delay edges
/// become tau, discrete edges keep their action. Finals/repeated lifted from
/// the source automaton's location sets.
Automaton region_graph_automaton(const Automaton& a, const RegionGraph& rg);

}  // namespace codiag

#endif
