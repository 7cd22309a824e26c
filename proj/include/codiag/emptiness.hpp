#ifndef CODIAG_EMPTINESS_HPP
#define CODIAG_EMPTINESS_HPP

#include <cstddef>
#include <optional>
#include <vector>

#include "codiag/errors.hpp"

namespace codiag {

struct SpaceEdge {
  int label = -1;  // space-specific move id
  int target = 0;
};

/// On-the-fly search space with interned dense integer state ids. Successor
/// lists are computed lazily and owned by the space (the reference stays valid
/// while the space lives).
class SearchSpace {
 public:
  virtual ~SearchSpace() = default;
  virtual int initial() = 0;
  virtual const std::vector<SpaceEdge>& successors(int state) = 0;
  virtual bool accepting(int state) = 0;
  virtual std::size_t size() const = 0;  // states interned so far
};

struct SearchBudget {
  std::size_t max_states = 1000000;
};

/// Lasso (or plain path when cycle_* is empty). states has one more entry
/// than labels; states.front() is the initial state. For a lasso the cycle
/// starts at states.back(): cycle_states[i] follows cycle_labels[i], and the
/// last cycle state equals states.back() again.
struct SearchWitness {
  std::vector<int> states;
  std::vector<int> labels;
  std::vector<int> cycle_states;
  std::vector<int> cycle_labels;
};

/// BFS for a reachable accepting state; returns a shortest witness path or
/// nullopt when none exists. Throws BudgetExceeded when the budget runs out
/// before the question is settled.
std::optional<SearchWitness> reach_check(SearchSpace& space,
                                         const SearchBudget& budget);

/// Nested DFS (iterative) for a reachable cycle through an accepting state.
std::optional<SearchWitness> buchi_check(SearchSpace& space,
                                         const SearchBudget& budget);

}  // namespace codiag

#endif
