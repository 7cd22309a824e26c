#include "codiag/emptiness.hpp"

#include <algorithm>
#include <cstdint>
#include <deque>
#include <unordered_map>
#include <vector>

namespace codiag {
namespace {

struct Hop {
  int prev = -1;
  int label = -1;
};

SearchWitness path_from(const std::unordered_map<int, Hop>& parent, int goal) {
  SearchWitness w;
  int cur = goal;
  while (cur != -1) {
    w.states.push_back(cur);
    auto it = parent.find(cur);
    if (it->second.prev != -1) w.labels.push_back(it->second.label);
    cur = it->second.prev;
  }
  std::reverse(w.states.begin(), w.states.end());
  std::reverse(w.labels.begin(), w.labels.end());
  return w;
}

void check_budget(const SearchSpace& space, const SearchBudget& budget) {
  if (space.size() > budget.max_states)
    throw BudgetExceeded("search exceeded " +
                         std::to_string(budget.max_states) + " states");
}

}  // namespace

std::optional<SearchWitness> reach_check(SearchSpace& space,
                                         const SearchBudget& budget) {
  std::unordered_map<int, Hop> parent;
  std::deque<int> queue;
  int init = space.initial();
  parent.emplace(init, Hop{});
  if (space.accepting(init)) return path_from(parent, init);
  queue.push_back(init);
  while (!queue.empty()) {
    int s = queue.front();
    queue.pop_front();
    for (const auto& e : space.successors(s)) {
      if (parent.count(e.target)) continue;
      parent.emplace(e.target, Hop{s, e.label});
      if (space.accepting(e.target)) return path_from(parent, e.target);
      queue.push_back(e.target);
    }
    check_budget(space, budget);
  }
  return std::nullopt;
}

std::optional<SearchWitness> buchi_check(SearchSpace& space,
                                         const SearchBudget& budget) {
  // Iterative nested depth-first search. The outer (blue) DFS schedules a red
  // sweep at the postorder visit of every accepting state; the red sweep
  // (plain BFS over not-yet-red states) looks for a state still on the blue
  // stack, which closes an accepting lasso. Each state turns red at most
  // once overall, keeping the whole thing linear.
  enum : std::uint8_t { kWhite = 0, kCyan = 1, kBlue = 2 };
  std::unordered_map<int, std::uint8_t> color;
  std::unordered_map<int, bool> red;
  std::unordered_map<int, Hop> blue_parent;

  struct Frame {
    int state;
    std::size_t next = 0;
  };
  std::vector<Frame> stack;
  int init = space.initial();
  blue_parent.emplace(init, Hop{});
  color[init] = kCyan;
  stack.push_back(Frame{init});

  auto red_sweep = [&](int seed) -> std::optional<SearchWitness> {
    // BFS from seed through non-red states, stopping at a cyan state.
    std::unordered_map<int, Hop> rp;
    std::deque<int> queue;
    rp.emplace(seed, Hop{});
    queue.push_back(seed);
    int hit = -1;
    int hit_from = -1;
    int hit_label = -1;
    // Self-loops count: a successor of seed equal to seed closes the lasso.
    while (!queue.empty() && hit == -1) {
      int s = queue.front();
      queue.pop_front();
      for (const auto& e : space.successors(s)) {
        if (color[e.target] == kCyan) {
          hit = e.target;
          hit_from = s;
          hit_label = e.label;
          break;
        }
        if (red[e.target] || rp.count(e.target)) continue;
        rp.emplace(e.target, Hop{s, e.label});
        queue.push_back(e.target);
      }
      check_budget(space, budget);
    }
    if (hit == -1) {
      for (const auto& [s, h] : rp) red[s] = true;
      return std::nullopt;
    }
    // hit is on the blue stack: stem = blue path to hit; cycle = blue stack
    // segment hit -> seed, then red path seed -> hit.
    SearchWitness w = path_from(blue_parent, hit);
    std::vector<int> seg_states;
    std::vector<int> seg_labels;
    bool collecting = false;
    for (std::size_t i = 0; i < stack.size(); ++i) {
      if (stack[i].state == hit) collecting = true;
      if (!collecting) continue;
      if (i + 1 < stack.size()) {
        // Label of the tree edge stack[i] -> stack[i+1].
        seg_labels.push_back(blue_parent[stack[i + 1].state].label);
        seg_states.push_back(stack[i + 1].state);
      }
    }
    // seed is stack.back(); append the red return path seed ->* hit.
    SearchWitness back = path_from(rp, hit_from);
    for (std::size_t i = 0; i < back.labels.size(); ++i) {
      seg_labels.push_back(back.labels[i]);
      seg_states.push_back(back.states[i + 1]);
    }
    seg_labels.push_back(hit_label);
    seg_states.push_back(hit);
    w.cycle_states = std::move(seg_states);
    w.cycle_labels = std::move(seg_labels);
    return w;
  };

  while (!stack.empty()) {
    Frame& f = stack.back();
    const auto& succ = space.successors(f.state);
    check_budget(space, budget);
    if (f.next < succ.size()) {
      const auto& e = succ[f.next++];
      if (color[e.target] == kWhite) {
        blue_parent.emplace(e.target, Hop{f.state, e.label});
        color[e.target] = kCyan;
        stack.push_back(Frame{e.target});
      }
      continue;
    }
    int s = f.state;
    if (space.accepting(s)) {
      if (auto w = red_sweep(s)) return w;
    }
    color[s] = kBlue;
    stack.pop_back();
  }
  return std::nullopt;
}

}  // namespace codiag
