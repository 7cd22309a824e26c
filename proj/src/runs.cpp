#include "codiag/runs.hpp"

#include <algorithm>

namespace codiag {

State replay_run(const Automaton& a, const Run& r) {
  State cur = r.start;
  for (const auto& step : r.steps) {
    cur = delay_successor(a, cur, step.delay);
    if (step.trans < 0 ||
        step.trans >= static_cast<int>(a.transitions.size()))
      throw Error("run references transition out of range");
    auto nxt = discrete_step(a, cur, step.trans);
    if (!nxt) throw Error("run step not enabled");
    cur = *nxt;
  }
  return delay_successor(a, cur, r.trailing);
}

bool run_is_valid(const Automaton& a, const Run& r) {
  try {
    replay_run(a, r);
    return true;
  } catch (const Error&) {
    return false;
  }
}

Rat TimedWord::duration() const {
  Rat d(0);
  for (const auto& g : gaps) d += g;
  return d;
}

void TimedWord::append(const Rat& gap, const std::string& letter) {
  gaps.back() += gap;
  letters.push_back(letter);
  gaps.push_back(Rat(0));
}

void TimedWord::extend_time(const Rat& gap) { gaps.back() += gap; }

TimedWord trace_of(const Automaton& a, const Run& r) {
  TimedWord w;
  for (const auto& step : r.steps) {
    const ActionId act = a.transitions[step.trans].action;
    if (is_observable(act))
      w.append(step.delay, a.alphabet[static_cast<std::size_t>(act)]);
    else
      w.extend_time(step.delay);  // tau and faults are silent
  }
  w.extend_time(r.trailing);
  return w;
}

TimedWord project(const TimedWord& w, const std::vector<std::string>& keep) {
  TimedWord out;
  for (std::size_t i = 0; i < w.letters.size(); ++i) {
    if (std::find(keep.begin(), keep.end(), w.letters[i]) != keep.end())
      out.append(w.gaps[i], w.letters[i]);
    else
      out.extend_time(w.gaps[i]);
  }
  out.extend_time(w.gaps.back());
  return out;
}

std::vector<std::string> untime(const TimedWord& w) { return w.letters; }

Rat duration_of(const Automaton& a, const Run& r) {
  if (a.kind == Kind::FA) return Rat(static_cast<long long>(r.steps.size()));
  Rat d = r.trailing;
  for (const auto& step : r.steps) d += step.delay;
  return d;
}

RunClass classify_run(const Automaton& a, const Run& r, int delta) {
  std::size_t first_fault = r.steps.size();
  for (std::size_t i = 0; i < r.steps.size(); ++i) {
    if (is_fault(a.transitions[r.steps[i].trans].action)) {
      first_fault = i;
      break;
    }
  }
  if (first_fault == r.steps.size()) return RunClass{RunClassKind::NonFaulty};

  Rat age(0);
  if (a.kind == Kind::FA) {
    age = Rat(static_cast<long long>(r.steps.size() - first_fault - 1));
    if (age >= Rat(delta)) return RunClass{RunClassKind::DeltaFaulty, age};
  } else {
    for (std::size_t i = first_fault + 1; i < r.steps.size(); ++i)
      age += r.steps[i].delay;
    age += r.trailing;
    if (age > Rat(delta)) return RunClass{RunClassKind::DeltaFaulty, age};
  }
  return RunClass{RunClassKind::Faulty, age};
}

std::vector<Run> enumerate_runs(const Automaton& a, const EnumOptions& opt) {
  std::vector<Run> out;
  Rat cap = opt.max_delay;
  if (cap == Rat(0) && a.kind == Kind::TA) {
    int k = 0;
    for (int c : max_constants(a)) k = std::max(k, c);
    cap = Rat(k + 1);
  }
  std::vector<Rat> delays;
  if (a.kind == Kind::FA) {
    delays.push_back(Rat(0));
  } else {
    for (Rat d(0); d <= cap; d += opt.grid) delays.push_back(d);
  }

  const auto out_index = outgoing_index(a);

  struct Frame {
    Run run;
    State end;  // state after all steps (before trailing)
  };
  auto emit = [&](const Run& base, const State& end_state) {
    auto push = [&](Run r) {
      if (out.size() >= opt.max_runs)
        throw BudgetExceeded("run enumeration exceeded max_runs");
      out.push_back(std::move(r));
    };
    push(base);
    if (opt.with_trailing && a.kind == Kind::TA) {
      for (std::size_t i = 1; i < delays.size(); ++i) {
        State probe = end_state;
        bool ok = true;
        try {
          probe = delay_successor(a, end_state, delays[i]);
          (void)probe;
        } catch (const InvariantViolation&) {
          ok = false;
        }
        if (ok) {
          Run r = base;
          r.trailing = delays[i];
          push(r);
        }
      }
    }
  };

  // Depth-first, deterministic: delay options in increasing order, then
  // transitions in declaration order.
  struct Node {
    Run run;
    State end;
    int depth;
  };
  std::vector<Node> stack;
  stack.push_back(Node{Run{initial_state(a), {}, Rat(0)}, initial_state(a), 0});
  while (!stack.empty()) {
    Node n = std::move(stack.back());
    stack.pop_back();
    emit(n.run, n.end);
    if (n.depth == opt.max_steps) continue;
    // Collect children, then push in reverse so they pop in order.
    std::vector<Node> children;
    for (const Rat& d : delays) {
      State waited;
      try {
        waited = delay_successor(a, n.end, d);
      } catch (const InvariantViolation&) {
        break;  // delays are increasing; larger ones fail too
      }
      for (int ti : out_index[waited.loc]) {
        if (auto nxt = discrete_step(a, waited, ti)) {
          Node child{n.run, *nxt, n.depth + 1};
          child.run.steps.push_back(RunStep{d, ti});
          children.push_back(std::move(child));
        }
      }
    }
    for (auto it = children.rbegin(); it != children.rend(); ++it)
      stack.push_back(std::move(*it));
  }
  return out;
}

}  // namespace codiag
