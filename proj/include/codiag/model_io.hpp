#ifndef CODIAG_MODEL_IO_HPP
#define CODIAG_MODEL_IO_HPP

#include <string>
#include <vector>

#include "codiag/automaton.hpp"
#include "codiag/runs.hpp"

namespace codiag {

/// Line-oriented model text. Blank lines and `#` comments are skipped.
///
///   automaton NAME fa|ta
///   alphabet a b c
///   clocks x y            (ta only, optional)
///   locations l0 l1 ...
///   initial l0
///   invariant l0 x<=1 & y<2     (ta, optional per location)
///   trans l0 a l1
///   trans l0 fault l1
///   trans l0 tau l1 when x>=1 & x<=2 reset x y
///   final l1 l2           (optional, repeatable)
///   repeated l3           (optional, repeatable)
///
/// `tau` and `fault` (also `fault.K` for channel K) are reserved action
/// names. Guard atoms use <, <=, =, >=, > with integer bounds.
Automaton parse_model(const std::string& text);
Automaton parse_model_file(const std::string& path);
std::string write_model(const Automaton& a);

/// Observation family text: one line per site, `site a b c`.
std::vector<std::vector<std::string>> parse_family(const std::string& text);
std::vector<std::vector<std::string>> parse_family_file(const std::string& path);
std::string write_family(const std::vector<std::vector<std::string>>& sites);

/// Resource text: one block per site.
///   resource
///   alphabet a b
///   clocks z              (zero or one clock)
///   maxconst 3
///   granularity 2         (denominator: guards lie on the 1/2 grid)
struct Resource {
  std::vector<std::string> alphabet;
  std::vector<std::string> clocks;
  int max_const = 1;
  long long granularity_den = 1;
};

std::vector<Resource> parse_resources(const std::string& text);
std::vector<Resource> parse_resources_file(const std::string& path);
std::string write_resources(const std::vector<Resource>& rs);

/// Timed trace: whitespace-separated alternation `d0 a1 d1 a2 d2 ...` of
/// decimal/rational durations and letters, starting and ending with a
/// duration. Untimed trace (finite automata): letters only.
TimedWord parse_trace(const std::string& text, bool timed);
std::string write_trace(const TimedWord& w, bool timed);

std::string read_file(const std::string& path);
void write_file(const std::string& path, const std::string& text);

}  // namespace codiag

#endif
