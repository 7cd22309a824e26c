#include "codiag/model_io.hpp"

#include <algorithm>
#include <fstream>
#include <sstream>

#include "codiag/errors.hpp"

namespace codiag {
namespace {

struct Line {
  int number = 0;
  std::vector<std::string> tokens;
};

std::vector<Line> tokenize(const std::string& text) {
  std::vector<Line> lines;
  std::istringstream in(text);
  std::string raw;
  int number = 0;
  while (std::getline(in, raw)) {
    ++number;
    auto hash = raw.find('#');
    if (hash != std::string::npos) raw.erase(hash);
    std::istringstream ls(raw);
    Line line;
    line.number = number;
    std::string tok;
    while (ls >> tok) line.tokens.push_back(tok);
    if (!line.tokens.empty()) lines.push_back(std::move(line));
  }
  return lines;
}

int find_name(const std::vector<std::string>& names, const std::string& s) {
  auto it = std::find(names.begin(), names.end(), s);
  return it == names.end() ? -1 : static_cast<int>(it - names.begin());
}

Cmp parse_cmp(const std::string& s, int line) {
  if (s == "<") return Cmp::LT;
  if (s == "<=") return Cmp::LE;
  if (s == "=" || s == "==") return Cmp::EQ;
  if (s == ">=") return Cmp::GE;
  if (s == ">") return Cmp::GT;
  throw ParseError("unknown comparison '" + s + "'", line);
}

std::string cmp_text(Cmp c) {
  switch (c) {
    case Cmp::LT: return "<";
    case Cmp::LE: return "<=";
    case Cmp::EQ: return "=";
    case Cmp::GE: return ">=";
    case Cmp::GT: return ">";
  }
  return "?";
}

/// Parses "x<=1 & y<2" (whitespace already stripped between tokens is fine:
/// the caller joins the raw tokens back with spaces first).
ClockConstraint parse_guard(const std::string& text, const Automaton& a,
                            int line) {
  ClockConstraint g;
  std::string joined;
  for (char c : text)
    if (!std::isspace(static_cast<unsigned char>(c))) joined.push_back(c);
  if (joined.empty()) return g;
  std::size_t pos = 0;
  while (pos <= joined.size()) {
    auto amp = joined.find('&', pos);
    std::string atom = joined.substr(
        pos, amp == std::string::npos ? std::string::npos : amp - pos);
    if (atom.empty()) throw ParseError("empty guard atom", line);
    auto op = atom.find_first_of("<=>");
    if (op == std::string::npos || op == 0)
      throw ParseError("guard atom '" + atom + "' is not CLOCK CMP CONST",
                       line);
    auto op_end = op;
    while (op_end < atom.size() &&
           (atom[op_end] == '<' || atom[op_end] == '=' || atom[op_end] == '>'))
      ++op_end;
    std::string clock = atom.substr(0, op);
    std::string cmp = atom.substr(op, op_end - op);
    std::string num = atom.substr(op_end);
    int c = find_name(a.clocks, clock);
    if (c < 0) throw ParseError("unknown clock '" + clock + "'", line);
    if (num.empty() ||
        num.find_first_not_of("0123456789") != std::string::npos)
      throw ParseError("guard bound '" + num + "' is not a nonnegative integer",
                       line);
    long long bound = 0;
    try {
      bound = std::stoll(num);
    } catch (const std::exception&) {
      throw ParseError("guard bound '" + num + "' out of range", line);
    }
    if (bound > 1000000000)
      throw ParseError("guard bound '" + num + "' out of range", line);
    g.atoms.push_back(ClockAtom{c, parse_cmp(cmp, line),
                                static_cast<int>(bound)});
    if (amp == std::string::npos) break;
    pos = amp + 1;
  }
  return g;
}

std::string guard_text(const Automaton& a, const ClockConstraint& g) {
  std::string out;
  for (std::size_t i = 0; i < g.atoms.size(); ++i) {
    if (i) out += " & ";
    const auto& at = g.atoms[i];
    out += a.clocks[at.clock] + cmp_text(at.cmp) + std::to_string(at.bound);
  }
  return out;
}

LocId parse_loc(const Automaton& a, const std::string& s, int line) {
  int l = find_name(a.locations, s);
  if (l < 0) throw ParseError("unknown location '" + s + "'", line);
  return l;
}

ActionId parse_action(const Automaton& a, const std::string& s, int line) {
  ActionId act = a.action_of(s);
  if (act < -1000)  // sentinel from action_of for unknown names
    throw ParseError("unknown action '" + s + "'", line);
  return act;
}

}  // namespace

Automaton parse_model(const std::string& text) {
  auto lines = tokenize(text);
  Automaton a;
  bool saw_header = false;

  // First pass: the declarations everything else refers to.
  for (const auto& line : lines) {
    const auto& t = line.tokens;
    if (t[0] == "automaton") {
      if (saw_header) throw ParseError("second 'automaton' line", line.number);
      if (t.size() != 3)
        throw ParseError("'automaton NAME fa|ta' expected", line.number);
      a.name = t[1];
      if (t[2] == "fa")
        a.kind = Kind::FA;
      else if (t[2] == "ta")
        a.kind = Kind::TA;
      else
        throw ParseError("kind must be 'fa' or 'ta'", line.number);
      saw_header = true;
    } else if (t[0] == "alphabet") {
      a.alphabet.insert(a.alphabet.end(), t.begin() + 1, t.end());
    } else if (t[0] == "clocks") {
      a.clocks.insert(a.clocks.end(), t.begin() + 1, t.end());
    } else if (t[0] == "locations") {
      a.locations.insert(a.locations.end(), t.begin() + 1, t.end());
    }
  }
  if (!saw_header) throw ParseError("missing 'automaton NAME fa|ta' line", 1);
  if (a.locations.empty()) throw ParseError("no locations declared", 1);
  a.invariants.assign(a.locations.size(), ClockConstraint{});

  bool saw_initial = false;
  for (const auto& line : lines) {
    const auto& t = line.tokens;
    if (t[0] == "automaton" || t[0] == "alphabet" || t[0] == "clocks" ||
        t[0] == "locations")
      continue;
    if (t[0] == "initial") {
      if (t.size() != 2) throw ParseError("'initial LOC' expected", line.number);
      a.initial = parse_loc(a, t[1], line.number);
      saw_initial = true;
    } else if (t[0] == "invariant") {
      if (t.size() < 3)
        throw ParseError("'invariant LOC ATOMS' expected", line.number);
      LocId l = parse_loc(a, t[1], line.number);
      std::string rest;
      for (std::size_t i = 2; i < t.size(); ++i) rest += t[i] + " ";
      a.invariants[l] = a.invariants[l].conjoin(
          parse_guard(rest, a, line.number));
    } else if (t[0] == "trans") {
      if (t.size() < 4)
        throw ParseError("'trans FROM ACTION TO [when G] [reset C..]' expected",
                         line.number);
      Transition tr;
      tr.from = parse_loc(a, t[1], line.number);
      tr.action = parse_action(a, t[2], line.number);
      tr.to = parse_loc(a, t[3], line.number);
      std::size_t i = 4;
      if (i < t.size() && t[i] == "when") {
        ++i;
        std::string g;
        while (i < t.size() && t[i] != "reset") g += t[i++] + " ";
        if (g.empty()) throw ParseError("'when' with no guard", line.number);
        tr.guard = parse_guard(g, a, line.number);
      }
      if (i < t.size() && t[i] == "reset") {
        ++i;
        while (i < t.size()) {
          int c = find_name(a.clocks, t[i]);
          if (c < 0)
            throw ParseError("unknown clock '" + t[i] + "'", line.number);
          tr.resets.push_back(c);
          ++i;
        }
        if (tr.resets.empty())
          throw ParseError("'reset' with no clocks", line.number);
        std::sort(tr.resets.begin(), tr.resets.end());
        tr.resets.erase(std::unique(tr.resets.begin(), tr.resets.end()),
                        tr.resets.end());
      }
      if (i < t.size())
        throw ParseError("trailing tokens on trans line", line.number);
      a.transitions.push_back(std::move(tr));
    } else if (t[0] == "final" || t[0] == "repeated") {
      auto& set = t[0] == "final" ? a.finals : a.repeated;
      for (std::size_t i = 1; i < t.size(); ++i)
        set.push_back(parse_loc(a, t[i], line.number));
    } else {
      throw ParseError("unknown directive '" + t[0] + "'", line.number);
    }
  }
  if (!saw_initial) throw ParseError("missing 'initial' line", 1);
  for (auto* set : {&a.finals, &a.repeated}) {
    std::sort(set->begin(), set->end());
    set->erase(std::unique(set->begin(), set->end()), set->end());
  }
  return a;
}

Automaton parse_model_file(const std::string& path) {
  return parse_model(read_file(path));
}

std::string write_model(const Automaton& a) {
  std::ostringstream out;
  out << "automaton " << (a.name.empty() ? "model" : a.name) << ' '
      << (a.kind == Kind::FA ? "fa" : "ta") << '\n';
  if (!a.alphabet.empty()) {
    out << "alphabet";
    for (const auto& s : a.alphabet) out << ' ' << s;
    out << '\n';
  }
  if (!a.clocks.empty()) {
    out << "clocks";
    for (const auto& s : a.clocks) out << ' ' << s;
    out << '\n';
  }
  out << "locations";
  for (const auto& s : a.locations) out << ' ' << s;
  out << '\n';
  out << "initial " << a.locations[a.initial] << '\n';
  for (LocId l = 0; l < static_cast<LocId>(a.locations.size()); ++l)
    if (!a.invariants[l].is_true())
      out << "invariant " << a.locations[l] << ' '
          << guard_text(a, a.invariants[l]) << '\n';
  for (const auto& tr : a.transitions) {
    out << "trans " << a.locations[tr.from] << ' ' << a.action_name(tr.action)
        << ' ' << a.locations[tr.to];
    if (!tr.guard.is_true()) out << " when " << guard_text(a, tr.guard);
    if (!tr.resets.empty()) {
      out << " reset";
      for (ClockId c : tr.resets) out << ' ' << a.clocks[c];
    }
    out << '\n';
  }
  if (!a.finals.empty()) {
    out << "final";
    for (LocId l : a.finals) out << ' ' << a.locations[l];
    out << '\n';
  }
  if (!a.repeated.empty()) {
    out << "repeated";
    for (LocId l : a.repeated) out << ' ' << a.locations[l];
    out << '\n';
  }
  return out.str();
}

std::vector<std::vector<std::string>> parse_family(const std::string& text) {
  std::vector<std::vector<std::string>> sites;
  for (const auto& line : tokenize(text)) {
    if (line.tokens[0] != "site")
      throw ParseError("family lines start with 'site'", line.number);
    sites.emplace_back(line.tokens.begin() + 1, line.tokens.end());
  }
  if (sites.empty()) throw ParseError("no sites in the observation family", 1);
  return sites;
}

std::vector<std::vector<std::string>> parse_family_file(
    const std::string& path) {
  return parse_family(read_file(path));
}

std::string write_family(const std::vector<std::vector<std::string>>& sites) {
  std::ostringstream out;
  for (const auto& site : sites) {
    out << "site";
    for (const auto& s : site) out << ' ' << s;
    out << '\n';
  }
  return out.str();
}

std::vector<Resource> parse_resources(const std::string& text) {
  std::vector<Resource> rs;
  for (const auto& line : tokenize(text)) {
    const auto& t = line.tokens;
    if (t[0] == "resource") {
      if (t.size() != 1)
        throw ParseError("'resource' takes no arguments", line.number);
      rs.emplace_back();
      continue;
    }
    if (rs.empty())
      throw ParseError("directive before the first 'resource'", line.number);
    Resource& r = rs.back();
    if (t[0] == "alphabet") {
      r.alphabet.insert(r.alphabet.end(), t.begin() + 1, t.end());
    } else if (t[0] == "clocks") {
      r.clocks.insert(r.clocks.end(), t.begin() + 1, t.end());
      if (r.clocks.size() > 1)
        throw ParseError("diagnoser resources allow at most one clock",
                         line.number);
    } else if (t[0] == "maxconst") {
      if (t.size() != 2) throw ParseError("'maxconst N' expected", line.number);
      try {
        r.max_const = std::stoi(t[1]);
      } catch (const std::exception&) {
        throw ParseError("bad maxconst '" + t[1] + "'", line.number);
      }
      if (r.max_const < 0)
        throw ParseError("maxconst must be >= 0", line.number);
    } else if (t[0] == "granularity") {
      if (t.size() != 2)
        throw ParseError("'granularity D' expected", line.number);
      try {
        r.granularity_den = std::stoll(t[1]);
      } catch (const std::exception&) {
        throw ParseError("bad granularity '" + t[1] + "'", line.number);
      }
      if (r.granularity_den < 1)
        throw ParseError("granularity must be >= 1", line.number);
    } else {
      throw ParseError("unknown resource directive '" + t[0] + "'",
                       line.number);
    }
  }
  if (rs.empty()) throw ParseError("no resources", 1);
  return rs;
}

std::vector<Resource> parse_resources_file(const std::string& path) {
  return parse_resources(read_file(path));
}

std::string write_resources(const std::vector<Resource>& rs) {
  std::ostringstream out;
  for (const auto& r : rs) {
    out << "resource\n";
    if (!r.alphabet.empty()) {
      out << "alphabet";
      for (const auto& s : r.alphabet) out << ' ' << s;
      out << '\n';
    }
    if (!r.clocks.empty()) {
      out << "clocks";
      for (const auto& s : r.clocks) out << ' ' << s;
      out << '\n';
    }
    out << "maxconst " << r.max_const << '\n';
    out << "granularity " << r.granularity_den << '\n';
  }
  return out.str();
}

TimedWord parse_trace(const std::string& text, bool timed) {
  std::istringstream in(text);
  std::vector<std::string> tokens;
  std::string tok;
  while (in >> tok)
    if (tok[0] == '#') {  // comment: skip the rest of the line
      std::string rest;
      std::getline(in, rest);
    } else {
      tokens.push_back(tok);
    }
  TimedWord w;
  if (!timed) {
    w.letters = tokens;
    w.gaps.assign(tokens.size() + 1, Rat(0));
    return w;
  }
  if (tokens.size() % 2 == 0)
    throw ParseError(
        "timed trace must alternate duration letter ... duration", 1);
  w.gaps.clear();
  for (std::size_t i = 0; i < tokens.size(); ++i) {
    if (i % 2 == 0) {
      Rat d;
      if (!rat_parse(tokens[i], d))
        throw ParseError("bad duration '" + tokens[i] + "'", 1);
      if (d < Rat(0))
        throw ParseError("negative duration '" + tokens[i] + "'", 1);
      w.gaps.push_back(d);
    } else {
      w.letters.push_back(tokens[i]);
    }
  }
  return w;
}

std::string write_trace(const TimedWord& w, bool timed) {
  std::ostringstream out;
  if (!timed) {
    for (std::size_t i = 0; i < w.letters.size(); ++i) {
      if (i) out << ' ';
      out << w.letters[i];
    }
    return out.str();
  }
  for (std::size_t i = 0; i < w.letters.size(); ++i)
    out << rat_to_string(w.gaps[i]) << ' ' << w.letters[i] << ' ';
  out << rat_to_string(w.gaps.back());
  return out.str();
}

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error("cannot open '" + path + "'");
  std::ostringstream out;
  out << in.rdbuf();
  return out.str();
}

void write_file(const std::string& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error("cannot write '" + path + "'");
  out << text;
}

}  // namespace codiag
