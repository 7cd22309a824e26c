#include "codiag/fixtures.hpp"

#include <algorithm>

#include "codiag/errors.hpp"

namespace codiag {
namespace {

Fixture make_remark() {
  const char* text = R"(
automaton remark ta
alphabet a
clocks x
locations L0 F1 F2 N1 N2 N3
initial L0
invariant L0 x<=1
invariant F1 x<=2
invariant N1 x<=2
invariant N2 x<=3
trans L0 fault F1 when x=1
trans F1 a F2 when x=2
trans F2 tau F2
trans L0 tau N1 when x=1
trans N1 tau N2 when x=2
trans N2 a N3 when x=3
trans N3 tau N3
)";
  Fixture f;
  f.name = "remark";
  f.model = parse_model(text);
  f.family = {{"a"}};
  f.delta = 1;
  f.resources = {Resource{{"a"}, {"u"}, 3, 1}};
  f.notes =
      "timed; the fault forces `a` at time 2, the healthy branch shows `a` at "
      "time 3: codiagnosable with delay 1, but any state estimate at fault "
      "age <= 1 still carries a healthy explanation";
  return f;
}

Fixture make_remark_u() {
  const char* text = R"(
automaton remark_u fa
alphabet a
locations L0 F1 F2 N1 N2 N3
initial L0
trans L0 fault F1
trans F1 a F2
trans F2 tau F2
trans L0 tau N1
trans N1 tau N2
trans N2 a N3
trans N3 tau N3
)";
  Fixture f;
  f.name = "remark-u";
  f.model = parse_model(text);
  f.family = {{"a"}};
  f.delta = 1;
  f.notes =
      "untimed skeleton of `remark`; with the timestamps gone the faulty and "
      "healthy branches share every trace, so no delay works";
  return f;
}

const char* kConfText = R"(
automaton conf fa
alphabet a b
locations V0 V1 V2 V3 A1 A2 B1 B2
initial V0
trans V0 fault V1
trans V1 a V2
trans V2 b V3
trans V3 tau V3
trans V0 tau A1
trans A1 a A2
trans A2 tau A2
trans V0 tau B1
trans B1 b B2
trans B2 tau B2
)";

Fixture make_conf() {
  Fixture f;
  f.name = "conf";
  f.model = parse_model(kConfText);
  f.family = {{"a"}, {"b"}};
  f.delta = 2;
  f.notes =
      "untimed confusion pattern: the faulty branch plays a.b while healthy "
      "branches play a or b alone; with split sites each stays confused "
      "forever, one joint site resolves it after both letters";
  return f;
}

Fixture make_conf_joint() {
  Fixture f;
  f.name = "conf-joint";
  f.model = parse_model(kConfText);
  f.family = {{"a", "b"}};
  f.delta = 2;
  f.notes = "the `conf` model under the single all-seeing site; delay 2 works";
  return f;
}

Fixture make_codiag_ok() {
  const char* text = R"(
automaton codiag_ok fa
alphabet a b
locations C0 C1 C2 D1 D2
initial C0
trans C0 fault C1
trans C1 a C2
trans C2 tau C2
trans C0 tau D1
trans D1 b D2
trans D2 tau D2
)";
  Fixture f;
  f.name = "codiag-ok";
  f.model = parse_model(text);
  f.family = {{"a"}, {"b"}};
  f.delta = 1;
  f.notes =
      "the faulty branch's first observable letter already separates it; "
      "delay 1 under split sites";
  return f;
}

Fixture make_conf_ta() {
  const char* text = R"(
automaton conf_ta ta
alphabet a b
clocks x
locations L0 C1 C2 C3 NA1 NA2 NB1 NB2
initial L0
invariant L0 x<=1
invariant C1 x<=2
invariant C2 x<=2
invariant NA1 x<=3
invariant NB1 x<=3
trans L0 fault C1 when x=1
trans C1 a C2 when x=2
trans C2 b C3 when x=2
trans C3 tau C3
trans L0 tau NA1 when x=1
trans NA1 a NA2 when x=3
trans NA2 tau NA2
trans L0 tau NB1 when x=1
trans NB1 b NB2 when x=3
trans NB2 tau NB2
)";
  Fixture f;
  f.name = "conf-ta";
  f.model = parse_model(text);
  f.family = {{"a"}, {"b"}};
  f.delta = 1;
  f.resources = {Resource{{"a"}, {"u"}, 3, 1}, Resource{{"b"}, {"u"}, 3, 1}};
  f.notes =
      "timed variant of `conf`: guards pin the faulty a to time 2 and the "
      "healthy a to time 3, so the a-site alone resolves the confusion with "
      "delay 1";
  return f;
}

}  // namespace

Fixture builtin_fixture(const std::string& name) {
  if (name == "remark") return make_remark();
  if (name == "remark-u") return make_remark_u();
  if (name == "conf") return make_conf();
  if (name == "conf-joint") return make_conf_joint();
  if (name == "codiag-ok") return make_codiag_ok();
  if (name == "conf-ta") return make_conf_ta();
  throw ValidationError("unknown fixture '" + name + "'");
}

std::vector<std::string> builtin_fixture_names() {
  return {"remark", "remark-u", "conf", "conf-joint", "codiag-ok", "conf-ta"};
}

Fixture intersection_fixture(const std::vector<Automaton>& dfas) {
  if (dfas.size() < 2)
    throw ValidationError("intersection fixture needs at least two automata");
  std::vector<std::string> alphabet;
  for (const auto& d : dfas) {
    if (d.kind != Kind::FA)
      throw ValidationError("intersection fixture needs finite automata");
    if (d.alphabet.empty())
      throw ValidationError("intersection fixture needs nonempty alphabets");
    for (const auto& s : d.alphabet)
      if (std::find(alphabet.begin(), alphabet.end(), s) == alphabet.end())
        alphabet.push_back(s);
    for (const auto& t : d.transitions)
      if (!is_observable(t.action))
        throw ValidationError(
            "intersection fixture needs letter-only automata");
  }
  const int k = static_cast<int>(dfas.size());

  Automaton m;
  m.kind = Kind::FA;
  m.name = "intersection";
  m.alphabet = alphabet;
  // lam follows the fault; picker letters route to the comparison branches.
  int lam = static_cast<int>(m.alphabet.size());
  m.alphabet.push_back("lam");
  std::vector<int> pick(k, -1);
  for (int i = 1; i < k; ++i) {
    pick[i] = static_cast<int>(m.alphabet.size());
    m.alphabet.push_back("pick" + std::to_string(i + 1));
  }
  auto letter_id = [&](const std::string& s) {
    return static_cast<ActionId>(
        std::find(m.alphabet.begin(), m.alphabet.end(), s) -
        m.alphabet.begin());
  };

  auto add_loc = [&](const std::string& name) {
    m.locations.push_back(name);
    return static_cast<LocId>(m.locations.size()) - 1;
  };
  LocId iota = add_loc("iota");
  m.initial = iota;
  std::vector<LocId> base(k);
  for (int i = 0; i < k; ++i) {
    base[i] = static_cast<LocId>(m.locations.size());
    for (const auto& ln : dfas[i].locations)
      add_loc("c" + std::to_string(i + 1) + "_" + ln);
  }
  LocId e = add_loc("e");
  LocId eprime = add_loc("eprime");
  std::vector<LocId> bot(k, -1);
  for (int i = 1; i < k; ++i)
    bot[i] = add_loc("bot" + std::to_string(i + 1));

  auto add_trans = [&](LocId from, ActionId act, LocId to) {
    Transition t;
    t.from = from;
    t.action = act;
    t.to = to;
    m.transitions.push_back(t);
  };
  add_trans(iota, kTau, base[0] + dfas[0].initial);
  for (int i = 1; i < k; ++i)
    add_trans(iota, pick[i], base[i] + dfas[i].initial);
  for (int i = 0; i < k; ++i)
    for (const auto& t : dfas[i].transitions)
      add_trans(base[i] + t.from, letter_id(dfas[i].alphabet[t.action]),
                base[i] + t.to);
  for (LocId q : dfas[0].finals) add_trans(base[0] + q, kFault, e);
  add_trans(e, lam, eprime);
  add_trans(eprime, kTau, eprime);
  for (int i = 1; i < k; ++i) {
    for (LocId q : dfas[i].finals) add_trans(base[i] + q, lam, bot[i]);
    add_trans(bot[i], kTau, bot[i]);
  }
  m.invariants.assign(m.locations.size(), ClockConstraint{});
  m = add_tau_loops(m);

  Fixture f;
  f.name = "intersection";
  f.model = std::move(m);
  for (int i = 1; i < k; ++i) {
    std::vector<std::string> site;
    for (const auto& s : f.model.alphabet)
      if (s != "pick" + std::to_string(i + 1)) site.push_back(s);
    f.family.push_back(std::move(site));
  }
  f.delta = 1;
  f.notes =
      "codiagnosable with delay 1 exactly when the component languages have "
      "empty intersection: a shared word lets the post-fault lam stay "
      "ambiguous at every site forever";
  return f;
}

std::vector<Automaton> chain_dfas(int k, bool empty) {
  if (k < 2) throw ValidationError("chain needs at least two automata");
  std::vector<Automaton> out;
  for (int j = 0; j < k; ++j) {
    Automaton d;
    d.kind = Kind::FA;
    d.name = "chain" + std::to_string(j + 1);
    d.alphabet = {"zero", "one"};
    // Length counters mod p: p = j+1 normally; the `empty` variant pits an
    // even-length language against an odd-length one.
    int p = empty ? (j == 0 ? 2 : (j == 1 ? 2 : 1)) : j + 1;
    for (int s = 0; s < p; ++s) d.locations.push_back("m" + std::to_string(s));
    d.initial = 0;
    for (int s = 0; s < p; ++s)
      for (ActionId act = 0; act < 2; ++act) {
        Transition t;
        t.from = s;
        t.action = act;
        t.to = (s + 1) % p;
        d.transitions.push_back(t);
      }
    // Non-empty variant: length = p-1 mod p per component, met first at the
    // CRT solution, so the shortest shared word grows with k.
    int accept = empty ? (j == 1 ? 1 % p : 0) : p - 1;
    d.finals = {accept};
    d.invariants.assign(d.locations.size(), ClockConstraint{});
    out.push_back(std::move(d));
  }
  return out;
}

std::vector<Automaton> kozen_chain(const std::vector<Automaton>& dfas) {
  if (dfas.empty())
    throw ValidationError("the chain needs at least one automaton");
  std::vector<std::string> alphabet;
  for (const auto& d : dfas) {
    if (d.kind != Kind::FA)
      throw ValidationError("the chain needs finite automata");
    for (const auto& t : d.transitions)
      if (!is_observable(t.action))
        throw ValidationError("the chain needs letter-only automata");
    for (const auto& s : d.alphabet)
      if (std::find(alphabet.begin(), alphabet.end(), s) == alphabet.end())
        alphabet.push_back(s);
  }
  std::string lam = "lam";
  while (std::find(alphabet.begin(), alphabet.end(), lam) != alphabet.end())
    lam += "_";
  alphabet.push_back(lam);
  ActionId lam_id = static_cast<ActionId>(alphabet.size()) - 1;

  std::vector<Automaton> out;
  for (std::size_t i = 0; i < dfas.size(); ++i) {
    const Automaton& d = dfas[i];
    Automaton x;
    x.kind = Kind::FA;
    x.name = d.name.empty() ? "chain" + std::to_string(i + 1) : d.name + "_l";
    x.alphabet = alphabet;
    x.locations = d.locations;
    std::string botname = "bot";
    while (std::find(x.locations.begin(), x.locations.end(), botname) !=
           x.locations.end())
      botname += "_";
    x.locations.push_back(botname);
    LocId bot = static_cast<LocId>(x.locations.size()) - 1;
    x.initial = d.initial;
    for (const auto& t : d.transitions) {
      Transition nt = t;
      nt.action = static_cast<ActionId>(
          std::find(alphabet.begin(), alphabet.end(), d.alphabet[t.action]) -
          alphabet.begin());
      x.transitions.push_back(nt);
    }
    for (LocId q : d.finals) {
      Transition t;
      t.from = q;
      t.action = lam_id;
      t.to = bot;
      x.transitions.push_back(t);
    }
    if (i == 0)
      x.finals = {bot};
    else
      for (LocId l = 0; l <= bot; ++l) x.finals.push_back(l);
    x.invariants.assign(x.locations.size(), ClockConstraint{});
    out.push_back(std::move(x));
  }
  return out;
}

}  // namespace codiag
