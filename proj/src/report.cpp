#include "codiag/report.hpp"

#include "codiag/rational.hpp"

namespace codiag {

using nlohmann::json;

namespace {

json word_json(const Automaton& a, const TimedWord& w) {
  json j;
  j["letters"] = w.letters;
  if (a.kind == Kind::TA) {
    json gaps = json::array();
    for (const auto& g : w.gaps) gaps.push_back(rat_to_string(g));
    j["gaps"] = gaps;
    j["duration"] = rat_to_string(w.duration());
  }
  return j;
}

json site_names(const Automaton& a, const ObservationFamily& fam, int site) {
  json names = json::array();
  for (ActionId id : fam.sites[site]) names.push_back(a.alphabet[id]);
  return names;
}

json stats_json(const SearchStats& s) {
  json j;
  j["states"] = s.states;
  j["seconds"] = s.seconds;
  return j;
}

}  // namespace

json run_to_json(const Automaton& a, const Run& run) {
  json j;
  j["start"] = a.locations[run.start.loc];
  j["start_loc"] = run.start.loc;
  json clocks = json::array();
  for (const auto& c : run.start.clocks) clocks.push_back(rat_to_string(c));
  j["start_clocks"] = clocks;
  json steps = json::array();
  for (const auto& st : run.steps) {
    const auto& tr = a.transitions[st.trans];
    json s;
    s["trans"] = st.trans;
    if (a.kind == Kind::TA) s["delay"] = rat_to_string(st.delay);
    s["action"] = a.action_name(tr.action);
    s["from"] = a.locations[tr.from];
    s["to"] = a.locations[tr.to];
    steps.push_back(s);
  }
  j["steps"] = steps;
  if (a.kind == Kind::TA) j["trailing"] = rat_to_string(run.trailing);
  j["trace"] = word_json(a, trace_of(a, run));
  return j;
}

Run run_from_json(const Automaton& a, const json& j) {
  if (!j.is_object())
    throw ValidationError("run document must be a JSON object");
  Run r;
  try {
    r.start.loc = j.at("start_loc").get<int>();
    for (const auto& c : j.value("start_clocks", json::array())) {
      Rat v;
      if (!rat_parse(c.get<std::string>(), v))
        throw ValidationError("bad clock value in run document");
      r.start.clocks.push_back(v);
    }
    for (const auto& s : j.at("steps")) {
      RunStep st;
      st.trans = s.at("trans").get<int>();
      st.delay = Rat(0);
      if (s.contains("delay")) {
        if (!rat_parse(s.at("delay").get<std::string>(), st.delay))
          throw ValidationError("bad delay in run document");
      }
      r.steps.push_back(st);
    }
    r.trailing = Rat(0);
    if (j.contains("trailing")) {
      if (!rat_parse(j.at("trailing").get<std::string>(), r.trailing))
        throw ValidationError("bad trailing delay in run document");
    }
  } catch (const json::exception& e) {
    throw ValidationError(std::string("malformed run document: ") + e.what());
  }
  if (r.start.loc < 0 ||
      r.start.loc >= static_cast<LocId>(a.locations.size()))
    throw ValidationError("run start location out of range");
  if (r.start.clocks.size() != a.clocks.size())
    throw ValidationError("run start clock count mismatch");
  for (const auto& st : r.steps)
    if (st.trans < 0 ||
        st.trans >= static_cast<int>(a.transitions.size()))
      throw ValidationError("run transition index out of range");
  return r;
}

AmbiguousTuple tuple_from_json(const Automaton& a, const json& j) {
  const json* doc = &j;
  if (j.is_object() && j.contains("witness") && !j.at("witness").is_null())
    doc = &j.at("witness");
  if (!doc->is_object() || !doc->contains("faulty"))
    throw ValidationError("witness document carries no ambiguous tuple");
  AmbiguousTuple t;
  t.faulty = run_from_json(a, doc->at("faulty"));
  for (const auto& s : doc->value("per_site", json::array()))
    t.per_site.push_back(run_from_json(a, s.contains("run") ? s.at("run") : s));
  return t;
}

json tuple_to_json(const Automaton& a, const ObservationFamily& fam,
                   const AmbiguousTuple& t) {
  json j;
  j["faulty"] = run_to_json(a, t.faulty);
  json sites = json::array();
  for (std::size_t i = 0; i < t.per_site.size(); ++i) {
    json s;
    s["site"] = i;
    s["alphabet"] = site_names(a, fam, static_cast<int>(i));
    s["run"] = run_to_json(a, t.per_site[i]);
    std::vector<std::string> keep;
    for (ActionId id : fam.sites[i]) keep.push_back(a.alphabet[id]);
    s["projection"] = word_json(a, project(trace_of(a, t.per_site[i]), keep));
    sites.push_back(s);
  }
  j["per_site"] = sites;
  return j;
}

json verdict_report(const Automaton& a, const ObservationFamily& fam, int delta,
                    const DeltaVerdict& v) {
  json j;
  j["query"] = "delta-codiagnosability";
  j["model"] = a.name;
  j["kind"] = a.kind == Kind::TA ? "ta" : "fa";
  j["delta"] = delta;
  json sites = json::array();
  for (std::size_t i = 0; i < fam.size(); ++i)
    sites.push_back(site_names(a, fam, static_cast<int>(i)));
  j["sites"] = sites;
  j["codiagnosable"] = v.codiagnosable;
  j["witness"] =
      v.witness ? tuple_to_json(a, fam, *v.witness) : json(nullptr);
  j["stats"] = stats_json(v.stats);
  return j;
}

json verdict_report(const Automaton& a, const ObservationFamily& fam,
                    const CodiagVerdict& v) {
  json j;
  j["query"] = "codiagnosability";
  j["model"] = a.name;
  j["kind"] = a.kind == Kind::TA ? "ta" : "fa";
  json sites = json::array();
  for (std::size_t i = 0; i < fam.size(); ++i)
    sites.push_back(site_names(a, fam, static_cast<int>(i)));
  j["sites"] = sites;
  j["codiagnosable"] = v.codiagnosable;
  j["witness"] =
      v.witness ? tuple_to_json(a, fam, *v.witness) : json(nullptr);
  j["stats"] = stats_json(v.stats);
  return j;
}

json delay_report(const Automaton& a, const ObservationFamily& fam,
                  const OptimalDelayResult& r) {
  json j;
  j["query"] = "optimal-delay";
  j["model"] = a.name;
  j["kind"] = a.kind == Kind::TA ? "ta" : "fa";
  json sites = json::array();
  for (std::size_t i = 0; i < fam.size(); ++i)
    sites.push_back(site_names(a, fam, static_cast<int>(i)));
  j["sites"] = sites;
  j["optimal_delta"] = r.delta ? json(*r.delta) : json(nullptr);
  json probes = json::array();
  for (auto [d, ok] : r.probes) {
    json p;
    p["delta"] = d;
    p["codiagnosable"] = ok;
    probes.push_back(p);
  }
  j["probes"] = probes;
  j["stats"] = stats_json(r.stats);
  return j;
}

}  // namespace codiag
