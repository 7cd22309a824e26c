#include "cli.hpp"

#include <CLI11.hpp>
#include <filesystem>
#include <json.hpp>
#include <ostream>
#include <set>
#include <sstream>

#include "codiag/codiag.hpp"
#include "codiag/dta_game.hpp"
#include "codiag/errors.hpp"
#include "codiag/fixtures.hpp"
#include "codiag/model_io.hpp"
#include "codiag/regions.hpp"
#include "codiag/report.hpp"
#include "codiag/synth.hpp"

namespace {

using nlohmann::json;
using namespace codiag;

constexpr int kOk = 0;
constexpr int kNegative = 1;  // not codiagnosable / verification failed
constexpr int kInputError = 2;
constexpr int kBudget = 3;

Automaton load_model(const std::string& path, std::ostream& err) {
  Automaton a = parse_model_file(path);
  ValidationReport rep = validate(a);
  for (const auto& w : rep.warnings) err << path << ": warning: " << w << "\n";
  if (!rep.ok()) {
    std::string msg = path + ": invalid model";
    for (const auto& e : rep.errors) msg += "\n  " + e;
    throw ValidationError(msg);
  }
  return a;
}

ObservationFamily load_family(const Automaton& a, const std::string& path) {
  return family_from_names(a, parse_family_file(path));
}

/// Fault channels present in the model, in increasing channel number.
std::vector<int> fault_channels(const Automaton& a) {
  std::set<int> chans;
  for (const auto& t : a.transitions)
    if (is_fault(t.action)) chans.insert(fault_channel(t.action));
  return {chans.begin(), chans.end()};
}

/// The automaton an analysis runs on for channel k: the model itself for
/// single-channel models (keeping transition indices stable for witnesses),
/// otherwise the channel-k projection.
Automaton analyzed_model(const Automaton& a, int channel, bool multi) {
  return multi ? select_fault_channel(a, channel) : a;
}

std::string trace_line(const Automaton& a, const Run& r) {
  return write_trace(trace_of(a, r), a.kind == Kind::TA);
}

void print_witness(std::ostream& out, const Automaton& a,
                   const AmbiguousTuple& t) {
  out << "  faulty trace: " << trace_line(a, t.faulty) << "\n";
  for (std::size_t i = 0; i < t.per_site.size(); ++i)
    out << "  site " << i << " twin: " << trace_line(a, t.per_site[i]) << "\n";
}

void write_report(const std::string& path, const json& j) {
  if (!path.empty()) write_file(path, j.dump(2) + "\n");
}

json witness_doc(const Automaton& a, const ObservationFamily& fam,
                 const AmbiguousTuple& t, int channel,
                 std::optional<int> delta) {
  json j;
  j["model"] = a.name;
  j["channel"] = channel;
  if (delta) j["delta"] = *delta;
  j["witness"] = tuple_to_json(a, fam, t);
  return j;
}

struct CommonArgs {
  std::string model;
  std::string family;
  std::string report;
  std::string witness = "witness.json";
  std::size_t max_states = 1000000;
};

void add_common(CLI::App* sc, CommonArgs& c, bool with_family = true) {
  sc->add_option("model", c.model, "model file")->required();
  if (with_family)
    sc->add_option("--family", c.family, "observation family file")
        ->required();
  sc->add_option("--report", c.report, "write the JSON report here");
  sc->add_option("--witness", c.witness,
                 "witness file on a negative verdict (default witness.json)");
  sc->add_option("--max-states", c.max_states,
                 "state budget for searches (default 1e6)");
}

int run_check_delta(const CommonArgs& c, int delta, std::ostream& out,
                    std::ostream& err) {
  Automaton a = load_model(c.model, err);
  ObservationFamily fam = load_family(a, c.family);
  SearchBudget budget{c.max_states};
  auto channels = fault_channels(a);
  bool multi = channels.size() > 1;
  if (channels.empty()) channels = {1};
  json reports = json::array();
  bool all_ok = true;
  for (int k : channels) {
    Automaton m = analyzed_model(a, k, multi);
    DeltaVerdict v = check_delta_codiag(m, delta, fam, budget);
    json rep = verdict_report(m, fam, delta, v);
    rep["channel"] = k;
    reports.push_back(rep);
    if (multi) out << "fault channel " << k << ":\n";
    out << (v.codiagnosable ? "codiagnosable" : "NOT codiagnosable")
        << " at delay " << delta << " (" << v.stats.states << " states, "
        << v.stats.seconds << "s)\n";
    if (!v.codiagnosable && v.witness) {
      print_witness(out, m, *v.witness);
      if (all_ok && !c.witness.empty()) {
        write_file(c.witness,
                   witness_doc(m, fam, *v.witness, k, delta).dump(2) + "\n");
        out << "witness written to " << c.witness << "\n";
      }
      all_ok = false;
    }
  }
  write_report(c.report, multi ? json{{"channels", reports}} : reports[0]);
  return all_ok ? kOk : kNegative;
}

int run_check(const CommonArgs& c, std::ostream& out, std::ostream& err) {
  Automaton a = load_model(c.model, err);
  ObservationFamily fam = load_family(a, c.family);
  SearchBudget budget{c.max_states};
  auto channels = fault_channels(a);
  bool multi = channels.size() > 1;
  if (channels.empty()) channels = {1};
  json reports = json::array();
  bool all_ok = true;
  for (int k : channels) {
    Automaton m = analyzed_model(a, k, multi);
    CodiagVerdict v = check_codiag(m, fam, budget);
    json rep = verdict_report(m, fam, v);
    rep["channel"] = k;
    reports.push_back(rep);
    if (multi) out << "fault channel " << k << ":\n";
    out << (v.codiagnosable ? "codiagnosable for some finite delay"
                            : "NOT codiagnosable for any delay")
        << " (" << v.stats.states << " states, " << v.stats.seconds << "s)\n";
    if (!v.codiagnosable && v.witness) {
      print_witness(out, m, *v.witness);
      if (all_ok && !c.witness.empty()) {
        write_file(c.witness,
                   witness_doc(m, fam, *v.witness, k, std::nullopt).dump(2) +
                       "\n");
        out << "witness written to " << c.witness << "\n";
      }
      all_ok = false;
    }
  }
  write_report(c.report, multi ? json{{"channels", reports}} : reports[0]);
  return all_ok ? kOk : kNegative;
}

int run_optimal_delay(const CommonArgs& c, std::ostream& out,
                      std::ostream& err) {
  Automaton a = load_model(c.model, err);
  ObservationFamily fam = load_family(a, c.family);
  SearchBudget budget{c.max_states};
  auto channels = fault_channels(a);
  bool multi = channels.size() > 1;
  if (channels.empty()) channels = {1};
  json reports = json::array();
  std::optional<int> overall = 0;
  for (int k : channels) {
    Automaton m = analyzed_model(a, k, multi);
    OptimalDelayResult r = optimal_delay(m, fam, budget);
    json rep = delay_report(m, fam, r);
    rep["channel"] = k;
    reports.push_back(rep);
    if (multi) out << "fault channel " << k << ":\n";
    if (r.delta) {
      out << "optimal delay " << *r.delta << " (" << r.probes.size()
          << " probes, " << r.stats.states << " states, " << r.stats.seconds
          << "s)\n";
      if (overall && *r.delta > *overall) overall = *r.delta;
    } else {
      out << "no finite delay works (" << r.stats.states << " states)\n";
      overall = std::nullopt;
      CodiagVerdict v = check_codiag(m, fam, budget);
      if (v.witness) {
        print_witness(out, m, *v.witness);
        if (!c.witness.empty()) {
          write_file(c.witness,
                     witness_doc(m, fam, *v.witness, k, std::nullopt).dump(2) +
                         "\n");
          out << "witness written to " << c.witness << "\n";
        }
      }
    }
  }
  if (multi && overall)
    out << "all channels codiagnosable; worst-channel delay " << *overall
        << "\n";
  write_report(c.report, multi ? json{{"channels", reports}} : reports[0]);
  return overall ? kOk : kNegative;
}

int run_synthesize(const CommonArgs& c, int delta, const std::string& outdir,
                   std::ostream& out, std::ostream& err) {
  Automaton a = load_model(c.model, err);
  ObservationFamily fam = load_family(a, c.family);
  auto channels = fault_channels(a);
  bool multi = channels.size() > 1;
  if (channels.empty()) channels = {1};
  std::filesystem::create_directories(outdir);
  for (int k : channels) {
    Automaton m = analyzed_model(a, k, multi);
    std::vector<SiteDiagnoser> ds;
    try {
      ds = synthesize_fa_codiagnosers(m, delta, fam);
    } catch (const NotCodiagnosable& e) {
      out << "cannot synthesize: " << e.what() << "\n";
      DeltaVerdict v = check_delta_codiag(m, delta, fam,
                                          SearchBudget{c.max_states});
      if (v.witness) {
        print_witness(out, m, *v.witness);
        if (!c.witness.empty()) {
          write_file(c.witness,
                     witness_doc(m, fam, *v.witness, k, delta).dump(2) + "\n");
          out << "witness written to " << c.witness << "\n";
        }
      }
      return kNegative;
    }
    std::string prefix = multi ? "ch" + std::to_string(k) + "_" : "";
    for (const auto& d : ds) {
      auto path = std::filesystem::path(outdir) /
                  (prefix + "site" + std::to_string(d.site) + ".model");
      write_file(path.string(), "# diagnoser for site " +
                                    std::to_string(d.site) + ", delay " +
                                    std::to_string(delta) + "\n" +
                                    write_model(d.dfa));
      out << "wrote " << path.string() << " (" << d.dfa.locations.size()
          << " states)\n";
    }
  }
  return kOk;
}

int run_estimate(const std::string& model, const std::string& family, int site,
                 int delta, const std::string& tracefile, std::ostream& out,
                 std::ostream& err) {
  Automaton a = load_model(model, err);
  std::vector<std::string> letters;
  if (!family.empty()) {
    auto fam = parse_family_file(family);
    if (site < 0 || site >= static_cast<int>(fam.size()))
      throw ValidationError("site index out of range for the family file");
    letters = fam[site];
  } else {
    letters = a.alphabet;  // single all-seeing site
  }
  Estimator est(a, letters, delta);
  TimedWord w = parse_trace(read_file(tracefile), true);
  auto show = [&](const Estimator::Verdict& v, const std::string& what) {
    out << what << ": " << (v.announce ? "ANNOUNCE" : "silent") << " {";
    for (std::size_t i = 0; i < v.items.size(); ++i) {
      if (i) out << ", ";
      out << a.locations[v.items[i].loc] << (v.items[i].faulty ? "!" : "");
    }
    out << "}\n";
  };
  show(est.current(), "start");
  for (std::size_t i = 0; i < w.letters.size(); ++i) {
    est.advance(w.gaps[i]);
    show(est.observe(w.letters[i]),
         "after " + rat_to_string(w.gaps[i]) + " " + w.letters[i]);
  }
  show(est.advance(w.gaps.back()),
       "after trailing " + rat_to_string(w.gaps.back()));
  return kOk;
}

int run_region_graph(const std::string& model, const std::string& outfile,
                     std::size_t max_states, std::ostream& out,
                     std::ostream& err) {
  Automaton a = load_model(model, err);
  RegionGraph rg = region_graph(a, max_states);
  Automaton ra = region_graph_automaton(a, rg);
  if (!outfile.empty()) write_file(outfile, write_model(ra));
  out << "region graph: " << rg.nodes.size() << " nodes, " << rg.edges.size()
      << " edges";
  if (!outfile.empty()) out << ", written to " << outfile;
  out << "\n";
  return kOk;
}

int run_dta_synth(const std::string& model, int delta,
                  const std::string& resfile, const std::string& outdir,
                  std::size_t max_nodes, std::ostream& out,
                  std::ostream& err) {
  Automaton a = load_model(model, err);
  auto res = parse_resources_file(resfile);
  DtaSynthesisResult r = codiag_dta_synthesis(a, delta, res, max_nodes);
  out << "winning sites:";
  for (int s : r.winning_sites) out << " " << s;
  if (r.winning_sites.empty()) out << " none";
  out << "\n";
  if (!r.success) {
    out << "no diagnoser tuple within the given resources: " << r.note
        << "\n";
    return kNegative;
  }
  std::filesystem::create_directories(outdir);
  for (const auto& d : r.diagnosers) {
    auto path = std::filesystem::path(outdir) /
                ("dta_site" + std::to_string(d.site) + ".model");
    write_file(path.string(),
               "# granularity 1/" + std::to_string(d.granularity_den) + "\n" +
                   write_model(d.dta));
    out << "wrote " << path.string() << " (" << d.dta.locations.size()
        << " states, granularity 1/" << d.granularity_den << ")\n";
  }
  out << "strategy: " << r.note << "\n";
  return kOk;
}

int run_verify(const std::string& model, const std::string& family,
               const std::string& witnessfile, int delta_flag,
               std::ostream& out, std::ostream& err) {
  Automaton a = load_model(model, err);
  ObservationFamily fam = load_family(a, family);
  json j;
  try {
    j = json::parse(read_file(witnessfile));
  } catch (const json::exception& e) {
    throw ValidationError(std::string("bad witness file: ") + e.what());
  }
  int channel = j.value("channel", 1);
  auto channels = fault_channels(a);
  Automaton m = analyzed_model(a, channel, channels.size() > 1);
  int delta = delta_flag >= 0 ? delta_flag : j.value("delta", 0);
  AmbiguousTuple t = tuple_from_json(m, j);
  VerifyResult r = verify_ambiguous_tuple(m, delta, fam, t);
  if (r.ok) {
    out << "witness verified: ambiguous at delay " << delta << "\n";
    return kOk;
  }
  out << "witness REJECTED: " << r.reason << "\n";
  return kNegative;
}

int run_gen_fixture(const std::string& name_in, const std::string& outdir,
                    int k, bool nonempty, std::ostream& out) {
  std::string name;
  for (char ch : name_in)
    name += static_cast<char>(std::tolower(static_cast<unsigned char>(ch)));
  std::filesystem::create_directories(outdir);
  auto outpath = [&](const std::string& f) {
    return (std::filesystem::path(outdir) / f).string();
  };
  if (name == "list") {
    for (const auto& n : builtin_fixture_names()) out << n << "\n";
    out << "kozen-chain (--k N, --nonempty)\n";
    out << "reduction-b (--k N, --nonempty)\n";
    return kOk;
  }
  if (name == "kozen-chain") {
    auto base = chain_dfas(k, !nonempty);
    auto chain = kozen_chain(base);
    for (std::size_t i = 0; i < base.size(); ++i) {
      write_file(outpath("kozen_in" + std::to_string(i + 1) + ".model"),
                 write_model(base[i]));
      write_file(outpath("kozen_out" + std::to_string(i + 1) + ".model"),
                 write_model(chain[i]));
    }
    out << "wrote " << base.size() << " input and " << chain.size()
        << " chained models in " << outdir << "\n"
        << "intersection is " << (nonempty ? "nonempty" : "empty")
        << " for both lists\n";
    return kOk;
  }
  if (name == "reduction-b") {
    Fixture f = intersection_fixture(chain_dfas(k, !nonempty));
    write_file(outpath("reduction-b.model"),
               "# " + f.notes + "\n" + write_model(f.model));
    write_file(outpath("reduction-b.family"), write_family(f.family));
    out << "wrote reduction-b.model and reduction-b.family in " << outdir
        << "\n"
        << "expected: " << (nonempty ? "NOT codiagnosable" : "codiagnosable")
        << " at delay " << f.delta << "\n";
    return kOk;
  }
  Fixture f = builtin_fixture(name);
  write_file(outpath(name + ".model"),
             "# " + f.notes + "\n" + write_model(f.model));
  out << "wrote " << outpath(name + ".model") << "\n";
  if (!f.family.empty()) {
    write_file(outpath(name + ".family"), write_family(f.family));
    out << "wrote " << outpath(name + ".family") << "\n";
  }
  if (!f.resources.empty()) {
    write_file(outpath(name + ".resources"), write_resources(f.resources));
    out << "wrote " << outpath(name + ".resources") << "\n";
  }
  out << "suggested delay: " << f.delta << "\n" << f.notes << "\n";
  return kOk;
}

}  // namespace

int cli_run(const std::vector<std::string>& args, std::ostream& out,
            std::ostream& err) {
  CLI::App app{"codiagnosability toolkit for finite and timed automata",
               "codiag"};
  app.require_subcommand(1);
  int code = kOk;

  CommonArgs cd;
  int cd_delta = 0;
  auto* sc_cd = app.add_subcommand(
      "check-delta", "decide delta-codiagnosability of a model");
  add_common(sc_cd, cd);
  sc_cd->add_option("--delta", cd_delta, "detection delay")->required();
  sc_cd->callback([&] { code = run_check_delta(cd, cd_delta, out, err); });

  CommonArgs ck;
  auto* sc_ck = app.add_subcommand(
      "check", "decide codiagnosability for some finite delay");
  add_common(sc_ck, ck);
  sc_ck->callback([&] { code = run_check(ck, out, err); });

  CommonArgs od;
  auto* sc_od = app.add_subcommand("optimal-delay",
                                   "smallest delay that is codiagnosable");
  add_common(sc_od, od);
  sc_od->callback([&] { code = run_optimal_delay(od, out, err); });

  CommonArgs sy;
  int sy_delta = 0;
  std::string sy_out = ".";
  auto* sc_sy = app.add_subcommand(
      "synthesize", "build per-site diagnoser DFAs for a finite automaton");
  add_common(sc_sy, sy);
  sc_sy->add_option("--delta", sy_delta, "detection delay")->required();
  sc_sy->add_option("--out", sy_out, "output directory (default .)");
  sc_sy->callback(
      [&] { code = run_synthesize(sy, sy_delta, sy_out, out, err); });

  std::string es_model, es_family, es_trace;
  int es_site = 0, es_delta = 0;
  auto* sc_es = app.add_subcommand(
      "estimate", "replay a timed trace through the online state estimator");
  sc_es->add_option("model", es_model, "model file")->required();
  sc_es->add_option("--site", es_site, "site index into the family");
  sc_es->add_option("--delta", es_delta, "detection delay")->required();
  sc_es->add_option("--trace", es_trace, "timed trace file")->required();
  sc_es->add_option("--family", es_family,
                    "observation family file (omit for an all-seeing site)");
  sc_es->callback([&] {
    code = run_estimate(es_model, es_family, es_site, es_delta, es_trace, out,
                        err);
  });

  std::string rg_model, rg_out;
  std::size_t rg_max = 1000000;
  auto* sc_rg =
      app.add_subcommand("region-graph", "export the region graph of a model");
  sc_rg->add_option("model", rg_model, "model file")->required();
  sc_rg->add_option("--out", rg_out, "write the region automaton here");
  sc_rg->add_option("--max-states", rg_max, "node budget (default 1e6)");
  sc_rg->callback(
      [&] { code = run_region_graph(rg_model, rg_out, rg_max, out, err); });

  std::string dt_model, dt_res, dt_out = ".";
  int dt_delta = 0;
  std::size_t dt_max = 200000;
  auto* sc_dt = app.add_subcommand(
      "dta-synth",
      "synthesize deterministic timed-automaton diagnosers via safety games");
  sc_dt->add_option("model", dt_model, "model file")->required();
  sc_dt->add_option("--delta", dt_delta, "detection delay")->required();
  sc_dt->add_option("--resources", dt_res, "per-site resource file")
      ->required();
  sc_dt->add_option("--out", dt_out, "output directory (default .)");
  sc_dt->add_option("--max-nodes", dt_max, "game budget (default 2e5)");
  sc_dt->callback([&] {
    code = run_dta_synth(dt_model, dt_delta, dt_res, dt_out, dt_max, out, err);
  });

  std::string vf_model, vf_family, vf_witness;
  int vf_delta = -1;
  auto* sc_vf = app.add_subcommand(
      "verify", "re-verify a witness file against model and family");
  sc_vf->add_option("model", vf_model, "model file")->required();
  sc_vf->add_option("--family", vf_family, "observation family file")
      ->required();
  sc_vf->add_option("--witness", vf_witness, "witness file")->required();
  sc_vf->add_option("--delta", vf_delta,
                    "delay to verify against (default: from the file)");
  sc_vf->callback([&] {
    code = run_verify(vf_model, vf_family, vf_witness, vf_delta, out, err);
  });

  std::string gf_name, gf_out = ".";
  int gf_k = 2;
  bool gf_nonempty = false;
  auto* sc_gf = app.add_subcommand(
      "gen-fixture", "write a built-in example model ('list' to enumerate)");
  sc_gf->add_option("name", gf_name, "fixture name")->required();
  sc_gf->add_option("--out", gf_out, "output directory (default .)");
  sc_gf->add_option("--k", gf_k, "component count for the generators");
  sc_gf->add_flag("--nonempty", gf_nonempty,
                  "make the generated intersection nonempty");
  sc_gf->callback(
      [&] { code = run_gen_fixture(gf_name, gf_out, gf_k, gf_nonempty, out); });

  std::string va_model;
  auto* sc_va = app.add_subcommand("validate", "parse and validate a model");
  sc_va->add_option("model", va_model, "model file")->required();
  sc_va->callback([&] {
    Automaton a = load_model(va_model, err);
    out << "ok: " << a.name << " ("
        << (a.kind == Kind::TA ? "timed" : "finite") << ", "
        << a.locations.size() << " locations, " << a.transitions.size()
        << " transitions)\n";
    code = kOk;
  });

  std::vector<const char*> argv;
  argv.push_back("codiag");
  for (const auto& s : args) argv.push_back(s.c_str());
  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::ParseError& e) {
    int rc = app.exit(e, out, err);
    return rc == 0 ? kOk : kInputError;
  } catch (const StateBudgetExceeded& e) {
    err << "budget exceeded: " << e.what() << "\n";
    return kBudget;
  } catch (const BudgetExceeded& e) {
    err << "budget exceeded: " << e.what() << "\n";
    return kBudget;
  } catch (const ParseError& e) {
    err << "parse error (line " << e.line << "): " << e.what() << "\n";
    return kInputError;
  } catch (const NotCodiagnosable& e) {
    err << e.what() << "\n";
    return kNegative;
  } catch (const Error& e) {
    err << "error: " << e.what() << "\n";
    return kInputError;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return kInputError;
  }
  return code;
}
