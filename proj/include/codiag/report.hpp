#ifndef CODIAG_REPORT_HPP
#define CODIAG_REPORT_HPP

#include <json.hpp>

#include "codiag/automaton.hpp"
#include "codiag/codiag.hpp"
#include "codiag/runs.hpp"

namespace codiag {

nlohmann::json run_to_json(const Automaton& a, const Run& run);
nlohmann::json tuple_to_json(const Automaton& a, const ObservationFamily& fam,
                             const AmbiguousTuple& t);

/// Inverse of run_to_json / tuple_to_json on the machine-readable fields
/// (start_loc, start_clocks, steps[].trans, delays); throws ValidationError
/// on malformed or out-of-range input so witness files can be fed back and
/// re-verified.
Run run_from_json(const Automaton& a, const nlohmann::json& j);
AmbiguousTuple tuple_from_json(const Automaton& a, const nlohmann::json& j);

nlohmann::json verdict_report(const Automaton& a, const ObservationFamily& fam,
                              int delta, const DeltaVerdict& v);
nlohmann::json verdict_report(const Automaton& a, const ObservationFamily& fam,
                              const CodiagVerdict& v);
nlohmann::json delay_report(const Automaton& a, const ObservationFamily& fam,
                            const OptimalDelayResult& r);

}  // namespace codiag

#endif
