#pragma once

// Model files and tabular output.
//
// Model JSON:
//   {"gaussian": s2, "drift": d,
//    "up":   {"rate": l, "phases": {"a": [...], "T": [[...], ...]}} | null,
//    "down": {...} | null}
//
// Every ValidationError carries the path of the offending entry, e.g.
// "down.phases.T[0][0]" or "up.rate".

#include <iosfwd>
#include <string>

#include "json.hpp"
#include "levy/american.hpp"
#include "levy/model.hpp"
#include "levy/wiener_hopf.hpp"

namespace levy {

LevyModel model_from_json(const nlohmann::json& j);
nlohmann::json model_to_json(const LevyModel& m);
/// Reads and parses a model file; malformed JSON is a ValidationError on "".
LevyModel load_model(const std::string& path);

/// Shortest round-trip-safe rendering (17 significant digits, "C" locale
/// independent).
std::string format_double(double v);

/// Header: kind,re,im,multiplicity (kind is "root" or "pole").
void write_root_set_csv(std::ostream& os, const RootSet& rs);

/// First line "atom0,<value>", then header re_rho,im_rho,k,re_A,im_A.
void write_mixture_csv(std::ostream& os, const ExpMixture& mix);

/// Header: x,value.
void write_value_csv(std::ostream& os, const std::vector<double>& xs,
                     const std::vector<double>& values);

nlohmann::json to_json(const PutSolution& s);
nlohmann::json to_json(const RegularityReport& r);

}  // namespace levy
