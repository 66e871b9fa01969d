// File formats and built-in fixtures for the command-line front end. States
// and channels are JSON documents with complex entries written as [re, im]
// pairs; a handful of named fixtures ("ghz", "bell", "product", "dephasing",
// "identity") can be used in place of a file path.

#pragma once

#include <string>
#include <vector>

#include <json.hpp>

#include "qsand/channels.hpp"
#include "qsand/entropy.hpp"

namespace qsand {

inline constexpr const char* kToolVersion = "0.1.0";

// Bad files, unknown fixtures, malformed grids. Mapped to usage-error exit.
struct ParseError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// `spec` is either a fixture ("ghz", "bell:2,2", "product:2,3,2") or a path
// to a state file: {"layout": [["A",2],...], "matrix": [[[re,im],...],...]}
// or {"fixture": "...", "dims": [...]}.
DensityMatrix load_state(const std::string& spec);

// `spec` is either a fixture ("dephasing:2", "identity:4", with an optional
// "@LABEL" suffix naming the subsystem acted on) or a path to a channel
// file: {"d": 2, "m": 2, "operators": [...], "acting_on": "B"} or
// {"fixture": "...", "d": ..., "acting_on": "..."}.
KrausSet load_channel(const std::string& spec);

DensityMatrix fixture_state(const std::string& name, const std::vector<int>& dims);
KrausSet fixture_channel(const std::string& name, int d, const std::string& acting_on);

ComplexMatrix matrix_from_json(const nlohmann::json& grid, const std::string& where);
nlohmann::json matrix_to_json(const ComplexMatrix& m);

// 17 significant digits: round-trips IEEE doubles exactly.
std::string format_full(double v);
// 12 significant digits for printed values; infinity prints as "inf".
std::string format_value(double v);

} // namespace qsand
