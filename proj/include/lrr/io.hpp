#pragma once

#include <json.hpp>
#include <string>

#include "lrr/errors.hpp"
#include "lrr/sim.hpp"

namespace lrr::io {

// All run reports use nlohmann JSON with sorted object keys, which together
// with format_double makes serialization deterministic.
using json = nlohmann::json;

// Structural schema check for a run report produced by emit_reports: verifies
// the report kind, the config echo, and the kind-specific required fields and
// types. Throws IoError naming the first offending path.
void validate_report(const json& report);

// Shortest round-trip decimal representation (std::to_chars). Every number in
// the emitted CSV/JSON goes through here so re-runs are byte identical.
std::string format_double(double v);

// Creates the directory (and parents) and verifies it is writable by probing
// a temporary file. Throws IoError otherwise.
void ensure_output_dir(const std::string& dir);

void write_text_file(const std::string& path, const std::string& content);
std::string read_text_file(const std::string& path);

// DataRecord CSV: header "k,u,u_tilde,y", one row per k = 2-q .. N, with the
// y field empty for k <= 0 (outputs are only retained inside the window).
void write_data_csv(const std::string& path, const sim::DataRecord& rec);
sim::DataRecord read_data_csv(const std::string& path);

}  // namespace lrr::io
