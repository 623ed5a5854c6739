#pragma once

// File formats.
//
// Params: flat JSON object with keys q, a1..a4, b1..b4 and optional sign keys
// sa1..sa4, sb1..sb4 (+1 or -1). Rationals are JSON integers or "p/q"
// strings. Unknown keys are rejected.
//
// Tables: CSV with header "m,sy,Y,sz,Z", one row per index. Several tables
// in one file are separated by "# branch <id>" lines. The JSON form is
// {"branches": [{"id": k, "rows": [{"m":..,"sy":..,"Y":..,"sz":..,"Z":..}]}],
//  "truncated": bool}.

#include <iosfwd>
#include <string>
#include <vector>

#include "json.hpp"

#include "udp6/evolution.hpp"
#include "udp6/params.hpp"
#include "udp6/tropical.hpp"

namespace udp6 {

/// Integer JSON numbers for integral values, "p/q" strings otherwise.
nlohmann::json rational_to_json(const Rational& v);
/// Accepts JSON integers and rational strings; throws ParseError.
Rational rational_from_json(const nlohmann::json& j);

nlohmann::json params_to_json(const Params& p);
/// Throws ParseError on missing/unknown keys or malformed values.
Params params_from_json(const nlohmann::json& j);
Params load_params(const std::string& path);

nlohmann::json table_to_json(const SolutionTable& t);
SolutionTable table_from_json(const nlohmann::json& j);

void write_tables_csv(std::ostream& out, const std::vector<SolutionTable>& tables);
void write_tables_json(std::ostream& out, const std::vector<SolutionTable>& tables, bool truncated);

/// Reads either format (JSON if the first non-blank character is '{').
/// Throws ParseError on malformed input.
std::vector<SolutionTable> read_tables(std::istream& in);
std::vector<SolutionTable> load_tables(const std::string& path);

/// [[lo, hi], ...] with null for infinite endpoints.
nlohmann::json solution_set_to_json(const SolutionSet& s);

/// Writes via a temporary file and rename so readers never see partial output.
void write_file_atomically(const std::string& path, const std::string& content);

}  // namespace udp6
