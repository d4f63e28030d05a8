#pragma once

#include <json.hpp>

#include <ostream>
#include <string>
#include <vector>

#include "strichartz/closed_forms.hpp"
#include "strichartz/grid.hpp"
#include "strichartz/propagators.hpp"

namespace strichartz::cli {

using json = nlohmann::ordered_json;

json to_json(cplx z);
cplx complex_from_json(const json& j);
json to_json(const std::vector<cplx>& v);
json to_json(const Grid& g);
json to_json(const TimeSamples& t);
json to_json(const QuotientReport& r);
json to_json(const ExpQuadraticParams& p);
json to_json(const ConeExpParams& p);

/// {"A": [re, im], "b": [[re, im], ...], "C": [re, im], "space": "physical" | "frequency"}.
ExpQuadraticParams gaussian_from_json(const json& j);
/// {"A", "b", "C", "D"} as above; dim taken from b.
ConeExpParams cone_from_json(const json& j);

/// RFC 4180 field quoting.
std::string csv_field(const std::string& s);
void write_csv_row(std::ostream& os, const std::vector<std::string>& fields);
/// Shortest round-trip decimal form.
std::string fmt(double v);

/// Writes j (indent 2, trailing newline) to path, or to os when path is empty.
void emit(const json& j, const std::string& path, std::ostream& os);

}  // namespace strichartz::cli
