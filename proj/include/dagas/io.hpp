#pragma once

#include <string>

#include "json.hpp"

#include "dagas/animals.hpp"
#include "dagas/gas.hpp"
#include "dagas/graph.hpp"
#include "dagas/lattice.hpp"
#include "dagas/quad_ext.hpp"
#include "dagas/rational.hpp"
#include "dagas/series.hpp"

namespace dagas::io {

using json = nlohmann::ordered_json;

inline constexpr const char* kSchema = "dagas/1";
inline constexpr const char* kVersion = "1.0.0";

json to_json(const exact::Rational& r);
/// {"a": "num/den", "b": ..., "d": ..., "text": "a + b*sqrt(d)", "float": 0.21...}
json to_json(const exact::QuadExt& q);
/// Coefficients as rational strings, lowest order first.
json to_json(const exact::TruncSeries& s);
json to_json(const AgreeableGraph& g, const Animal& a);
json to_json(const AreaPerimeterTable& t);
json to_json(const gas::McEstimate& e);
/// [{"subset": [indices], "prob": "num/den"}, ...]
json to_json(const lattice::CylinderLaw& law);

/// "area,count" rows.
std::string counts_csv(const std::vector<std::uint64_t>& counts);
/// "area,perimeter,count" rows.
std::string table_csv(const AreaPerimeterTable& t);

}  // namespace dagas::io
