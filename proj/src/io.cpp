#include "dagas/io.hpp"

#include <sstream>

namespace dagas::io {

json to_json(const exact::Rational& r) { return r.str(); }

json to_json(const exact::QuadExt& q) {
  json out;
  out["a"] = q.a().str();
  out["b"] = q.b().str();
  out["d"] = q.d().str();
  out["text"] = q.str();
  out["float"] = q.to_double();
  return out;
}

json to_json(const exact::TruncSeries& s) {
  json out = json::array();
  for (const auto& c : s.coefficients()) out.push_back(c.str());
  return out;
}

namespace {
// [x, y] for lattice and tree vertices, the label for DAG vertices.
json vertex_json(const AgreeableGraph& g, VertexId v) {
  if (g.is_finite()) return g.name(v);
  return json::array({v.x, v.y});
}
}  // namespace

json to_json(const AgreeableGraph& g, const Animal& a) {
  json cells = json::array();
  for (const auto& c : a.cells) cells.push_back(vertex_json(g, c));
  json source = json::array();
  for (const auto& s : a.source) source.push_back(vertex_json(g, s));
  return json{{"cells", cells}, {"source", source}, {"mode", a.mode == SourceMode::exact ? "exact" : "over"}};
}

json to_json(const AreaPerimeterTable& t) {
  json rows = json::array();
  for (const auto& [key, count] : t.counts) {
    rows.push_back(json{{"area", key.first}, {"perimeter", key.second}, {"count", count}});
  }
  return json{{"perimeter_variant", t.variant == PerimeterVariant::plain ? "plain" : "with_unused_sources"},
              {"rows", rows}};
}

json to_json(const gas::McEstimate& e) {
  return json{{"mean", e.mean},
              {"stderr", e.standard_error},
              {"reps", e.reps},
              {"overflows", e.overflows},
              {"seed", e.seed}};
}

json to_json(const lattice::CylinderLaw& law) {
  json out = json::array();
  for (std::size_t mask = 0; mask < law.prob.size(); ++mask) {
    json subset = json::array();
    for (int i = 0; i < law.n; ++i) {
      if ((mask >> i) & 1U) subset.push_back(i);
    }
    out.push_back(json{{"subset", subset}, {"prob", law.prob[mask].str()}});
  }
  return out;
}

std::string counts_csv(const std::vector<std::uint64_t>& counts) {
  std::ostringstream out;
  out << "area,count\n";
  for (std::size_t n = 0; n < counts.size(); ++n) {
    if (counts[n] != 0) out << n << ',' << counts[n] << '\n';
  }
  return out.str();
}

std::string table_csv(const AreaPerimeterTable& t) {
  std::ostringstream out;
  out << "area,perimeter,count\n";
  for (const auto& [key, count] : t.counts) out << key.first << ',' << key.second << ',' << count << '\n';
  return out.str();
}

}  // namespace dagas::io
