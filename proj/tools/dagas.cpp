#include <cstdlib>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"

#include "dagas/animals.hpp"
#include "dagas/errors.hpp"
#include "dagas/gas.hpp"
#include "dagas/io.hpp"
#include "dagas/lattice.hpp"
#include "dagas/verify.hpp"

namespace {

using dagas::io::json;
using dagas::exact::Rational;

constexpr int kExitOk = 0;
constexpr int kExitCheckFailed = 1;
constexpr int kExitUsage = 2;

constexpr std::uint64_t kDefaultSeed = 1;

std::size_t default_budget() {
  if (const char* env = std::getenv("DAGAS_BUDGET")) {
    try {
      return static_cast<std::size_t>(std::stoull(env));
    } catch (const std::exception&) {
      throw dagas::ParseError(std::string("DAGAS_BUDGET is not an integer: '") + env + "'");
    }
  }
  return dagas::gas::kDefaultBudget;
}

struct Output {
  std::string path;
  std::string format = "json";

  void write(const std::string& text) const {
    if (path.empty()) {
      std::cout << text;
      return;
    }
    std::ofstream out(path);
    if (!out) throw dagas::ParseError("cannot write '" + path + "'");
    out << text;
  }
};

json envelope(const std::string& command, json config, json result) {
  json doc;
  doc["schema"] = dagas::io::kSchema;
  doc["version"] = dagas::io::kVersion;
  doc["command"] = command;
  doc["config"] = std::move(config);
  doc["result"] = std::move(result);
  return doc;
}

std::vector<int> parse_int_list(const std::string& text) {
  std::vector<int> out;
  std::stringstream in(text);
  std::string item;
  while (std::getline(in, item, ',')) {
    try {
      std::size_t used = 0;
      out.push_back(std::stoi(item, &used));
      if (used != item.size()) throw std::invalid_argument(item);
    } catch (const std::exception&) {
      throw dagas::ParseError("expected comma-separated integers, got '" + text + "'");
    }
  }
  return out;
}

// ---------------------------------------------------------------------------

struct EnumerateArgs {
  std::string graph = "sq";
  std::vector<std::string> sources;
  int max_area = 5;
  std::string mode = "exact";
  bool perimeter = false;
  std::string variant;  // empty: bar for over-sources and patterns, plain otherwise
  std::string pattern;
  bool list = false;
};

int cmd_enumerate(const EnumerateArgs& a, const Output& out) {
  const auto g = dagas::parse_graph_spec(a.graph);
  std::vector<dagas::VertexId> source;
  for (const auto& s : a.sources) source.push_back(g.parse_vertex(s));
  if (a.max_area < 0) throw dagas::DomainError("--max-area must be >= 0");
  const auto mode = a.mode == "over" ? dagas::SourceMode::over : dagas::SourceMode::exact;
  const std::string variant_name =
      !a.variant.empty() ? a.variant : (a.mode == "over" || !a.pattern.empty() ? "bar" : "plain");
  const auto variant =
      variant_name == "bar" ? dagas::PerimeterVariant::with_unused_sources : dagas::PerimeterVariant::plain;

  json config{{"graph", g.describe()},      {"source", a.sources}, {"max_area", a.max_area},
              {"mode", a.mode},             {"perimeter", a.perimeter}, {"perimeter_variant", variant_name},
              {"pattern", a.pattern},       {"list", a.list}};
  json result;
  std::string csv;
  if (!a.pattern.empty()) {
    const auto pattern = parse_int_list(a.pattern);
    const auto table = dagas::count_with_gas_pattern(g, source, pattern, a.max_area, variant);
    result["table"] = dagas::io::to_json(table);
    csv = dagas::io::table_csv(table);
    if (a.list) {
      json animals = json::array();
      for (const auto& an : dagas::enumerate_with_gas_pattern(g, source, pattern, a.max_area)) {
        animals.push_back(dagas::io::to_json(g, an));
      }
      result["animals"] = animals;
    }
  } else if (a.perimeter) {
    const auto table = dagas::count_by_area_perimeter(g, source, a.max_area, mode, variant);
    result["table"] = dagas::io::to_json(table);
    csv = dagas::io::table_csv(table);
  } else {
    const auto counts = dagas::count_by_area(g, source, a.max_area, mode);
    json rows = json::array();
    for (std::size_t n = 0; n < counts.size(); ++n) {
      if (counts[n] != 0) rows.push_back(json{{"area", n}, {"count", counts[n]}});
    }
    result["counts"] = rows;
    csv = dagas::io::counts_csv(counts);
  }
  if (a.list && a.pattern.empty()) {
    json animals = json::array();
    for (const auto& an : dagas::enumerate(g, source, a.max_area, mode)) animals.push_back(dagas::io::to_json(g, an));
    result["animals"] = animals;
  }
  out.write(out.format == "csv" ? csv : envelope("enumerate", config, result).dump(2) + "\n");
  return kExitOk;
}

// ---------------------------------------------------------------------------

struct DensityArgs {
  bool closed = false;
  int series = 0;
  bool mc = false;
  std::string p;
  std::string graph = "sq";
  std::vector<std::string> sources;
  int gas_type = 1;
  std::string pa;
  std::string pb;
  std::string pc;
  std::uint64_t reps = 100000;
  std::uint64_t seed = kDefaultSeed;
  std::size_t budget = 0;
  unsigned threads = 0;
};

int cmd_density(const DensityArgs& a, const Output& out) {
  if (!a.closed && a.series == 0 && !a.mc) throw dagas::DomainError("choose at least one of --closed, --series, --mc");
  json config{{"p", a.p}, {"closed", a.closed}, {"series", a.series}, {"mc", a.mc}};
  json result;
  if (a.closed) {
    if (a.p.empty()) throw dagas::DomainError("--closed needs --p");
    const Rational p = Rational::parse(a.p);
    result["closed"] = dagas::io::to_json(dagas::lattice::density_closed(p));
    const auto law = dagas::lattice::block_law(p);
    result["alpha_occupied"] = dagas::io::to_json(law.alpha_occupied);
    result["alpha_empty"] = dagas::io::to_json(law.alpha_empty);
  }
  if (a.series > 0) {
    const auto s = dagas::lattice::density_series(static_cast<std::size_t>(a.series));
    json coeffs = json::array();
    for (std::size_t n = 1; n <= s.order(); ++n) coeffs.push_back(s[n].str());
    result["series"] = coeffs;
  }
  if (a.mc) {
    const auto g = dagas::parse_graph_spec(a.graph);
    std::vector<dagas::VertexId> source;
    for (const auto& s : a.sources) source.push_back(g.parse_vertex(s));
    if (source.empty()) source.push_back(g.is_finite() ? g.vertices().front() : dagas::VertexId{0, 0});
    const std::size_t budget = a.budget ? a.budget : default_budget();
    dagas::gas::GasModel model;
    if (a.gas_type == 2) {
      model = dagas::gas::Type2Model{Rational::parse_decimal(a.pa), Rational::parse_decimal(a.pb),
                                     Rational::parse_decimal(a.pc)};
      config["pa"] = a.pa;
      config["pb"] = a.pb;
      config["pc"] = a.pc;
    } else {
      if (a.p.empty()) throw dagas::DomainError("--mc needs --p");
      model = dagas::gas::Type1Model{Rational::parse_decimal(a.p)};
    }
    const auto est = dagas::gas::mc_density(g, source, model, a.reps, a.seed, budget, a.threads);
    result["mc"] = dagas::io::to_json(est);
    config["graph"] = g.describe();
    json names = json::array();
    for (const auto& s : source) names.push_back(g.name(s));
    config["source"] = names;
    config["gas"] = a.gas_type;
    config["reps"] = a.reps;
    config["seed"] = a.seed;
    config["budget"] = budget;
  }
  out.write(envelope("density", config, result).dump(2) + "\n");
  return kExitOk;
}

// ---------------------------------------------------------------------------

struct VerifyArgs {
  std::string suite;
  dagas::verify::SuiteOptions options;
  std::string p;
};

int cmd_verify(VerifyArgs a, const Output& out) {
  if (!a.p.empty()) a.options.p = Rational::parse(a.p);
  const auto report = dagas::verify::run_suite(a.suite, a.options);
  json checks = json::array();
  for (const auto& c : report.checks) {
    checks.push_back(json{{"name", c.name}, {"passed", c.passed}, {"detail", c.detail}});
  }
  const json config{{"suite", a.suite},       {"max_area", a.options.max_area}, {"n", a.options.n},
                    {"p", a.options.p.str()}, {"reps", a.options.reps},         {"seed", a.options.seed},
                    {"budget", a.options.budget}};
  const json result{{"passed", report.passed()}, {"seconds", report.seconds}, {"checks", checks}};
  out.write(envelope("verify", config, result).dump(2) + "\n");
  return report.passed() ? kExitOk : kExitCheckFailed;
}

// ---------------------------------------------------------------------------

int cmd_cylinder(int n, const std::string& p_text, int series, const Output& out) {
  const Rational p = Rational::parse(p_text);
  const auto law = dagas::lattice::cylinder_stationary(n, p);
  json result;
  result["stationary"] = dagas::io::to_json(law);
  result["occupation"] = law.occupation(0).str();
  result["z_trace"] = dagas::lattice::z_trace(n, p).str();
  result["z_subsets"] = dagas::lattice::z_subsets(n, p).str();
  result["w_n"] = dagas::lattice::w_n(n, p).str();
  if (n <= 8) {
    const auto residual = dagas::lattice::fixed_point_residual(law, dagas::lattice::cylinder_kernel(n, p));
    bool zero = true;
    for (const auto& r : residual) zero = zero && r.is_zero();
    result["fixed_point"] = zero;
  }
  if (series > 0) result["series"] = dagas::io::to_json(dagas::lattice::cylinder_gf(n, static_cast<std::size_t>(series)));
  const json config{{"n", n}, {"p", p.str()}, {"series", series}};
  out.write(envelope("cylinder", config, result).dump(2) + "\n");
  return kExitOk;
}

int cmd_gf(const std::string& geometry, const std::string& gaps_text, const std::string& p_text, int series,
           const Output& out) {
  const auto gaps = gaps_text.empty() ? std::vector<int>{} : parse_int_list(gaps_text);
  const bool staircase = geometry == "staircase";
  json result;
  json sources = json::array();
  for (const auto& v : staircase ? dagas::lattice::staircase_sources(gaps) : dagas::lattice::line_sources(gaps)) {
    sources.push_back(std::to_string(v.x) + "," + std::to_string(v.y));
  }
  result["sources"] = sources;
  if (!p_text.empty()) {
    const Rational p = Rational::parse(p_text);
    result["value"] = dagas::io::to_json(staircase ? dagas::lattice::gf_staircase(gaps, p)
                                                   : dagas::lattice::gf_line_sources(gaps, p));
  }
  if (series > 0) {
    const auto order = static_cast<std::size_t>(series);
    result["series"] = dagas::io::to_json(staircase ? dagas::lattice::gf_staircase_series(gaps, order)
                                                    : dagas::lattice::gf_line_sources_series(gaps, order));
  }
  const json config{{"geometry", geometry}, {"gaps", gaps}, {"p", p_text}, {"series", series}};
  out.write(envelope("gf", config, result).dump(2) + "\n");
  return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Directed animals and lattice gases"};
  app.require_subcommand(1);
  Output output;
  app.add_option("-o,--output", output.path, "Write output to this file instead of stdout");

  EnumerateArgs en;
  auto* enumerate = app.add_subcommand("enumerate", "Count directed animals by area (and perimeter)");
  enumerate->add_option("--graph", en.graph, "sq, cyl:N, tree:K or dag:PATH")->capture_default_str();
  enumerate->add_option("--source", en.sources, "Source vertex (repeatable), e.g. 0,0 or a DAG label")->required();
  enumerate->add_option("--max-area", en.max_area, "Largest area enumerated")->capture_default_str();
  enumerate->add_option("--mode", en.mode, "exact or over")->check(CLI::IsMember({"exact", "over"}))->capture_default_str();
  enumerate->add_flag("--perimeter", en.perimeter, "Tabulate by area and perimeter");
  enumerate->add_option("--perimeter-variant", en.variant,
                        "plain or bar (adds unused sources); default bar in over mode, plain otherwise")
      ->check(CLI::IsMember({"plain", "bar"}));
  enumerate->add_option("--pattern", en.pattern, "Required gas values at the sources, e.g. 0,0,1,1,0,0 (over mode)");
  enumerate->add_flag("--list", en.list, "Also list the animals");
  enumerate->add_option("--format", output.format, "json or csv")->check(CLI::IsMember({"json", "csv"}));

  DensityArgs de;
  auto* density = app.add_subcommand("density", "Gas density: closed form, series or Monte Carlo");
  density->add_flag("--closed", de.closed, "Exact closed form on the square lattice");
  density->add_option("--series", de.series, "Series coefficients of p^1..p^N");
  density->add_flag("--mc", de.mc, "Monte Carlo estimate");
  density->add_option("--p", de.p, "Probability as num/den (decimals accepted for --mc only)");
  density->add_option("--graph", de.graph, "Graph for --mc")->capture_default_str();
  density->add_option("--source", de.sources, "Source vertices for --mc (default the origin)");
  density->add_option("--gas", de.gas_type, "Gas type for --mc: 1 or 2")->check(CLI::Range(1, 2));
  density->add_option("--pa", de.pa, "Type-2 probability of color a");
  density->add_option("--pb", de.pb, "Type-2 probability of color b");
  density->add_option("--pc", de.pc, "Type-2 probability of color c");
  density->add_option("--reps", de.reps, "Monte Carlo replicas")->capture_default_str();
  density->add_option("--seed", de.seed, "Master seed")->capture_default_str();
  density->add_option("--budget", de.budget, "Cell budget per sample (default DAGAS_BUDGET or 100000)");
  density->add_option("--threads", de.threads, "Worker threads (0 = all cores)");

  VerifyArgs ve;
  auto* verify = app.add_subcommand("verify", "Run a verification suite");
  verify->add_option("suite", ve.suite, "equivalence, exact-theorems, lattice-closed-forms, cylinder, montecarlo, remark38")
      ->required();
  verify->add_option("--max-area", ve.options.max_area, "Largest area (suite default when omitted)");
  verify->add_option("--n", ve.options.n, "Cylinder size");
  verify->add_option("--p", ve.p, "Probability as num/den");
  verify->add_option("--reps", ve.options.reps, "Monte Carlo replicas");
  verify->add_option("--seed", ve.options.seed, "Master seed")->capture_default_str();
  verify->add_option("--budget", ve.options.budget, "Cell budget per sample");
  verify->add_option("--threads", ve.options.threads, "Worker threads (0 = all cores)");

  int cyl_n = 4;
  std::string cyl_p;
  int cyl_series = 0;
  auto* cylinder = app.add_subcommand("cylinder", "Stationary row law and series on a cylinder");
  cylinder->add_option("--n", cyl_n, "Circumference, 2..12")->capture_default_str();
  cylinder->add_option("--p", cyl_p, "Probability as num/den")->required();
  cylinder->add_option("--series", cyl_series, "Also expand the single-cell series to this order");

  std::string gf_geometry = "line";
  std::string gf_gaps;
  std::string gf_p;
  int gf_series = 0;
  auto* gf = app.add_subcommand("gf", "Closed-form G_S(-p) for line or staircase sources");
  gf->add_option("--sources", gf_geometry, "line or staircase")
      ->check(CLI::IsMember({"line", "staircase"}))
      ->capture_default_str();
  gf->add_option("--gaps", gf_gaps, "Comma-separated gaps between successive sources");
  gf->add_option("--p", gf_p, "Probability as num/den");
  gf->add_option("--series", gf_series, "Series order");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kExitOk : kExitUsage;
  }

  try {
    if (enumerate->parsed()) return cmd_enumerate(en, output);
    if (density->parsed()) return cmd_density(de, output);
    if (verify->parsed()) return cmd_verify(ve, output);
    if (cylinder->parsed()) return cmd_cylinder(cyl_n, cyl_p, cyl_series, output);
    if (gf->parsed()) return cmd_gf(gf_geometry, gf_gaps, gf_p, gf_series, output);
  } catch (const dagas::DomainError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const dagas::ParseError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const dagas::ResourceError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitUsage;
  }
  return kExitUsage;
}
