#include "dagas/verify.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <iomanip>
#include <map>
#include <random>
#include <sstream>

#include "dagas/animals.hpp"
#include "dagas/errors.hpp"
#include "dagas/gas.hpp"
#include "dagas/lattice.hpp"

namespace dagas::verify {

using exact::QuadExt;
using exact::TruncSeries;

bool Report::passed() const {
  for (const auto& c : checks) {
    if (!c.passed) return false;
  }
  return true;
}

void Report::add(std::string name, bool ok, std::string detail) {
  checks.push_back(Check{std::move(name), ok, std::move(detail)});
}

void Report::append(const Report& other) {
  checks.insert(checks.end(), other.checks.begin(), other.checks.end());
  seconds += other.seconds;
}

namespace {

class Timer {
 public:
  explicit Timer(Report& r) : report_(r), start_(std::chrono::steady_clock::now()) {}
  ~Timer() {
    report_.seconds += std::chrono::duration<double>(std::chrono::steady_clock::now() - start_).count();
  }
  Timer(const Timer&) = delete;
  Timer& operator=(const Timer&) = delete;

 private:
  Report& report_;
  std::chrono::steady_clock::time_point start_;
};

std::string fmt(double v, int precision = 6) {
  std::ostringstream out;
  out << std::setprecision(precision) << v;
  return out.str();
}

Rational big(std::uint64_t v) { return Rational(mpz_class(std::to_string(v))); }

// Σ_n counts[n]·(−x)^n
TruncSeries signed_series(const std::vector<std::uint64_t>& counts, std::size_t order) {
  TruncSeries s(order);
  for (std::size_t n = 0; n < counts.size() && n <= order; ++n) {
    s[n] = n % 2 == 0 ? big(counts[n]) : -big(counts[n]);
  }
  return s;
}

// Σ count·x^area·(1−x)^perimeter truncated at `order`.
TruncSeries weighted_series(const AreaPerimeterTable& t, std::size_t order) {
  TruncSeries total(order);
  const TruncSeries q(order, {Rational(1), Rational(-1)});
  for (const auto& [key, count] : t.counts) {
    if (static_cast<std::size_t>(key.first) > order) continue;
    total = total + big(count) * exact::pow(q, static_cast<unsigned>(key.second)).shifted(static_cast<std::size_t>(key.first));
  }
  return total;
}

Rational evaluate_table(const AreaPerimeterTable& t, const Rational& u, const Rational& v, bool skip_empty) {
  Rational total(0);
  for (const auto& [key, count] : t.counts) {
    if (skip_empty && key.first == 0) continue;
    total += big(count) * pow(u, key.first) * pow(v, key.second);
  }
  return total;
}

std::vector<std::vector<VertexId>> free_pairs(const AgreeableGraph& g) {
  std::vector<std::vector<VertexId>> out;
  const auto vs = g.vertices();
  for (std::size_t i = 0; i < vs.size(); ++i) {
    for (std::size_t j = i + 1; j < vs.size(); ++j) {
      const VertexId pair[] = {vs[i], vs[j]};
      if (g.is_free(pair)) out.push_back({vs[i], vs[j]});
    }
  }
  return out;
}

// Cells of `a` reachable from s inside a.
Animal rooted_part(const AgreeableGraph& g, const Animal& a, VertexId s) {
  std::vector<VertexId> cells{s};
  for (std::size_t head = 0; head < cells.size(); ++head) {
    for (const auto& k : g.children(cells[head])) {
      if (a.contains(k) && std::find(cells.begin(), cells.end(), k) == cells.end()) cells.push_back(k);
    }
  }
  std::sort(cells.begin(), cells.end());
  return Animal{std::move(cells), {s}, SourceMode::exact};
}

const std::vector<Rational>& rational_grid() {
  static const std::vector<Rational> grid{Rational(1, 10), Rational(1, 5), Rational(1, 3), Rational(2, 5),
                                          Rational(1, 2)};
  return grid;
}

std::string join(const std::vector<std::string>& parts) {
  std::string out;
  for (const auto& p : parts) out += (out.empty() ? "" : ", ") + p;
  return out;
}

double to_unit(std::uint64_t bits) { return static_cast<double>(bits >> 11) * 0x1.0p-53; }

struct Tolerance {
  bool ok;
  std::string detail;
};

// |observed − expected| < 3σ for a count with binomial variance.
Tolerance binomial_check(double hits, double trials, double prob) {
  const double expected = trials * prob;
  const double sigma = std::sqrt(trials * prob * (1.0 - prob));
  const bool ok = sigma > 0 ? std::abs(hits - expected) < 3.0 * sigma : hits == expected;
  return {ok, "observed " + fmt(hits) + ", expected " + fmt(expected) + ", sigma " + fmt(sigma)};
}

struct Moments {
  double sum = 0;
  double sum_sq = 0;
  std::size_t n = 0;

  void push(double v) {
    sum += v;
    sum_sq += v * v;
    ++n;
  }
  double mean() const { return sum / static_cast<double>(n); }
  double standard_error() const {
    const double m = mean();
    const double var = (sum_sq - static_cast<double>(n) * m * m) / static_cast<double>(n - 1);
    return std::sqrt(std::max(var, 0.0) / static_cast<double>(n));
  }
};

}  // namespace

AgreeableGraph random_dag(std::uint64_t seed, int max_vertices, double edge_probability) {
  if (max_vertices < 2 || max_vertices > 99) throw DomainError("random DAG size must lie in [2, 99]");
  std::mt19937_64 rng(seed);
  const int n = 2 + static_cast<int>(rng() % static_cast<std::uint64_t>(max_vertices - 1));
  std::vector<std::string> labels;
  for (int i = 0; i < n; ++i) labels.push_back((i < 10 ? "v0" : "v") + std::to_string(i));
  std::vector<std::pair<std::string, std::string>> edges;
  for (int i = 0; i < n; ++i) {
    for (int j = i + 1; j < n; ++j) {
      if (to_unit(rng()) < edge_probability) edges.emplace_back(labels[static_cast<std::size_t>(i)], labels[static_cast<std::size_t>(j)]);
    }
  }
  return AgreeableGraph::finite_dag(labels, edges);
}

// ---------------------------------------------------------------------------
// Fixed-animal identities
// ---------------------------------------------------------------------------

Report equivalence(int max_area) {
  Report r{"equivalence", {}, 0};
  const Timer timer(r);
  const auto g = AgreeableGraph::square_lattice();
  const VertexId origin{0, 0};
  const VertexId source[] = {origin};
  std::size_t animals = 0;
  std::size_t mismatches = 0;
  std::size_t exceptions = 0;
  std::string first_bad;
  for (const auto& a : enumerate(g, source, max_area, SourceMode::exact)) {
    ++animals;
    try {
      const int c = gas::chi(g, a, origin);
      const int nim = gas::nim_value(g, a, origin);
      const auto d = gas::d_signed(g, a, origin);
      const auto t = gas::delta_trees(g, a, origin);
      if (!(c == nim && c == d && c == t && (c == 0 || c == 1))) {
        if (mismatches++ == 0) {
          first_bad = "area " + std::to_string(a.area()) + ": chi " + std::to_string(c) + ", nim " +
                      std::to_string(nim) + ", D " + std::to_string(d) + ", Delta " + std::to_string(t);
        }
      }
    } catch (const std::exception& e) {
      if (exceptions++ == 0) first_bad = e.what();
    }
  }
  r.add("chi = nim = D = Delta in {0,1}, area <= " + std::to_string(max_area), mismatches == 0 && exceptions == 0,
        std::to_string(animals) + " animals, " + std::to_string(mismatches) + " mismatches, " +
            std::to_string(exceptions) + " exceptions" + (first_bad.empty() ? "" : "; first: " + first_bad));
  return r;
}

Report exact_embeddings(int max_area) {
  Report r{"equivalence", {}, 0};
  const Timer timer(r);
  const auto g = AgreeableGraph::square_lattice();
  const VertexId origin{0, 0};
  const VertexId source[] = {origin};
  std::size_t animals = 0;
  std::size_t bad = 0;
  std::size_t exceptions = 0;
  for (const auto& a : enumerate(g, source, max_area, SourceMode::exact)) {
    ++animals;
    try {
      const std::int64_t expected = a.area() % 2 == 0 ? 1 : -1;
      if (gas::exact_embedding_sign_sum(g, a, origin) != expected) ++bad;
    } catch (const std::exception&) {
      ++exceptions;
    }
  }
  r.add("signed tree count over exact embeddings = (-1)^|A|, area <= " + std::to_string(max_area),
        bad == 0 && exceptions == 0,
        std::to_string(animals) + " animals, " + std::to_string(bad) + " mismatches, " + std::to_string(exceptions) +
            " exceptions");
  return r;
}

Report forests(int max_area) {
  Report r{"equivalence", {}, 0};
  const Timer timer(r);
  const auto g = AgreeableGraph::square_lattice();
  const std::vector<std::vector<VertexId>> sources{
      {{0, 0}, {1, 0}}, {{0, 0}, {2, 0}}, {{1, -1}, {0, 0}}, {{0, 0}, {1, 0}, {2, 0}}};
  std::size_t animals = 0;
  std::size_t sign_bad = 0;
  std::size_t product_bad = 0;
  for (const auto& s : sources) {
    const std::int64_t sign = (s.size() + 1) % 2 == 0 ? 1 : -1;
    for (const auto& a : enumerate(g, s, max_area, SourceMode::exact)) {
      ++animals;
      const auto delta = gas::delta_forest(g, a, s);
      if (gas::d_signed_set(g, a, s) != sign * delta) ++sign_bad;
      std::int64_t product = 1;
      for (const auto& v : s) product *= gas::delta_trees(g, rooted_part(g, a, v), v);
      if (product != delta) ++product_bad;
    }
  }
  r.add("D_S = (-1)^(1+|S|) Delta_S on multi-source animals", sign_bad == 0,
        std::to_string(animals) + " animals, " + std::to_string(sign_bad) + " mismatches");
  r.add("Delta_S = product of Delta over rooted parts", product_bad == 0,
        std::to_string(animals) + " animals, " + std::to_string(product_bad) + " mismatches");
  return r;
}

// ---------------------------------------------------------------------------
// Exact coloring sums
// ---------------------------------------------------------------------------

Report exact_type1(int corpus_size, int max_vertices, std::uint64_t seed) {
  Report r{"exact-theorems", {}, 0};
  const Timer timer(r);
  const std::vector<Rational> ps{Rational(1, 10), Rational(1, 3), Rational(1, 2)};
  std::map<std::size_t, std::pair<std::size_t, std::size_t>> by_size;  // |S| → (cases, mismatches)
  for (int i = 0; i < corpus_size; ++i) {
    const auto g = random_dag(gas::replica_seed(seed, static_cast<std::uint64_t>(i)), max_vertices);
    std::vector<std::vector<VertexId>> sets;
    for (const auto& v : g.vertices()) sets.push_back({v});
    for (auto& pair : free_pairs(g)) sets.push_back(std::move(pair));
    const int area_cap = static_cast<int>(g.vertex_count());
    for (const auto& s : sets) {
      const auto counts = count_by_area(g, s, area_cap, SourceMode::exact);
      for (const auto& p : ps) {
        Rational gf(0);
        for (std::size_t n = 0; n < counts.size(); ++n) gf += big(counts[n]) * pow(-p, static_cast<long>(n));
        const Rational expected = s.size() % 2 == 0 ? gf : -gf;
        auto& [cases, bad] = by_size[s.size()];
        ++cases;
        if (gas::exact_density_type1(g, s, p) != expected) ++bad;
      }
    }
  }
  for (const auto& [size, stats] : by_size) {
    r.add("E_p(prod X) = (-1)^|S| G_S(-p), |S| = " + std::to_string(size), stats.second == 0,
          std::to_string(stats.first) + " cases over " + std::to_string(corpus_size) + " DAGs, " +
              std::to_string(stats.second) + " mismatches");
  }
  return r;
}

Report exact_type2(int corpus_size, int max_vertices, std::uint64_t seed) {
  Report r{"exact-theorems", {}, 0};
  const Timer timer(r);
  const std::vector<std::array<Rational, 3>> triples{{Rational(1, 10), Rational(8, 10), Rational(1, 10)},
                                                     {Rational(1, 3), Rational(1, 3), Rational(1, 3)}};
  std::size_t single_cases = 0;
  std::size_t single_bad = 0;
  std::size_t set_cases = 0;
  std::size_t set_bad = 0;
  for (int i = 0; i < corpus_size; ++i) {
    const auto g = random_dag(gas::replica_seed(seed ^ 0x5bd1e995ULL, static_cast<std::uint64_t>(i)), max_vertices);
    const int area_cap = static_cast<int>(g.vertex_count());
    std::vector<std::vector<VertexId>> sets;
    for (const auto& v : g.vertices()) sets.push_back({v});
    for (auto& pair : free_pairs(g)) sets.push_back(std::move(pair));
    for (const auto& s : sets) {
      const auto over = count_by_area_perimeter(g, s, area_cap, SourceMode::over, PerimeterVariant::with_unused_sources);
      std::optional<AreaPerimeterTable> plain;
      if (s.size() == 1) plain = count_by_area_perimeter(g, s, area_cap, SourceMode::exact, PerimeterVariant::plain);
      for (const auto& [pa, pb, pc] : triples) {
        const Rational lhs = gas::exact_density_type2(g, s, pa, pb, pc);
        ++set_cases;
        if (lhs != evaluate_table(over, pa, pc, false)) ++set_bad;
        if (plain) {
          ++single_cases;
          if (lhs != pc + evaluate_table(*plain, pa, pc, true)) ++single_bad;
        }
      }
    }
  }
  r.add("E(X*_x) = p_c + G^x(p_a, p_c)", single_bad == 0,
        std::to_string(single_cases) + " cases, " + std::to_string(single_bad) + " mismatches");
  r.add("E(prod X*) = over-source area/perimeter GF, |S| in {1,2}", set_bad == 0,
        std::to_string(set_cases) + " cases, " + std::to_string(set_bad) + " mismatches");
  return r;
}

// ---------------------------------------------------------------------------
// Square-lattice closed forms
// ---------------------------------------------------------------------------

Report surd_identities() {
  Report r{"lattice-closed-forms", {}, 0};
  const Timer timer(r);
  std::map<std::string, std::vector<std::string>> failures;
  const std::vector<std::string> names{
      "(1 - a_empty) p = 1 - a_occ",
      "a_empty = a_occ (1 - a_empty) p",
      "(1 - a_empty)(1 - a_occ)(1 - p) = a_empty a_occ",
      "0 < a_occ, a_empty < 1",
      "density = (1 - l1)/(l2 - l1)",
      "density = (1 - (1-p)/sqrt(d))/2",
      "transition rows sum to 1",
      "stationary vector is invariant",
      "(M^k)_11 closed form, k <= 6",
      "l1 + l2 = 1 + p and l1 l2 = p^2"};
  for (const auto& p : rational_grid()) {
    auto fail = [&](const std::string& name) { failures[name].push_back(p.str()); };
    const auto law = lattice::block_law(p);
    const QuadExt& a = law.alpha_occupied;
    const QuadExt& b = law.alpha_empty;
    const QuadExt one(1);
    if ((one - b) * QuadExt(p) != one - a) fail(names[0]);
    if (b != a * (one - b) * QuadExt(p)) fail(names[1]);
    if ((one - b) * (one - a) * QuadExt(Rational(1) - p) != a * b) fail(names[2]);
    if (!(a.sign() > 0 && b.sign() > 0 && a < one && b < one)) fail(names[3]);
    const QuadExt rho = lattice::density_closed(p);
    if (rho != lattice::transfer_limit(p)) fail(names[4]);
    const QuadExt alt = (one - QuadExt(Rational(1) - p) * QuadExt::sqrt_of(law.d).inverse()) / QuadExt(2);
    if (rho != alt) fail(names[5]);
    const auto m = lattice::transition_matrix(p);
    if (m.m[0][0] + m.m[0][1] != one || m.m[1][0] + m.m[1][1] != one) fail(names[6]);
    const auto v = m.stationary();
    if (v[0] * m.m[0][0] + v[1] * m.m[1][0] != v[0] || v[0] * m.m[0][1] + v[1] * m.m[1][1] != v[1] || v[0] != rho) {
      fail(names[7]);
    }
    const QuadExt lambda = one - a - b;
    for (unsigned k = 1; k <= 6; ++k) {
      if (m.power(k).m[0][0] != (a * pow(lambda, static_cast<long>(k)) + b) / (a + b)) {
        fail(names[8]);
        break;
      }
    }
    const auto t = lattice::transfer(p);
    if (t.lambda1 + t.lambda2 != QuadExt(Rational(1) + p) || t.lambda1 * t.lambda2 != QuadExt(p * p)) fail(names[9]);
  }
  for (const auto& name : names) {
    const auto it = failures.find(name);
    r.add(name, it == failures.end(),
          it == failures.end() ? "p in {1/10, 1/5, 1/3, 2/5, 1/2}" : "fails at p = " + join(it->second));
  }

  const auto third = lattice::block_law(Rational(1, 3));
  const QuadExt sqrt3 = QuadExt::sqrt_of(Rational(3));
  r.add("p = 1/3: a_occ = sqrt3 - 1, a_empty = 3 sqrt3 - 5",
        third.alpha_occupied == sqrt3 - QuadExt(1) && third.alpha_empty == QuadExt(3) * sqrt3 - QuadExt(5),
        third.alpha_occupied.str() + ", " + third.alpha_empty.str());
  const QuadExt rho3 = lattice::density_closed(Rational(1, 3));
  r.add("p = 1/3: density = (3 - sqrt3)/6", rho3 == (QuadExt(3) - sqrt3) / QuadExt(6), rho3.str());
  const auto fifth = lattice::block_law(Rational(1, 5));
  r.add("p = 1/5: a_occ ~ 0.828427, a_empty ~ 0.142136",
        std::abs(fifth.alpha_occupied.to_double() - 0.828427) < 1e-6 &&
            std::abs(fifth.alpha_empty.to_double() - 0.142136) < 1e-6,
        fmt(fifth.alpha_occupied.to_double(), 10) + ", " + fmt(fifth.alpha_empty.to_double(), 10));
  return r;
}

Report square_series(int max_area) {
  Report r{"lattice-closed-forms", {}, 0};
  const Timer timer(r);
  const auto g = AgreeableGraph::square_lattice();
  const VertexId source[] = {{0, 0}};
  const auto counts = count_by_area(g, source, max_area, SourceMode::exact);
  const auto series = lattice::density_series(static_cast<std::size_t>(max_area));
  // density = −G(−p): coefficient n is (−1)^{n+1}·a_n.
  const TruncSeries expected = -signed_series(counts, static_cast<std::size_t>(max_area));
  std::ostringstream detail;
  for (std::size_t n = 1; n < counts.size(); ++n) detail << (n > 1 ? " " : "") << counts[n];
  r.add("density series = enumeration counts with alternating signs, n <= " + std::to_string(max_area),
        series == expected, "counts " + detail.str());
  std::array<std::uint64_t, 5> head{1, 2, 5, 13, 35};
  bool head_ok = counts.size() > 5;
  for (std::size_t n = 1; head_ok && n <= 5; ++n) head_ok = counts[n] == head[n - 1];
  r.add("area counts begin 1, 2, 5, 13, 35", head_ok);
  return r;
}

Report compact_sources(int max_area) {
  Report r{"lattice-closed-forms", {}, 0};
  const Timer timer(r);
  const auto g = AgreeableGraph::square_lattice();
  std::vector<std::uint64_t> total(static_cast<std::size_t>(max_area) + 1, 0);
  for (int m = 1; m <= max_area; ++m) {
    const auto counts = count_by_area(g, lattice::line_sources(std::vector<int>(static_cast<std::size_t>(m - 1), 1)),
                                      max_area, SourceMode::exact);
    for (std::size_t n = 0; n < counts.size(); ++n) total[n] += counts[n];
  }
  bool ok = true;
  std::uint64_t power = 1;
  std::ostringstream detail;
  for (std::size_t n = 1; n < total.size(); ++n) {
    ok = ok && total[n] == power;
    detail << (n > 1 ? " " : "") << total[n];
    power *= 3;
  }
  r.add("compact-source animal counts = 3^(n-1), n <= " + std::to_string(max_area), ok, detail.str());

  const auto order = static_cast<std::size_t>(max_area);
  const TruncSeries sum = lattice::compact_source_sum_series(order, order);
  const TruncSeries x = TruncSeries::identity(order);
  const TruncSeries target = -(x * inverse(TruncSeries(order, {Rational(1), Rational(3)})));
  r.add("sum of compact-source closed forms = -p/(1+3p) to order " + std::to_string(max_area), sum == target);
  return r;
}

Report line_and_staircase(std::size_t order) {
  Report r{"lattice-closed-forms", {}, 0};
  const Timer timer(r);
  const auto g = AgreeableGraph::square_lattice();
  const std::vector<std::vector<int>> gap_sets{{1}, {2}, {1, 2}};
  for (const auto& gaps : gap_sets) {
    std::string label = "gaps";
    for (const int d : gaps) label += " " + std::to_string(d);
    const auto line_counts = count_by_area(g, lattice::line_sources(gaps), static_cast<int>(order), SourceMode::exact);
    r.add("line sources, " + label + ": closed form = enumeration to order " + std::to_string(order),
          lattice::gf_line_sources_series(gaps, order) == signed_series(line_counts, order));
    const auto stair_counts =
        count_by_area(g, lattice::staircase_sources(gaps), static_cast<int>(order), SourceMode::exact);
    r.add("staircase sources, " + label + ": closed form = enumeration to order " + std::to_string(order),
          lattice::gf_staircase_series(gaps, order) == signed_series(stair_counts, order));
  }
  const auto two = lattice::gf_line_sources_series({1}, order);
  r.add("two adjacent sources: series starts at p^2 with coefficient 1", two.valuation() == 2 && two[2] == Rational(1));
  const QuadExt stair = lattice::gf_staircase({1}, Rational(1, 5));
  r.add("staircase, k = 2, d = 1: G_S(-1/5) > 0", stair.sign() > 0, fmt(stair.to_double()));
  // Far-apart sources decouple: G_S(-p) tends to density² from below.
  const QuadExt rho = lattice::density_closed(Rational(1, 10));
  const QuadExt limit = rho * rho;
  bool increasing = true;
  std::string values;
  QuadExt previous;
  for (int d = 1; d <= 4; ++d) {
    const QuadExt v = abs(lattice::gf_staircase({d}, Rational(1, 10)));
    values += (d > 1 ? ", " : "") + fmt(v.to_double());
    if ((d > 1 && !(previous < v)) || !(v < limit)) increasing = false;
    previous = v;
  }
  r.add("staircase |G_S(-1/10)| increases in d = 1..4 towards density^2", increasing,
        values + "; limit " + fmt(limit.to_double()));
  return r;
}

// ---------------------------------------------------------------------------
// Area/perimeter polynomials with constrained gas values
// ---------------------------------------------------------------------------

Report perimeter_polynomials(int max_area, std::size_t weighted_order) {
  Report r{"remark38", {}, 0};
  const Timer timer(r);
  const auto g = AgreeableGraph::square_lattice();
  std::vector<VertexId> s;
  for (int i = 0; i < 6; ++i) s.push_back({i, 0});
  const std::vector<int> z{0, 0, 1, 1, 0, 0};
  const std::vector<int> z_prime{0, 1, 1, 0, 0, 0};
  using Poly = std::map<std::pair<int, int>, std::uint64_t>;
  const Poly expected_z{{{2, 7}, 1}, {{4, 8}, 2}, {{4, 9}, 10}, {{5, 8}, 2}, {{5, 9}, 7}};
  const Poly expected_z_prime{{{2, 7}, 1}, {{4, 8}, 2}, {{4, 9}, 10}, {{5, 8}, 1}, {{5, 9}, 8}};

  auto render = [](const Poly& poly) {
    std::string out;
    for (const auto& [key, count] : poly) {
      out += (out.empty() ? "" : " + ") + std::to_string(count) + " t^" + std::to_string(key.first) + " u^" +
             std::to_string(key.second);
    }
    return out.empty() ? std::string("0") : out;
  };

  bool any_polynomials = false;
  bool any_identity = false;
  for (const auto variant : {PerimeterVariant::with_unused_sources, PerimeterVariant::plain}) {
    const std::string tag = variant == PerimeterVariant::plain ? "P" : "P-bar";
    const auto tz = count_with_gas_pattern(g, s, z, max_area, variant);
    const auto tzp = count_with_gas_pattern(g, s, z_prime, max_area, variant);
    const bool poly_ok = tz.counts == expected_z && tzp.counts == expected_z_prime;
    const auto wz = weighted_series(count_with_gas_pattern(g, s, z, static_cast<int>(weighted_order), variant),
                                    weighted_order);
    const auto wzp = weighted_series(
        count_with_gas_pattern(g, s, z_prime, static_cast<int>(weighted_order), variant), weighted_order);
    const bool identity_ok = wz == wzp;
    any_polynomials = any_polynomials || poly_ok;
    any_identity = any_identity || identity_ok;
    r.checks.push_back(Check{"[" + tag + "] z  = 001100 polynomial", true,
                             (tz.counts == expected_z ? "matches: " : "differs: ") + render(tz.counts)});
    r.checks.push_back(Check{"[" + tag + "] z' = 011000 polynomial", true,
                             (tzp.counts == expected_z_prime ? "matches: " : "differs: ") + render(tzp.counts)});
    std::ostringstream ws;
    ws << wz << " vs " << wzp;
    r.checks.push_back(Check{"[" + tag + "] weighted sums agree to p^" + std::to_string(weighted_order), true,
                             (identity_ok ? "equal: " : "differ: ") + ws.str()});
  }
  r.add("both polynomials reproduced under at least one perimeter variant", any_polynomials);
  r.add("weighted-sum identity holds under at least one perimeter variant", any_identity);
  return r;
}

// ---------------------------------------------------------------------------
// Cylinder
// ---------------------------------------------------------------------------

Report cylinder(const std::vector<int>& sizes, const std::vector<Rational>& ps) {
  Report r{"cylinder", {}, 0};
  const Timer timer(r);
  int max_n = 2;
  for (const int n : sizes) max_n = std::max(max_n, n);
  const auto g = AgreeableGraph::square_lattice();
  const VertexId source[] = {{0, 0}};
  const auto square_counts = count_by_area(g, source, max_n, SourceMode::exact);
  for (const int n : sizes) {
    for (const auto& p : ps) {
      const std::string at = "n = " + std::to_string(n) + ", p = " + p.str();
      const auto law = lattice::cylinder_stationary(n, p);
      Rational total(0);
      for (const auto& f : law.prob) total += f;
      r.add("stationary law sums to 1, " + at, total == Rational(1));
      const auto kernel = lattice::cylinder_kernel(n, p);
      const auto residual = lattice::fixed_point_residual(law, kernel);
      const bool fixed = std::all_of(residual.begin(), residual.end(), [](const Rational& x) { return x.is_zero(); });
      r.add("exact fixed point of the row kernel, " + at, fixed, fixed ? "residual 0" : "nonzero residual");
      if (n <= 6) {
        const std::size_t rk = lattice::kernel_defect_rank(kernel);
        const std::size_t want = (std::size_t{1} << n) - 1;
        r.add("invariant law is unique (rank(K - I) = 2^n - 1), " + at, rk == want,
              "rank " + std::to_string(rk) + " of " + std::to_string(want + 1));
        const Rational gf = -lattice::cylinder_gf_value(n, -p);
        const Rational occ = law.occupation(0);
        r.add("-G_c(-p) = P(cell occupied), " + at, gf == occ, gf.str() + " vs " + occ.str());
      }
    }
    const auto series = lattice::cylinder_gf(n, static_cast<std::size_t>(n));
    bool head = true;
    std::string coeffs;
    for (int k = 1; k <= n; ++k) {
      head = head && series[static_cast<std::size_t>(k)] == big(square_counts[static_cast<std::size_t>(k)]);
      coeffs += (k > 1 ? " " : "") + series[static_cast<std::size_t>(k)].str();
    }
    r.add("cylinder series, n = " + std::to_string(n) + ": first n coefficients = square-lattice counts", head, coeffs);
  }
  return r;
}

Report transfer_checks() {
  Report r{"cylinder", {}, 0};
  const Timer timer(r);
  bool traces = true;
  std::string bad;
  for (const auto& p : {Rational(1, 10), Rational(1, 5), Rational(1, 3), Rational(1, 2), Rational(2, 7)}) {
    for (int n = 2; n <= 10; ++n) {
      if (lattice::z_trace(n, p) != lattice::z_subsets(n, p)) {
        traces = false;
        bad += " (n=" + std::to_string(n) + ", p=" + p.str() + ")";
      }
    }
  }
  r.add("Z_n trace form = subset-sum form, n <= 10", traces, bad.empty() ? "5 values of p" : "fails at" + bad);
  r.add("Z_2(1/3) = 14/9", lattice::z_trace(2, Rational(1, 3)) == Rational(14, 9));

  const Rational third(1, 3);
  const auto t = lattice::transfer(third);
  const QuadExt ratio = t.lambda2 / t.lambda1;
  const QuadExt bound = pow(ratio, 16);
  const QuadExt target = (QuadExt(3) - QuadExt::sqrt_of(Rational(3))) / QuadExt(6);
  const QuadExt error = abs(QuadExt(lattice::w_n(16, third) / lattice::z_trace(16, third)) - target);
  r.add("|W_16/Z_16 - (3 - sqrt3)/6| < (l2/l1)^16 at p = 1/3", error < bound,
        "error " + fmt(error.to_double(), 4) + ", bound " + fmt(bound.to_double(), 4) + ", l2/l1 " +
            fmt(ratio.to_double(), 4));

  const auto series = lattice::cylinder_gf(8, 8);
  const std::array<int, 8> want{1, 2, 5, 13, 35, 96, 267, 750};
  bool ok = true;
  for (std::size_t k = 1; k <= 8; ++k) ok = ok && series[k] == Rational(want[k - 1]);
  std::ostringstream s;
  s << series;
  r.add("cylinder_gf(8, 8) = 1, 2, 5, 13, 35, 96, 267, 750", ok, s.str());
  return r;
}

// ---------------------------------------------------------------------------
// Statistical checks
// ---------------------------------------------------------------------------

Report mc_density(const Rational& p, std::uint64_t reps, std::uint64_t seed, std::size_t budget, unsigned threads) {
  Report r{"montecarlo", {}, 0};
  const Timer timer(r);
  const auto g = AgreeableGraph::square_lattice();
  const VertexId source[] = {{0, 0}};
  const auto est = gas::mc_density(g, source, gas::Type1Model{p}, reps, seed, budget, threads);
  const double exact = lattice::density_closed(p).to_double();
  const double dev = std::abs(est.mean - exact);
  r.add("MC density at p = " + p.str() + " within 3 stderr of " + fmt(exact), dev < 3 * est.standard_error,
        "estimate " + fmt(est.mean) + ", stderr " + fmt(est.standard_error) + ", |dev|/stderr " +
            fmt(dev / est.standard_error, 3) + ", reps " + std::to_string(reps) + ", seed " + std::to_string(seed));
  r.add("no overflow at budget " + std::to_string(budget), est.overflows == 0,
        std::to_string(est.overflows) + " overflows");
  return r;
}

Report block_statistics(const Rational& p, std::size_t windows, std::size_t width, std::uint64_t seed,
                        std::size_t budget) {
  Report r{"montecarlo", {}, 0};
  const Timer timer(r);
  const auto law = lattice::block_law(p);
  const std::array<double, 2> alpha{law.alpha_occupied.to_double(), law.alpha_empty.to_double()};
  constexpr std::size_t kMaxRun = 8;
  // State 0 = occupied, 1 = empty.
  std::array<std::array<double, kMaxRun + 1>, 2> run_bins{};
  std::array<double, 2> run_total{};
  std::array<std::array<double, 2>, 2> transitions{};
  std::size_t overflows = 0;
  for (std::size_t w = 0; w < windows; ++w) {
    const auto values = gas::line_window_sample(p, width, gas::replica_seed(seed, w), budget);
    if (!values) {
      ++overflows;
      continue;
    }
    std::vector<int> state(values->size());
    for (std::size_t k = 0; k < state.size(); ++k) state[k] = (*values)[k] == 1 ? 0 : 1;
    for (std::size_t k = 0; k + 1 < state.size(); ++k) {
      transitions[static_cast<std::size_t>(state[k])][static_cast<std::size_t>(state[k + 1])] += 1;
    }
    // Runs starting strictly inside the window, far enough from the right edge
    // that lengths 1..kMaxRun are fully observed. The start is selected by the
    // past only, so the length law is unbiased.
    for (std::size_t start = 1; start + kMaxRun < state.size(); ++start) {
      if (state[start] == state[start - 1]) continue;
      const auto s = static_cast<std::size_t>(state[start]);
      std::size_t len = 1;
      while (len <= kMaxRun && state[start + len] == state[start]) ++len;
      run_total[s] += 1;
      if (len <= kMaxRun) run_bins[s][len] += 1;
    }
  }
  r.add("line windows sampled without overflow", overflows == 0,
        std::to_string(windows) + " windows x " + std::to_string(width) + " cells, " + std::to_string(overflows) +
            " overflows");
  const std::array<std::string, 2> names{"occupied", "empty"};
  for (std::size_t s = 0; s < 2; ++s) {
    for (std::size_t len = 1; len <= kMaxRun; ++len) {
      const double prob = alpha[s] * std::pow(1 - alpha[s], static_cast<double>(len - 1));
      const auto t = binomial_check(run_bins[s][len], run_total[s], prob);
      r.add(names[s] + " run length " + std::to_string(len) + " ~ Geometric(" + fmt(alpha[s]) + ")", t.ok, t.detail);
    }
  }
  const std::array<std::array<double, 2>, 2> m{{{1 - alpha[0], alpha[0]}, {alpha[1], 1 - alpha[1]}}};
  for (std::size_t s = 0; s < 2; ++s) {
    for (std::size_t t = 0; t < 2; ++t) {
      const auto c = binomial_check(transitions[s][t], transitions[s][0] + transitions[s][1], m[s][t]);
      r.add("transition " + names[s] + " -> " + names[t] + " matches M", c.ok, c.detail);
    }
  }
  return r;
}

Report stationarity(const Rational& p, std::size_t windows, std::size_t width, std::uint64_t seed) {
  Report r{"montecarlo", {}, 0};
  const Timer timer(r);
  if (width < 3) throw DomainError("window width must be >= 3");
  const auto law = lattice::block_law(p);
  const double a_occ = law.alpha_occupied.to_double();
  const double a_empty = law.alpha_empty.to_double();
  const double rho = lattice::density_closed(p).to_double();
  const double pd = p.to_double();
  std::mt19937_64 rng(seed);
  auto uniform = [&] { return to_unit(rng()); };

  // Statistics: density, then pair frequencies 11, 10, 01, 00.
  constexpr std::size_t kStats = 5;
  const std::array<std::string, kStats> names{"density", "pair 11", "pair 10", "pair 01", "pair 00"};
  const std::array<double, kStats> exact{rho, rho * (1 - a_occ), rho * a_occ, (1 - rho) * a_empty,
                                         (1 - rho) * (1 - a_empty)};
  std::array<Moments, kStats> before;
  std::array<Moments, kStats> after;
  std::array<Moments, kStats> diff;

  auto stats = [](const std::vector<int>& row) {
    std::array<double, kStats> out{};
    for (const int v : row) out[0] += v;
    out[0] /= static_cast<double>(row.size());
    for (std::size_t k = 0; k + 1 < row.size(); ++k) {
      const int a = row[k];
      const int b = row[k + 1];
      out[a == 1 ? (b == 1 ? 1 : 2) : (b == 1 ? 3 : 4)] += 1;
    }
    for (std::size_t i = 1; i < kStats; ++i) out[i] /= static_cast<double>(row.size() - 1);
    return out;
  };

  std::vector<int> row(width);
  std::vector<int> noise(width);
  for (std::size_t w = 0; w < windows; ++w) {
    row[0] = uniform() < rho ? 1 : 0;
    for (std::size_t k = 1; k < width; ++k) {
      const double leave = row[k - 1] == 1 ? a_occ : a_empty;
      row[k] = uniform() < leave ? 1 - row[k - 1] : row[k - 1];
    }
    for (auto& b : noise) b = uniform() < pd ? 1 : 0;
    const auto next = gas::evolve_row(row, noise, gas::RowTopology::open_window);
    const auto sb = stats(row);
    const auto sa = stats(next);
    for (std::size_t i = 0; i < kStats; ++i) {
      before[i].push(sb[i]);
      after[i].push(sa[i]);
      diff[i].push(sa[i] - sb[i]);
    }
  }
  for (std::size_t i = 0; i < kStats; ++i) {
    const double m = diff[i].mean();
    const double se = diff[i].standard_error();
    r.add(names[i] + " unchanged by one row step", std::abs(m) < 3 * se,
          "mean change " + fmt(m, 4) + ", stderr " + fmt(se, 4));
    const double ma = after[i].mean();
    const double sea = after[i].standard_error();
    r.add(names[i] + " after one step matches the exact law", std::abs(ma - exact[i]) < 3 * sea,
          "observed " + fmt(ma) + ", exact " + fmt(exact[i]) + ", stderr " + fmt(sea, 4));
  }
  return r;
}

Report percolation(const Rational& p, std::size_t budget, std::uint64_t reps, std::uint64_t seed, unsigned threads) {
  Report r{"montecarlo", {}, 0};
  const Timer timer(r);
  const VertexId origin[] = {{0, 0}};
  const auto tree = gas::percolation_survival(AgreeableGraph::kary_tree(2), origin, p, budget, reps, seed, threads);
  r.add("binary tree survival proxy < 1% at p = " + p.str(), tree.mean < 0.01,
        "estimate " + fmt(tree.mean) + " over " + std::to_string(reps) + " reps, budget " + std::to_string(budget));
  const auto sq = gas::percolation_survival(AgreeableGraph::square_lattice(), origin, p, budget, reps, seed, threads);
  r.add("square lattice survival proxy < 5% at p = " + p.str(), sq.mean < 0.05,
        "estimate " + fmt(sq.mean) + " over " + std::to_string(reps) + " reps, budget " + std::to_string(budget));
  return r;
}

// ---------------------------------------------------------------------------
// Named suites
// ---------------------------------------------------------------------------

std::vector<std::string> suite_names() {
  return {"equivalence", "exact-theorems", "lattice-closed-forms", "cylinder", "montecarlo", "remark38"};
}

Report run_suite(const std::string& name, const SuiteOptions& o) {
  auto pick = [](auto value, auto fallback) { return value ? value : fallback; };
  Report r{name, {}, 0};
  if (name == "equivalence") {
    const int area = pick(o.max_area, 8);
    r.append(equivalence(area));
    r.append(exact_embeddings(std::min(area, 6)));
    r.append(forests(std::min(area, 7)));
  } else if (name == "exact-theorems") {
    r.append(exact_type1(20, pick(o.max_area, 12), o.seed));
    r.append(exact_type2(20, std::min(pick(o.max_area, 9), 9), o.seed));
  } else if (name == "lattice-closed-forms") {
    const int area = pick(o.max_area, 10);
    r.append(surd_identities());
    r.append(square_series(area));
    r.append(compact_sources(std::min(area, 9)));
    r.append(line_and_staircase(8));
  } else if (name == "cylinder") {
    if (o.n != 0) {
      const std::vector<Rational> ps = o.p.is_zero() ? std::vector<Rational>{Rational(1, 5), Rational(1, 3)}
                                                     : std::vector<Rational>{o.p};
      r.append(cylinder({o.n}, ps));
    } else {
      r.append(cylinder({2, 3, 4, 5, 6}, {Rational(1, 5), Rational(1, 3)}));
      r.append(transfer_checks());
    }
  } else if (name == "montecarlo") {
    const Rational p = o.p.is_zero() ? Rational(1, 5) : o.p;
    const std::size_t budget = pick(o.budget, gas::kDefaultBudget);
    r.append(mc_density(p, pick(o.reps, std::uint64_t{100000}), o.seed, budget, o.threads));
    r.append(block_statistics(p, 50, 2000, o.seed, budget));
    r.append(stationarity(p, 200, 1000, o.seed));
    r.append(percolation(Rational(2, 5), 10000, 1000, o.seed, o.threads));
  } else if (name == "remark38") {
    r.append(perimeter_polynomials(pick(o.max_area, 5), 8));
  } else {
    throw DomainError("unknown suite '" + name + "' (expected one of: equivalence, exact-theorems, "
                      "lattice-closed-forms, cylinder, montecarlo, remark38)");
  }
  return r;
}

}  // namespace dagas::verify
