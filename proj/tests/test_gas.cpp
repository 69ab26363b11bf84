#include <doctest.h>

#include <cmath>
#include <map>
#include <vector>

#include "dagas/animals.hpp"
#include "dagas/errors.hpp"
#include "dagas/gas.hpp"
#include "oracles.hpp"

using namespace dagas;
using dagas::exact::Rational;

namespace {

oracle::CellSet as_set(const std::vector<VertexId>& v) { return {v.begin(), v.end()}; }

// Gas value on the whole (finite) graph under a fixed coloring.
int recursive_value(const AgreeableGraph& g, const gas::Coloring2& col, VertexId v) {
  if (col.color(v) != gas::Color::a) return 0;
  int value = 1;
  for (const auto& c : g.children(v)) value *= 1 - recursive_value(g, col, c);
  return value;
}

int recursive_value2(const AgreeableGraph& g, const gas::Coloring3& col, VertexId v) {
  switch (col.color(v)) {
    case gas::Color::b: return 0;
    case gas::Color::c: return 1;
    default: break;
  }
  int value = 1;
  for (const auto& c : g.children(v)) value = std::min(value, recursive_value2(g, col, c));
  return value;
}

}  // namespace

TEST_CASE("chi agrees with plain recursion") {
  const auto g = AgreeableGraph::square_lattice();
  const std::vector<VertexId> s{{0, 0}};
  for (const auto& a : enumerate(g, s, 7, SourceMode::exact)) {
    const auto cells = as_set(a.cells);
    for (const auto& v : a.cells) CHECK(gas::chi(g, a, v) == oracle::chi(g, cells, v));
    CHECK(gas::chi(g, a, {9, 9}) == 0);
  }
}

TEST_CASE("chi, nim, D and Delta coincide on several graphs") {
  std::vector<std::pair<AgreeableGraph, int>> cases;
  cases.emplace_back(AgreeableGraph::cylinder(3), 7);
  cases.emplace_back(AgreeableGraph::kary_tree(2), 7);
  cases.emplace_back(AgreeableGraph::kary_tree(3), 6);
  for (std::uint32_t seed = 100; seed < 110; ++seed) cases.emplace_back(oracle::random_dag(seed, 8, 0.4), 8);
  for (const auto& [g, area] : cases) {
    const VertexId root = g.is_finite() ? g.vertices().front() : VertexId{0, 0};
    const std::vector<VertexId> s{root};
    for (const auto& a : enumerate(g, s, area, SourceMode::exact)) {
      const int x = gas::chi(g, a, root);
      CHECK(x == gas::nim_value(g, a, root));
      CHECK(x == gas::d_signed(g, a, root));
      CHECK(x == gas::delta_trees(g, a, root));
      CHECK(gas::exact_embedding_sign_sum(g, a, root) == (a.area() % 2 == 0 ? 1 : -1));
    }
  }
}

TEST_CASE("set-source D and Delta: D_S = (-1)^(1+|S|) Delta_S = (-1)^(1+|S|) prod chi") {
  const auto g = AgreeableGraph::square_lattice();
  for (const std::vector<VertexId>& s : {std::vector<VertexId>{{0, 0}, {1, 0}}, {{0, 0}, {2, 0}},
                                         {{0, 0}, {1, 0}, {3, 0}}}) {
    const std::int64_t sign = s.size() % 2 == 1 ? 1 : -1;
    for (const auto& a : enumerate(g, s, 6, SourceMode::exact)) {
      const auto cells = as_set(a.cells);
      int product = 1;
      for (const auto& v : s) product *= oracle::chi(g, cells, v);
      const std::int64_t delta = gas::delta_forest(g, a, s);
      CHECK(delta == product);
      CHECK(gas::d_signed_set(g, a, s) == sign * delta);
    }
  }
  const std::vector<VertexId> apart{{0, 0}, {2, 0}};
  const auto isolated = make_animal(g, apart, apart, SourceMode::exact);
  CHECK(gas::d_signed_set(g, isolated, apart) == -1);
  CHECK(gas::delta_forest(g, isolated, apart) == 1);
  const std::vector<VertexId> s{{0, 0}, {1, 0}};
  const auto single = make_animal(g, {{0, 0}}, {{0, 0}}, SourceMode::exact);
  CHECK_THROWS_AS(gas::d_signed_set(g, single, s), DomainError);
}

TEST_CASE("type-1 exact moments equal the brute-force sum and the signed area series") {
  const std::vector<Rational> ps{Rational(1, 10), Rational(1, 3), Rational(1, 2)};
  for (std::uint32_t seed = 1; seed <= 12; ++seed) {
    const auto g = oracle::random_dag(seed, 4 + static_cast<int>(seed % 6), 0.3);
    const int cap = static_cast<int>(g.vertex_count());
    for (const auto& s : oracle::small_free_sets(g)) {
      const auto counts = oracle::area_counts(oracle::animals_exact(g, s, cap), cap);
      for (const auto& p : ps) {
        Rational series(0);
        for (std::size_t n = 0; n < counts.size(); ++n) {
          series += Rational(static_cast<long>(counts[n])) * oracle::rpow(-p, static_cast<int>(n));
        }
        const Rational want = s.size() % 2 == 0 ? series : -series;
        const Rational got = gas::exact_density_type1(g, s, p);
        CHECK(got == oracle::brute_type1(g, s, p));
        CHECK(got == want);
      }
    }
  }
}

TEST_CASE("type-2 exact moments equal the brute-force sum and the area/perimeter series") {
  const std::vector<std::array<Rational, 3>> triples{{Rational(1, 10), Rational(8, 10), Rational(1, 10)},
                                                     {Rational(1, 3), Rational(1, 3), Rational(1, 3)},
                                                     {Rational(1, 2), Rational(1, 4), Rational(1, 4)}};
  for (std::uint32_t seed = 20; seed <= 28; ++seed) {
    const auto g = oracle::random_dag(seed, 3 + static_cast<int>(seed % 5), 0.35);
    const int cap = static_cast<int>(g.vertex_count());
    for (const auto& s : oracle::small_free_sets(g)) {
      const auto animals = oracle::animals_over(g, s, cap);
      for (const auto& [pa, pb, pc] : triples) {
        Rational series(0);
        for (const auto& a : animals) {
          int unused = 0;
          for (const auto& v : s) unused += a.count(v) ? 0 : 1;
          series += oracle::rpow(pa, static_cast<int>(a.size())) *
                    oracle::rpow(pc, oracle::perimeter_size(g, a) + unused);
        }
        const Rational got = gas::exact_density_type2(g, s, pa, pb, pc);
        CHECK(got == oracle::brute_type2(g, s, pa, pb, pc));
        CHECK(got == series);
      }
    }
  }
}

TEST_CASE("exact oracles refuse oversized graphs and bad probabilities") {
  const auto g = oracle::random_dag(3, 8, 0.2);
  const std::vector<VertexId> s{g.vertices().front()};
  CHECK_THROWS_AS(gas::exact_density_type1(g, s, Rational(1, 2), 3), ResourceError);
  CHECK_THROWS_AS(gas::exact_density_type1(g, s, Rational(3, 2)), DomainError);
  CHECK_THROWS_AS(gas::exact_density_type2(g, s, Rational(1, 2), Rational(1, 2), Rational(1, 2)), DomainError);
}

TEST_CASE("hash and seed streams are fixed") {
  // First output of a splitmix64 stream seeded with 0.
  CHECK(gas::replica_seed(0, 0) == 0xE220A8397B1DCDAFULL);
  CHECK(gas::vertex_hash(7, {1, 2}) == gas::vertex_hash(7, {1, 2}));
  CHECK(gas::vertex_hash(7, {1, 2}) != gas::vertex_hash(7, {2, 1}));
  CHECK(gas::vertex_hash(7, {1, 2}) != gas::vertex_hash(8, {1, 2}));
}

TEST_CASE("colorings have the requested marginals") {
  const gas::Coloring2 c2(Rational(1, 5), 11);
  const gas::Coloring3 c3(Rational(1, 2), Rational(3, 10), Rational(1, 5), 11);
  const int n = 200000;
  int a2 = 0;
  std::array<int, 3> k3{};
  for (int i = 0; i < n; ++i) {
    const VertexId v{i % 1000, i / 1000};
    a2 += c2.color(v) == gas::Color::a;
    ++k3[static_cast<int>(c3.color(v))];
  }
  // Two-sided test at the 1% level.
  auto within = [n](int count, double p) {
    return std::abs(count - n * p) < 2.576 * std::sqrt(n * p * (1 - p));
  };
  CHECK(within(a2, 0.2));
  CHECK(within(k3[0], 0.5));
  CHECK(within(k3[1], 0.3));
  CHECK(within(k3[2], 0.2));
  CHECK(gas::Coloring2(Rational(1), 3).color({4, 4}) == gas::Color::a);
  CHECK(gas::Coloring2(Rational(0), 3).color({4, 4}) == gas::Color::b);
  CHECK_THROWS_AS(gas::Coloring3(Rational(1, 2), Rational(1, 2), Rational(1, 2), 0), DomainError);
}

TEST_CASE("coloring hash: joint colors of nearby vertices are independent") {
  const double p = 0.3;
  const gas::Coloring2 col(Rational(3, 10), 2024);
  const int n = 100000;
  for (const VertexId offset : {VertexId{0, 1}, VertexId{1, 1}, VertexId{1, 0}, VertexId{0, 2}, VertexId{-1, 0}}) {
    int both = 0;
    for (int i = 0; i < n; ++i) {
      const VertexId v{i % 500, i / 500};
      const VertexId w{v.x + offset.x, v.y + offset.y};
      both += col.color(v) == gas::Color::a && col.color(w) == gas::Color::a;
    }
    CAPTURE(offset.x);
    CAPTURE(offset.y);
    const double q = p * p;
    CHECK(std::abs(both - n * q) < 2.576 * std::sqrt(n * q * (1 - q)));
  }
}

TEST_CASE("lazy samples match full recursion under the same coloring") {
  const auto dag = oracle::random_dag(77, 12, 0.3);
  for (std::uint64_t seed = 0; seed < 50; ++seed) {
    const gas::Coloring2 c2(Rational(1, 2), seed);
    const gas::Coloring3 c3(Rational(1, 3), Rational(1, 3), Rational(1, 3), seed);
    for (const auto& v : dag.vertices()) {
      const auto r1 = gas::gas_type1_sample(dag, v, c2);
      REQUIRE_FALSE(r1.overflow);
      CHECK(r1.value == recursive_value(dag, c2, v));
      const auto r2 = gas::gas_type2_sample(dag, v, c3);
      REQUIRE_FALSE(r2.overflow);
      CHECK(r2.value == recursive_value2(dag, c3, v));
    }
  }
  // On the lattice the explored animal determines the value.
  const auto sq = AgreeableGraph::square_lattice();
  for (std::uint64_t seed = 0; seed < 200; ++seed) {
    const gas::Coloring2 col(Rational(1, 3), seed);
    const auto r = gas::gas_type1_sample(sq, {0, 0}, col);
    REQUIRE_FALSE(r.overflow);
    CHECK(r.value == oracle::chi(sq, as_set(r.explored_animal.cells), {0, 0}));
    CHECK(r.explored_cells >= r.explored_animal.cells.size());
  }
}

TEST_CASE("budget overflow is reported, not guessed") {
  const auto tree = AgreeableGraph::kary_tree(2);
  const auto r = gas::gas_type1_sample(tree, {0, 0}, gas::Coloring2(Rational(1), 5), 50);
  CHECK(r.overflow);
  const std::vector<VertexId> root{{0, 0}};
  const auto surv = gas::percolation_survival(tree, root, Rational(1), 30, 20, 1, 2);
  CHECK(surv.mean == 1.0);
  const auto dead = gas::percolation_survival(tree, root, Rational(0), 30, 20, 1, 2);
  CHECK(dead.mean == 0.0);
}

TEST_CASE("Monte Carlo is deterministic in the seed and independent of threads") {
  const auto g = AgreeableGraph::square_lattice();
  const std::vector<VertexId> s{{0, 0}};
  const gas::GasModel model = gas::Type1Model{Rational(1, 5)};
  const auto one = gas::mc_density(g, s, model, 4000, 9, gas::kDefaultBudget, 1);
  const auto four = gas::mc_density(g, s, model, 4000, 9, gas::kDefaultBudget, 4);
  CHECK(one == four);
  CHECK(one.reps == 4000);
  CHECK(one.seed == 9);
  CHECK(gas::mc_density(g, s, model, 4000, 10, gas::kDefaultBudget, 1) != one);
}

TEST_CASE("Monte Carlo agrees with exact values on a finite DAG") {
  const auto g = oracle::random_dag(5, 9, 0.35);
  const std::vector<VertexId> s{g.vertices().front()};
  const Rational p(2, 5);
  const auto est = gas::mc_density(g, s, gas::Type1Model{p}, 20000, 3, 1000, 2);
  const double exact = gas::exact_density_type1(g, s, p).to_double();
  CHECK(std::abs(est.mean - exact) < 4 * est.standard_error + 1e-12);

  const auto est2 = gas::mc_density(g, s, gas::Type2Model{Rational(1, 3), Rational(1, 3), Rational(1, 3)}, 20000, 3);
  const double exact2 = gas::exact_density_type2(g, s, Rational(1, 3), Rational(1, 3), Rational(1, 3)).to_double();
  CHECK(std::abs(est2.mean - exact2) < 4 * est2.standard_error + 1e-12);
  CHECK_THROWS_AS(gas::mc_density(g, s, gas::Type1Model{p}, 0, 3), DomainError);
}

TEST_CASE("row evolution") {
  const std::vector<int> row{1, 0, 0, 1, 0};
  const std::vector<int> ones(5, 1);
  CHECK(gas::evolve_row(row, ones, gas::RowTopology::open_window) == std::vector<int>{0, 1, 0, 0});
  CHECK(gas::evolve_row(row, ones, gas::RowTopology::cylinder) == std::vector<int>{0, 1, 0, 0, 0});
  const std::vector<int> noise{1, 0, 1, 1, 1};
  CHECK(gas::evolve_row(row, noise, gas::RowTopology::open_window) == std::vector<int>{0, 0, 0, 0});

  // The row below the sampled line is one evolution step under the coloring of that row.
  const Rational p(1, 5);
  const auto sq = AgreeableGraph::square_lattice();
  const gas::Coloring2 col(p, 4);
  const auto top = gas::line_window_sample(p, 40, 4);
  REQUIRE(top.has_value());
  std::vector<int> below, noise_row;
  for (int k = 0; k < 41; ++k) {
    below.push_back(gas::gas_type1_sample(sq, {k, 1}, col).value);
  }
  for (int k = 0; k < 40; ++k) noise_row.push_back(col.color({k, 0}) == gas::Color::a);
  CHECK(gas::evolve_row(below, noise_row, gas::RowTopology::open_window) == *top);
}
