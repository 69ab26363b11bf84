#include <doctest.h>

#include <set>
#include <vector>

#include "dagas/animals.hpp"
#include "dagas/errors.hpp"
#include "dagas/gas.hpp"
#include "oracles.hpp"

using namespace dagas;

namespace {

oracle::CellSet as_set(const std::vector<VertexId>& v) { return {v.begin(), v.end()}; }

void check_counts(const AgreeableGraph& g, const std::vector<VertexId>& source, int max_area) {
  const auto exact = count_by_area(g, source, max_area, SourceMode::exact);
  CHECK(exact == oracle::area_counts(oracle::animals_exact(g, source, max_area), max_area));
  const auto over = count_by_area(g, source, max_area, SourceMode::over);
  CHECK(over == oracle::area_counts(oracle::animals_over(g, source, max_area), max_area));
}

}  // namespace

TEST_CASE("square lattice counts from one source") {
  const auto g = AgreeableGraph::square_lattice();
  const std::vector<VertexId> s{{0, 0}};
  const auto counts = count_by_area(g, s, 10, SourceMode::exact);
  const std::vector<std::uint64_t> known{0, 1, 2, 5, 13, 35, 96, 267, 750, 2123, 6046};
  CHECK(counts == known);
  CHECK(counts == oracle::area_counts(oracle::animals_exact(g, s, 10), 10));
}

TEST_CASE("growth enumeration agrees with set-closure oracle") {
  const auto sq = AgreeableGraph::square_lattice();
  check_counts(sq, {{0, 0}, {1, 0}}, 7);
  check_counts(sq, {{0, 0}, {2, 0}}, 7);
  check_counts(sq, {{0, 0}, {3, -1}}, 7);
  check_counts(sq, {{0, 0}, {1, 0}, {2, 0}}, 6);
  for (int n = 2; n <= 4; ++n) check_counts(AgreeableGraph::cylinder(n), {{0, 0}}, 7);
  check_counts(AgreeableGraph::cylinder(4), {{0, 0}, {2, 0}}, 6);
  check_counts(AgreeableGraph::kary_tree(2), {{0, 0}}, 8);
  check_counts(AgreeableGraph::kary_tree(3), {{1, 1}, {2, 1}}, 6);
}

TEST_CASE("rooted subtrees of the binary tree are counted by Catalan numbers") {
  const auto counts = count_by_area(AgreeableGraph::kary_tree(2), std::vector<VertexId>{{0, 0}}, 8, SourceMode::exact);
  const std::vector<std::uint64_t> catalan{0, 1, 2, 5, 14, 42, 132, 429, 1430};
  CHECK(counts == catalan);
}

TEST_CASE("random DAGs: counts, perimeters and validity") {
  for (std::uint32_t seed = 1; seed <= 15; ++seed) {
    const auto g = oracle::random_dag(seed, 3 + static_cast<int>(seed % 7), 0.35);
    const int cap = static_cast<int>(g.vertex_count());
    for (const auto& s : oracle::small_free_sets(g)) {
      CAPTURE(seed);
      check_counts(g, s, cap);

      const auto brute = oracle::animals_over(g, s, cap);
      const auto plain = count_by_area_perimeter(g, s, cap, SourceMode::over, PerimeterVariant::plain);
      const auto bar = count_by_area_perimeter(g, s, cap, SourceMode::over, PerimeterVariant::with_unused_sources);
      std::map<std::pair<int, int>, std::uint64_t> want_plain, want_bar;
      for (const auto& a : brute) {
        int unused = 0;
        for (const auto& v : s) unused += a.count(v) ? 0 : 1;
        const int per = oracle::perimeter_size(g, a);
        ++want_plain[{static_cast<int>(a.size()), per}];
        ++want_bar[{static_cast<int>(a.size()), per + unused}];
      }
      CHECK(plain.counts == want_plain);
      CHECK(bar.counts == want_bar);

      for (const auto& a : enumerate(g, s, cap, SourceMode::exact)) {
        CHECK(is_directed_animal(g, a.cells, s));
        CHECK(as_set(minimal_source(g, a.cells)) == as_set(s));
      }
    }
  }
}

TEST_CASE("enumerate lists distinct valid animals in a stable order") {
  const auto g = AgreeableGraph::square_lattice();
  const std::vector<VertexId> s{{0, 0}, {2, 0}};
  const auto list = enumerate(g, s, 6, SourceMode::exact);
  std::set<oracle::CellSet> seen;
  for (const auto& a : list) {
    CHECK(a.mode == SourceMode::exact);
    CHECK(seen.insert(as_set(a.cells)).second);
    CHECK(as_set(perimeter(g, a.cells)).size() == static_cast<std::size_t>(oracle::perimeter_size(g, as_set(a.cells))));
  }
  CHECK(seen == oracle::animals_exact(g, s, 6));
  CHECK(list == enumerate(g, s, 6, SourceMode::exact));
}

TEST_CASE("source validation and edge cases") {
  const auto g = AgreeableGraph::square_lattice();
  const std::vector<VertexId> chain{{0, 0}, {0, 1}};
  CHECK_THROWS_AS(count_by_area(g, chain, 4, SourceMode::exact), DomainError);
  const std::vector<VertexId> repeated{{0, 0}, {0, 0}};
  CHECK_THROWS_AS(count_by_area(g, repeated, 4, SourceMode::exact), DomainError);
  const std::vector<VertexId> s{{0, 0}};
  CHECK(count_by_area(g, s, 0, SourceMode::exact) == std::vector<std::uint64_t>{0});
  CHECK(enumerate(g, s, 0, SourceMode::exact).empty());
  const std::vector<VertexId> pair{{0, 0}, {1, 0}};
  CHECK(count_by_area(g, pair, 1, SourceMode::exact) == std::vector<std::uint64_t>{0, 0});

  CHECK_THROWS_AS(make_animal(g, {{0, 0}, {5, 5}}, {{0, 0}}, SourceMode::exact), DomainError);
  CHECK_THROWS_AS(make_animal(g, {{0, 0}, {1, 0}}, {{0, 0}}, SourceMode::exact), DomainError);
  const auto over = make_animal(g, {{0, 0}, {0, 1}}, {{0, 0}, {1, 0}}, SourceMode::over);
  CHECK(over.area() == 2);
  CHECK(over.contains({0, 1}));
}

TEST_CASE("perimeter with and without special sites") {
  const auto g = AgreeableGraph::square_lattice();
  const std::vector<VertexId> cells{{0, 0}, {1, 1}};
  CHECK(as_set(perimeter(g, cells)) == oracle::CellSet{{0, 1}, {1, 2}, {2, 2}});
  const std::vector<VertexId> special{{0, 0}, {3, 0}};
  CHECK(as_set(perimeter(g, cells, std::span<const VertexId>(special))) ==
        oracle::CellSet{{0, 1}, {1, 2}, {2, 2}, {3, 0}});
}

TEST_CASE("sub-animals match a filtered oracle") {
  const auto g = AgreeableGraph::square_lattice();
  const std::vector<VertexId> s{{0, 0}};
  for (const auto& a : enumerate(g, s, 6, SourceMode::exact)) {
    const auto cells = as_set(a.cells);
    std::set<oracle::CellSet> want;
    for (const auto& b : oracle::animals_exact(g, s, static_cast<int>(cells.size()))) {
      if (std::includes(cells.begin(), cells.end(), b.begin(), b.end())) want.insert(b);
    }
    std::set<oracle::CellSet> got;
    for (const auto& b : sub_animals(g, a, s)) got.insert(as_set(b.cells));
    CHECK(got == want);
  }
}

TEST_CASE("gas-pattern filters agree with the recursive gas value") {
  const auto g = AgreeableGraph::square_lattice();
  const std::vector<VertexId> s{{0, 0}, {1, 0}};
  const auto all = oracle::animals_over(g, s, 6);
  for (const std::vector<int>& pattern : {std::vector<int>{0, 0}, {0, 1}, {1, 0}, {1, 1}}) {
    std::set<oracle::CellSet> want;
    for (const auto& a : all) {
      if (oracle::chi(g, a, s[0]) == pattern[0] && oracle::chi(g, a, s[1]) == pattern[1]) want.insert(a);
    }
    std::set<oracle::CellSet> got;
    for (const auto& a : enumerate_with_gas_pattern(g, s, pattern, 6)) got.insert(as_set(a.cells));
    CHECK(got == want);
    const auto table = count_with_gas_pattern(g, s, pattern, 6, PerimeterVariant::plain);
    std::uint64_t total = 0;
    for (const auto& [key, n] : table.counts) total += n;
    CHECK(total == want.size());
  }
  CHECK_THROWS_AS(count_with_gas_pattern(g, s, {1}, 4, PerimeterVariant::plain), DomainError);
  CHECK_THROWS_AS(count_with_gas_pattern(g, s, {1, 2}, 4, PerimeterVariant::plain), DomainError);
}
