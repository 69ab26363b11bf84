#pragma once

#include <cstdint>
#include <functional>
#include <map>
#include <optional>
#include <span>
#include <utility>
#include <vector>

#include "dagas/graph.hpp"

namespace dagas {

enum class SourceMode { exact, over };

/// Which perimeter an area/perimeter table counts: P(A), or P(A) ∪ (S ∖ A).
enum class PerimeterVariant { plain, with_unused_sources };

/// Finite directed animal with its declared (exact or over-) source.
/// Cells and source are kept sorted in vertex order.
struct Animal {
  std::vector<VertexId> cells;
  std::vector<VertexId> source;
  SourceMode mode = SourceMode::exact;

  std::size_t area() const { return cells.size(); }
  bool contains(VertexId v) const;

  friend bool operator==(const Animal&, const Animal&) = default;
};

/// Builds an Animal after checking that every cell is reachable from
/// source ∩ cells inside the cells and that the source fits the mode.
Animal make_animal(const AgreeableGraph& g, std::vector<VertexId> cells, std::vector<VertexId> source,
                   SourceMode mode);

/// Cells with no father among the cells.
std::vector<VertexId> minimal_source(const AgreeableGraph& g, std::span<const VertexId> cells);

/// Children of cells lying outside the cells, plus (special ∖ cells) when given. Sorted.
std::vector<VertexId> perimeter(const AgreeableGraph& g, std::span<const VertexId> cells,
                                std::optional<std::span<const VertexId>> special = std::nullopt);

/// True when every cell is reachable from `source ∩ cells` through cells.
bool is_directed_animal(const AgreeableGraph& g, std::span<const VertexId> cells,
                        std::span<const VertexId> source);

/// One closed-off animal produced by the growth enumeration. Spans are valid
/// only during the callback; cells are in growth order, not sorted.
struct GrowthView {
  std::span<const VertexId> cells;
  std::span<const VertexId> perimeter;       ///< P(A)
  std::span<const VertexId> unused_sources;  ///< S ∖ A (empty in exact mode)
};

/// Visits every DA with the given source and area ≤ max_area exactly once.
///
/// Frontier sites are decided in/out in first-seen order, so the closed
/// animal's excluded sites are exactly its perimeter. In exact mode every
/// source vertex is a cell; in over mode sources are themselves frontier sites
/// and the empty animal is visited. Throws DomainError when `source` is not free.
void for_each_animal(const AgreeableGraph& g, std::span<const VertexId> source, int max_area,
                     SourceMode mode, const std::function<void(const GrowthView&)>& visit);

/// All animals as values in canonical order (cells compared as sorted (row, column) lists).
std::vector<Animal> enumerate(const AgreeableGraph& g, std::span<const VertexId> source, int max_area,
                              SourceMode mode);

/// Number of animals of each area 0..max_area.
std::vector<std::uint64_t> count_by_area(const AgreeableGraph& g, std::span<const VertexId> source,
                                         int max_area, SourceMode mode);

struct AreaPerimeterTable {
  std::map<std::pair<int, int>, std::uint64_t> counts;  ///< (area, perimeter) → count
  PerimeterVariant variant = PerimeterVariant::plain;

  std::uint64_t at(int area, int perimeter) const;
  /// Sum over perimeters for each area 0..max area present.
  std::vector<std::uint64_t> area_marginal() const;
};

AreaPerimeterTable count_by_area_perimeter(const AgreeableGraph& g, std::span<const VertexId> source,
                                           int max_area, SourceMode mode, PerimeterVariant variant);

/// Over-source animals whose type-1 gas value at source[i] equals pattern[i] for every i.
std::vector<Animal> enumerate_with_gas_pattern(const AgreeableGraph& g, std::span<const VertexId> source,
                                               const std::vector<int>& pattern, int max_area);

/// Area/perimeter table of the animals matched by enumerate_with_gas_pattern.
AreaPerimeterTable count_with_gas_pattern(const AgreeableGraph& g, std::span<const VertexId> source,
                                          const std::vector<int>& pattern, int max_area,
                                          PerimeterVariant variant);

/// Every B ⊆ A.cells that is a DA with minimal source exactly `sub_source`.
/// Plain subset scan; A may have at most 24 cells.
std::vector<Animal> sub_animals(const AgreeableGraph& g, const Animal& a, std::span<const VertexId> sub_source);

}  // namespace dagas
