#include "dagas/animals.hpp"

#include <algorithm>

#include "cell_index.hpp"
#include "dagas/errors.hpp"
#include "dagas/gas.hpp"

namespace dagas {

namespace {

std::vector<VertexId> sorted_copy(std::span<const VertexId> v) {
  std::vector<VertexId> out(v.begin(), v.end());
  std::sort(out.begin(), out.end());
  return out;
}

bool cell_order(const Animal& a, const Animal& b) {
  return std::lexicographical_compare(a.cells.begin(), a.cells.end(), b.cells.begin(), b.cells.end());
}

// Redelmeier-style growth on a directed graph. The frontier lists every
// vertex that has been reached (sources in over mode, children of cells); each
// is decided exactly once, so a closed animal's excluded sites are its perimeter.
class Grower {
 public:
  Grower(const AgreeableGraph& g, std::span<const VertexId> source, int max_area, SourceMode mode,
         const std::function<void(const GrowthView&)>& visit)
      : g_(g), max_area_(static_cast<std::size_t>(std::max(max_area, 0))), visit_(visit) {
    if (mode == SourceMode::exact) {
      if (source.size() > max_area_) return;
      for (const auto& s : source) {
        cells_.push_back(s);
        seen_.push_back(s);
      }
      for (const auto& s : source) push_children(s);
    } else {
      for (const auto& s : source) {
        frontier_.push_back(s);
        seen_.push_back(s);
      }
      source_slots_ = source.size();
    }
    active_ = true;
  }

  void run() {
    if (active_) grow(0);
  }

 private:
  bool seen(VertexId v) const { return std::find(seen_.begin(), seen_.end(), v) != seen_.end(); }

  std::size_t push_children(VertexId v) {
    g_.children(v, scratch_);
    std::size_t added = 0;
    for (const auto& c : scratch_) {
      if (!seen(c)) {
        seen_.push_back(c);
        frontier_.push_back(c);
        ++added;
      }
    }
    return added;
  }

  void grow(std::size_t pos) {
    if (pos == frontier_.size()) {
      visit_(GrowthView{cells_, perimeter_, unused_sources_});
      return;
    }
    const VertexId site = frontier_[pos];
    const bool is_source_slot = pos < source_slots_;

    auto& excluded = is_source_slot ? unused_sources_ : perimeter_;
    excluded.push_back(site);
    grow(pos + 1);
    excluded.pop_back();

    if (cells_.size() < max_area_) {
      cells_.push_back(site);
      const std::size_t added = push_children(site);
      grow(pos + 1);
      frontier_.resize(frontier_.size() - added);
      seen_.resize(seen_.size() - added);
      cells_.pop_back();
    }
  }

  const AgreeableGraph& g_;
  std::size_t max_area_;
  const std::function<void(const GrowthView&)>& visit_;
  bool active_ = false;
  std::size_t source_slots_ = 0;
  std::vector<VertexId> cells_;
  std::vector<VertexId> frontier_;
  std::vector<VertexId> seen_;
  std::vector<VertexId> perimeter_;
  std::vector<VertexId> unused_sources_;
  ChildList scratch_;
};

void require_free(const AgreeableGraph& g, std::span<const VertexId> source) {
  for (const auto& s : source) {
    if (!g.contains(s)) throw DomainError("source vertex " + g.name(s) + " is not in the graph");
  }
  auto sorted = sorted_copy(source);
  if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end()) {
    throw DomainError("source contains a repeated vertex");
  }
  if (!g.is_free(source)) throw DomainError("source set is not free (one vertex is an ancestor of another)");
}

}  // namespace

bool Animal::contains(VertexId v) const { return std::binary_search(cells.begin(), cells.end(), v); }

std::vector<VertexId> minimal_source(const AgreeableGraph& g, std::span<const VertexId> cells) {
  const detail::CellIndex index(cells);
  std::vector<bool> has_father(cells.size(), false);
  ChildList kids;
  for (const auto& c : cells) {
    g.children(c, kids);
    for (const auto& k : kids) {
      const auto i = index.find(k);
      if (i != detail::CellIndex::npos) has_father[static_cast<std::size_t>(i)] = true;
    }
  }
  std::vector<VertexId> out;
  for (std::size_t i = 0; i < cells.size(); ++i) {
    if (!has_father[i]) out.push_back(cells[i]);
  }
  std::sort(out.begin(), out.end());
  return out;
}

std::vector<VertexId> perimeter(const AgreeableGraph& g, std::span<const VertexId> cells,
                                std::optional<std::span<const VertexId>> special) {
  const detail::CellIndex index(cells);
  std::vector<VertexId> out;
  ChildList kids;
  for (const auto& c : cells) {
    g.children(c, kids);
    for (const auto& k : kids) {
      if (!index.contains(k)) out.push_back(k);
    }
  }
  if (special) {
    for (const auto& s : *special) {
      if (!index.contains(s)) out.push_back(s);
    }
  }
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

bool is_directed_animal(const AgreeableGraph& g, std::span<const VertexId> cells,
                        std::span<const VertexId> source) {
  const detail::CellIndex index(cells);
  std::vector<bool> reached(cells.size(), false);
  std::vector<std::size_t> stack;
  for (const auto& s : source) {
    const auto i = index.find(s);
    if (i != detail::CellIndex::npos && !reached[static_cast<std::size_t>(i)]) {
      reached[static_cast<std::size_t>(i)] = true;
      stack.push_back(static_cast<std::size_t>(i));
    }
  }
  ChildList kids;
  while (!stack.empty()) {
    const std::size_t i = stack.back();
    stack.pop_back();
    g.children(cells[i], kids);
    for (const auto& k : kids) {
      const auto j = index.find(k);
      if (j != detail::CellIndex::npos && !reached[static_cast<std::size_t>(j)]) {
        reached[static_cast<std::size_t>(j)] = true;
        stack.push_back(static_cast<std::size_t>(j));
      }
    }
  }
  return std::all_of(reached.begin(), reached.end(), [](bool r) { return r; });
}

Animal make_animal(const AgreeableGraph& g, std::vector<VertexId> cells, std::vector<VertexId> source,
                   SourceMode mode) {
  std::sort(cells.begin(), cells.end());
  if (std::adjacent_find(cells.begin(), cells.end()) != cells.end()) throw DomainError("repeated cell");
  std::sort(source.begin(), source.end());
  if (!g.is_free(source)) throw DomainError("declared source is not free");
  if (!is_directed_animal(g, cells, source)) {
    throw DomainError("some cell is not reachable from the source inside the animal");
  }
  const auto minimal = minimal_source(g, cells);
  if (mode == SourceMode::exact && minimal != source) {
    throw DomainError("declared exact source differs from the minimal source");
  }
  if (mode == SourceMode::over && !std::includes(source.begin(), source.end(), minimal.begin(), minimal.end())) {
    throw DomainError("minimal source is not contained in the declared over-source");
  }
  return Animal{std::move(cells), std::move(source), mode};
}

void for_each_animal(const AgreeableGraph& g, std::span<const VertexId> source, int max_area, SourceMode mode,
                     const std::function<void(const GrowthView&)>& visit) {
  require_free(g, source);
  Grower grower(g, source, max_area, mode, visit);
  grower.run();
}

std::vector<Animal> enumerate(const AgreeableGraph& g, std::span<const VertexId> source, int max_area,
                              SourceMode mode) {
  std::vector<Animal> out;
  const auto declared = sorted_copy(source);
  for_each_animal(g, source, max_area, mode, [&](const GrowthView& view) {
    out.push_back(Animal{sorted_copy(view.cells), declared, mode});
  });
  std::sort(out.begin(), out.end(), cell_order);
  return out;
}

std::vector<std::uint64_t> count_by_area(const AgreeableGraph& g, std::span<const VertexId> source, int max_area,
                                         SourceMode mode) {
  std::vector<std::uint64_t> counts(static_cast<std::size_t>(std::max(max_area, 0)) + 1, 0);
  for_each_animal(g, source, max_area, mode, [&](const GrowthView& view) { ++counts[view.cells.size()]; });
  return counts;
}

std::uint64_t AreaPerimeterTable::at(int area, int perimeter) const {
  const auto it = counts.find({area, perimeter});
  return it == counts.end() ? 0 : it->second;
}

std::vector<std::uint64_t> AreaPerimeterTable::area_marginal() const {
  std::vector<std::uint64_t> out;
  for (const auto& [key, count] : counts) {
    const auto area = static_cast<std::size_t>(key.first);
    if (out.size() <= area) out.resize(area + 1, 0);
    out[area] += count;
  }
  return out;
}

namespace {

int perimeter_size(const GrowthView& view, PerimeterVariant variant) {
  const std::size_t extra = variant == PerimeterVariant::with_unused_sources ? view.unused_sources.size() : 0;
  return static_cast<int>(view.perimeter.size() + extra);
}

bool matches_pattern(const AgreeableGraph& g, const GrowthView& view, std::span<const VertexId> source,
                     const std::vector<int>& pattern) {
  for (std::size_t i = 0; i < source.size(); ++i) {
    if (gas::chi(g, view.cells, source[i]) != pattern[i]) return false;
  }
  return true;
}

void check_pattern(std::span<const VertexId> source, const std::vector<int>& pattern) {
  if (pattern.size() != source.size()) throw DomainError("gas pattern length differs from the source size");
  for (const int z : pattern) {
    if (z != 0 && z != 1) throw DomainError("gas pattern entries must be 0 or 1");
  }
}

}  // namespace

AreaPerimeterTable count_by_area_perimeter(const AgreeableGraph& g, std::span<const VertexId> source, int max_area,
                                           SourceMode mode, PerimeterVariant variant) {
  AreaPerimeterTable table;
  table.variant = variant;
  for_each_animal(g, source, max_area, mode, [&](const GrowthView& view) {
    ++table.counts[{static_cast<int>(view.cells.size()), perimeter_size(view, variant)}];
  });
  return table;
}

std::vector<Animal> enumerate_with_gas_pattern(const AgreeableGraph& g, std::span<const VertexId> source,
                                               const std::vector<int>& pattern, int max_area) {
  check_pattern(source, pattern);
  std::vector<Animal> out;
  const auto declared = sorted_copy(source);
  for_each_animal(g, source, max_area, SourceMode::over, [&](const GrowthView& view) {
    if (matches_pattern(g, view, source, pattern)) {
      out.push_back(Animal{sorted_copy(view.cells), declared, SourceMode::over});
    }
  });
  std::sort(out.begin(), out.end(), cell_order);
  return out;
}

AreaPerimeterTable count_with_gas_pattern(const AgreeableGraph& g, std::span<const VertexId> source,
                                          const std::vector<int>& pattern, int max_area, PerimeterVariant variant) {
  check_pattern(source, pattern);
  AreaPerimeterTable table;
  table.variant = variant;
  for_each_animal(g, source, max_area, SourceMode::over, [&](const GrowthView& view) {
    if (matches_pattern(g, view, source, pattern)) {
      ++table.counts[{static_cast<int>(view.cells.size()), perimeter_size(view, variant)}];
    }
  });
  return table;
}

std::vector<Animal> sub_animals(const AgreeableGraph& g, const Animal& a, std::span<const VertexId> sub_source) {
  constexpr std::size_t kMaxCells = 24;
  if (a.cells.size() > kMaxCells) {
    throw ResourceError("sub-animal scan limited to " + std::to_string(kMaxCells) + " cells");
  }
  const auto wanted = sorted_copy(sub_source);
  std::vector<VertexId> rest;
  for (const auto& c : a.cells) {
    if (!std::binary_search(wanted.begin(), wanted.end(), c)) rest.push_back(c);
  }
  if (rest.size() + wanted.size() != a.cells.size()) return {};  // some wanted source is not a cell

  std::vector<Animal> out;
  std::vector<VertexId> cells;
  const std::uint64_t subsets = std::uint64_t{1} << rest.size();
  for (std::uint64_t mask = 0; mask < subsets; ++mask) {
    cells = wanted;
    for (std::size_t i = 0; i < rest.size(); ++i) {
      if ((mask >> i) & 1U) cells.push_back(rest[i]);
    }
    if (minimal_source(g, cells) == wanted) {
      std::sort(cells.begin(), cells.end());
      out.push_back(Animal{cells, wanted, SourceMode::exact});
    }
  }
  std::sort(out.begin(), out.end(), cell_order);
  return out;
}

}  // namespace dagas
