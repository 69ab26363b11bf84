#pragma once

#include <algorithm>
#include <cstddef>
#include <span>
#include <unordered_map>

#include "dagas/graph.hpp"

namespace dagas::detail {

// Position lookup over a cell list. Small lists are scanned; large ones hashed.
class CellIndex {
 public:
  static constexpr std::ptrdiff_t npos = -1;

  explicit CellIndex(std::span<const VertexId> cells) : cells_(cells) {
    if (cells.size() > kLinearLimit) {
      map_.reserve(cells.size() * 2);
      for (std::size_t i = 0; i < cells.size(); ++i) map_.emplace(cells[i], static_cast<std::ptrdiff_t>(i));
    }
  }

  std::ptrdiff_t find(VertexId v) const {
    if (cells_.size() > kLinearLimit) {
      const auto it = map_.find(v);
      return it == map_.end() ? npos : it->second;
    }
    const auto it = std::find(cells_.begin(), cells_.end(), v);
    return it == cells_.end() ? npos : it - cells_.begin();
  }

  bool contains(VertexId v) const { return find(v) != npos; }
  std::size_t size() const { return cells_.size(); }

 private:
  static constexpr std::size_t kLinearLimit = 24;
  std::span<const VertexId> cells_;
  std::unordered_map<VertexId, std::ptrdiff_t, VertexHash> map_;
};

}  // namespace dagas::detail
