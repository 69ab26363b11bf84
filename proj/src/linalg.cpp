#include "dagas/linalg.hpp"

#include <utility>

#include "dagas/errors.hpp"

namespace dagas::exact {

namespace {

// Reduces m in place to row echelon form; returns the pivot count.
std::size_t eliminate(RationalMatrix& m, std::vector<Rational>* rhs) {
  const std::size_t rows = m.size();
  const std::size_t cols = rows == 0 ? 0 : m[0].size();
  std::size_t pivot_row = 0;
  for (std::size_t col = 0; col < cols && pivot_row < rows; ++col) {
    std::size_t found = pivot_row;
    while (found < rows && m[found][col].is_zero()) ++found;
    if (found == rows) continue;
    std::swap(m[found], m[pivot_row]);
    if (rhs) std::swap((*rhs)[found], (*rhs)[pivot_row]);
    const Rational inv = Rational(1) / m[pivot_row][col];
    for (std::size_t r = pivot_row + 1; r < rows; ++r) {
      if (m[r][col].is_zero()) continue;
      const Rational factor = m[r][col] * inv;
      for (std::size_t c = col; c < cols; ++c) {
        if (!m[pivot_row][c].is_zero()) m[r][c] -= factor * m[pivot_row][c];
      }
      if (rhs) (*rhs)[r] -= factor * (*rhs)[pivot_row];
    }
    ++pivot_row;
  }
  return pivot_row;
}

}  // namespace

std::size_t rank(RationalMatrix m) { return eliminate(m, nullptr); }

std::optional<std::vector<Rational>> solve(RationalMatrix a, std::vector<Rational> b) {
  const std::size_t n = a.size();
  if (b.size() != n) throw DomainError("right-hand side length differs from the matrix size");
  for (const auto& row : a) {
    if (row.size() != n) throw DomainError("solve needs a square matrix");
  }
  if (eliminate(a, &b) < n) return std::nullopt;
  std::vector<Rational> x(n);
  for (std::size_t i = n; i-- > 0;) {
    Rational acc = b[i];
    for (std::size_t j = i + 1; j < n; ++j) acc -= a[i][j] * x[j];
    x[i] = acc / a[i][i];
  }
  return x;
}

}  // namespace dagas::exact
