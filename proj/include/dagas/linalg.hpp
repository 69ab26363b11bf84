#pragma once

#include <cstddef>
#include <optional>
#include <vector>

#include "dagas/rational.hpp"

namespace dagas::exact {

/// Dense row-major rational matrix.
using RationalMatrix = std::vector<std::vector<Rational>>;

/// Rank by fraction-exact Gaussian elimination.
std::size_t rank(RationalMatrix m);

/// Solution of A·x = b for square nonsingular A; nullopt when A is singular.
std::optional<std::vector<Rational>> solve(RationalMatrix a, std::vector<Rational> b);

}  // namespace dagas::exact
