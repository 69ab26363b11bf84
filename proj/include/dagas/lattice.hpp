#pragma once

#include <array>
#include <cstddef>
#include <cstdint>
#include <vector>

#include "dagas/graph.hpp"
#include "dagas/linalg.hpp"
#include "dagas/quad_ext.hpp"
#include "dagas/rational.hpp"
#include "dagas/series.hpp"

namespace dagas::lattice {

using exact::QuadExt;
using exact::Rational;
using exact::RationalMatrix;
using exact::TruncSeries;

// ---------------------------------------------------------------------------
// Gas on one row of the square lattice
// ---------------------------------------------------------------------------

/// Geometric run parameters of the row process: occupied runs have length
/// law α_•(1 − α_•)^{k−1}, empty runs α_∘(1 − α_∘)^{k−1}.
struct BlockLaw {
  Rational p;
  Rational d;  ///< 1 + 2p − 3p²
  QuadExt alpha_occupied;
  QuadExt alpha_empty;
};

/// Exact α_• = (−1 + p + √d)/(2p), α_∘ = (−1 + p + √d)/(1 + p + √d). Requires 0 < p < 1.
BlockLaw block_law(const Rational& p);

/// Occupation density α_∘/(α_• + α_∘) of the row process.
QuadExt density_closed(const Rational& p);

/// (1 − (1 − p)/√(1 + 2p − 3p²))/2 expanded to order N in p.
TruncSeries density_series(std::size_t order);

/// α_• and α_∘ as power series in p; α_• starts at 1, α_∘ at 0.
std::array<TruncSeries, 2> block_law_series(std::size_t order);

/// 2×2 transition matrix of the row chain, states (occupied, empty).
struct TransitionMatrix {
  std::array<std::array<QuadExt, 2>, 2> m;

  TransitionMatrix power(unsigned k) const;
  /// (1/α_•, 1/α_∘) normalized to sum 1.
  std::array<QuadExt, 2> stationary() const;
};

TransitionMatrix transition_matrix(const Rational& p);

/// G_S(−p) for sources on one row with successive column gaps d_i ≥ 1:
/// (−1)^|S| · density · Π (M^{d_i})_{11}.
QuadExt gf_line_sources(const std::vector<int>& gaps, const Rational& p);
TruncSeries gf_line_sources_series(const std::vector<int>& gaps, std::size_t order);

/// G_S(−p) for staircase sources s_{i+1} = (x_i + d_i, y_i − 1):
/// (−1)^|S| · density · Π α_∘(1 − λ^{d_i})/(α_• + α_∘), λ = 1 − α_• − α_∘.
QuadExt gf_staircase(const std::vector<int>& gaps, const Rational& p);
TruncSeries gf_staircase_series(const std::vector<int>& gaps, std::size_t order);

/// Source positions realizing the two geometries, starting at (0, 0).
std::vector<VertexId> line_sources(const std::vector<int>& gaps);
std::vector<VertexId> staircase_sources(const std::vector<int>& gaps);

/// Σ_{m=1..max_sources} G_{S_m}(−p) for compact row sources S_m of m adjacent cells.
TruncSeries compact_source_sum_series(std::size_t max_sources, std::size_t order);

// ---------------------------------------------------------------------------
// Cylinder
// ---------------------------------------------------------------------------

/// Y = [[1, 1], [p(1 − p), p]] with eigenvalues λ₁ > λ₂.
struct TransferMatrix {
  Rational p;
  std::array<std::array<Rational, 2>, 2> y;
  QuadExt lambda1;
  QuadExt lambda2;

  std::array<std::array<Rational, 2>, 2> power(unsigned n) const;
};

TransferMatrix transfer(const Rational& p);

/// tr(Y^n); requires n ≥ 2.
Rational z_trace(int n, const Rational& p);
/// Σ_{D ⊆ Z/nZ} (p/(1 − p))^{|D|} (1 − p)^{|D ∪ (D+1)|}; requires n ≥ 2 and p < 1.
Rational z_subsets(int n, const Rational& p);
/// (Y^n)_{22}
Rational w_n(int n, const Rational& p);
/// (1 − λ₁)/(λ₂ − λ₁)
QuadExt transfer_limit(const Rational& p);

/// Distribution over occupied sets D of one cylinder row, indexed by bitmask.
struct CylinderLaw {
  int n = 0;
  Rational p;
  std::vector<Rational> prob;

  /// P(cell i occupied).
  Rational occupation(int i) const;
};

/// F_D = (p/(1 − p))^{|D|}(1 − p)^{|D ∪ (D+1)|}/Z_n; requires 2 ≤ n ≤ 12 and 0 ≤ p < 1.
CylinderLaw cylinder_stationary(int n, const Rational& p);

/// Row-to-row kernel K[E][C]: the probability that the row below an occupied
/// set E has occupied set C. Requires 2 ≤ n ≤ 8.
RationalMatrix cylinder_kernel(int n, const Rational& p);

/// F·K − F as a vector indexed by bitmask.
std::vector<Rational> fixed_point_residual(const CylinderLaw& law, const RationalMatrix& kernel);

/// Rank of K − I. Equal to 2^n − 1 iff the invariant law is unique.
std::size_t kernel_defect_rank(const RationalMatrix& kernel);

/// Single-cell source series G_c on the cylinder of circumference n, orders 0..N.
TruncSeries cylinder_gf(int n, std::size_t order);

/// G_{{0}}(x) at the rational point x, from the exact linear system
/// G_C = x^{|C|} Σ_{D ⊆ C ∪ (C+1)} G_D, G_∅ = 1. Requires 2 ≤ n ≤ 6.
Rational cylinder_gf_value(int n, const Rational& x);

}  // namespace dagas::lattice
