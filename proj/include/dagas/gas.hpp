#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <variant>
#include <vector>

#include "dagas/animals.hpp"
#include "dagas/graph.hpp"
#include "dagas/rational.hpp"

namespace dagas::gas {

using exact::Rational;

// ---------------------------------------------------------------------------
// Gas of type 1 on a fixed finite animal
// ---------------------------------------------------------------------------

/// Type-1 gas value at v computed inside the cell set: 0 when v is not a
/// cell, otherwise the product over v's children of (1 − value(child)).
int chi(const AgreeableGraph& g, std::span<const VertexId> cells, VertexId v);
int chi(const AgreeableGraph& g, const Animal& a, VertexId v);

/// 1 iff the player who places the token on v wins the directed-move game
/// played inside the animal (the player unable to move loses).
int nim_value(const AgreeableGraph& g, const Animal& a, VertexId v);

/// Σ (−1)^{|B|+1} over sub-animals B of A with minimal source {v}.
/// Requires minimal_source(A) = {v}.
std::int64_t d_signed(const AgreeableGraph& g, const Animal& a, VertexId v);

/// Σ (−1)^{|t|+1} over ordered trees t embeddable at v whose embedding lies in A.
/// Enumerates the trees one by one.
std::int64_t delta_trees(const AgreeableGraph& g, const Animal& a, VertexId v);

/// Σ (−1)^{|t|} over trees whose embedding at v is exactly A.
std::int64_t exact_embedding_sign_sum(const AgreeableGraph& g, const Animal& a, VertexId v);

/// Σ (−1)^{|B|+1} over sub-animals B with minimal source exactly `source`.
/// Requires minimal_source(A) = source.
std::int64_t d_signed_set(const AgreeableGraph& g, const Animal& a, std::span<const VertexId> source);

/// Σ (−1)^{Σ|t_i| + k} over forests (t_1..t_k) embeddable at (s_1..s_k) whose
/// embedding lies in A. Requires minimal_source(A) = source.
std::int64_t delta_forest(const AgreeableGraph& g, const Animal& a, std::span<const VertexId> source);

// ---------------------------------------------------------------------------
// Lazy colorings
// ---------------------------------------------------------------------------

enum class Color : std::uint8_t { a, b, c };

/// Hash of (seed, vertex) used by every lazy coloring. The construction is
/// part of the reproducibility contract: splitmix64 finalizer applied as
/// h = F(F(F(seed) ⊕ x) ⊕ y) with x, y taken as two's-complement 64-bit words.
std::uint64_t vertex_hash(std::uint64_t seed, VertexId v);

/// i-th output (0-based) of a splitmix64 stream started at `master`:
/// F(master + (i+1)·0x9E3779B97F4A7C15).
std::uint64_t replica_seed(std::uint64_t master, std::uint64_t replica);

/// Colors each vertex a with probability p, b otherwise, independently.
class Coloring2 {
 public:
  Coloring2(const Rational& p, std::uint64_t seed);
  Color color(VertexId v) const;
  std::uint64_t seed() const { return seed_; }

 private:
  std::uint64_t seed_;
  std::uint64_t threshold_;
  bool always_a_;
};

/// Three-color version with probabilities (p_a, p_b, p_c).
class Coloring3 {
 public:
  Coloring3(const Rational& pa, const Rational& pb, const Rational& pc, std::uint64_t seed);
  Color color(VertexId v) const;
  std::uint64_t seed() const { return seed_; }

 private:
  std::uint64_t seed_;
  std::uint64_t threshold_a_;
  std::uint64_t threshold_ab_;
  bool a_all_;
  bool ab_all_;
};

// ---------------------------------------------------------------------------
// Sampling through the animal of calculus
// ---------------------------------------------------------------------------

inline constexpr std::size_t kDefaultBudget = 100000;

struct GasSampleResult {
  bool overflow = false;
  int value = 0;                ///< meaningful only when !overflow
  std::size_t explored_cells = 0;
  Animal explored_animal;       ///< filled when requested and !overflow
};

/// Type-1 gas value at x: grows the a-colored animal reachable from x, then
/// evaluates the gas on it. Exploration beyond `budget` cells reports overflow
/// and no value.
GasSampleResult gas_type1_sample(const AgreeableGraph& g, VertexId x, const Coloring2& coloring,
                                 std::size_t budget = kDefaultBudget, bool keep_animal = true);

/// Type-2 gas value at x: 0 on b, 1 on c, min over children on a (1 for no children).
GasSampleResult gas_type2_sample(const AgreeableGraph& g, VertexId x, const Coloring3& coloring,
                                 std::size_t budget = kDefaultBudget, bool keep_animal = true);

// ---------------------------------------------------------------------------
// Exact oracles on finite graphs
// ---------------------------------------------------------------------------

/// E_p(Π_{x∈S} X_x) summed exactly over all 2^|V| colorings.
Rational exact_density_type1(const AgreeableGraph& g, std::span<const VertexId> source, const Rational& p,
                             std::size_t max_vertices = 20);

/// E(Π_{x∈S} X*_x) summed exactly over all 3^|V| colorings.
Rational exact_density_type2(const AgreeableGraph& g, std::span<const VertexId> source, const Rational& pa,
                             const Rational& pb, const Rational& pc, std::size_t max_vertices = 13);
Rational exact_density_type2(const AgreeableGraph& g, VertexId x, const Rational& pa, const Rational& pb,
                             const Rational& pc, std::size_t max_vertices = 13);

// ---------------------------------------------------------------------------
// Monte Carlo
// ---------------------------------------------------------------------------

struct Type1Model {
  Rational p;
};
struct Type2Model {
  Rational pa;
  Rational pb;
  Rational pc;
};
using GasModel = std::variant<Type1Model, Type2Model>;

struct McEstimate {
  double mean = 0.0;
  double standard_error = 0.0;
  std::uint64_t reps = 0;
  std::uint64_t overflows = 0;
  std::uint64_t seed = 0;

  friend bool operator==(const McEstimate&, const McEstimate&) = default;
};

/// Average of Π_{x∈S} X_x over `reps` independent colorings; replica i uses
/// replica_seed(seed, i). Overflowed replicas are counted and excluded.
/// Replicas are split over `threads` workers (0 = hardware concurrency); the
/// result does not depend on the thread count.
McEstimate mc_density(const AgreeableGraph& g, std::span<const VertexId> source, const GasModel& model,
                      std::uint64_t reps, std::uint64_t seed, std::size_t budget = kDefaultBudget,
                      unsigned threads = 0);

/// Fraction of replicas whose a-colored animal grown from S exceeds `budget` cells.
McEstimate percolation_survival(const AgreeableGraph& g, std::span<const VertexId> source, const Rational& p,
                                std::size_t budget, std::uint64_t reps, std::uint64_t seed,
                                unsigned threads = 0);

// ---------------------------------------------------------------------------
// Row dynamics on the square lattice
// ---------------------------------------------------------------------------

enum class RowTopology { cylinder, open_window };

/// One step of the row evolution: out[k] = noise[k]·(1 − row[k])·(1 − row[k+1]).
/// On the cylinder indices wrap and |out| = |row|; on an open window |out| = |row| − 1.
std::vector<int> evolve_row(std::span<const int> row, std::span<const int> noise, RowTopology topology);

/// Type-1 gas values of cells (0,0)..(w−1,0) of the square lattice under one
/// shared coloring. nullopt when any cell overflows.
std::optional<std::vector<int>> line_window_sample(const Rational& p, std::size_t width, std::uint64_t seed,
                                                   std::size_t budget = kDefaultBudget);

}  // namespace dagas::gas
