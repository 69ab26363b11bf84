#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "dagas/graph.hpp"
#include "dagas/rational.hpp"

namespace dagas::verify {

using exact::Rational;

struct Check {
  std::string name;
  bool passed = false;
  std::string detail;
};

struct Report {
  std::string suite;
  std::vector<Check> checks;
  double seconds = 0.0;

  bool passed() const;
  void add(std::string name, bool ok, std::string detail = {});
  void append(const Report& other);
};

/// Random finite DAG with 2..max_vertices vertices labelled v00, v01, ...;
/// edges go from lower to higher index. Deterministic in the seed.
AgreeableGraph random_dag(std::uint64_t seed, int max_vertices, double edge_probability = 0.3);

// Fixed-animal identities on the square lattice, source (0,0).
Report equivalence(int max_area);
Report exact_embeddings(int max_area);
Report forests(int max_area);

// Exact coloring sums against enumeration on random DAGs.
Report exact_type1(int corpus_size, int max_vertices, std::uint64_t seed);
Report exact_type2(int corpus_size, int max_vertices, std::uint64_t seed);

// Square-lattice closed forms.
Report surd_identities();
Report square_series(int max_area);
Report compact_sources(int max_area);
Report line_and_staircase(std::size_t order);

Report perimeter_polynomials(int max_area, std::size_t weighted_order);

Report cylinder(const std::vector<int>& sizes, const std::vector<Rational>& ps);
Report transfer_checks();

// Statistical checks. All tolerances are 3 standard errors.
Report mc_density(const Rational& p, std::uint64_t reps, std::uint64_t seed, std::size_t budget, unsigned threads);
Report block_statistics(const Rational& p, std::size_t windows, std::size_t width, std::uint64_t seed,
                        std::size_t budget);
Report stationarity(const Rational& p, std::size_t windows, std::size_t width, std::uint64_t seed);
Report percolation(const Rational& p, std::size_t budget, std::uint64_t reps, std::uint64_t seed, unsigned threads);

/// Options shared by the named suites; zero means "suite default".
struct SuiteOptions {
  int max_area = 0;
  int n = 0;
  Rational p{0};
  std::uint64_t reps = 0;
  std::uint64_t seed = 1;
  std::size_t budget = 0;
  unsigned threads = 0;
};

std::vector<std::string> suite_names();
/// Throws DomainError for an unknown suite name.
Report run_suite(const std::string& name, const SuiteOptions& options);

}  // namespace dagas::verify
