// Runs every acceptance criterion and prints one PASS/FAIL line each.
// Exit status is nonzero if any criterion fails.

#include <cstdio>
#include <functional>
#include <string>
#include <vector>

#include "dagas/verify.hpp"

namespace {

using dagas::exact::Rational;
using dagas::verify::Report;

struct Criterion {
  int id;
  std::string title;
  std::function<Report()> run;
  double time_limit = 0.0;  // seconds; 0 means no limit
};

constexpr std::uint64_t kSeed = 1;
constexpr std::size_t kBudget = 100000;

Report merge(std::initializer_list<Report> parts) {
  Report out{"", {}, 0};
  for (const auto& p : parts) out.append(p);
  return out;
}

}  // namespace

int main() {
  namespace v = dagas::verify;
  const Rational fifth(1, 5);

  const std::vector<Criterion> criteria{
      {1, "chi = nim = D = Delta on square-lattice animals, area <= 8", [] { return v::equivalence(8); }, 60},
      {2, "signed exact-embedding tree count = (-1)^|A|, area <= 6", [] { return v::exact_embeddings(6); }},
      {3, "type-1 gas: exact moments equal signed area GF on 20 random DAGs", [] { return v::exact_type1(20, 12, kSeed); },
       60},
      {4, "type-2 gas: exact density equals area/perimeter GF on 20 random DAGs",
       [] { return v::exact_type2(20, 9, kSeed); }, 60},
      {5, "density series matches square-lattice counts to order 10", [] { return v::square_series(10); }},
      {6, "compact sources: 3^(n-1) animals, GF -p/(1+3p)", [] { return v::compact_sources(9); }},
      {7, "line and staircase closed forms match enumeration to p^8", [] { return v::line_and_staircase(8); }},
      {8, "two-source perimeter polynomials and weighted identity", [] { return v::perimeter_polynomials(5, 8); }},
      {9, "cylinder fixed point, transfer traces, finite-size bound, series head",
       [] {
         return merge({v::cylinder({2, 3, 4, 5, 6}, {Rational(1, 5), Rational(1, 3)}), v::transfer_checks()});
       }},
      {10, "Monte Carlo density at p = 0.2, 1e5 replicas",
       [&] { return v::mc_density(fifth, 100000, kSeed, kBudget, 0); }, 120},
      {11, "run lengths geometric and transitions match M at p = 0.2",
       [&] { return v::block_statistics(fifth, 50, 2000, kSeed, kBudget); }},
      {12, "one row step preserves density and pair frequencies at p = 0.2",
       [&] { return v::stationarity(fifth, 200, 1000, kSeed); }},
      {13, "survival proxy at p = 0.4 on binary tree and square lattice",
       [] { return v::percolation(Rational(2, 5), 10000, 1000, kSeed, 0); }},
  };

  int failed = 0;
  for (const auto& c : criteria) {
    const Report r = c.run();
    const bool in_time = c.time_limit <= 0 || r.seconds < c.time_limit;
    const bool ok = r.passed() && in_time;
    std::printf("[%s] criterion %2d: %s (%zu checks, %.2f s)\n", ok ? "PASS" : "FAIL", c.id, c.title.c_str(),
                r.checks.size(), r.seconds);
    if (!ok) {
      ++failed;
      for (const auto& check : r.checks) {
        if (!check.passed) std::printf("         failed: %s | %s\n", check.name.c_str(), check.detail.c_str());
      }
      if (!in_time) std::printf("         over the %.0f s time limit\n", c.time_limit);
    }
  }
  std::printf("%d of %zu criteria passed\n", static_cast<int>(criteria.size()) - failed, criteria.size());
  return failed == 0 ? 0 : 1;
}
