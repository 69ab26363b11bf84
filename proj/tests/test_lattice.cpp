#include <doctest.h>

#include <cmath>
#include <vector>

#include "dagas/errors.hpp"
#include "dagas/lattice.hpp"
#include "oracles.hpp"

using namespace dagas;
using namespace dagas::exact;

namespace {

// G_S(−p) as a series in p from oracle counts: coefficient n is (−1)^n a_n.
TruncSeries signed_counts(const std::vector<std::uint64_t>& counts, std::size_t order) {
  TruncSeries s(order);
  for (std::size_t n = 0; n <= order && n < counts.size(); ++n) {
    const Rational c(static_cast<long>(counts[n]));
    s[n] = n % 2 == 0 ? c : -c;
  }
  return s;
}

std::vector<std::uint64_t> oracle_counts(const AgreeableGraph& g, const std::vector<VertexId>& s, int area) {
  return oracle::area_counts(oracle::animals_exact(g, s, area), area);
}

}  // namespace

TEST_CASE("block law at sample points") {
  const auto third = lattice::block_law(Rational(1, 3));
  const QuadExt r3 = QuadExt::sqrt_of(Rational(3));
  CHECK(third.alpha_occupied == r3 - QuadExt(1));
  CHECK(third.alpha_empty == QuadExt(3) * r3 - QuadExt(5));
  CHECK(lattice::density_closed(Rational(1, 3)) == (QuadExt(3) - r3) / QuadExt(6));
  CHECK(lattice::density_closed(Rational(1, 3)).to_double() == doctest::Approx(0.2113248654).epsilon(1e-10));

  for (const double pd : {0.1, 0.2, 0.5, 0.9}) {
    const Rational p = Rational::parse_decimal(std::to_string(pd));
    const double sd = std::sqrt(1 + 2 * pd - 3 * pd * pd);
    const auto law = lattice::block_law(p);
    CHECK(law.d == Rational(1) + Rational(2) * p - Rational(3) * p * p);
    CHECK(law.alpha_occupied.to_double() == doctest::Approx((-1 + pd + sd) / (2 * pd)));
    CHECK(law.alpha_empty.to_double() == doctest::Approx((-1 + pd + sd) / (1 + pd + sd)));
  }
  const auto fifth = lattice::block_law(Rational(1, 5));
  CHECK(fifth.alpha_occupied.to_double() == doctest::Approx(0.828427).epsilon(1e-6));
  CHECK(fifth.alpha_empty.to_double() == doctest::Approx(0.142136).epsilon(1e-5));
  CHECK(lattice::density_closed(Rational(1, 5)).to_double() == doctest::Approx(0.146447).epsilon(1e-5));
  CHECK_THROWS_AS(lattice::block_law(Rational(0)), DomainError);
  CHECK_THROWS_AS(lattice::block_law(Rational(1)), DomainError);
}

TEST_CASE("transition matrix is stochastic with the density as stationary mass") {
  for (const auto& p : {Rational(1, 10), Rational(1, 5), Rational(1, 2), Rational(4, 5)}) {
    const auto m = lattice::transition_matrix(p);
    for (const auto& row : m.m) {
      CHECK(row[0] + row[1] == QuadExt(1));
      CHECK(row[0].sign() >= 0);
      CHECK(row[1].sign() >= 0);
    }
    const auto pi = m.stationary();
    CHECK(pi[0] == lattice::density_closed(p));
    CHECK(pi[0] * m.m[0][0] + pi[1] * m.m[1][0] == pi[0]);
    const auto m3 = m.power(3);
    const auto m2 = m.power(2);
    CHECK(m3.m[0][1] == m2.m[0][0] * m.m[0][1] + m2.m[0][1] * m.m[1][1]);
  }
}

TEST_CASE("density series reproduces square-lattice counts") {
  const auto sq = AgreeableGraph::square_lattice();
  const std::size_t order = 9;
  const auto counts = oracle_counts(sq, {{0, 0}}, static_cast<int>(order));
  CHECK(lattice::density_series(order) == -signed_counts(counts, order));
  const auto head = lattice::density_series(5);
  CHECK(head.coefficients() ==
        std::vector<Rational>{Rational(0), Rational(1), Rational(-2), Rational(5), Rational(-13), Rational(35)});

  // Truncated series approaches the closed form at small p.
  const Rational p(1, 100);
  const double closed = lattice::density_closed(p).to_double();
  CHECK(std::abs(lattice::density_series(12).evaluate(p).to_double() - closed) < 1e-15);

  const auto [occ, emp] = lattice::block_law_series(8);
  CHECK(occ[0] == Rational(1));
  CHECK(emp[0] == Rational(0));
  const auto law = lattice::block_law(p);
  CHECK(occ.evaluate(p).to_double() == doctest::Approx(law.alpha_occupied.to_double()).epsilon(1e-12));
  CHECK(emp.evaluate(p).to_double() == doctest::Approx(law.alpha_empty.to_double()).epsilon(1e-12));
}

TEST_CASE("line and staircase closed forms match oracle enumeration") {
  const auto sq = AgreeableGraph::square_lattice();
  const std::size_t order = 7;
  for (const std::vector<int>& gaps : {std::vector<int>{1}, {2}, {3}, {1, 1}, {2, 1}}) {
    const auto line = lattice::line_sources(gaps);
    CHECK(line.front() == VertexId{0, 0});
    CHECK(lattice::gf_line_sources_series(gaps, order) ==
          signed_counts(oracle_counts(sq, line, static_cast<int>(order)), order));
    const auto stair = lattice::staircase_sources(gaps);
    CHECK(stair[1] == VertexId{gaps[0], -1});
    CHECK(lattice::gf_staircase_series(gaps, order) ==
          signed_counts(oracle_counts(sq, stair, static_cast<int>(order)), order));
  }
  // Two adjacent sources: the closed form at a point agrees with the series.
  const Rational p(1, 50);
  const double closed = lattice::gf_line_sources({1}, p).to_double();
  CHECK(lattice::gf_line_sources_series({1}, 14).evaluate(p).to_double() == doctest::Approx(closed).epsilon(1e-12));
  const double stair = lattice::gf_staircase({2}, p).to_double();
  CHECK(lattice::gf_staircase_series({2}, 14).evaluate(p).to_double() == doctest::Approx(stair).epsilon(1e-12));
}

TEST_CASE("staircase correlations approach independence from below") {
  const Rational p(1, 10);
  const QuadExt rho = lattice::density_closed(p);
  QuadExt previous(0);
  for (int d = 1; d <= 6; ++d) {
    const QuadExt v = lattice::gf_staircase({d}, p);  // two sources: sign +
    CHECK(previous < v);
    CHECK(v < rho * rho);
    previous = v;
  }
}

TEST_CASE("compact source sums") {
  const auto sq = AgreeableGraph::square_lattice();
  const std::size_t order = 6;
  TruncSeries total(order);
  for (std::size_t m = 1; m <= order; ++m) {
    const auto s = lattice::line_sources(std::vector<int>(m - 1, 1));
    total = total + signed_counts(oracle_counts(sq, s, static_cast<int>(order)), order);
  }
  CHECK(lattice::compact_source_sum_series(order, order) == total);
  const TruncSeries x = TruncSeries::identity(order);
  CHECK(total == -(x * inverse(TruncSeries(order, {Rational(1), Rational(3)}))));
}

TEST_CASE("transfer matrix and partition function") {
  CHECK(lattice::z_trace(2, Rational(1, 3)) == Rational(14, 9));
  for (const auto& p : {Rational(1, 7), Rational(1, 3), Rational(3, 5)}) {
    for (int n = 2; n <= 9; ++n) {
      // Independent subset sum over occupied sets D of Z/nZ.
      Rational z(0);
      for (unsigned mask = 0; mask < (1U << n); ++mask) {
        const unsigned rotated = ((mask << 1) | (mask >> (n - 1))) & ((1U << n) - 1);
        const int size = std::popcount(mask);
        const int covered = std::popcount(mask | rotated);
        z += oracle::rpow(p, size) * oracle::rpow(Rational(1) - p, covered - size);
      }
      CHECK(lattice::z_trace(n, p) == z);
      CHECK(lattice::z_subsets(n, p) == z);
    }
    const auto t = lattice::transfer(p);
    CHECK(t.lambda1 > t.lambda2);
    const auto y2 = t.power(2);
    CHECK(y2[0][0] == t.y[0][0] * t.y[0][0] + t.y[0][1] * t.y[1][0]);
    CHECK(lattice::transfer_limit(p) == lattice::density_closed(p));
  }
  const Rational third(1, 3);
  const double ratio = lattice::w_n(20, third).to_double() / lattice::z_trace(20, third).to_double();
  CHECK(ratio == doctest::Approx((3 - std::sqrt(3.0)) / 6).epsilon(1e-12));
  CHECK_THROWS_AS(lattice::z_trace(1, third), DomainError);
}

TEST_CASE("cylinder stationary law") {
  for (int n = 2; n <= 5; ++n) {
    for (const auto& p : {Rational(1, 5), Rational(1, 3), Rational(2, 3)}) {
      const auto law = lattice::cylinder_stationary(n, p);
      Rational total(0);
      for (const auto& f : law.prob) total += f;
      CHECK(total == Rational(1));
      for (int i = 1; i < n; ++i) CHECK(law.occupation(i) == law.occupation(0));
      const auto kernel = lattice::cylinder_kernel(n, p);
      for (const auto& row : kernel) {
        Rational sum(0);
        for (const auto& k : row) sum += k;
        CHECK(sum == Rational(1));
      }
      for (const auto& r : lattice::fixed_point_residual(law, kernel)) CHECK(r.is_zero());
      CHECK(lattice::kernel_defect_rank(kernel) == (std::size_t{1} << n) - 1);
      CHECK(-lattice::cylinder_gf_value(n, -p) == law.occupation(0));
    }
  }
  // F_D / F_∅ = p^{|D|} (1 − p)^{|D ∪ (D+1)| − |D|}; adjacent occupied cells are allowed.
  const int n = 5;
  const Rational p(2, 7);
  const auto law = lattice::cylinder_stationary(n, p);
  for (unsigned mask = 0; mask < (1U << n); ++mask) {
    const unsigned shifted = ((mask << 1) | (mask >> (n - 1))) & ((1U << n) - 1);
    const int size = std::popcount(mask);
    const int covered = std::popcount(mask | shifted);
    CHECK(law.prob[mask] / law.prob[0] ==
          oracle::rpow(p, size) * oracle::rpow(Rational(1) - p, covered - size));
  }
  CHECK_THROWS_AS(lattice::cylinder_stationary(1, Rational(1, 2)), DomainError);
  CHECK_THROWS_AS(lattice::cylinder_kernel(9, Rational(1, 2)), DomainError);
}

TEST_CASE("cylinder series counts animals on the cylinder") {
  for (int n = 2; n <= 5; ++n) {
    const std::size_t order = 7;
    const auto counts = oracle_counts(AgreeableGraph::cylinder(n), {{0, 0}}, static_cast<int>(order));
    const auto series = lattice::cylinder_gf(n, order);
    for (std::size_t k = 0; k <= order; ++k) CHECK(series[k] == Rational(static_cast<long>(counts[k])));
  }
}
