#include "dagas/lattice.hpp"

#include <bit>
#include <limits>
#include <stdexcept>

#include "dagas/errors.hpp"

namespace dagas::lattice {

namespace {

void require_open_unit(const Rational& p) {
  if (p <= Rational(0) || p >= Rational(1)) throw DomainError("p must lie strictly between 0 and 1, got " + p.str());
}

void require_gaps(const std::vector<int>& gaps) {
  for (const int d : gaps) {
    if (d < 1) throw DomainError("source gaps must be >= 1, got " + std::to_string(d));
  }
}

void require_cylinder(int n, int max_n) {
  if (n < 2 || n > max_n) {
    throw DomainError("cylinder size must lie in [2, " + std::to_string(max_n) + "], got " + std::to_string(n));
  }
}

QuadExt sign_power(std::size_t k) { return k % 2 == 0 ? QuadExt(1) : QuadExt(-1); }

std::uint32_t rotate_left(std::uint32_t mask, int n) {
  const std::uint32_t all = (std::uint32_t{1} << n) - 1;
  return ((mask << 1) | (mask >> (n - 1))) & all;
}

// Cells of the row below that see C: the children row of C is C ∪ (C+1).
std::uint32_t neighbourhood(std::uint32_t mask, int n) { return mask | rotate_left(mask, n); }

std::vector<Rational> powers(const Rational& base, int max_exponent) {
  std::vector<Rational> out(static_cast<std::size_t>(max_exponent) + 1, Rational(1));
  for (std::size_t k = 1; k < out.size(); ++k) out[k] = out[k - 1] * base;
  return out;
}

TruncSeries sqrt_discriminant(std::size_t order) {
  return sqrt(TruncSeries(order, {Rational(1), Rational(2), Rational(-3)}));
}

}  // namespace

BlockLaw block_law(const Rational& p) {
  require_open_unit(p);
  BlockLaw law;
  law.p = p;
  law.d = Rational(1) + Rational(2) * p - Rational(3) * p * p;
  const QuadExt root = QuadExt::sqrt_of(law.d);
  const QuadExt numerator = QuadExt(p - Rational(1)) + root;
  law.alpha_occupied = numerator / QuadExt(Rational(2) * p);
  law.alpha_empty = numerator / (QuadExt(Rational(1) + p) + root);
  return law;
}

QuadExt density_closed(const Rational& p) {
  const BlockLaw law = block_law(p);
  return law.alpha_empty / (law.alpha_occupied + law.alpha_empty);
}

TruncSeries density_series(std::size_t order) {
  const TruncSeries one_minus_x(order, {Rational(1), Rational(-1)});
  const TruncSeries inner = TruncSeries::constant(Rational(1), order) - one_minus_x * inverse(sqrt_discriminant(order));
  return Rational(1, 2) * inner;
}

std::array<TruncSeries, 2> block_law_series(std::size_t order) {
  const TruncSeries root = sqrt_discriminant(order + 1);
  const TruncSeries numerator = TruncSeries(order + 1, {Rational(-1), Rational(1)}) + root;
  TruncSeries occupied = Rational(1, 2) * numerator.divided_by_power(1);
  TruncSeries empty = (numerator / (TruncSeries(order + 1, {Rational(1), Rational(1)}) + root)).truncated(order);
  return {std::move(occupied), std::move(empty)};
}

TransitionMatrix TransitionMatrix::power(unsigned k) const {
  TransitionMatrix result{{{{QuadExt(1), QuadExt(0)}, {QuadExt(0), QuadExt(1)}}}};
  for (unsigned step = 0; step < k; ++step) {
    TransitionMatrix next;
    for (int i = 0; i < 2; ++i) {
      for (int j = 0; j < 2; ++j) next.m[i][j] = result.m[i][0] * m[0][j] + result.m[i][1] * m[1][j];
    }
    result = next;
  }
  return result;
}

std::array<QuadExt, 2> TransitionMatrix::stationary() const {
  const QuadExt w_occupied = m[0][1].inverse();
  const QuadExt w_empty = m[1][0].inverse();
  const QuadExt total = w_occupied + w_empty;
  return {w_occupied / total, w_empty / total};
}

TransitionMatrix transition_matrix(const Rational& p) {
  const BlockLaw law = block_law(p);
  return TransitionMatrix{{{{QuadExt(1) - law.alpha_occupied, law.alpha_occupied},
                            {law.alpha_empty, QuadExt(1) - law.alpha_empty}}}};
}

QuadExt gf_line_sources(const std::vector<int>& gaps, const Rational& p) {
  require_gaps(gaps);
  const BlockLaw law = block_law(p);
  const QuadExt& a = law.alpha_occupied;
  const QuadExt& b = law.alpha_empty;
  const QuadExt lambda = QuadExt(1) - a - b;
  QuadExt value = sign_power(gaps.size() + 1) * b / (a + b);
  for (const int d : gaps) value *= (a * pow(lambda, d) + b) / (a + b);
  return value;
}

TruncSeries gf_line_sources_series(const std::vector<int>& gaps, std::size_t order) {
  require_gaps(gaps);
  const auto [a, b] = block_law_series(order);
  const TruncSeries lambda = TruncSeries::constant(Rational(1), order) - a - b;
  const TruncSeries inv_sum = inverse(a + b);
  TruncSeries value = ((gaps.size() + 1) % 2 == 0 ? Rational(1) : Rational(-1)) * (b * inv_sum);
  for (const int d : gaps) value = value * ((a * pow(lambda, static_cast<unsigned>(d)) + b) * inv_sum);
  return value;
}

QuadExt gf_staircase(const std::vector<int>& gaps, const Rational& p) {
  require_gaps(gaps);
  const BlockLaw law = block_law(p);
  const QuadExt& a = law.alpha_occupied;
  const QuadExt& b = law.alpha_empty;
  const QuadExt lambda = QuadExt(1) - a - b;
  QuadExt value = sign_power(gaps.size() + 1) * b / (a + b);
  for (const int d : gaps) value *= b * (QuadExt(1) - pow(lambda, d)) / (a + b);
  return value;
}

TruncSeries gf_staircase_series(const std::vector<int>& gaps, std::size_t order) {
  require_gaps(gaps);
  const auto [a, b] = block_law_series(order);
  const TruncSeries one = TruncSeries::constant(Rational(1), order);
  const TruncSeries lambda = one - a - b;
  const TruncSeries inv_sum = inverse(a + b);
  TruncSeries value = ((gaps.size() + 1) % 2 == 0 ? Rational(1) : Rational(-1)) * (b * inv_sum);
  for (const int d : gaps) value = value * (b * (one - pow(lambda, static_cast<unsigned>(d))) * inv_sum);
  return value;
}

std::vector<VertexId> line_sources(const std::vector<int>& gaps) {
  require_gaps(gaps);
  std::vector<VertexId> out{{0, 0}};
  for (const int d : gaps) out.push_back({out.back().x + d, 0});
  return out;
}

std::vector<VertexId> staircase_sources(const std::vector<int>& gaps) {
  require_gaps(gaps);
  std::vector<VertexId> out{{0, 0}};
  for (const int d : gaps) out.push_back({out.back().x + d, out.back().y - 1});
  return out;
}

TruncSeries compact_source_sum_series(std::size_t max_sources, std::size_t order) {
  TruncSeries total(order);
  for (std::size_t m = 1; m <= max_sources; ++m) {
    total = total + gf_line_sources_series(std::vector<int>(m - 1, 1), order);
  }
  return total;
}

std::array<std::array<Rational, 2>, 2> TransferMatrix::power(unsigned n) const {
  std::array<std::array<Rational, 2>, 2> result{{{Rational(1), Rational(0)}, {Rational(0), Rational(1)}}};
  for (unsigned step = 0; step < n; ++step) {
    std::array<std::array<Rational, 2>, 2> next;
    for (int i = 0; i < 2; ++i) {
      for (int j = 0; j < 2; ++j) next[i][j] = result[i][0] * y[0][j] + result[i][1] * y[1][j];
    }
    result = next;
  }
  return result;
}

TransferMatrix transfer(const Rational& p) {
  TransferMatrix t;
  t.p = p;
  t.y = {{{Rational(1), Rational(1)}, {p * (Rational(1) - p), p}}};
  const Rational d = Rational(1) + Rational(2) * p - Rational(3) * p * p;
  if (d < Rational(0)) throw DomainError("transfer matrix eigenvalues are not real for p = " + p.str());
  const QuadExt root = QuadExt::sqrt_of(d);
  t.lambda1 = (QuadExt(Rational(1) + p) + root) / QuadExt(2);
  t.lambda2 = (QuadExt(Rational(1) + p) - root) / QuadExt(2);
  return t;
}

Rational z_trace(int n, const Rational& p) {
  if (n < 2) throw DomainError("n must be >= 2");
  const auto yn = transfer(p).power(static_cast<unsigned>(n));
  return yn[0][0] + yn[1][1];
}

Rational z_subsets(int n, const Rational& p) {
  require_cylinder(n, 24);
  const auto pw = powers(p, n);
  const auto qw = powers(Rational(1) - p, n);
  Rational total(0);
  for (std::uint32_t mask = 0; mask < (std::uint32_t{1} << n); ++mask) {
    const int size = std::popcount(mask);
    const int spread = std::popcount(neighbourhood(mask, n));
    total += pw[static_cast<std::size_t>(size)] * qw[static_cast<std::size_t>(spread - size)];
  }
  return total;
}

Rational w_n(int n, const Rational& p) {
  if (n < 2) throw DomainError("n must be >= 2");
  return transfer(p).power(static_cast<unsigned>(n))[1][1];
}

QuadExt transfer_limit(const Rational& p) {
  const TransferMatrix t = transfer(p);
  return (QuadExt(1) - t.lambda1) / (t.lambda2 - t.lambda1);
}

Rational CylinderLaw::occupation(int i) const {
  Rational total(0);
  for (std::size_t mask = 0; mask < prob.size(); ++mask) {
    if ((mask >> i) & 1U) total += prob[mask];
  }
  return total;
}

CylinderLaw cylinder_stationary(int n, const Rational& p) {
  require_cylinder(n, 12);
  if (p < Rational(0) || p > Rational(1)) throw DomainError("p must lie in [0, 1]");
  CylinderLaw law;
  law.n = n;
  law.p = p;
  const auto pw = powers(p, n);
  const auto qw = powers(Rational(1) - p, n);
  law.prob.resize(std::size_t{1} << n);
  Rational total(0);
  for (std::uint32_t mask = 0; mask < (std::uint32_t{1} << n); ++mask) {
    const int size = std::popcount(mask);
    const int spread = std::popcount(neighbourhood(mask, n));
    law.prob[mask] = pw[static_cast<std::size_t>(size)] * qw[static_cast<std::size_t>(spread - size)];
    total += law.prob[mask];
  }
  for (auto& f : law.prob) f /= total;
  Rational check(0);
  for (const auto& f : law.prob) check += f;
  if (check != Rational(1)) throw std::logic_error("cylinder law does not sum to 1");
  return law;
}

RationalMatrix cylinder_kernel(int n, const Rational& p) {
  require_cylinder(n, 8);
  const std::size_t states = std::size_t{1} << n;
  const auto pw = powers(p, n);
  const auto qw = powers(Rational(1) - p, n);
  const auto all = static_cast<std::uint32_t>(states - 1);
  RationalMatrix k(states, std::vector<Rational>(states, Rational(0)));
  for (std::uint32_t e = 0; e < states; ++e) {
    // Cell i of the lower row may be occupied only if both children i, i+1 are empty.
    const std::uint32_t blocked = e | ((e >> 1) | (e << (n - 1)));
    const std::uint32_t allowed = ~blocked & all;
    const int free_cells = std::popcount(allowed);
    for (std::uint32_t c = allowed;; c = (c - 1) & allowed) {
      const int size = std::popcount(c);
      k[e][c] = pw[static_cast<std::size_t>(size)] * qw[static_cast<std::size_t>(free_cells - size)];
      if (c == 0) break;
    }
  }
  return k;
}

std::vector<Rational> fixed_point_residual(const CylinderLaw& law, const RationalMatrix& kernel) {
  const std::size_t states = law.prob.size();
  if (kernel.size() != states) throw DomainError("kernel size differs from the law size");
  std::vector<Rational> r(states, Rational(0));
  for (std::size_t e = 0; e < states; ++e) {
    if (law.prob[e].is_zero()) continue;
    for (std::size_t c = 0; c < states; ++c) {
      if (!kernel[e][c].is_zero()) r[c] += law.prob[e] * kernel[e][c];
    }
  }
  for (std::size_t c = 0; c < states; ++c) r[c] -= law.prob[c];
  return r;
}

std::size_t kernel_defect_rank(const RationalMatrix& kernel) {
  RationalMatrix m = kernel;
  for (std::size_t i = 0; i < m.size(); ++i) m[i][i] -= Rational(1);
  return exact::rank(std::move(m));
}

TruncSeries cylinder_gf(int n, std::size_t order) {
  require_cylinder(n, 12);
  const std::size_t states = std::size_t{1} << n;
  std::vector<std::vector<std::uint64_t>> coef(states, std::vector<std::uint64_t>(order + 1, 0));
  coef[0][0] = 1;
  for (std::size_t m = 1; m <= order; ++m) {
    for (std::uint32_t c = 1; c < states; ++c) {
      const auto size = static_cast<std::size_t>(std::popcount(c));
      if (size > m) continue;
      const std::uint32_t spread = neighbourhood(c, n);
      std::uint64_t acc = 0;
      for (std::uint32_t d = spread;; d = (d - 1) & spread) {
        if (__builtin_add_overflow(acc, coef[d][m - size], &acc)) {
          throw ResourceError("cylinder series coefficient overflows 64 bits at order " + std::to_string(m));
        }
        if (d == 0) break;
      }
      coef[c][m] = acc;
    }
  }
  TruncSeries out(order);
  for (std::size_t m = 0; m <= order; ++m) out[m] = Rational(mpz_class(std::to_string(coef[1][m])));
  return out;
}

Rational cylinder_gf_value(int n, const Rational& x) {
  require_cylinder(n, 6);
  const std::size_t states = std::size_t{1} << n;
  const std::size_t unknowns = states - 1;
  const auto xw = powers(x, n);
  RationalMatrix a(unknowns, std::vector<Rational>(unknowns, Rational(0)));
  std::vector<Rational> b(unknowns, Rational(0));
  for (std::uint32_t c = 1; c < states; ++c) {
    const Rational& weight = xw[static_cast<std::size_t>(std::popcount(c))];
    a[c - 1][c - 1] += Rational(1);
    b[c - 1] = weight;  // the D = ∅ term, G_∅ = 1
    const std::uint32_t spread = neighbourhood(c, n);
    for (std::uint32_t d = spread; d != 0; d = (d - 1) & spread) a[c - 1][d - 1] -= weight;
  }
  const auto solution = exact::solve(std::move(a), std::move(b));
  if (!solution) throw DomainError("cylinder system is singular at x = " + x.str());
  return (*solution)[0];
}

}  // namespace dagas::lattice
