#include "dagas/gas.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <thread>
#include <unordered_map>

#include "cell_index.hpp"
#include "dagas/errors.hpp"

namespace dagas::gas {

namespace {

// ---------------------------------------------------------------------------
// Type-1 evaluation on a fixed cell set
// ---------------------------------------------------------------------------

// Memoised post-order over the cells reachable from `root`.
// Leaf rule and combine rule are supplied by the caller.
template <typename Combine>
int evaluate_inside(const AgreeableGraph& g, std::span<const VertexId> cells, VertexId root, Combine combine) {
  const detail::CellIndex index(cells);
  const auto start = index.find(root);
  if (start == detail::CellIndex::npos) return 0;

  std::vector<int> value(cells.size(), -1);
  std::vector<std::pair<std::size_t, bool>> stack{{static_cast<std::size_t>(start), false}};
  ChildList kids;
  std::vector<int> child_values;
  while (!stack.empty()) {
    auto [i, expanded] = stack.back();
    stack.pop_back();
    if (value[i] >= 0) continue;
    g.children(cells[i], kids);
    if (!expanded) {
      stack.emplace_back(i, true);
      for (const auto& k : kids) {
        const auto j = index.find(k);
        if (j != detail::CellIndex::npos && value[static_cast<std::size_t>(j)] < 0) {
          stack.emplace_back(static_cast<std::size_t>(j), false);
        }
      }
      continue;
    }
    child_values.clear();
    for (const auto& k : kids) {
      const auto j = index.find(k);
      child_values.push_back(j == detail::CellIndex::npos ? -1 : value[static_cast<std::size_t>(j)]);
    }
    value[i] = combine(child_values);
  }
  return value[static_cast<std::size_t>(start)];
}

// Trees embeddable at a cell whose image stays inside the cells, as (size, image bitmask).
using TreeList = std::vector<std::pair<std::int64_t, std::uint64_t>>;

class TreeEnumerator {
 public:
  TreeEnumerator(const AgreeableGraph& g, std::span<const VertexId> cells) : g_(g), cells_(cells), index_(cells) {
    if (cells.size() > 64) throw ResourceError("tree enumeration limited to 64 cells");
  }

  TreeList trees_at(VertexId v) const {
    const auto self = index_.find(v);
    if (self == detail::CellIndex::npos) return {};
    const std::uint64_t self_bit = std::uint64_t{1} << self;

    std::vector<TreeList> child_lists;
    for (const auto& k : g_.children(v)) {
      if (index_.contains(k)) child_lists.push_back(trees_at(k));
    }
    TreeList out;
    const std::size_t d = child_lists.size();
    for (std::uint64_t chosen = 0; chosen < (std::uint64_t{1} << d); ++chosen) {
      TreeList partial{{1, self_bit}};
      for (std::size_t i = 0; i < d; ++i) {
        if (!((chosen >> i) & 1U)) continue;
        TreeList next;
        next.reserve(partial.size() * child_lists[i].size());
        for (const auto& [size, mask] : partial) {
          for (const auto& [csize, cmask] : child_lists[i]) next.emplace_back(size + csize, mask | cmask);
        }
        partial = std::move(next);
      }
      out.insert(out.end(), partial.begin(), partial.end());
    }
    return out;
  }

  std::uint64_t full_mask() const {
    return cells_.size() == 64 ? ~std::uint64_t{0} : (std::uint64_t{1} << cells_.size()) - 1;
  }

 private:
  const AgreeableGraph& g_;
  std::span<const VertexId> cells_;
  detail::CellIndex index_;
};

std::int64_t sign_of(std::int64_t exponent) { return exponent % 2 == 0 ? 1 : -1; }

void require_minimal_source(const AgreeableGraph& g, const Animal& a, std::span<const VertexId> source) {
  std::vector<VertexId> wanted(source.begin(), source.end());
  std::sort(wanted.begin(), wanted.end());
  if (minimal_source(g, a.cells) != wanted) throw DomainError("animal's minimal source differs from the given source");
}

// floor(q · 2^64) for 0 ≤ q < 1.
std::uint64_t scaled_threshold(const Rational& q) {
  mpz_class scaled = q.numerator();
  mpz_mul_2exp(scaled.get_mpz_t(), scaled.get_mpz_t(), 64);
  scaled /= q.denominator();
  const mpz_class high = scaled >> 32;
  const mpz_class low = scaled - (high << 32);
  return (static_cast<std::uint64_t>(high.get_ui()) << 32) | static_cast<std::uint64_t>(low.get_ui());
}

void require_probability(const Rational& p, const char* what) {
  if (p < Rational(0) || p > Rational(1)) throw DomainError(std::string(what) + " must lie in [0, 1], got " + p.str());
}

std::uint64_t splitmix_finalize(std::uint64_t z) {
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
  return z ^ (z >> 31);
}

// ---------------------------------------------------------------------------
// Growth of the colored animal
// ---------------------------------------------------------------------------

// Edge target codes in an explored animal: index ≥ 0 is a cell; kLeafZero and
// kLeafOne are non-cell children whose gas value is fixed at 0 or 1.
constexpr std::int64_t kLeafZero = -1;
constexpr std::int64_t kLeafOne = -2;

struct Explored {
  bool overflow = false;
  std::vector<VertexId> cells;
  std::vector<std::vector<std::int64_t>> edges;
};

// Breadth-first growth through vertices with color a. `leaf_code` maps a
// non-a color to its fixed gas value code.
template <typename ColorOf>
Explored explore(const AgreeableGraph& g, std::span<const VertexId> roots, ColorOf color_of, std::size_t budget,
                 bool record_edges, bool c_is_one) {
  Explored out;
  std::unordered_map<VertexId, std::int64_t, VertexHash> index;
  auto leaf_code = [&](Color c) { return c == Color::c && c_is_one ? kLeafOne : kLeafZero; };
  for (const auto& r : roots) {
    if (color_of(r) == Color::a && index.emplace(r, static_cast<std::int64_t>(out.cells.size())).second) {
      out.cells.push_back(r);
    }
  }
  ChildList kids;
  for (std::size_t head = 0; head < out.cells.size(); ++head) {
    if (out.cells.size() > budget) {
      out.overflow = true;
      return out;
    }
    try {
      g.children(out.cells[head], kids);
    } catch (const ResourceError&) {
      out.overflow = true;
      return out;
    }
    std::vector<std::int64_t> targets;
    for (const auto& k : kids) {
      const Color c = color_of(k);
      if (c != Color::a) {
        if (record_edges) targets.push_back(leaf_code(c));
        continue;
      }
      const auto [it, inserted] = index.emplace(k, static_cast<std::int64_t>(out.cells.size()));
      if (inserted) out.cells.push_back(k);
      if (record_edges) targets.push_back(it->second);
    }
    if (record_edges) out.edges.push_back(std::move(targets));
  }
  if (out.cells.size() > budget) out.overflow = true;
  return out;
}

// Gas value at cell 0 of an explored animal, given the rule at a cell.
template <typename Rule>
int evaluate_explored(const Explored& e, Rule rule) {
  std::vector<int> value(e.cells.size(), -1);
  std::vector<std::pair<std::size_t, bool>> stack{{0, false}};
  std::vector<int> child_values;
  while (!stack.empty()) {
    auto [i, expanded] = stack.back();
    stack.pop_back();
    if (value[i] >= 0) continue;
    if (!expanded) {
      stack.emplace_back(i, true);
      for (const auto t : e.edges[i]) {
        if (t >= 0 && value[static_cast<std::size_t>(t)] < 0) stack.emplace_back(static_cast<std::size_t>(t), false);
      }
      continue;
    }
    child_values.clear();
    for (const auto t : e.edges[i]) {
      child_values.push_back(t == kLeafZero ? 0 : (t == kLeafOne ? 1 : value[static_cast<std::size_t>(t)]));
    }
    value[i] = rule(child_values);
  }
  return value[0];
}

int type1_rule(const std::vector<int>& child_values) {
  for (const int v : child_values) {
    if (v == 1) return 0;
  }
  return 1;
}

int type2_rule(const std::vector<int>& child_values) {
  int m = 1;
  for (const int v : child_values) m = std::min(m, v);
  return m;
}

Animal explored_animal(Explored& e, VertexId x) {
  if (e.cells.empty()) return Animal{{}, {x}, SourceMode::over};
  std::vector<VertexId> cells = std::move(e.cells);
  std::sort(cells.begin(), cells.end());
  return Animal{std::move(cells), {x}, SourceMode::exact};
}

template <typename ColorOf, typename Rule>
GasSampleResult sample(const AgreeableGraph& g, VertexId x, ColorOf color_of, Rule rule, int non_a_value_b,
                       bool c_is_one, std::size_t budget, bool keep_animal) {
  GasSampleResult result;
  const Color cx = color_of(x);
  if (cx != Color::a) {
    result.value = cx == Color::c && c_is_one ? 1 : non_a_value_b;
    if (keep_animal) result.explored_animal = Animal{{}, {x}, SourceMode::over};
    return result;
  }
  const VertexId roots[] = {x};
  Explored e = explore(g, roots, color_of, budget, true, c_is_one);
  result.explored_cells = e.cells.size();
  if (e.overflow) {
    result.overflow = true;
    return result;
  }
  result.value = evaluate_explored(e, rule);
  if (keep_animal) result.explored_animal = explored_animal(e, x);
  return result;
}

// ---------------------------------------------------------------------------
// Finite-graph exact sums
// ---------------------------------------------------------------------------

struct Closure {
  std::vector<VertexId> vertices;                 // in reverse topological order (children first)
  std::vector<std::vector<std::int64_t>> children;  // indices into vertices
  std::vector<std::size_t> source_positions;
};

Closure descendants_closure(const AgreeableGraph& g, std::span<const VertexId> source, std::size_t max_vertices) {
  if (!g.is_finite()) throw DomainError("exact enumeration of colorings needs a finite DAG");
  for (const auto& s : source) {
    if (!g.contains(s)) throw DomainError("unknown vertex in source");
  }
  std::vector<bool> keep(g.vertex_count(), false);
  std::vector<VertexId> stack(source.begin(), source.end());
  while (!stack.empty()) {
    const VertexId v = stack.back();
    stack.pop_back();
    if (keep[static_cast<std::size_t>(v.x)]) continue;
    keep[static_cast<std::size_t>(v.x)] = true;
    for (const auto& c : g.children(v)) stack.push_back(c);
  }
  Closure out;
  const auto& topo = g.topological_order();
  for (auto it = topo.rbegin(); it != topo.rend(); ++it) {
    if (keep[static_cast<std::size_t>(it->x)]) out.vertices.push_back(*it);
  }
  if (out.vertices.size() > max_vertices) {
    throw ResourceError("exact coloring sum needs " + std::to_string(out.vertices.size()) +
                        " vertices, limit is " + std::to_string(max_vertices));
  }
  std::vector<std::int64_t> position(g.vertex_count(), -1);
  for (std::size_t i = 0; i < out.vertices.size(); ++i) {
    position[static_cast<std::size_t>(out.vertices[i].x)] = static_cast<std::int64_t>(i);
  }
  for (const auto& v : out.vertices) {
    std::vector<std::int64_t> kids;
    for (const auto& c : g.children(v)) kids.push_back(position[static_cast<std::size_t>(c.x)]);
    out.children.push_back(std::move(kids));
  }
  for (const auto& s : source) out.source_positions.push_back(static_cast<std::size_t>(position[static_cast<std::size_t>(s.x)]));
  return out;
}

// ---------------------------------------------------------------------------
// Monte Carlo driver
// ---------------------------------------------------------------------------

struct Tally {
  std::uint64_t hits = 0;
  std::uint64_t valid = 0;
  std::uint64_t overflows = 0;
};

template <typename Replica>
McEstimate run_replicas(std::uint64_t reps, std::uint64_t seed, unsigned threads, Replica replica) {
  if (threads == 0) threads = std::max(1U, std::thread::hardware_concurrency());
  threads = static_cast<unsigned>(std::min<std::uint64_t>(threads, std::max<std::uint64_t>(reps, 1)));
  std::vector<Tally> tallies(threads);
  auto work = [&](unsigned t) {
    const std::uint64_t begin = reps * t / threads;
    const std::uint64_t end = reps * (t + 1) / threads;
    Tally& tally = tallies[t];
    for (std::uint64_t i = begin; i < end; ++i) {
      const std::optional<int> v = replica(replica_seed(seed, i));
      if (!v) {
        ++tally.overflows;
      } else {
        ++tally.valid;
        tally.hits += static_cast<std::uint64_t>(*v);
      }
    }
  };
  if (threads == 1) {
    work(0);
  } else {
    std::vector<std::jthread> pool;
    for (unsigned t = 0; t < threads; ++t) pool.emplace_back(work, t);
  }
  Tally total;
  for (const auto& t : tallies) {
    total.hits += t.hits;
    total.valid += t.valid;
    total.overflows += t.overflows;
  }
  McEstimate est;
  est.reps = reps;
  est.overflows = total.overflows;
  est.seed = seed;
  if (total.valid > 0) {
    const double n = static_cast<double>(total.valid);
    est.mean = static_cast<double>(total.hits) / n;
    if (total.valid > 1) {
      // Values are 0/1, so Σv² = Σv.
      const double var = (static_cast<double>(total.hits) - n * est.mean * est.mean) / (n - 1.0);
      est.standard_error = std::sqrt(std::max(var, 0.0) / n);
    }
  }
  return est;
}

}  // namespace

// ---------------------------------------------------------------------------
// Fixed-animal evaluators
// ---------------------------------------------------------------------------

int chi(const AgreeableGraph& g, std::span<const VertexId> cells, VertexId v) {
  return evaluate_inside(g, cells, v, type1_rule);
}

int chi(const AgreeableGraph& g, const Animal& a, VertexId v) { return chi(g, a.cells, v); }

int nim_value(const AgreeableGraph& g, const Animal& a, VertexId v) {
  // mover_wins(w): the player to move from w has a move to a losing position.
  const detail::CellIndex index(a.cells);
  if (!index.contains(v)) return 0;
  std::unordered_map<VertexId, bool, VertexHash> memo;
  std::function<bool(VertexId)> mover_wins = [&](VertexId w) {
    if (const auto it = memo.find(w); it != memo.end()) return it->second;
    bool wins = false;
    for (const auto& k : g.children(w)) {
      if (index.contains(k) && !mover_wins(k)) {
        wins = true;
        break;
      }
    }
    memo.emplace(w, wins);
    return wins;
  };
  return mover_wins(v) ? 0 : 1;
}

std::int64_t d_signed(const AgreeableGraph& g, const Animal& a, VertexId v) {
  const VertexId source[] = {v};
  return d_signed_set(g, a, source);
}

std::int64_t d_signed_set(const AgreeableGraph& g, const Animal& a, std::span<const VertexId> source) {
  require_minimal_source(g, a, source);
  std::int64_t total = 0;
  for (const auto& b : sub_animals(g, a, source)) total += sign_of(static_cast<std::int64_t>(b.area()) + 1);
  return total;
}

std::int64_t delta_trees(const AgreeableGraph& g, const Animal& a, VertexId v) {
  const VertexId source[] = {v};
  require_minimal_source(g, a, source);
  const TreeEnumerator trees(g, a.cells);
  std::int64_t total = 0;
  for (const auto& [size, mask] : trees.trees_at(v)) total += sign_of(size + 1);
  return total;
}

std::int64_t exact_embedding_sign_sum(const AgreeableGraph& g, const Animal& a, VertexId v) {
  const TreeEnumerator trees(g, a.cells);
  const std::uint64_t full = trees.full_mask();
  std::int64_t total = 0;
  for (const auto& [size, mask] : trees.trees_at(v)) {
    if (mask == full) total += sign_of(size);
  }
  return total;
}

std::int64_t delta_forest(const AgreeableGraph& g, const Animal& a, std::span<const VertexId> source) {
  require_minimal_source(g, a, source);
  const TreeEnumerator trees(g, a.cells);
  // (Σ|t_i| + k) parity → count of forests, built one source at a time.
  TreeList partial{{0, 0}};
  for (const auto& s : source) {
    const TreeList at_s = trees.trees_at(s);
    TreeList next;
    next.reserve(partial.size() * at_s.size());
    for (const auto& [size, mask] : partial) {
      for (const auto& [tsize, tmask] : at_s) next.emplace_back(size + tsize + 1, mask | tmask);
    }
    partial = std::move(next);
  }
  std::int64_t total = 0;
  for (const auto& [exponent, mask] : partial) total += sign_of(exponent);
  return total;
}

// ---------------------------------------------------------------------------
// Colorings
// ---------------------------------------------------------------------------

std::uint64_t vertex_hash(std::uint64_t seed, VertexId v) {
  std::uint64_t h = splitmix_finalize(seed);
  h = splitmix_finalize(h ^ static_cast<std::uint64_t>(v.x));
  return splitmix_finalize(h ^ static_cast<std::uint64_t>(v.y));
}

std::uint64_t replica_seed(std::uint64_t master, std::uint64_t replica) {
  return splitmix_finalize(master + (replica + 1) * 0x9E3779B97F4A7C15ULL);
}

Coloring2::Coloring2(const Rational& p, std::uint64_t seed) : seed_(seed) {
  require_probability(p, "p");
  always_a_ = p == Rational(1);
  threshold_ = always_a_ ? 0 : scaled_threshold(p);
}

Color Coloring2::color(VertexId v) const {
  if (always_a_) return Color::a;
  return vertex_hash(seed_, v) < threshold_ ? Color::a : Color::b;
}

Coloring3::Coloring3(const Rational& pa, const Rational& pb, const Rational& pc, std::uint64_t seed) : seed_(seed) {
  require_probability(pa, "p_a");
  require_probability(pb, "p_b");
  require_probability(pc, "p_c");
  if (pa + pb + pc != Rational(1)) throw DomainError("p_a + p_b + p_c must equal 1");
  const Rational pab = pa + pb;
  a_all_ = pa == Rational(1);
  ab_all_ = pab == Rational(1);
  threshold_a_ = a_all_ ? 0 : scaled_threshold(pa);
  threshold_ab_ = ab_all_ ? 0 : scaled_threshold(pab);
}

Color Coloring3::color(VertexId v) const {
  if (a_all_) return Color::a;
  const std::uint64_t h = vertex_hash(seed_, v);
  if (h < threshold_a_) return Color::a;
  if (ab_all_ || h < threshold_ab_) return Color::b;
  return Color::c;
}

// ---------------------------------------------------------------------------
// Samplers
// ---------------------------------------------------------------------------

GasSampleResult gas_type1_sample(const AgreeableGraph& g, VertexId x, const Coloring2& coloring, std::size_t budget,
                                 bool keep_animal) {
  return sample(g, x, [&](VertexId v) { return coloring.color(v); }, type1_rule, 0, false, budget, keep_animal);
}

GasSampleResult gas_type2_sample(const AgreeableGraph& g, VertexId x, const Coloring3& coloring, std::size_t budget,
                                 bool keep_animal) {
  return sample(g, x, [&](VertexId v) { return coloring.color(v); }, type2_rule, 0, true, budget, keep_animal);
}

// ---------------------------------------------------------------------------
// Exact oracles
// ---------------------------------------------------------------------------

Rational exact_density_type1(const AgreeableGraph& g, std::span<const VertexId> source, const Rational& p,
                             std::size_t max_vertices) {
  require_probability(p, "p");
  const Closure cl = descendants_closure(g, source, max_vertices);
  const std::size_t n = cl.vertices.size();
  std::vector<std::uint64_t> hits_by_a(n + 1, 0);
  std::vector<int> x(n);
  for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << n); ++mask) {
    for (std::size_t i = 0; i < n; ++i) {
      if (!((mask >> i) & 1U)) {
        x[i] = 0;
        continue;
      }
      int v = 1;
      for (const auto c : cl.children[i]) v *= 1 - x[static_cast<std::size_t>(c)];
      x[i] = v;
    }
    bool all = true;
    for (const auto s : cl.source_positions) all = all && x[s] == 1;
    if (all) ++hits_by_a[static_cast<std::size_t>(std::popcount(mask))];
  }
  Rational total(0);
  const Rational q = Rational(1) - p;
  for (std::size_t k = 0; k <= n; ++k) {
    if (hits_by_a[k] == 0) continue;
    total += Rational(mpz_class(std::to_string(hits_by_a[k]))) * pow(p, static_cast<long>(k)) *
             pow(q, static_cast<long>(n - k));
  }
  return total;
}

Rational exact_density_type2(const AgreeableGraph& g, std::span<const VertexId> source, const Rational& pa,
                             const Rational& pb, const Rational& pc, std::size_t max_vertices) {
  require_probability(pa, "p_a");
  require_probability(pb, "p_b");
  require_probability(pc, "p_c");
  if (pa + pb + pc != Rational(1)) throw DomainError("p_a + p_b + p_c must equal 1");
  const Closure cl = descendants_closure(g, source, max_vertices);
  const std::size_t n = cl.vertices.size();
  // hits[na][nb]; nc = n − na − nb.
  std::vector<std::vector<std::uint64_t>> hits(n + 1, std::vector<std::uint64_t>(n + 1, 0));
  std::vector<int> digits(n, 0);
  std::vector<int> x(n);
  std::uint64_t combos = 1;
  for (std::size_t i = 0; i < n; ++i) combos *= 3;
  for (std::uint64_t code = 0; code < combos; ++code) {
    std::size_t na = 0;
    std::size_t nb = 0;
    for (std::size_t i = 0; i < n; ++i) {
      switch (digits[i]) {
        case 0: {
          ++na;
          int v = 1;
          for (const auto c : cl.children[i]) v = std::min(v, x[static_cast<std::size_t>(c)]);
          x[i] = v;
          break;
        }
        case 1:
          ++nb;
          x[i] = 0;
          break;
        default:
          x[i] = 1;
      }
    }
    bool all = true;
    for (const auto s : cl.source_positions) all = all && x[s] == 1;
    if (all) ++hits[na][nb];
    for (std::size_t i = 0; i < n; ++i) {
      if (++digits[i] < 3) break;
      digits[i] = 0;
    }
  }
  Rational total(0);
  for (std::size_t na = 0; na <= n; ++na) {
    for (std::size_t nb = 0; na + nb <= n; ++nb) {
      if (hits[na][nb] == 0) continue;
      total += Rational(mpz_class(std::to_string(hits[na][nb]))) * pow(pa, static_cast<long>(na)) *
               pow(pb, static_cast<long>(nb)) * pow(pc, static_cast<long>(n - na - nb));
    }
  }
  return total;
}

Rational exact_density_type2(const AgreeableGraph& g, VertexId x, const Rational& pa, const Rational& pb,
                             const Rational& pc, std::size_t max_vertices) {
  const VertexId source[] = {x};
  return exact_density_type2(g, source, pa, pb, pc, max_vertices);
}

// ---------------------------------------------------------------------------
// Monte Carlo
// ---------------------------------------------------------------------------

McEstimate mc_density(const AgreeableGraph& g, std::span<const VertexId> source, const GasModel& model,
                      std::uint64_t reps, std::uint64_t seed, std::size_t budget, unsigned threads) {
  if (reps == 0) throw DomainError("reps must be positive");
  for (const auto& s : source) {
    if (!g.contains(s)) throw DomainError("source vertex is not in the graph");
  }
  return std::visit(
      [&](const auto& m) {
        using M = std::decay_t<decltype(m)>;
        return run_replicas(reps, seed, threads, [&](std::uint64_t replica) -> std::optional<int> {
          int product = 1;
          for (const auto& s : source) {
            GasSampleResult r;
            if constexpr (std::is_same_v<M, Type1Model>) {
              r = gas_type1_sample(g, s, Coloring2(m.p, replica), budget, false);
            } else {
              r = gas_type2_sample(g, s, Coloring3(m.pa, m.pb, m.pc, replica), budget, false);
            }
            if (r.overflow) return std::nullopt;
            product *= r.value;
          }
          return product;
        });
      },
      model);
}

McEstimate percolation_survival(const AgreeableGraph& g, std::span<const VertexId> source, const Rational& p,
                                std::size_t budget, std::uint64_t reps, std::uint64_t seed, unsigned threads) {
  if (reps == 0) throw DomainError("reps must be positive");
  return run_replicas(reps, seed, threads, [&](std::uint64_t replica) -> std::optional<int> {
    const Coloring2 coloring(p, replica);
    const Explored e = explore(g, source, [&](VertexId v) { return coloring.color(v); }, budget, false, false);
    return e.overflow ? 1 : 0;
  });
}

// ---------------------------------------------------------------------------
// Row dynamics
// ---------------------------------------------------------------------------

std::vector<int> evolve_row(std::span<const int> row, std::span<const int> noise, RowTopology topology) {
  const std::size_t n = row.size();
  const std::size_t m = topology == RowTopology::cylinder ? n : (n == 0 ? 0 : n - 1);
  if (noise.size() < m) throw DomainError("noise row is shorter than the output row");
  std::vector<int> out(m);
  for (std::size_t k = 0; k < m; ++k) {
    const int right = row[(k + 1) % n];
    out[k] = noise[k] * (1 - row[k]) * (1 - right);
  }
  return out;
}

std::optional<std::vector<int>> line_window_sample(const Rational& p, std::size_t width, std::uint64_t seed,
                                                   std::size_t budget) {
  const auto g = AgreeableGraph::square_lattice();
  const Coloring2 coloring(p, seed);
  std::vector<int> out;
  out.reserve(width);
  for (std::size_t k = 0; k < width; ++k) {
    const auto r = gas_type1_sample(g, {static_cast<std::int64_t>(k), 0}, coloring, budget, false);
    if (r.overflow) return std::nullopt;
    out.push_back(r.value);
  }
  return out;
}

}  // namespace dagas::gas
