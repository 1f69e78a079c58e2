#include "juggling/chain.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <queue>

namespace juggling {

template <class S>
ChainMatrix<S>::ChainMatrix(std::vector<std::string> labels, std::vector<SparseRow<S>> rows)
    : labels_(std::move(labels)), rows_(std::move(rows)) {
  if (labels_.size() != rows_.size()) throw InvalidArgument("chain matrix: label and row counts differ");
  for (std::size_t i = 0; i < rows_.size(); ++i) {
    S sum = ScalarTraits<S>::zero();
    std::size_t previous = 0;
    for (std::size_t k = 0; k < rows_[i].size(); ++k) {
      const auto& [j, p] = rows_[i][k];
      if (j >= rows_.size()) throw UnknownSuccessor("row " + labels_[i] + " points outside the state list");
      if (k > 0 && j <= previous) throw InvalidArgument("row " + labels_[i] + " is not sorted by column");
      if (p < 0) throw RowSumError("row " + labels_[i] + " has a negative entry");
      previous = j;
      sum += p;
    }
    if (!scalar_equal(sum, ScalarTraits<S>::one())) {
      throw RowSumError("row " + labels_[i] + " sums to " + scalar_to_string(sum));
    }
  }
}

template <class S>
S ChainMatrix<S>::at(std::size_t i, std::size_t j) const {
  const auto& r = rows_.at(i);
  auto it = std::lower_bound(r.begin(), r.end(), j, [](const auto& entry, std::size_t col) { return entry.first < col; });
  if (it != r.end() && it->first == j) return it->second;
  return ScalarTraits<S>::zero();
}

template <class S>
std::vector<std::vector<S>> ChainMatrix<S>::dense() const {
  std::vector<std::vector<S>> out(size(), std::vector<S>(size(), ScalarTraits<S>::zero()));
  for (std::size_t i = 0; i < size(); ++i) {
    for (const auto& [j, p] : rows_[i]) out[i][j] = p;
  }
  return out;
}

template <class S>
std::optional<std::size_t> ChainMatrix<S>::index_of(const std::string& label) const {
  auto it = std::find(labels_.begin(), labels_.end(), label);
  if (it == labels_.end()) return std::nullopt;
  return static_cast<std::size_t>(it - labels_.begin());
}

template <class S>
std::size_t ChainMatrix<S>::nonzeros() const {
  std::size_t count = 0;
  for (const auto& r : rows_) count += r.size();
  return count;
}

template class ChainMatrix<Rational>;
template class ChainMatrix<double>;

template <class S>
S Distribution<S>::total() const {
  S sum = ScalarTraits<S>::zero();
  for (const S& w : weights) sum += w;
  return sum;
}

template <class S>
Distribution<S> Distribution<S>::normalized() const {
  const S mass = total();
  if (scalar_is_zero(mass)) throw DegenerateParams("cannot normalize a distribution with zero mass");
  Distribution out = *this;
  for (S& w : out.weights) w /= mass;
  return out;
}

template struct Distribution<Rational>;
template struct Distribution<double>;

LumpingMap LumpingMap::identity(std::size_t size) {
  LumpingMap map;
  map.base_size = size;
  map.image.resize(size);
  std::iota(map.image.begin(), map.image.end(), std::size_t{0});
  return map;
}

void LumpingMap::validate() const {
  std::vector<bool> hit(base_size, false);
  for (std::size_t b : image) {
    if (b >= base_size) throw InvalidArgument("lumping map points outside the base state list");
    hit[b] = true;
  }
  if (std::find(hit.begin(), hit.end(), false) != hit.end()) {
    throw InvalidArgument("lumping map is not onto the base state list");
  }
}

template <class S>
LumpingReport<S> verify_lumping(const ChainMatrix<S>& enriched, const LumpingMap& map, const ChainMatrix<S>& base) {
  if (map.image.size() != enriched.size() || map.base_size != base.size()) {
    throw InvalidArgument("lumping map does not match the chains' sizes");
  }
  LumpingReport<S> report;
  std::vector<S> mass(base.size(), ScalarTraits<S>::zero());
  std::vector<std::size_t> touched;
  for (std::size_t x = 0; x < enriched.size(); ++x) {
    touched.clear();
    for (const auto& [y, p] : enriched.row(x)) {
      const std::size_t b = map.image[y];
      if (scalar_is_zero(mass[b])) touched.push_back(b);
      mass[b] += p;
    }
    for (const auto& [b, p] : base.row(map.image[x])) {
      if (scalar_is_zero(mass[b])) touched.push_back(b);
    }
    std::sort(touched.begin(), touched.end());
    touched.erase(std::unique(touched.begin(), touched.end()), touched.end());
    for (std::size_t b : touched) {
      const S expected = base.at(map.image[x], b);
      if (!scalar_equal(mass[b], expected) && report.holds) {
        report.holds = false;
        report.counterexample = LumpingCounterexample<S>{x, b, mass[b], expected};
      }
      mass[b] = ScalarTraits<S>::zero();
    }
    if (!report.holds) break;
  }
  return report;
}

template <class S>
Distribution<S> project_distribution(const Distribution<S>& enriched, const LumpingMap& map) {
  if (enriched.size() != map.image.size()) throw InvalidArgument("distribution does not match the lumping map");
  Distribution<S> out{std::vector<S>(map.base_size, ScalarTraits<S>::zero())};
  for (std::size_t x = 0; x < enriched.size(); ++x) out.weights[map.image[x]] += enriched.weights[x];
  return out;
}

template LumpingReport<Rational> verify_lumping(const ChainMatrix<Rational>&, const LumpingMap&, const ChainMatrix<Rational>&);
template LumpingReport<double> verify_lumping(const ChainMatrix<double>&, const LumpingMap&, const ChainMatrix<double>&);
template Distribution<Rational> project_distribution(const Distribution<Rational>&, const LumpingMap&);
template Distribution<double> project_distribution(const Distribution<double>&, const LumpingMap&);

namespace {

template <class S>
std::vector<std::size_t> bfs_levels(const ChainMatrix<S>& P, bool reverse) {
  const std::size_t n = P.size();
  std::vector<std::vector<std::size_t>> adj(n);
  for (std::size_t i = 0; i < n; ++i) {
    for (const auto& [j, p] : P.row(i)) {
      if (reverse) {
        adj[j].push_back(i);
      } else {
        adj[i].push_back(j);
      }
    }
  }
  constexpr std::size_t unseen = static_cast<std::size_t>(-1);
  std::vector<std::size_t> level(n, unseen);
  if (n == 0) return level;
  std::queue<std::size_t> queue;
  level[0] = 0;
  queue.push(0);
  while (!queue.empty()) {
    const std::size_t u = queue.front();
    queue.pop();
    for (std::size_t v : adj[u]) {
      if (level[v] == unseen) {
        level[v] = level[u] + 1;
        queue.push(v);
      }
    }
  }
  return level;
}

}  // namespace

template <class S>
bool is_irreducible(const ChainMatrix<S>& P) {
  constexpr std::size_t unseen = static_cast<std::size_t>(-1);
  const auto forward = bfs_levels(P, false);
  const auto backward = bfs_levels(P, true);
  return std::find(forward.begin(), forward.end(), unseen) == forward.end() &&
         std::find(backward.begin(), backward.end(), unseen) == backward.end();
}

template <class S>
std::size_t chain_period(const ChainMatrix<S>& P) {
  if (!is_irreducible(P)) return 0;
  const auto level = bfs_levels(P, false);
  std::size_t g = 0;
  for (std::size_t i = 0; i < P.size(); ++i) {
    for (const auto& [j, p] : P.row(i)) {
      const auto diff = static_cast<long long>(level[i]) + 1 - static_cast<long long>(level[j]);
      g = std::gcd(g, static_cast<std::size_t>(diff < 0 ? -diff : diff));
    }
  }
  return g;
}

template bool is_irreducible(const ChainMatrix<Rational>&);
template bool is_irreducible(const ChainMatrix<double>&);
template std::size_t chain_period(const ChainMatrix<Rational>&);
template std::size_t chain_period(const ChainMatrix<double>&);

template <class S>
SparseRow<S> row_times_matrix(const SparseRow<S>& row, const ChainMatrix<S>& P) {
  std::map<std::size_t, S> acc;
  for (const auto& [k, a] : row) {
    for (const auto& [j, p] : P.row(k)) {
      auto [slot, inserted] = acc.try_emplace(j, a * p);
      if (!inserted) slot->second += a * p;
    }
  }
  SparseRow<S> out;
  out.reserve(acc.size());
  for (auto& [j, v] : acc) {
    if (!scalar_is_zero(v)) out.emplace_back(j, std::move(v));
  }
  return out;
}

template SparseRow<Rational> row_times_matrix(const SparseRow<Rational>&, const ChainMatrix<Rational>&);
template SparseRow<double> row_times_matrix(const SparseRow<double>&, const ChainMatrix<double>&);

template <class S>
bool is_stationary(const ChainMatrix<S>& P, const Distribution<S>& pi) {
  if (pi.size() != P.size()) throw InvalidArgument("distribution does not match the chain");
  SparseRow<S> row;
  for (std::size_t i = 0; i < pi.size(); ++i) {
    if (!scalar_is_zero(pi.weights[i])) row.emplace_back(i, pi.weights[i]);
  }
  const SparseRow<S> image = row_times_matrix(row, P);
  std::vector<S> dense(P.size(), ScalarTraits<S>::zero());
  for (const auto& [j, v] : image) dense[j] = v;
  for (std::size_t j = 0; j < P.size(); ++j) {
    if (!scalar_equal(dense[j], pi.weights[j])) return false;
  }
  return true;
}

template bool is_stationary(const ChainMatrix<Rational>&, const Distribution<Rational>&);
template bool is_stationary(const ChainMatrix<double>&, const Distribution<double>&);

namespace {

// In-place row update target -= factor * source on sorted sparse rows.
void subtract_scaled(SparseRow<Rational>& target, const Rational& factor, const SparseRow<Rational>& source) {
  SparseRow<Rational> out;
  out.reserve(target.size() + source.size());
  auto t = target.begin();
  auto s = source.begin();
  while (t != target.end() || s != source.end()) {
    if (s == source.end() || (t != target.end() && t->first < s->first)) {
      out.push_back(std::move(*t++));
    } else if (t == target.end() || s->first < t->first) {
      out.emplace_back(s->first, -factor * s->second);
      ++s;
    } else {
      Rational v = t->second - factor * s->second;
      if (sgn(v) != 0) out.emplace_back(t->first, std::move(v));
      ++t;
      ++s;
    }
  }
  target = std::move(out);
}

}  // namespace

Distribution<Rational> stationary_exact(const ChainMatrix<Rational>& P) {
  const std::size_t n = P.size();
  if (n == 0) throw InvalidArgument("stationary_exact: empty chain");
  if (!is_irreducible(P)) {
    throw ReducibleChain("stationary_exact: transition graph is not strongly connected; "
                         "the stationary law is not unique (degenerate parameters?)");
  }
  // Equations: column j of (P - I) for j = 0..n-2, plus sum(pi) = 1.
  // Unknowns are pi_0..pi_{n-1}; the system is stored row-wise with the
  // right-hand side in column n.
  std::vector<SparseRow<Rational>> eq(n);
  for (std::size_t i = 0; i < n; ++i) {
    for (const auto& [j, p] : P.row(i)) {
      if (j + 1 < n) eq[j].emplace_back(i, p);
    }
  }
  for (std::size_t j = 0; j + 1 < n; ++j) {
    auto& row = eq[j];
    auto it = std::lower_bound(row.begin(), row.end(), j, [](const auto& e, std::size_t c) { return e.first < c; });
    if (it != row.end() && it->first == j) {
      it->second -= 1;
      if (sgn(it->second) == 0) row.erase(it);
    } else {
      row.insert(it, {j, Rational(-1)});
    }
  }
  eq[n - 1].clear();
  for (std::size_t i = 0; i < n; ++i) eq[n - 1].emplace_back(i, Rational(1));
  eq[n - 1].emplace_back(n, Rational(1));

  // Forward elimination column by column, pivoting on the sparsest row.
  std::vector<bool> used(n, false);
  std::vector<std::size_t> pivot_row(n);
  for (std::size_t col = 0; col < n; ++col) {
    std::size_t best = n;
    for (std::size_t r = 0; r < n; ++r) {
      if (used[r] || eq[r].empty() || eq[r].front().first != col) continue;
      if (best == n || eq[r].size() < eq[best].size()) best = r;
    }
    if (best == n) throw ReducibleChain("stationary_exact: singular system");
    used[best] = true;
    pivot_row[col] = best;
    const Rational pivot = eq[best].front().second;
    for (std::size_t r = 0; r < n; ++r) {
      if (used[r] || eq[r].empty() || eq[r].front().first != col) continue;
      const Rational factor = eq[r].front().second / pivot;
      subtract_scaled(eq[r], factor, eq[best]);
    }
  }
  std::vector<Rational> x(n);
  for (std::size_t col = n; col-- > 0;) {
    const auto& row = eq[pivot_row[col]];
    Rational acc(0);
    Rational diag(0);
    for (const auto& [j, v] : row) {
      if (j == col) {
        diag = v;
      } else if (j == n) {
        acc += v;
      } else {
        acc -= v * x[j];
      }
    }
    x[col] = acc / diag;
  }
  return Distribution<Rational>{std::move(x)};
}

Distribution<double> stationary_solve(const ChainMatrix<double>& P) {
  const std::size_t n = P.size();
  if (n == 0) throw InvalidArgument("stationary_solve: empty chain");
  if (!is_irreducible(P)) throw ReducibleChain("stationary_solve: transition graph is not strongly connected");
  std::vector<std::vector<double>> a(n, std::vector<double>(n + 1, 0.0));
  for (std::size_t i = 0; i < n; ++i) {
    for (const auto& [j, p] : P.row(i)) a[j][i] += p;
  }
  for (std::size_t j = 0; j < n; ++j) a[j][j] -= 1.0;
  std::fill(a[n - 1].begin(), a[n - 1].end(), 1.0);
  for (std::size_t col = 0; col < n; ++col) {
    std::size_t best = col;
    for (std::size_t r = col + 1; r < n; ++r) {
      if (std::abs(a[r][col]) > std::abs(a[best][col])) best = r;
    }
    if (a[best][col] == 0.0) throw ReducibleChain("stationary_solve: singular system");
    std::swap(a[col], a[best]);
    for (std::size_t r = col + 1; r < n; ++r) {
      const double factor = a[r][col] / a[col][col];
      if (factor == 0.0) continue;
      for (std::size_t c = col; c <= n; ++c) a[r][c] -= factor * a[col][c];
    }
  }
  std::vector<double> x(n);
  for (std::size_t col = n; col-- > 0;) {
    double acc = a[col][n];
    for (std::size_t c = col + 1; c < n; ++c) acc -= a[col][c] * x[c];
    x[col] = acc / a[col][col];
  }
  return Distribution<double>{std::move(x)};
}

Distribution<double> stationary_power(const ChainMatrix<double>& P, double tolerance, std::size_t max_iterations) {
  const std::size_t n = P.size();
  std::vector<double> pi(n, 1.0 / static_cast<double>(n));
  std::vector<double> next(n);
  for (std::size_t it = 0; it < max_iterations; ++it) {
    for (std::size_t j = 0; j < n; ++j) next[j] = 0.5 * pi[j];
    for (std::size_t i = 0; i < n; ++i) {
      for (const auto& [j, p] : P.row(i)) next[j] += 0.5 * pi[i] * p;
    }
    double diff = 0.0;
    for (std::size_t j = 0; j < n; ++j) diff += std::abs(next[j] - pi[j]);
    pi.swap(next);
    if (diff < tolerance) break;
  }
  return Distribution<double>{std::move(pi)};
}

MatrixPower matrix_power(const ChainMatrix<Rational>& P, int m) {
  if (m < 0) throw InvalidArgument("matrix_power: negative exponent");
  // Rows of P^{k+1} are (rows of P^k) * P, so only distinct rows need to be
  // propagated; identical rows stay identical.
  MatrixPower power;
  power.row_of.resize(P.size());
  for (std::size_t i = 0; i < P.size(); ++i) {
    power.rows.push_back(SparseRow<Rational>{{i, Rational(1)}});
    power.row_of[i] = i;
  }
  for (int step = 0; step < m; ++step) {
    std::map<SparseRow<Rational>, std::size_t> seen;
    std::vector<SparseRow<Rational>> next_rows;
    std::vector<std::size_t> remap(power.rows.size());
    for (std::size_t r = 0; r < power.rows.size(); ++r) {
      SparseRow<Rational> image = row_times_matrix(power.rows[r], P);
      auto [it, inserted] = seen.try_emplace(image, next_rows.size());
      if (inserted) next_rows.push_back(std::move(image));
      remap[r] = it->second;
    }
    for (auto& id : power.row_of) id = remap[id];
    power.rows = std::move(next_rows);
  }
  return power;
}

UltrafastResult ultrafast_check(const ChainMatrix<Rational>& P, int m) {
  const MatrixPower power = matrix_power(P, m);
  std::vector<bool> referenced(power.rows.size(), false);
  for (std::size_t id : power.row_of) referenced[id] = true;
  const auto distinct = static_cast<std::size_t>(std::count(referenced.begin(), referenced.end(), true));
  UltrafastResult result;
  result.holds = distinct == 1;
  if (result.holds) {
    Distribution<Rational> row{std::vector<Rational>(P.size(), Rational(0))};
    for (const auto& [j, v] : power.rows[power.row_of.front()]) row.weights[j] = v;
    result.stationary = std::move(row);
  }
  return result;
}

bool nilpotency_check(const ChainMatrix<Rational>& P, int n) {
  const MatrixPower power = matrix_power(P, n);
  std::vector<bool> referenced(power.rows.size(), false);
  for (std::size_t id : power.row_of) referenced[id] = true;
  for (std::size_t r = 0; r < power.rows.size(); ++r) {
    if (referenced[r] && row_times_matrix(power.rows[r], P) != power.rows[r]) return false;
  }
  return true;
}

template <class S>
S total_variation(const Distribution<S>& p, const Distribution<S>& q) {
  if (p.size() != q.size()) throw InvalidArgument("total_variation: distributions have different lengths");
  S sum = ScalarTraits<S>::zero();
  for (std::size_t i = 0; i < p.size(); ++i) {
    S d = p.weights[i] - q.weights[i];
    sum += d < 0 ? S(-d) : d;
  }
  return sum / 2;
}

template Rational total_variation(const Distribution<Rational>&, const Distribution<Rational>&);
template double total_variation(const Distribution<double>&, const Distribution<double>&);

ChainMatrix<double> to_floating(const ChainMatrix<Rational>& P) {
  std::vector<SparseRow<double>> rows(P.size());
  for (std::size_t i = 0; i < P.size(); ++i) {
    double sum = 0.0;
    for (const auto& [j, p] : P.row(i)) {
      rows[i].emplace_back(j, p.get_d());
      sum += rows[i].back().second;
    }
    // Rounded entries may miss 1 by a few ulps; renormalize so the float
    // chain passes its own row-sum check.
    for (auto& entry : rows[i]) entry.second /= sum;
  }
  return ChainMatrix<double>(P.labels(), std::move(rows));
}

Distribution<double> to_floating(const Distribution<Rational>& d) {
  Distribution<double> out;
  out.weights.reserve(d.size());
  for (const Rational& w : d.weights) out.weights.push_back(w.get_d());
  return out;
}

std::uint64_t mix_seed(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

double uniform_unit(std::mt19937_64& rng) {
  return static_cast<double>(rng() >> 11) * 0x1.0p-53;
}

std::size_t sample_row(const SparseRow<double>& row, std::mt19937_64& rng) {
  const double u = uniform_unit(rng);
  double acc = 0.0;
  for (const auto& [j, p] : row) {
    acc += p;
    if (u < acc) return j;
  }
  return row.back().first;
}

SimulationResult simulate(std::size_t state_count, const TransitionSampler& sampler, std::size_t start,
                          std::size_t steps, std::uint64_t seed, const SimulationOptions& options) {
  if (start >= state_count) throw InvalidArgument("simulate: start state out of range");
  SimulationResult result;
  result.seed = seed;
  result.burn_in = options.burn_in.value_or(steps / 10);
  if (result.burn_in > steps) throw InvalidArgument("simulate: burn-in exceeds the number of steps");
  std::vector<std::uint64_t> visits(state_count, 0);
  std::mt19937_64 rng(seed);
  std::size_t state = start;
  if (options.record_trajectory) {
    result.trajectory.reserve(steps + 1);
    result.trajectory.push_back(state);
  }
  if (result.burn_in == 0) ++visits[state];
  for (std::size_t t = 1; t <= steps; ++t) {
    state = sampler(state, rng);
    if (options.record_trajectory) result.trajectory.push_back(state);
    if (t >= result.burn_in) ++visits[state];
  }
  const double counted = static_cast<double>(steps - result.burn_in + 1);
  result.empirical.weights.resize(state_count);
  for (std::size_t i = 0; i < state_count; ++i) result.empirical.weights[i] = static_cast<double>(visits[i]) / counted;
  return result;
}

SimulationResult simulate(const ChainMatrix<double>& P, std::size_t start, std::size_t steps, std::uint64_t seed,
                          const SimulationOptions& options) {
  return simulate(
      P.size(), [&P](std::size_t s, std::mt19937_64& rng) { return sample_row(P.row(s), rng); }, start, steps, seed,
      options);
}

Distribution<double> simulate_replicas(const ChainMatrix<double>& P, std::size_t start, std::size_t horizon,
                                       std::size_t replicas, std::uint64_t seed) {
  if (start >= P.size()) throw InvalidArgument("simulate_replicas: start state out of range");
  if (replicas == 0) throw InvalidArgument("simulate_replicas: need at least one replica");
  std::vector<std::uint64_t> hits(P.size(), 0);
  for (std::size_t r = 0; r < replicas; ++r) {
    std::mt19937_64 rng(mix_seed(seed + r));
    std::size_t state = start;
    for (std::size_t t = 0; t < horizon; ++t) state = sample_row(P.row(state), rng);
    ++hits[state];
  }
  Distribution<double> out;
  out.weights.resize(P.size());
  for (std::size_t i = 0; i < P.size(); ++i) out.weights[i] = static_cast<double>(hits[i]) / static_cast<double>(replicas);
  return out;
}

}  // namespace juggling
