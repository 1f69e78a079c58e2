#include "juggling/jugglers.hpp"

#include <algorithm>

#include "juggling/combinatorics.hpp"

namespace juggling::jugglers {

BallArray::BallArray(int rows, int cols, std::vector<bool> occupied) : rows_(rows), cols_(cols), occupied_(std::move(occupied)) {
  if (rows < 1 || cols < 1) throw InvalidArgument("ball array needs r >= 1 and c >= 1");
  if (occupied_.size() != static_cast<std::size_t>(rows * cols)) throw InvalidArgument("ball array must have r x c cells");
}

BallArray BallArray::empty(int rows, int cols) {
  if (rows < 1 || cols < 1) throw InvalidArgument("ball array needs r >= 1 and c >= 1");
  return BallArray(rows, cols, std::vector<bool>(static_cast<std::size_t>(rows * cols), false));
}

bool BallArray::at(int row, int col) const {
  if (row < 1 || row > rows_ || col < 1 || col > cols_) throw InvalidArgument("ball array cell out of range");
  return occupied_[static_cast<std::size_t>((row - 1) * cols_ + col - 1)];
}

void BallArray::set(int row, int col, bool ball) {
  if (row < 1 || row > rows_ || col < 1 || col > cols_) throw InvalidArgument("ball array cell out of range");
  occupied_[static_cast<std::size_t>((row - 1) * cols_ + col - 1)] = ball;
}

int BallArray::balls() const { return static_cast<int>(std::count(occupied_.begin(), occupied_.end(), true)); }

int BallArray::row_count(int row) const {
  int count = 0;
  for (int col = 1; col <= cols_; ++col) count += at(row, col) ? 1 : 0;
  return count;
}

std::string BallArray::to_string() const {
  std::string out;
  for (int row = 1; row <= rows_; ++row) {
    if (row > 1) out += '/';
    for (int col = 1; col <= cols_; ++col) out += at(row, col) ? '1' : '0';
  }
  return out;
}

BallArray BallArray::parse(std::string_view text) {
  std::vector<bool> cells;
  int rows = 1;
  int cols = -1;
  int current = 0;
  for (char ch : text) {
    if (ch == '/') {
      if (cols >= 0 && current != cols) throw InvalidArgument("ball array rows must have equal length");
      cols = current;
      current = 0;
      ++rows;
    } else if (ch == '0' || ch == '1') {
      cells.push_back(ch == '1');
      ++current;
    } else {
      throw InvalidArgument("malformed ball array: '" + std::string(text) + "'");
    }
  }
  if (cols >= 0 && current != cols) throw InvalidArgument("ball array rows must have equal length");
  return BallArray(rows, current, std::move(cells));
}

std::string to_string(const BallArray& a) { return a.to_string(); }

std::vector<BallArray> enumerate_arrays(int rows, int cols, int balls) {
  if (rows < 1 || cols < 1) throw InvalidArgument("ball array needs r >= 1 and c >= 1");
  const int cells = rows * cols;
  if (balls < 0 || balls > cells) throw InvalidArgument("ball count must lie in 0..rc");
  std::vector<bool> pattern(static_cast<std::size_t>(cells), false);
  std::fill(pattern.begin(), pattern.begin() + balls, true);
  std::vector<BallArray> out;
  do {
    out.emplace_back(rows, cols, pattern);
  } while (std::prev_permutation(pattern.begin(), pattern.end()));
  auto key = [](const BallArray& a) {
    std::vector<int> k;
    for (int row = a.rows(); row >= 1; --row) k.push_back(a.row_count(row));
    for (bool b : a.cells()) k.push_back(b ? 1 : 0);
    return k;
  };
  std::stable_sort(out.begin(), out.end(), [&](const BallArray& x, const BallArray& y) { return key(x) > key(y); });
  return out;
}

BallArray drop_row(const BallArray& a) {
  BallArray out = BallArray::empty(a.rows(), a.cols());
  for (int row = 1; row < a.rows(); ++row) {
    for (int col = 1; col <= a.cols(); ++col) out.set(row + 1, col, a.at(row, col));
  }
  return out;
}

namespace {

void place_balls(BallArray& b, const std::vector<std::pair<int, int>>& free, std::size_t from, int left, std::vector<BallArray>& out) {
  if (left == 0) {
    out.push_back(b);
    return;
  }
  for (std::size_t k = from; k + static_cast<std::size_t>(left) <= free.size(); ++k) {
    b.set(free[k].first, free[k].second, true);
    place_balls(b, free, k + 1, left - 1, out);
    b.set(free[k].first, free[k].second, false);
  }
}

void place_crosses(const std::vector<int>& ball_rows, std::size_t next, std::vector<bool>& used, int cols, std::uint64_t& count) {
  if (next == ball_rows.size()) {
    ++count;
    return;
  }
  // Crosses go in rows 0..row-1 of the enlarged array; row 0 is the extra top row.
  const int limit = ball_rows[next] * cols;
  for (int cell = 0; cell < limit; ++cell) {
    if (used[static_cast<std::size_t>(cell)]) continue;
    used[static_cast<std::size_t>(cell)] = true;
    place_crosses(ball_rows, next + 1, used, cols, count);
    used[static_cast<std::size_t>(cell)] = false;
  }
}

std::uint64_t checked_mul(std::uint64_t a, std::uint64_t b) {
  std::uint64_t out = 0;
  if (__builtin_mul_overflow(a, b, &out)) throw SizeCapExceeded("stationary weight overflows 64 bits");
  return out;
}

}  // namespace

std::vector<BallArray> successors(const BallArray& a) {
  BallArray base = drop_row(a);
  std::vector<std::pair<int, int>> free;
  for (int row = 1; row <= a.rows(); ++row) {
    for (int col = 1; col <= a.cols(); ++col) {
      if (!base.at(row, col)) free.emplace_back(row, col);
    }
  }
  std::vector<BallArray> out;
  place_balls(base, free, 0, a.row_count(a.rows()), out);
  return out;
}

template <class S>
S juggler_transition_prob(const BallArray& a, const BallArray& b) {
  if (a.rows() != b.rows() || a.cols() != b.cols() || a.balls() != b.balls())
    throw InvalidArgument("juggler_transition_prob: arrays must share r, c and ball count");
  const BallArray base = drop_row(a);
  for (std::size_t i = 0; i < base.cells().size(); ++i) {
    if (base.cells()[i] && !b.cells()[i]) return ScalarTraits<S>::zero();
  }
  const int dropped = a.row_count(a.rows());
  const int slots = a.rows() * a.cols() - a.balls() + dropped;
  return ScalarTraits<S>::ratio(1, static_cast<std::int64_t>(binomial(slots, dropped)));
}

std::uint64_t juggler_stationary_weight(const BallArray& a) {
  std::uint64_t weight = 1;
  int above = 0;
  for (int row = 1; row <= a.rows(); ++row) {
    const int here = a.row_count(row);
    for (int k = 0; k < here; ++k) weight = checked_mul(weight, static_cast<std::uint64_t>(a.cols() * row - above - k));
    above += here;
  }
  return weight;
}

std::uint64_t count_arc_enrichments(const BallArray& a) {
  std::vector<int> ball_rows;
  for (int row = 1; row <= a.rows(); ++row) {
    for (int col = 1; col <= a.cols(); ++col) {
      if (a.at(row, col)) ball_rows.push_back(row);
    }
  }
  std::vector<bool> used(static_cast<std::size_t>((a.rows() + 1) * a.cols()), false);
  std::uint64_t count = 0;
  place_crosses(ball_rows, 0, used, a.cols(), count);
  return count;
}

template <class S>
ChainMatrix<S> build_chain(int rows, int cols, int balls) {
  const auto states = enumerate_arrays(rows, cols, balls);
  return build_matrix<S, BallArray>(states, [](const BallArray& a) {
    std::vector<std::pair<BallArray, S>> out;
    for (auto& b : successors(a)) {
      S prob = juggler_transition_prob<S>(a, b);
      out.emplace_back(std::move(b), std::move(prob));
    }
    return out;
  });
}

template <class S>
Distribution<S> stationary_formula(int rows, int cols, int balls) {
  Distribution<S> d;
  for (const auto& a : enumerate_arrays(rows, cols, balls)) {
    d.weights.push_back(ScalarTraits<S>::ratio(static_cast<std::int64_t>(juggler_stationary_weight(a)), 1));
  }
  return d.normalized();
}

template Rational juggler_transition_prob<Rational>(const BallArray&, const BallArray&);
template double juggler_transition_prob<double>(const BallArray&, const BallArray&);
template ChainMatrix<Rational> build_chain<Rational>(int, int, int);
template ChainMatrix<double> build_chain<double>(int, int, int);
template Distribution<Rational> stationary_formula<Rational>(int, int, int);
template Distribution<double> stationary_formula<double>(int, int, int);

}  // namespace juggling::jugglers
