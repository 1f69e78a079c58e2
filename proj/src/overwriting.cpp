#include "juggling/overwriting.hpp"

#include <algorithm>
#include <charconv>
#include <limits>
#include <map>

namespace juggling::overwriting {

namespace {

// Letter at position b, with w_{n+1} = infinity.
int letter_or_infinity(const Word& w, int b) {
  return b == w.size() + 1 ? std::numeric_limits<int>::max() : w[b];
}

void extend_sequences(const Word& w, OverwriteSequence& prefix, std::vector<OverwriteSequence>& out) {
  const int n = w.size();
  const int last_b = prefix.empty() ? 1 : prefix.back().first;
  const int last_t = prefix.empty() ? 0 : prefix.back().second;
  for (int b = last_b + 1; b <= n + 1; ++b) {
    const int cap = std::min(w.alphabet(), letter_or_infinity(w, b) - 1);
    for (int t = last_t + 1; t <= cap; ++t) {
      prefix.emplace_back(b, t);
      if (b == n + 1) {
        out.push_back(prefix);
      } else {
        extend_sequences(w, prefix, out);
      }
      prefix.pop_back();
    }
  }
}

}  // namespace

std::vector<OverwriteSequence> overwrite_sequences(const Word& w) {
  std::vector<OverwriteSequence> out;
  OverwriteSequence prefix;
  extend_sequences(w, prefix, out);
  return out;
}

void validate_overwrite(const Word& w, const OverwriteSequence& b) {
  const int n = w.size();
  if (b.empty() || b.back().first != n + 1) throw InvalidArgument("overwriting sequence must end at position n+1");
  int last_b = 1;
  int last_t = 0;
  for (const auto& [pos, type] : b) {
    if (pos <= last_b || pos > n + 1) throw InvalidArgument("overwriting positions must increase from 2 to n+1");
    if (type <= last_t || type > w.alphabet()) throw InvalidArgument("overwriting types must increase within 1..T");
    if (type >= letter_or_infinity(w, pos))
      throw InvalidArgument("type " + std::to_string(type) + " cannot overwrite letter at position " + std::to_string(pos));
    last_b = pos;
    last_t = type;
  }
}

Word apply_overwrite(const Word& w, const OverwriteSequence& b) {
  validate_overwrite(w, b);
  const int n = w.size();
  std::vector<int> letters(static_cast<std::size_t>(n));
  for (int i = 1; i < n; ++i) letters[static_cast<std::size_t>(i - 1)] = w[i + 1];
  for (const auto& [pos, type] : b) letters[static_cast<std::size_t>(pos - 2)] = type;
  return Word(std::move(letters), w.alphabet());
}

template <class S>
S overwrite_prob(const Word& w, const OverwriteSequence& b, const ParamSet<S>& p) {
  validate_overwrite(w, b);
  p.require_normalized("overwriting");
  S prob = ScalarTraits<S>::one();
  int prev_b = 1;
  int prev_t = 0;
  for (const auto& [pos, type] : b) {
    for (int l = prev_t + 1; l <= type - 1; ++l) prob *= ScalarTraits<S>::one() - p.y(stat_J(w, prev_b + 1, l));
    if (type != w.alphabet()) prob *= p.z(stat_J(w, pos, type));
    prev_b = pos;
    prev_t = type;
  }
  return prob;
}

template <class S>
ChainMatrix<S> build_chain(int n, int alphabet, const ParamSet<S>& p) {
  p.require_size(n + 1, "overwriting");
  p.require_normalized("overwriting");
  const auto words = enumerate_alphabet_words(n, alphabet);
  return build_matrix<S, Word>(words, [&](const Word& w) {
    std::vector<std::pair<Word, S>> out;
    for (const auto& b : overwrite_sequences(w)) out.emplace_back(apply_overwrite(w, b), overwrite_prob(w, b, p));
    return out;
  });
}

template <class S>
S last_site_marginal(int j, int n, int alphabet, const ParamSet<S>& p) {
  if (j < 1 || j > alphabet) throw InvalidArgument("last_site_marginal: type out of range");
  p.require_size(n + 1, "overwriting");
  p.require_normalized("overwriting");
  const S miss = ScalarTraits<S>::one() - p.z(1);
  if (j < alphabet) return p.z(1) * power(miss, j - 1);
  return power(miss, alphabet - 1);
}

template <class S>
S joint_last_two_marginal(int i, int j, int n, int alphabet, const ParamSet<S>& p) {
  if (n < 2) throw InvalidArgument("joint_last_two_marginal: needs n >= 2");
  if (i < 1 || i > alphabet || j < 1 || j > alphabet) throw InvalidArgument("joint_last_two_marginal: type out of range");
  p.require_size(n + 1, "overwriting");
  p.require_normalized("overwriting");
  const S one = ScalarTraits<S>::one();
  S base = power(S(one - p.z(1)), std::max(i, j) - 1) * power(S(one - p.y(2)), std::min(i, j) - 1);
  if (i < j && j < alphabet) return base * p.z(1) * p.y(2);
  if (j <= i && i < alphabet) return base * p.z(1) * p.z(1);
  if (i < j && j == alphabet) return base * p.y(2);
  if (j < i && i == alphabet) return base * p.z(1);
  return base;
}

// ---- Tableau --------------------------------------------------------------

Tableau::Tableau(int n, int alphabet) : n_(n), alphabet_(alphabet) {
  if (n < 1) throw InvalidArgument("tableau needs n >= 1");
  if (alphabet < 2) throw InvalidArgument("tableau needs T >= 2");
  cells_.assign(static_cast<std::size_t>(n * (n + 1) / 2), 0);
}

std::size_t Tableau::offset(int row, int col) const {
  if (row < 1 || row > n_ || col < 1 || col > row_length(row))
    throw InvalidArgument("tableau cell (" + std::to_string(row) + "," + std::to_string(col) + ") out of shape");
  return static_cast<std::size_t>((n_ - row) * (n_ - row + 1) / 2 + col - 1);
}

int Tableau::at(int row, int col) const { return cells_[offset(row, col)]; }

void Tableau::set(int row, int col, int entry) {
  if (entry < 0 || entry >= alphabet_) throw InvalidArgument("tableau entry " + std::to_string(entry) + " out of range");
  cells_[offset(row, col)] = entry;
}

void Tableau::validate() const {
  for (int row = 1; row <= n_; ++row) {
    for (int col = 1; col <= row_length(row); ++col) {
      const int e = at(row, col);
      if (e == 0) continue;
      for (int c2 = col + 1; c2 <= row_length(row); ++c2) {
        const int f = at(row, c2);
        if (f != 0 && f <= e) throw InvalidArgument("tableau row " + std::to_string(row) + " is not increasing");
      }
      for (int r2 = row + 1; r2 <= column_height(col); ++r2) {
        const int f = at(r2, col);
        if (f != 0 && f <= e) throw InvalidArgument("tableau column " + std::to_string(col) + " is not increasing upward");
      }
    }
  }
}

std::string Tableau::to_string() const {
  const bool digits = alphabet_ - 1 <= 9;
  std::string out;
  for (int row = n_; row >= 1; --row) {
    if (row != n_) out += '/';
    for (int col = 1; col <= row_length(row); ++col) {
      if (!digits && col > 1) out += ',';
      out += std::to_string(at(row, col));
    }
  }
  return out;
}

Tableau Tableau::parse(std::string_view text, int alphabet) {
  std::vector<std::vector<int>> rows;
  while (true) {
    const auto slash = text.find('/');
    const std::string_view piece = text.substr(0, slash);
    std::vector<int> row;
    if (piece.find(',') != std::string_view::npos) {
      std::string_view rest = piece;
      while (true) {
        const auto comma = rest.find(',');
        const std::string_view item = rest.substr(0, comma);
        int value = 0;
        auto [ptr, ec] = std::from_chars(item.data(), item.data() + item.size(), value);
        if (ec != std::errc() || ptr != item.data() + item.size()) throw InvalidArgument("malformed tableau");
        row.push_back(value);
        if (comma == std::string_view::npos) break;
        rest.remove_prefix(comma + 1);
      }
    } else {
      for (char ch : piece) {
        if (ch < '0' || ch > '9') throw InvalidArgument("malformed tableau");
        row.push_back(ch - '0');
      }
    }
    rows.push_back(std::move(row));
    if (slash == std::string_view::npos) break;
    text.remove_prefix(slash + 1);
  }
  const int n = static_cast<int>(rows.size());
  Tableau v(n, alphabet);
  for (int k = 0; k < n; ++k) {
    const int row = n - k;
    if (static_cast<int>(rows[static_cast<std::size_t>(k)].size()) != v.row_length(row))
      throw InvalidArgument("tableau rows must have lengths 1, 2, ..., n from the top");
    for (int col = 1; col <= v.row_length(row); ++col) v.set(row, col, rows[static_cast<std::size_t>(k)][static_cast<std::size_t>(col - 1)]);
  }
  v.validate();
  return v;
}

std::string to_string(const Tableau& v) { return v.to_string(); }

namespace {

// Row, column of the i-th cell in serialization order.
std::vector<std::pair<int, int>> serialization_cells(int n) {
  std::vector<std::pair<int, int>> cells;
  for (int row = n; row >= 1; --row) {
    for (int col = 1; col <= n + 1 - row; ++col) cells.emplace_back(row, col);
  }
  return cells;
}

bool fits(const Tableau& v, int row, int col, int e) {
  if (e == 0) return true;
  for (int c2 = 1; c2 < col; ++c2) {
    const int f = v.at(row, c2);
    if (f != 0 && f >= e) return false;
  }
  for (int r2 = row + 1; r2 <= v.column_height(col); ++r2) {
    const int f = v.at(r2, col);
    if (f != 0 && f <= e) return false;
  }
  return true;
}

void fill_tableaux(Tableau& v, const std::vector<std::pair<int, int>>& cells, std::size_t next, std::vector<Tableau>& out) {
  if (next == cells.size()) {
    out.push_back(v);
    return;
  }
  const auto [row, col] = cells[next];
  for (int e = 0; e < v.alphabet(); ++e) {
    if (!fits(v, row, col, e)) continue;
    v.set(row, col, e);
    fill_tableaux(v, cells, next + 1, out);
  }
  v.set(row, col, 0);
}

// Some entry in 1..i sits in the row at column from_col or further right.
bool row_blocks(const Tableau& v, int row, int from_col, int i) {
  for (int col = from_col; col <= v.row_length(row); ++col) {
    const int e = v.at(row, col);
    if (e != 0 && e <= i) return true;
  }
  return false;
}

// Some entry in 1..bound sits strictly above the row in column col.
bool column_blocks_above(const Tableau& v, int row, int col, int bound) {
  for (int r2 = row + 1; r2 <= v.column_height(col); ++r2) {
    const int e = v.at(r2, col);
    if (e != 0 && e <= bound) return true;
  }
  return false;
}

// Rows of column col available for entry i, listed from the top.
std::vector<int> available_rows(const Tableau& v, int col, int i) {
  std::vector<int> rows;
  for (int row = v.column_height(col); row >= 1; --row) {
    if (!row_blocks(v, row, col, i) && !column_blocks_above(v, row, col, i - 1)) rows.push_back(row);
  }
  return rows;
}

}  // namespace

std::vector<Tableau> enumerate_tableaux(int n, int alphabet) {
  Tableau v(n, alphabet);
  std::vector<Tableau> out;
  fill_tableaux(v, serialization_cells(n), 0, out);
  return out;
}

template <class S>
S tableau_contribution(const Tableau& v, int i, int k, const ParamSet<S>& p) {
  if (i < 1 || i >= v.alphabet()) throw InvalidArgument("tableau_contribution: type out of range");
  if (k < 1 || k > v.n()) throw InvalidArgument("tableau_contribution: column out of range");
  const int height = v.column_height(k);
  for (int row = 1; row <= height; ++row) {
    if (v.at(row, k) != i) continue;
    int free_above = 0;
    for (int r2 = row + 1; r2 <= height; ++r2) free_above += row_blocks(v, r2, k + 1, i) ? 0 : 1;
    return p.z(1 + free_above);
  }
  int admissible = 0;
  for (int row = 1; row <= height; ++row) {
    if (!row_blocks(v, row, k, i) && !column_blocks_above(v, row, k, i)) ++admissible;
  }
  return ScalarTraits<S>::one() - p.y(admissible);
}

template <class S>
S tableau_stationary(const Tableau& v, const ParamSet<S>& p) {
  p.require_size(v.n() + 1, "overwriting");
  p.require_normalized("overwriting");
  S prob = ScalarTraits<S>::one();
  for (int k = 1; k <= v.n(); ++k) {
    for (int i = 1; i < v.alphabet(); ++i) prob *= tableau_contribution(v, i, k, p);
  }
  return prob;
}

Tableau shift_tableau(const Tableau& v) {
  Tableau w(v.n(), v.alphabet());
  for (int row = 1; row < v.n(); ++row) {
    for (int col = 2; col <= w.row_length(row); ++col) w.set(row, col, v.at(row + 1, col - 1));
  }
  return w;
}

namespace {

template <class S>
void insert_types(Tableau& w, int i, const S& prob, const ParamSet<S>& p, std::vector<std::pair<Tableau, S>>& out) {
  if (i == w.alphabet()) {
    out.emplace_back(w, prob);
    return;
  }
  const auto rows = available_rows(w, 1, i);
  for (std::size_t k = 0; k < rows.size(); ++k) {
    w.set(rows[k], 1, i);
    insert_types(w, i + 1, S(prob * p.z(static_cast<int>(k) + 1)), p, out);
    w.set(rows[k], 1, 0);
  }
  insert_types(w, i + 1, S(prob * (ScalarTraits<S>::one() - p.y(static_cast<int>(rows.size())))), p, out);
}

}  // namespace

template <class S>
std::vector<std::pair<Tableau, S>> tableau_insertions(const Tableau& v, const ParamSet<S>& p) {
  p.require_size(v.n() + 1, "overwriting");
  Tableau w = shift_tableau(v);
  std::vector<std::pair<Tableau, S>> out;
  insert_types(w, 1, ScalarTraits<S>::one(), p, out);
  return out;
}

template <class S>
S tableau_step_prob(const Tableau& v, const Tableau& w, const ParamSet<S>& p) {
  if (v.n() != w.n() || v.alphabet() != w.alphabet()) throw InvalidArgument("tableau_step_prob: shape mismatch");
  const Tableau shifted = shift_tableau(v);
  for (int row = 1; row <= w.n(); ++row) {
    for (int col = 2; col <= w.row_length(row); ++col) {
      if (w.at(row, col) != shifted.at(row, col)) return ScalarTraits<S>::zero();
    }
  }
  S prob = ScalarTraits<S>::one();
  for (int i = 1; i < w.alphabet(); ++i) prob *= tableau_contribution(w, i, 1, p);
  return prob;
}

template <class S>
ChainMatrix<S> build_tableau_chain(int n, int alphabet, const ParamSet<S>& p) {
  p.require_size(n + 1, "overwriting");
  p.require_normalized("overwriting");
  const auto tableaux = enumerate_tableaux(n, alphabet);
  return build_matrix<S, Tableau>(tableaux, [&](const Tableau& v) {
    std::vector<std::pair<Tableau, S>> out;
    for (auto& [w, process_prob] : tableau_insertions(v, p)) {
      S prob = tableau_step_prob(v, w, p);
      out.emplace_back(std::move(w), std::move(prob));
    }
    return out;
  });
}

Word lump_tableau(const Tableau& v) {
  std::vector<int> letters(static_cast<std::size_t>(v.n()), v.alphabet());
  for (int row = 1; row <= v.n(); ++row) {
    for (int col = 1; col <= v.row_length(row); ++col) {
      if (v.at(row, col) != 0) {
        letters[static_cast<std::size_t>(row - 1)] = v.at(row, col);
        break;
      }
    }
  }
  return Word(std::move(letters), v.alphabet());
}

LumpingMap tableau_lumping(const std::vector<Tableau>& tableaux, const std::vector<Word>& words) {
  return make_lumping<Tableau, Word>(tableaux, words, lump_tableau);
}

template <class S>
S overwriting_stationary(const Word& w, const ParamSet<S>& p) {
  p.require_size(w.size() + 1, "overwriting");
  p.require_normalized("overwriting");
  S total = ScalarTraits<S>::zero();
  for (const auto& v : enumerate_tableaux(w.size(), w.alphabet())) {
    if (lump_tableau(v) == w) total += tableau_stationary(v, p);
  }
  return total;
}

template <class S>
Distribution<S> stationary_formula(int n, int alphabet, const ParamSet<S>& p) {
  p.require_size(n + 1, "overwriting");
  p.require_normalized("overwriting");
  const auto words = enumerate_alphabet_words(n, alphabet);
  std::map<Word, std::size_t> index;
  for (std::size_t i = 0; i < words.size(); ++i) index.emplace(words[i], i);
  Distribution<S> d;
  d.weights.assign(words.size(), ScalarTraits<S>::zero());
  for (const auto& v : enumerate_tableaux(n, alphabet)) d.weights[index.at(lump_tableau(v))] += tableau_stationary(v, p);
  return d;
}

// ---- MatrixState ----------------------------------------------------------

MatrixState::MatrixState(int n, int alphabet, std::vector<int> grid) : n_(n), alphabet_(alphabet), grid_(std::move(grid)) {
  if (n < 1 || alphabet < 2) throw InvalidArgument("matrix state needs n >= 1 and T >= 2");
  if (grid_.size() != static_cast<std::size_t>(n * (alphabet - 1)))
    throw InvalidArgument("matrix state must have (T-1) x n entries");
  for (int e : grid_) {
    if (e < 1 || e > n + 1) throw InvalidArgument("matrix entry " + std::to_string(e) + " outside 1..n+1");
  }
}

int MatrixState::at(int i, int k) const {
  if (i < 1 || i > rows() || k < 1 || k > n_) throw InvalidArgument("matrix index out of range");
  return grid_[static_cast<std::size_t>((i - 1) * n_ + (k - 1))];
}

std::string MatrixState::to_string() const {
  const bool digits = n_ + 1 <= 9;
  std::string out;
  for (int i = 1; i <= rows(); ++i) {
    if (i > 1) out += '/';
    for (int k = 1; k <= n_; ++k) {
      if (!digits && k > 1) out += ',';
      out += std::to_string(at(i, k));
    }
  }
  return out;
}

std::string to_string(const MatrixState& m) { return m.to_string(); }

std::size_t matrix_state_count(int n, int alphabet, std::size_t cap) {
  if (n < 1 || alphabet < 2) throw InvalidArgument("matrix chain needs n >= 1 and T >= 2");
  std::size_t count = 1;
  for (int e = 0; e < n * (alphabet - 1); ++e) {
    count *= static_cast<std::size_t>(n + 1);
    if (count > cap)
      throw SizeCapExceeded("matrix chain has more than " + std::to_string(cap) + " states at n=" + std::to_string(n) +
                            ", T=" + std::to_string(alphabet));
  }
  return count;
}

std::vector<MatrixState> enumerate_matrices(int n, int alphabet, std::size_t cap) {
  const std::size_t count = matrix_state_count(n, alphabet, cap);
  std::vector<MatrixState> out;
  out.reserve(count);
  std::vector<int> grid(static_cast<std::size_t>(n * (alphabet - 1)), 1);
  while (true) {
    out.emplace_back(n, alphabet, grid);
    std::size_t pos = grid.size();
    while (pos > 0 && grid[pos - 1] == n + 1) grid[--pos] = 1;
    if (pos == 0) break;
    ++grid[pos - 1];
  }
  return out;
}

MatrixState matrix_step(const MatrixState& m, const std::vector<int>& newcol) {
  if (static_cast<int>(newcol.size()) != m.rows()) throw InvalidArgument("new column must have T-1 entries");
  std::vector<int> grid(m.grid().size());
  for (int i = 1; i <= m.rows(); ++i) {
    grid[static_cast<std::size_t>((i - 1) * m.n())] = newcol[static_cast<std::size_t>(i - 1)];
    for (int k = 2; k <= m.n(); ++k) grid[static_cast<std::size_t>((i - 1) * m.n() + k - 1)] = m.at(i, k - 1);
  }
  return MatrixState(m.n(), m.alphabet(), std::move(grid));
}

template <class S>
S matrix_stationary_weight(const MatrixState& m, const ParamSet<S>& p) {
  S prob = ScalarTraits<S>::one();
  for (int e : m.grid()) prob *= p.z(e);
  return prob;
}

template <class S>
ChainMatrix<S> build_matrix_chain(int n, int alphabet, const ParamSet<S>& p, std::size_t cap) {
  p.require_size(n + 1, "overwriting");
  p.require_normalized("overwriting");
  const auto states = enumerate_matrices(n, alphabet, cap);
  const int rows = alphabet - 1;
  return build_matrix<S, MatrixState>(states, [&](const MatrixState& m) {
    std::vector<std::pair<MatrixState, S>> out;
    std::vector<int> col(static_cast<std::size_t>(rows), 1);
    while (true) {
      S prob = ScalarTraits<S>::one();
      for (int e : col) prob *= p.z(e);
      out.emplace_back(matrix_step(m, col), std::move(prob));
      std::size_t pos = col.size();
      while (pos > 0 && col[pos - 1] == n + 1) col[--pos] = 1;
      if (pos == 0) break;
      ++col[pos - 1];
    }
    return out;
  });
}

Tableau lump_matrix(const MatrixState& m) {
  Tableau v(m.n(), m.alphabet());
  for (int k = m.n(); k >= 1; --k) {
    for (int i = 1; i < m.alphabet(); ++i) {
      const auto rows = available_rows(v, k, i);
      const int choice = m.at(i, k);
      if (choice <= static_cast<int>(rows.size())) v.set(rows[static_cast<std::size_t>(choice - 1)], k, i);
    }
  }
  return v;
}

LumpingMap matrix_lumping(const std::vector<MatrixState>& matrices, const std::vector<Tableau>& tableaux) {
  return make_lumping<MatrixState, Tableau>(matrices, tableaux, lump_matrix);
}

#define JUGGLING_INSTANTIATE(S)                                                                  \
  template S overwrite_prob(const Word&, const OverwriteSequence&, const ParamSet<S>&);          \
  template ChainMatrix<S> build_chain(int, int, const ParamSet<S>&);                             \
  template S last_site_marginal(int, int, int, const ParamSet<S>&);                              \
  template S joint_last_two_marginal(int, int, int, int, const ParamSet<S>&);                    \
  template S tableau_contribution(const Tableau&, int, int, const ParamSet<S>&);                 \
  template S tableau_stationary(const Tableau&, const ParamSet<S>&);                             \
  template std::vector<std::pair<Tableau, S>> tableau_insertions(const Tableau&, const ParamSet<S>&); \
  template S tableau_step_prob(const Tableau&, const Tableau&, const ParamSet<S>&);              \
  template ChainMatrix<S> build_tableau_chain(int, int, const ParamSet<S>&);                     \
  template S overwriting_stationary(const Word&, const ParamSet<S>&);                            \
  template Distribution<S> stationary_formula(int, int, const ParamSet<S>&);                     \
  template S matrix_stationary_weight(const MatrixState&, const ParamSet<S>&);                   \
  template ChainMatrix<S> build_matrix_chain(int, int, const ParamSet<S>&, std::size_t);

JUGGLING_INSTANTIATE(Rational)
JUGGLING_INSTANTIATE(double)

#undef JUGGLING_INSTANTIATE

}  // namespace juggling::overwriting
