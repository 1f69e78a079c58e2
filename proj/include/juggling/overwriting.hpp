#pragma once

// Overwriting model: after the shift, balls of types 1, 2, ... are thrown
// in turn, each one overwriting a heavier ball further right, until one
// lands on the rightmost site (or a T is put there).

#include <compare>
#include <string>
#include <utility>
#include <vector>

#include "juggling/chain.hpp"
#include "juggling/combinatorics.hpp"

namespace juggling::overwriting {

// Pairs (b_j, t_j), 1 < b_1 < ... < b_k = n+1 and t_1 < ... < t_k <= T,
// with t_j < w_{b_j} (w_{n+1} counts as infinity).
using OverwriteSequence = std::vector<std::pair<int, int>>;

// Every overwriting sequence for w, lexicographic in the pairs.
std::vector<OverwriteSequence> overwrite_sequences(const Word& w);

void validate_overwrite(const Word& w, const OverwriteSequence& b);

// w^B: position b_j - 1 receives t_j, everything else shifts left.
Word apply_overwrite(const Word& w, const OverwriteSequence& b);

// Uses b_0 = 1, t_0 = 0. Needs z_1 + ... + z_{n+1} = 1.
template <class S>
S overwrite_prob(const Word& w, const OverwriteSequence& b, const ParamSet<S>& p);

template <class S>
ChainMatrix<S> build_chain(int n, int alphabet, const ParamSet<S>& p);

// P(w_n = j).
template <class S>
S last_site_marginal(int j, int n, int alphabet, const ParamSet<S>& p);

// P(w_{n-1} = i, w_n = j).
template <class S>
S joint_last_two_marginal(int i, int j, int n, int alphabet, const ParamSet<S>& p);

// ---- staircase tableaux --------------------------------------------------

// Staircase of shape (n, n-1, ..., 1), longest row at the bottom. Rows are
// numbered from the bottom (row r has n+1-r cells), columns from the left
// (column k has n+1-k cells). Entries lie in 1..T-1, 0 marks an empty cell.
class Tableau {
 public:
  Tableau(int n, int alphabet);

  int n() const { return n_; }
  int alphabet() const { return alphabet_; }
  int at(int row, int col) const;
  void set(int row, int col, int entry);
  int column_height(int col) const { return n_ + 1 - col; }
  int row_length(int row) const { return n_ + 1 - row; }

  // Rows strictly increase to the right, columns strictly increase upward;
  // empty cells are ignored. Throws InvalidArgument otherwise.
  void validate() const;

  // Rows top to bottom separated by '/', cells left to right, 0 = empty.
  std::string to_string() const;
  static Tableau parse(std::string_view text, int alphabet);

  // Cells in serialization order.
  const std::vector<int>& cells() const { return cells_; }

  auto operator<=>(const Tableau&) const = default;

 private:
  std::size_t offset(int row, int col) const;

  int n_;
  int alphabet_;
  std::vector<int> cells_;
};

std::string to_string(const Tableau& v);

// All valid tableaux, in lexicographic order of the serialization.
std::vector<Tableau> enumerate_tableaux(int n, int alphabet);

// C_V(i, k) with y_0 = 0.
template <class S>
S tableau_contribution(const Tableau& v, int i, int k, const ParamSet<S>& p);

// prod_k prod_i C_V(i, k).
template <class S>
S tableau_stationary(const Tableau& v, const ParamSet<S>& p);

// V with its bottom row removed and everything moved down and right; the
// first column is left empty.
Tableau shift_tableau(const Tableau& v);

// Successors produced by the insertion process, with the probability of
// the choices made along the way.
template <class S>
std::vector<std::pair<Tableau, S>> tableau_insertions(const Tableau& v, const ParamSet<S>& p);

// 0 unless W agrees with the shifted V outside column 1; otherwise
// prod_i C_W(i, 1).
template <class S>
S tableau_step_prob(const Tableau& v, const Tableau& w, const ParamSet<S>& p);

template <class S>
ChainMatrix<S> build_tableau_chain(int n, int alphabet, const ParamSet<S>& p);

// Letter k is the leftmost entry of row k (counted from the bottom), or T
// when that row is empty.
Word lump_tableau(const Tableau& v);

LumpingMap tableau_lumping(const std::vector<Tableau>& tableaux, const std::vector<Word>& words);

template <class S>
S overwriting_stationary(const Word& w, const ParamSet<S>& p);

// The tableau sum for every word, in enumerate_alphabet_words order.
template <class S>
Distribution<S> stationary_formula(int n, int alphabet, const ParamSet<S>& p);

// ---- matrix chain --------------------------------------------------------

inline constexpr std::size_t kMatrixStateCap = 100000;

// (T-1) x n grid with entries in 1..n+1.
class MatrixState {
 public:
  MatrixState(int n, int alphabet, std::vector<int> grid);

  int n() const { return n_; }
  int alphabet() const { return alphabet_; }
  int rows() const { return alphabet_ - 1; }
  // 1-based row i (type) and column k.
  int at(int i, int k) const;
  const std::vector<int>& grid() const { return grid_; }

  // Rows separated by '/'.
  std::string to_string() const;

  auto operator<=>(const MatrixState&) const = default;

 private:
  int n_;
  int alphabet_;
  std::vector<int> grid_;
};

std::string to_string(const MatrixState& m);

// Number of matrix states, (n+1)^{n(T-1)}; throws SizeCapExceeded above cap.
std::size_t matrix_state_count(int n, int alphabet, std::size_t cap = kMatrixStateCap);

// All states, row-major lexicographic. Throws SizeCapExceeded above cap.
std::vector<MatrixState> enumerate_matrices(int n, int alphabet, std::size_t cap = kMatrixStateCap);

// Columns move right, the last one is dropped, newcol becomes column 1.
MatrixState matrix_step(const MatrixState& m, const std::vector<int>& newcol);

template <class S>
S matrix_stationary_weight(const MatrixState& m, const ParamSet<S>& p);

template <class S>
ChainMatrix<S> build_matrix_chain(int n, int alphabet, const ParamSet<S>& p, std::size_t cap = kMatrixStateCap);

// A(M): columns right to left, types 1..T-1 in order, entry i placed at
// the M_{i,k}-th available cell of column k counted from the top.
Tableau lump_matrix(const MatrixState& m);

LumpingMap matrix_lumping(const std::vector<MatrixState>& matrices, const std::vector<Tableau>& tableaux);

}  // namespace juggling::overwriting
