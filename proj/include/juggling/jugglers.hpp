#pragma once

// Several jugglers: balls in an r x c array fall one row per step; the
// balls leaving the bottom row are reinjected uniformly into free cells.
// The chain has no parameters.

#include <compare>
#include <cstdint>
#include <string>
#include <vector>

#include "juggling/chain.hpp"

namespace juggling::jugglers {

// Rows numbered 1 (top) to r (bottom).
class BallArray {
 public:
  BallArray(int rows, int cols, std::vector<bool> occupied);
  static BallArray empty(int rows, int cols);

  int rows() const { return rows_; }
  int cols() const { return cols_; }
  bool at(int row, int col) const;
  void set(int row, int col, bool ball);
  int balls() const;
  // A_i.
  int row_count(int row) const;
  // Occupancy row-major from the top.
  const std::vector<bool>& cells() const { return occupied_; }

  // Rows top to bottom separated by '/', 1 = ball, 0 = empty.
  std::string to_string() const;
  static BallArray parse(std::string_view text);

  auto operator<=>(const BallArray&) const = default;

 private:
  int rows_;
  int cols_;
  std::vector<bool> occupied_;
};

std::string to_string(const BallArray& a);

// All C(rc, l) arrays. Ordered by decreasing (A_r, A_{r-1}, ..., A_1),
// ties by decreasing occupancy bits read row-major from the top; on
// S_{2x2,2} this gives 00/11, 10/10, 10/01, 01/10, 01/01, 11/00.
std::vector<BallArray> enumerate_arrays(int rows, int cols, int balls);

// A^-: bottom row removed, everything one row down.
BallArray drop_row(const BallArray& a);

// Reinjections of the A_r bottom balls into the free cells of A^-.
std::vector<BallArray> successors(const BallArray& a);

template <class S>
S juggler_transition_prob(const BallArray& a, const BallArray& b);

// prod_i (c i - A_{<i})_{A_i}.
std::uint64_t juggler_stationary_weight(const BallArray& a);

// Injective placements of one cross per ball, strictly above the ball's
// row, in the (r+1) x c array with an extra top row.
std::uint64_t count_arc_enrichments(const BallArray& a);

template <class S>
ChainMatrix<S> build_chain(int rows, int cols, int balls);

template <class S>
Distribution<S> stationary_formula(int rows, int cols, int balls);

}  // namespace juggling::jugglers
