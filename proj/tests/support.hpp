#pragma once

// Shared helpers for the test programs: random parameters and small
// independent reimplementations used as oracles.

#include <cstdint>
#include <random>
#include <stdexcept>
#include <vector>

#include "juggling/chain.hpp"
#include "juggling/combinatorics.hpp"
#include "juggling/scalar.hpp"

namespace juggling::oracle {

// Strictly positive rationals p/q with 1 <= p, q <= 12.
inline Rational random_positive(std::mt19937_64& rng) {
  std::uniform_int_distribution<int> d(1, 12);
  Rational r(d(rng), d(rng));
  r.canonicalize();
  return r;
}

inline std::vector<Rational> random_z(std::mt19937_64& rng, int size) {
  std::vector<Rational> z;
  for (int i = 0; i < size; ++i) z.push_back(random_positive(rng));
  return z;
}

inline std::vector<Rational> random_normalized_z(std::mt19937_64& rng, int size) {
  auto z = random_z(rng, size);
  Rational sum = 0;
  for (const auto& v : z) sum += v;
  for (auto& v : z) v /= sum;
  return z;
}

inline std::vector<Rational> uniform_z(int size) { return std::vector<Rational>(size, Rational(1, size)); }

// 1-based accessors over a plain vector, independent of ParamSet.
struct Z {
  std::vector<Rational> z;
  Rational operator()(int i) const { return z[static_cast<std::size_t>(i - 1)]; }
  Rational y(int i) const {
    Rational s = 0;
    for (int k = 1; k <= i; ++k) s += (*this)(k);
    return s;
  }
};

// E_w(i) = 1 + #{j >= i : w_j > w_i}, counted directly.
inline int count_E(const std::vector<int>& w, std::size_t i) {
  int e = 1;
  for (std::size_t j = i; j < w.size(); ++j) e += w[j] > w[i] ? 1 : 0;
  return e;
}

// h_d over `values` by summing every weakly increasing index tuple.
inline Rational brute_h(int degree, const std::vector<Rational>& values, std::size_t from = 0) {
  if (degree == 0) return 1;
  Rational sum = 0;
  for (std::size_t k = from; k < values.size(); ++k) sum += values[k] * brute_h(degree - 1, values, k);
  return sum;
}

// Dense Gauss-Jordan solve of pi P = pi, sum pi = 1.
inline std::vector<Rational> dense_stationary(const ChainMatrix<Rational>& P) {
  const std::size_t n = P.size();
  const auto D = P.dense();
  // Unknowns pi_0..pi_{n-1}; equations: columns of (P^T - I), last one replaced by normalization.
  std::vector<std::vector<Rational>> A(n, std::vector<Rational>(n + 1, 0));
  for (std::size_t eq = 0; eq + 1 < n; ++eq) {
    for (std::size_t i = 0; i < n; ++i) A[eq][i] = D[i][eq];
    A[eq][eq] -= 1;
  }
  for (std::size_t i = 0; i < n; ++i) A[n - 1][i] = 1;
  A[n - 1][n] = 1;
  for (std::size_t col = 0; col < n; ++col) {
    std::size_t pivot = col;
    while (pivot < n && A[pivot][col] == 0) ++pivot;
    if (pivot == n) throw std::runtime_error("dense_stationary: singular system");
    std::swap(A[pivot], A[col]);
    const Rational inv = 1 / A[col][col];
    for (auto& v : A[col]) v *= inv;
    for (std::size_t r = 0; r < n; ++r) {
      if (r == col || A[r][col] == 0) continue;
      const Rational f = A[r][col];
      for (std::size_t c = col; c <= n; ++c) A[r][c] -= f * A[col][c];
    }
  }
  std::vector<Rational> pi(n);
  for (std::size_t i = 0; i < n; ++i) pi[i] = A[i][n];
  return pi;
}

inline std::vector<Rational> normalize(std::vector<Rational> v) {
  Rational sum = 0;
  for (const auto& x : v) sum += x;
  for (auto& x : v) x /= sum;
  return v;
}

// All positive compositions of every n in [1, max_n] with at most max_parts parts.
inline std::vector<std::vector<int>> positive_compositions(int max_n, int max_parts) {
  std::vector<std::vector<int>> out;
  std::vector<int> cur;
  auto rec = [&](auto&& self, int remaining) -> void {
    if (remaining == 0) {
      out.push_back(cur);
      return;
    }
    if (static_cast<int>(cur.size()) == max_parts) return;
    for (int part = 1; part <= remaining; ++part) {
      cur.push_back(part);
      self(self, remaining - part);
      cur.pop_back();
    }
  };
  for (int n = 1; n <= max_n; ++n) rec(rec, n);
  return out;
}

}  // namespace juggling::oracle
