#pragma once

// Words, type counts, parameter sets and the small combinatorial toolbox
// shared by every juggling model. Positions are 1-based throughout so that
// w[1] is the ball about to be caught and w[n] the topmost site.

#include <compare>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "juggling/errors.hpp"
#include "juggling/scalar.hpp"

namespace juggling {

class Word {
 public:
  Word() = default;
  Word(std::vector<int> letters, int alphabet);

  // Digits ("132132") when the alphabet fits in one digit, otherwise a
  // comma-separated list ("1,10,3").
  static Word parse(std::string_view text, int alphabet);

  int size() const { return static_cast<int>(letters_.size()); }
  int alphabet() const { return alphabet_; }
  // 1-based access, 1 <= pos <= size().
  int operator[](int pos) const { return letters_[static_cast<std::size_t>(pos - 1)]; }
  const std::vector<int>& letters() const { return letters_; }

  std::string to_string() const;

  // Number of occurrences of each letter 1..alphabet.
  std::vector<int> letter_counts() const;

  auto operator<=>(const Word&) const = default;

 private:
  std::vector<int> letters_;
  int alphabet_ = 1;
};

std::string to_string(const Word& w);

// (n_1, ..., n_T), all positive.
class TypeCounts {
 public:
  explicit TypeCounts(std::vector<int> counts);

  int species() const { return static_cast<int>(counts_.size()); }
  int total() const { return total_; }
  int operator[](int type) const { return counts_[static_cast<std::size_t>(type - 1)]; }
  const std::vector<int>& counts() const { return counts_; }

 private:
  std::vector<int> counts_;
  int total_ = 0;
};

// All words with n_i copies of letter i, in lexicographic order.
std::vector<Word> enumerate_multiset_words(const TypeCounts& counts);

// All T^n words of length n; position 1 varies fastest
// (n=2, T=3: 11, 21, 31, 12, 22, 32, 13, 23, 33).
std::vector<Word> enumerate_alphabet_words(int n, int alphabet);

// 1 + #{l : m <= l <= n, w_l > t}, for 1 <= m <= n+1 and 1 <= t <= T.
int stat_J(const Word& w, int m, int t);

// 1 + #{j : i <= j <= n, w_j > w_i}.
int stat_E(const Word& w, int i);

std::uint64_t multinomial(std::span<const int> parts);
std::uint64_t binomial(int n, int k);

// h_degree(values) by the one-variable-at-a-time recurrence.
template <class S>
S complete_homogeneous(int degree, std::span<const S> values) {
  if (degree < 0) throw InvalidArgument("complete_homogeneous: negative degree");
  std::vector<S> h(static_cast<std::size_t>(degree) + 1, ScalarTraits<S>::zero());
  h[0] = ScalarTraits<S>::one();
  for (const S& v : values) {
    for (int d = 1; d <= degree; ++d) h[d] += v * h[d - 1];
  }
  return h[static_cast<std::size_t>(degree)];
}

// x (x-1) ... (x-k+1); 1 when k == 0.
template <class S>
S falling_factorial(const S& x, int k) {
  if (k < 0) throw InvalidArgument("falling_factorial: negative order");
  S result = S(1);
  for (int i = 0; i < k; ++i) result *= x - S(i);
  return result;
}

// Throw weights z_1..z_m with prefix sums y_0 = 0, y_i = z_1 + ... + z_i,
// plus optional activities c_1..c_T.
template <class S>
class ParamSet {
 public:
  ParamSet() = default;
  explicit ParamSet(std::vector<S> z, std::vector<S> activities = {});

  int size() const { return static_cast<int>(z_.size()); }
  // 1 <= i <= size().
  const S& z(int i) const;
  // 0 <= i <= size().
  const S& y(int i) const;
  bool has_activities() const { return !c_.empty(); }
  int activity_count() const { return static_cast<int>(c_.size()); }
  const S& c(int t) const;

  const std::vector<S>& z_values() const { return z_; }
  const std::vector<S>& activities() const { return c_; }

  // z_1 + ... + z_m == 1 (exactly, or within tolerance for doubles).
  bool normalized() const;
  const S& total() const { return y_.back(); }

  void require_size(int expected, std::string_view model) const;
  void require_normalized(std::string_view model) const;
  void require_positive_activities(int alphabet, std::string_view model) const;

  // Copy with z rescaled to sum to 1; the original sum is the adjustment.
  ParamSet rescaled() const;

 private:
  std::vector<S> z_;
  std::vector<S> y_{S(0)};
  std::vector<S> c_;
};

extern template class ParamSet<Rational>;
extern template class ParamSet<double>;

}  // namespace juggling
