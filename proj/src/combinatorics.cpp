#include "juggling/combinatorics.hpp"

#include <algorithm>
#include <charconv>
#include <numeric>

namespace juggling {

Word::Word(std::vector<int> letters, int alphabet) : letters_(std::move(letters)), alphabet_(alphabet) {
  if (alphabet_ < 1) throw InvalidArgument("alphabet size must be positive");
  for (int letter : letters_) {
    if (letter < 1 || letter > alphabet_)
      throw InvalidArgument("letter " + std::to_string(letter) + " outside 1.." + std::to_string(alphabet_));
  }
}

Word Word::parse(std::string_view text, int alphabet) {
  std::vector<int> letters;
  if (text.find(',') != std::string_view::npos) {
    while (!text.empty()) {
      const auto comma = text.find(',');
      const std::string_view piece = text.substr(0, comma);
      int value = 0;
      auto [ptr, ec] = std::from_chars(piece.data(), piece.data() + piece.size(), value);
      if (ec != std::errc() || ptr != piece.data() + piece.size())
        throw InvalidArgument("malformed word: '" + std::string(text) + "'");
      letters.push_back(value);
      if (comma == std::string_view::npos) break;
      text.remove_prefix(comma + 1);
    }
  } else {
    for (char ch : text) {
      if (ch < '0' || ch > '9') throw InvalidArgument("malformed word: '" + std::string(text) + "'");
      letters.push_back(ch - '0');
    }
  }
  return Word(std::move(letters), alphabet);
}

std::string Word::to_string() const {
  std::string out;
  const bool digits = alphabet_ <= 9;
  for (std::size_t i = 0; i < letters_.size(); ++i) {
    if (!digits && i > 0) out += ',';
    out += std::to_string(letters_[i]);
  }
  return out;
}

std::vector<int> Word::letter_counts() const {
  std::vector<int> counts(static_cast<std::size_t>(alphabet_), 0);
  for (int letter : letters_) ++counts[static_cast<std::size_t>(letter - 1)];
  return counts;
}

std::string to_string(const Word& w) { return w.to_string(); }

TypeCounts::TypeCounts(std::vector<int> counts) : counts_(std::move(counts)) {
  if (counts_.empty()) throw InvalidArgument("type counts must list at least one species");
  for (int c : counts_) {
    if (c < 1) throw InvalidArgument("type counts must be positive");
    total_ += c;
  }
}

std::vector<Word> enumerate_multiset_words(const TypeCounts& counts) {
  std::vector<int> letters;
  letters.reserve(static_cast<std::size_t>(counts.total()));
  for (int type = 1; type <= counts.species(); ++type) letters.insert(letters.end(), counts[type], type);
  std::vector<Word> words;
  do {
    words.emplace_back(letters, counts.species());
  } while (std::next_permutation(letters.begin(), letters.end()));
  return words;
}

std::vector<Word> enumerate_alphabet_words(int n, int alphabet) {
  if (n < 1 || alphabet < 1) throw InvalidArgument("enumerate_alphabet_words: need n >= 1 and T >= 1");
  std::vector<Word> words;
  std::vector<int> letters(static_cast<std::size_t>(n), 1);
  while (true) {
    words.emplace_back(letters, alphabet);
    std::size_t pos = 0;
    while (pos < letters.size() && letters[pos] == alphabet) letters[pos++] = 1;
    if (pos == letters.size()) break;
    ++letters[pos];
  }
  return words;
}

int stat_J(const Word& w, int m, int t) {
  const int n = w.size();
  if (m < 1 || m > n + 1) throw InvalidArgument("stat_J: position " + std::to_string(m) + " out of range");
  if (t < 1 || t > w.alphabet()) throw InvalidArgument("stat_J: type " + std::to_string(t) + " out of range");
  int count = 1;
  for (int l = m; l <= n; ++l) count += w[l] > t ? 1 : 0;
  return count;
}

int stat_E(const Word& w, int i) {
  if (i < 1 || i > w.size()) throw InvalidArgument("stat_E: position " + std::to_string(i) + " out of range");
  return stat_J(w, i, w[i]);
}

std::uint64_t binomial(int n, int k) {
  if (k < 0 || k > n) return 0;
  k = std::min(k, n - k);
  std::uint64_t result = 1;
  for (int i = 1; i <= k; ++i) result = result * static_cast<std::uint64_t>(n - k + i) / static_cast<std::uint64_t>(i);
  return result;
}

std::uint64_t multinomial(std::span<const int> parts) {
  std::uint64_t result = 1;
  int running = 0;
  for (int p : parts) {
    running += p;
    result *= binomial(running, p);
  }
  return result;
}

template <class S>
ParamSet<S>::ParamSet(std::vector<S> z, std::vector<S> activities) : z_(std::move(z)), c_(std::move(activities)) {
  if (z_.empty()) throw InvalidArgument("parameter set needs at least one z value");
  y_.reserve(z_.size() + 1);
  for (S& value : z_) {
    canonicalize(value);
    if (value < 0) throw InvalidArgument("z values must be nonnegative");
    y_.push_back(y_.back() + value);
  }
  for (S& value : c_) {
    canonicalize(value);
    if (value < 0) throw InvalidArgument("activities must be nonnegative");
  }
}

template <class S>
const S& ParamSet<S>::z(int i) const {
  if (i < 1 || i > size()) throw InvalidArgument("z index " + std::to_string(i) + " out of range 1.." + std::to_string(size()));
  return z_[static_cast<std::size_t>(i - 1)];
}

template <class S>
const S& ParamSet<S>::y(int i) const {
  if (i < 0 || i > size()) throw InvalidArgument("y index " + std::to_string(i) + " out of range 0.." + std::to_string(size()));
  return y_[static_cast<std::size_t>(i)];
}

template <class S>
const S& ParamSet<S>::c(int t) const {
  if (t < 1 || t > activity_count())
    throw InvalidArgument("activity index " + std::to_string(t) + " out of range 1.." + std::to_string(activity_count()));
  return c_[static_cast<std::size_t>(t - 1)];
}

template <class S>
bool ParamSet<S>::normalized() const {
  return scalar_equal(total(), ScalarTraits<S>::one());
}

template <class S>
void ParamSet<S>::require_size(int expected, std::string_view model) const {
  if (size() != expected) {
    throw InvalidArgument(std::string(model) + ": expected exactly " + std::to_string(expected) + " z values (n+1), got " +
                          std::to_string(size()));
  }
}

template <class S>
void ParamSet<S>::require_normalized(std::string_view model) const {
  if (!normalized()) {
    throw NotNormalized(std::string(model) + ": z values must sum to 1, got " + scalar_to_string(total()));
  }
}

template <class S>
void ParamSet<S>::require_positive_activities(int alphabet, std::string_view model) const {
  if (activity_count() != alphabet) {
    throw InvalidArgument(std::string(model) + ": expected " + std::to_string(alphabet) + " activities, got " +
                          std::to_string(activity_count()));
  }
  for (const S& value : c_) {
    if (!(value > 0)) throw InvalidArgument(std::string(model) + ": activities must be strictly positive");
  }
}

template <class S>
ParamSet<S> ParamSet<S>::rescaled() const {
  if (scalar_is_zero(total())) throw DegenerateParams("cannot rescale z values summing to zero");
  std::vector<S> z = z_;
  for (S& value : z) value /= total();
  return ParamSet(std::move(z), c_);
}

template class ParamSet<Rational>;
template class ParamSet<double>;

}  // namespace juggling
