#pragma once

#include <cstddef>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace stablefold {

enum class BraidErrc {
  EmptyWord,
  GeneratorOutOfRange,
  BadSyntax,
  InvalidStrandCount,
  NotCanonical,
};

const char* to_string(BraidErrc code) noexcept;

class BraidError : public std::runtime_error {
 public:
  BraidError(BraidErrc code, const std::string& message,
             std::optional<std::size_t> position = std::nullopt);

  BraidErrc code() const noexcept { return code_; }
  // Zero-based character offset into the source text, when the error has one.
  std::optional<std::size_t> position() const noexcept { return position_; }

 private:
  BraidErrc code_;
  std::optional<std::size_t> position_;
};

// One syllable sigma_generator^exponent.
struct Syllable {
  int generator = 1;
  int exponent = 1;

  bool operator==(const Syllable&) const = default;
};

struct BraidWord {
  int strands = 2;
  std::vector<Syllable> syllables;
  std::string raw_text;

  // raw_text is provenance only and does not take part in equality.
  bool operator==(const BraidWord& other) const {
    return strands == other.strands && syllables == other.syllables;
  }
};

// A bijection on {1, ..., n}. images()[i - 1] is the image of i.
class Permutation {
 public:
  explicit Permutation(std::vector<int> images);

  static Permutation identity(int n);
  static Permutation transposition(int n, int a, int b);

  int size() const noexcept { return static_cast<int>(images_.size()); }
  int operator()(int i) const { return images_.at(static_cast<std::size_t>(i - 1)); }
  const std::vector<int>& images() const noexcept { return images_; }

  // Apply *this first, then next.
  Permutation then(const Permutation& next) const;
  Permutation inverse() const;

  // Cycles in order of their smallest element, each starting there.
  std::vector<std::vector<int>> cycles() const;
  bool is_identity() const;

  bool operator==(const Permutation&) const = default;

 private:
  std::vector<int> images_;
};

// Grammar: whitespace separated tokens "s<k>" or "s<k>^<m>", k >= 1, m an
// integer (optionally signed). Without an explicit strand count, n = 1 + max k.
BraidWord parse_braid(std::string_view text, std::optional<int> strands = std::nullopt);

// Merge adjacent syllables on the same generator and drop zero exponents,
// repeating until stable.
BraidWord canonicalize(const BraidWord& word);
bool is_canonical(const BraidWord& word);

// Strand-following permutation: the strand entering at position i leaves at
// position perm(i). Syllables act left to right.
Permutation underlying_permutation(const BraidWord& word);

// Number of components of the closed braid.
int closure_component_count(const BraidWord& word);

struct PredictedCounts {
  int syllables = 0;        // l
  int sigma1_syllables = 0; // X
  int ii2 = 0;              // 2(l - X)

  bool operator==(const PredictedCounts&) const = default;
};

// Requires a canonical word; throws BraidError(NotCanonical) otherwise.
PredictedCounts predicted_counts(const BraidWord& word);

// Total crossings of the braid diagram, sum of |m_i|.
int crossing_count(const BraidWord& word);

// Textual form accepted by parse_braid, e.g. "s1^3 s2^-1". Empty for the
// identity word.
std::string format_braid(const BraidWord& word);

}  // namespace stablefold
