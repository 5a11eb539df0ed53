#include "stablefold/braid.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <cstdlib>
#include <numeric>

namespace stablefold {

const char* to_string(BraidErrc code) noexcept {
  switch (code) {
    case BraidErrc::EmptyWord: return "EmptyWord";
    case BraidErrc::GeneratorOutOfRange: return "GeneratorOutOfRange";
    case BraidErrc::BadSyntax: return "BadSyntax";
    case BraidErrc::InvalidStrandCount: return "InvalidStrandCount";
    case BraidErrc::NotCanonical: return "NotCanonical";
  }
  return "Unknown";
}

BraidError::BraidError(BraidErrc code, const std::string& message,
                       std::optional<std::size_t> position)
    : std::runtime_error(message), code_(code), position_(position) {}

// ---------------------------------------------------------------------------
// Permutation

Permutation::Permutation(std::vector<int> images) : images_(std::move(images)) {
  std::vector<bool> seen(images_.size(), false);
  for (int image : images_) {
    if (image < 1 || image > size() || seen[static_cast<std::size_t>(image - 1)]) {
      throw std::invalid_argument("permutation images are not a bijection");
    }
    seen[static_cast<std::size_t>(image - 1)] = true;
  }
}

Permutation Permutation::identity(int n) {
  std::vector<int> images(static_cast<std::size_t>(n));
  std::iota(images.begin(), images.end(), 1);
  return Permutation(std::move(images));
}

Permutation Permutation::transposition(int n, int a, int b) {
  auto images = identity(n).images_;
  std::swap(images.at(static_cast<std::size_t>(a - 1)), images.at(static_cast<std::size_t>(b - 1)));
  return Permutation(std::move(images));
}

Permutation Permutation::then(const Permutation& next) const {
  if (next.size() != size()) {
    throw std::invalid_argument("composing permutations of different degree");
  }
  std::vector<int> images(images_.size());
  for (int i = 1; i <= size(); ++i) {
    images[static_cast<std::size_t>(i - 1)] = next((*this)(i));
  }
  return Permutation(std::move(images));
}

Permutation Permutation::inverse() const {
  std::vector<int> images(images_.size());
  for (int i = 1; i <= size(); ++i) {
    images[static_cast<std::size_t>((*this)(i) - 1)] = i;
  }
  return Permutation(std::move(images));
}

std::vector<std::vector<int>> Permutation::cycles() const {
  std::vector<std::vector<int>> result;
  std::vector<bool> visited(images_.size(), false);
  for (int start = 1; start <= size(); ++start) {
    if (visited[static_cast<std::size_t>(start - 1)]) continue;
    std::vector<int> cycle;
    for (int i = start; !visited[static_cast<std::size_t>(i - 1)]; i = (*this)(i)) {
      visited[static_cast<std::size_t>(i - 1)] = true;
      cycle.push_back(i);
    }
    result.push_back(std::move(cycle));
  }
  return result;
}

bool Permutation::is_identity() const {
  for (int i = 1; i <= size(); ++i) {
    if ((*this)(i) != i) return false;
  }
  return true;
}

// ---------------------------------------------------------------------------
// Parsing

namespace {

bool is_space(char c) { return std::isspace(static_cast<unsigned char>(c)) != 0; }

// Parses a signed decimal integer covering all of text.
std::optional<int> parse_int(std::string_view text) {
  if (!text.empty() && text.front() == '+') text.remove_prefix(1);
  if (text.empty()) return std::nullopt;
  int value = 0;
  auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), value);
  if (ec != std::errc{} || ptr != text.data() + text.size()) return std::nullopt;
  return value;
}

struct Token {
  std::string_view text;
  std::size_t offset;
};

std::vector<Token> tokenize(std::string_view text) {
  std::vector<Token> tokens;
  std::size_t i = 0;
  while (i < text.size()) {
    while (i < text.size() && is_space(text[i])) ++i;
    const std::size_t start = i;
    while (i < text.size() && !is_space(text[i])) ++i;
    if (i > start) tokens.push_back({text.substr(start, i - start), start});
  }
  return tokens;
}

}  // namespace

BraidWord parse_braid(std::string_view text, std::optional<int> strands) {
  if (strands && *strands < 2) {
    throw BraidError(BraidErrc::InvalidStrandCount,
                     "strand count must be at least 2, got " + std::to_string(*strands));
  }

  BraidWord word;
  word.raw_text = std::string(text);

  std::vector<std::size_t> offsets;
  for (const Token& token : tokenize(text)) {
    const auto bad = [&](const std::string& why, std::size_t at) {
      return BraidError(BraidErrc::BadSyntax,
                        "bad token '" + std::string(token.text) + "' at column " +
                            std::to_string(at + 1) + ": " + why,
                        at);
    };
    if (token.text.front() != 's') {
      throw bad("expected 's<k>' or 's<k>^<m>'", token.offset);
    }
    const std::string_view body = token.text.substr(1);
    const auto caret = body.find('^');
    const std::string_view index_text = body.substr(0, caret);
    const auto index = parse_int(index_text);
    if (!index || index_text.front() == '+' || index_text.front() == '-') {
      throw bad("generator index must be a positive integer", token.offset + 1);
    }
    if (*index < 1) {
      throw bad("generator index must be at least 1", token.offset + 1);
    }
    int exponent = 1;
    if (caret != std::string_view::npos) {
      const auto parsed = parse_int(body.substr(caret + 1));
      if (!parsed) {
        throw bad("exponent must be an integer", token.offset + 2 + caret);
      }
      exponent = *parsed;
    }
    word.syllables.push_back({*index, exponent});
    offsets.push_back(token.offset);
  }

  if (strands) {
    word.strands = *strands;
  } else {
    if (word.syllables.empty()) {
      throw BraidError(BraidErrc::EmptyWord,
                       "empty braid word: the identity braid needs an explicit strand count");
    }
    int max_index = 0;
    for (const Syllable& s : word.syllables) max_index = std::max(max_index, s.generator);
    word.strands = max_index + 1;
  }

  for (std::size_t i = 0; i < word.syllables.size(); ++i) {
    const int k = word.syllables[i].generator;
    if (k > word.strands - 1) {
      throw BraidError(BraidErrc::GeneratorOutOfRange,
                       "generator s" + std::to_string(k) + " at column " +
                           std::to_string(offsets[i] + 1) + " is out of range for " +
                           std::to_string(word.strands) + " strands (max s" +
                           std::to_string(word.strands - 1) + ")",
                       offsets[i]);
    }
  }
  return word;
}

// ---------------------------------------------------------------------------

BraidWord canonicalize(const BraidWord& word) {
  BraidWord result;
  result.strands = word.strands;
  result.raw_text = word.raw_text;
  // A stack makes a single pass enough: dropping a zero syllable can expose a
  // new adjacent pair, which then merges against the stack top.
  for (const Syllable& s : word.syllables) {
    if (s.exponent == 0) continue;
    if (!result.syllables.empty() && result.syllables.back().generator == s.generator) {
      result.syllables.back().exponent += s.exponent;
      if (result.syllables.back().exponent == 0) result.syllables.pop_back();
    } else {
      result.syllables.push_back(s);
    }
  }
  return result;
}

bool is_canonical(const BraidWord& word) {
  for (std::size_t i = 0; i < word.syllables.size(); ++i) {
    if (word.syllables[i].exponent == 0) return false;
    if (i > 0 && word.syllables[i - 1].generator == word.syllables[i].generator) return false;
  }
  return true;
}

Permutation underlying_permutation(const BraidWord& word) {
  std::vector<int> position_holder(static_cast<std::size_t>(word.strands));
  std::iota(position_holder.begin(), position_holder.end(), 1);
  // position_holder[p - 1] = strand currently at position p.
  for (const Syllable& s : word.syllables) {
    if (s.exponent % 2 != 0) {
      std::swap(position_holder[static_cast<std::size_t>(s.generator - 1)],
                position_holder[static_cast<std::size_t>(s.generator)]);
    }
  }
  std::vector<int> images(position_holder.size());
  for (std::size_t p = 0; p < position_holder.size(); ++p) {
    images[static_cast<std::size_t>(position_holder[p] - 1)] = static_cast<int>(p + 1);
  }
  return Permutation(std::move(images));
}

int closure_component_count(const BraidWord& word) {
  return static_cast<int>(underlying_permutation(word).cycles().size());
}

PredictedCounts predicted_counts(const BraidWord& word) {
  if (!is_canonical(word)) {
    throw BraidError(BraidErrc::NotCanonical,
                     "predicted counts need a canonical word (adjacent equal generators or "
                     "zero exponents present)");
  }
  PredictedCounts counts;
  counts.syllables = static_cast<int>(word.syllables.size());
  counts.sigma1_syllables = static_cast<int>(std::count_if(
      word.syllables.begin(), word.syllables.end(), [](const Syllable& s) { return s.generator == 1; }));
  counts.ii2 = 2 * (counts.syllables - counts.sigma1_syllables);
  return counts;
}

int crossing_count(const BraidWord& word) {
  int total = 0;
  for (const Syllable& s : word.syllables) total += std::abs(s.exponent);
  return total;
}

std::string format_braid(const BraidWord& word) {
  std::string out;
  for (const Syllable& s : word.syllables) {
    if (!out.empty()) out += ' ';
    out += 's' + std::to_string(s.generator);
    if (s.exponent != 1) out += '^' + std::to_string(s.exponent);
  }
  return out;
}

}  // namespace stablefold
