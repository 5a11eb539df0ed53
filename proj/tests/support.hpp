#pragma once

#include <cstdint>
#include <functional>
#include <random>
#include <vector>

#include "stablefold/braid.hpp"

namespace stablefold::testing {

// Every canonical word on `strands` strands with at most `max_syllables`
// syllables and exponents in [-max_exp, max_exp] \ {0}, the empty word
// included.
inline void for_each_canonical_word(int strands, int max_syllables, int max_exp,
                                    const std::function<void(const BraidWord&)>& visit) {
  BraidWord word;
  word.strands = strands;
  std::function<void()> extend = [&]() {
    visit(word);
    if (static_cast<int>(word.syllables.size()) == max_syllables) return;
    const int previous = word.syllables.empty() ? 0 : word.syllables.back().generator;
    for (int z = 1; z < strands; ++z) {
      if (z == previous) continue;
      for (int m = -max_exp; m <= max_exp; ++m) {
        if (m == 0) continue;
        word.syllables.push_back({z, m});
        extend();
        word.syllables.pop_back();
      }
    }
  };
  extend();
}

inline BraidWord random_canonical_word(std::mt19937_64& rng, int max_strands, int max_syllables, int max_exp) {
  std::uniform_int_distribution<int> strands_dist(2, max_strands);
  std::uniform_int_distribution<int> length_dist(0, max_syllables);
  std::uniform_int_distribution<int> exp_dist(1, max_exp);
  std::bernoulli_distribution negative(0.5);
  BraidWord word;
  word.strands = strands_dist(rng);
  const int length = length_dist(rng);
  std::uniform_int_distribution<int> gen_dist(1, word.strands - 1);
  for (int i = 0; i < length; ++i) {
    int z = gen_dist(rng);
    if (!word.syllables.empty() && z == word.syllables.back().generator) {
      if (word.strands == 2) break;
      while (z == word.syllables.back().generator) z = gen_dist(rng);
    }
    const int m = exp_dist(rng);
    word.syllables.push_back({z, negative(rng) ? -m : m});
  }
  return word;
}

}  // namespace stablefold::testing
