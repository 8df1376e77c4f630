#include "psusim/rng.hpp"

#include <array>
#include <vector>

namespace psusim {

namespace {

// words_with_popcount()[c] lists every byte with ones count c, ascending.
const std::array<std::vector<Word>, 9>& words_with_popcount() {
  static const std::array<std::vector<Word>, 9> table = [] {
    std::array<std::vector<Word>, 9> t;
    for (int b = 0; b < 256; ++b) t[popcount(static_cast<Word>(b))].push_back(static_cast<Word>(b));
    return t;
  }();
  return table;
}

}  // namespace

Word random_word(SplitMix64& rng, TrafficModel model) {
  if (model == TrafficModel::Uniform) {
    return static_cast<Word>(rng.next() & 0xFF);
  }
  const auto& table = words_with_popcount();
  const auto& patterns = table[rng.next_below(9)];
  return patterns[rng.next_below(patterns.size())];
}

}  // namespace psusim
