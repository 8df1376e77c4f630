#include "psusim/sort_unit.hpp"

#include <algorithm>
#include <numeric>
#include <stdexcept>
#include <utility>
#include <vector>

#include "doctest.h"
#include "psusim/rng.hpp"

using namespace psusim;

namespace {

// Stable comparison-sort oracle: indices ordered by key, ties by position.
std::vector<std::uint32_t> stable_sort_indices(const std::vector<int>& keys) {
  std::vector<std::uint32_t> idx(keys.size());
  std::iota(idx.begin(), idx.end(), 0);
  std::stable_sort(idx.begin(), idx.end(),
                   [&](std::uint32_t a, std::uint32_t b) { return keys[a] < keys[b]; });
  return idx;
}

std::vector<Word> random_words(SplitMix64& rng, std::size_t n) {
  std::vector<Word> words(n);
  for (Word& w : words) w = random_word(rng, TrafficModel::PopcountUniform);
  return words;
}

// A word whose ones count is exactly `count` (thermometer code).
Word word_with_count(int count) {
  return count == 0 ? 0 : static_cast<Word>(0xFF >> (8 - count));
}

}  // namespace

TEST_CASE("BucketSpec construction") {
  CHECK(BucketSpec::app_default().boundaries() == std::vector<int>{2, 4, 6});
  CHECK(BucketSpec::app_default().bucket_count() == 4);
  CHECK(BucketSpec::exact().bucket_count() == 9);
  CHECK(BucketSpec::exact().is_exact());
  CHECK(BucketSpec::uniform(4) == BucketSpec::app_default());
  CHECK(BucketSpec::uniform(9) == BucketSpec::exact());
  CHECK(BucketSpec::uniform(1).bucket_count() == 1);

  CHECK_THROWS_AS(BucketSpec({3, 3}), std::invalid_argument);
  CHECK_THROWS_AS(BucketSpec({8}), std::invalid_argument);  // last bucket would be empty
  CHECK_THROWS_AS(BucketSpec::uniform(0), std::invalid_argument);
  CHECK_THROWS_AS(BucketSpec::uniform(10), std::invalid_argument);
}

TEST_CASE("bucket_map reproduces the 4-bucket example") {
  const BucketSpec spec = BucketSpec::app_default();
  const std::vector<int> counts = {4, 1, 7, 5, 3, 5};
  const std::vector<int> expected = {1, 0, 3, 2, 1, 2};
  for (std::size_t i = 0; i < counts.size(); ++i) {
    CHECK(bucket_map(counts[i], spec) == expected[i]);
  }
  CHECK(bucket_map(8, spec) == 3);
  CHECK(bucket_map(0, BucketSpec::exact()) == 0);
  CHECK_THROWS_AS(bucket_map(9, spec), std::out_of_range);
  CHECK_THROWS_AS(bucket_map(-1, spec), std::out_of_range);
}

TEST_CASE("bucket_map is monotone and exhaustive over every uniform spec") {
  for (int k = 1; k <= 9; ++k) {
    const BucketSpec spec = BucketSpec::uniform(k);
    int prev = 0;
    for (int count = 0; count <= 8; ++count) {
      const int b = bucket_map(count, spec);
      CHECK(b >= prev);
      CHECK(b < k);
      prev = b;
    }
    CHECK(bucket_map(8, spec) == k - 1);  // buckets cover [0, 8] exactly
  }
}

TEST_CASE("one_hot_encode") {
  CHECK(one_hot_encode(0, 9) == 0x001);
  CHECK(one_hot_encode(8, 9) == 0x100);
  CHECK(one_hot_encode(2, 4) == 0b0100);
  CHECK_THROWS_AS(one_hot_encode(4, 4), std::out_of_range);
  CHECK_THROWS_AS(one_hot_encode(0, 17), std::invalid_argument);
}

TEST_CASE("histogram") {
  const std::vector<int> keys = {1, 0, 3, 2, 1, 2};
  CHECK(histogram(keys, 4) == std::vector<std::uint32_t>{1, 2, 2, 1});
  CHECK(histogram(std::vector<int>{}, 3) == std::vector<std::uint32_t>{0, 0, 0});
  CHECK(histogram(std::vector<int>{2, 2, 2}, 4) == std::vector<std::uint32_t>{0, 0, 3, 0});
  CHECK_THROWS_AS(histogram(std::vector<int>{4}, 4), std::out_of_range);
}

TEST_CASE("exclusive_prefix_sum") {
  const std::vector<std::uint32_t> counts = {1, 2, 2, 1};
  CHECK(exclusive_prefix_sum(counts) == std::vector<std::uint32_t>{0, 1, 3, 5});
  CHECK(exclusive_prefix_sum(std::vector<std::uint32_t>{0, 0}) ==
        std::vector<std::uint32_t>{0, 0});
  CHECK(exclusive_prefix_sum(std::vector<std::uint32_t>{6}) == std::vector<std::uint32_t>{0});
}

TEST_CASE("scatter places the bucket example stably") {
  const std::vector<int> keys = {1, 0, 3, 2, 1, 2};
  const auto starts = exclusive_prefix_sum(histogram(keys, 4));
  const Permutation perm = scatter(keys, starts);
  CHECK(perm.indices == std::vector<std::uint32_t>{1, 0, 4, 3, 5, 2});
  CHECK(perm.is_valid());
}

TEST_CASE("scatter identity cases and validation") {
  const std::vector<int> same = {2, 2, 2, 2};
  auto perm = scatter(same, exclusive_prefix_sum(histogram(same, 4)));
  CHECK(perm.indices == std::vector<std::uint32_t>{0, 1, 2, 3});  // stability

  const std::vector<int> ascending = {0, 1, 2, 3};
  perm = scatter(ascending, exclusive_prefix_sum(histogram(ascending, 4)));
  CHECK(perm.indices == std::vector<std::uint32_t>{0, 1, 2, 3});

  const std::vector<std::uint32_t> bogus = {0, 2, 3, 5};
  CHECK_THROWS_AS(scatter(ascending, bogus), std::invalid_argument);
}

TEST_CASE("sort_unit leaves uniform patterns in place") {
  const std::vector<Word> ones(32, 0xFF);
  const std::vector<Word> zeros(32, 0x00);
  for (const auto* words : {&ones, &zeros}) {
    const SortTrace trace = sort_unit(*words, BucketSpec::app_default());
    for (std::uint32_t i = 0; i < 32; ++i) CHECK(trace.output[i] == i);
  }
  CHECK_THROWS_AS(sort_unit(std::vector<Word>{}, BucketSpec::exact()), std::invalid_argument);
}

TEST_CASE("sort_unit reverses a descending-count pattern bucket-stably") {
  // counts 8,7,...,0 under the 4-bucket spec: keys 3 3 2 2 1 1 0 0 0
  std::vector<Word> words;
  for (int c = 8; c >= 0; --c) words.push_back(word_with_count(c));
  const SortTrace trace = sort_unit(words, BucketSpec::app_default());
  CHECK(trace.output.indices == std::vector<std::uint32_t>{6, 7, 8, 4, 5, 2, 3, 0, 1});
}

TEST_CASE("sort_unit trace stages are internally consistent") {
  SplitMix64 rng(23);
  for (int iter = 0; iter < 200; ++iter) {
    const auto words = random_words(rng, 1 + rng.next_below(40));
    const BucketSpec spec = BucketSpec::uniform(1 + static_cast<int>(rng.next_below(9)));
    const SortTrace trace = sort_unit(words, spec);

    std::uint32_t total = 0;
    std::vector<std::uint32_t> from_onehot(trace.num_bins, 0);
    for (std::size_t i = 0; i < words.size(); ++i) {
      CHECK(trace.onehot[i] == one_hot_encode(trace.keys[i], trace.num_bins));
      for (int b = 0; b < trace.num_bins; ++b) from_onehot[b] += trace.onehot[i] >> b & 1;
    }
    CHECK(from_onehot == trace.histogram);
    for (int b = 0; b < trace.num_bins; ++b) total += trace.histogram[b];
    CHECK(total == words.size());
    CHECK(trace.prefix[0] == 0);
    for (int b = 1; b < trace.num_bins; ++b) {
      CHECK(trace.prefix[b] == trace.prefix[b - 1] + trace.histogram[b - 1]);
    }
    CHECK(trace.output.is_valid());
  }
}

TEST_CASE("sort_unit matches the stable comparison-sort oracle") {
  SplitMix64 rng(29);

  SUBCASE("exhaustively for short count vectors") {
    // every count vector of length <= 4 over [0, 8]
    for (int len = 1; len <= 4; ++len) {
      std::vector<int> counts(len, 0);
      while (true) {
        std::vector<Word> words(len);
        for (int i = 0; i < len; ++i) words[i] = word_with_count(counts[i]);
        const SortTrace trace = sort_unit(words, BucketSpec::exact());
        CHECK(trace.output.indices == stable_sort_indices(counts));

        int pos = len - 1;
        while (pos >= 0 && counts[pos] == 8) counts[pos--] = 0;
        if (pos < 0) break;
        ++counts[pos];
      }
    }
  }

  SUBCASE("randomized 32-element windows") {
    for (int iter = 0; iter < 500; ++iter) {
      const auto words = random_words(rng, 32);
      std::vector<int> keys(words.size());
      for (std::size_t i = 0; i < words.size(); ++i) keys[i] = popcount(words[i]);
      const SortTrace trace = sort_unit(words, BucketSpec::exact());
      CHECK(trace.output.indices == stable_sort_indices(keys));
    }
  }
}

TEST_CASE("app ordering is a coarsening of acc ordering") {
  SplitMix64 rng(31);
  for (int iter = 0; iter < 200; ++iter) {
    const auto words = random_words(rng, 32);
    const BucketSpec spec = BucketSpec::uniform(2 + static_cast<int>(rng.next_below(7)));
    const auto acc = sort_unit(words, BucketSpec::exact()).output.indices;
    const auto app = sort_unit(words, spec).output.indices;

    // relative order of any two elements in different buckets agrees
    std::vector<std::uint32_t> acc_pos(words.size()), app_pos(words.size());
    for (std::uint32_t p = 0; p < words.size(); ++p) {
      acc_pos[acc[p]] = p;
      app_pos[app[p]] = p;
    }
    for (std::size_t a = 0; a < words.size(); ++a) {
      for (std::size_t b = a + 1; b < words.size(); ++b) {
        if (bucket_map(popcount(words[a]), spec) == bucket_map(popcount(words[b]), spec)) {
          continue;
        }
        CHECK((acc_pos[a] < acc_pos[b]) == (app_pos[a] < app_pos[b]));
      }
    }
  }
}

TEST_CASE("sort_unit descending order flag") {
  SplitMix64 rng(37);
  const auto words = random_words(rng, 32);
  const SortTrace trace = sort_unit(words, BucketSpec::exact(), SortOrder::Descending);
  int prev = 8;
  for (std::uint32_t p = 0; p < 32; ++p) {
    const int c = popcount(words[trace.output[p]]);
    CHECK(c <= prev);
    prev = c;
  }
}

TEST_CASE("bitonic_sort") {
  SUBCASE("worked example") {
    const std::vector<int> keys = {3, 1, 2, 0};
    const BitonicResult r = bitonic_sort(keys);
    CHECK(r.sorted == std::vector<int>{0, 1, 2, 3});
    CHECK(r.comparator_count == 6);
  }

  SUBCASE("single element uses no comparators") {
    const BitonicResult r = bitonic_sort(std::vector<int>{42});
    CHECK(r.sorted == std::vector<int>{42});
    CHECK(r.comparator_count == 0);
  }

  SUBCASE("comparator count matches the Batcher closed form") {
    for (std::size_t n : {2u, 4u, 8u, 16u, 32u}) {
      std::vector<int> keys(n);
      SplitMix64 rng(n);
      for (int& k : keys) k = static_cast<int>(rng.next_below(100));
      const BitonicResult r = bitonic_sort(keys);
      CHECK(r.comparator_count == batcher_comparator_count(n));
      CHECK(r.comparator_count > 0);
    }
    CHECK(batcher_comparator_count(4) == 6);
    CHECK(batcher_comparator_count(32) == 240);
  }

  SUBCASE("random vectors are multiset-equal to the oracle and non-decreasing") {
    SplitMix64 rng(41);
    for (int iter = 0; iter < 300; ++iter) {
      std::vector<int> keys(1 + rng.next_below(40));  // includes non-powers of two
      for (int& k : keys) k = static_cast<int>(rng.next_below(9));
      const BitonicResult r = bitonic_sort(keys);
      CHECK(std::is_sorted(r.sorted.begin(), r.sorted.end()));
      std::vector<int> oracle = keys;
      std::sort(oracle.begin(), oracle.end());
      CHECK(r.sorted == oracle);
    }
  }
}
