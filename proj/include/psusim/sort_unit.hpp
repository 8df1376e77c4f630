#pragma once

// Comparison-free popcount-sorting unit: one-hot encode -> histogram ->
// exclusive prefix sum -> stable scatter. With the exact 9-bin key space it
// is the accurate unit (ACC); with k coarse buckets it is the approximate
// unit (APP). A Batcher bitonic network is included as a comparator-based
// reference.

#include <cstdint>
#include <span>
#include <vector>

#include "psusim/bits.hpp"

namespace psusim {

// Contiguous partition of the ones-count range [0, 8] into k ordered
// buckets. Bucket i holds strictly smaller counts than bucket i+1.
class BucketSpec {
 public:
  // `upper_bounds` holds the inclusive upper count of buckets 0..k-2; the
  // last bucket extends to 8. Must be strictly increasing within [0, 7].
  explicit BucketSpec(std::vector<int> upper_bounds);

  /// k = 9 identity mapping: bucket index == exact ones count (ACC).
  static BucketSpec exact();
  /// The 4-bucket mapping {0-2} {3,4} {5,6} {7,8} (APP default).
  static BucketSpec app_default();
  /// k near-equal-width buckets over [0, 8]; remainder widens the lowest
  /// buckets. uniform(4) == app_default(), uniform(9) == exact().
  static BucketSpec uniform(int k);

  int bucket_count() const { return static_cast<int>(upper_bounds_.size()) + 1; }
  bool is_exact() const { return bucket_count() == kWordBits + 1; }
  const std::vector<int>& boundaries() const { return upper_bounds_; }

  bool operator==(const BucketSpec&) const = default;

 private:
  std::vector<int> upper_bounds_;
};

/// Bucket index for an exact ones count. Monotone non-decreasing in count;
/// throws std::out_of_range for count outside [0, 8].
int bucket_map(int count, const BucketSpec& spec);

// Index remapping produced by the sorting unit. indices[p] is the original
// position of the element placed at output position p, so
// sorted[p] = input[indices[p]].
struct Permutation {
  std::vector<std::uint32_t> indices;

  std::size_t size() const { return indices.size(); }
  std::uint32_t operator[](std::size_t p) const { return indices[p]; }
  bool is_valid() const;  // bijective on [0, n)

  template <typename T>
  std::vector<T> apply(std::span<const T> xs) const {
    std::vector<T> out(indices.size());
    for (std::size_t p = 0; p < indices.size(); ++p) out[p] = xs[indices[p]];
    return out;
  }

  bool operator==(const Permutation&) const = default;
};

// One-hot vector over at most 16 bins, bit `key` set.
using OneHot = std::uint16_t;

/// One-hot encoding of a bin index; throws std::out_of_range if
/// key >= num_bins.
OneHot one_hot_encode(int key, int num_bins);

/// counts[b] = number of keys equal to b. Out-of-range keys rejected.
std::vector<std::uint32_t> histogram(std::span<const int> keys, int num_bins);

/// out[0] = 0, out[b] = out[b-1] + counts[b-1].
std::vector<std::uint32_t> exclusive_prefix_sum(std::span<const std::uint32_t> counts);

/// Stable counting-sort placement: element j with key b goes to position
/// starts[b] + (elements with key b before j). `starts` must be the
/// exclusive prefix sum of the keys' histogram; anything else is rejected.
Permutation scatter(std::span<const int> keys, std::span<const std::uint32_t> starts);

enum class SortOrder { Ascending, Descending };

// Every intermediate stage of one sorting-unit pass. `keys` are the bin
// indices actually counted (bucket indices, flipped when descending), so the
// histogram/prefix/output identities hold on the stored fields as-is.
struct SortTrace {
  std::vector<int> counts;               // exact ones count per element
  std::vector<int> keys;                 // bin index per element
  std::vector<OneHot> onehot;            // one-hot of keys over num_bins
  std::vector<std::uint32_t> histogram;  // per-bin element counts
  std::vector<std::uint32_t> prefix;     // per-bin starting addresses
  Permutation output;
  int num_bins = 0;
};

/// Full three-stage pass over n >= 1 words: popcount, bucket mapping,
/// one-hot/histogram/prefix-sum, stable scatter. The output permutation
/// applied to the words yields non-decreasing (ascending) bucket keys,
/// original order preserved within equal keys.
SortTrace sort_unit(std::span<const Word> words, const BucketSpec& spec,
                    SortOrder order = SortOrder::Ascending);

// Batcher bitonic reference sorter.
struct BitonicResult {
  std::vector<int> sorted;
  std::uint64_t comparator_count = 0;
};

/// Closed-form Batcher network size n*log2(n)*(log2(n)+1)/4 for n a power
/// of two.
constexpr std::uint64_t batcher_comparator_count(std::uint64_t n) {
  std::uint64_t lg = 0;
  while ((1ull << lg) < n) ++lg;
  return n * lg * (lg + 1) / 4;
}

/// Sorts keys non-decreasing through a bitonic network, counting
/// compare-exchange operations. Sizes that are not powers of two are padded
/// with max sentinels; the padding is stripped from the output and the
/// count reflects the padded network.
BitonicResult bitonic_sort(std::span<const int> keys);

}  // namespace psusim
