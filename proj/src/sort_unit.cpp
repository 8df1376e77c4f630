#include "psusim/sort_unit.hpp"

#include <algorithm>
#include <limits>
#include <stdexcept>
#include <string>

namespace psusim {

BucketSpec::BucketSpec(std::vector<int> upper_bounds)
    : upper_bounds_(std::move(upper_bounds)) {
  if (upper_bounds_.size() > static_cast<std::size_t>(kWordBits)) {
    throw std::invalid_argument("BucketSpec: more than 9 buckets");
  }
  int prev = -1;
  for (int b : upper_bounds_) {
    if (b <= prev || b >= kWordBits) {
      throw std::invalid_argument("BucketSpec: bounds must be strictly increasing in [0, 7]");
    }
    prev = b;
  }
}

BucketSpec BucketSpec::exact() { return uniform(kWordBits + 1); }

BucketSpec BucketSpec::app_default() { return BucketSpec({2, 4, 6}); }

BucketSpec BucketSpec::uniform(int k) {
  if (k < 1 || k > kWordBits + 1) {
    throw std::invalid_argument("BucketSpec::uniform: k must be in [1, 9]");
  }
  const int values = kWordBits + 1;
  const int base = values / k;
  const int remainder = values % k;
  std::vector<int> bounds;
  int next_start = 0;
  for (int i = 0; i + 1 < k; ++i) {
    next_start += base + (i < remainder ? 1 : 0);
    bounds.push_back(next_start - 1);
  }
  return BucketSpec(std::move(bounds));
}

int bucket_map(int count, const BucketSpec& spec) {
  if (count < 0 || count > kWordBits) {
    throw std::out_of_range("bucket_map: count outside [0, 8]");
  }
  const auto& bounds = spec.boundaries();
  auto it = std::lower_bound(bounds.begin(), bounds.end(), count);
  return static_cast<int>(it - bounds.begin());
}

bool Permutation::is_valid() const {
  std::vector<bool> seen(indices.size(), false);
  for (std::uint32_t i : indices) {
    if (i >= indices.size() || seen[i]) return false;
    seen[i] = true;
  }
  return true;
}

OneHot one_hot_encode(int key, int num_bins) {
  if (num_bins < 1 || num_bins > 16) {
    throw std::invalid_argument("one_hot_encode: num_bins must be in [1, 16]");
  }
  if (key < 0 || key >= num_bins) {
    throw std::out_of_range("one_hot_encode: key >= num_bins");
  }
  return static_cast<OneHot>(1u << key);
}

std::vector<std::uint32_t> histogram(std::span<const int> keys, int num_bins) {
  if (num_bins < 1) throw std::invalid_argument("histogram: num_bins must be >= 1");
  std::vector<std::uint32_t> counts(num_bins, 0);
  for (int k : keys) {
    if (k < 0 || k >= num_bins) throw std::out_of_range("histogram: key out of range");
    ++counts[k];
  }
  return counts;
}

std::vector<std::uint32_t> exclusive_prefix_sum(std::span<const std::uint32_t> counts) {
  std::vector<std::uint32_t> starts(counts.size());
  std::uint32_t running = 0;
  for (std::size_t b = 0; b < counts.size(); ++b) {
    starts[b] = running;
    running += counts[b];
  }
  return starts;
}

Permutation scatter(std::span<const int> keys, std::span<const std::uint32_t> starts) {
  const auto counts = histogram(keys, static_cast<int>(starts.size()));
  const auto expected = exclusive_prefix_sum(counts);
  if (!std::equal(starts.begin(), starts.end(), expected.begin(), expected.end())) {
    throw std::invalid_argument("scatter: starts inconsistent with keys' histogram");
  }
  Permutation perm;
  perm.indices.resize(keys.size());
  std::vector<std::uint32_t> cursor(starts.begin(), starts.end());
  for (std::size_t j = 0; j < keys.size(); ++j) {
    perm.indices[cursor[keys[j]]++] = static_cast<std::uint32_t>(j);
  }
  return perm;
}

SortTrace sort_unit(std::span<const Word> words, const BucketSpec& spec, SortOrder order) {
  if (words.empty()) throw std::invalid_argument("sort_unit: empty input");
  SortTrace trace;
  trace.num_bins = spec.bucket_count();
  trace.counts.reserve(words.size());
  trace.keys.reserve(words.size());
  trace.onehot.reserve(words.size());
  for (Word w : words) {
    const int count = popcount(w);
    int key = bucket_map(count, spec);
    if (order == SortOrder::Descending) key = trace.num_bins - 1 - key;
    trace.counts.push_back(count);
    trace.keys.push_back(key);
    trace.onehot.push_back(one_hot_encode(key, trace.num_bins));
  }
  trace.histogram = histogram(trace.keys, trace.num_bins);
  trace.prefix = exclusive_prefix_sum(trace.histogram);
  trace.output = scatter(trace.keys, trace.prefix);
  return trace;
}

namespace {

// Iterative Batcher bitonic network. For n a power of two this performs
// exactly n*log2(n)*(log2(n)+1)/4 compare-exchanges.
std::uint64_t bitonic_network(std::vector<int>& v) {
  const std::size_t n = v.size();
  std::uint64_t comparators = 0;
  for (std::size_t k = 2; k <= n; k <<= 1) {
    for (std::size_t j = k >> 1; j > 0; j >>= 1) {
      for (std::size_t i = 0; i < n; ++i) {
        const std::size_t l = i ^ j;
        if (l <= i) continue;
        ++comparators;
        const bool ascending = (i & k) == 0;
        if ((v[i] > v[l]) == ascending) std::swap(v[i], v[l]);
      }
    }
  }
  return comparators;
}

}  // namespace

BitonicResult bitonic_sort(std::span<const int> keys) {
  BitonicResult result;
  if (keys.size() <= 1) {
    result.sorted.assign(keys.begin(), keys.end());
    return result;
  }
  std::size_t padded = 1;
  while (padded < keys.size()) padded <<= 1;
  std::vector<int> v(keys.begin(), keys.end());
  v.resize(padded, std::numeric_limits<int>::max());
  result.comparator_count = bitonic_network(v);
  v.resize(keys.size());
  result.sorted = std::move(v);
  return result;
}

}  // namespace psusim
