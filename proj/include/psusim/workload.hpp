#pragma once

// LeNet-5 C1-style convolution + pooling workload: tile generation for 16
// processing elements, golden integer references, and the end-to-end
// streamed experiment that checks accumulation order-invariance.

#include <cstdint>
#include <span>
#include <vector>

#include "psusim/link.hpp"

namespace psusim {

inline constexpr int kNumPes = 16;

struct ConvConfig {
  int input_h = 32;
  int input_w = 32;
  int kernel = 5;  // 5 for C1; 7 also supported
  int num_filters = 6;
  int stride = 1;

  int output_h() const { return (input_h - kernel) / stride + 1; }
  int output_w() const { return (input_w - kernel) / stride + 1; }
  void validate() const;  // kernel odd and <= min(input_h, input_w)
};

// Unsigned 8-bit activation map, row-major.
struct Image {
  int h = 0;
  int w = 0;
  std::vector<Word> px;

  Word at(int r, int c) const { return px[static_cast<std::size_t>(r) * w + c]; }
  Word& at(int r, int c) { return px[static_cast<std::size_t>(r) * w + c]; }
};

// Signed 8-bit k x k filter, row-major.
struct Kernel {
  int k = 0;
  std::vector<std::int8_t> w;

  std::int8_t at(int r, int c) const { return w[static_cast<std::size_t>(r) * k + c]; }
};

// 32-bit integer map (conv or pooled output), row-major.
struct OutputMap {
  int h = 0;
  int w = 0;
  std::vector<std::int32_t> v;

  std::int32_t at(int r, int c) const { return v[static_cast<std::size_t>(r) * w + c]; }
  std::int32_t& at(int r, int c) { return v[static_cast<std::size_t>(r) * w + c]; }
  bool operator==(const OutputMap&) const = default;
};

/// Valid cross-correlation: unsigned activations times signed weights,
/// accumulated exactly in 32-bit signed integers, plus a constant bias.
OutputMap golden_conv(const Image& image, const Kernel& kernel, const ConvConfig& config,
                      std::int32_t bias = 0);

/// 2x2 non-overlapping average pooling with truncating division by 4.
/// Rejects maps with odd dimensions.
OutputMap golden_pool(const OutputMap& map);

// The (input, weight) pairs of one conv window under one filter. Pairs are
// the window pixels row-major beside their kernel weights; weights travel as
// raw two's-complement bytes.
struct Tile {
  std::vector<Pair> pairs;  // kernel * kernel entries
  int kernel = 0;
  int pe_id = 0;  // [0, 16)
  int filter = 0;
  int out_row = 0;
  int out_col = 0;
};

/// One Tile per (output pixel, filter), output pixels row-major with filters
/// innermost; pe_id = sequence index mod 16.
std::vector<Tile> generate_tiles(const Image& image, std::span<const Kernel> kernels,
                                 const ConvConfig& config);

/// Tile payload as a stream with its k x k shape attached.
PairStream tile_stream(const Tile& tile);

struct PeResult {
  std::int32_t accumulator = 0;
  int pe_id = 0;
};

/// MAC accumulation over the received pair order:
/// sum of unsigned(input) * signed(weight). Throws std::overflow_error if
/// the exact sum leaves the 32-bit signed range (mis-sized test data).
PeResult pe_accumulate(std::span<const Pair> pairs, int pe_id = 0);

struct WorkloadResult {
  LaneStats stats;
  bool correct = false;  // streamed pooled output bit-exact vs golden
  std::vector<OutputMap> pooled;         // per filter, from the streamed order
  std::vector<OutputMap> golden_pooled;  // per filter, golden conv + pool
};

/// Streams every tile through apply_ordering / pack / transmit, accumulates
/// each PE result from the received order, pools, and compares bit-exactly
/// against the golden pipeline on the unordered data.
WorkloadResult run_workload_experiment(const Image& image, std::span<const Kernel> kernels,
                                       const ConvConfig& config,
                                       const OrderingStrategy& strategy,
                                       std::span<const std::int32_t> biases = {});

// Deterministic test inputs.
Image make_gradient_image(int h, int w);
Image make_checkerboard_image(int h, int w);
/// Pseudo-random image drawn from the PopcountUniform traffic model.
Image make_random_image(int h, int w, std::uint64_t seed);
std::vector<Kernel> make_random_kernels(int count, int k, std::uint64_t seed);

}  // namespace psusim
