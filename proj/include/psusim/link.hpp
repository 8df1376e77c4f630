#pragma once

// Link-level simulation: packs ordered (input, weight) pair streams into
// packets and accumulates per-lane bit transitions across a transmission,
// including the boundary between consecutive packets.

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "psusim/bits.hpp"
#include "psusim/rng.hpp"
#include "psusim/sort_unit.hpp"

namespace psusim {

// One (input, weight) element pair. The two words always travel side by
// side: reordering permutes whole pairs so each PE still receives matched
// multiplicands.
struct Pair {
  Word input = 0;
  Word weight = 0;

  bool operator==(const Pair&) const = default;
};

// Row/column extent of the 2-D tile a stream was read from (row-major).
struct TileShape {
  std::uint32_t rows = 0;
  std::uint32_t cols = 0;

  bool operator==(const TileShape&) const = default;
};

// Ordered pair sequence handed to the link, optionally remembering its
// source tile. When tile_shape is set, rows * cols must equal pairs.size().
struct PairStream {
  std::vector<Pair> pairs;
  std::optional<TileShape> tile_shape;
};

// One sorting window, sized to a whole number of packets. Pairs in
// [0, payload) carry data; the remainder is zero padding that stays at the
// tail through every ordering strategy, so it can never perturb the ordered
// prefix.
struct Window {
  std::vector<Pair> pairs;  // size is a multiple of kPairsPerPacket
  std::size_t payload = 0;  // leading pairs that carry data
  std::optional<TileShape> tile_shape;  // shape of the payload prefix
};

/// Window holding `stream` padded up to the next packet boundary.
Window make_window(const PairStream& stream);

struct OrderingStrategy {
  enum class Kind { NonOptimized, ColumnMajor, Acc, App };

  Kind kind = Kind::NonOptimized;
  BucketSpec spec = BucketSpec::exact();  // key space for Acc/App
  SortOrder order = SortOrder::Ascending;

  static OrderingStrategy non_optimized() { return {Kind::NonOptimized}; }
  static OrderingStrategy column_major() { return {Kind::ColumnMajor}; }
  // Acc is exactly App with the 9-bucket identity spec.
  static OrderingStrategy acc(SortOrder order = SortOrder::Ascending) {
    return {Kind::Acc, BucketSpec::exact(), order};
  }
  static OrderingStrategy app(BucketSpec spec = BucketSpec::app_default(),
                              SortOrder order = SortOrder::Ascending) {
    return {Kind::App, std::move(spec), order};
  }

  std::string_view name() const;
};

/// Reorders a window's payload under a strategy. NonOptimized returns the
/// window unchanged; ColumnMajor re-reads the payload in column-major order
/// of its tile_shape (identity without one); Acc/App sort whole pairs by the
/// input words' (bucketed) ones count via sort_unit. Padding never moves.
Window apply_ordering(const Window& window, const OrderingStrategy& strategy);

/// Packs 32 ordered pairs: pairs 8f..8f+7 fill flit f, inputs into
/// input_lane positions 0..7 and weights into weight_lane 0..7.
Packet pack_packet(std::span<const Pair> pairs);
std::array<Pair, kPairsPerPacket> unpack_packet(const Packet& packet);

/// Packs a whole window, 32 pairs per packet.
std::vector<Packet> pack_window(const Window& window);

// Accumulated transition counts, split by lane.
struct LaneStats {
  std::uint64_t total_input_bt = 0;
  std::uint64_t total_weight_bt = 0;
  std::uint64_t flit_boundary_count = 0;
  std::uint64_t packets_sent = 0;

  double input_avg() const;
  double weight_avg() const;
  double overall_avg() const;  // (input + weight) / boundaries

  LaneStats& merge(const LaneStats& other);
};

// A 128-bit link. Counts transitions between every consecutive flit pair of
// the transmission, packet boundaries included; the first flit ever sent
// establishes the line state and contributes none.
class Link {
 public:
  void transmit(const Packet& packet);
  void transmit(std::span<const Packet> packets);

  const LaneStats& stats() const { return stats_; }

 private:
  LaneStats stats_;
  std::optional<Flit> last_flit_;
};

// Random-traffic experiment configuration (Table 1 reproduction). Packet p's
// pairs come from packet_rng(seed, p) regardless of strategy, so every
// strategy reorders identical traffic. Sorting windows cover window_packets
// consecutive packets (the trailing window may be shorter).
struct LinkExperimentConfig {
  std::uint64_t packets = 100000;
  std::uint64_t seed = 1;
  std::uint32_t window_packets = 32;
  TrafficModel traffic = TrafficModel::PopcountUniform;
  BucketSpec buckets = BucketSpec::app_default();  // key space for App
};

struct ExperimentRow {
  std::string strategy;
  std::uint64_t packets = 0;
  double input_bt_avg = 0.0;
  double weight_bt_avg = 0.0;
  double overall_avg = 0.0;
  double reduction_pct = 0.0;  // vs NonOptimized on the same traffic
  std::uint64_t seed = 0;
};

/// Stats of one strategy over the configured random traffic.
LaneStats run_strategy_stats(const LinkExperimentConfig& config,
                             const OrderingStrategy& strategy);

/// Runs `strategy` and the NonOptimized baseline on identical traffic and
/// reports per-boundary averages plus the percentage reduction.
ExperimentRow run_table1_experiment(const LinkExperimentConfig& config,
                                    const OrderingStrategy& strategy);

ExperimentRow make_row(const LinkExperimentConfig& config, const OrderingStrategy& strategy,
                       const LaneStats& stats, const LaneStats& baseline);

/// "strategy,packets,input_bt_avg,weight_bt_avg,overall_avg,reduction_pct,seed"
std::string experiment_csv_header();
/// One CSV row, floats with 3 decimal places.
std::string to_csv(const ExperimentRow& row);

}  // namespace psusim
