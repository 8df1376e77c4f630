#include "psusim/link.hpp"

#include <algorithm>
#include <cstdio>
#include <stdexcept>

namespace psusim {

Window make_window(const PairStream& stream) {
  if (stream.tile_shape) {
    const auto& s = *stream.tile_shape;
    if (static_cast<std::size_t>(s.rows) * s.cols != stream.pairs.size()) {
      throw std::invalid_argument("make_window: tile_shape does not match pair count");
    }
  }
  Window w;
  w.payload = stream.pairs.size();
  w.tile_shape = stream.tile_shape;
  const std::size_t packets = (w.payload + kPairsPerPacket - 1) / kPairsPerPacket;
  w.pairs = stream.pairs;
  w.pairs.resize(std::max<std::size_t>(packets, 1) * kPairsPerPacket);
  return w;
}

std::string_view OrderingStrategy::name() const {
  switch (kind) {
    case Kind::NonOptimized: return "none";
    case Kind::ColumnMajor: return "colmajor";
    case Kind::Acc: return "acc";
    case Kind::App: return "app";
  }
  return "?";
}

namespace {

void validate_window(const Window& w) {
  if (w.pairs.empty() || w.pairs.size() % kPairsPerPacket != 0) {
    throw std::invalid_argument("apply_ordering: window must hold a whole number of packets");
  }
  if (w.payload > w.pairs.size()) {
    throw std::invalid_argument("apply_ordering: payload exceeds window size");
  }
  if (w.tile_shape) {
    const auto& s = *w.tile_shape;
    if (static_cast<std::size_t>(s.rows) * s.cols != w.payload) {
      throw std::invalid_argument("apply_ordering: tile_shape does not match payload");
    }
  }
}

}  // namespace

Window apply_ordering(const Window& window, const OrderingStrategy& strategy) {
  validate_window(window);
  switch (strategy.kind) {
    case OrderingStrategy::Kind::NonOptimized:
      return window;
    case OrderingStrategy::Kind::ColumnMajor: {
      if (!window.tile_shape) return window;  // no source tile to re-read
      Window out = window;
      const auto [rows, cols] = *window.tile_shape;
      std::size_t p = 0;
      for (std::uint32_t c = 0; c < cols; ++c) {
        for (std::uint32_t r = 0; r < rows; ++r) {
          out.pairs[p++] = window.pairs[static_cast<std::size_t>(r) * cols + c];
        }
      }
      return out;
    }
    case OrderingStrategy::Kind::Acc:
    case OrderingStrategy::Kind::App: {
      if (window.payload == 0) return window;
      std::vector<Word> inputs(window.payload);
      for (std::size_t i = 0; i < window.payload; ++i) inputs[i] = window.pairs[i].input;
      const SortTrace trace = sort_unit(inputs, strategy.spec, strategy.order);
      Window out = window;
      for (std::size_t p = 0; p < window.payload; ++p) {
        out.pairs[p] = window.pairs[trace.output[p]];
      }
      return out;
    }
  }
  throw std::logic_error("apply_ordering: unknown strategy");
}

Packet pack_packet(std::span<const Pair> pairs) {
  if (pairs.size() != kPairsPerPacket) {
    throw std::invalid_argument("pack_packet: expected exactly 32 pairs");
  }
  Packet packet;
  for (int f = 0; f < kFlitsPerPacket; ++f) {
    for (int j = 0; j < kWordsPerLane; ++j) {
      const Pair& p = pairs[f * kWordsPerLane + j];
      packet.flits[f].input_lane[j] = p.input;
      packet.flits[f].weight_lane[j] = p.weight;
    }
  }
  return packet;
}

std::array<Pair, kPairsPerPacket> unpack_packet(const Packet& packet) {
  std::array<Pair, kPairsPerPacket> pairs;
  for (int f = 0; f < kFlitsPerPacket; ++f) {
    for (int j = 0; j < kWordsPerLane; ++j) {
      pairs[f * kWordsPerLane + j] = {packet.flits[f].input_lane[j],
                                      packet.flits[f].weight_lane[j]};
    }
  }
  return pairs;
}

std::vector<Packet> pack_window(const Window& window) {
  if (window.pairs.empty() || window.pairs.size() % kPairsPerPacket != 0) {
    throw std::invalid_argument("pack_window: window must hold a whole number of packets");
  }
  std::vector<Packet> packets;
  packets.reserve(window.pairs.size() / kPairsPerPacket);
  for (std::size_t off = 0; off < window.pairs.size(); off += kPairsPerPacket) {
    packets.push_back(pack_packet(std::span(window.pairs).subspan(off, kPairsPerPacket)));
  }
  return packets;
}

double LaneStats::input_avg() const {
  return flit_boundary_count ? static_cast<double>(total_input_bt) / flit_boundary_count : 0.0;
}

double LaneStats::weight_avg() const {
  return flit_boundary_count ? static_cast<double>(total_weight_bt) / flit_boundary_count : 0.0;
}

double LaneStats::overall_avg() const {
  return flit_boundary_count
             ? static_cast<double>(total_input_bt + total_weight_bt) / flit_boundary_count
             : 0.0;
}

LaneStats& LaneStats::merge(const LaneStats& other) {
  total_input_bt += other.total_input_bt;
  total_weight_bt += other.total_weight_bt;
  flit_boundary_count += other.flit_boundary_count;
  packets_sent += other.packets_sent;
  return *this;
}

void Link::transmit(const Packet& packet) {
  for (const Flit& f : packet.flits) {
    if (last_flit_) {
      const LaneTransitions t = flit_bt(*last_flit_, f);
      stats_.total_input_bt += t.input;
      stats_.total_weight_bt += t.weight;
      ++stats_.flit_boundary_count;
    }
    last_flit_ = f;
  }
  ++stats_.packets_sent;
}

void Link::transmit(std::span<const Packet> packets) {
  for (const Packet& p : packets) transmit(p);
}

namespace {

// Pairs of packet p, identical across strategies and window sizes.
void fill_packet_pairs(std::span<Pair> out, std::uint64_t seed, std::uint64_t packet_index,
                       TrafficModel traffic) {
  SplitMix64 rng = packet_rng(seed, packet_index);
  for (Pair& p : out) {
    p.input = random_word(rng, traffic);
    p.weight = random_word(rng, traffic);
  }
}

}  // namespace

LaneStats run_strategy_stats(const LinkExperimentConfig& config,
                             const OrderingStrategy& strategy) {
  if (config.packets < 1) throw std::invalid_argument("experiment needs at least one packet");
  if (config.window_packets < 1) {
    throw std::invalid_argument("experiment needs at least one packet per window");
  }
  Link link;
  Window window;
  for (std::uint64_t first = 0; first < config.packets; first += config.window_packets) {
    const std::uint64_t count = std::min<std::uint64_t>(config.window_packets,
                                                        config.packets - first);
    window.pairs.resize(count * kPairsPerPacket);
    window.payload = window.pairs.size();
    window.tile_shape.reset();
    for (std::uint64_t p = 0; p < count; ++p) {
      fill_packet_pairs(std::span(window.pairs).subspan(p * kPairsPerPacket, kPairsPerPacket),
                        config.seed, first + p, config.traffic);
    }
    const Window ordered = apply_ordering(window, strategy);
    link.transmit(pack_window(ordered));
  }
  return link.stats();
}

ExperimentRow make_row(const LinkExperimentConfig& config, const OrderingStrategy& strategy,
                       const LaneStats& stats, const LaneStats& baseline) {
  ExperimentRow row;
  row.strategy = std::string(strategy.name());
  row.packets = config.packets;
  row.seed = config.seed;
  row.input_bt_avg = stats.input_avg();
  row.weight_bt_avg = stats.weight_avg();
  row.overall_avg = stats.overall_avg();
  const double base = baseline.overall_avg();
  row.reduction_pct = base > 0.0 ? 100.0 * (base - stats.overall_avg()) / base : 0.0;
  return row;
}

ExperimentRow run_table1_experiment(const LinkExperimentConfig& config,
                                    const OrderingStrategy& strategy) {
  const LaneStats stats = run_strategy_stats(config, strategy);
  const LaneStats baseline = strategy.kind == OrderingStrategy::Kind::NonOptimized
                                 ? stats
                                 : run_strategy_stats(config, OrderingStrategy::non_optimized());
  return make_row(config, strategy, stats, baseline);
}

std::string experiment_csv_header() {
  return "strategy,packets,input_bt_avg,weight_bt_avg,overall_avg,reduction_pct,seed";
}

std::string to_csv(const ExperimentRow& row) {
  char buf[192];
  std::snprintf(buf, sizeof(buf), "%s,%llu,%.3f,%.3f,%.3f,%.3f,%llu", row.strategy.c_str(),
                static_cast<unsigned long long>(row.packets), row.input_bt_avg,
                row.weight_bt_avg, row.overall_avg, row.reduction_pct,
                static_cast<unsigned long long>(row.seed));
  return buf;
}

}  // namespace psusim
