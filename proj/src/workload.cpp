#include "psusim/workload.hpp"

#include <limits>
#include <stdexcept>

namespace psusim {

void ConvConfig::validate() const {
  if (kernel < 1 || kernel % 2 == 0) {
    throw std::invalid_argument("ConvConfig: kernel must be odd and positive");
  }
  if (kernel > input_h || kernel > input_w) {
    throw std::invalid_argument("ConvConfig: kernel exceeds input dimensions");
  }
  if (stride != 1) throw std::invalid_argument("ConvConfig: only stride 1 is modeled");
  if (num_filters < 1) throw std::invalid_argument("ConvConfig: need at least one filter");
}

OutputMap golden_conv(const Image& image, const Kernel& kernel, const ConvConfig& config,
                      std::int32_t bias) {
  config.validate();
  if (image.h != config.input_h || image.w != config.input_w || kernel.k != config.kernel) {
    throw std::invalid_argument("golden_conv: image/kernel dimensions do not match config");
  }
  OutputMap out;
  out.h = config.output_h();
  out.w = config.output_w();
  out.v.resize(static_cast<std::size_t>(out.h) * out.w);
  for (int r = 0; r < out.h; ++r) {
    for (int c = 0; c < out.w; ++c) {
      std::int32_t acc = bias;
      for (int i = 0; i < kernel.k; ++i) {
        for (int j = 0; j < kernel.k; ++j) {
          acc += static_cast<std::int32_t>(image.at(r + i, c + j)) *
                 static_cast<std::int32_t>(kernel.at(i, j));
        }
      }
      out.at(r, c) = acc;
    }
  }
  return out;
}

OutputMap golden_pool(const OutputMap& map) {
  if (map.h % 2 != 0 || map.w % 2 != 0) {
    throw std::invalid_argument("golden_pool: dimensions must be even");
  }
  OutputMap out;
  out.h = map.h / 2;
  out.w = map.w / 2;
  out.v.resize(static_cast<std::size_t>(out.h) * out.w);
  for (int r = 0; r < out.h; ++r) {
    for (int c = 0; c < out.w; ++c) {
      const std::int32_t sum = map.at(2 * r, 2 * c) + map.at(2 * r, 2 * c + 1) +
                               map.at(2 * r + 1, 2 * c) + map.at(2 * r + 1, 2 * c + 1);
      out.at(r, c) = sum / 4;  // truncating division
    }
  }
  return out;
}

std::vector<Tile> generate_tiles(const Image& image, std::span<const Kernel> kernels,
                                 const ConvConfig& config) {
  config.validate();
  if (static_cast<int>(kernels.size()) != config.num_filters) {
    throw std::invalid_argument("generate_tiles: kernel count does not match num_filters");
  }
  std::vector<Tile> tiles;
  tiles.reserve(static_cast<std::size_t>(config.output_h()) * config.output_w() *
                config.num_filters);
  int seq = 0;
  for (int r = 0; r < config.output_h(); ++r) {
    for (int c = 0; c < config.output_w(); ++c) {
      for (int f = 0; f < config.num_filters; ++f) {
        Tile t;
        t.kernel = config.kernel;
        t.pe_id = seq % kNumPes;
        t.filter = f;
        t.out_row = r;
        t.out_col = c;
        t.pairs.reserve(static_cast<std::size_t>(config.kernel) * config.kernel);
        for (int i = 0; i < config.kernel; ++i) {
          for (int j = 0; j < config.kernel; ++j) {
            t.pairs.push_back({image.at(r + i, c + j),
                               static_cast<Word>(kernels[f].at(i, j))});
          }
        }
        tiles.push_back(std::move(t));
        ++seq;
      }
    }
  }
  return tiles;
}

PairStream tile_stream(const Tile& tile) {
  PairStream s;
  s.pairs = tile.pairs;
  s.tile_shape = TileShape{static_cast<std::uint32_t>(tile.kernel),
                           static_cast<std::uint32_t>(tile.kernel)};
  return s;
}

PeResult pe_accumulate(std::span<const Pair> pairs, int pe_id) {
  std::int64_t acc = 0;
  for (const Pair& p : pairs) {
    acc += static_cast<std::int64_t>(p.input) *
           static_cast<std::int64_t>(static_cast<std::int8_t>(p.weight));
  }
  if (acc > std::numeric_limits<std::int32_t>::max() ||
      acc < std::numeric_limits<std::int32_t>::min()) {
    throw std::overflow_error("pe_accumulate: sum leaves 32-bit signed range");
  }
  return {static_cast<std::int32_t>(acc), pe_id};
}

WorkloadResult run_workload_experiment(const Image& image, std::span<const Kernel> kernels,
                                       const ConvConfig& config,
                                       const OrderingStrategy& strategy,
                                       std::span<const std::int32_t> biases) {
  if (!biases.empty() && static_cast<int>(biases.size()) != config.num_filters) {
    throw std::invalid_argument("run_workload_experiment: bias count mismatch");
  }
  const std::vector<Tile> tiles = generate_tiles(image, kernels, config);

  std::vector<OutputMap> conv(config.num_filters);
  for (auto& m : conv) {
    m.h = config.output_h();
    m.w = config.output_w();
    m.v.assign(static_cast<std::size_t>(m.h) * m.w, 0);
  }

  Link link;
  std::vector<Pair> received;
  for (const Tile& tile : tiles) {
    const Window ordered = apply_ordering(make_window(tile_stream(tile)), strategy);
    const std::vector<Packet> packets = pack_window(ordered);
    link.transmit(packets);

    // Receiver side: the zero padding multiplies out to zero, so the whole
    // unpacked window feeds the PE.
    received.clear();
    for (const Packet& pkt : packets) {
      const auto pairs = unpack_packet(pkt);
      received.insert(received.end(), pairs.begin(), pairs.end());
    }
    const PeResult pe = pe_accumulate(received, tile.pe_id);
    const std::int32_t bias = biases.empty() ? 0 : biases[tile.filter];
    conv[tile.filter].at(tile.out_row, tile.out_col) = pe.accumulator + bias;
  }

  WorkloadResult result;
  result.stats = link.stats();
  result.correct = true;
  result.pooled.reserve(config.num_filters);
  result.golden_pooled.reserve(config.num_filters);
  for (int f = 0; f < config.num_filters; ++f) {
    const std::int32_t bias = biases.empty() ? 0 : biases[f];
    result.pooled.push_back(golden_pool(conv[f]));
    result.golden_pooled.push_back(golden_pool(golden_conv(image, kernels[f], config, bias)));
    if (result.pooled.back() != result.golden_pooled.back()) result.correct = false;
  }
  return result;
}

Image make_gradient_image(int h, int w) {
  Image img{h, w, {}};
  img.px.resize(static_cast<std::size_t>(h) * w);
  for (int r = 0; r < h; ++r) {
    for (int c = 0; c < w; ++c) img.at(r, c) = static_cast<Word>((8 * r + c) & 0xFF);
  }
  return img;
}

Image make_checkerboard_image(int h, int w) {
  Image img{h, w, {}};
  img.px.resize(static_cast<std::size_t>(h) * w);
  for (int r = 0; r < h; ++r) {
    for (int c = 0; c < w; ++c) img.at(r, c) = (r + c) % 2 ? 0xFF : 0x00;
  }
  return img;
}

Image make_random_image(int h, int w, std::uint64_t seed) {
  Image img{h, w, {}};
  img.px.resize(static_cast<std::size_t>(h) * w);
  SplitMix64 rng(stream_seed(seed, 0x494D47));  // "IMG"
  for (Word& px : img.px) px = random_word(rng, TrafficModel::PopcountUniform);
  return img;
}

std::vector<Kernel> make_random_kernels(int count, int k, std::uint64_t seed) {
  std::vector<Kernel> kernels(count);
  SplitMix64 rng(stream_seed(seed, 0x4B524E));  // "KRN"
  for (Kernel& kernel : kernels) {
    kernel.k = k;
    kernel.w.resize(static_cast<std::size_t>(k) * k);
    for (auto& w : kernel.w) w = static_cast<std::int8_t>(rng.next() & 0xFF);
  }
  return kernels;
}

}  // namespace psusim
