#pragma once

// Bit-level primitives for the 128-bit link model: 8-bit words, flits,
// packets, and transition counting between consecutive flits.

#include <array>
#include <bitset>
#include <cstdint>

namespace psusim {

inline constexpr int kWordBits = 8;
inline constexpr int kWordsPerLane = 8;   // words per lane per flit
inline constexpr int kFlitBits = 128;     // 8 input words + 8 weight words
inline constexpr int kFlitsPerPacket = 4;
inline constexpr int kPairsPerPacket = kWordsPerLane * kFlitsPerPacket;  // 32

// One 8-bit payload element on the link.
using Word = std::uint8_t;

// Ones count per 4-bit value. popcount() below deliberately goes through two
// nibble lookups plus an add, mirroring the two-LUT-and-adder popcount
// datapath the cost model charges for.
inline constexpr std::array<std::uint8_t, 16> kNibbleOnes = {
    0, 1, 1, 2, 1, 2, 2, 3, 1, 2, 2, 3, 2, 3, 3, 4};

/// Number of set bits in a word, in [0, 8].
constexpr int popcount(Word w) {
  return kNibbleOnes[w & 0x0F] + kNibbleOnes[(w >> 4) & 0x0F];
}

/// Number of bit positions where a and b differ, in [0, 8].
constexpr int hamming_distance(Word a, Word b) {
  return popcount(static_cast<Word>(a ^ b));
}

// One 128-bit link beat. The input lane occupies the low 64 bits of the
// serialized flit, the weight lane the high 64 bits.
struct Flit {
  std::array<Word, kWordsPerLane> input_lane{};
  std::array<Word, kWordsPerLane> weight_lane{};

  bool operator==(const Flit&) const = default;
};

// Atomic transfer unit: 4 flits carrying 32 (input, weight) word pairs.
struct Packet {
  std::array<Flit, kFlitsPerPacket> flits{};

  bool operator==(const Packet&) const = default;
};

using FlitBits = std::bitset<kFlitBits>;

// Serialized layout: bit i of input_lane[j] is flit bit 8*j + i;
// bit i of weight_lane[j] is flit bit 64 + 8*j + i.
FlitBits serialize_flit(const Flit& f);
Flit deserialize_flit(const FlitBits& bits);

// Per-lane bit transitions between two consecutive flits.
struct LaneTransitions {
  int input = 0;
  int weight = 0;

  int total() const { return input + weight; }
  bool operator==(const LaneTransitions&) const = default;
};

/// Position-wise Hamming distance between two flits, split by lane.
/// input + weight equals the 128-bit Hamming distance of the serialized flits.
LaneTransitions flit_bt(const Flit& prev, const Flit& next);

}  // namespace psusim
