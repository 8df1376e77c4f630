#include "psusim/bits.hpp"

namespace psusim {

FlitBits serialize_flit(const Flit& f) {
  FlitBits bits;
  for (int j = 0; j < kWordsPerLane; ++j) {
    for (int i = 0; i < kWordBits; ++i) {
      if (f.input_lane[j] >> i & 1) bits.set(kWordBits * j + i);
      if (f.weight_lane[j] >> i & 1) bits.set(64 + kWordBits * j + i);
    }
  }
  return bits;
}

Flit deserialize_flit(const FlitBits& bits) {
  Flit f;
  for (int j = 0; j < kWordsPerLane; ++j) {
    for (int i = 0; i < kWordBits; ++i) {
      if (bits.test(kWordBits * j + i)) f.input_lane[j] |= Word(1) << i;
      if (bits.test(64 + kWordBits * j + i)) f.weight_lane[j] |= Word(1) << i;
    }
  }
  return f;
}

LaneTransitions flit_bt(const Flit& prev, const Flit& next) {
  LaneTransitions t;
  for (int j = 0; j < kWordsPerLane; ++j) {
    t.input += hamming_distance(prev.input_lane[j], next.input_lane[j]);
    t.weight += hamming_distance(prev.weight_lane[j], next.weight_lane[j]);
  }
  return t;
}

}  // namespace psusim
