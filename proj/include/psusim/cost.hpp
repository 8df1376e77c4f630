#pragma once

// Analytic relative-cost model for the sorting-unit datapath. Everything
// here is in dimensionless relative units: the model encodes how cost scales
// with bin count B and element count n, not absolute area.

#include <cstdint>

namespace psusim {

// Relative unit weights. Defaults are calibrated so that n=25, W=8 lands
// near the measured relative reductions of the 4-bucket unit versus the
// exact 9-bin unit (~25% in the popcount stage, ~37% in the sorting stages).
struct CostCoefficients {
  double onehot_lane = 1.0;     // per element-bin one-hot lane
  double histogram_bin = 1.0;   // per-bin counter
  double prefix_adder = 1.0;    // per-bin prefix-sum adder
  double index_route = 1.0;     // per element, per key bit routed
  double element_base = 6.4;    // per-element index register + scatter port,
                                // independent of B
  double popcount_lut = 4.0;    // one 4-bit ones-count LUT
  double popcount_add = 3.0;    // nibble-sum adder
  double popcount_discount = 0.25;  // LUT simplification when B < W+1: the
                                    // synthesizer prunes count bits that
                                    // cannot affect the bucket index
  double comparator = 8.0;      // bitonic compare-exchange (key + index)
};

struct CostReport {
  double popcount_units = 0.0;
  double sort_units = 0.0;
  double total = 0.0;  // popcount_units + sort_units
  int n = 0;
  int bins = 0;
  int word_width = 0;
};

/// Relative datapath cost of an n-element sorting unit with B bins over
/// W-bit words. sort_units = n*B one-hot lanes + B histogram bins + B prefix
/// adders + n*ceil(log2 B) index routing + the per-element base; the
/// popcount stage earns the discount whenever B < W+1. Strictly increasing
/// in both B and n. Throws std::invalid_argument for B outside [1, W+1].
CostReport estimate_cost(int n, int bins, int word_width = 8,
                         const CostCoefficients& coeff = CostCoefficients{});

/// Relative cost of a Batcher bitonic implementation of the same unit:
/// undiscounted popcount stage plus one comparator weight per
/// compare-exchange of the (padded) network.
double bitonic_cost_proxy(int n, const CostCoefficients& coeff = CostCoefficients{});

}  // namespace psusim
