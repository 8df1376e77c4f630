#include "psusim/cost.hpp"

#include <stdexcept>

#include "psusim/sort_unit.hpp"

namespace psusim {

namespace {

int log2_ceil(int x) {
  int bits = 0;
  while ((1 << bits) < x) ++bits;
  return bits;
}

}  // namespace

CostReport estimate_cost(int n, int bins, int word_width, const CostCoefficients& coeff) {
  if (n < 1) throw std::invalid_argument("estimate_cost: n must be >= 1");
  if (word_width < 1) throw std::invalid_argument("estimate_cost: word_width must be >= 1");
  if (bins < 1 || bins > word_width + 1) {
    throw std::invalid_argument("estimate_cost: bins outside [1, word_width + 1]");
  }
  CostReport report;
  report.n = n;
  report.bins = bins;
  report.word_width = word_width;

  const double per_word = 2.0 * coeff.popcount_lut + coeff.popcount_add;
  const double discount = bins < word_width + 1 ? 1.0 - coeff.popcount_discount : 1.0;
  report.popcount_units = n * per_word * discount;

  report.sort_units = coeff.onehot_lane * n * bins + coeff.histogram_bin * bins +
                      coeff.prefix_adder * bins + coeff.index_route * n * log2_ceil(bins) +
                      coeff.element_base * n;
  report.total = report.popcount_units + report.sort_units;
  return report;
}

double bitonic_cost_proxy(int n, const CostCoefficients& coeff) {
  if (n < 1) throw std::invalid_argument("bitonic_cost_proxy: n must be >= 1");
  std::uint64_t padded = 1;
  while (padded < static_cast<std::uint64_t>(n)) padded <<= 1;
  const double per_word = 2.0 * coeff.popcount_lut + coeff.popcount_add;
  return n * per_word + coeff.comparator * batcher_comparator_count(padded);
}

}  // namespace psusim
