#include "psusim/cost.hpp"

#include <stdexcept>

#include "doctest.h"

using namespace psusim;

TEST_CASE("estimate_cost is strictly increasing in bins and elements") {
  for (int n : {25, 49}) {
    double prev = -1.0;
    for (int bins = 1; bins <= 9; ++bins) {
      const CostReport r = estimate_cost(n, bins);
      CHECK(r.total > prev);
      CHECK(r.total == r.popcount_units + r.sort_units);
      prev = r.total;
    }
  }
  for (int bins : {1, 4, 9}) {
    CHECK(estimate_cost(26, bins).total > estimate_cost(25, bins).total);
    CHECK(estimate_cost(50, bins).total > estimate_cost(49, bins).total);
  }
}

TEST_CASE("exact unit always costs at least as much as any bucketed unit") {
  const double acc = estimate_cost(25, 9).total;
  for (int k = 1; k < 9; ++k) CHECK(estimate_cost(25, k).total < acc);
}

TEST_CASE("identical parameters give identical reports") {
  const CostReport a = estimate_cost(25, 4);
  const CostReport b = estimate_cost(25, 4);
  CHECK(a.total == b.total);
  CHECK(a.popcount_units == b.popcount_units);
  CHECK(a.sort_units == b.sort_units);
}

TEST_CASE("default coefficients land near the measured relative reductions") {
  const CostReport acc = estimate_cost(25, 9);
  const CostReport app = estimate_cost(25, 4);

  const double popcount_red = 100.0 * (acc.popcount_units - app.popcount_units) /
                              acc.popcount_units;
  CHECK(popcount_red == doctest::Approx(25.0));

  const double sorting_red = 100.0 * (acc.sort_units - app.sort_units) / acc.sort_units;
  CHECK(sorting_red >= 30.0);
  CHECK(sorting_red <= 45.0);

  CHECK(app.total < acc.total);
}

TEST_CASE("bitonic comparator proxy exceeds the counting-sort datapath") {
  CHECK(bitonic_cost_proxy(32) > estimate_cost(32, 9).total);
  CHECK(bitonic_cost_proxy(25) > estimate_cost(25, 9).total);
}

TEST_CASE("parameter validation") {
  CHECK_THROWS_AS(estimate_cost(0, 4), std::invalid_argument);
  CHECK_THROWS_AS(estimate_cost(25, 0), std::invalid_argument);
  CHECK_THROWS_AS(estimate_cost(25, 10), std::invalid_argument);
  CHECK_THROWS_AS(bitonic_cost_proxy(0), std::invalid_argument);
}
