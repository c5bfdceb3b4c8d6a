#include <cmath>
#include <stdexcept>

#include "doctest.h"
#include "owlbench/gen.hpp"

using namespace owlbench;

TEST_CASE("path generator") {
  Graph g = generate({GraphKind::kPath, 5, 0, 4, 1});
  CHECK(g.num_edges() == 4);
  auto p = distance_profile(g, 0, 5);
  CHECK(p.eccentricity == 4);
}

TEST_CASE("erdos-renyi extremes and determinism") {
  CHECK(generate({GraphKind::kErdosRenyi, 10, 0.0, 4, 3}).num_edges() == 0);
  CHECK(generate({GraphKind::kErdosRenyi, 10, 1.0, 4, 3}).num_edges() == 45);
  Graph a = generate({GraphKind::kErdosRenyi, 20, 0.3, 4, 99});
  Graph b = generate({GraphKind::kErdosRenyi, 20, 0.3, 4, 99});
  CHECK(a.edges() == b.edges());
  CHECK_THROWS_AS((generate({GraphKind::kErdosRenyi, 10, 1.5, 4, 3})), std::invalid_argument);
}

TEST_CASE("erdos-renyi edge count matches p*C(n,2) within 3 standard errors") {
  const int n = 20, trials = 500;
  const double p = 0.2;
  double sum = 0, sum_sq = 0;
  for (int seed = 0; seed < trials; ++seed) {
    int m = generate({GraphKind::kErdosRenyi, n, p, 4, static_cast<uint64_t>(seed)}).num_edges();
    sum += m;
    sum_sq += static_cast<double>(m) * m;
  }
  double mean = sum / trials;
  double var = sum_sq / trials - mean * mean;
  double expected = p * n * (n - 1) / 2.0;  // 38
  double stderr_mean = std::sqrt(var / trials);
  CHECK(std::abs(mean - expected) <= 3 * stderr_mean);
}

TEST_CASE("barabasi-albert structure") {
  Graph g = generate({GraphKind::kBarabasiAlbert, 30, 0, 4, 17});
  // 4-clique seed plus 4 edges per arriving node
  CHECK(g.num_edges() == 6 + 26 * 4);
  for (int v = 4; v < 30; ++v) CHECK(g.degree(v) >= 4);
  CHECK_THROWS_AS((generate({GraphKind::kBarabasiAlbert, 4, 0, 4, 1})), std::invalid_argument);
  CHECK_THROWS_AS((generate({GraphKind::kBarabasiAlbert, 10, 0, 0, 1})), std::invalid_argument);
}
