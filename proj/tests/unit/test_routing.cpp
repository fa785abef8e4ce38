#include <gtest/gtest.h>

#include "cams/errors.hpp"
#include "cams/rng.hpp"
#include "cams/routing.hpp"

using namespace cams;

namespace {

Matrix case_travel() {
  const double d[4][4] = {{0, 22.1422, 34.4786, 8.9541},
                          {22.1422, 0, 19.3171, 14.6245},
                          {34.4786, 19.3171, 0, 25.5756},
                          {8.9541, 14.6245, 25.5756, 0}};
  Matrix m(4, 4);
  for (std::size_t i = 0; i < 4; ++i) {
    for (std::size_t j = 0; j < 4; ++j) m(i, j) = d[i][j];
  }
  return m;
}

routing::SurveillanceGraph case_graph() {
  return routing::SurveillanceGraph::complete(case_travel(), {10, 10, 10, 10}, {1, 1, 1, 1}, {40, 40, 40, 40});
}

}  // namespace

TEST(Routing, LikelihoodRoutingFrozenValue) {
  const auto q = routing::likelihood_routing(std::vector<double>{5.0, 0.0, 0.0, 0.0});
  EXPECT_NEAR(q.q[0], 0.3983894039865648, 1e-15);
  EXPECT_NEAR(q.q[1], (1.0 - q.q[0]) / 3.0, 1e-15);
}

TEST(Routing, ExpectedCycleTime) {
  EXPECT_NEAR(routing::expected_cycle_time(routing::RoutingPolicy::uniform(4), case_graph()), 25.6365125, 1e-12);
  EXPECT_NEAR(routing::expected_cycle_time({{0.4, 0.2, 0.2, 0.2}}, case_graph()), 25.25336, 1e-12);
}

TEST(Routing, MetropolisHastingsRespectsEdges) {
  auto g = case_graph();
  g.adjacency(0, 2) = g.adjacency(2, 0) = 0.0;
  const auto a = routing::metropolis_hastings(g, {0.1, 0.2, 0.3, 0.4});
  EXPECT_EQ(a(0, 2), 0.0);
  for (std::size_t i = 0; i < 4; ++i) {
    double row = 0.0;
    for (std::size_t j = 0; j < 4; ++j) row += a(i, j);
    EXPECT_NEAR(row, 1.0, 1e-15);
  }
}

TEST(Routing, MetropolisHastingsRejectsZeroTarget) {
  EXPECT_THROW(routing::metropolis_hastings(case_graph(), {0.5, 0.5, 0.0, 0.0}), DomainError);
}

TEST(Routing, SamplingIsReproducible) {
  RngStream a(42, "routing");
  RngStream b(42, "routing");
  const auto q = routing::RoutingPolicy::uniform(4);
  for (int i = 0; i < 100; ++i) EXPECT_EQ(routing::sample_next_region(q, a), routing::sample_next_region(q, b));
}

TEST(Routing, NamedStreamsDiffer) {
  RngStream a(42, "routing");
  RngStream b(42, "decisions");
  EXPECT_NE(a.uniform(), b.uniform());
}
