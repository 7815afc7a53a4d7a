#include <doctest.h>

#include "flexbh/topology.hpp"

using namespace flexbh;

TEST_CASE("linear model support for K=3") {
  const auto t = build_topology(3, ModelDescriptor::linear());
  const std::vector<std::pair<int, int>> want = {{1, 1}, {2, 1}, {2, 2}, {3, 2}, {3, 3}};
  CHECK(t.support_pairs() == want);
  CHECK(t.receivers_hearing(3) == std::vector<int>{3});
  CHECK_FALSE(t.support(1, 2));
}

TEST_CASE("single user") {
  const auto t = build_topology(1, ModelDescriptor::linear());
  CHECK(t.support_pairs() == std::vector<std::pair<int, int>>{{1, 1}});
}

TEST_CASE("two-dimensional model") {
  const auto t = build_topology(9, ModelDescriptor::two_dimensional());
  CHECK(t.side() == 3);
  CHECK(t.receivers_hearing(1) == std::vector<int>{1, 2, 4, 5});
  CHECK(t.receivers_hearing(9) == std::vector<int>{9});
  CHECK_THROWS_AS(build_topology(8, ModelDescriptor::two_dimensional()), std::invalid_argument);
}

TEST_CASE("locally connected model") {
  // L=2: transmitter j reaches receivers j-1, j, j+1.
  const auto t = build_topology(6, ModelDescriptor::locally_connected(2));
  CHECK(t.receivers_hearing(3) == std::vector<int>{2, 3, 4});
  CHECK(t.receivers_hearing(1) == std::vector<int>{1, 2});
  CHECK(t.transmitters_heard_by(6) == std::vector<int>{5, 6});
  CHECK(t.unclipped_reach(1) == std::pair<int, int>{0, 2});
  // L=3: receivers j-1 .. j+2.
  const auto t3 = build_topology(8, ModelDescriptor::locally_connected(3));
  CHECK(t3.receivers_hearing(4) == std::vector<int>{3, 4, 5, 6});
  CHECK_THROWS_AS(build_topology(3, ModelDescriptor::locally_connected(3)), std::invalid_argument);
  CHECK_THROWS_AS(build_topology(3, ModelDescriptor::locally_connected(0)), std::invalid_argument);
}

TEST_CASE("every receiver hears its own transmitter in all models") {
  for (const auto& t : {build_topology(7, ModelDescriptor::linear()),
                        build_topology(7, ModelDescriptor::locally_connected(4)),
                        build_topology(16, ModelDescriptor::two_dimensional())})
    for (int i = 1; i <= t.K(); ++i) CHECK(t.support(i, i));
}

TEST_CASE("realizations") {
  const auto t3 = build_topology(3, ModelDescriptor::linear());
  const auto h = sample_realization(t3, 7);
  int nonzero = 0;
  for (int i = 1; i <= 3; ++i)
    for (int j = 1; j <= 3; ++j) {
      CHECK((h.coefficient(i, j) != 0) == t3.support(i, j));
      nonzero += h.coefficient(i, j) != 0;
    }
  CHECK(nonzero == 5);

  const auto again = sample_realization(t3, 7);
  for (const auto& [i, j] : t3.support_pairs()) CHECK(h.coefficient(i, j) == again.coefficient(i, j));

  const auto t4 = build_topology(4, ModelDescriptor::linear());
  const auto a = sample_realization(t4, 1), b = sample_realization(t4, 2);
  bool differ = false;
  for (const auto& [i, j] : t4.support_pairs()) differ |= a.coefficient(i, j) != b.coefficient(i, j);
  CHECK(differ);
}

TEST_CASE("explicit realizations are validated") {
  const auto t = build_topology(2, ModelDescriptor::linear());
  std::map<std::pair<int, int>, Rational> c = {{{1, 1}, 1}, {{2, 1}, 2}, {{2, 2}, 3}};
  CHECK_NOTHROW(ChannelRealization(t, c));
  c[{2, 2}] = 0;
  CHECK_THROWS_AS(ChannelRealization(t, c), std::invalid_argument);
  c[{2, 2}] = 3;
  c[{1, 2}] = 5;
  CHECK_THROWS_AS(ChannelRealization(t, c), std::invalid_argument);
}
