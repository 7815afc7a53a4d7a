#include <doctest.h>

#include "flexbh/serialize.hpp"

using namespace flexbh;

TEST_CASE("topology round trip") {
  const auto t = build_topology(6, ModelDescriptor::locally_connected(3));
  const Json j = topology_to_json(t);
  CHECK(j.dump() == R"({"K":6,"model":"locally_connected","L":3})");
  const auto back = topology_from_json(j);
  CHECK(back.support_pairs() == t.support_pairs());
  CHECK(topology_from_json(Json::parse(R"({"K":4,"model":"linear"})")).K() == 4);
  CHECK_THROWS_AS(topology_from_json(Json::parse(R"({"model":"linear"})")), std::invalid_argument);
  CHECK_THROWS_AS(topology_from_json(Json::parse(R"({"K":4,"model":"ring"})")), std::invalid_argument);
}

TEST_CASE("assignment round trip uses 1-based indices") {
  const auto a = canonical_flexible_assignment(4, 1);
  const Json j = assignment_to_json(a);
  CHECK(j.dump() == R"({"K":4,"transmit_sets":[[1,2],[2],[],[3]]})");
  CHECK(assignment_from_json(j) == a);
  CHECK_THROWS_AS(assignment_from_json(Json::parse(R"({"K":2,"transmit_sets":[[0],[]]})")),
                  std::invalid_argument);
  CHECK_THROWS_AS(assignment_from_json(Json::parse(R"({"K":2,"transmit_sets":[["1"],[]]})")),
                  std::invalid_argument);
}

TEST_CASE("scheme round trip keeps exact beams") {
  const auto t = build_topology(4, ModelDescriptor::linear());
  const auto h = sample_realization(t, 4);
  const auto s = design_beams(canonical_scheme(4, 1), h);
  const Json j = scheme_to_json(s);
  CHECK(j.at("cancellation_sets").at("1") == Json::array({2}));
  CHECK(j.at("beams").at("1").at("1") == "1/1");
  const auto back = scheme_from_json(j);
  CHECK(back.served == s.served);
  CHECK(back.deactivated_tx == s.deactivated_tx);
  CHECK(back.cancellation_sets == s.cancellation_sets);
  CHECK(back.beams == s.beams);
  CHECK(verify_scheme(back, h).sum_dof == 3);
  CHECK_FALSE(scheme_to_json(canonical_scheme(4, 1)).contains("beams"));
}

TEST_CASE("malformed scheme documents are rejected") {
  Json j = scheme_to_json(canonical_scheme(4, 1));
  j["cancellation_sets"]["x"] = Json::array();
  CHECK_THROWS_AS(scheme_from_json(j), std::invalid_argument);
  Json k = scheme_to_json(canonical_scheme(4, 1));
  k["served"] = Json::array({1, 9});
  CHECK_THROWS_AS(scheme_from_json(k), std::invalid_argument);
  Json b = scheme_to_json(canonical_scheme(4, 1));
  b["beams"] = {{"1", {{"1", 0.5}}}};
  CHECK_THROWS_AS(scheme_from_json(b), std::invalid_argument);
}

TEST_CASE("result payloads print rationals as p/q") {
  const DoFResult r{3, {1, 1, 0, 1}, Rational(3, 4)};
  CHECK(dof_to_json(r).dump() == R"({"sum_dof":3,"per_user":[1,1,0,1],"fraction":"3/4"})");
  const BoundWitness w{1, {2, 3, 4}, {3}, 3};
  CHECK(witness_to_json(w).dump() == R"({"M":1,"S":[2,3,4],"A_bar":[3],"bound":3})");
}
