#include <doctest.h>

#include "flexbh/linalg.hpp"
#include "flexbh/rational.hpp"

using namespace flexbh;

TEST_CASE("rational formatting and parsing") {
  CHECK(to_string(Rational(6, 4)) == "3/2");
  CHECK(to_string(Rational(3)) == "3/1");
  CHECK(to_string(Rational(0)) == "0/1");
  CHECK(parse_rational("2/4") == Rational(1, 2));
  CHECK(parse_rational("-3/9") == Rational(-1, 3));
  CHECK(parse_rational("7") == Rational(7));
  CHECK_THROWS_AS(parse_rational("1/0"), std::invalid_argument);
  CHECK_THROWS_AS(parse_rational("x"), std::invalid_argument);
  CHECK_THROWS_AS(parse_rational(""), std::invalid_argument);
}

TEST_CASE("rank and nullspace on a hand-checked matrix") {
  // Rows (1 2 3), (2 4 6), (1 0 1): rank 2, kernel spanned by (-1, -1, 1).
  RationalMatrix m(3, 3);
  const int v[3][3] = {{1, 2, 3}, {2, 4, 6}, {1, 0, 1}};
  for (int r = 0; r < 3; ++r)
    for (int c = 0; c < 3; ++c) m(r, c) = v[r][c];
  CHECK(rank(m) == 2);
  const auto ns = nullspace(m);
  REQUIRE(ns.size() == 1);
  CHECK(ns[0][0] == -1);
  CHECK(ns[0][1] == -1);
  CHECK(ns[0][2] == 1);
}

TEST_CASE("modular rank agrees with exact rank") {
  RationalMatrix m(3, 4);
  ModularMatrix q(3, 4);
  const int v[3][4] = {{1, 2, 0, 5}, {0, 1, 1, 1}, {1, 3, 1, 6}};
  for (int r = 0; r < 3; ++r)
    for (int c = 0; c < 4; ++c) {
      m(r, c) = v[r][c];
      q(r, c) = ModularMatrix::reduce(Rational(v[r][c]));
    }
  CHECK(rank(m) == 2);
  CHECK(q.rank() == 2);
  CHECK(ModularMatrix::reduce(Rational(-1)) == ModularMatrix::kPrime - 1);
}

TEST_CASE("empty matrices") {
  CHECK(rank(RationalMatrix(0, 3)) == 0);
  CHECK(nullspace(RationalMatrix(0, 2)).size() == 2);
}
