#include "doctest.h"

#include "umk/io.hpp"

#include <sstream>

using namespace umk;

TEST_CASE("tree JSON: explicit nodes and leaves") {
  Json j = Json::parse(R"({
    "nodes": [{"id": 0, "parent": null, "phi": 1.0},
              {"id": 1, "parent": 0, "phi": 0.5}],
    "leaves": [{"id": 2, "parent": 1, "mass": "1/4"},
               {"id": 3, "parent": 1, "mass": "1/4"},
               {"id": 4, "parent": 0, "mass": "1/2"}]
  })");
  BallTree t = tree_from_json(j);
  CHECK(t.size() == 5);
  CHECK(t.leaf_count() == 3);
  CHECK(t.total_mass_q() == 1);
  CHECK(t.node(t.root()).phi_q == 1);
}

TEST_CASE("tree JSON: padic shorthand") {
  BallTree t = tree_from_json(Json::parse(R"({"padic":{"p":3,"depth":2,"dim":1}})"));
  CHECK(t.leaf_count() == 9);
}

TEST_CASE("rational values: integers, strings, floats decode exactly") {
  CHECK(rational_from_json(Json(3)) == 3);
  CHECK(rational_from_json(Json("7/12")) == Rational(7, 12));
  CHECK(rational_from_json(Json(0.125)) == Rational(1, 8));
  CHECK(rational_from_json(Json(0.1)) != Rational(1, 10));  // binary value, exactly
}

TEST_CASE("sigma JSON variants") {
  CHECK(sigma_from_json(Json::parse(R"({"kind":"standard"})")).kind() == Sigma::Kind::standard);
  Sigma pad = sigma_from_json(Json::parse(R"({"kind":"padic","alpha":1.0,"b":2,"p":2})"));
  CHECK(pad.kind() == Sigma::Kind::padic);
  CHECK(pad.has_exact_padic());
  Sigma tab = sigma_from_json(Json::parse(R"({"kind":"table","points":[[1.0,0.5],[2.0,0.7]]})"));
  CHECK(tab(1.0) == 0.5);
  CHECK_THROWS_AS(sigma_from_json(Json::parse(R"({"kind":"bogus"})")), error);
}

TEST_CASE("walk JSON with rational transition probabilities") {
  Json j = Json::parse(R"({
    "tree": {"nodes": [{"id": 0, "parent": null, "phi": 1.0}],
             "leaves": [{"id": 1, "parent": 0, "mass": "1/2"},
                        {"id": 2, "parent": 0, "mass": "1/2"}]},
    "transitions": [{"from": 0, "to": 1, "p": "1/3"},
                    {"from": 0, "to": 2, "p": "2/3"}],
    "mode": "finite-absorbing"
  })");
  Walk<Rational> w = walk_from_json(j);
  CHECK(w.down[0][0] == Rational(1, 3));
  CHECK(w.down[0][1] == Rational(2, 3));
  auto s = solve_walk(w);
  CHECK(s.limit_distribution(0)[0] == Rational(1, 3));
}

TEST_CASE("walk JSON rejects transitions off the tree") {
  Json j = Json::parse(R"({
    "tree": {"nodes": [{"id": 0, "parent": null, "phi": 1.0}],
             "leaves": [{"id": 1, "parent": 0, "mass": "1/2"},
                        {"id": 2, "parent": 0, "mass": "1/2"}]},
    "transitions": [{"from": 1, "to": 2, "p": "1"}]
  })");
  CHECK_THROWS_AS(walk_from_json(j), error);
}

TEST_CASE("spectrum dump") {
  BallTree t = BallTree::padic(2, 2, 1);
  HeatModel m(t, Sigma::padic_exact(2, 2));
  Json j = spectrum_to_json(eigensystem(m), t);
  REQUIRE(j.size() == 3);  // {0, 2, 4}
  CHECK(j[0]["lambda"] == 0.0);
  CHECK(j[0]["multiplicity"] == 1);
  CHECK(j[2]["multiplicity"] == 2);
}
