#include "conncurv/errors.hpp"
#include "conncurv/fixtures.hpp"
#include "conncurv/graph.hpp"
#include "support.hpp"

#include <doctest.h>

#include <fstream>
#include <sstream>

using namespace conncurv;

namespace {

std::string fixture_text(const std::string& name) {
  std::ifstream in(std::string(FIXTURE_DIR) + "/" + name);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

const char* kTwoVertex = R"({"dimension": 1, "field": "real",
  "vertices": [{"id": "x", "measure": 1.0}, {"id": "y", "measure": 1.0}],
  "edges": [EDGES]})";

std::string two_vertex(const std::string& edges) {
  std::string s = kTwoVertex;
  return s.replace(s.find("EDGES"), 5, edges);
}

}  // namespace

TEST_CASE("g1_u2 document loads as the 4-vertex U(2) graph") {
  const ConnectionGraph g = load_graph(fixture_text("g1_u2.json"));
  CHECK(g.dimension() == 2);
  CHECK(g.vertices().size() == 4);
  CHECK(g.edges().size() == 5);
  CHECK(max_abs(g.sigma("2", "3") - quaternion_j()) == 0.0);
  CHECK(max_abs(g.sigma("3", "2") - quaternion_j().adjoint()) == 0.0);
  CHECK(max_abs(g.sigma("1", "2") - Mat::Identity(2, 2)) == 0.0);
  CHECK(max_abs(g.sigma("2", "3") - fixtures::g1_u2().sigma("2", "3")) == 0.0);
}

TEST_CASE("single edge document is a valid 2-vertex graph") {
  const ConnectionGraph g = load_graph(fixture_text("single_edge.json"));
  CHECK(g.vertices().size() == 2);
  CHECK(g.adjacent("x", "y"));
  CHECK(g.weight("x", "y") == 1.0);
}

TEST_CASE("loader rejects invalid documents") {
  CHECK_THROWS_AS(load_graph(fixture_text("non_unitary.json")), ValidationError);
  CHECK_THROWS_AS(load_graph("{not json"), ValidationError);
  CHECK_THROWS_AS(load_graph(two_vertex(R"({"u":"x","v":"y","weight":-1.0})")), ValidationError);
  CHECK_THROWS_AS(load_graph(two_vertex(R"({"u":"x","v":"y"},{"u":"y","v":"x"})")), ValidationError);
  CHECK_THROWS_AS(load_graph(two_vertex(R"({"u":"x","v":"y","sigma":[[1,0],[0,1]]})")), ValidationError);
  CHECK_THROWS_AS(load_graph(two_vertex(R"({"u":"x","v":"z"})")), ValidationError);
  CHECK_THROWS_AS(load_graph(two_vertex(R"({"u":"x","v":"x"})")), ValidationError);
  CHECK_THROWS_AS(load_graph(two_vertex(R"({"u":"x","v":"y","sign":2})")), ValidationError);
}

TEST_CASE("non-unitary message names the edge and the deviation") {
  try {
    load_graph(fixture_text("non_unitary.json"));
    FAIL("expected a validation error");
  } catch (const ValidationError& e) {
    const std::string msg = e.what();
    CHECK(msg.find("(x,y)") != std::string::npos);
    CHECK(msg.find("deviation 3 > 1e-9") != std::string::npos);
  }
}

TEST_CASE("near-unitary connections are projected onto the unitary group") {
  const std::string doc = R"({"dimension": 1, "field": "complex",
    "vertices": [{"id": "x"}, {"id": "y"}],
    "edges": [{"u":"x","v":"y","sigma":[[[1.0000000001,0]]]}]})";
  const ConnectionGraph g = load_graph(doc);
  CHECK(std::abs(g.sigma("x", "y")(0, 0) - 1.0) <= 1e-15);
}

TEST_CASE("sign shorthand and JSON round trip") {
  const ConnectionGraph g = fixtures::signed_triangle();
  const ConnectionGraph h = load_graph(to_json(g));
  CHECK(h.sigma("A", "C")(0, 0).real() == -1.0);
  CHECK(to_json(h) == to_json(g));
  const ConnectionGraph u = load_graph(to_json(fixtures::g1_u2()));
  CHECK(max_abs(u.sigma("2", "3") - quaternion_j()) == 0.0);
}

TEST_CASE("real field rejects complex connections") {
  const std::string doc = R"({"dimension": 1, "field": "real",
    "vertices": [{"id": "x"}, {"id": "y"}],
    "edges": [{"u":"x","v":"y","sigma":[[[0,1]]]}]})";
  CHECK_THROWS_AS(load_graph(doc), ValidationError);
}

TEST_CASE("local structure of g1_u2 at 1") {
  const LocalStructure l = local_structure(fixtures::g1_u2(), "1");
  CHECK(l.m == 2);
  CHECK(l.n == 1);
  CHECK(l.s1 == std::vector<std::string>{"2", "3"});
  CHECK(l.s2 == std::vector<std::string>{"4"});
  CHECK(l.dx_over_mux == 2.0);
  CHECK(l.p(0, 1) == 1.0);
  CHECK(l.p(1, 2) == 1.0);
  CHECK(l.id(3) == "4");
}

TEST_CASE("local structure of the single edge and the positive strip ball") {
  const LocalStructure e = local_structure(fixtures::single_edge(), "x");
  CHECK(e.m == 1);
  CHECK(e.n == 0);
  const LocalStructure s = local_structure(fixtures::positive_strip_ball(), "1");
  CHECK(s.m == 4);
  CHECK(s.n == 4);
}

TEST_CASE("edges between 2-sphere vertices are dropped") {
  const ConnectionGraph g = signed_graph({{"x", "a", 1}, {"a", "b", 1}, {"a", "c", 1}, {"b", "c", -1}});
  const LocalStructure l = local_structure(g, "x");
  CHECK(l.n == 2);
  CHECK_FALSE(l.linked(2, 3));
  CHECK(is_locally_balanced(l));
}

TEST_CASE("local structure is deterministic") {
  Rng rng(31);
  for (int trial = 0; trial < 10; ++trial) {
    const ConnectionGraph g = random_connection_graph(support::random_options(rng), rng);
    const std::string x = support::some_vertex(g, rng);
    const LocalStructure a = local_structure(g, x);
    const LocalStructure b = local_structure(load_graph(to_json(g)), x);
    CHECK(a.s1 == b.s1);
    CHECK(a.s2 == b.s2);
    CHECK((a.p - b.p).cwiseAbs().maxCoeff() == 0.0);
  }
}

TEST_CASE("reverse connections invert the stored ones") {
  Rng rng(32);
  for (int trial = 0; trial < 20; ++trial) {
    const ConnectionGraph g = random_connection_graph(support::random_options(rng), rng);
    for (const auto& e : g.edges())
      CHECK(max_abs(g.sigma(e.v, e.u) * g.sigma(e.u, e.v) - Mat::Identity(g.dimension(), g.dimension())) <= 1e-12);
  }
}

TEST_CASE("switching by the identity leaves the graph unchanged and tau then tau^-1 restores it") {
  Rng rng(33);
  for (int trial = 0; trial < 20; ++trial) {
    const RandomGraphOptions o = support::random_options(rng);
    const ConnectionGraph g = random_connection_graph(o, rng);
    std::map<std::string, Mat> id;
    for (const auto& v : g.vertices()) id[v.id] = Mat::Identity(g.dimension(), g.dimension());
    const ConnectionGraph same = switch_graph(g, id);
    const auto tau = random_switching(g, rng, o.real);
    std::map<std::string, Mat> inv;
    for (const auto& [k, t] : tau) inv[k] = t.adjoint();
    const ConnectionGraph back = switch_graph(switch_graph(g, tau), inv);
    for (const auto& e : g.edges()) {
      CHECK(max_abs(same.sigma(e.u, e.v) - e.sigma) == 0.0);
      CHECK(max_abs(back.sigma(e.u, e.v) - e.sigma) <= 1e-12);
    }
  }
}

TEST_CASE("switching moves signs but keeps the triangle signature") {
  const ConnectionGraph g = fixtures::signed_triangle();
  const std::map<std::string, Mat> tau{{"A", Mat::Identity(1, 1)}, {"B", Mat::Identity(1, 1)}, {"C", -Mat::Identity(1, 1)}};
  const ConnectionGraph h = switch_graph(g, tau);
  CHECK(h.sigma("B", "C")(0, 0).real() == -1.0);
  CHECK(h.sigma("A", "C")(0, 0).real() == 1.0);
  const cplx cycle = h.sigma("A", "B")(0, 0) * h.sigma("B", "C")(0, 0) * h.sigma("C", "A")(0, 0);
  CHECK(cycle.real() == -1.0);
}

TEST_CASE("switching rejects a missing vertex or a non-unitary gauge") {
  const ConnectionGraph g = fixtures::signed_triangle();
  std::map<std::string, Mat> tau{{"A", Mat::Identity(1, 1)}, {"B", Mat::Identity(1, 1)}};
  CHECK_THROWS_AS(switch_graph(g, tau), ValidationError);
  tau["C"] = 2.0 * Mat::Identity(1, 1);
  CHECK_THROWS_AS(switch_graph(g, tau), ValidationError);
}

TEST_CASE("local balance") {
  CHECK_FALSE(is_locally_balanced(local_structure(fixtures::g1_u2(), "1")));
  CHECK_FALSE(is_locally_balanced(local_structure(fixtures::u2_diamond(), "1")));
  CHECK_FALSE(is_locally_balanced(local_structure(fixtures::signed_diamond(), "1")));
  CHECK(is_locally_balanced(local_structure(fixtures::g5(), "1")));
  Rng rng(34);
  RandomGraphOptions o;
  o.identity_connections = true;
  for (int trial = 0; trial < 10; ++trial) {
    o.dimension = 1 + trial % 2;
    const ConnectionGraph g = random_connection_graph(o, rng);
    CHECK(is_locally_balanced(local_structure(g, support::some_vertex(g, rng))));
  }
}

TEST_CASE("local balance is switching invariant") {
  Rng rng(35);
  for (int trial = 0; trial < 30; ++trial) {
    const RandomGraphOptions o = support::random_options(rng);
    const ConnectionGraph g = random_connection_graph(o, rng);
    const std::string x = support::some_vertex(g, rng);
    const ConnectionGraph h = switch_graph(g, random_switching(g, rng, o.real));
    CHECK(is_locally_balanced(local_structure(g, x)) == is_locally_balanced(local_structure(h, x)));
  }
}

TEST_CASE("signature group commutation") {
  CHECK(signature_groups_commute(fixtures::signed_triangle(), fixtures::g3()));
  CHECK_FALSE(signature_groups_commute(fixtures::u2_triangle(), fixtures::u2_diamond()));
  Rng rng(36);
  RandomGraphOptions o;
  o.dimension = 2;
  const ConnectionGraph g = random_connection_graph(o, rng);
  o.identity_connections = true;
  CHECK(signature_groups_commute(g, random_connection_graph(o, rng)));
  CHECK_THROWS_AS(signature_groups_commute(g, fixtures::signed_triangle()), ValidationError);
}
