#include <doctest.h>

#include <fstream>

#include "oracle/oracle.hpp"
#include "parafermion/errors.hpp"
#include "support.hpp"

using namespace parafermion;
using testing::trapezoid;

TEST_CASE("single hexagon census, audited by hand") {
  const auto& e = trapezoid(1, 0);
  const auto& c = e.census;
  CHECK(c.total() == 22);
  BigInt exits = 0, walkAhead = 0, loopAhead = 0, withLoops = 0;
  for (const auto& [k, n] : c.entries()) {
    if (k.is_exit()) exits += n;
    if (k.walkAtForward) walkAhead += n;
    if (k.loopAtForward) loopAhead += n;
    if (k.loops > 0) withLoops += n;
  }
  CHECK(exits == 10);
  CHECK(walkAhead == 2);
  CHECK(loopAhead == 0);
  CHECK(withLoops == 0);
  CHECK(e.loops.entries().size() == 2);
  CHECK(e.loops.count(0, 0) == 1);
  CHECK(e.loops.count(6, 1) == 1);
  CHECK(e.loopsAvoidStart.entries().size() == 1);
  CHECK(e.loopsAvoidStart.count(0, 0) == 1);
}

TEST_CASE("optimised census equals the brute-force oracle") {
  for (auto [T, L] : {std::pair{1, 0}, {2, 0}, {1, 1}}) {
    CAPTURE(T);
    CAPTURE(L);
    const auto& e = trapezoid(T, L);
    CHECK(e.census == oracle::oracle_enumerate(e.domain));
    CHECK(e.loops == oracle::oracle_loop_census(e.domain, std::nullopt));
    CHECK(e.loopsAvoidStart == oracle::oracle_loop_census(e.domain, e.domain.start_vertex()));
  }
}

TEST_CASE("oracle agrees on an irregular domain") {
  // One hexagon with a branching tail to its east.
  const HoneycombDomain d = HoneycombDomain::from_vertices(
      {{2, 0}, {4, 2}, {4, -2}, {8, 2}, {8, -2}, {10, 0}, {14, 0}, {16, 2}, {16, -2}, {20, 2}});
  REQUIRE(d.vertex_count() <= oracle::kOracleVertexCap);
  CHECK(enumerate_terminal_census(d) == oracle::oracle_enumerate(d));
  CHECK(enumerate_loop_census(d, std::nullopt) == oracle::oracle_loop_census(d, std::nullopt));
}

TEST_CASE("census key invariants") {
  for (auto [T, L] : {std::pair{2, 0}, {2, 1}, {3, 1}, {4, 0}}) {
    const auto& e = trapezoid(T, L);
    for (const auto& [k, n] : e.census.entries()) {
      CHECK(n > 0);
      CHECK(k.walkLength >= 1);
      CHECK(std::abs(k.winding) <= k.walkLength);
      CHECK(testing::mod6(k.winding) == testing::final_heading(e.domain, k));
      CHECK(k.length >= k.walkLength + 6 * k.loops);
      CHECK(k.length <= static_cast<int>(e.domain.vertex_count()));
      if (k.is_exit()) {
        CHECK_FALSE(k.loopAtForward);
        CHECK_FALSE(k.walkAtForward);
      }
      CHECK_FALSE((k.loopAtForward && k.walkAtForward));
    }
  }
}

TEST_CASE("a domain without hexagons has no loops") {
  const HoneycombDomain d = HoneycombDomain::from_vertices({{2, 0}, {4, 2}, {4, -2}, {8, 2}});
  const TerminalCensus c = enumerate_terminal_census(d);
  CHECK(c.size() > 0);
  for (const auto& [k, n] : c.entries()) CHECK(k.loops == 0);
  const LoopCensus l = enumerate_loop_census(d, std::nullopt);
  CHECK(l.entries().size() == 1);
  CHECK(l.count(0, 0) == 1);
}

TEST_CASE("worker count does not change the census") {
  for (auto [T, L] : {std::pair{2, 1}, {3, 1}}) {
    const HoneycombDomain d = build_trapezoid(T, L);
    EnumerationOptions one, four;
    four.workers = 4;
    const std::string a = census_to_json(enumerate_terminal_census(d, one)).dump();
    const std::string b = census_to_json(enumerate_terminal_census(d, four)).dump();
    CHECK(a == b);
    CHECK(enumerate_loop_census(d, std::nullopt, one) ==
          enumerate_loop_census(d, std::nullopt, four));
  }
}

TEST_CASE("a disabled loop cache gives the same census") {
  const auto& e = trapezoid(2, 1);
  EnumerationOptions o;
  o.cacheCap = 0;
  CHECK(enumerate_terminal_census(e.domain, o) == e.census);
  o.cacheCap = 3;
  CHECK(enumerate_terminal_census(e.domain, o) == e.census);
}

TEST_CASE("vertex cap") {
  const HoneycombDomain d = build_trapezoid(2, 0);
  EnumerationOptions o;
  o.vertexCap = 12;
  CHECK_THROWS_AS(enumerate_terminal_census(d, o), CapacityError);
  CHECK_THROWS_AS(enumerate_loop_census(d, std::nullopt, o), CapacityError);
  try {
    enumerate_terminal_census(d, o);
  } catch (const CapacityError& err) {
    CHECK(err.cap() == 12);
  }
  CHECK_THROWS_AS(oracle::oracle_enumerate(build_trapezoid(2, 1)), CapacityError);
}

TEST_CASE("merge and serialisation") {
  const auto& e = trapezoid(2, 0);
  const TerminalCensus doubled = merge_census(e.census, e.census);
  for (const auto& [k, n] : e.census.entries()) CHECK(doubled.count(k) == 2 * n);
  CHECK(doubled.total() == 2 * e.census.total());
  CHECK_THROWS_AS(merge_census(e.census, trapezoid(1, 0).census), std::invalid_argument);

  const nlohmann::json doc = census_to_json(e.census);
  CHECK(doc.at("schema") == kSchemaVersion);
  CHECK(doc.at("domainHash") == e.domain.hash());
  CHECK(census_from_json(doc) == e.census);
  CHECK(census_from_json(nlohmann::json::parse(doc.dump())) == e.census);
  CHECK(loop_census_from_json(loop_census_to_json(e.loopsAvoidStart)) == e.loopsAvoidStart);
  CHECK_THROWS(census_from_json(nlohmann::json{{"schema", "other"}}));
}

TEST_CASE("loop censuses are consistent") {
  const auto& e = trapezoid(3, 1);
  for (const auto& [key, n] : e.loopsAvoidStart.entries()) {
    CHECK(n <= e.loops.count(key.first, key.second));
  }
  CHECK_THROWS_AS(enumerate_loop_census(e.domain, 1000), std::invalid_argument);
}

TEST_CASE("committed single hexagon golden") {
  std::ifstream f(std::string(PARAFERMION_TEST_DATA) + "/single_hexagon_census.json");
  REQUIRE(f.good());
  const nlohmann::json doc = nlohmann::json::parse(f);
  const auto& e = trapezoid(1, 0);
  CHECK(census_from_json(doc.at("terminal")) == e.census);
  CHECK(loop_census_from_json(doc.at("loops")) == e.loops);
  CHECK(loop_census_from_json(doc.at("loopsAvoidStart")) == e.loopsAvoidStart);
  // Each way round the hexagon: six interior stops (the last one facing
  // v_a) and five exits, all without loops.
  const TerminalCensus golden = census_from_json(doc.at("terminal"));
  std::map<int, BigInt> byLength;
  for (const auto& [k, n] : golden.entries()) byLength[k.walkLength] += n;
  for (int j = 1; j <= 6; ++j) CHECK(byLength[j] == (j == 1 ? 2 : 4));
}

TEST_CASE("merge laws") {
  const auto& e = trapezoid(2, 1);
  const TerminalCensus empty(e.domain.hash());
  CHECK(merge_census(e.census, empty) == e.census);
  CHECK(merge_census(empty, e.census) == e.census);
  // Split the census into two halves and merge in both orders.
  TerminalCensus a(e.domain.hash()), b(e.domain.hash());
  bool flip = false;
  for (const auto& [k, n] : e.census.entries()) {
    (flip ? a : b).add(k, n);
    flip = !flip;
  }
  CHECK(merge_census(a, b) == e.census);
  CHECK(merge_census(b, a) == e.census);
}

TEST_CASE("loop census shapes") {
  const auto& hex = trapezoid(1, 0);
  for (VertexId v = 0; v < static_cast<VertexId>(hex.domain.vertex_count()); ++v) {
    const LoopCensus l = enumerate_loop_census(hex.domain, v);
    CHECK(l.entries().size() == 1);
    CHECK(l.count(0, 0) == 1);
  }
  for (auto [T, L] : {std::pair{2, 0}, {2, 1}, {3, 1}}) {
    const auto& e = trapezoid(T, L);
    CHECK(e.loops.count(0, 0) == 1);
    for (const auto& [key, n] : e.loops.entries()) {
      if (key.first > 0) CHECK(key.second >= 1);
      CHECK(key.first >= 6 * key.second);
    }
  }
}
