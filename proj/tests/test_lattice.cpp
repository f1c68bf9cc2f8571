#include <doctest.h>

#include <cmath>
#include <algorithm>
#include <set>

#include "parafermion/lattice.hpp"

using namespace parafermion;

namespace {

// Hexagon corners of the trapezoid, computed straight from the centres.
std::set<LatticePoint> trapezoid_corners(int T, int L) {
  std::set<LatticePoint> out;
  for (int m = 0; m < T; ++m) {
    for (int i = 0; i < 2 * L + 1 + m; ++i) {
      const LatticePoint c{6 + 6 * m, 2 * (2 * L + m) - 4 * i};
      for (LatticePoint o : {LatticePoint{4, 0}, {-4, 0}, {2, 2}, {2, -2}, {-2, 2}, {-2, -2}}) {
        out.insert(c + o);
      }
    }
  }
  return out;
}

}  // namespace

TEST_CASE("directions turn and wrap") {
  const Direction east(0);
  CHECK(east.left().index() == 1);
  CHECK(east.right().index() == 5);
  CHECK(east.opposite().index() == 3);
  CHECK(Direction(-7).index() == 5);
  for (int k = 0; k < 6; ++k) {
    const Direction d(k);
    CHECK(Direction::from_half_edge(d.half_edge()) == d);
    CHECK(std::abs(d.unit_vector() - std::polar(1.0, k * M_PI / 3)) < 1e-15);
  }
  CHECK_FALSE(Direction::from_half_edge({3, 0}).has_value());
}

TEST_CASE("trapezoid vertex sets match the hexagon corners") {
  for (auto [T, L] : {std::pair{1, 0}, {2, 0}, {3, 0}, {1, 1}, {2, 1}, {3, 1}, {2, 2}}) {
    CAPTURE(T);
    CAPTURE(L);
    const HoneycombDomain d = build_trapezoid(T, L);
    const auto expected = trapezoid_corners(T, L);
    std::set<LatticePoint> got;
    for (const auto& v : d.vertices()) got.insert(v.position);
    CHECK(got == expected);
  }
  CHECK(build_trapezoid(1, 0).vertex_count() == 6);
  CHECK(build_trapezoid(1, 0).mid_edge_count() == 12);
  CHECK(build_trapezoid(2, 0).vertex_count() == 13);
  CHECK(build_trapezoid(1, 1).vertex_count() == 14);
  CHECK(build_trapezoid(3, 1).vertex_count() == 38);
}

TEST_CASE("bad trapezoid sizes are rejected") {
  CHECK_THROWS_AS(build_trapezoid(0, 1), std::invalid_argument);
  CHECK_THROWS_AS(build_trapezoid(2, -1), std::invalid_argument);
}

TEST_CASE("start mid-edge and its vertex") {
  const HoneycombDomain d = build_trapezoid(2, 1);
  CHECK(d.mid_edge(d.start_mid_edge()).position == LatticePoint{0, 0});
  CHECK(d.vertex(d.start_vertex()).position == LatticePoint{2, 0});
  CHECK(d.mid_edge(d.start_mid_edge()).is_boundary());
  CHECK(d.heading_towards(d.start_mid_edge(), d.start_vertex()).index() == 0);
  CHECK(std::abs(d.position(d.start_mid_edge())) < 1e-15);
  CHECK(std::abs(d.offset(d.start_mid_edge(), d.start_vertex()) + 1.0) < 1e-15);
}

TEST_CASE("incidence is consistent") {
  const HoneycombDomain d = build_trapezoid(3, 1);
  for (VertexId v = 0; v < static_cast<VertexId>(d.vertex_count()); ++v) {
    for (MidEdgeId z : d.vertex(v).midEdges) {
      const MidEdge& m = d.mid_edge(z);
      CHECK((m.vertices[0] == v || m.vertices[1] == v));
      // Mid-edges sit at unit distance from their vertices.
      CHECK(std::abs(std::abs(d.position(z) - d.vertex_position(v)) - 1.0) < 1e-12);
    }
  }
  int boundary = 0;
  for (MidEdgeId z = 0; z < static_cast<MidEdgeId>(d.mid_edge_count()); ++z) {
    const MidEdge& m = d.mid_edge(z);
    CHECK(m.surface.has_value() == m.is_boundary());
    if (m.is_boundary()) {
      ++boundary;
      CHECK(d.other_vertex(z, m.vertices[0]) == kNoVertex);
    } else {
      CHECK(d.other_vertex(z, m.vertices[0]) == m.vertices[1]);
    }
  }
  CHECK(boundary == static_cast<int>(d.boundary().size()));
  // Each vertex has three mid-edges; interior ones are shared by two.
  CHECK(3 * d.vertex_count() == 2 * d.mid_edge_count() - boundary);
}

TEST_CASE("walker steps turn left and right") {
  const HoneycombDomain d = build_trapezoid(1, 0);
  const StepResult s = d.step(d.start_mid_edge(), Direction(0));
  CHECK_FALSE(s.outOfDomain);
  CHECK(s.vertex == d.start_vertex());
  CHECK(s.continuations[0].heading.index() == 1);
  CHECK(s.continuations[0].turn == TurnSense::Left);
  CHECK(s.continuations[1].heading.index() == 5);
  CHECK(s.continuations[1].turn == TurnSense::Right);
  CHECK(d.step(d.start_mid_edge(), Direction(3)).outOfDomain);
  CHECK_THROWS_AS(d.step(d.start_mid_edge(), Direction(1)), std::invalid_argument);
}

TEST_CASE("mirror symmetry about the axis through a") {
  for (auto [T, L] : {std::pair{2, 0}, {2, 1}, {3, 1}}) {
    const HoneycombDomain d = build_trapezoid(T, L);
    for (VertexId v = 0; v < static_cast<VertexId>(d.vertex_count()); ++v) {
      const VertexId m = d.mirror_vertex(v);
      CHECK(d.mirror_vertex(m) == v);
      CHECK(d.vertex(m).position == LatticePoint{d.vertex(v).position.x, -d.vertex(v).position.y});
    }
    for (MidEdgeId z = 0; z < static_cast<MidEdgeId>(d.mid_edge_count()); ++z) {
      CHECK(d.mirror_mid_edge(d.mirror_mid_edge(z)) == z);
    }
    CHECK(d.mirror_mid_edge(d.start_mid_edge()) == d.start_mid_edge());
  }
}

TEST_CASE("boundary surfaces") {
  SUBCASE("wedge: alpha is the start mid-edge alone") {
    const HoneycombDomain d = build_trapezoid(3, 0);
    const auto s = classify_boundary(d);
    int alpha = 0;
    for (const auto& [z, surface] : s) {
      if (surface == Surface::Alpha) {
        ++alpha;
        CHECK(z == d.start_mid_edge());
      }
    }
    CHECK(alpha == 1);
  }
  SUBCASE("strip: alpha on the left, beta on the right, epsilon above and below") {
    const HoneycombDomain d = build_trapezoid(3, 1);
    std::map<Surface, int> counts;
    int maxX = 0;
    for (const auto& v : d.vertices()) maxX = std::max(maxX, v.position.x);
    for (const auto& [z, surface] : classify_boundary(d)) {
      ++counts[surface];
      const LatticePoint p = d.mid_edge(z).position;
      if (surface == Surface::Alpha) CHECK(p.x <= 0);
      if (surface == Surface::Beta) CHECK(p.x > maxX);
      if (surface == Surface::Epsilon) CHECK(p.y > 0);
      if (surface == Surface::EpsilonBar) CHECK(p.y < 0);
    }
    CHECK(counts[Surface::Alpha] == 3);
    CHECK(counts[Surface::Beta] == 5);
    CHECK(counts[Surface::Epsilon] == counts[Surface::EpsilonBar]);
    CHECK(counts[Surface::Epsilon] > 0);
  }
}

TEST_CASE("descriptor and hash") {
  const HoneycombDomain a = build_trapezoid(2, 1);
  const HoneycombDomain b = build_trapezoid(2, 1);
  const HoneycombDomain c = build_trapezoid(2, 0);
  CHECK(a.hash() == b.hash());
  CHECK(a.hash() != c.hash());
  CHECK(a.hash().size() == 64);
  CHECK(a.hash() == sha256_hex(a.descriptor().dump()));
  CHECK(a.descriptor().at("schema") == kSchemaVersion);
  CHECK(sha256_hex("abc") ==
        "ba7816bf8f01cfea414140de5dae2223b00361a396177a9cb410ff61f20015ad");
}

TEST_CASE("custom vertex sets are validated") {
  CHECK_NOTHROW(HoneycombDomain::from_vertices({{2, 0}, {4, 2}}));
  CHECK_THROWS_AS(HoneycombDomain::from_vertices({{4, 2}}), std::invalid_argument);
  CHECK_THROWS_AS(HoneycombDomain::from_vertices({{2, 0}, {-2, 0}}), std::invalid_argument);
  CHECK_THROWS_AS(HoneycombDomain::from_vertices({{2, 0}, {3, 0}}), std::invalid_argument);
  // Disconnected.
  CHECK_THROWS_AS(HoneycombDomain::from_vertices({{2, 0}, {10, 2}}), std::invalid_argument);
}

TEST_CASE("vertex geometry") {
  const HoneycombDomain d = build_trapezoid(3, 1);
  const std::complex<double> j = std::polar(1.0, 2 * M_PI / 3);
  for (VertexId v = 0; v < static_cast<VertexId>(d.vertex_count()); ++v) {
    const auto& m = d.vertex(v).midEdges;
    const std::complex<double> p = d.offset(m[0], v), q = d.offset(m[1], v), r = d.offset(m[2], v);
    CHECK(std::abs(q - j * p) < 1e-12);
    CHECK(std::abs(r - std::conj(j) * p) < 1e-12);
  }
  for (MidEdgeId z = 0; z < static_cast<MidEdgeId>(d.mid_edge_count()); ++z) {
    const MidEdge& m = d.mid_edge(z);
    if (m.is_boundary()) continue;
    CHECK(std::abs(d.offset(z, m.vertices[0]) + d.offset(z, m.vertices[1])) < 1e-12);
  }
  Direction h(2);
  for (int i = 0; i < 6; ++i) h = h.left();
  CHECK(h.index() == 2);
  CHECK(h.left().right() == h);
}

TEST_CASE("construction is deterministic") {
  CHECK(build_trapezoid(3, 1).descriptor().dump() == build_trapezoid(3, 1).descriptor().dump());
}

TEST_CASE("surface arcs of a wide strip") {
  const HoneycombDomain d = build_trapezoid(5, 1);
  const auto labels = classify_boundary(d);
  std::map<Surface, int> counts;
  for (const auto& [z, s] : labels) ++counts[s];
  for (Surface s : {Surface::Alpha, Surface::Beta, Surface::Epsilon, Surface::EpsilonBar}) {
    CHECK(counts[s] > 0);
  }
  CHECK(labels.size() == d.boundary().size());
  for (MidEdgeId z = 0; z < static_cast<MidEdgeId>(d.mid_edge_count()); ++z) {
    CHECK((labels.count(z) == 1) == d.mid_edge(z).is_boundary());
  }
  // a sits in the middle of the alpha arc.
  int above = 0, below = 0;
  for (const auto& [z, s] : labels) {
    if (s != Surface::Alpha) continue;
    const int y = d.mid_edge(z).position.y;
    above += y > 0;
    below += y < 0;
  }
  CHECK(above == below);
  // The mirror keeps alpha and beta and swaps epsilon with its reflection.
  for (const auto& [z, s] : labels) {
    const Surface t = labels.at(d.mirror_mid_edge(z));
    if (s == Surface::Epsilon) CHECK(t == Surface::EpsilonBar);
    if (s == Surface::EpsilonBar) CHECK(t == Surface::Epsilon);
    if (s == Surface::Alpha || s == Surface::Beta) CHECK(t == s);
  }
}

TEST_CASE("surface arcs are contiguous along the boundary") {
  // Walk the boundary in order of angle about the domain centre and count
  // label changes: four arcs give four changes.
  for (auto [T, L] : {std::pair{5, 1}, {4, 2}, {4, 0}}) {
    const HoneycombDomain d = build_trapezoid(T, L);
    std::complex<double> centre = 0.0;
    for (VertexId v = 0; v < static_cast<VertexId>(d.vertex_count()); ++v) {
      centre += d.vertex_position(v);
    }
    centre /= static_cast<double>(d.vertex_count());
    std::vector<std::pair<double, Surface>> ring;
    for (const auto& [z, s] : classify_boundary(d)) ring.emplace_back(std::arg(d.position(z) - centre), s);
    std::sort(ring.begin(), ring.end(), [](const auto& a, const auto& b) { return a.first < b.first; });
    int seen = 0;
    for (std::size_t i = 0; i < ring.size(); ++i) {
      seen += ring[i].second != ring[(i + 1) % ring.size()].second;
    }
    CAPTURE(T);
    CHECK(seen == 4);
  }
}
