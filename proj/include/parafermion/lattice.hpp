#pragma once

#include <array>
#include <complex>
#include <compare>
#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

namespace parafermion {

// Integer honeycomb coordinates. Edges have length 2, so every mid-edge is
// at unit distance from its vertices; a point (x, y) sits at
// x/2 + i*y*sqrt(3)/2. The starting mid-edge a is the origin and
// its domain vertex v_a is (2, 0).
struct LatticePoint {
  int x = 0;
  int y = 0;
  auto operator<=>(const LatticePoint&) const = default;
  LatticePoint operator+(const LatticePoint& o) const { return {x + o.x, y + o.y}; }
  LatticePoint operator-(const LatticePoint& o) const { return {x - o.x, y - o.y}; }
};

// Heading on the honeycomb: index k means angle k*pi/3, index 0 is east
// (the inward heading at a). Left turns add one.
class Direction {
 public:
  constexpr Direction() = default;
  constexpr explicit Direction(int index) : index_(((index % 6) + 6) % 6) {}

  constexpr int index() const { return index_; }
  constexpr Direction left() const { return Direction(index_ + 1); }
  constexpr Direction right() const { return Direction(index_ - 1); }
  constexpr Direction opposite() const { return Direction(index_ + 3); }

  // exp(i*index*pi/3).
  std::complex<double> unit_vector() const;

  // Offset from a mid-edge to the vertex it touches in this direction.
  LatticePoint half_edge() const;

  static std::optional<Direction> from_half_edge(LatticePoint offset);

  constexpr bool operator==(const Direction&) const = default;

 private:
  int index_ = 0;
};

enum class TurnSense { Left, Right };

enum class Surface { Alpha, Beta, Epsilon, EpsilonBar };

std::string to_string(Surface s);

using VertexId = int;
using MidEdgeId = int;
inline constexpr VertexId kNoVertex = -1;

struct Vertex {
  LatticePoint position;
  // The three incident mid-edges in counter-clockwise order of the
  // direction (mid-edge - vertex), starting from the smallest index.
  std::array<MidEdgeId, 3> midEdges{};
  std::array<Direction, 3> directions{};
};

struct MidEdge {
  LatticePoint position;
  // Domain vertices touching this mid-edge. vertices[1] is kNoVertex for
  // boundary mid-edges.
  std::array<VertexId, 2> vertices{kNoVertex, kNoVertex};
  // Direction of the lattice edge, pointing from vertices[0] through the
  // mid-edge.
  Direction axis;
  std::optional<Surface> surface;

  bool is_boundary() const { return vertices[1] == kNoVertex; }
};

struct Continuation {
  MidEdgeId midEdge;
  Direction heading;
  TurnSense turn;
};

struct StepResult {
  bool outOfDomain = false;
  VertexId vertex = kNoVertex;
  // Left continuation first.
  std::array<Continuation, 2> continuations{};
};

// Finite simply connected honeycomb patch. Immutable after construction.
class HoneycombDomain {
 public:
  // Vertex set must contain v_a = (2, 0) and must not contain (-2, 0), so
  // that the origin is a boundary mid-edge entered heading east.
  static HoneycombDomain from_vertices(std::vector<LatticePoint> vertices,
                                       int width = 0, int height = 0);

  int width() const { return width_; }
  int half_height() const { return halfHeight_; }

  std::size_t vertex_count() const { return vertices_.size(); }
  std::size_t mid_edge_count() const { return midEdges_.size(); }
  const std::vector<Vertex>& vertices() const { return vertices_; }
  const std::vector<MidEdge>& mid_edges() const { return midEdges_; }
  const Vertex& vertex(VertexId v) const { return vertices_.at(v); }
  const MidEdge& mid_edge(MidEdgeId z) const { return midEdges_.at(z); }

  MidEdgeId start_mid_edge() const { return start_; }
  VertexId start_vertex() const { return startVertex_; }

  std::optional<VertexId> vertex_at(LatticePoint p) const;
  std::optional<MidEdgeId> mid_edge_at(LatticePoint p) const;

  std::complex<double> position(MidEdgeId z) const;
  std::complex<double> vertex_position(VertexId v) const;

  // Unit vector (z - v); v must touch z.
  std::complex<double> offset(MidEdgeId z, VertexId v) const;
  // Direction of (v - z); v must touch z.
  Direction heading_towards(MidEdgeId z, VertexId v) const;
  // 0 or 1: index of v in mid_edge(z).vertices.
  int vertex_slot(MidEdgeId z, VertexId v) const;

  // The vertex across the edge of z from v, or kNoVertex.
  VertexId other_vertex(MidEdgeId z, VertexId v) const;

  // Walker at z with the given heading: the vertex ahead and its two
  // onward mid-edges. Throws std::invalid_argument if the heading is not
  // along the edge of z.
  StepResult step(MidEdgeId z, Direction heading) const;

  // Reflection in the horizontal axis through a.
  VertexId mirror_vertex(VertexId v) const;
  MidEdgeId mirror_mid_edge(MidEdgeId z) const;

  std::vector<MidEdgeId> boundary() const;

  // Versioned JSON descriptor and its SHA-256 (hex).
  nlohmann::json descriptor() const;
  const std::string& hash() const { return hash_; }

 private:
  HoneycombDomain() = default;

  int width_ = 0;
  int halfHeight_ = 0;
  std::vector<Vertex> vertices_;
  std::vector<MidEdge> midEdges_;
  std::map<LatticePoint, VertexId> vertexIndex_;
  std::map<LatticePoint, MidEdgeId> midEdgeIndex_;
  MidEdgeId start_ = 0;
  VertexId startVertex_ = 0;
  std::string hash_;
};

// Trapezoid S_{T,L}: T columns of hexagons, column m holding 2L+1+m
// hexagons stacked symmetrically about the row of a. L = 0 is the pi/3
// wedge. Throws std::invalid_argument for T < 1 or L < 0.
HoneycombDomain build_trapezoid(int width, int halfHeight);

std::map<MidEdgeId, Surface> classify_boundary(const HoneycombDomain& domain);

inline constexpr const char* kSchemaVersion = "parafermion-lab/1";

std::string sha256_hex(const std::string& data);

}  // namespace parafermion
