#include "parafermion/lattice.hpp"

#include <algorithm>
#include <cmath>
#include <deque>
#include <iomanip>
#include <numbers>
#include <sstream>
#include <stdexcept>

#include <openssl/evp.h>

namespace parafermion {

namespace {

constexpr std::array<LatticePoint, 6> kHalfEdges = {
    LatticePoint{2, 0}, LatticePoint{1, 1},   LatticePoint{-1, 1},
    LatticePoint{-2, 0}, LatticePoint{-1, -1}, LatticePoint{1, -1}};

int floor_mod(int a, int m) { return ((a % m) + m) % m; }

// Vertices of kind "west" have half-edges {1, 3, 5}; kind "east" {0, 2, 4}.
// v_a = (2, 0) is a west vertex.
std::optional<int> first_direction(LatticePoint p) {
  auto on_sublattice = [](int dx, int dy) {
    if (floor_mod(dx, 6) != 0 || floor_mod(dy, 2) != 0) return false;
    return floor_mod(dx / 6 - dy / 2, 2) == 0;
  };
  if (on_sublattice(p.x - 2, p.y)) return 1;
  if (on_sublattice(p.x - 4, p.y - 2)) return 0;
  return std::nullopt;
}

std::complex<double> embed(LatticePoint p) {
  // Edge length 2, so mid-edge to vertex offsets are unit vectors.
  return {0.5 * p.x, 0.5 * std::numbers::sqrt3 * p.y};
}

std::string decimal(double v) {
  std::ostringstream os;
  os << std::setprecision(17) << v;
  return os.str();
}

}  // namespace

std::complex<double> Direction::unit_vector() const {
  static const std::array<std::complex<double>, 6> table = [] {
    std::array<std::complex<double>, 6> t{};
    const double h = 0.5 * std::numbers::sqrt3;
    t[0] = {1.0, 0.0};
    t[1] = {0.5, h};
    t[2] = {-0.5, h};
    t[3] = {-1.0, 0.0};
    t[4] = {-0.5, -h};
    t[5] = {0.5, -h};
    return t;
  }();
  return table[index_];
}

LatticePoint Direction::half_edge() const { return kHalfEdges[index_]; }

std::optional<Direction> Direction::from_half_edge(LatticePoint offset) {
  for (int k = 0; k < 6; ++k) {
    if (kHalfEdges[k] == offset) return Direction(k);
  }
  return std::nullopt;
}

std::string to_string(Surface s) {
  switch (s) {
    case Surface::Alpha: return "alpha";
    case Surface::Beta: return "beta";
    case Surface::Epsilon: return "epsilon";
    case Surface::EpsilonBar: return "epsilon_bar";
  }
  return "?";
}

HoneycombDomain HoneycombDomain::from_vertices(std::vector<LatticePoint> points,
                                               int width, int height) {
  std::sort(points.begin(), points.end());
  if (std::adjacent_find(points.begin(), points.end()) != points.end()) {
    throw std::invalid_argument("duplicate vertex in domain");
  }
  if (points.empty()) throw std::invalid_argument("empty domain");

  HoneycombDomain d;
  d.width_ = width;
  d.halfHeight_ = height;

  for (const auto& p : points) {
    auto first = first_direction(p);
    if (!first) {
      throw std::invalid_argument("point (" + std::to_string(p.x) + "," +
                                  std::to_string(p.y) + ") is not a honeycomb vertex");
    }
    Vertex v;
    v.position = p;
    for (int k = 0; k < 3; ++k) v.directions[k] = Direction(*first + 2 * k);
    d.vertexIndex_[p] = static_cast<VertexId>(d.vertices_.size());
    d.vertices_.push_back(v);
  }

  std::map<LatticePoint, std::vector<VertexId>> touching;
  for (VertexId v = 0; v < static_cast<VertexId>(d.vertices_.size()); ++v) {
    for (const auto& dir : d.vertices_[v].directions) {
      touching[d.vertices_[v].position + dir.half_edge()].push_back(v);
    }
  }
  for (auto& [pos, vs] : touching) {
    MidEdge m;
    m.position = pos;
    std::sort(vs.begin(), vs.end());
    m.vertices[0] = vs[0];
    if (vs.size() == 2) m.vertices[1] = vs[1];
    m.axis = *Direction::from_half_edge(pos - d.vertices_[vs[0]].position);
    d.midEdgeIndex_[pos] = static_cast<MidEdgeId>(d.midEdges_.size());
    d.midEdges_.push_back(m);
  }
  for (auto& v : d.vertices_) {
    for (int k = 0; k < 3; ++k) {
      v.midEdges[k] = d.midEdgeIndex_.at(v.position + v.directions[k].half_edge());
    }
  }

  auto va = d.vertex_at({2, 0});
  if (!va || d.vertex_at({-2, 0})) {
    throw std::invalid_argument("domain must contain v_a=(2,0) and not (-2,0)");
  }
  d.startVertex_ = *va;
  d.start_ = d.midEdgeIndex_.at({0, 0});

  // Connectivity through interior mid-edges.
  std::vector<char> seen(d.vertices_.size(), 0);
  std::deque<VertexId> queue{d.startVertex_};
  seen[d.startVertex_] = 1;
  std::size_t reached = 1;
  while (!queue.empty()) {
    VertexId v = queue.front();
    queue.pop_front();
    for (MidEdgeId z : d.vertices_[v].midEdges) {
      VertexId w = d.other_vertex(z, v);
      if (w != kNoVertex && !seen[w]) {
        seen[w] = 1;
        ++reached;
        queue.push_back(w);
      }
    }
  }
  if (reached != d.vertices_.size()) {
    throw std::invalid_argument("domain is not edge-connected");
  }

  for (auto& m : d.midEdges_) {
    if (!m.is_boundary()) continue;
    switch (m.axis.index()) {
      case 3: m.surface = Surface::Alpha; break;
      case 0: m.surface = Surface::Beta; break;
      default: m.surface = m.position.y > 0 ? Surface::Epsilon : Surface::EpsilonBar;
    }
  }

  d.hash_ = sha256_hex(d.descriptor().dump());
  return d;
}

std::optional<VertexId> HoneycombDomain::vertex_at(LatticePoint p) const {
  auto it = vertexIndex_.find(p);
  if (it == vertexIndex_.end()) return std::nullopt;
  return it->second;
}

std::optional<MidEdgeId> HoneycombDomain::mid_edge_at(LatticePoint p) const {
  auto it = midEdgeIndex_.find(p);
  if (it == midEdgeIndex_.end()) return std::nullopt;
  return it->second;
}

std::complex<double> HoneycombDomain::position(MidEdgeId z) const {
  return embed(midEdges_.at(z).position);
}

std::complex<double> HoneycombDomain::vertex_position(VertexId v) const {
  return embed(vertices_.at(v).position);
}

std::complex<double> HoneycombDomain::offset(MidEdgeId z, VertexId v) const {
  return heading_towards(z, v).opposite().unit_vector();
}

Direction HoneycombDomain::heading_towards(MidEdgeId z, VertexId v) const {
  auto dir = Direction::from_half_edge(vertices_.at(v).position - midEdges_.at(z).position);
  if (!dir) throw std::invalid_argument("vertex does not touch mid-edge");
  return *dir;
}

int HoneycombDomain::vertex_slot(MidEdgeId z, VertexId v) const {
  const auto& m = midEdges_.at(z);
  if (m.vertices[0] == v) return 0;
  if (m.vertices[1] == v && v != kNoVertex) return 1;
  throw std::invalid_argument("vertex does not touch mid-edge");
}

VertexId HoneycombDomain::other_vertex(MidEdgeId z, VertexId v) const {
  const auto& m = midEdges_[z];
  return m.vertices[0] == v ? m.vertices[1] : m.vertices[0];
}

StepResult HoneycombDomain::step(MidEdgeId z, Direction heading) const {
  const auto& m = midEdges_.at(z);
  if (heading != m.axis && heading != m.axis.opposite()) {
    throw std::invalid_argument("heading is not along the edge of the mid-edge");
  }
  StepResult r;
  auto v = vertex_at(m.position + heading.half_edge());
  if (!v) {
    r.outOfDomain = true;
    return r;
  }
  r.vertex = *v;
  const LatticePoint at = vertices_[*v].position;
  const Direction l = heading.left();
  const Direction rt = heading.right();
  r.continuations[0] = {midEdgeIndex_.at(at + l.half_edge()), l, TurnSense::Left};
  r.continuations[1] = {midEdgeIndex_.at(at + rt.half_edge()), rt, TurnSense::Right};
  return r;
}

VertexId HoneycombDomain::mirror_vertex(VertexId v) const {
  const auto p = vertices_.at(v).position;
  auto m = vertex_at({p.x, -p.y});
  if (!m) throw std::logic_error("domain is not mirror symmetric");
  return *m;
}

MidEdgeId HoneycombDomain::mirror_mid_edge(MidEdgeId z) const {
  const auto p = midEdges_.at(z).position;
  auto m = mid_edge_at({p.x, -p.y});
  if (!m) throw std::logic_error("domain is not mirror symmetric");
  return *m;
}

std::vector<MidEdgeId> HoneycombDomain::boundary() const {
  std::vector<MidEdgeId> out;
  for (MidEdgeId z = 0; z < static_cast<MidEdgeId>(midEdges_.size()); ++z) {
    if (midEdges_[z].is_boundary()) out.push_back(z);
  }
  return out;
}

nlohmann::json HoneycombDomain::descriptor() const {
  using nlohmann::json;
  json vs = json::array();
  for (VertexId v = 0; v < static_cast<VertexId>(vertices_.size()); ++v) {
    const auto& vx = vertices_[v];
    const auto c = embed(vx.position);
    vs.push_back({{"id", v},
                  {"lattice", {vx.position.x, vx.position.y}},
                  {"z", {decimal(c.real()), decimal(c.imag())}},
                  {"midEdges", {vx.midEdges[0], vx.midEdges[1], vx.midEdges[2]}}});
  }
  json ms = json::array();
  for (MidEdgeId z = 0; z < static_cast<MidEdgeId>(midEdges_.size()); ++z) {
    const auto& m = midEdges_[z];
    const auto c = embed(m.position);
    json inc = json::array({m.vertices[0]});
    if (!m.is_boundary()) inc.push_back(m.vertices[1]);
    ms.push_back({{"id", z},
                  {"lattice", {m.position.x, m.position.y}},
                  {"z", {decimal(c.real()), decimal(c.imag())}},
                  {"vertices", inc},
                  {"surface", m.surface ? json(to_string(*m.surface)) : json(nullptr)}});
  }
  return {{"schema", kSchemaVersion}, {"kind", "domain"},
          {"T", width_},          {"L", halfHeight_},
          {"start", start_},      {"startVertex", startVertex_},
          {"vertices", vs},       {"midEdges", ms}};
}

HoneycombDomain build_trapezoid(int width, int halfHeight) {
  if (width < 1) throw std::invalid_argument("trapezoid width T must be >= 1");
  if (halfHeight < 0) throw std::invalid_argument("trapezoid half-height L must be >= 0");
  std::vector<LatticePoint> points;
  constexpr std::array<LatticePoint, 6> corners = {
      LatticePoint{-4, 0}, LatticePoint{4, 0},  LatticePoint{2, 2},
      LatticePoint{-2, 2}, LatticePoint{2, -2}, LatticePoint{-2, -2}};
  for (int m = 0; m < width; ++m) {
    const int count = 2 * halfHeight + 1 + m;
    for (int i = 0; i < count; ++i) {
      const LatticePoint centre{6 + 6 * m, 2 * (2 * halfHeight + m) - 4 * i};
      for (const auto& c : corners) points.push_back(centre + c);
    }
  }
  std::sort(points.begin(), points.end());
  points.erase(std::unique(points.begin(), points.end()), points.end());
  return HoneycombDomain::from_vertices(std::move(points), width, halfHeight);
}

std::map<MidEdgeId, Surface> classify_boundary(const HoneycombDomain& domain) {
  std::map<MidEdgeId, Surface> out;
  for (MidEdgeId z : domain.boundary()) out[z] = *domain.mid_edge(z).surface;
  return out;
}

std::string sha256_hex(const std::string& data) {
  unsigned char digest[EVP_MAX_MD_SIZE];
  unsigned int length = 0;
  if (EVP_Digest(data.data(), data.size(), digest, &length, EVP_sha256(), nullptr) != 1) {
    throw std::runtime_error("SHA-256 failed");
  }
  std::ostringstream os;
  os << std::hex << std::setfill('0');
  for (unsigned int i = 0; i < length; ++i) os << std::setw(2) << static_cast<int>(digest[i]);
  return os.str();
}

}  // namespace parafermion
