#pragma once

#include <cstdint>
#include <unordered_map>
#include <vector>

#include "parafermion/lattice.hpp"

namespace parafermion::detail {

using VertexMask = std::uint64_t;

inline VertexMask bit(int v) { return VertexMask{1} << v; }

struct LoopTerm {
  int vertices;
  int loops;
  std::uint64_t count;
};

// Polynomial in (x, n) of disjoint-cycle sets, terms sorted by
// (vertices, loops) with non-zero counts.
using LoopPoly = std::vector<LoopTerm>;

// Counts sets of vertex-disjoint cycles inside an induced subgraph of the
// domain graph. Not thread safe; one instance per worker.
class LoopCounter {
 public:
  LoopCounter(const HoneycombDomain& domain, std::size_t cacheCap);

  LoopPoly count(VertexMask allowed);
  // Cycle sets in `allowed` that pass through v.
  LoopPoly count_through(VertexMask allowed, int v);

  VertexMask all_vertices() const { return all_; }
  const std::vector<VertexMask>& neighbours() const { return nbr_; }
  std::size_t cache_size() const { return cache_.size(); }

 private:
  VertexMask two_core(VertexMask s) const;
  void cycles_through(int start, VertexMask allowed, std::vector<VertexMask>& out) const;

  std::vector<VertexMask> nbr_;
  VertexMask all_ = 0;
  std::size_t cacheCap_;
  std::unordered_map<VertexMask, LoopPoly> cache_;
};

LoopPoly subtract(const LoopPoly& a, const LoopPoly& b);

}  // namespace parafermion::detail
