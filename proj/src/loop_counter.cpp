#include "loop_counter.hpp"

#include <algorithm>
#include <bit>
#include <map>
#include <stdexcept>

#include "parafermion/errors.hpp"

namespace parafermion::detail {

namespace {

std::uint64_t checked_add(std::uint64_t a, std::uint64_t b) {
  std::uint64_t r;
  if (__builtin_add_overflow(a, b, &r)) throw CapacityError("loop count overflow", 64);
  return r;
}

void accumulate(std::map<std::pair<int, int>, std::uint64_t>& acc, const LoopPoly& p,
                int extraVertices, int extraLoops) {
  for (const auto& t : p) {
    auto& slot = acc[{t.vertices + extraVertices, t.loops + extraLoops}];
    slot = checked_add(slot, t.count);
  }
}

LoopPoly to_poly(const std::map<std::pair<int, int>, std::uint64_t>& acc) {
  LoopPoly out;
  out.reserve(acc.size());
  for (const auto& [k, c] : acc) {
    if (c != 0) out.push_back({k.first, k.second, c});
  }
  return out;
}

}  // namespace

LoopCounter::LoopCounter(const HoneycombDomain& domain, std::size_t cacheCap)
    : nbr_(domain.vertex_count(), 0), cacheCap_(cacheCap) {
  if (domain.vertex_count() > 64) {
    throw CapacityError("loop counter supports at most 64 vertices", 64);
  }
  for (VertexId v = 0; v < static_cast<VertexId>(domain.vertex_count()); ++v) {
    all_ |= bit(v);
    for (MidEdgeId z : domain.vertex(v).midEdges) {
      VertexId w = domain.other_vertex(z, v);
      if (w != kNoVertex) nbr_[v] |= bit(w);
    }
  }
}

VertexMask LoopCounter::two_core(VertexMask s) const {
  bool changed = true;
  while (changed) {
    changed = false;
    for (VertexMask rest = s; rest; rest &= rest - 1) {
      const int v = std::countr_zero(rest);
      if (std::popcount(nbr_[v] & s) < 2) {
        s &= ~bit(v);
        changed = true;
      }
    }
  }
  return s;
}

void LoopCounter::cycles_through(int start, VertexMask allowed,
                                 std::vector<VertexMask>& out) const {
  // Each cycle is reported once: it leaves start through its lower-indexed
  // neighbour on the cycle and returns through the higher one.
  struct Frame {
    int vertex;
    VertexMask remaining;
  };
  const VertexMask startNbrs = nbr_[start] & allowed;
  for (VertexMask firsts = startNbrs; firsts; firsts &= firsts - 1) {
    const int first = std::countr_zero(firsts);
    std::vector<Frame> stack;
    VertexMask path = bit(start) | bit(first);
    stack.push_back({first, nbr_[first] & allowed & ~path});
    while (!stack.empty()) {
      Frame& top = stack.back();
      if (top.remaining == 0) {
        path &= ~bit(top.vertex);
        stack.pop_back();
        continue;
      }
      const int next = std::countr_zero(top.remaining);
      top.remaining &= top.remaining - 1;
      if ((startNbrs & bit(next)) && next > first) {
        out.push_back(path | bit(next));
      }
      path |= bit(next);
      stack.push_back({next, nbr_[next] & allowed & ~path});
    }
  }
}

LoopPoly LoopCounter::count(VertexMask allowed) {
  const VertexMask s = two_core(allowed);
  if (s == 0) return {{0, 0, 1}};
  if (auto it = cache_.find(s); it != cache_.end()) return it->second;

  const int u = std::countr_zero(s);
  std::map<std::pair<int, int>, std::uint64_t> acc;
  accumulate(acc, count(s & ~bit(u)), 0, 0);
  std::vector<VertexMask> cycles;
  cycles_through(u, s, cycles);
  for (VertexMask c : cycles) {
    accumulate(acc, count(s & ~c), std::popcount(c), 1);
  }
  LoopPoly result = to_poly(acc);
  if (cacheCap_ > 0) {
    if (cache_.size() >= cacheCap_) cache_.clear();
    cache_.emplace(s, result);
  }
  return result;
}

LoopPoly LoopCounter::count_through(VertexMask allowed, int v) {
  if (!(allowed & bit(v))) return {};
  return subtract(count(allowed), count(allowed & ~bit(v)));
}

LoopPoly subtract(const LoopPoly& a, const LoopPoly& b) {
  LoopPoly out;
  std::size_t j = 0;
  for (const auto& t : a) {
    while (j < b.size() && std::pair(b[j].vertices, b[j].loops) < std::pair(t.vertices, t.loops)) {
      throw std::logic_error("loop polynomial subtraction went negative");
    }
    std::uint64_t c = t.count;
    if (j < b.size() && b[j].vertices == t.vertices && b[j].loops == t.loops) {
      if (b[j].count > c) throw std::logic_error("loop polynomial subtraction went negative");
      c -= b[j].count;
      ++j;
    }
    if (c != 0) out.push_back({t.vertices, t.loops, c});
  }
  if (j != b.size()) throw std::logic_error("loop polynomial subtraction went negative");
  return out;
}

}  // namespace parafermion::detail
