#include "parafermion/census.hpp"

#include <bit>
#include <cstdlib>
#include <stdexcept>
#include <thread>
#include <unordered_map>
#include <vector>

#include "loop_counter.hpp"
#include "parafermion/errors.hpp"

namespace parafermion {

using detail::bit;
using detail::LoopCounter;
using detail::LoopPoly;
using detail::VertexMask;

void TerminalCensus::add(const TerminalKey& key, const BigInt& count) {
  if (count == 0) return;
  entries_[key] += count;
}

BigInt TerminalCensus::count(const TerminalKey& key) const {
  auto it = entries_.find(key);
  return it == entries_.end() ? BigInt(0) : it->second;
}

BigInt TerminalCensus::total() const {
  BigInt t = 0;
  for (const auto& [k, c] : entries_) t += c;
  return t;
}

void LoopCensus::add(int length, int loops, const BigInt& count) {
  if (count == 0) return;
  entries_[{length, loops}] += count;
}

BigInt LoopCensus::count(int length, int loops) const {
  auto it = entries_.find({length, loops});
  return it == entries_.end() ? BigInt(0) : it->second;
}

EnumerationOptions default_enumeration_options() {
  EnumerationOptions o;
  if (const char* cap = std::getenv("PARAFERMION_CACHE_CAP")) {
    o.cacheCap = static_cast<std::size_t>(std::strtoull(cap, nullptr, 10));
  }
  return o;
}

namespace {

using Count = unsigned __int128;

// Packed TerminalKey: mid-edge 10 bits, forward vertex + 1 8 bits, two flag
// bits, walk length 8, length 8, loops 7, winding + 256 10 bits.
std::uint64_t pack(const TerminalKey& k) {
  std::uint64_t p = static_cast<std::uint64_t>(k.endMidEdge);
  p = (p << 8) | static_cast<std::uint64_t>(k.forwardVertex + 1);
  p = (p << 1) | (k.loopAtForward ? 1u : 0u);
  p = (p << 1) | (k.walkAtForward ? 1u : 0u);
  p = (p << 8) | static_cast<std::uint64_t>(k.walkLength);
  p = (p << 8) | static_cast<std::uint64_t>(k.length);
  p = (p << 7) | static_cast<std::uint64_t>(k.loops);
  p = (p << 10) | static_cast<std::uint64_t>(k.winding + 256);
  return p;
}

TerminalKey unpack(std::uint64_t p) {
  TerminalKey k;
  k.winding = static_cast<int>(p & 0x3ff) - 256;
  p >>= 10;
  k.loops = static_cast<int>(p & 0x7f);
  p >>= 7;
  k.length = static_cast<int>(p & 0xff);
  p >>= 8;
  k.walkLength = static_cast<int>(p & 0xff);
  p >>= 8;
  k.walkAtForward = p & 1;
  p >>= 1;
  k.loopAtForward = p & 1;
  p >>= 1;
  k.forwardVertex = static_cast<int>(p & 0xff) - 1;
  p >>= 8;
  k.endMidEdge = static_cast<int>(p);
  return k;
}

BigInt to_big(Count c) {
  BigInt hi = static_cast<std::uint64_t>(c >> 64);
  BigInt lo = static_cast<std::uint64_t>(c);
  return (hi << 64) | lo;
}

void check_capacity(const HoneycombDomain& domain, const EnumerationOptions& options) {
  const std::size_t cap = std::min<std::size_t>(options.vertexCap, 64);
  if (domain.vertex_count() > cap) {
    throw CapacityError("domain has " + std::to_string(domain.vertex_count()) +
                            " vertices; enumeration cap is " + std::to_string(cap),
                        cap);
  }
  if (domain.mid_edge_count() >= 1024) {
    throw CapacityError("too many mid-edges for the census key", cap);
  }
}

struct WalkState {
  MidEdgeId midEdge;
  Direction heading;
  VertexMask walk;
  int steps;
  int winding;
};

// Depth-first walk extension with per-worker loop cache.
class Enumerator {
 public:
  Enumerator(const HoneycombDomain& domain, std::size_t cacheCap)
      : domain_(domain), loops_(domain, cacheCap) {}

  WalkState initial() const {
    return {domain_.start_mid_edge(), Direction(0), 0, 0, 0};
  }

  // Records the terminal of s (unless zero-length) and everything reachable.
  void visit(const WalkState& s) {
    record(s);
    extend(s, [this](const WalkState& next) { visit(next); });
  }

  // Collects the states at depth, optionally recording the shorter walks.
  void split(const WalkState& s, int depth, bool recordShorter,
             std::vector<WalkState>& frontier) {
    if (s.steps == depth) {
      frontier.push_back(s);
      return;
    }
    if (recordShorter) record(s);
    extend(s, [&](const WalkState& next) { split(next, depth, recordShorter, frontier); });
  }

  std::unordered_map<std::uint64_t, Count>& accumulator() { return acc_; }

 private:
  template <class F>
  void extend(const WalkState& s, F&& next) {
    const StepResult step = domain_.step(s.midEdge, s.heading);
    if (step.outOfDomain || (s.walk & bit(step.vertex))) return;
    for (const Continuation& c : step.continuations) {
      next(WalkState{c.midEdge, c.heading, s.walk | bit(step.vertex), s.steps + 1,
                     s.winding + (c.turn == TurnSense::Left ? 1 : -1)});
    }
  }

  void record(const WalkState& s) {
    if (s.steps == 0) return;
    const VertexMask free = loops_.all_vertices() & ~s.walk;
    const StepResult step = domain_.step(s.midEdge, s.heading);
    TerminalKey key;
    key.endMidEdge = s.midEdge;
    key.walkLength = s.steps;
    key.winding = s.winding;
    if (step.outOfDomain) {
      key.forwardVertex = kBoundaryExit;
      add(key, loops_.count(free));
      return;
    }
    key.forwardVertex = step.vertex;
    if (s.walk & bit(step.vertex)) {
      key.walkAtForward = true;
      add(key, loops_.count(free));
      return;
    }
    const LoopPoly all = loops_.count(free);
    const LoopPoly avoiding = loops_.count(free & ~bit(step.vertex));
    add(key, avoiding);
    key.loopAtForward = true;
    add(key, detail::subtract(all, avoiding));
  }

  void add(TerminalKey key, const LoopPoly& poly) {
    const int walkLength = key.walkLength;
    for (const auto& t : poly) {
      key.length = walkLength + t.vertices;
      key.loops = t.loops;
      Count& slot = acc_[pack(key)];
      if (__builtin_add_overflow(slot, static_cast<Count>(t.count), &slot)) {
        throw CapacityError("census count overflow", 64);
      }
    }
  }

  const HoneycombDomain& domain_;
  LoopCounter loops_;
  std::unordered_map<std::uint64_t, Count> acc_;
};

void drain(std::unordered_map<std::uint64_t, Count>& acc, TerminalCensus& out) {
  for (const auto& [packed, c] : acc) out.add(unpack(packed), to_big(c));
  acc.clear();
}

}  // namespace

TerminalCensus enumerate_terminal_census(const HoneycombDomain& domain,
                                         const EnumerationOptions& options) {
  check_capacity(domain, options);
  TerminalCensus census(domain.hash());
  Enumerator root(domain, options.cacheCap);
  const unsigned workers = std::max(1u, options.workers);
  if (workers == 1) {
    root.visit(root.initial());
    drain(root.accumulator(), census);
    return census;
  }

  // Split at the shallowest depth giving a few tasks per worker.
  std::vector<WalkState> frontier;
  int depth = 1;
  for (;; ++depth) {
    frontier.clear();
    root.split(root.initial(), depth, false, frontier);
    if (frontier.size() >= 4 * workers || depth >= static_cast<int>(domain.vertex_count())) {
      break;
    }
  }
  frontier.clear();
  root.split(root.initial(), depth, true, frontier);

  std::vector<TerminalCensus> partial(workers, TerminalCensus(domain.hash()));
  std::vector<std::exception_ptr> errors(workers);
  {
    std::vector<std::jthread> pool;
    for (unsigned w = 0; w < workers; ++w) {
      pool.emplace_back([&, w] {
        try {
          Enumerator e(domain, options.cacheCap);
          for (std::size_t i = w; i < frontier.size(); i += workers) e.visit(frontier[i]);
          drain(e.accumulator(), partial[w]);
        } catch (...) {
          errors[w] = std::current_exception();
        }
      });
    }
  }
  for (const auto& e : errors) {
    if (e) std::rethrow_exception(e);
  }
  drain(root.accumulator(), census);
  for (const auto& p : partial) census = merge_census(census, p);
  return census;
}

LoopCensus enumerate_loop_census(const HoneycombDomain& domain, std::optional<VertexId> avoid,
                                 const EnumerationOptions& options) {
  check_capacity(domain, options);
  if (avoid && (*avoid < 0 || *avoid >= static_cast<VertexId>(domain.vertex_count()))) {
    throw std::invalid_argument("avoid vertex is not in the domain");
  }
  LoopCounter counter(domain, options.cacheCap);
  VertexMask allowed = counter.all_vertices();
  if (avoid) allowed &= ~bit(*avoid);
  LoopCensus out(avoid);
  for (const auto& t : counter.count(allowed)) out.add(t.vertices, t.loops, BigInt(t.count));
  return out;
}

TerminalCensus merge_census(const TerminalCensus& a, const TerminalCensus& b) {
  if (!a.domain_hash().empty() && !b.domain_hash().empty() &&
      a.domain_hash() != b.domain_hash()) {
    throw std::invalid_argument("cannot merge censuses of different domains");
  }
  TerminalCensus out(a.domain_hash().empty() ? b.domain_hash() : a.domain_hash());
  for (const auto& [k, c] : a.entries()) out.add(k, c);
  for (const auto& [k, c] : b.entries()) out.add(k, c);
  return out;
}

nlohmann::json census_to_json(const TerminalCensus& census) {
  nlohmann::json entries = nlohmann::json::array();
  for (const auto& [k, c] : census.entries()) {
    entries.push_back({{"edge", k.endMidEdge},
                       {"fwd", k.is_exit() ? nlohmann::json("exit") : nlohmann::json(k.forwardVertex)},
                       {"loopAtFwd", k.loopAtForward},
                       {"walkAtFwd", k.walkAtForward},
                       {"walkLen", k.walkLength},
                       {"len", k.length},
                       {"loops", k.loops},
                       {"wind", k.winding},
                       {"count", c.str()}});
  }
  return {{"schema", kSchemaVersion},
          {"kind", "terminal-census"},
          {"domainHash", census.domain_hash()},
          {"entries", entries}};
}

TerminalCensus census_from_json(const nlohmann::json& doc) {
  if (doc.at("schema") != kSchemaVersion || doc.at("kind") != "terminal-census") {
    throw std::invalid_argument("not a terminal census document");
  }
  TerminalCensus out(doc.at("domainHash").get<std::string>());
  for (const auto& e : doc.at("entries")) {
    TerminalKey k;
    k.endMidEdge = e.at("edge").get<int>();
    k.forwardVertex = e.at("fwd").is_string() ? kBoundaryExit : e.at("fwd").get<int>();
    k.loopAtForward = e.at("loopAtFwd").get<bool>();
    k.walkAtForward = e.at("walkAtFwd").get<bool>();
    k.walkLength = e.at("walkLen").get<int>();
    k.length = e.at("len").get<int>();
    k.loops = e.at("loops").get<int>();
    k.winding = e.at("wind").get<int>();
    out.add(k, BigInt(e.at("count").get<std::string>()));
  }
  return out;
}

nlohmann::json loop_census_to_json(const LoopCensus& census) {
  nlohmann::json entries = nlohmann::json::array();
  for (const auto& [k, c] : census.entries()) {
    entries.push_back({{"len", k.first}, {"loops", k.second}, {"count", c.str()}});
  }
  return {{"schema", kSchemaVersion},
          {"kind", "loop-census"},
          {"avoid", census.avoid() ? nlohmann::json(*census.avoid()) : nlohmann::json(nullptr)},
          {"entries", entries}};
}

LoopCensus loop_census_from_json(const nlohmann::json& doc) {
  if (doc.at("schema") != kSchemaVersion || doc.at("kind") != "loop-census") {
    throw std::invalid_argument("not a loop census document");
  }
  std::optional<VertexId> avoid;
  if (!doc.at("avoid").is_null()) avoid = doc.at("avoid").get<int>();
  LoopCensus out(avoid);
  for (const auto& e : doc.at("entries")) {
    out.add(e.at("len").get<int>(), e.at("loops").get<int>(),
            BigInt(e.at("count").get<std::string>()));
  }
  return out;
}

}  // namespace parafermion
