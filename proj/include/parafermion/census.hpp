#pragma once

#include <cstddef>
#include <map>
#include <optional>
#include <string>
#include <utility>

#include <boost/multiprecision/cpp_int.hpp>
#include <json.hpp>

#include "parafermion/lattice.hpp"

namespace parafermion {

using BigInt = boost::multiprecision::cpp_int;

inline constexpr VertexId kBoundaryExit = -1;

// One census cell. A configuration is a self-avoiding walk from a plus a set
// of vertex-disjoint closed loops; the walk ends at endMidEdge heading into
// forwardVertex (kBoundaryExit when it leaves the domain).
struct TerminalKey {
  MidEdgeId endMidEdge = 0;
  VertexId forwardVertex = kBoundaryExit;
  // A closed loop passes through the forward vertex.
  bool loopAtForward = false;
  // The walk itself already passes through the forward vertex.
  bool walkAtForward = false;
  int walkLength = 0;  // vertices visited by the walk (= mid-edge steps)
  int length = 0;      // vertices occupied by walk and loops together
  int loops = 0;
  int winding = 0;     // W = winding * pi/3

  bool is_exit() const { return forwardVertex == kBoundaryExit; }
  bool forward_free() const { return !is_exit() && !loopAtForward && !walkAtForward; }

  auto operator<=>(const TerminalKey&) const = default;
};

class TerminalCensus {
 public:
  TerminalCensus() = default;
  explicit TerminalCensus(std::string domainHash) : domainHash_(std::move(domainHash)) {}

  const std::string& domain_hash() const { return domainHash_; }
  const std::map<TerminalKey, BigInt>& entries() const { return entries_; }
  std::size_t size() const { return entries_.size(); }
  bool empty() const { return entries_.empty(); }

  // Adds count to the cell; zero counts are ignored.
  void add(const TerminalKey& key, const BigInt& count);
  BigInt count(const TerminalKey& key) const;
  BigInt total() const;

  bool operator==(const TerminalCensus&) const = default;

 private:
  std::string domainHash_;
  std::map<TerminalKey, BigInt> entries_;
};

// Loop-only configurations keyed by (occupied vertices, loop count).
class LoopCensus {
 public:
  LoopCensus() = default;
  explicit LoopCensus(std::optional<VertexId> avoid) : avoid_(avoid) {}

  const std::optional<VertexId>& avoid() const { return avoid_; }
  const std::map<std::pair<int, int>, BigInt>& entries() const { return entries_; }
  void add(int length, int loops, const BigInt& count);
  BigInt count(int length, int loops) const;

  bool operator==(const LoopCensus&) const = default;

 private:
  std::optional<VertexId> avoid_;
  std::map<std::pair<int, int>, BigInt> entries_;
};

struct EnumerationOptions {
  std::size_t vertexCap = 64;
  unsigned workers = 1;
  // Maximum number of cached loop polynomials per worker; 0 disables caching.
  std::size_t cacheCap = 1u << 22;
};

// Reads PARAFERMION_CACHE_CAP when set.
EnumerationOptions default_enumeration_options();

TerminalCensus enumerate_terminal_census(const HoneycombDomain& domain,
                                         const EnumerationOptions& options = {});

LoopCensus enumerate_loop_census(const HoneycombDomain& domain, std::optional<VertexId> avoid,
                                 const EnumerationOptions& options = {});

// Keywise sum. Throws std::invalid_argument on a domain mismatch.
TerminalCensus merge_census(const TerminalCensus& a, const TerminalCensus& b);

// Canonical serialisation; identical censuses give identical bytes.
nlohmann::json census_to_json(const TerminalCensus& census);
TerminalCensus census_from_json(const nlohmann::json& doc);
nlohmann::json loop_census_to_json(const LoopCensus& census);
LoopCensus loop_census_from_json(const nlohmann::json& doc);

}  // namespace parafermion
