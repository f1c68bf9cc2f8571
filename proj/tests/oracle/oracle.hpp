#pragma once

#include <optional>

#include "parafermion/census.hpp"
#include "parafermion/lattice.hpp"

// Brute-force reference censuses for small domains. Shares nothing with the
// optimised enumerator beyond the lattice: it visits every subset of
// lattice edges by plain include/exclude recursion, checks occupancy
// degrees, and traces walks geometrically.
namespace parafermion::oracle {

inline constexpr std::size_t kOracleVertexCap = 16;

TerminalCensus oracle_enumerate(const HoneycombDomain& domain);

LoopCensus oracle_loop_census(const HoneycombDomain& domain, std::optional<VertexId> avoid);

}  // namespace parafermion::oracle
