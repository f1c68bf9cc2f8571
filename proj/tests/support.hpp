#pragma once

#include <complex>
#include <map>
#include <memory>
#include <utility>

#include "parafermion/census.hpp"
#include "parafermion/lattice.hpp"
#include "parafermion/observable.hpp"

namespace testing {

using namespace parafermion;

struct Enumerated {
  HoneycombDomain domain;
  TerminalCensus census;
  LoopCensus loops;
  LoopCensus loopsAvoidStart;

  ObservableInput input() const { return {domain, census, loops, loopsAvoidStart}; }
};

// Censuses are shared between test cases; each trapezoid is enumerated once.
inline const Enumerated& trapezoid(int T, int L) {
  static std::map<std::pair<int, int>, std::unique_ptr<Enumerated>> cache;
  auto& slot = cache[{T, L}];
  if (!slot) {
    HoneycombDomain d = build_trapezoid(T, L);
    TerminalCensus c = enumerate_terminal_census(d);
    LoopCensus l = enumerate_loop_census(d, std::nullopt);
    LoopCensus la = enumerate_loop_census(d, d.start_vertex());
    slot = std::make_unique<Enumerated>(
        Enumerated{std::move(d), std::move(c), std::move(l), std::move(la)});
  }
  return *slot;
}

// Heading of the last step of the walk, as an index in 0..5.
inline int final_heading(const HoneycombDomain& d, const TerminalKey& k) {
  const MidEdge& m = d.mid_edge(k.endMidEdge);
  if (k.is_exit()) return d.heading_towards(k.endMidEdge, m.vertices[0]).opposite().index();
  return d.heading_towards(k.endMidEdge, k.forwardVertex).index();
}

inline int mod6(int w) { return ((w % 6) + 6) % 6; }

}  // namespace testing
