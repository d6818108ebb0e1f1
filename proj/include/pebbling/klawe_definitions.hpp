#pragma once

// The definitions the lower-bound machinery is built on. measures.cpp only
// enumerates; every formula it evaluates is spelled out here.

#include <bit>
#include <cstdint>
#include <vector>

namespace pebbling::klawe {

using Mask = std::uint64_t;

enum class HidingDirection {
  from_sources,  // every path from a source to v meets U
  to_sinks,      // every path from v to a sink meets U
};

// The hiding closure of U. Vertices are in topological order and pred/succ
// hold adjacency masks. A vertex of U hides itself; a source outside U is
// never hidden from the sources, a sink outside U never from the sinks.
inline Mask hidden_mask(const std::vector<Mask>& pred, const std::vector<Mask>& succ, Mask u,
                        HidingDirection dir) {
  const int n = static_cast<int>(pred.size());
  Mask open = 0;  // vertices reachable along a path that avoids U
  if (dir == HidingDirection::from_sources) {
    for (int v = 0; v < n; ++v) {
      const Mask bit = Mask{1} << v;
      if (!(u & bit) && (pred[v] == 0 || (pred[v] & open))) open |= bit;
    }
  } else {
    for (int v = n - 1; v >= 0; --v) {
      const Mask bit = Mask{1} << v;
      if (!(u & bit) && (succ[v] == 0 || (succ[v] & open))) open |= bit;
    }
  }
  const Mask all = n == 64 ? ~Mask{0} : (Mask{1} << n) - 1;
  return all & ~open;
}

// level(v) is the length of the longest path from a source to v. A graph is
// layered when every edge joins level i to level i + 1.
//
// For a level j, U{>=j} is the part of U on levels >= j and L_{>=j}(U) is the
// least size of a vertex set on levels >= j whose hiding closure contains
// U{>=j}. The partial measure is
//   m^j(U) = j + 2 * L_{>=j}(U)   when U{>=j} is nonempty,
//   m^j(U) = 0                    otherwise,
// and the measure is m(U) = max over j of m^j(U).
constexpr int partial_measure(int level, int blocker_size) {
  return blocker_size == 0 ? 0 : level + 2 * blocker_size;
}

// U is admissible for a configuration with pebbled set P when it is tight:
// its hiding closure equals that of P. The potential of the configuration
// is the least m(U) over admissible U; U = P is always admissible.
constexpr bool admissible(Mask hidden_u, Mask hidden_pebbled) { return hidden_u == hidden_pebbled; }

// Limited hiding-cardinality with bound K: for every U and every v in the
// hiding closure of U, some U' subset of U with |U'| <= K hides v.
constexpr bool small_hider(Mask candidate, Mask u, int bound) {
  return (candidate & ~u) == 0 && std::popcount(candidate) <= bound;
}

// The bound the property holds with on a pyramid of height h: one vertex per
// level, plus one.
constexpr int pyramid_lhc_bound(int h) { return h + 1; }

}  // namespace pebbling::klawe
