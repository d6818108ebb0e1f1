#pragma once

#include <cstddef>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "pebbling/graph.hpp"
#include "pebbling/pebble_engine.hpp"

namespace pebbling {

class SizeBoundExceeded : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct SearchLimits {
  int max_vertices_black = 20;
  int max_vertices_bw = 14;
  std::size_t max_states = 40'000'000;
  int threads = 1;  // frontier budgets searched concurrently
};

struct FrontierPoint {
  int space = 0;
  int min_time = 0;
  bool operator==(const FrontierPoint&) const = default;
};

// Strictly increasing space, strictly decreasing min_time.
struct ParetoFrontier {
  std::vector<FrontierPoint> points;
  bool operator==(const ParetoFrontier&) const = default;
};

ParetoFrontier pareto_filter(const std::vector<FrontierPoint>& series);

// Least s admitting a complete pebbling of space <= s.
int optimal_price(const Dag& g, Game game, const SearchLimits& limits = {});

// Minimum number of placements over complete pebblings of space <= s, or
// nullopt when none exists.
std::optional<int> min_pebbling_time(const Dag& g, Game game, int space,
                                     const SearchLimits& limits = {});

// A time-optimal complete pebbling within the space budget. Ties are broken
// towards the lexicographically smallest move (PB < RB < PW < RW, then
// vertex), so the returned moves are deterministic.
std::optional<std::vector<Move>> shortest_pebbling(const Dag& g, Game game, int space,
                                                   const SearchLimits& limits = {});

// min_time(s) for every s in [first, last], skipping infeasible budgets.
std::vector<FrontierPoint> min_time_series(const Dag& g, Game game, int first, int last,
                                           const SearchLimits& limits = {});

// Pareto points of min_time(s) for s from the optimal price to space_cap.
ParetoFrontier tradeoff_frontier(const Dag& g, Game game, int space_cap,
                                 const SearchLimits& limits = {});

std::string frontier_csv(const std::string& family, const std::string& params, Game game,
                         const ParetoFrontier& frontier, bool header = true);

}  // namespace pebbling
