#pragma once

#include <stdexcept>
#include <vector>

#include "pebbling/families.hpp"
#include "pebbling/graph.hpp"
#include "pebbling/pebble_engine.hpp"

namespace pebbling {

class UnsupportedFamily : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

class BudgetTooSmall : public std::invalid_argument {
 public:
  BudgetTooSmall(int budget, int minimum);
  int budget() const { return budget_; }
  int minimum() const { return minimum_; }

 private:
  int budget_;
  int minimum_;
};

struct StrategyParams {
  int space_budget = 1;
};

// Standard black pebblings: chains with 2 pebbles (1 for a single vertex),
// pyramids by a diagonal sweep with h+2, binary trees depth-first with h+2,
// and Carlson-Savage graphs at their minimum strategy budget. Every vertex
// of a chain or pyramid is placed exactly once.
std::vector<Move> black_strategy(const Dag& g, const FamilySpec& family);

// Least budget cs_tradeoff_strategy accepts: 1 at r = 0, r + 2 for r >= 1.
int cs_min_budget(int c, int r);

// Pebbles every sink of Gamma(c, r) within the space budget. The top block
// walks min(c, budget - max(min_budget(r-1), 2)) spines side by side so
// each child sink feeds all of them at once; everything below walks one
// spine at a time. Sub-strategies are memoized per (block, sink, budget).
std::vector<Move> cs_tradeoff_strategy(const Dag& g, int c, int r, const StrategyParams& params);

}  // namespace pebbling
