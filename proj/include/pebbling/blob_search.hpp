#pragma once

#include <cstddef>
#include <vector>

#include "pebbling/blob_engine.hpp"
#include "pebbling/graph.hpp"

namespace pebbling {

struct BlobSearchOptions {
  bool labelled = false;        // singleton blobs only
  bool allow_inflation = true;  // one vertex added to the blob or whites per move
  int max_subconfigs = 4;       // simultaneous subconfigurations
  int max_vertices = 8;
  std::size_t max_states = 5'000'000;
};

struct BlobSearchResult {
  int price = 0;
  std::vector<BlobMove> moves;  // a witness accepted by validate_blob_pebbling
};

// Iterative deepening on the chargeable cost bound k = 1, 2, ...: a
// breadth-first search over configurations of cost <= k until one holds
// [{t}]<> for every target. Exhaustive within the move set and subconfig
// cap given in the options. Throws SizeBoundExceeded past the limits.
BlobSearchResult optimal_blob_pebbling(const Dag& g, const BlobSearchOptions& options = {});

inline int optimal_blob_price(const Dag& g, const BlobSearchOptions& options = {}) {
  return optimal_blob_pebbling(g, options).price;
}

}  // namespace pebbling
