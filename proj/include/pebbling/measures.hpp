#pragma once

#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "pebbling/graph.hpp"
#include "pebbling/klawe_definitions.hpp"
#include "pebbling/pebble_engine.hpp"
#include "pebbling/price_search.hpp"

namespace pebbling {

using klawe::HidingDirection;

class GraphNotLayered : public std::invalid_argument {
 public:
  GraphNotLayered() : std::invalid_argument("graph not layered") {}
};

struct LayeredView {
  std::vector<int> level;  // longest path from a source
  int max_level = 0;
  bool layered = false;  // every edge joins consecutive levels
};

LayeredView layered_view(const Dag& g);

// Graphs up to 64 vertices.
VertexSet hidden_vertices(const Dag& g, const VertexSet& u,
                          HidingDirection dir = HidingDirection::from_sources);

struct MeasureValue {
  int value = 0;
  std::vector<int> partial;  // partial[j] = m^j(U) for j = 0..max_level
};

// Throws GraphNotLayered.
MeasureValue klawe_measure(const Dag& g, const LayeredView& view, const VertexSet& u);
MeasureValue klawe_measure(const Dag& g, const VertexSet& u);

// Least measure over hiding sets admissible for the configuration. Throws
// SizeBoundExceeded above 14 vertices and GraphNotLayered.
int potential(const Dag& g, const PebbleConfig& config);

struct LhcResult {
  bool holds = true;
  VertexSet witness_set;  // U with a hidden vertex no small subset hides
  Vertex witness_vertex = -1;
};

// Throws SizeBoundExceeded above 12 vertices.
LhcResult check_lhc(const Dag& g, int bound);

struct MeasureReport {
  VertexSet hidden;
  int measure = 0;
  std::vector<int> partial;
  int potential = 0;
};

// hidden and measure are taken on the pebbled set of the configuration.
MeasureReport measure_report(const Dag& g, const PebbleConfig& config);
std::string to_json(const MeasureReport& report);

}  // namespace pebbling
