#pragma once

#include <string>
#include <vector>

#include "pebbling/graph.hpp"

namespace pebbling {

enum class FamilyKind { chain, pyramid, binary_tree, carlson_savage };

struct FamilySpec {
  FamilyKind kind = FamilyKind::chain;
  int n = 0;  // chain length
  int h = 0;  // pyramid / tree height
  int c = 0;  // Carlson-Savage: number of sinks and spines
  int r = 0;  // Carlson-Savage: recursion depth

  static FamilySpec chain(int n) { return {FamilyKind::chain, n, 0, 0, 0}; }
  static FamilySpec pyramid(int h) { return {FamilyKind::pyramid, 0, h, 0, 0}; }
  static FamilySpec binary_tree(int h) { return {FamilyKind::binary_tree, 0, h, 0, 0}; }
  static FamilySpec carlson_savage(int c, int r) {
    return {FamilyKind::carlson_savage, 0, 0, c, r};
  }

  // "chain", "pyramid", ...
  std::string name() const;
  // "n=4", "h=2", "c=2;r=1"
  std::string params() const;

  bool operator==(const FamilySpec&) const = default;
};

FamilyKind parse_family_kind(const std::string& name);

// Throws std::invalid_argument when a parameter is out of range.
void check_family_params(const FamilySpec& spec);

Dag build_family(const FamilySpec& spec);

// Pyramid of height h: level i in [0, h] holds h - i + 1 vertices; vertex
// (i, j) has predecessors (i-1, j) and (i-1, j+1).
Vertex pyramid_vertex(int h, int level, int pos);

// Complete binary tree of height h with leaves on level 0; vertex (i, j)
// has predecessors (i-1, 2j) and (i-1, 2j+1).
Vertex tree_vertex(int h, int level, int pos);

// Vertex layout of a Carlson-Savage graph, one block per recursion level.
//
// A level-0 block is c isolated vertices. A level-r block consists of two
// level-(r-1) blocks, c pyramids of height r-1 and c spines of 2c vertices.
// The first vertex of spine j has the top of pyramid j and sink 0 of the
// first sub-block as predecessors; spine vertex i (1 <= i < 2c) has spine
// vertex i-1 and sink i of the first sub-block (i < c) or sink i-c of the
// second sub-block (i >= c). The block's sinks are the spine ends.
struct CsBlock {
  int level = 0;
  std::vector<Vertex> sinks;
  std::vector<CsBlock> children;              // empty at level 0
  std::vector<std::vector<Vertex>> pyramids;  // topological order, top last
  std::vector<std::vector<Vertex>> spines;    // spine order

  int pyramid_height() const { return level - 1; }
};

struct CsGraph {
  int c = 0;
  int r = 0;
  CsBlock root;
  Dag dag;
};

CsGraph build_carlson_savage(int c, int r);

// Closed-form size of the Carlson-Savage graph.
int carlson_savage_size(int c, int r);

}  // namespace pebbling
