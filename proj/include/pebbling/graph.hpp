#pragma once

#include <compare>
#include <cstdint>
#include <set>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace pebbling {

using Vertex = int;
using VertexSet = std::set<Vertex>;

struct Edge {
  Vertex from = 0;
  Vertex to = 0;
  auto operator<=>(const Edge&) const = default;
};

// A directed acyclic graph with vertices 0..n-1 numbered in topological
// order. Construction never throws on malformed input; use validate_dag to
// find out what is wrong with it. Immutable once built.
class Dag {
 public:
  Dag() = default;
  // Targets default to all sinks when left empty.
  Dag(int num_vertices, std::vector<Edge> edges, std::vector<Vertex> targets = {});

  int size() const { return num_vertices_; }
  const std::vector<Edge>& edges() const { return edges_; }
  std::span<const Vertex> preds(Vertex v) const { return preds_[v]; }
  std::span<const Vertex> succs(Vertex v) const { return succs_[v]; }
  int indegree(Vertex v) const { return static_cast<int>(preds_[v].size()); }
  bool contains(Vertex v) const { return v >= 0 && v < num_vertices_; }
  bool is_source(Vertex v) const { return preds_[v].empty(); }
  bool is_sink(Vertex v) const { return succs_[v].empty(); }

  const std::vector<Vertex>& sources() const { return sources_; }
  const std::vector<Vertex>& sinks() const { return sinks_; }
  const std::vector<Vertex>& targets() const { return targets_; }

  // True when the target list is exactly the sink list.
  bool targets_are_sinks() const { return targets_ == sinks_; }

  friend bool operator==(const Dag& a, const Dag& b) {
    return a.num_vertices_ == b.num_vertices_ && a.edges_ == b.edges_ && a.targets_ == b.targets_;
  }

 private:
  int num_vertices_ = 0;
  std::vector<Edge> edges_;  // sorted by (from, to)
  std::vector<std::vector<Vertex>> preds_;
  std::vector<std::vector<Vertex>> succs_;
  std::vector<Vertex> sources_;
  std::vector<Vertex> sinks_;
  std::vector<Vertex> targets_;
};

enum class DegreePolicy {
  allow_unary,  // indegree 0, 1 or 2 (chains)
  fan_in_two,   // indegree 0 or exactly 2
};

struct ValidationReport {
  std::vector<std::string> problems;
  bool ok() const { return problems.empty(); }
  bool mentions(std::string_view needle) const;
  std::string to_string() const;
};

ValidationReport validate_dag(const Dag& g, DegreePolicy policy = DegreePolicy::allow_unary);

class GraphError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class ParseError : public std::runtime_error {
 public:
  ParseError(int line, const std::string& message)
      : std::runtime_error("line " + std::to_string(line) + ": " + message), line_(line) {}
  int line() const { return line_; }

 private:
  int line_;
};

// DIMACS-flavoured graph text: "p dag <n>", "e <src> <dst>", "t <v>",
// comment lines start with "c". Target lines are omitted when the targets
// are exactly the sinks.
std::string write_graph(const Dag& g);
Dag read_graph(std::string_view text);

// Proper ancestors/descendants as bit vectors indexed by vertex.
std::vector<std::vector<bool>> ancestor_matrix(const Dag& g);

}  // namespace pebbling
