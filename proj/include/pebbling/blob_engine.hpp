#pragma once

#include <compare>
#include <functional>
#include <optional>
#include <set>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "pebbling/graph.hpp"
#include "pebbling/pebble_engine.hpp"

namespace pebbling {

// [B]<W>: a blob of black pebbles B, at least one of which is "true",
// conditioned on the white pebbles W. The labelled subconfiguration v<W>
// is the case B = {v}.
struct BlobSubconfig {
  VertexSet blob;
  VertexSet whites;

  bool unconditional() const { return whites.empty(); }
  auto operator<=>(const BlobSubconfig&) const = default;
};

std::string to_string(const BlobSubconfig& s);

struct BlobConfig {
  std::set<BlobSubconfig> subconfigs;

  bool contains(const BlobSubconfig& s) const { return subconfigs.count(s) > 0; }
  bool operator==(const BlobConfig&) const = default;
};

class BadMerge : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class BadInflation : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// [{v}]<pred(v)>.
BlobSubconfig introduce(const Dag& g, Vertex v);

// Resolves s_pos and s_neg on the pivot: the pivot must be in the blob of
// s_pos, among the whites of s_neg, and be the only clash between the two.
BlobSubconfig merge(const BlobSubconfig& s_pos, const BlobSubconfig& s_neg, Vertex pivot);

// Extra side condition for inflation; returns a reason when violated.
using InflationCheck =
    std::function<std::optional<std::string>(const BlobSubconfig& from, const BlobSubconfig& to)>;

// Strict mode: every white of the inflated subconfiguration must be a proper
// ancestor of one of its blob vertices.
InflationCheck strict_inflation_check(const Dag& g);

BlobSubconfig inflate(const BlobSubconfig& s, const BlobSubconfig& target,
                      const InflationCheck& extra = {});

struct BlobCost {
  int naive = 0;       // |union of blobs| + |union of whites|
  int chargeable = 0;  // min over R hitting every blob of |R ∪ union of whites|
  bool operator==(const BlobCost&) const = default;
};

BlobCost blob_cost(const BlobConfig& cfg);

template <typename Range>
BlobCost blob_cost_of(const Range& subconfigs) {
  BlobConfig cfg;
  for (const auto& s : subconfigs) cfg.subconfigs.insert(s);
  return blob_cost(cfg);
}

struct BlobMove {
  enum class Kind { introduce, merge, inflate, erase };
  Kind kind = Kind::introduce;
  Vertex v = 0;          // introduce
  int first = 0;         // merge: positive side; inflate/erase: subject
  int second = 0;        // merge: negative side
  Vertex pivot = 0;      // merge
  BlobSubconfig target;  // inflate

  static BlobMove introduce(Vertex v) { return {Kind::introduce, v, 0, 0, 0, {}}; }
  static BlobMove merge(int pos, int neg, Vertex pivot) {
    return {Kind::merge, 0, pos, neg, pivot, {}};
  }
  static BlobMove inflate(int id, BlobSubconfig target) {
    return {Kind::inflate, 0, id, 0, 0, std::move(target)};
  }
  static BlobMove erase(int id) { return {Kind::erase, 0, id, 0, 0, {}}; }
  bool operator==(const BlobMove&) const = default;
};

struct BlobGameOptions {
  bool labelled = false;     // only singleton blobs allowed
  InflationCheck inflation;  // optional extra inflation condition
};

class BlobMoveError : public std::runtime_error {
 public:
  BlobMoveError(std::size_t index, const std::string& reason)
      : std::runtime_error("blob move " + std::to_string(index) + ": " + reason), index_(index) {}
  std::size_t index() const { return index_; }

 private:
  std::size_t index_;
};

struct BlobPebblingReport {
  int steps = 0;
  int max_cost = 0;  // chargeable
  int max_naive = 0;
  BlobConfig final_config;
};

// Subconfigurations get ids 0, 1, 2, ... in creation order (introduce,
// merge and inflate each create one); erased ids stay dead. Accepts iff
// every move is legal and the final configuration holds [{t}]<> for every
// target t.
BlobPebblingReport validate_blob_pebbling(const Dag& g, const std::vector<BlobMove>& moves,
                                          const BlobGameOptions& options = {});

// "I v", "M i j p", "F i <blob>|<whites>", "E i"; blob and whites are
// comma-separated vertex lists.
std::string format_blob_moves(const std::vector<BlobMove>& moves);
std::vector<BlobMove> parse_blob_moves(std::string_view text);

}  // namespace pebbling
