#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "pebbling/blob_engine.hpp"
#include "pebbling/cnf.hpp"
#include "pebbling/graph.hpp"
#include "pebbling/pebble_engine.hpp"
#include "pebbling/price_search.hpp"
#include "pebbling/resolution.hpp"

namespace pebbling {

// Black pebbling to resolution. A black pebble on v is the clause
// All+(v); placing it downloads the source axiom or derives All+(v) from the
// predecessors' clauses and the propagation axioms with a resolution ladder
// in lexicographic order of (j1..jk). Removing it erases the clause. The
// first time a target is black its clause is resolved against the target
// axioms down to the empty clause and compilation stops.
// Throws std::invalid_argument for non-black moves and propagates
// validate_pebbling errors.
ResolutionTrace compile_pebbling(const Dag& g, int degree, const std::vector<Move>& moves);

// Blob pebbling to resolution. [B]<W> is the clause set
// { All+(B) or not x_{w,f(w)} for w in W : f a choice W -> [d] }. Introduce
// downloads the propagation axioms; merge resolves on the d pivot variables
// per choice; inflate reuses the clauses it weakens; erase drops a clause
// when no live subconfiguration still uses it. A clause already missing
// the pivot subsumes the merge result and is reused as is. The final
// [{t}]<> of the first target is resolved against the target axioms.
ResolutionTrace compile_blob_pebbling(const Dag& g, int degree, const std::vector<BlobMove>& moves,
                                      const BlobGameOptions& options = {});

struct SimulationReport {
  int pebbling_time = 0;  // black: placements; blob: moves other than erase
  int pebbling_cost = 0;  // black: space; blob: max chargeable cost
  RefutationMetrics refutation;
  double space_ratio = 0;   // clause_space / cost
  double length_ratio = 0;  // length / time
};

SimulationReport metrics_vs_cost(const Dag& g, int degree, const std::vector<Move>& moves);
SimulationReport metrics_vs_cost(const Dag& g, int degree, const std::vector<BlobMove>& moves,
                                 const BlobGameOptions& options = {});

// Exact semantic implication by truth table over at most 24 variables.
class ImplicationOracle {
 public:
  static constexpr int max_vars = 24;

  // Throws SizeBoundExceeded above max_vars.
  ImplicationOracle(int num_vars, const std::vector<Clause>& clauses);

  int num_vars() const { return num_vars_; }
  bool satisfiable() const;
  bool implies(const Clause& c) const;
  // Models as bit masks: bit (x - 1) holds variable x.
  std::vector<std::uint32_t> models() const;

 private:
  int num_vars_;
  std::vector<std::uint64_t> is_model_;  // one bit per assignment
};

// Every [B]<W> with B nonempty such that the clauses imply each clause of
// [B]<W> and no longer do once any one vertex is dropped from B or from W.
// Throws SizeBoundExceeded beyond 12 vertices or 24 variables.
BlobConfig induce_configuration(const Dag& g, int degree, const std::vector<Clause>& live);

// The configuration induced after each event of the trace, computed on the
// live clauses other than target axioms, up to (excluding) the event that
// derives the empty clause.
std::vector<BlobConfig> induced_sequence(const Dag& g, int degree, const ResolutionTrace& trace);

struct SequenceCheck {
  bool legal = true;
  std::optional<std::size_t> failed_step;
  std::string reason;
};

// Each subconfiguration that appears at a step must be an inflation of an
// element of the merge closure of the previous configuration together with
// every introduction; the last configuration must contain [{t}]<> for every
// target. merge_cap bounds the closure size.
SequenceCheck check_induced_sequence(const Dag& g, const std::vector<BlobConfig>& sequence,
                                     std::size_t merge_cap = 20000);

// [[{"blob":[..],"whites":[..]}, ...], ...]
std::string induced_json(const std::vector<BlobConfig>& sequence);

}  // namespace pebbling
