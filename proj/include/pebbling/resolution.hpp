#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "pebbling/cnf.hpp"

namespace pebbling {

class BadPivot : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

class TautologicalResolvent : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

// (c1 minus pivot) joined with (c2 minus -pivot), first-occurrence order,
// duplicates merged. pivot is a variable: it must occur positively in c1
// and negatively in c2.
Clause resolve(const Clause& c1, const Clause& c2, int pivot);

struct TraceEvent {
  enum class Kind { axiom, infer, erase };
  Kind kind = Kind::axiom;
  Clause clause;  // axiom and infer
  int left = 0;   // infer: id of the clause holding +pivot; erase: the id
  int right = 0;  // infer: id of the clause holding -pivot
  int pivot = 0;  // infer

  static TraceEvent axiom(Clause c) { return {Kind::axiom, std::move(c)}; }
  static TraceEvent infer(int left, int right, int pivot, Clause c) {
    return {Kind::infer, std::move(c), left, right, pivot};
  }
  static TraceEvent erase(int id) { return {Kind::erase, {}, id}; }
  bool operator==(const TraceEvent&) const = default;
};

// Axiom and infer events receive ids 1, 2, ... in order of appearance.
struct ResolutionTrace {
  std::vector<TraceEvent> events;
  bool operator==(const ResolutionTrace&) const = default;
};

struct RefutationMetrics {
  int length = 0;        // axiom and infer events
  int width = 0;         // largest clause in the trace
  int clause_space = 0;  // most clauses live at once
  bool operator==(const RefutationMetrics&) const = default;
};

class ProofError : public std::runtime_error {
 public:
  ProofError(std::size_t event, const std::string& reason);
  std::size_t event() const { return event_; }  // 0-based
  const std::string& reason() const { return reason_; }

 private:
  std::size_t event_;
  std::string reason_;
};

// Accepts iff every axiom is a clause of f (as a set of literals), every
// inference is the resolvent of two live clauses on the stated pivot, every
// erased id is live, and the empty clause is derived.
RefutationMetrics check_refutation(const Cnf& f, const ResolutionTrace& trace);

// "a <lits> 0", "r <id1> <id2> <pivot> <lits> 0", "e <id>"; "c" lines are comments.
std::string write_trace(const ResolutionTrace& trace);
ResolutionTrace read_trace(std::string_view text);

}  // namespace pebbling
