#pragma once

#include <string>
#include <string_view>
#include <vector>

#include "pebbling/graph.hpp"

namespace pebbling {

// DIMACS literals: +x for variable x, -x for its negation. Variables are 1-based.
using Literal = int;
using Clause = std::vector<Literal>;

// Sorted by variable, negative literal before positive, duplicates removed.
Clause normalize(Clause c);
bool is_tautology(const Clause& c);
std::string to_string(const Clause& c);  // "{1,-2}"

struct Cnf {
  int num_vars = 0;
  std::vector<Clause> clauses;
  int degree = 0;  // variables per vertex; 0 when the formula was read from text

  // Pebbling variable (v, i) for i in [1, degree] is degree * v + i.
  int variable(Vertex v, int i) const { return degree * v + i; }
  Vertex vertex_of(int var) const { return (var - 1) / degree; }
  int copy_of(int var) const { return (var - 1) % degree + 1; }

  bool operator==(const Cnf&) const = default;
};

// OR of x_{v,i} over v in vs and i in [1, degree].
Clause all_positive(const std::vector<Vertex>& vs, int degree);

// Source clauses, then one propagation clause per non-source vertex and
// tuple (j1..jk) in lexicographic order (negated predecessor literals, then
// x_{v,1..d}), then the target unit clauses. With omit_targets the formula
// is satisfiable and the target clauses are left out.
Cnf pebbling_contradiction(const Dag& g, int degree, bool omit_targets = false);

// Clause count of pebbling_contradiction without building it.
long long pebbling_clause_count(const Dag& g, int degree, bool omit_targets = false);

std::string write_dimacs(const Cnf& f);
// Throws ParseError with a line number. Rejects tautological clauses and
// literals outside the declared variable range.
Cnf read_dimacs(std::string_view text);

}  // namespace pebbling
