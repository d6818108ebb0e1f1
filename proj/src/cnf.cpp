#include "pebbling/cnf.hpp"

#include <algorithm>
#include <cstdlib>
#include <limits>
#include <sstream>
#include <stdexcept>

namespace pebbling {

Clause normalize(Clause c) {
  auto less = [](Literal a, Literal b) {
    const int va = std::abs(a), vb = std::abs(b);
    return va != vb ? va < vb : a < b;
  };
  std::sort(c.begin(), c.end(), less);
  c.erase(std::unique(c.begin(), c.end()), c.end());
  return c;
}

bool is_tautology(const Clause& c) {
  const Clause n = normalize(c);
  for (std::size_t i = 0; i + 1 < n.size(); ++i) {
    if (n[i] == -n[i + 1]) return true;
  }
  return false;
}

std::string to_string(const Clause& c) {
  std::string out = "{";
  for (std::size_t i = 0; i < c.size(); ++i) {
    if (i) out += ',';
    out += std::to_string(c[i]);
  }
  return out + "}";
}

Clause all_positive(const std::vector<Vertex>& vs, int degree) {
  Clause c;
  for (Vertex v : vs) {
    for (int i = 1; i <= degree; ++i) c.push_back(degree * v + i);
  }
  return c;
}

Cnf pebbling_contradiction(const Dag& g, int degree, bool omit_targets) {
  if (degree < 1) throw std::invalid_argument("degree must be >= 1");
  Cnf f;
  f.degree = degree;
  f.num_vars = degree * g.size();
  for (Vertex s : g.sources()) f.clauses.push_back(all_positive({s}, degree));
  for (Vertex v = 0; v < g.size(); ++v) {
    if (g.is_source(v)) continue;
    const auto preds = g.preds(v);
    const Clause head = all_positive({v}, degree);
    std::vector<int> j(preds.size(), 1);
    while (true) {
      Clause c;
      for (std::size_t k = 0; k < preds.size(); ++k) c.push_back(-f.variable(preds[k], j[k]));
      c.insert(c.end(), head.begin(), head.end());
      f.clauses.push_back(std::move(c));
      // Lexicographic successor of j; the last coordinate varies fastest.
      std::size_t k = preds.size();
      while (k > 0 && j[k - 1] == degree) j[--k] = 1;
      if (k == 0) break;
      ++j[k - 1];
    }
  }
  if (!omit_targets) {
    for (Vertex t : g.targets()) {
      for (int i = 1; i <= degree; ++i) f.clauses.push_back({-f.variable(t, i)});
    }
  }
  return f;
}

long long pebbling_clause_count(const Dag& g, int degree, bool omit_targets) {
  long long count = static_cast<long long>(g.sources().size());
  for (Vertex v = 0; v < g.size(); ++v) {
    if (g.is_source(v)) continue;
    long long p = 1;
    for (int k = 0; k < g.indegree(v); ++k) p *= degree;
    count += p;
  }
  if (!omit_targets) count += static_cast<long long>(degree) * g.targets().size();
  return count;
}

std::string write_dimacs(const Cnf& f) {
  std::ostringstream out;
  out << "p cnf " << f.num_vars << ' ' << f.clauses.size() << '\n';
  for (const auto& c : f.clauses) {
    for (Literal l : c) out << l << ' ';
    out << "0\n";
  }
  return out.str();
}

Cnf read_dimacs(std::string_view text) {
  std::istringstream in{std::string(text)};
  std::string line;
  int line_no = 0;
  bool header = false;
  long long declared_clauses = 0;
  Cnf f;
  Clause current;
  while (std::getline(in, line)) {
    ++line_no;
    std::istringstream ls(line);
    std::string tok;
    if (!(ls >> tok) || tok[0] == 'c' || tok == "%") continue;
    if (tok == "p") {
      if (header) throw ParseError(line_no, "duplicate header");
      std::string kind;
      long long vars = -1;
      if (!(ls >> kind >> vars >> declared_clauses) || kind != "cnf" || vars < 0 ||
          declared_clauses < 0 || vars > std::numeric_limits<int>::max()) {
        throw ParseError(line_no, "malformed header, expected 'p cnf <vars> <clauses>'");
      }
      std::string extra;
      if (ls >> extra) throw ParseError(line_no, "malformed header, trailing '" + extra + "'");
      f.num_vars = static_cast<int>(vars);
      header = true;
      continue;
    }
    if (!header) throw ParseError(line_no, "clause before 'p cnf' header");
    do {
      long long lit = 0;
      std::size_t used = 0;
      try {
        lit = std::stoll(tok, &used);
      } catch (const std::exception&) {
        used = 0;
      }
      if (used != tok.size()) throw ParseError(line_no, "bad literal '" + tok + "'");
      if (lit == 0) {
        if (is_tautology(current)) throw ParseError(line_no, "tautological clause");
        f.clauses.push_back(std::move(current));
        current.clear();
      } else {
        if (std::llabs(lit) > f.num_vars) {
          throw ParseError(line_no, "literal " + tok + " exceeds variable count");
        }
        current.push_back(static_cast<Literal>(lit));
      }
    } while (ls >> tok);
  }
  if (!header) throw ParseError(line_no, "missing 'p cnf' header");
  if (!current.empty()) throw ParseError(line_no, "unterminated clause");
  if (static_cast<long long>(f.clauses.size()) != declared_clauses) {
    throw ParseError(line_no, "header declares " + std::to_string(declared_clauses) +
                                  " clauses, found " + std::to_string(f.clauses.size()));
  }
  return f;
}

}  // namespace pebbling
