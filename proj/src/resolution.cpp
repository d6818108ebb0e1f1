#include "pebbling/resolution.hpp"

#include <algorithm>
#include <map>
#include <set>
#include <sstream>

#include "pebbling/graph.hpp"

namespace pebbling {

Clause resolve(const Clause& c1, const Clause& c2, int pivot) {
  if (pivot <= 0) throw BadPivot("pivot must be a positive variable");
  if (std::find(c1.begin(), c1.end(), pivot) == c1.end()) {
    throw BadPivot("pivot " + std::to_string(pivot) + " not positive in first clause");
  }
  if (std::find(c2.begin(), c2.end(), -pivot) == c2.end()) {
    throw BadPivot("pivot " + std::to_string(pivot) + " not negative in second clause");
  }
  Clause out;
  auto add = [&](Literal l) {
    if (std::find(out.begin(), out.end(), l) == out.end()) out.push_back(l);
  };
  for (Literal l : c1) {
    if (l != pivot) add(l);
  }
  for (Literal l : c2) {
    if (l != -pivot) add(l);
  }
  for (Literal l : out) {
    if (std::find(out.begin(), out.end(), -l) != out.end()) {
      throw TautologicalResolvent("resolvent " + to_string(out) + " contains " +
                                  std::to_string(std::abs(l)) + " in both signs");
    }
  }
  return out;
}

ProofError::ProofError(std::size_t event, const std::string& reason)
    : std::runtime_error("event " + std::to_string(event) + ": " + reason),
      event_(event),
      reason_(reason) {}

RefutationMetrics check_refutation(const Cnf& f, const ResolutionTrace& trace) {
  std::set<Clause> axioms;
  for (const auto& c : f.clauses) axioms.insert(normalize(c));

  std::map<int, Clause> live;
  int next_id = 1;
  bool refuted = false;
  RefutationMetrics m;
  for (std::size_t i = 0; i < trace.events.size(); ++i) {
    const TraceEvent& e = trace.events[i];
    auto lookup = [&](int id) -> const Clause& {
      auto it = live.find(id);
      if (it == live.end()) throw ProofError(i, "clause " + std::to_string(id) + " not live");
      return it->second;
    };
    switch (e.kind) {
      case TraceEvent::Kind::axiom:
        if (!axioms.count(normalize(e.clause))) {
          throw ProofError(i, "axiom " + to_string(e.clause) + " not in formula");
        }
        live.emplace(next_id++, e.clause);
        break;
      case TraceEvent::Kind::infer: {
        Clause resolvent;
        try {
          resolvent = resolve(lookup(e.left), lookup(e.right), e.pivot);
        } catch (const std::invalid_argument& err) {
          throw ProofError(i, err.what());
        }
        if (normalize(resolvent) != normalize(e.clause)) {
          throw ProofError(
              i, "claimed " + to_string(e.clause) + " but resolvent is " + to_string(resolvent));
        }
        live.emplace(next_id++, e.clause);
        break;
      }
      case TraceEvent::Kind::erase:
        lookup(e.left);
        live.erase(e.left);
        break;
    }
    if (e.kind != TraceEvent::Kind::erase) {
      ++m.length;
      m.width = std::max(m.width, static_cast<int>(normalize(e.clause).size()));
      if (e.clause.empty()) refuted = true;
    }
    m.clause_space = std::max(m.clause_space, static_cast<int>(live.size()));
  }
  if (!refuted) {
    throw ProofError(trace.events.size(), "empty clause never derived");
  }
  return m;
}

std::string write_trace(const ResolutionTrace& trace) {
  std::ostringstream out;
  for (const auto& e : trace.events) {
    switch (e.kind) {
      case TraceEvent::Kind::axiom:
        out << "a ";
        break;
      case TraceEvent::Kind::infer:
        out << "r " << e.left << ' ' << e.right << ' ' << e.pivot << ' ';
        break;
      case TraceEvent::Kind::erase:
        out << "e " << e.left << '\n';
        continue;
    }
    for (Literal l : e.clause) out << l << ' ';
    out << "0\n";
  }
  return out.str();
}

ResolutionTrace read_trace(std::string_view text) {
  ResolutionTrace trace;
  std::istringstream in{std::string(text)};
  std::string line;
  int line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    std::istringstream ls(line);
    std::string op;
    if (!(ls >> op) || op == "c") continue;
    auto read_int = [&](const char* what) {
      long long x = 0;
      if (!(ls >> x) || x < -2147483647 || x > 2147483647) {
        throw ParseError(line_no, std::string("expected ") + what);
      }
      return static_cast<int>(x);
    };
    auto read_clause = [&] {
      Clause c;
      for (int l = read_int("literal"); l != 0; l = read_int("literal or 0")) c.push_back(l);
      return c;
    };
    if (op == "a") {
      trace.events.push_back(TraceEvent::axiom(read_clause()));
    } else if (op == "r") {
      const int left = read_int("premise id");
      const int right = read_int("premise id");
      const int pivot = read_int("pivot");
      trace.events.push_back(TraceEvent::infer(left, right, pivot, read_clause()));
    } else if (op == "e") {
      trace.events.push_back(TraceEvent::erase(read_int("clause id")));
    } else {
      throw ParseError(line_no, "unknown trace event '" + op + "'");
    }
    std::string extra;
    if (ls >> extra) throw ParseError(line_no, "trailing input '" + extra + "'");
  }
  return trace;
}

}  // namespace pebbling
