#include "pebbling/graph.hpp"

#include <algorithm>
#include <charconv>
#include <sstream>

namespace pebbling {

Dag::Dag(int num_vertices, std::vector<Edge> edges, std::vector<Vertex> targets)
    : num_vertices_(std::max(num_vertices, 0)), edges_(std::move(edges)) {
  std::sort(edges_.begin(), edges_.end());
  preds_.resize(num_vertices_);
  succs_.resize(num_vertices_);
  for (const Edge& e : edges_) {
    if (contains(e.from) && contains(e.to)) {
      preds_[e.to].push_back(e.from);
      succs_[e.from].push_back(e.to);
    }
  }
  for (Vertex v = 0; v < num_vertices_; ++v) {
    if (preds_[v].empty()) sources_.push_back(v);
    if (succs_[v].empty()) sinks_.push_back(v);
  }
  if (targets.empty()) {
    targets_ = sinks_;
  } else {
    std::sort(targets.begin(), targets.end());
    targets.erase(std::unique(targets.begin(), targets.end()), targets.end());
    targets_ = std::move(targets);
  }
}

bool ValidationReport::mentions(std::string_view needle) const {
  return std::any_of(problems.begin(), problems.end(),
                     [&](const std::string& p) { return p.find(needle) != std::string::npos; });
}

std::string ValidationReport::to_string() const {
  std::string out;
  for (const auto& p : problems) {
    if (!out.empty()) out += "; ";
    out += p;
  }
  return out;
}

ValidationReport validate_dag(const Dag& g, DegreePolicy policy) {
  ValidationReport report;
  auto add = [&](std::string msg) { report.problems.push_back(std::move(msg)); };

  if (g.size() == 0) add("no vertices");

  const auto& edges = g.edges();
  for (std::size_t i = 0; i < edges.size(); ++i) {
    const Edge& e = edges[i];
    const std::string label = "(" + std::to_string(e.from) + "," + std::to_string(e.to) + ")";
    if (!g.contains(e.from) || !g.contains(e.to)) {
      add("vertex out of range in edge " + label);
      continue;
    }
    if (e.from == e.to) {
      add("cycle: self-loop " + label);
    } else if (e.from > e.to) {
      add("cycle or non-topological edge " + label);
    }
    if (i > 0 && edges[i - 1] == e) add("duplicate edge " + label);
  }

  for (Vertex v = 0; v < g.size(); ++v) {
    const int deg = g.indegree(v);
    const bool allowed = deg == 0 || deg == 2 || (deg == 1 && policy == DegreePolicy::allow_unary);
    if (!allowed) {
      add("fan-in violation: vertex " + std::to_string(v) + " has indegree " + std::to_string(deg));
    }
  }

  if (g.targets().empty()) {
    add("bad targets: no targets");
  }
  for (Vertex t : g.targets()) {
    if (!g.contains(t) || !g.is_sink(t)) {
      add("bad targets: " + std::to_string(t) + " is not a sink");
    }
  }
  return report;
}

std::string write_graph(const Dag& g) {
  std::ostringstream out;
  out << "p dag " << g.size() << '\n';
  for (const Edge& e : g.edges()) out << "e " << e.from << ' ' << e.to << '\n';
  if (!g.targets_are_sinks()) {
    for (Vertex t : g.targets()) out << "t " << t << '\n';
  }
  return out.str();
}

namespace {

std::vector<std::string_view> split_ws(std::string_view line) {
  std::vector<std::string_view> tokens;
  std::size_t i = 0;
  while (i < line.size()) {
    while (i < line.size() && (line[i] == ' ' || line[i] == '\t' || line[i] == '\r')) ++i;
    std::size_t j = i;
    while (j < line.size() && line[j] != ' ' && line[j] != '\t' && line[j] != '\r') ++j;
    if (j > i) tokens.push_back(line.substr(i, j - i));
    i = j;
  }
  return tokens;
}

int parse_int(std::string_view token, int line) {
  int value = 0;
  auto [ptr, ec] = std::from_chars(token.data(), token.data() + token.size(), value);
  if (ec != std::errc() || ptr != token.data() + token.size()) {
    throw ParseError(line, "expected integer, got '" + std::string(token) + "'");
  }
  return value;
}

}  // namespace

Dag read_graph(std::string_view text) {
  int n = -1;
  std::vector<Edge> edges;
  std::vector<Vertex> targets;
  int line_no = 0;
  std::size_t pos = 0;
  while (pos <= text.size()) {
    std::size_t end = text.find('\n', pos);
    if (end == std::string_view::npos) end = text.size();
    std::string_view line = text.substr(pos, end - pos);
    pos = end + 1;
    ++line_no;
    auto tok = split_ws(line);
    if (tok.empty() || tok[0] == "c") continue;
    if (tok[0] == "p") {
      if (n >= 0) throw ParseError(line_no, "duplicate header");
      if (tok.size() != 3 || tok[1] != "dag") {
        throw ParseError(line_no, "malformed header, expected 'p dag <n>'");
      }
      n = parse_int(tok[2], line_no);
      if (n <= 0) throw ParseError(line_no, "no vertices");
    } else if (tok[0] == "e") {
      if (n < 0) throw ParseError(line_no, "edge before header");
      if (tok.size() != 3) throw ParseError(line_no, "malformed edge line");
      const int a = parse_int(tok[1], line_no);
      const int b = parse_int(tok[2], line_no);
      if (a < 0 || b < 0 || a >= n || b >= n) {
        throw ParseError(line_no, "vertex out of range");
      }
      if (a == b) throw ParseError(line_no, "cycle: self-loop");
      if (a > b) throw ParseError(line_no, "non-topological edge");
      edges.push_back({a, b});
    } else if (tok[0] == "t") {
      if (n < 0) throw ParseError(line_no, "target before header");
      if (tok.size() != 2) throw ParseError(line_no, "malformed target line");
      const int t = parse_int(tok[1], line_no);
      if (t < 0 || t >= n) throw ParseError(line_no, "vertex out of range");
      targets.push_back(t);
    } else {
      throw ParseError(line_no, "unknown line type '" + std::string(tok[0]) + "'");
    }
  }
  if (n < 0) throw ParseError(line_no, "no vertices");

  Dag g(n, std::move(edges), std::move(targets));
  if (auto report = validate_dag(g); !report.ok()) {
    throw GraphError("invalid graph: " + report.to_string());
  }
  return g;
}

std::vector<std::vector<bool>> ancestor_matrix(const Dag& g) {
  // anc[v][u] == true iff u is a proper ancestor of v.
  std::vector<std::vector<bool>> anc(g.size(), std::vector<bool>(g.size(), false));
  for (Vertex v = 0; v < g.size(); ++v) {
    for (Vertex p : g.preds(v)) {
      anc[v][p] = true;
      for (Vertex u = 0; u < p; ++u) {
        if (anc[p][u]) anc[v][u] = true;
      }
    }
  }
  return anc;
}

}  // namespace pebbling
