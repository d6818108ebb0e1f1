#include "pebbling/blob_engine.hpp"

#include <algorithm>
#include <limits>
#include <map>
#include <memory>
#include <sstream>

#include "pebbling/pebble_engine.hpp"

namespace pebbling {

namespace {

std::string join(const VertexSet& s) {
  std::string out;
  for (Vertex v : s) {
    if (!out.empty()) out += ',';
    out += std::to_string(v);
  }
  return out;
}

bool disjoint(const VertexSet& a, const VertexSet& b) {
  return std::none_of(a.begin(), a.end(), [&](Vertex v) { return b.count(v) > 0; });
}

bool subset(const VertexSet& a, const VertexSet& b) {
  return std::includes(b.begin(), b.end(), a.begin(), a.end());
}

// Exact minimum hitting set size by branching on the smallest set.
int min_hitting_set(std::vector<VertexSet> sets) {
  if (sets.empty()) return 0;
  auto smallest = std::min_element(
      sets.begin(), sets.end(), [](const auto& a, const auto& b) { return a.size() < b.size(); });
  const VertexSet pick = *smallest;
  int best = std::numeric_limits<int>::max();
  for (Vertex v : pick) {
    std::vector<VertexSet> rest;
    for (const auto& s : sets) {
      if (!s.count(v)) rest.push_back(s);
    }
    best = std::min(best, 1 + min_hitting_set(std::move(rest)));
  }
  return best;
}

}  // namespace

std::string to_string(const BlobSubconfig& s) {
  return "[" + join(s.blob) + "]<" + join(s.whites) + ">";
}

BlobSubconfig introduce(const Dag& g, Vertex v) {
  if (!g.contains(v)) throw std::out_of_range("unknown vertex " + std::to_string(v));
  BlobSubconfig s;
  s.blob.insert(v);
  s.whites.insert(g.preds(v).begin(), g.preds(v).end());
  return s;
}

BlobSubconfig merge(const BlobSubconfig& s_pos, const BlobSubconfig& s_neg, Vertex pivot) {
  if (!s_pos.blob.count(pivot)) throw BadMerge("pivot not black in first");
  if (!s_neg.whites.count(pivot)) throw BadMerge("pivot not white in second");
  BlobSubconfig out;
  out.blob = s_pos.blob;
  out.blob.erase(pivot);
  out.blob.insert(s_neg.blob.begin(), s_neg.blob.end());
  out.whites = s_pos.whites;
  for (Vertex w : s_neg.whites) {
    if (w != pivot) out.whites.insert(w);
  }
  if (!disjoint(out.blob, out.whites)) throw BadMerge("result not disjoint");
  return out;
}

InflationCheck strict_inflation_check(const Dag& g) {
  auto anc = std::make_shared<std::vector<std::vector<bool>>>(ancestor_matrix(g));
  return [anc](const BlobSubconfig&, const BlobSubconfig& to) -> std::optional<std::string> {
    for (Vertex w : to.whites) {
      const bool below = std::any_of(to.blob.begin(), to.blob.end(), [&](Vertex b) {
        return b < static_cast<Vertex>(anc->size()) && (*anc)[b][w];
      });
      if (!below) return "white " + std::to_string(w) + " not below the blob";
    }
    return std::nullopt;
  };
}

BlobSubconfig inflate(const BlobSubconfig& s, const BlobSubconfig& target,
                      const InflationCheck& extra) {
  if (target.blob.empty()) throw BadInflation("empty blob");
  if (!disjoint(target.blob, target.whites)) throw BadInflation("not disjoint");
  if (!subset(s.blob, target.blob)) throw BadInflation("blob not superset");
  if (!subset(s.whites, target.whites)) throw BadInflation("whites not superset");
  if (extra) {
    if (auto reason = extra(s, target)) throw BadInflation(*reason);
  }
  return target;
}

BlobCost blob_cost(const BlobConfig& cfg) {
  VertexSet blacks;
  VertexSet whites;
  for (const auto& s : cfg.subconfigs) {
    blacks.insert(s.blob.begin(), s.blob.end());
    whites.insert(s.whites.begin(), s.whites.end());
  }
  BlobCost cost;
  cost.naive = static_cast<int>(blacks.size() + whites.size());
  // Blobs touching a white vertex are hit for free by charging that white.
  std::vector<VertexSet> unhit;
  for (const auto& s : cfg.subconfigs) {
    if (disjoint(s.blob, whites)) unhit.push_back(s.blob);
  }
  std::sort(unhit.begin(), unhit.end());
  unhit.erase(std::unique(unhit.begin(), unhit.end()), unhit.end());
  cost.chargeable = static_cast<int>(whites.size()) + min_hitting_set(std::move(unhit));
  return cost;
}

BlobPebblingReport validate_blob_pebbling(const Dag& g, const std::vector<BlobMove>& moves,
                                          const BlobGameOptions& options) {
  std::map<int, BlobSubconfig> live;
  int next_id = 0;
  BlobPebblingReport report;

  auto lookup = [&](std::size_t index, int id) -> const BlobSubconfig& {
    auto it = live.find(id);
    if (it == live.end()) {
      throw BlobMoveError(index, "unknown subconfiguration " + std::to_string(id));
    }
    return it->second;
  };
  auto add = [&](std::size_t index, BlobSubconfig s) {
    if (options.labelled && s.blob.size() != 1) {
      throw BlobMoveError(index, "blob not singleton in labelled game");
    }
    for (const auto& [id, other] : live) {
      if (other == s) throw BlobMoveError(index, "duplicate subconfiguration " + to_string(s));
    }
    live.emplace(next_id++, std::move(s));
  };

  for (std::size_t i = 0; i < moves.size(); ++i) {
    const BlobMove& m = moves[i];
    switch (m.kind) {
      case BlobMove::Kind::introduce:
        if (!g.contains(m.v)) throw BlobMoveError(i, "unknown vertex " + std::to_string(m.v));
        add(i, introduce(g, m.v));
        break;
      case BlobMove::Kind::merge: {
        const BlobSubconfig& pos = lookup(i, m.first);
        const BlobSubconfig& neg = lookup(i, m.second);
        BlobSubconfig result;
        try {
          result = merge(pos, neg, m.pivot);
        } catch (const BadMerge& e) {
          throw BlobMoveError(i, e.what());
        }
        add(i, std::move(result));
        break;
      }
      case BlobMove::Kind::inflate: {
        const BlobSubconfig& from = lookup(i, m.first);
        for (Vertex v : m.target.blob) {
          if (!g.contains(v)) throw BlobMoveError(i, "unknown vertex " + std::to_string(v));
        }
        for (Vertex v : m.target.whites) {
          if (!g.contains(v)) throw BlobMoveError(i, "unknown vertex " + std::to_string(v));
        }
        BlobSubconfig result;
        try {
          result = inflate(from, m.target, options.inflation);
        } catch (const BadInflation& e) {
          throw BlobMoveError(i, e.what());
        }
        add(i, std::move(result));
        break;
      }
      case BlobMove::Kind::erase:
        lookup(i, m.first);
        live.erase(m.first);
        break;
    }
    BlobConfig cfg;
    for (const auto& [id, s] : live) cfg.subconfigs.insert(s);
    const BlobCost cost = blob_cost(cfg);
    report.max_cost = std::max(report.max_cost, cost.chargeable);
    report.max_naive = std::max(report.max_naive, cost.naive);
  }

  for (const auto& [id, s] : live) report.final_config.subconfigs.insert(s);
  for (Vertex t : g.targets()) {
    if (!report.final_config.contains(BlobSubconfig{{t}, {}})) {
      throw IncompletePebbling("target " + std::to_string(t) +
                               " has no unconditional subconfiguration");
    }
  }
  report.steps = static_cast<int>(moves.size());
  return report;
}

std::string format_blob_moves(const std::vector<BlobMove>& moves) {
  std::ostringstream out;
  for (const auto& m : moves) {
    switch (m.kind) {
      case BlobMove::Kind::introduce:
        out << "I " << m.v;
        break;
      case BlobMove::Kind::merge:
        out << "M " << m.first << ' ' << m.second << ' ' << m.pivot;
        break;
      case BlobMove::Kind::inflate:
        out << "F " << m.first << ' ' << join(m.target.blob) << '|' << join(m.target.whites);
        break;
      case BlobMove::Kind::erase:
        out << "E " << m.first;
        break;
    }
    out << '\n';
  }
  return out.str();
}

namespace {

VertexSet parse_vertex_list(const std::string& text, int line) {
  VertexSet out;
  std::size_t pos = 0;
  while (pos < text.size()) {
    std::size_t end = text.find(',', pos);
    if (end == std::string::npos) end = text.size();
    const std::string tok = text.substr(pos, end - pos);
    try {
      std::size_t used = 0;
      const int v = std::stoi(tok, &used);
      if (used != tok.size() || v < 0) throw std::invalid_argument(tok);
      out.insert(v);
    } catch (const std::exception&) {
      throw ParseError(line, "bad vertex '" + tok + "'");
    }
    pos = end + 1;
  }
  return out;
}

}  // namespace

std::vector<BlobMove> parse_blob_moves(std::string_view text) {
  std::vector<BlobMove> moves;
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
      if (!(ls >> x) || x < 0 || x > std::numeric_limits<int>::max()) {
        throw ParseError(line_no, std::string("expected ") + what);
      }
      return static_cast<int>(x);
    };
    if (op == "I") {
      moves.push_back(BlobMove::introduce(read_int("vertex")));
    } else if (op == "M") {
      const int a = read_int("subconfiguration id");
      const int b = read_int("subconfiguration id");
      const int p = read_int("pivot");
      moves.push_back(BlobMove::merge(a, b, p));
    } else if (op == "F") {
      const int id = read_int("subconfiguration id");
      std::string spec;
      if (!(ls >> spec)) throw ParseError(line_no, "expected <blob>|<whites>");
      const auto bar = spec.find('|');
      if (bar == std::string::npos) throw ParseError(line_no, "expected <blob>|<whites>");
      BlobSubconfig target{parse_vertex_list(spec.substr(0, bar), line_no),
                           parse_vertex_list(spec.substr(bar + 1), line_no)};
      moves.push_back(BlobMove::inflate(id, std::move(target)));
    } else if (op == "E") {
      moves.push_back(BlobMove::erase(read_int("subconfiguration id")));
    } else {
      throw ParseError(line_no, "unknown blob move '" + op + "'");
    }
    std::string extra;
    if (ls >> extra) throw ParseError(line_no, "trailing input '" + extra + "'");
  }
  return moves;
}

}  // namespace pebbling
