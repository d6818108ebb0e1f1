#include "pebbling/measures.hpp"

#include <algorithm>
#include <bit>
#include <json.hpp>
#include <map>
#include <utility>

#include "pebbling/price_search.hpp"

namespace pebbling {

namespace {

using klawe::Mask;

Mask to_mask(const VertexSet& s) {
  Mask m = 0;
  for (Vertex v : s) m |= Mask{1} << v;
  return m;
}

VertexSet from_mask(Mask m) {
  VertexSet s;
  for (; m; m &= m - 1) s.insert(std::countr_zero(m));
  return s;
}

struct Adjacency {
  std::vector<Mask> pred;
  std::vector<Mask> succ;
};

Adjacency adjacency(const Dag& g) {
  if (g.size() > 64) {
    throw SizeBoundExceeded("hiding sets handle at most 64 vertices, got " +
                            std::to_string(g.size()));
  }
  Adjacency a;
  a.pred.assign(g.size(), 0);
  a.succ.assign(g.size(), 0);
  for (const Edge& e : g.edges()) {
    a.pred[e.to] |= Mask{1} << e.from;
    a.succ[e.from] |= Mask{1} << e.to;
  }
  return a;
}

// Calls visit(subset) for every k-subset of the bits of `from`, stopping
// early when visit returns true. Returns whether it stopped.
template <typename Visit>
bool any_subset_of_size(Mask from, int k, Visit&& visit) {
  std::vector<int> bits;
  for (Mask m = from; m; m &= m - 1) bits.push_back(std::countr_zero(m));
  const int n = static_cast<int>(bits.size());
  if (k > n) return false;
  std::vector<int> idx(k);
  for (int i = 0; i < k; ++i) idx[i] = i;
  while (true) {
    Mask s = 0;
    for (int i : idx) s |= Mask{1} << bits[i];
    if (visit(s)) return true;
    int i = k - 1;
    while (i >= 0 && idx[i] == n - k + i) --i;
    if (i < 0) return false;
    ++idx[i];
    for (int j = i + 1; j < k; ++j) idx[j] = idx[j - 1] + 1;
  }
}

class MeasureEvaluator {
 public:
  MeasureEvaluator(const Dag& g, const LayeredView& view) : adj_(adjacency(g)), view_(view) {
    if (!view.layered) throw GraphNotLayered();
    const int n = g.size();
    at_or_above_.assign(view.max_level + 1, 0);
    for (int j = 0; j <= view.max_level; ++j) {
      for (Vertex v = 0; v < n; ++v) {
        if (view.level[v] >= j) at_or_above_[j] |= Mask{1} << v;
      }
    }
    // Ancestors including the vertex itself.
    ancestors_.assign(n, 0);
    for (Vertex v = 0; v < n; ++v) {
      ancestors_[v] = Mask{1} << v;
      for (Mask m = adj_.pred[v]; m; m &= m - 1) ancestors_[v] |= ancestors_[std::countr_zero(m)];
    }
  }

  Mask hidden(Mask u) const {
    return klawe::hidden_mask(adj_.pred, adj_.succ, u, HidingDirection::from_sources);
  }

  MeasureValue measure(Mask u) {
    MeasureValue out;
    for (int j = 0; j <= view_.max_level; ++j) {
      const int m = klawe::partial_measure(j, blocker_size(j, u & at_or_above_[j]));
      out.partial.push_back(m);
      out.value = std::max(out.value, m);
    }
    return out;
  }

 private:
  // L_{>=j}: least set on levels >= j hiding `target`. Only ancestors of the
  // target can help, and the target itself always works.
  int blocker_size(int j, Mask target) {
    if (!target) return 0;
    const auto key = std::make_pair(j, target);
    if (auto it = memo_.find(key); it != memo_.end()) return it->second;
    Mask candidates = 0;
    for (Mask m = target; m; m &= m - 1) candidates |= ancestors_[std::countr_zero(m)];
    candidates &= at_or_above_[j];
    int best = std::popcount(target);
    for (int k = 1; k < best; ++k) {
      if (any_subset_of_size(candidates, k,
                             [&](Mask y) { return (hidden(y) & target) == target; })) {
        best = k;
        break;
      }
    }
    memo_.emplace(key, best);
    return best;
  }

  Adjacency adj_;
  const LayeredView& view_;
  std::vector<Mask> at_or_above_;
  std::vector<Mask> ancestors_;
  std::map<std::pair<int, Mask>, int> memo_;
};

}  // namespace

LayeredView layered_view(const Dag& g) {
  LayeredView view;
  view.level.assign(g.size(), 0);
  for (Vertex v = 0; v < g.size(); ++v) {
    for (Vertex u : g.preds(v)) view.level[v] = std::max(view.level[v], view.level[u] + 1);
    view.max_level = std::max(view.max_level, view.level[v]);
  }
  view.layered = std::all_of(g.edges().begin(), g.edges().end(), [&](const Edge& e) {
    return view.level[e.to] == view.level[e.from] + 1;
  });
  return view;
}

VertexSet hidden_vertices(const Dag& g, const VertexSet& u, HidingDirection dir) {
  const Adjacency a = adjacency(g);
  for (Vertex v : u) {
    if (!g.contains(v)) throw std::out_of_range("unknown vertex " + std::to_string(v));
  }
  return from_mask(klawe::hidden_mask(a.pred, a.succ, to_mask(u), dir));
}

MeasureValue klawe_measure(const Dag& g, const LayeredView& view, const VertexSet& u) {
  for (Vertex v : u) {
    if (!g.contains(v)) throw std::out_of_range("unknown vertex " + std::to_string(v));
  }
  return MeasureEvaluator(g, view).measure(to_mask(u));
}

MeasureValue klawe_measure(const Dag& g, const VertexSet& u) {
  return klawe_measure(g, layered_view(g), u);
}

int potential(const Dag& g, const PebbleConfig& config) {
  if (g.size() > 14) {
    throw SizeBoundExceeded("potential handles at most 14 vertices, got " +
                            std::to_string(g.size()));
  }
  const LayeredView view = layered_view(g);
  MeasureEvaluator eval(g, view);
  VertexSet pebbled = config.black;
  pebbled.insert(config.white.begin(), config.white.end());
  for (Vertex v : pebbled) {
    if (!g.contains(v)) throw std::out_of_range("unknown vertex " + std::to_string(v));
  }
  const Mask closure = eval.hidden(to_mask(pebbled));
  // Admissible sets lie inside the closure, since U is inside its own.
  int best = eval.measure(to_mask(pebbled)).value;
  for (Mask u = closure;; u = (u - 1) & closure) {
    if (klawe::admissible(eval.hidden(u), closure)) best = std::min(best, eval.measure(u).value);
    if (u == 0) break;
  }
  return best;
}

LhcResult check_lhc(const Dag& g, int bound) {
  const int n = g.size();
  if (n > 12) {
    throw SizeBoundExceeded("LHC check handles at most 12 vertices, got " + std::to_string(n));
  }
  const Adjacency a = adjacency(g);
  auto hidden = [&](Mask u) {
    return klawe::hidden_mask(a.pred, a.succ, u, HidingDirection::from_sources);
  };
  const Mask all = (Mask{1} << n) - 1;
  // small[v]: every set of at most `bound` vertices hiding v.
  std::vector<std::vector<Mask>> small(n);
  for (int k = 0; k <= std::min(bound, n); ++k) {
    any_subset_of_size(all, k, [&](Mask s) {
      for (Mask h = hidden(s); h; h &= h - 1) small[std::countr_zero(h)].push_back(s);
      return false;
    });
  }
  LhcResult result;
  for (Mask u = 0; u <= all; ++u) {
    for (Mask h = hidden(u); h; h &= h - 1) {
      const int v = std::countr_zero(h);
      const bool ok = std::any_of(small[v].begin(), small[v].end(),
                                  [&](Mask s) { return klawe::small_hider(s, u, bound); });
      if (!ok) {
        result.holds = false;
        result.witness_set = from_mask(u);
        result.witness_vertex = v;
        return result;
      }
    }
  }
  return result;
}

MeasureReport measure_report(const Dag& g, const PebbleConfig& config) {
  VertexSet pebbled = config.black;
  pebbled.insert(config.white.begin(), config.white.end());
  MeasureReport r;
  r.hidden = hidden_vertices(g, pebbled);
  const MeasureValue m = klawe_measure(g, pebbled);
  r.measure = m.value;
  r.partial = m.partial;
  r.potential = potential(g, config);
  return r;
}

std::string to_json(const MeasureReport& report) {
  nlohmann::ordered_json j;
  j["hidden"] = std::vector<Vertex>(report.hidden.begin(), report.hidden.end());
  j["measure"] = report.measure;
  j["partial"] = report.partial;
  j["potential"] = report.potential;
  return j.dump();
}

}  // namespace pebbling
