#pragma once

// Reference implementations used as test oracles. They share no code with
// the library beyond the Dag type: sets instead of bitmasks, Dijkstra
// instead of 0-1 BFS, explicit path lists instead of dynamic programming.

#include <algorithm>
#include <functional>
#include <map>
#include <optional>
#include <queue>
#include <random>
#include <set>
#include <tuple>
#include <vector>

#include "pebbling/cnf.hpp"
#include "pebbling/graph.hpp"

namespace oracle {

using pebbling::Clause;
using pebbling::Dag;
using pebbling::Vertex;

struct State {
  std::set<Vertex> black;
  std::set<Vertex> white;
  std::set<Vertex> visited;
  auto operator<=>(const State&) const = default;
};

// Least placements over complete pebblings with at most `space` pebbles.
inline std::optional<int> min_time(const Dag& g, bool black_white, int space) {
  const std::set<Vertex> targets(g.targets().begin(), g.targets().end());
  auto preds_pebbled = [&](const State& s, Vertex v) {
    for (Vertex u : g.preds(v)) {
      if (!s.black.count(u) && !s.white.count(u)) return false;
    }
    return true;
  };
  std::map<State, int> dist;
  using Item = std::pair<int, State>;
  std::priority_queue<Item, std::vector<Item>, std::greater<>> pq;
  dist[State{}] = 0;
  pq.push({0, State{}});
  while (!pq.empty()) {
    auto [d, s] = pq.top();
    pq.pop();
    if (dist[s] < d) continue;
    if (s.black.empty() && s.white.empty() && s.visited == targets) return d;
    std::vector<std::pair<State, int>> next;
    const int used = static_cast<int>(s.black.size() + s.white.size());
    for (Vertex v = 0; v < g.size(); ++v) {
      const bool on = s.black.count(v) || s.white.count(v);
      if (!on && used < space && preds_pebbled(s, v)) {
        State t = s;
        t.black.insert(v);
        if (targets.count(v)) t.visited.insert(v);
        next.push_back({t, 1});
      }
      if (s.black.count(v)) {
        State t = s;
        t.black.erase(v);
        next.push_back({t, 0});
      }
      if (black_white && !on && used < space) {
        State t = s;
        t.white.insert(v);
        if (targets.count(v)) t.visited.insert(v);
        next.push_back({t, 1});
      }
      if (black_white && s.white.count(v) && preds_pebbled(s, v)) {
        State t = s;
        t.white.erase(v);
        next.push_back({t, 0});
      }
    }
    for (auto& [t, w] : next) {
      auto it = dist.find(t);
      if (it == dist.end() || it->second > d + w) {
        dist[t] = d + w;
        pq.push({d + w, t});
      }
    }
  }
  return std::nullopt;
}

inline int price(const Dag& g, bool black_white) {
  for (int s = 1;; ++s) {
    if (min_time(g, black_white, s)) return s;
  }
}

// Every path from a source to v, as vertex lists.
inline std::vector<std::vector<Vertex>> paths_to(const Dag& g, Vertex v) {
  if (g.is_source(v)) return {{v}};
  std::vector<std::vector<Vertex>> out;
  for (Vertex u : g.preds(v)) {
    for (auto p : paths_to(g, u)) {
      p.push_back(v);
      out.push_back(std::move(p));
    }
  }
  return out;
}

// Every path from v to a sink.
inline std::vector<std::vector<Vertex>> paths_from(const Dag& g, Vertex v) {
  if (g.is_sink(v)) return {{v}};
  std::vector<std::vector<Vertex>> out;
  for (Vertex w : g.succs(v)) {
    for (auto p : paths_from(g, w)) {
      p.insert(p.begin(), v);
      out.push_back(std::move(p));
    }
  }
  return out;
}

inline std::set<Vertex> hidden(const Dag& g, const std::set<Vertex>& u,
                               bool toward_sources = true) {
  std::set<Vertex> out;
  for (Vertex v = 0; v < g.size(); ++v) {
    const auto paths = toward_sources ? paths_to(g, v) : paths_from(g, v);
    const bool all_meet = std::all_of(paths.begin(), paths.end(), [&](const auto& p) {
      return std::any_of(p.begin(), p.end(), [&](Vertex x) { return u.count(x) > 0; });
    });
    if (all_meet) out.insert(v);
  }
  return out;
}

inline bool satisfies(const std::vector<bool>& a, const Clause& c) {
  return std::any_of(c.begin(), c.end(), [&](int l) { return l > 0 ? a[l] : !a[-l]; });
}

// F implies c, by enumerating assignments to variables 1..num_vars.
inline bool implies(int num_vars, const std::vector<Clause>& f, const Clause& c) {
  std::vector<bool> a(num_vars + 1, false);
  for (long long bits = 0; bits < (1LL << num_vars); ++bits) {
    for (int x = 1; x <= num_vars; ++x) a[x] = (bits >> (x - 1)) & 1;
    const bool model =
        std::all_of(f.begin(), f.end(), [&](const Clause& k) { return satisfies(a, k); });
    if (model && !satisfies(a, c)) return false;
  }
  return true;
}

inline std::set<int> as_set(const Clause& c) { return {c.begin(), c.end()}; }

// Random DAG on n vertices in topological order with edge probability p.
inline Dag random_dag(std::mt19937& rng, int n, double p) {
  std::bernoulli_distribution coin(p);
  std::vector<pebbling::Edge> edges;
  for (Vertex a = 0; a < n; ++a) {
    for (Vertex b = a + 1; b < n; ++b) {
      if (coin(rng)) edges.push_back({a, b});
    }
  }
  return Dag(n, std::move(edges));
}

// Random layered DAG: vertices grouped into levels; each vertex above level
// 0 takes one or two predecessors from the level right below.
inline Dag random_layered_dag(std::mt19937& rng, int n) {
  std::uniform_int_distribution<int> width(1, 3);
  std::vector<std::vector<Vertex>> levels;
  int next = 0;
  while (next < n) {
    const int w = std::min(width(rng), n - next);
    levels.emplace_back();
    for (int i = 0; i < w; ++i) levels.back().push_back(next++);
  }
  std::vector<pebbling::Edge> edges;
  for (std::size_t l = 1; l < levels.size(); ++l) {
    const auto& below = levels[l - 1];
    std::uniform_int_distribution<std::size_t> pick(0, below.size() - 1);
    for (Vertex v : levels[l]) {
      const Vertex a = below[pick(rng)];
      const Vertex b = below[pick(rng)];
      edges.push_back({a, v});
      if (b != a) edges.push_back({b, v});
    }
  }
  return Dag(n, std::move(edges));
}

inline std::set<Vertex> random_subset(std::mt19937& rng, int n, double p = 0.3) {
  std::bernoulli_distribution coin(p);
  std::set<Vertex> out;
  for (Vertex v = 0; v < n; ++v) {
    if (coin(rng)) out.insert(v);
  }
  return out;
}

}  // namespace oracle
