#include "pebbling/price_search.hpp"

#include <absl/container/flat_hash_map.h>

#include <algorithm>
#include <atomic>
#include <bit>
#include <cstdint>
#include <deque>
#include <sstream>
#include <thread>

namespace pebbling {

namespace {

using Mask = std::uint64_t;

// Packs (black, white, visited-targets) into one 64-bit key:
// black in bits [0, n), white in [n, 2n) for the black-white game, and the
// visited-target flags above that.
struct Codec {
  int n = 0;
  bool bw = false;
  int visited_shift = 0;
  Mask vertex_mask = 0;
  Mask all_visited = 0;

  Mask key(Mask black, Mask white, Mask visited) const {
    return black | (bw ? white << n : 0) | (visited << visited_shift);
  }
  Mask black(Mask k) const { return k & vertex_mask; }
  Mask white(Mask k) const { return bw ? (k >> n) & vertex_mask : 0; }
  Mask visited(Mask k) const { return k >> visited_shift; }
  Mask goal() const { return all_visited << visited_shift; }
};

struct Problem {
  Codec codec;
  std::vector<Mask> pred_mask;
  std::vector<Mask> target_bit;  // 0 for non-targets
};

Problem make_problem(const Dag& g, Game game, const SearchLimits& limits) {
  const int n = g.size();
  const bool bw = game == Game::black_white;
  const int bound = bw ? limits.max_vertices_bw : limits.max_vertices_black;
  if (n > bound) {
    throw SizeBoundExceeded("graph has " + std::to_string(n) + " vertices; " + to_string(game) +
                            " search bound is " + std::to_string(bound));
  }
  const int t = static_cast<int>(g.targets().size());
  const int bits = (bw ? 2 * n : n) + t;
  if (bits > 64) {
    throw SizeBoundExceeded("configuration encoding needs " + std::to_string(bits) +
                            " bits (limit 64)");
  }
  Problem p;
  p.codec.n = n;
  p.codec.bw = bw;
  p.codec.visited_shift = bw ? 2 * n : n;
  p.codec.vertex_mask = n == 64 ? ~Mask{0} : (Mask{1} << n) - 1;
  p.codec.all_visited = t == 64 ? ~Mask{0} : (Mask{1} << t) - 1;
  p.pred_mask.assign(n, 0);
  p.target_bit.assign(n, 0);
  for (Vertex v = 0; v < n; ++v) {
    for (Vertex u : g.preds(v)) p.pred_mask[v] |= Mask{1} << u;
  }
  for (int i = 0; i < t; ++i) p.target_bit[g.targets()[i]] = Mask{1} << i;
  return p;
}

struct Successor {
  Mask key;
  int cost;
  Move move;
};

// Successors in tie-break order: PB, RB, PW, RW, each by ascending vertex.
template <typename Visit>
void for_each_successor(const Problem& p, Mask key, int space, Visit&& visit) {
  const Codec& c = p.codec;
  const Mask black = c.black(key);
  const Mask white = c.white(key);
  const Mask visited = c.visited(key);
  const Mask pebbled = black | white;
  const int count = std::popcount(pebbled);
  const Mask free = ~pebbled & c.vertex_mask;

  if (count < space) {
    for (Mask m = free; m; m &= m - 1) {
      const int v = std::countr_zero(m);
      if ((p.pred_mask[v] & ~pebbled) == 0) {
        const Mask bit = Mask{1} << v;
        visit(Successor{c.key(black | bit, white, visited | p.target_bit[v]), 1,
                        Move::place_black(v)});
      }
    }
  }
  for (Mask m = black; m; m &= m - 1) {
    const int v = std::countr_zero(m);
    visit(Successor{c.key(black & ~(Mask{1} << v), white, visited), 0, Move::remove_black(v)});
  }
  if (!c.bw) return;
  if (count < space) {
    for (Mask m = free; m; m &= m - 1) {
      const int v = std::countr_zero(m);
      const Mask bit = Mask{1} << v;
      visit(
          Successor{c.key(black, white | bit, visited | p.target_bit[v]), 1, Move::place_white(v)});
    }
  }
  for (Mask m = white; m; m &= m - 1) {
    const int v = std::countr_zero(m);
    if ((p.pred_mask[v] & ~pebbled) == 0) {
      visit(Successor{c.key(black, white & ~(Mask{1} << v), visited), 0, Move::remove_white(v)});
    }
  }
}

struct SearchResult {
  std::optional<int> time;
  std::vector<Move> moves;
};

// 0-1 breadth-first search over configurations: placements cost 1,
// removals cost 0.
SearchResult search(const Dag& g, Game game, int space, const SearchLimits& limits, bool witness) {
  const Problem p = make_problem(g, game, limits);
  SearchResult result;
  if (space < 1) return result;

  absl::flat_hash_map<Mask, int> dist;
  absl::flat_hash_map<Mask, std::pair<Mask, Move>> parent;
  std::deque<std::pair<Mask, int>> queue;
  const Mask start = 0;
  const Mask goal = p.codec.goal();
  dist.emplace(start, 0);
  queue.emplace_back(start, 0);

  while (!queue.empty()) {
    const auto [key, d] = queue.front();
    queue.pop_front();
    if (d > dist[key]) continue;
    if (key == goal) {
      result.time = d;
      break;
    }
    for_each_successor(p, key, space, [&](const Successor& s) {
      const int nd = d + s.cost;
      auto [it, inserted] = dist.try_emplace(s.key, nd);
      if (!inserted) {
        if (nd >= it->second) return;
        it->second = nd;
      }
      if (witness) parent.insert_or_assign(s.key, std::make_pair(key, s.move));
      if (s.cost == 0) {
        queue.emplace_front(s.key, nd);
      } else {
        queue.emplace_back(s.key, nd);
      }
    });
    if (dist.size() > limits.max_states) {
      throw SizeBoundExceeded("search exceeded " + std::to_string(limits.max_states) + " states");
    }
  }

  if (witness && result.time) {
    for (Mask k = goal; k != start;) {
      const auto& [prev, move] = parent.at(k);
      result.moves.push_back(move);
      k = prev;
    }
    std::reverse(result.moves.begin(), result.moves.end());
  }
  return result;
}

}  // namespace

ParetoFrontier pareto_filter(const std::vector<FrontierPoint>& series) {
  std::vector<FrontierPoint> sorted = series;
  std::sort(sorted.begin(), sorted.end(),
            [](const auto& a, const auto& b) { return a.space < b.space; });
  ParetoFrontier out;
  for (const auto& pt : sorted) {
    if (out.points.empty() || pt.min_time < out.points.back().min_time) {
      if (!out.points.empty() && out.points.back().space == pt.space) out.points.pop_back();
      out.points.push_back(pt);
    }
  }
  return out;
}

std::optional<int> min_pebbling_time(const Dag& g, Game game, int space,
                                     const SearchLimits& limits) {
  return search(g, game, space, limits, false).time;
}

std::optional<std::vector<Move>> shortest_pebbling(const Dag& g, Game game, int space,
                                                   const SearchLimits& limits) {
  auto r = search(g, game, space, limits, true);
  if (!r.time) return std::nullopt;
  return r.moves;
}

int optimal_price(const Dag& g, Game game, const SearchLimits& limits) {
  make_problem(g, game, limits);  // size checks up front
  for (int s = 1; s <= g.size() + 1; ++s) {
    if (search(g, game, s, limits, false).time) return s;
  }
  throw std::logic_error("no complete pebbling found");
}

std::vector<FrontierPoint> min_time_series(const Dag& g, Game game, int first, int last,
                                           const SearchLimits& limits) {
  make_problem(g, game, limits);
  if (last < first) return {};
  const int count = last - first + 1;
  std::vector<std::optional<int>> times(count);
  const int workers = std::clamp(limits.threads, 1, count);
  if (workers == 1) {
    for (int i = 0; i < count; ++i) times[i] = min_pebbling_time(g, game, first + i, limits);
  } else {
    std::atomic<int> next{0};
    std::vector<std::exception_ptr> errors(workers);
    std::vector<std::thread> pool;
    for (int w = 0; w < workers; ++w) {
      pool.emplace_back([&, w] {
        try {
          for (int i = next++; i < count; i = next++) {
            times[i] = min_pebbling_time(g, game, first + i, limits);
          }
        } catch (...) {
          errors[w] = std::current_exception();
        }
      });
    }
    for (auto& t : pool) t.join();
    for (auto& e : errors) {
      if (e) std::rethrow_exception(e);
    }
  }
  std::vector<FrontierPoint> series;
  for (int i = 0; i < count; ++i) {
    if (times[i]) series.push_back({first + i, *times[i]});
  }
  return series;
}

ParetoFrontier tradeoff_frontier(const Dag& g, Game game, int space_cap,
                                 const SearchLimits& limits) {
  const int price = optimal_price(g, game, limits);
  return pareto_filter(min_time_series(g, game, price, space_cap, limits));
}

std::string frontier_csv(const std::string& family, const std::string& params, Game game,
                         const ParetoFrontier& frontier, bool header) {
  std::ostringstream out;
  if (header) out << "family,params,game,space,min_time\n";
  for (const auto& pt : frontier.points) {
    out << family << ',' << params << ',' << to_string(game) << ',' << pt.space << ','
        << pt.min_time << '\n';
  }
  return out.str();
}

}  // namespace pebbling
