#include "pebbling/blob_search.hpp"

#include <absl/container/flat_hash_map.h>
#include <absl/hash/hash.h>

#include <algorithm>
#include <bit>
#include <cstdint>
#include <deque>
#include <limits>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>

#include "pebbling/price_search.hpp"

namespace pebbling {

namespace {

// A subconfiguration packed as blob in the low 16 bits, whites in the high.
using Packed = std::uint32_t;
using State = std::vector<Packed>;  // sorted, no duplicates

constexpr Packed pack(std::uint32_t blob, std::uint32_t whites) { return blob | (whites << 16); }
constexpr std::uint32_t blob_of(Packed s) { return s & 0xffffu; }
constexpr std::uint32_t whites_of(Packed s) { return s >> 16; }

BlobSubconfig unpack(Packed s) {
  BlobSubconfig out;
  for (int v = 0; v < 16; ++v) {
    if (blob_of(s) >> v & 1u) out.blob.insert(v);
    if (whites_of(s) >> v & 1u) out.whites.insert(v);
  }
  return out;
}

// Exact minimum hitting set; sets[0] must be hit by one of its own bits.
int min_hitting(const std::vector<std::uint32_t>& sets) {
  if (sets.empty()) return 0;
  int best = std::numeric_limits<int>::max();
  for (std::uint32_t m = sets[0]; m; m &= m - 1) {
    const std::uint32_t bit = m & -m;
    std::vector<std::uint32_t> rest;
    for (std::size_t i = 1; i < sets.size(); ++i) {
      if (!(sets[i] & bit)) rest.push_back(sets[i]);
    }
    best = std::min(best, 1 + min_hitting(rest));
  }
  return best;
}

int chargeable_cost(const State& s) {
  std::uint32_t whites = 0;
  for (Packed x : s) whites |= whites_of(x);
  std::vector<std::uint32_t> unhit;
  for (Packed x : s) {
    if (!(blob_of(x) & whites)) unhit.push_back(blob_of(x));
  }
  std::sort(unhit.begin(), unhit.end(),
            [](auto a, auto b) { return std::popcount(a) < std::popcount(b); });
  return std::popcount(whites) + min_hitting(unhit);
}

// How a state was reached, in subconfiguration terms.
struct Step {
  BlobMove::Kind kind;
  Packed first = 0;
  Packed second = 0;
  Packed created = 0;
  Vertex v = 0;
};

struct StateHash {
  std::size_t operator()(const State& s) const { return absl::Hash<State>{}(s); }
};

}  // namespace

BlobSearchResult optimal_blob_pebbling(const Dag& g, const BlobSearchOptions& options) {
  const int n = g.size();
  if (n > options.max_vertices || n > 16) {
    throw SizeBoundExceeded("graph has " + std::to_string(n) + " vertices; blob search bound is " +
                            std::to_string(std::min(options.max_vertices, 16)));
  }
  std::vector<std::uint32_t> pred(n, 0);
  for (Vertex v = 0; v < n; ++v) {
    for (Vertex u : g.preds(v)) pred[v] |= 1u << u;
  }
  std::vector<Packed> goal_items;
  for (Vertex t : g.targets()) goal_items.push_back(pack(1u << t, 0));
  auto is_goal = [&](const State& s) {
    return std::all_of(goal_items.begin(), goal_items.end(),
                       [&](Packed x) { return std::binary_search(s.begin(), s.end(), x); });
  };
  const std::uint32_t all = (1u << n) - 1;

  for (int bound = 1; bound <= 2 * n + 1; ++bound) {
    absl::flat_hash_map<State, std::pair<State, Step>, StateHash> parent;
    std::deque<State> queue;
    const State start;
    parent.emplace(start, std::make_pair(State{}, Step{}));
    queue.push_back(start);
    std::optional<State> found;

    while (!queue.empty() && !found) {
      const State cur = queue.front();
      queue.pop_front();
      if (is_goal(cur)) {
        found = cur;
        break;
      }
      auto offer = [&](State next, Step step) {
        if (static_cast<int>(next.size()) > options.max_subconfigs) return;
        if (chargeable_cost(next) > bound) return;
        if (parent.contains(next)) return;
        parent.emplace(next, std::make_pair(cur, step));
        queue.push_back(std::move(next));
      };
      auto with = [&](Packed x) -> std::optional<State> {
        auto it = std::lower_bound(cur.begin(), cur.end(), x);
        if (it != cur.end() && *it == x) return std::nullopt;
        State next = cur;
        next.insert(next.begin() + (it - cur.begin()), x);
        return next;
      };

      for (Vertex v = 0; v < n; ++v) {
        const Packed x = pack(1u << v, pred[v]);
        if (auto next = with(x)) {
          offer(std::move(*next), Step{BlobMove::Kind::introduce, 0, 0, x, v});
        }
      }
      for (Packed a : cur) {
        for (Packed b : cur) {
          if (a == b) continue;
          const std::uint32_t clash = blob_of(a) & whites_of(b);
          if (std::popcount(clash) != 1) continue;
          const std::uint32_t blob = (blob_of(a) & ~clash) | blob_of(b);
          const std::uint32_t whites = whites_of(a) | (whites_of(b) & ~clash);
          if (blob & whites) continue;
          const Packed x = pack(blob, whites);
          if (auto next = with(x)) {
            offer(std::move(*next), Step{BlobMove::Kind::merge, a, b, x, std::countr_zero(clash)});
          }
        }
      }
      if (options.allow_inflation) {
        for (Packed a : cur) {
          const std::uint32_t used = blob_of(a) | whites_of(a);
          for (std::uint32_t m = all & ~used; m; m &= m - 1) {
            const std::uint32_t bit = m & -m;
            if (!options.labelled) {
              const Packed x = pack(blob_of(a) | bit, whites_of(a));
              if (auto next = with(x))
                offer(std::move(*next), Step{BlobMove::Kind::inflate, a, 0, x});
            }
            const Packed y = pack(blob_of(a), whites_of(a) | bit);
            if (auto next = with(y))
              offer(std::move(*next), Step{BlobMove::Kind::inflate, a, 0, y});
          }
        }
      }
      for (std::size_t i = 0; i < cur.size(); ++i) {
        State next = cur;
        next.erase(next.begin() + static_cast<std::ptrdiff_t>(i));
        offer(std::move(next), Step{BlobMove::Kind::erase, cur[i]});
      }
      if (parent.size() > options.max_states) {
        throw SizeBoundExceeded("blob search exceeded " + std::to_string(options.max_states) +
                                " states");
      }
    }
    if (!found) continue;

    std::vector<Step> steps;
    for (State s = *found; s != start;) {
      const auto& [prev, step] = parent.at(s);
      steps.push_back(step);
      s = prev;
    }
    std::reverse(steps.begin(), steps.end());

    // Replay to assign subconfiguration ids.
    BlobSearchResult result;
    result.price = bound;
    std::map<Packed, int> ids;
    int next_id = 0;
    for (const Step& st : steps) {
      switch (st.kind) {
        case BlobMove::Kind::introduce:
          result.moves.push_back(BlobMove::introduce(st.v));
          ids[st.created] = next_id++;
          break;
        case BlobMove::Kind::merge:
          result.moves.push_back(BlobMove::merge(ids.at(st.first), ids.at(st.second), st.v));
          ids[st.created] = next_id++;
          break;
        case BlobMove::Kind::inflate:
          result.moves.push_back(BlobMove::inflate(ids.at(st.first), unpack(st.created)));
          ids[st.created] = next_id++;
          break;
        case BlobMove::Kind::erase:
          result.moves.push_back(BlobMove::erase(ids.at(st.first)));
          ids.erase(st.first);
          break;
      }
    }
    return result;
  }
  throw std::logic_error("no blob pebbling found");
}

}  // namespace pebbling
