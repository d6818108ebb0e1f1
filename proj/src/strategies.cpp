#include "pebbling/strategies.hpp"

#include <algorithm>
#include <functional>
#include <map>
#include <string>
#include <tuple>

namespace pebbling {

BudgetTooSmall::BudgetTooSmall(int budget, int minimum)
    : std::invalid_argument("space budget " + std::to_string(budget) +
                            " below the strategy minimum " + std::to_string(minimum)),
      budget_(budget),
      minimum_(minimum) {}

namespace {

// Diagonal sweep over a pyramid of height h; leaves only the top black.
// at(level, pos) maps pyramid coordinates to graph vertices.
void sweep_pyramid(int h, const std::function<Vertex(int, int)>& at, std::vector<Move>& out) {
  for (int j = 0; j <= h; ++j) {
    for (int i = 0; i <= j; ++i) {
      out.push_back(Move::place_black(at(i, j - i)));
      if (i > 0) out.push_back(Move::remove_black(at(i - 1, j - i)));
    }
  }
  for (int i = 0; i < h; ++i) out.push_back(Move::remove_black(at(i, h - i)));
}

int pyramid_space(int h) { return h == 0 ? 1 : h + 2; }

void pebble_subtree(int h, int level, int pos, std::vector<Move>& out) {
  const Vertex v = tree_vertex(h, level, pos);
  if (level == 0) {
    out.push_back(Move::place_black(v));
    return;
  }
  pebble_subtree(h, level - 1, 2 * pos, out);
  pebble_subtree(h, level - 1, 2 * pos + 1, out);
  out.push_back(Move::place_black(v));
  out.push_back(Move::remove_black(tree_vertex(h, level - 1, 2 * pos)));
  out.push_back(Move::remove_black(tree_vertex(h, level - 1, 2 * pos + 1)));
}

class CsPlanner {
 public:
  explicit CsPlanner(const CsGraph& graph) : graph_(graph) {}

  std::vector<Move> all_sinks(int budget) {
    const CsBlock& root = graph_.root;
    std::vector<Move> out;
    if (root.level == 0) {
      for (Vertex s : root.sinks) {
        out.push_back(Move::place_black(s));
        out.push_back(Move::remove_black(s));
      }
      return out;
    }
    const int c = graph_.c;
    const int width = std::min(c, budget - std::max(cs_min_budget(c, root.level - 1), 2));
    for (int first = 0; first < c; first += width) {
      const int last = std::min(c, first + width);
      walk_spines(root, first, last, budget, out);
      for (int j = first; j < last; ++j) out.push_back(Move::remove_black(root.sinks[j]));
    }
    return out;
  }

 private:
  // Pebbles spines [first, last) of the block side by side; ends with
  // exactly their last vertices black.
  void walk_spines(const CsBlock& block, int first, int last, int budget, std::vector<Move>& out) {
    const int held = last - first;
    const int h = block.pyramid_height();
    for (int j = first; j < last; ++j) {
      const auto& pyr = block.pyramids[j];
      sweep_pyramid(h, [&](int level, int pos) { return pyr[pyramid_vertex(h, level, pos)]; }, out);
    }
    const int c = graph_.c;
    for (int k = 0; k < 2 * c; ++k) {
      const CsBlock& child = block.children[k < c ? 0 : 1];
      const int index = k < c ? k : k - c;
      const auto& sub = single_sink(child, index, budget - held);
      out.insert(out.end(), sub.begin(), sub.end());
      for (int j = first; j < last; ++j) {
        const auto& spine = block.spines[j];
        out.push_back(Move::place_black(spine[k]));
        out.push_back(Move::remove_black(k == 0 ? block.pyramids[j].back() : spine[k - 1]));
      }
      out.push_back(Move::remove_black(child.sinks[index]));
    }
  }

  // Moves that end with only the given sink of the block black.
  const std::vector<Move>& single_sink(const CsBlock& block, int index, int budget) {
    const Vertex sink = block.sinks[index];
    const auto key = std::make_tuple(sink, budget);
    if (auto it = memo_.find(key); it != memo_.end()) return it->second;
    std::vector<Move> out;
    if (block.level == 0) {
      out.push_back(Move::place_black(sink));
    } else {
      walk_spines(block, index, index + 1, budget, out);
    }
    return memo_.emplace(key, std::move(out)).first->second;
  }

  const CsGraph& graph_;
  std::map<std::tuple<Vertex, int>, std::vector<Move>> memo_;
};

}  // namespace

int cs_min_budget(int c, int r) {
  if (c < 2 || r < 0) throw std::invalid_argument("carlson_savage requires c >= 2, r >= 0");
  if (r == 0) return 1;
  int need = 1;
  for (int level = 1; level <= r; ++level) {
    need = std::max({need + 1, 3, pyramid_space(level - 1)});
  }
  return need;
}

std::vector<Move> cs_tradeoff_strategy(const Dag& g, int c, int r, const StrategyParams& params) {
  check_family_params(FamilySpec::carlson_savage(c, r));
  const CsGraph graph = build_carlson_savage(c, r);
  if (!(graph.dag == g)) {
    throw UnsupportedFamily("graph is not carlson_savage(" + std::to_string(c) + "," +
                            std::to_string(r) + ")");
  }
  const int minimum = cs_min_budget(c, r);
  if (params.space_budget < minimum) throw BudgetTooSmall(params.space_budget, minimum);
  return CsPlanner(graph).all_sinks(params.space_budget);
}

std::vector<Move> black_strategy(const Dag& g, const FamilySpec& family) {
  check_family_params(family);
  if (!(build_family(family) == g)) {
    throw UnsupportedFamily("graph does not match family " + family.name() + " " + family.params());
  }
  std::vector<Move> out;
  switch (family.kind) {
    case FamilyKind::chain:
      out.push_back(Move::place_black(0));
      for (Vertex v = 1; v < family.n; ++v) {
        out.push_back(Move::place_black(v));
        out.push_back(Move::remove_black(v - 1));
      }
      out.push_back(Move::remove_black(family.n - 1));
      break;
    case FamilyKind::pyramid:
      sweep_pyramid(
          family.h, [&](int level, int pos) { return pyramid_vertex(family.h, level, pos); }, out);
      out.push_back(Move::remove_black(pyramid_vertex(family.h, family.h, 0)));
      break;
    case FamilyKind::binary_tree:
      pebble_subtree(family.h, family.h, 0, out);
      out.push_back(Move::remove_black(tree_vertex(family.h, family.h, 0)));
      break;
    case FamilyKind::carlson_savage:
      return cs_tradeoff_strategy(g, family.c, family.r, {cs_min_budget(family.c, family.r)});
  }
  return out;
}

}  // namespace pebbling
