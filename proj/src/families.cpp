#include "pebbling/families.hpp"

#include <stdexcept>

namespace pebbling {

std::string FamilySpec::name() const {
  switch (kind) {
    case FamilyKind::chain:
      return "chain";
    case FamilyKind::pyramid:
      return "pyramid";
    case FamilyKind::binary_tree:
      return "binary_tree";
    case FamilyKind::carlson_savage:
      return "carlson_savage";
  }
  return "unknown";
}

std::string FamilySpec::params() const {
  switch (kind) {
    case FamilyKind::chain:
      return "n=" + std::to_string(n);
    case FamilyKind::pyramid:
    case FamilyKind::binary_tree:
      return "h=" + std::to_string(h);
    case FamilyKind::carlson_savage:
      return "c=" + std::to_string(c) + ";r=" + std::to_string(r);
  }
  return "";
}

FamilyKind parse_family_kind(const std::string& name) {
  if (name == "chain") return FamilyKind::chain;
  if (name == "pyramid") return FamilyKind::pyramid;
  if (name == "binary_tree" || name == "tree") return FamilyKind::binary_tree;
  if (name == "carlson_savage" || name == "cs") return FamilyKind::carlson_savage;
  throw std::invalid_argument("unknown family '" + name + "'");
}

void check_family_params(const FamilySpec& spec) {
  switch (spec.kind) {
    case FamilyKind::chain:
      if (spec.n < 1) throw std::invalid_argument("chain requires n >= 1");
      break;
    case FamilyKind::pyramid:
      if (spec.h < 1) throw std::invalid_argument("pyramid requires h >= 1");
      break;
    case FamilyKind::binary_tree:
      if (spec.h < 1) throw std::invalid_argument("binary_tree requires h >= 1");
      if (spec.h > 24) throw std::invalid_argument("binary_tree height too large");
      break;
    case FamilyKind::carlson_savage:
      if (spec.c < 2) throw std::invalid_argument("carlson_savage requires c >= 2");
      if (spec.r < 1) throw std::invalid_argument("carlson_savage requires r >= 1");
      if (carlson_savage_size(spec.c, spec.r) > (1 << 24)) {
        throw std::invalid_argument("carlson_savage parameters too large");
      }
      break;
  }
}

Vertex pyramid_vertex(int h, int level, int pos) {
  // Levels 0..level-1 hold (h+1) + h + ... + (h-level+2) vertices.
  const int before = level * (h + 1) - level * (level - 1) / 2;
  return before + pos;
}

Vertex tree_vertex(int h, int level, int pos) {
  // Level i holds 2^(h-i) vertices.
  int before = 0;
  for (int i = 0; i < level; ++i) before += 1 << (h - i);
  return before + pos;
}

namespace {

Dag build_chain(int n) {
  std::vector<Edge> edges;
  for (Vertex v = 0; v + 1 < n; ++v) edges.push_back({v, v + 1});
  return Dag(n, std::move(edges));
}

void append_pyramid(int h, Vertex base, std::vector<Edge>& edges) {
  for (int i = 1; i <= h; ++i) {
    for (int j = 0; j <= h - i; ++j) {
      const Vertex v = base + pyramid_vertex(h, i, j);
      edges.push_back({base + pyramid_vertex(h, i - 1, j), v});
      edges.push_back({base + pyramid_vertex(h, i - 1, j + 1), v});
    }
  }
}

int pyramid_size(int h) { return (h + 1) * (h + 2) / 2; }

Dag build_pyramid(int h) {
  std::vector<Edge> edges;
  append_pyramid(h, 0, edges);
  return Dag(pyramid_size(h), std::move(edges));
}

Dag build_tree(int h) {
  std::vector<Edge> edges;
  for (int i = 1; i <= h; ++i) {
    for (int j = 0; j < (1 << (h - i)); ++j) {
      const Vertex v = tree_vertex(h, i, j);
      edges.push_back({tree_vertex(h, i - 1, 2 * j), v});
      edges.push_back({tree_vertex(h, i - 1, 2 * j + 1), v});
    }
  }
  return Dag((1 << (h + 1)) - 1, std::move(edges));
}

CsBlock build_cs_block(int c, int level, Vertex& next, std::vector<Edge>& edges) {
  CsBlock block;
  block.level = level;
  if (level == 0) {
    for (int i = 0; i < c; ++i) block.sinks.push_back(next++);
    return block;
  }
  block.children.push_back(build_cs_block(c, level - 1, next, edges));
  block.children.push_back(build_cs_block(c, level - 1, next, edges));
  const int ph = block.pyramid_height();
  for (int j = 0; j < c; ++j) {
    const Vertex base = next;
    append_pyramid(ph, base, edges);
    std::vector<Vertex> vs(pyramid_size(ph));
    for (std::size_t k = 0; k < vs.size(); ++k) vs[k] = base + static_cast<Vertex>(k);
    next += static_cast<Vertex>(vs.size());
    block.pyramids.push_back(std::move(vs));
  }
  const auto& first = block.children[0].sinks;
  const auto& second = block.children[1].sinks;
  for (int j = 0; j < c; ++j) {
    std::vector<Vertex> spine;
    Vertex prev = block.pyramids[j].back();
    for (int i = 0; i < 2 * c; ++i) {
      const Vertex v = next++;
      const Vertex feed = i < c ? first[i] : second[i - c];
      edges.push_back({prev, v});
      edges.push_back({feed, v});
      spine.push_back(v);
      prev = v;
    }
    block.sinks.push_back(spine.back());
    block.spines.push_back(std::move(spine));
  }
  return block;
}

}  // namespace

int carlson_savage_size(int c, int r) {
  int size = c;
  for (int level = 1; level <= r; ++level) {
    size = 2 * size + c * pyramid_size(level - 1) + 2 * c * c;
  }
  return size;
}

CsGraph build_carlson_savage(int c, int r) {
  check_family_params(FamilySpec::carlson_savage(c, r));
  CsGraph out;
  out.c = c;
  out.r = r;
  std::vector<Edge> edges;
  Vertex next = 0;
  out.root = build_cs_block(c, r, next, edges);
  out.dag = Dag(next, std::move(edges), out.root.sinks);
  return out;
}

Dag build_family(const FamilySpec& spec) {
  check_family_params(spec);
  Dag g;
  DegreePolicy policy = DegreePolicy::fan_in_two;
  switch (spec.kind) {
    case FamilyKind::chain:
      g = build_chain(spec.n);
      policy = DegreePolicy::allow_unary;
      break;
    case FamilyKind::pyramid:
      g = build_pyramid(spec.h);
      break;
    case FamilyKind::binary_tree:
      g = build_tree(spec.h);
      break;
    case FamilyKind::carlson_savage:
      g = build_carlson_savage(spec.c, spec.r).dag;
      break;
  }
  if (auto report = validate_dag(g, policy); !report.ok()) {
    throw std::logic_error("generated graph is invalid: " + report.to_string());
  }
  return g;
}

}  // namespace pebbling
