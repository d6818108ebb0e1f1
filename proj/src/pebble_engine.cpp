#include "pebbling/pebble_engine.hpp"

#include <algorithm>
#include <json.hpp>
#include <limits>
#include <sstream>

namespace pebbling {

std::string to_string(Game game) { return game == Game::black ? "black" : "black-white"; }

Game parse_game(std::string_view name) {
  if (name == "black") return Game::black;
  if (name == "black-white" || name == "bw" || name == "black_white") {
    return Game::black_white;
  }
  throw std::invalid_argument("unknown game '" + std::string(name) + "'");
}

IllegalMove::IllegalMove(std::string reason, std::optional<std::size_t> index)
    : std::runtime_error(index ? "illegal move at index " + std::to_string(*index) + ": " + reason
                               : "illegal move: " + reason),
      reason_(std::move(reason)),
      index_(index) {}

namespace {

bool preds_pebbled(const Dag& g, const PebbleConfig& cfg, Vertex v) {
  return std::all_of(g.preds(v).begin(), g.preds(v).end(),
                     [&](Vertex p) { return cfg.pebbled(p); });
}

}  // namespace

PebbleConfig step(const Dag& g, const PebbleConfig& cfg, Move m, Game game) {
  if (!g.contains(m.v)) throw IllegalMove("unknown vertex " + std::to_string(m.v));
  PebbleConfig next = cfg;
  switch (m.kind) {
    case MoveKind::place_black:
      if (cfg.pebbled(m.v)) throw IllegalMove("vertex already pebbled");
      if (!preds_pebbled(g, cfg, m.v)) throw IllegalMove("predecessor unpebbled");
      next.black.insert(m.v);
      break;
    case MoveKind::remove_black:
      if (!cfg.black.count(m.v)) throw IllegalMove("no black pebble to remove");
      next.black.erase(m.v);
      break;
    case MoveKind::place_white:
      if (game == Game::black) throw IllegalMove("white move in black game");
      if (cfg.pebbled(m.v)) throw IllegalMove("vertex already pebbled");
      next.white.insert(m.v);
      break;
    case MoveKind::remove_white:
      if (game == Game::black) throw IllegalMove("white move in black game");
      if (!cfg.white.count(m.v)) throw IllegalMove("no white pebble to remove");
      if (!preds_pebbled(g, cfg, m.v)) throw IllegalMove("predecessor unpebbled");
      next.white.erase(m.v);
      break;
  }
  return next;
}

PebblingTrace validate_pebbling(const Dag& g, std::vector<Move> moves, Game game) {
  PebblingTrace trace;
  trace.game = game;
  PebbleConfig cfg;
  VertexSet visited;
  for (std::size_t i = 0; i < moves.size(); ++i) {
    const Move m = moves[i];
    try {
      cfg = step(g, cfg, m, game);
    } catch (const IllegalMove& e) {
      throw IllegalMove(e.reason(), i);
    }
    if (m.is_placement()) {
      ++trace.time;
      if (game == Game::black_white || m.kind == MoveKind::place_black) {
        visited.insert(m.v);
      }
    }
    trace.space = std::max(trace.space, static_cast<int>(cfg.size()));
  }
  for (Vertex t : g.targets()) {
    if (!visited.count(t)) {
      throw IncompletePebbling("target " + std::to_string(t) + " never pebbled");
    }
  }
  if (!cfg.empty()) throw IncompletePebbling("final configuration nonempty");
  trace.moves_total = static_cast<int>(moves.size());
  trace.moves = std::move(moves);
  return trace;
}

std::string format_moves(const std::vector<Move>& moves) {
  std::ostringstream out;
  for (const Move& m : moves) {
    switch (m.kind) {
      case MoveKind::place_black:
        out << "PB ";
        break;
      case MoveKind::remove_black:
        out << "RB ";
        break;
      case MoveKind::place_white:
        out << "PW ";
        break;
      case MoveKind::remove_white:
        out << "RW ";
        break;
    }
    out << m.v << '\n';
  }
  return out.str();
}

std::vector<Move> parse_moves(std::string_view text) {
  std::vector<Move> moves;
  std::istringstream in{std::string(text)};
  std::string line;
  int line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    std::istringstream ls(line);
    std::string op;
    if (!(ls >> op) || op == "c") continue;
    long long v = -1;
    if (!(ls >> v)) throw ParseError(line_no, "missing vertex");
    std::string extra;
    if (ls >> extra) throw ParseError(line_no, "trailing input '" + extra + "'");
    if (v < 0 || v > std::numeric_limits<int>::max()) {
      throw ParseError(line_no, "vertex out of range");
    }
    const auto vertex = static_cast<Vertex>(v);
    if (op == "PB")
      moves.push_back(Move::place_black(vertex));
    else if (op == "RB")
      moves.push_back(Move::remove_black(vertex));
    else if (op == "PW")
      moves.push_back(Move::place_white(vertex));
    else if (op == "RW")
      moves.push_back(Move::remove_white(vertex));
    else
      throw ParseError(line_no, "unknown move '" + op + "'");
  }
  return moves;
}

std::string trace_json(const PebblingTrace& trace) {
  nlohmann::ordered_json j;
  j["time"] = trace.time;
  j["space"] = trace.space;
  j["moves_total"] = trace.moves_total;
  return j.dump();
}

}  // namespace pebbling
