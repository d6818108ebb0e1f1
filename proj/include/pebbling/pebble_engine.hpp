#pragma once

#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "pebbling/graph.hpp"

namespace pebbling {

enum class Game { black, black_white };

std::string to_string(Game game);
Game parse_game(std::string_view name);

enum class MoveKind { place_black, remove_black, place_white, remove_white };

struct Move {
  MoveKind kind = MoveKind::place_black;
  Vertex v = 0;

  static Move place_black(Vertex v) { return {MoveKind::place_black, v}; }
  static Move remove_black(Vertex v) { return {MoveKind::remove_black, v}; }
  static Move place_white(Vertex v) { return {MoveKind::place_white, v}; }
  static Move remove_white(Vertex v) { return {MoveKind::remove_white, v}; }

  bool is_placement() const {
    return kind == MoveKind::place_black || kind == MoveKind::place_white;
  }
  bool operator==(const Move&) const = default;
};

struct PebbleConfig {
  VertexSet black;
  VertexSet white;

  std::size_t size() const { return black.size() + white.size(); }
  bool empty() const { return black.empty() && white.empty(); }
  bool pebbled(Vertex v) const { return black.count(v) || white.count(v); }
  bool operator==(const PebbleConfig&) const = default;
};

class IllegalMove : public std::runtime_error {
 public:
  IllegalMove(std::string reason, std::optional<std::size_t> index = std::nullopt);
  const std::string& reason() const { return reason_; }
  std::optional<std::size_t> index() const { return index_; }

 private:
  std::string reason_;
  std::optional<std::size_t> index_;
};

class IncompletePebbling : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Applies one move. Placing black needs every predecessor pebbled; removing
// white needs every predecessor pebbled; placing white is unconditional
// (black-white game only). The input configuration is not modified.
PebbleConfig step(const Dag& g, const PebbleConfig& cfg, Move m, Game game);

struct PebblingTrace {
  Game game = Game::black;
  std::vector<Move> moves;
  int time = 0;         // placements of either colour
  int space = 0;        // max |black| + |white| over all steps
  int moves_total = 0;  // placements and removals
};

// A complete pebbling starts and ends empty and has every target pebbled at
// some step (black in the black game, either colour in the black-white game).
PebblingTrace validate_pebbling(const Dag& g, std::vector<Move> moves, Game game);

std::string format_moves(const std::vector<Move>& moves);
// One move per line: "PB v", "RB v", "PW v", "RW v". Blank lines and lines
// starting with "c" are ignored.
std::vector<Move> parse_moves(std::string_view text);

std::string trace_json(const PebblingTrace& trace);

}  // namespace pebbling
