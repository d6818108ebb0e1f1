#include <doctest.h>

#include <random>

#include "pebbling/blob_search.hpp"
#include "pebbling/families.hpp"
#include "pebbling/price_search.hpp"
#include "pebbling/simulation.hpp"
#include "pebbling/strategies.hpp"
#include "support.hpp"

using namespace pebbling;

namespace {

const Dag edge_graph(2, {{0, 1}});

const std::vector<Move> edge_moves{Move::place_black(0), Move::place_black(1),
                                   Move::remove_black(1), Move::remove_black(0)};

BlobSubconfig sub(VertexSet blob, VertexSet whites = {}) {
  return {std::move(blob), std::move(whites)};
}

Clause clause_of(const BlobSubconfig& s) {
  Clause c;
  for (Vertex b : s.blob) c.push_back(b + 1);
  for (Vertex w : s.whites) c.push_back(-(w + 1));
  return c;
}

// d = 1 induced configuration straight from the definition: every [B]<W>
// whose clause is implied, and stops being implied when any single vertex
// is dropped from B or W.
std::set<BlobSubconfig> induced_by_definition(const Dag& g, const std::vector<Clause>& live) {
  const int n = g.size();
  auto implied = [&](const BlobSubconfig& s) { return oracle::implies(n, live, clause_of(s)); };
  std::set<BlobSubconfig> out;
  int total = 1;
  for (int i = 0; i < n; ++i) total *= 3;
  for (int code = 0; code < total; ++code) {
    BlobSubconfig s;
    for (int v = 0, rest = code; v < n; ++v, rest /= 3) {
      if (rest % 3 == 1) s.blob.insert(v);
      if (rest % 3 == 2) s.whites.insert(v);
    }
    if (s.blob.empty() || !implied(s)) continue;
    bool precise = true;
    for (Vertex b : s.blob) {
      BlobSubconfig t = s;
      t.blob.erase(b);
      if (!t.blob.empty() && implied(t)) precise = false;
    }
    for (Vertex w : s.whites) {
      BlobSubconfig t = s;
      t.whites.erase(w);
      if (implied(t)) precise = false;
    }
    if (precise) out.insert(s);
  }
  return out;
}

RefutationMetrics compile_and_check(const Dag& g, int d, const std::vector<Move>& moves) {
  return check_refutation(pebbling_contradiction(g, d), compile_pebbling(g, d, moves));
}

}  // namespace

TEST_SUITE("simulation") {
  TEST_CASE("edge pebbling compiles to the textbook refutation") {
    const ResolutionTrace t = compile_pebbling(edge_graph, 1, edge_moves);
    const auto m = check_refutation(pebbling_contradiction(edge_graph, 1), t);
    CHECK(m.length == 5);
    CHECK(m.width == 2);
    // {v} is derived before the empty clause.
    bool derived_v = false;
    for (const auto& e : t.events) {
      if (e.kind == TraceEvent::Kind::infer && e.clause == Clause{2}) derived_v = true;
    }
    CHECK(derived_v);
    CHECK(t.events.back().clause.empty());
  }

  TEST_CASE("chain(1) compiles to three events") {
    const Dag g = build_family(FamilySpec::chain(1));
    const auto t = compile_pebbling(g, 1, {Move::place_black(0), Move::remove_black(0)});
    CHECK(t == ResolutionTrace{{TraceEvent::axiom({1}), TraceEvent::axiom({-1}),
                                TraceEvent::infer(1, 2, 1, {})}});
  }

  TEST_CASE("white moves are not compiled") {
    CHECK_THROWS_AS(compile_pebbling(edge_graph, 1, {Move::place_white(1)}), std::invalid_argument);
    CHECK_THROWS_AS(compile_pebbling(edge_graph, 1, {Move::place_black(1)}), IllegalMove);
  }

  TEST_CASE("pyramid(2) with two variables per vertex") {
    const Dag g = build_family(FamilySpec::pyramid(2));
    const auto r = metrics_vs_cost(g, 2, black_strategy(g, FamilySpec::pyramid(2)));
    CHECK(r.pebbling_time == 6);
    CHECK(r.pebbling_cost == 4);
    // Frozen from the first checked run.
    CHECK(r.refutation == RefutationMetrics{37, 4, 7});
  }

  TEST_CASE("edge ratio") {
    const auto r = metrics_vs_cost(edge_graph, 1, edge_moves);
    CHECK(r.pebbling_cost == 2);
    CHECK(r.refutation.clause_space == 4);
    CHECK(r.space_ratio == doctest::Approx(2.0));
  }

  TEST_CASE("chains: clause space exceeds pebbling space by a constant") {
    for (int n = 2; n <= 6; ++n) {
      const Dag g = build_family(FamilySpec::chain(n));
      const auto r = metrics_vs_cost(g, 1, black_strategy(g, FamilySpec::chain(n)));
      CHECK(r.refutation.clause_space - r.pebbling_cost == 2);
      CHECK(r.refutation.length == 2 * n + 1);
    }
  }

  TEST_CASE("pyramids: length per placement stays bounded") {
    for (int h = 1; h <= 3; ++h) {
      const Dag g = build_family(FamilySpec::pyramid(h));
      const auto r = metrics_vs_cost(g, 1, black_strategy(g, FamilySpec::pyramid(h)));
      CHECK(r.length_ratio <= 2.4 + 1e-9);
    }
  }

  TEST_CASE("random black pebblings compile to valid refutations") {
    std::mt19937 rng(23);
    for (int trial = 0; trial < 25; ++trial) {
      const Dag g = oracle::random_dag(rng, 5 + trial % 3, 0.35);
      const int s = optimal_price(g, Game::black) + trial % 2;
      const auto moves = shortest_pebbling(g, Game::black, s);
      REQUIRE(moves.has_value());
      for (int d = 1; d <= 2; ++d) {
        const auto m = compile_and_check(g, d, *moves);
        CHECK(m.length > 0);
      }
    }
  }

  TEST_CASE("blob pebblings compile to valid refutations") {
    std::vector<Dag> graphs{edge_graph, build_family(FamilySpec::chain(3)),
                            build_family(FamilySpec::pyramid(1)), Dag(3, {{0, 2}, {1, 2}}, {2})};
    for (const Dag& g : graphs) {
      for (bool labelled : {false, true}) {
        BlobSearchOptions opts;
        opts.labelled = labelled;
        const auto witness = optimal_blob_pebbling(g, opts).moves;
        for (int d = 1; d <= 2; ++d) {
          const auto t = compile_blob_pebbling(g, d, witness);
          CHECK_NOTHROW(check_refutation(pebbling_contradiction(g, d), t));
        }
      }
    }
  }

  TEST_CASE("hand-made blob pebbling with inflation and a wide blob") {
    // chain 0 -> 1 -> 2: derive [{1,2}]<> by inflating [{1}]<>, then merge
    // it with [{2}]<{1}> on 1 to reach [{2}]<>.
    const Dag g = build_family(FamilySpec::chain(3));
    const std::vector<BlobMove> moves{BlobMove::introduce(0),   BlobMove::introduce(1),
                                      BlobMove::merge(0, 1, 0), BlobMove::inflate(2, sub({1, 2})),
                                      BlobMove::introduce(2),   BlobMove::merge(3, 4, 1),
                                      BlobMove::erase(0),       BlobMove::erase(1),
                                      BlobMove::erase(2),       BlobMove::erase(3),
                                      BlobMove::erase(4)};
    const auto report = validate_blob_pebbling(g, moves);
    for (int d = 1; d <= 2; ++d) {
      const auto sim = metrics_vs_cost(g, d, moves);
      CHECK(sim.pebbling_cost == report.max_cost);
      CHECK(sim.refutation.length > 0);
    }
  }

  TEST_CASE("implication oracle agrees with brute force") {
    std::mt19937 rng(29);
    std::uniform_int_distribution<int> var(1, 5);
    std::bernoulli_distribution sign(0.5);
    auto random_clause = [&](int len) {
      Clause c;
      for (int k = 0; k < len; ++k) c.push_back(sign(rng) ? var(rng) : -var(rng));
      return normalize(c);
    };
    for (int trial = 0; trial < 200; ++trial) {
      std::vector<Clause> f;
      for (int k = 0; k < 3; ++k) {
        Clause c = random_clause(2);
        if (!is_tautology(c)) f.push_back(c);
      }
      const ImplicationOracle io(5, f);
      const Clause q = random_clause(2);
      if (is_tautology(q)) continue;
      CHECK(io.implies(q) == oracle::implies(5, f, q));
      CHECK(io.satisfiable() == !oracle::implies(5, f, {}));
    }
    CHECK_THROWS_AS(ImplicationOracle(25, {}), SizeBoundExceeded);
  }

  TEST_CASE("induced configurations") {
    CHECK(induce_configuration(edge_graph, 1, {{2}}).subconfigs == std::set{sub({1})});
    CHECK(induce_configuration(edge_graph, 1, {}).subconfigs.empty());
    CHECK(induce_configuration(edge_graph, 1, {{2, -1}}).subconfigs == std::set{sub({1}, {0})});
    // [{1}]<{0}> is implied too, but not precisely: [{1}]<> already is.
    CHECK(induce_configuration(edge_graph, 1, {{1}, {-1, 2}}).subconfigs ==
          std::set{sub({0}), sub({1})});
  }

  TEST_CASE("induced configurations follow the definition") {
    const Dag g = build_family(FamilySpec::pyramid(1));
    const std::vector<Clause> live{{1}, {-1, -2, 3}};
    const auto cfg = induce_configuration(g, 1, live);
    CHECK(cfg.subconfigs == induced_by_definition(g, live));
    CHECK(cfg.contains(sub({0})));
    CHECK(cfg.contains(sub({2}, {1})));
    CHECK_FALSE(cfg.contains(sub({2}, {0, 1})));

    std::mt19937 rng(31);
    const Dag chain3 = build_family(FamilySpec::chain(3));
    for (int trial = 0; trial < 40; ++trial) {
      const Dag& h = trial % 2 ? g : chain3;
      const Cnf f = pebbling_contradiction(h, 1, true);
      std::vector<Clause> subset;
      for (const auto& c : f.clauses) {
        if (std::bernoulli_distribution(0.5)(rng)) subset.push_back(c);
      }
      CHECK(induce_configuration(h, 1, subset).subconfigs == induced_by_definition(h, subset));
    }
  }

  TEST_CASE("induced sequences along compiled refutations are blob pebblings") {
    std::vector<std::pair<Dag, std::vector<Move>>> cases{{edge_graph, edge_moves}};
    const Dag chain3 = build_family(FamilySpec::chain(3));
    cases.push_back({chain3, black_strategy(chain3, FamilySpec::chain(3))});
    for (const auto& [g, moves] : cases) {
      const auto seq = induced_sequence(g, 1, compile_pebbling(g, 1, moves));
      REQUIRE_FALSE(seq.empty());
      const SequenceCheck check = check_induced_sequence(g, seq);
      CHECK_MESSAGE(check.legal, check.reason);
      for (Vertex t : g.targets()) CHECK(seq.back().contains(sub({t})));
    }
  }

  TEST_CASE("an induced sequence that never reaches the target is rejected") {
    const Dag g = build_family(FamilySpec::chain(3));
    std::vector<BlobConfig> seq(2);
    seq[1].subconfigs.insert(sub({1}));
    const SequenceCheck check = check_induced_sequence(g, seq);
    CHECK_FALSE(check.legal);
    CHECK(check.failed_step == 1);
    seq[1].subconfigs.insert(sub({2}));
    CHECK(check_induced_sequence(g, seq).legal);
  }

  TEST_CASE("induced json") {
    BlobConfig cfg;
    cfg.subconfigs.insert(sub({1}, {0}));
    CHECK(induced_json({cfg}) == R"([[{"blob":[1],"whites":[0]}]])");
  }
}
