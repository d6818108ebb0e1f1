#include <doctest.h>

#include <random>

#include "pebbling/families.hpp"
#include "pebbling/measures.hpp"
#include "support.hpp"

using namespace pebbling;

namespace {

const Dag pyramid2 = build_family(FamilySpec::pyramid(2));
const Vertex sink2 = pyramid_vertex(2, 2, 0);

VertexSet as_vertex_set(const std::set<Vertex>& s) { return {s.begin(), s.end()}; }

}  // namespace

TEST_SUITE("measures") {
  TEST_CASE("hiding basics") {
    CHECK(hidden_vertices(pyramid2, {}).empty());
    for (Vertex v = 0; v < pyramid2.size(); ++v) CHECK(hidden_vertices(pyramid2, {v}).count(v));
    const VertexSet middle{pyramid_vertex(2, 1, 0), pyramid_vertex(2, 1, 1)};
    const VertexSet hidden = hidden_vertices(pyramid2, middle);
    CHECK(hidden == as_vertex_set(oracle::hidden(pyramid2, {middle.begin(), middle.end()})));
    CHECK(hidden == VertexSet{3, 4, 5});
    CHECK_THROWS_AS(hidden_vertices(pyramid2, {9}), std::out_of_range);
  }

  TEST_CASE("hiding agrees with path enumeration in both directions") {
    std::mt19937 rng(37);
    for (int trial = 0; trial < 200; ++trial) {
      const Dag g = oracle::random_dag(rng, 8, 0.3);
      const auto u = oracle::random_subset(rng, g.size());
      const VertexSet uv(u.begin(), u.end());
      CHECK(hidden_vertices(g, uv) == as_vertex_set(oracle::hidden(g, u, true)));
      CHECK(hidden_vertices(g, uv, HidingDirection::to_sinks) ==
            as_vertex_set(oracle::hidden(g, u, false)));
    }
  }

  TEST_CASE("layered view") {
    const LayeredView v = layered_view(pyramid2);
    CHECK(v.layered);
    CHECK(v.max_level == 2);
    CHECK(v.level[sink2] == 2);
    const Dag skip(3, {{0, 1}, {1, 2}, {0, 2}});
    CHECK_FALSE(layered_view(skip).layered);
    CHECK_THROWS_AS(klawe_measure(skip, {2}), GraphNotLayered);
    CHECK(layered_view(build_family(FamilySpec::carlson_savage(2, 1))).max_level >= 1);
  }

  TEST_CASE("measure values") {
    CHECK(klawe_measure(pyramid2, {}).value == 0);
    const MeasureValue m = klawe_measure(pyramid2, {sink2});
    // m^j = j + 2 * L_{>=j}; the sink alone is the least hider at every level.
    CHECK(m.partial == std::vector<int>{2, 3, 4});
    CHECK(m.value == 4);
  }

  TEST_CASE("measure is monotone") {
    std::mt19937 rng(41);
    for (int trial = 0; trial < 200; ++trial) {
      const Dag g = oracle::random_layered_dag(rng, 8);
      auto small = oracle::random_subset(rng, g.size(), 0.25);
      auto large = small;
      for (Vertex v : oracle::random_subset(rng, g.size(), 0.25)) large.insert(v);
      CHECK(klawe_measure(g, as_vertex_set(small)).value <=
            klawe_measure(g, as_vertex_set(large)).value);
    }
  }

  TEST_CASE("potential examples") {
    CHECK(potential(pyramid2, {}) == 0);
    PebbleConfig black_sink;
    black_sink.black = {sink2};
    // Only {sink} and sets hiding exactly the sink are admissible.
    CHECK(potential(pyramid2, black_sink) == 4);
    CHECK_THROWS_AS(potential(build_family(FamilySpec::pyramid(4)), {}), SizeBoundExceeded);
  }

  TEST_CASE("potential never exceeds the measure of the pebbled set") {
    std::mt19937 rng(43);
    for (int trial = 0; trial < 100; ++trial) {
      const Dag g = oracle::random_layered_dag(rng, 9);
      PebbleConfig cfg;
      for (Vertex v : oracle::random_subset(rng, g.size())) {
        (std::bernoulli_distribution(0.5)(rng) ? cfg.black : cfg.white).insert(v);
      }
      VertexSet all = cfg.black;
      all.insert(cfg.white.begin(), cfg.white.end());
      CHECK(potential(g, cfg) <= klawe_measure(g, all).value);
    }
  }

  TEST_CASE("LHC examples") {
    CHECK(check_lhc(Dag(1, {}), 1).holds);
    const LhcResult chain = check_lhc(build_family(FamilySpec::chain(3)), 1);
    CHECK(chain.holds);
    CHECK(chain.witness_set.empty());
    CHECK(chain.witness_vertex == -1);
    CHECK(check_lhc(pyramid2, klawe::pyramid_lhc_bound(2)).holds);
    CHECK_THROWS_AS(check_lhc(build_family(FamilySpec::pyramid(4)), 2), SizeBoundExceeded);
  }

  TEST_CASE("LHC fails when the bound is too small") {
    // Hiding the pyramid sink takes its two predecessors or the sink itself;
    // with bound 0 nothing hides anything.
    const LhcResult r = check_lhc(pyramid2, 0);
    CHECK_FALSE(r.holds);
    CHECK(hidden_vertices(pyramid2, r.witness_set).count(r.witness_vertex));
  }

  TEST_CASE("report json") {
    PebbleConfig cfg;
    cfg.black = {sink2};
    const MeasureReport r = measure_report(pyramid2, cfg);
    CHECK(r.hidden == VertexSet{sink2});
    CHECK(to_json(r) == R"({"hidden":[5],"measure":4,"partial":[2,3,4],"potential":4})");
  }
}
