// Acceptance suite: one PASS/FAIL line per criterion. Exit status is the
// number of failed criteria.

#include <chrono>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iostream>
#include <random>
#include <sstream>

#include "pebbling/blob_engine.hpp"
#include "pebbling/cnf.hpp"
#include "pebbling/families.hpp"
#include "pebbling/harness.hpp"
#include "pebbling/measures.hpp"
#include "pebbling/price_search.hpp"
#include "pebbling/resolution.hpp"
#include "pebbling/simulation.hpp"
#include "pebbling/strategies.hpp"
#include "support.hpp"

using namespace pebbling;

namespace {

constexpr double kPriceSeconds = 60.0;
constexpr double kTradeoffSeconds = 600.0;
constexpr int kMutationsPerProof = 100;
constexpr int kMirrorUniverse = 5;
constexpr int kMeasureFuzzPairs = 1000;
constexpr int kMeasureFuzzMaxVertices = 10;
// Largest strategy/frontier time ratio over every budget on (2,1) and
// (2,2), recorded on the first run (50/42 on (2,2) at 6 pebbles).
constexpr double kStrategyFactor = 1.1905;

struct Verdict {
  bool pass = true;
  std::string detail;
};

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point start) {
  return std::chrono::duration<double>(Clock::now() - start).count();
}

std::vector<FamilySpec> test_families() {
  std::vector<FamilySpec> specs;
  for (int n = 1; n <= 6; ++n) specs.push_back(FamilySpec::chain(n));
  for (int h = 1; h <= 3; ++h) specs.push_back(FamilySpec::binary_tree(h));
  for (int h = 1; h <= 3; ++h) specs.push_back(FamilySpec::pyramid(h));
  specs.push_back(FamilySpec::carlson_savage(2, 1));
  return specs;
}

std::string label(const FamilySpec& s) { return s.name() + "(" + s.params() + ")"; }

Verdict oracle_correctness() {
  const auto start = Clock::now();
  Verdict v;
  std::ostringstream log;
  log << " chain1..6=";
  for (int n = 1; n <= 6; ++n) {
    const int got = optimal_price(build_family(FamilySpec::chain(n)), Game::black);
    const int want = n == 1 ? 1 : 2;
    log << (n > 1 ? "," : "") << got;
    if (got != want) v.pass = false;
  }
  for (int h = 1; h <= 3; ++h) {
    const Dag g = build_family(FamilySpec::pyramid(h));
    const int got = optimal_price(g, Game::black);
    const int want = oracle::price(g, false);
    log << " pyramid" << h << "=" << got << "/" << want;
    if (got != want) v.pass = false;
  }
  const double secs = seconds_since(start);
  if (secs >= kPriceSeconds) v.pass = false;
  log << " in " << secs << "s";
  v.detail = log.str();
  return v;
}

Verdict game_relation() {
  SearchLimits limits;
  limits.max_vertices_bw = 15;  // binary_tree(3)
  int violations = 0;
  int checked = 0;
  for (const auto& spec : test_families()) {
    const Dag g = build_family(spec);
    const int bw = optimal_price(g, Game::black_white, limits);
    const int black = optimal_price(g, Game::black, limits);
    ++checked;
    if (bw > black) ++violations;
  }
  return {violations == 0,
          std::to_string(violations) + " violations over " + std::to_string(checked) + " graphs"};
}

// One corruption of a single event: a flipped literal, a different pivot,
// or a premise/erased id that is not live at that point.
ResolutionTrace mutate(const ResolutionTrace& t, int num_vars, std::mt19937& rng) {
  ResolutionTrace m = t;
  auto pick = [&](std::size_t n) {
    return std::uniform_int_distribution<std::size_t>(0, n - 1)(rng);
  };
  TraceEvent& e = m.events[pick(m.events.size())];

  // Ids live just before the mutated event.
  std::set<int> live;
  int next_id = 1;
  for (const auto& x : m.events) {
    if (&x == &e) break;
    if (x.kind == TraceEvent::Kind::erase) {
      live.erase(x.left);
    } else {
      live.insert(next_id++);
    }
  }
  auto dead_id = [&] {
    std::vector<int> dead{0, next_id, next_id + 1};
    for (int id = 1; id < next_id; ++id) {
      if (!live.count(id)) dead.push_back(id);
    }
    return dead[pick(dead.size())];
  };

  switch (e.kind) {
    case TraceEvent::Kind::axiom: {
      const std::size_t i = pick(e.clause.size());
      e.clause[i] = -e.clause[i];
      break;
    }
    case TraceEvent::Kind::infer:
      switch (pick(3)) {
        case 0:
          if (e.clause.empty()) {
            e.clause.push_back(static_cast<int>(pick(num_vars)) + 1);
          } else {
            const std::size_t i = pick(e.clause.size());
            e.clause[i] = -e.clause[i];
          }
          break;
        case 1: {
          int p = e.pivot;
          while (p == e.pivot) p = static_cast<int>(pick(num_vars + 1)) + 1;
          e.pivot = p;
          break;
        }
        default:
          (pick(2) ? e.left : e.right) = dead_id();
          break;
      }
      break;
    case TraceEvent::Kind::erase:
      e.left = dead_id();
      break;
  }
  return m;
}

Verdict simulation_soundness() {
  std::mt19937 rng(2024);
  int proofs = 0;
  int mutants = 0;
  int rejected = 0;
  std::ostringstream failures;
  for (const auto& spec : test_families()) {
    const Dag g = build_family(spec);
    const auto moves = black_strategy(g, spec);
    for (int d = 1; d <= 2; ++d) {
      const Cnf f = pebbling_contradiction(g, d);
      const ResolutionTrace t = compile_pebbling(g, d, moves);
      try {
        check_refutation(f, t);
        ++proofs;
      } catch (const ProofError& e) {
        failures << " " << label(spec) << " d=" << d << ": " << e.what();
        continue;
      }
      for (int k = 0; k < kMutationsPerProof; ++k) {
        ++mutants;
        try {
          check_refutation(f, mutate(t, f.num_vars, rng));
        } catch (const ProofError&) {
          ++rejected;
        }
      }
    }
  }
  const int expected_proofs = 2 * static_cast<int>(test_families().size());
  Verdict v;
  v.pass = proofs == expected_proofs && rejected == mutants;
  v.detail = std::to_string(proofs) + "/" + std::to_string(expected_proofs) + " proofs accepted, " +
             std::to_string(rejected) + "/" + std::to_string(mutants) + " mutants rejected" +
             failures.str();
  return v;
}

Verdict formula_counts() {
  Verdict v;
  int instances = 0;
  auto specs = test_families();
  specs.push_back(FamilySpec::pyramid(4));
  specs.push_back(FamilySpec::carlson_savage(2, 2));
  for (const auto& spec : specs) {
    const Dag g = build_family(spec);
    for (int d = 1; d <= 3; ++d) {
      long long want = static_cast<long long>(g.sources().size()) +
                       d * static_cast<long long>(g.targets().size());
      for (Vertex x = 0; x < g.size(); ++x) {
        if (g.is_source(x)) continue;
        long long p = 1;
        for (int k = 0; k < g.indegree(x); ++k) p *= d;
        want += p;
      }
      ++instances;
      if (static_cast<long long>(pebbling_contradiction(g, d).clauses.size()) != want) {
        v.pass = false;
        v.detail += " mismatch " + label(spec) + " d=" + std::to_string(d);
      }
    }
  }
  const Cnf p1 = pebbling_contradiction(build_family(FamilySpec::pyramid(1)), 2);
  if (p1.clauses.size() != 8 || p1.num_vars != 6) v.pass = false;
  v.detail = std::to_string(instances) +
             " instances; pyramid(1) d=2: " + std::to_string(p1.clauses.size()) + " clauses, " +
             std::to_string(p1.num_vars) + " vars" + v.detail;
  return v;
}

Verdict tradeoff_phenomenon() {
  const auto start = Clock::now();
  SearchLimits limits;
  limits.max_vertices_black = 48;
  limits.threads = bench_threads();
  Verdict v;
  std::ostringstream log;
  double worst = 0;
  for (int r = 1; r <= 2; ++r) {
    const Dag g = build_family(FamilySpec::carlson_savage(2, r));
    const int price = optimal_price(g, Game::black, limits);
    const int cap = r == 1 ? price + 3 : price + 2;
    const auto points = tradeoff_frontier(g, Game::black, cap, limits).points;
    log << " (2," << r << "):";
    bool decreasing = points.size() >= 2;
    for (std::size_t i = 0; i < points.size(); ++i) {
      const FrontierPoint& pt = points[i];
      if (i > 0 && !(pt.min_time < points[i - 1].min_time && pt.space > points[i - 1].space)) {
        decreasing = false;
      }
      log << " [" << pt.space << "," << pt.min_time;
      if (pt.space >= cs_min_budget(2, r)) {
        const auto moves = cs_tradeoff_strategy(g, 2, r, {pt.space});
        const PebblingTrace trace = validate_pebbling(g, moves, Game::black);
        const double ratio = static_cast<double>(trace.time) / pt.min_time;
        worst = std::max(worst, ratio);
        log << "," << trace.time;
        if (trace.space > pt.space || trace.time < pt.min_time || ratio > kStrategyFactor) {
          v.pass = false;
        }
      } else {
        v.pass = false;
        log << ",none";
      }
      log << "]";
    }
    if (!decreasing) v.pass = false;
  }
  const double secs = seconds_since(start);
  if (secs >= kTradeoffSeconds) v.pass = false;
  log << "; max ratio " << worst << " (frozen " << kStrategyFactor << ") in " << secs << "s";
  v.detail = log.str();
  return v;
}

Verdict blob_resolution_mirror() {
  std::vector<BlobSubconfig> pool;
  int total = 1;
  for (int i = 0; i < kMirrorUniverse; ++i) total *= 3;
  for (int code = 0; code < total; ++code) {
    BlobSubconfig s;
    for (int x = 0, rest = code; x < kMirrorUniverse; ++x, rest /= 3) {
      if (rest % 3 == 1) s.blob.insert(x);
      if (rest % 3 == 2) s.whites.insert(x);
    }
    if (!s.blob.empty()) pool.push_back(std::move(s));
  }
  auto clause_of = [](const BlobSubconfig& s) {
    Clause c;
    for (Vertex b : s.blob) c.push_back(b + 1);
    for (Vertex w : s.whites) c.push_back(-(w + 1));
    return oracle::as_set(c);
  };
  long long valid = 0;
  long long mismatches = 0;
  for (const auto& s1 : pool) {
    for (const auto& s2 : pool) {
      for (Vertex p = 0; p < kMirrorUniverse; ++p) {
        std::optional<std::set<int>> merged, resolved;
        try {
          merged = clause_of(merge(s1, s2, p));
        } catch (const BadMerge&) {
        }
        try {
          const auto k1 = clause_of(s1);
          const auto k2 = clause_of(s2);
          const Clause r =
              resolve(Clause(k1.begin(), k1.end()), Clause(k2.begin(), k2.end()), p + 1);
          resolved = oracle::as_set(r);
        } catch (const std::invalid_argument&) {
        }
        if (merged) ++valid;
        if (merged != resolved) ++mismatches;
      }
    }
  }
  return {mismatches == 0 && valid > 0,
          std::to_string(valid) + " valid merges, " + std::to_string(mismatches) + " mismatches"};
}

Verdict induced_configurations() {
  Verdict v;
  const Dag edge(2, {{0, 1}});
  const Dag chain3 = build_family(FamilySpec::chain(3));
  const std::vector<std::pair<std::string, std::pair<Dag, std::vector<Move>>>> cases{
      {"edge", {edge, black_strategy(edge, FamilySpec::chain(2))}},
      {"chain3", {chain3, black_strategy(chain3, FamilySpec::chain(3))}}};
  for (const auto& [name, c] : cases) {
    const auto& [g, moves] = c;
    const auto seq = induced_sequence(g, 1, compile_pebbling(g, 1, moves));
    const SequenceCheck check = check_induced_sequence(g, seq);
    bool targets = !seq.empty();
    for (Vertex t : g.targets()) targets = targets && seq.back().contains(BlobSubconfig{{t}, {}});
    v.detail += " " + name + ": " + std::to_string(seq.size()) + " steps " +
                (check.legal ? "legal" : "illegal (" + check.reason + ")") +
                (targets ? ", targets reached" : ", targets missing");
    if (!check.legal || !targets) v.pass = false;
  }
  return v;
}

Verdict measure_machinery() {
  std::mt19937 rng(99);
  std::uniform_int_distribution<int> size(1, kMeasureFuzzMaxVertices);
  int failures = 0;
  for (int trial = 0; trial < kMeasureFuzzPairs; ++trial) {
    const Dag g = oracle::random_layered_dag(rng, size(rng));
    const auto u = oracle::random_subset(rng, g.size());
    auto bigger = u;
    for (Vertex x : oracle::random_subset(rng, g.size())) bigger.insert(x);
    const VertexSet uv(u.begin(), u.end());
    const VertexSet bv(bigger.begin(), bigger.end());
    const VertexSet hu = hidden_vertices(g, uv);
    const VertexSet hb = hidden_vertices(g, bv);
    bool ok = std::includes(hb.begin(), hb.end(), hu.begin(), hu.end());
    ok = ok && hidden_vertices(g, hu) == hu;
    ok = ok && klawe_measure(g, {}).value == 0;
    ok = ok && potential(g, {}) == 0;
    // Pebbling an already hidden vertex leaves the potential alone.
    PebbleConfig cfg;
    cfg.black = uv;
    PebbleConfig padded = cfg;
    for (Vertex x : hu) padded.black.insert(x);
    ok = ok && potential(g, cfg) == potential(g, padded);
    if (!ok) ++failures;
  }
  const int bound = klawe::pyramid_lhc_bound(2);
  const LhcResult lhc = check_lhc(build_family(FamilySpec::pyramid(2)), bound);
  Verdict v;
  v.pass = failures == 0 && lhc.holds;
  v.detail = std::to_string(failures) + "/" + std::to_string(kMeasureFuzzPairs) +
             " fuzz failures; pyramid(2) LHC at bound " + std::to_string(bound) + ": " +
             (lhc.holds ? "no witness" : "witness found");
  return v;
}

Verdict determinism() {
  namespace fs = std::filesystem;
  const fs::path dir = fs::temp_directory_path() / "pebble_acceptance_determinism";
  fs::remove_all(dir);
  fs::create_directories(dir);
  const fs::path config = dir / "experiment.ini";
  std::ofstream(config) << "[experiment]\nfamily = carlson_savage\nc = 2\nr = 1\nspace_cap = 6\n";
  auto run = [&](const std::string& tag) {
    const fs::path csv = dir / (tag + ".csv");
    std::ostringstream out, err;
    const int code = run_command(
        {"tradeoff-report", "--config", config.string(), "--csv", csv.string()}, out, err);
    std::ifstream in(csv);
    std::stringstream text;
    text << in.rdbuf();
    return std::make_pair(code, text.str());
  };
  const auto a = run("first");
  const auto b = run("second");
  fs::remove_all(dir);
  const bool same = a.first == 0 && b.first == 0 && !a.second.empty() && a.second == b.second;
  return {same, std::to_string(a.second.size()) + " bytes, " + (same ? "identical" : "different")};
}

}  // namespace

int main() {
  const std::vector<std::pair<std::string, std::function<Verdict()>>> criteria{
      {"oracle correctness", oracle_correctness},
      {"game relation", game_relation},
      {"simulation soundness", simulation_soundness},
      {"formula counts", formula_counts},
      {"trade-off phenomenon", tradeoff_phenomenon},
      {"blob/resolution mirror", blob_resolution_mirror},
      {"induced configurations", induced_configurations},
      {"measure machinery", measure_machinery},
      {"determinism", determinism},
  };
  int failed = 0;
  for (std::size_t i = 0; i < criteria.size(); ++i) {
    Verdict v;
    try {
      v = criteria[i].second();
    } catch (const std::exception& e) {
      v = {false, std::string("exception: ") + e.what()};
    }
    failed += !v.pass;
    std::cout << "criterion " << i + 1 << " " << (v.pass ? "PASS" : "FAIL") << " "
              << criteria[i].first << ":" << (v.detail.empty() || v.detail[0] == ' ' ? "" : " ")
              << v.detail << std::endl;
  }
  return failed;
}
