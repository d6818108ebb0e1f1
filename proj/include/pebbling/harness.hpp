#pragma once

#include <iosfwd>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "pebbling/families.hpp"
#include "pebbling/pebble_engine.hpp"
#include "pebbling/price_search.hpp"

namespace pebbling {

// Bad flags or parameters; run_command maps it to exit code 2.
class UsageError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

struct ExperimentSpec {
  std::vector<FamilySpec> instances;
  Game game = Game::black;
  int space_cap = 0;  // 0 means optimal price + 2
  std::string csv_path;
  std::string plot_path;
  SearchLimits limits;
};

// "[experiment]" keys: family, n, h, c, r (an integer or a range "a..b"),
// game, space_cap, max_vertices, max_states. "[output]" keys: csv, plot.
// Throws UsageError on unknown families, malformed or empty ranges.
ExperimentSpec read_experiment_config(std::string_view text);

// Expands per-parameter ranges into instances. Parameters the family does
// not use are ignored; a missing required one is a UsageError.
std::vector<FamilySpec> expand_instances(FamilyKind kind, const std::string& n,
                                         const std::string& h, const std::string& c,
                                         const std::string& r);

struct TradeoffReport {
  std::string csv;                   // family,params,space,min_time,strategy_time
  std::string plot;                  // instance,series,space,time
  std::vector<std::string> skipped;  // "<instance>: <reason>"
};

// Instances over the search bounds are skipped and listed, not fatal.
TradeoffReport tradeoff_report(const ExperimentSpec& spec);

// Number of worker threads: hardware concurrency capped by the
// PEBBLE_BENCH_THREADS environment variable when it is set.
int bench_threads();

// args excludes the program name. Exit codes: 0 success, 1 domain error,
// 2 usage error. Results go to `out` unless an output file is named.
int run_command(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace pebbling
