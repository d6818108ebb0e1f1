#include "pebbling/harness.hpp"

#include <CLI11.hpp>
#include <algorithm>
#include <boost/property_tree/ini_parser.hpp>
#include <boost/property_tree/ptree.hpp>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <json.hpp>
#include <map>
#include <optional>
#include <sstream>
#include <thread>

#include "pebbling/cnf.hpp"
#include "pebbling/measures.hpp"
#include "pebbling/resolution.hpp"
#include "pebbling/simulation.hpp"
#include "pebbling/strategies.hpp"

namespace pebbling {

namespace {

// Inclusive integer range from "a" or "a..b"; empty when b < a.
std::vector<int> parse_range(const std::string& text, const std::string& name) {
  auto to_int = [&](const std::string& s) {
    std::size_t used = 0;
    int v = 0;
    try {
      v = std::stoi(s, &used);
    } catch (const std::exception&) {
      used = 0;
    }
    if (used == 0 || used != s.size()) {
      throw UsageError("bad value '" + text + "' for " + name);
    }
    return v;
  };
  const auto dots = text.find("..");
  const int lo = to_int(dots == std::string::npos ? text : text.substr(0, dots));
  const int hi = dots == std::string::npos ? lo : to_int(text.substr(dots + 2));
  std::vector<int> out;
  for (int v = lo; v <= hi; ++v) out.push_back(v);
  if (out.empty()) throw UsageError("empty range '" + text + "' for " + name);
  return out;
}

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot read " + path);
  std::ostringstream s;
  s << in.rdbuf();
  return s.str();
}

void write_output(const std::string& path, const std::string& text, std::ostream& out) {
  if (path.empty()) {
    out << text;
    return;
  }
  std::ofstream f(path, std::ios::binary);
  if (!f) throw std::runtime_error("cannot write " + path);
  f << text;
  if (!f) throw std::runtime_error("error writing " + path);
}

FamilySpec family_spec(const std::string& family, int n, int h, int c, int r) {
  FamilySpec spec;
  try {
    spec.kind = parse_family_kind(family);
  } catch (const std::invalid_argument& e) {
    throw UsageError(e.what());
  }
  spec.n = n;
  spec.h = h;
  spec.c = c;
  spec.r = r;
  if (spec.kind != FamilyKind::chain) spec.n = 0;
  if (spec.kind != FamilyKind::pyramid && spec.kind != FamilyKind::binary_tree) spec.h = 0;
  if (spec.kind != FamilyKind::carlson_savage) spec.c = spec.r = 0;
  try {
    check_family_params(spec);
  } catch (const std::invalid_argument& e) {
    throw UsageError(e.what());
  }
  return spec;
}

std::optional<int> strategy_time(const FamilySpec& family, const Dag& g, int space) {
  if (family.kind == FamilyKind::carlson_savage) {
    if (space < cs_min_budget(family.c, family.r)) return std::nullopt;
    return validate_pebbling(g, cs_tradeoff_strategy(g, family.c, family.r, {space}), Game::black)
        .time;
  }
  const PebblingTrace t = validate_pebbling(g, black_strategy(g, family), Game::black);
  if (t.space > space) return std::nullopt;
  return t.time;
}

struct GraphOptions {
  std::string family;
  int n = 0;
  int h = 0;
  int c = 0;
  int r = 0;
  std::string graph_file;

  void attach(CLI::App* app) {
    app->add_option("--family", family, "chain, pyramid, binary_tree or carlson_savage");
    app->add_option("--n", n, "chain length");
    app->add_option("--h", h, "pyramid or tree height");
    app->add_option("--c", c, "Carlson-Savage width");
    app->add_option("--r", r, "Carlson-Savage depth");
    app->add_option("--graph", graph_file, "graph file instead of a family");
  }

  FamilySpec spec() const {
    if (family.empty()) throw UsageError("--family is required");
    return family_spec(family, n, h, c, r);
  }

  Dag graph() const {
    if (!graph_file.empty()) {
      if (!family.empty()) throw UsageError("--graph and --family are mutually exclusive");
      return read_graph(read_file(graph_file));
    }
    if (family.empty()) throw UsageError("one of --family or --graph is required");
    return build_family(spec());
  }

  // (family, params) labels for CSV output.
  std::pair<std::string, std::string> labels() const {
    if (!graph_file.empty()) return {"graph", graph_file};
    const FamilySpec s = spec();
    return {s.name(), s.params()};
  }
};

struct LimitOptions {
  int max_vertices = 0;
  std::size_t max_states = 0;

  void attach(CLI::App* app) {
    app->add_option("--max-vertices", max_vertices, "raise the exhaustive search size bound");
    app->add_option("--max-states", max_states, "cap on explored configurations");
  }

  SearchLimits limits() const {
    SearchLimits l;
    if (max_vertices > 0) l.max_vertices_black = l.max_vertices_bw = max_vertices;
    if (max_states > 0) l.max_states = max_states;
    l.threads = bench_threads();
    return l;
  }
};

VertexSet parse_vertex_csv(const std::string& text, const std::string& name) {
  VertexSet out;
  std::stringstream ss(text);
  std::string tok;
  while (std::getline(ss, tok, ',')) {
    if (tok.empty()) continue;
    for (int v : parse_range(tok, name)) out.insert(v);
  }
  return out;
}

std::string render_csv_and_plot(const ExperimentSpec& spec, TradeoffReport& report) {
  std::ostringstream csv;
  std::ostringstream plot;
  csv << "family,params,space,min_time,strategy_time\n";
  plot << "instance,series,space,time\n";
  for (const FamilySpec& family : spec.instances) {
    const std::string instance = family.name() + " " + family.params();
    try {
      const Dag g = build_family(family);
      const int price = optimal_price(g, spec.game, spec.limits);
      const int cap = spec.space_cap > 0 ? spec.space_cap : price + 2;
      const ParetoFrontier frontier =
          pareto_filter(min_time_series(g, spec.game, price, cap, spec.limits));
      std::ostringstream strategy_rows;
      for (const FrontierPoint& pt : frontier.points) {
        const std::optional<int> st = strategy_time(family, g, pt.space);
        csv << family.name() << ',' << family.params() << ',' << pt.space << ',' << pt.min_time
            << ',' << (st ? std::to_string(*st) : "NA") << '\n';
        plot << instance << ",frontier," << pt.space << ',' << pt.min_time << '\n';
        if (st) strategy_rows << instance << ",strategy," << pt.space << ',' << *st << '\n';
      }
      plot << strategy_rows.str();
    } catch (const SizeBoundExceeded& e) {
      report.skipped.push_back(instance + ": " + e.what());
    }
  }
  report.plot = plot.str();
  return csv.str();
}

}  // namespace

int bench_threads() {
  int threads = static_cast<int>(std::max(1u, std::thread::hardware_concurrency()));
  if (const char* env = std::getenv("PEBBLE_BENCH_THREADS")) {
    try {
      const int cap = std::stoi(env);
      if (cap >= 1) threads = std::min(threads, cap);
    } catch (const std::exception&) {
      // Unparseable values leave the default in place.
    }
  }
  return threads;
}

std::vector<FamilySpec> expand_instances(FamilyKind kind, const std::string& n,
                                         const std::string& h, const std::string& c,
                                         const std::string& r) {
  auto need = [](const std::string& v, const char* name) {
    if (v.empty()) throw UsageError(std::string("missing --") + name);
    return parse_range(v, name);
  };
  std::vector<FamilySpec> out;
  switch (kind) {
    case FamilyKind::chain:
      for (int x : need(n, "n")) out.push_back(FamilySpec::chain(x));
      break;
    case FamilyKind::pyramid:
      for (int x : need(h, "h")) out.push_back(FamilySpec::pyramid(x));
      break;
    case FamilyKind::binary_tree:
      for (int x : need(h, "h")) out.push_back(FamilySpec::binary_tree(x));
      break;
    case FamilyKind::carlson_savage:
      for (int cc : need(c, "c")) {
        for (int rr : need(r, "r")) out.push_back(FamilySpec::carlson_savage(cc, rr));
      }
      break;
  }
  for (const auto& s : out) {
    try {
      check_family_params(s);
    } catch (const std::invalid_argument& e) {
      throw UsageError(e.what());
    }
  }
  return out;
}

ExperimentSpec read_experiment_config(std::string_view text) {
  namespace pt = boost::property_tree;
  pt::ptree tree;
  std::istringstream in{std::string(text)};
  try {
    pt::read_ini(in, tree);
  } catch (const pt::ini_parser_error& e) {
    throw UsageError("config line " + std::to_string(e.line()) + ": " + e.message());
  }
  auto get = [&](const std::string& key) { return tree.get<std::string>(key, ""); };
  ExperimentSpec spec;
  const std::string family = get("experiment.family");
  if (family.empty()) throw UsageError("config lacks experiment.family");
  FamilyKind kind;
  try {
    kind = parse_family_kind(family);
  } catch (const std::invalid_argument& e) {
    throw UsageError(e.what());
  }
  spec.instances = expand_instances(kind, get("experiment.n"), get("experiment.h"),
                                    get("experiment.c"), get("experiment.r"));
  if (const std::string game = get("experiment.game"); !game.empty()) {
    try {
      spec.game = parse_game(game);
    } catch (const std::exception& e) {
      throw UsageError(e.what());
    }
  }
  try {
    spec.space_cap = tree.get<int>("experiment.space_cap", 0);
    if (const int mv = tree.get<int>("experiment.max_vertices", 0); mv > 0) {
      spec.limits.max_vertices_black = spec.limits.max_vertices_bw = mv;
    }
    if (const auto ms = tree.get<std::size_t>("experiment.max_states", 0); ms > 0) {
      spec.limits.max_states = ms;
    }
  } catch (const pt::ptree_bad_data& e) {
    throw UsageError(std::string("bad config value: ") + e.what());
  }
  spec.csv_path = get("output.csv");
  spec.plot_path = get("output.plot");
  spec.limits.threads = bench_threads();
  return spec;
}

TradeoffReport tradeoff_report(const ExperimentSpec& spec) {
  if (spec.instances.empty()) throw UsageError("empty family range");
  TradeoffReport report;
  report.csv = render_csv_and_plot(spec, report);
  return report;
}

int run_command(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Pebble games, pebbling formulas and resolution traces", "pebble"};
  app.require_subcommand(1);
  // "-h" is left free for the --h height option.
  app.set_help_flag("--help", "Print this help message and exit");

  GraphOptions graph_opts;
  LimitOptions limit_opts;
  std::string out_path;
  std::string game_name = "black";
  int degree = 1;

  auto* gen_graph = app.add_subcommand("gen-graph", "write a family graph");
  graph_opts.attach(gen_graph);
  gen_graph->add_option("--out", out_path, "output file");

  bool starred = false;
  auto* gen_cnf = app.add_subcommand("gen-cnf", "write the pebbling formula as DIMACS");
  graph_opts.attach(gen_cnf);
  gen_cnf->add_option("--d", degree, "variables per vertex")->check(CLI::PositiveNumber);
  gen_cnf->add_flag("--starred", starred, "leave out the target clauses");
  gen_cnf->add_option("--out", out_path, "output file");

  auto* price = app.add_subcommand("price", "optimal pebbling price by exhaustive search");
  graph_opts.attach(price);
  limit_opts.attach(price);
  price->add_option("--game", game_name, "black or bw");

  int space_cap = 0;
  auto* frontier = app.add_subcommand("frontier", "Pareto frontier of space against time");
  graph_opts.attach(frontier);
  limit_opts.attach(frontier);
  frontier->add_option("--game", game_name, "black or bw");
  frontier->add_option("--space-cap", space_cap, "largest budget (default price + 2)");
  frontier->add_option("--out", out_path, "output CSV");

  int budget = 0;
  auto* strategy = app.add_subcommand("strategy", "emit a constructive black pebbling");
  graph_opts.attach(strategy);
  strategy->add_option("--budget", budget, "space budget (carlson_savage only)");
  strategy->add_option("--out", out_path, "output move file");

  std::string moves_file;
  std::string blob_file;
  auto* compile = app.add_subcommand("compile", "turn a pebbling into a resolution refutation");
  graph_opts.attach(compile);
  compile->add_option("--d", degree, "variables per vertex")->check(CLI::PositiveNumber);
  compile->add_option("--moves", moves_file, "black pebbling move file");
  compile->add_option("--blob", blob_file, "blob pebbling move file");
  compile->add_option("--out", out_path, "output proof file");

  std::string cnf_file;
  std::string proof_file;
  auto* check = app.add_subcommand("check", "verify a resolution refutation");
  check->add_option("--cnf", cnf_file, "DIMACS formula")->required();
  check->add_option("--proof", proof_file, "resolution trace")->required();

  std::string black_list;
  std::string white_list;
  int lhc_bound = -1;
  auto* measure = app.add_subcommand("measure", "hiding sets, measure and potential");
  graph_opts.attach(measure);
  measure->add_option("--black", black_list, "black vertices, e.g. 0,3..5");
  measure->add_option("--white", white_list, "white vertices");
  measure->add_option("--lhc", lhc_bound, "also check the hiding-cardinality property");
  measure->add_option("--out", out_path, "output JSON");

  std::string config_file;
  std::string range_n;
  std::string range_h;
  std::string range_c;
  std::string range_r;
  std::string family_name;
  std::string csv_path;
  std::string plot_path;
  auto* report = app.add_subcommand("tradeoff-report", "frontier and strategy times per instance");
  report->add_option("--config", config_file, "key=value experiment file");
  report->add_option("--family", family_name, "family name");
  report->add_option("--n", range_n, "chain lengths, e.g. 2..6");
  report->add_option("--h", range_h, "heights");
  report->add_option("--c", range_c, "Carlson-Savage widths");
  report->add_option("--r", range_r, "Carlson-Savage depths");
  report->add_option("--game", game_name, "black or bw");
  report->add_option("--space-cap", space_cap, "largest budget (default price + 2)");
  report->add_option("--csv", csv_path, "output CSV");
  report->add_option("--plot", plot_path, "output plot data");
  limit_opts.attach(report);

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? 0 : 2;
  }

  CLI::App* active = app.get_subcommands().front();
  try {
    auto game = [&] {
      try {
        return parse_game(game_name);
      } catch (const std::exception& e) {
        throw UsageError(e.what());
      }
    };

    if (active == gen_graph) {
      write_output(out_path, write_graph(graph_opts.graph()), out);
    } else if (active == gen_cnf) {
      write_output(out_path,
                   write_dimacs(pebbling_contradiction(graph_opts.graph(), degree, starred)), out);
    } else if (active == price) {
      out << optimal_price(graph_opts.graph(), game(), limit_opts.limits()) << '\n';
    } else if (active == frontier) {
      const Dag g = graph_opts.graph();
      const Game gm = game();
      const SearchLimits limits = limit_opts.limits();
      const int p = optimal_price(g, gm, limits);
      const int cap = space_cap > 0 ? space_cap : p + 2;
      const auto [family, params] = graph_opts.labels();
      write_output(
          out_path,
          frontier_csv(family, params, gm, pareto_filter(min_time_series(g, gm, p, cap, limits))),
          out);
    } else if (active == strategy) {
      const FamilySpec spec = graph_opts.spec();
      const Dag g = build_family(spec);
      std::vector<Move> moves;
      if (budget > 0) {
        if (spec.kind != FamilyKind::carlson_savage) {
          throw UsageError("--budget applies to carlson_savage only");
        }
        moves = cs_tradeoff_strategy(g, spec.c, spec.r, {budget});
      } else {
        moves = black_strategy(g, spec);
      }
      write_output(out_path, format_moves(moves), out);
    } else if (active == compile) {
      if (moves_file.empty() == blob_file.empty()) {
        throw UsageError("exactly one of --moves or --blob is required");
      }
      const Dag g = graph_opts.graph();
      const ResolutionTrace trace =
          moves_file.empty()
              ? compile_blob_pebbling(g, degree, parse_blob_moves(read_file(blob_file)))
              : compile_pebbling(g, degree, parse_moves(read_file(moves_file)));
      write_output(out_path, write_trace(trace), out);
    } else if (active == check) {
      const Cnf f = read_dimacs(read_file(cnf_file));
      const RefutationMetrics m = check_refutation(f, read_trace(read_file(proof_file)));
      out << "length=" << m.length << " width=" << m.width << " clause_space=" << m.clause_space
          << '\n';
    } else if (active == measure) {
      const Dag g = graph_opts.graph();
      PebbleConfig cfg{parse_vertex_csv(black_list, "--black"),
                       parse_vertex_csv(white_list, "--white")};
      for (Vertex v : cfg.black) {
        if (cfg.white.count(v))
          throw UsageError("vertex " + std::to_string(v) + " is both black and white");
      }
      auto j = nlohmann::ordered_json::parse(to_json(measure_report(g, cfg)));
      if (lhc_bound >= 0) {
        const LhcResult lhc = check_lhc(g, lhc_bound);
        j["lhc"] = {
            {"bound", lhc_bound},
            {"holds", lhc.holds},
            {"witness_set", std::vector<Vertex>(lhc.witness_set.begin(), lhc.witness_set.end())},
            {"witness_vertex", lhc.witness_vertex}};
      }
      write_output(out_path, j.dump() + "\n", out);
    } else if (active == report) {
      ExperimentSpec spec;
      if (!config_file.empty()) {
        spec = read_experiment_config(read_file(config_file));
      } else {
        if (family_name.empty()) throw UsageError("--family or --config is required");
        FamilyKind kind;
        try {
          kind = parse_family_kind(family_name);
        } catch (const std::invalid_argument& e) {
          throw UsageError(e.what());
        }
        spec.instances = expand_instances(kind, range_n, range_h, range_c, range_r);
        spec.game = game();
        spec.limits = limit_opts.limits();
      }
      if (space_cap > 0) spec.space_cap = space_cap;
      if (!csv_path.empty()) spec.csv_path = csv_path;
      if (!plot_path.empty()) spec.plot_path = plot_path;
      const TradeoffReport r = tradeoff_report(spec);
      for (const auto& s : r.skipped) err << "skipped " << s << '\n';
      write_output(spec.csv_path, r.csv, out);
      if (!spec.plot_path.empty()) write_output(spec.plot_path, r.plot, out);
    }
  } catch (const UsageError& e) {
    err << "error: " << e.what() << "\n\n" << active->help();
    return 2;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return 1;
  }
  return 0;
}

}  // namespace pebbling
