#include "pebbling/simulation.hpp"

#include <algorithm>
#include <bit>
#include <json.hpp>
#include <map>
#include <set>
#include <stdexcept>

#include "pebbling/price_search.hpp"

namespace pebbling {

namespace {

// Appends events while tracking clause contents by id.
class TraceBuilder {
 public:
  int axiom(Clause c) {
    trace_.events.push_back(TraceEvent::axiom(c));
    clauses_.emplace(next_id_, std::move(c));
    return next_id_++;
  }
  int infer(int left, int right, int pivot) {
    Clause c = resolve(clauses_.at(left), clauses_.at(right), pivot);
    trace_.events.push_back(TraceEvent::infer(left, right, pivot, c));
    clauses_.emplace(next_id_, std::move(c));
    return next_id_++;
  }
  void erase(int id) {
    trace_.events.push_back(TraceEvent::erase(id));
    clauses_.erase(id);
  }
  const Clause& clause(int id) const { return clauses_.at(id); }
  ResolutionTrace take() { return std::move(trace_); }

 private:
  ResolutionTrace trace_;
  std::map<int, Clause> clauses_;
  int next_id_ = 1;
};

bool contains(const Clause& c, Literal l) { return std::find(c.begin(), c.end(), l) != c.end(); }

// Resolves All+(t), held as `id`, against the d target axioms down to the
// empty clause.
void refute_target(TraceBuilder& tb, int id, Vertex t, int degree) {
  int running = id;
  for (int i = 1; i <= degree; ++i) {
    const int var = degree * t + i;
    const int ax = tb.axiom({-var});
    const int next = tb.infer(running, ax, var);
    if (running != id) tb.erase(running);
    if (i < degree) tb.erase(ax);
    running = next;
  }
}

class BlackCompiler {
 public:
  BlackCompiler(const Dag& g, int degree) : g_(g), d_(degree) {}

  ResolutionTrace run(const std::vector<Move>& moves) {
    const std::set<Vertex> targets(g_.targets().begin(), g_.targets().end());
    for (const Move& m : moves) {
      if (m.kind == MoveKind::remove_black) {
        tb_.erase(held_.at(m.v));
        held_.erase(m.v);
        continue;
      }
      std::vector<int> prefix;
      const int id = g_.is_source(m.v) ? tb_.axiom(all_positive({m.v}, d_)) : derive(m.v, prefix);
      held_[m.v] = id;
      if (targets.count(m.v)) {
        refute_target(tb_, id, m.v, d_);
        return tb_.take();
      }
    }
    throw std::logic_error("validated black pebbling never reached a target");
  }

 private:
  // Derives (not x_{u1,j1} or ... or not x_{um,jm}) or All+(v) for the
  // predecessor prefix u1..um of v; at full length this is an axiom.
  int derive(Vertex v, std::vector<int>& prefix) {
    const auto preds = g_.preds(v);
    const std::size_t m = prefix.size();
    if (m == preds.size()) {
      Clause c;
      for (std::size_t k = 0; k < m; ++k) c.push_back(-(d_ * preds[k] + prefix[k]));
      const Clause head = all_positive({v}, d_);
      c.insert(c.end(), head.begin(), head.end());
      return tb_.axiom(std::move(c));
    }
    const Vertex u = preds[m];
    const int base = held_.at(u);
    int running = base;
    for (int j = 1; j <= d_; ++j) {
      prefix.push_back(j);
      const int sub = derive(v, prefix);
      prefix.pop_back();
      const int next = tb_.infer(running, sub, d_ * u + j);
      tb_.erase(sub);
      if (running != base) tb_.erase(running);
      running = next;
    }
    return running;
  }

  const Dag& g_;
  int d_;
  TraceBuilder tb_;
  std::map<Vertex, int> held_;
};

// A choice assigns each white (in ascending vertex order) a copy in [1, d].
using Choice = std::vector<int>;

std::vector<Choice> all_choices(std::size_t size, int degree) {
  std::vector<Choice> out;
  Choice c(size, 1);
  while (true) {
    out.push_back(c);
    std::size_t k = size;
    while (k > 0 && c[k - 1] == degree) c[--k] = 1;
    if (k == 0) break;
    ++c[k - 1];
  }
  return out;
}

// Restriction of a choice on `from` to the vertices of `to` (to must be a
// subset of from). `extra` supplies the copy of one vertex missing in from.
Choice restrict_choice(const std::vector<Vertex>& from, const Choice& choice,
                       const std::vector<Vertex>& to, Vertex extra_v = -1, int extra_copy = 0) {
  Choice out;
  out.reserve(to.size());
  for (Vertex w : to) {
    if (w == extra_v) {
      out.push_back(extra_copy);
      continue;
    }
    const auto it = std::lower_bound(from.begin(), from.end(), w);
    out.push_back(choice[it - from.begin()]);
  }
  return out;
}

struct Materialized {
  BlobSubconfig sub;
  std::vector<Vertex> whites;     // ascending
  std::map<Choice, int> clauses;  // choice -> clause id
};

class BlobCompiler {
 public:
  BlobCompiler(const Dag& g, int degree) : g_(g), d_(degree) {}

  ResolutionTrace run(const std::vector<BlobMove>& moves) {
    for (const BlobMove& m : moves) {
      switch (m.kind) {
        case BlobMove::Kind::introduce:
          add(introduce_clauses(m.v));
          break;
        case BlobMove::Kind::merge:
          add(merge_clauses(live_.at(m.first), live_.at(m.second), m.pivot));
          break;
        case BlobMove::Kind::inflate:
          add(inflate_clauses(live_.at(m.first), m.target));
          break;
        case BlobMove::Kind::erase:
          drop(m.first);
          break;
      }
    }
    const Vertex t = g_.targets().front();
    const BlobSubconfig goal{{t}, {}};
    for (const auto& [id, mat] : live_) {
      if (mat.sub == goal) {
        refute_target(tb_, mat.clauses.begin()->second, t, d_);
        return tb_.take();
      }
    }
    throw std::logic_error("validated blob pebbling lacks the target subconfiguration");
  }

 private:
  Materialized start(BlobSubconfig sub) {
    Materialized out;
    out.whites.assign(sub.whites.begin(), sub.whites.end());
    out.sub = std::move(sub);
    return out;
  }

  Materialized introduce_clauses(Vertex v) {
    Materialized out = start(introduce(g_, v));
    const Clause head = all_positive({v}, d_);
    for (const Choice& ch : all_choices(out.whites.size(), d_)) {
      Clause c;
      for (std::size_t k = 0; k < ch.size(); ++k) c.push_back(-(d_ * out.whites[k] + ch[k]));
      c.insert(c.end(), head.begin(), head.end());
      out.clauses.emplace(ch, tb_.axiom(std::move(c)));
    }
    return out;
  }

  Materialized merge_clauses(const Materialized& pos, const Materialized& neg, Vertex p) {
    Materialized out = start(merge(pos.sub, neg.sub, p));
    std::map<std::vector<int>, int> done;  // premise ids -> result id
    for (const Choice& ch : all_choices(out.whites.size(), d_)) {
      const int pos_id = pos.clauses.at(restrict_choice(out.whites, ch, pos.whites));
      if (!contains(tb_.clause(pos_id), d_ * p + 1)) {
        out.clauses.emplace(ch, pos_id);
        continue;
      }
      std::vector<int> premises{pos_id};
      std::optional<int> subsuming;
      for (int j = 1; j <= d_; ++j) {
        const int neg_id = neg.clauses.at(restrict_choice(out.whites, ch, neg.whites, p, j));
        premises.push_back(neg_id);
        if (!subsuming && !contains(tb_.clause(neg_id), -(d_ * p + j))) subsuming = neg_id;
      }
      if (subsuming) {
        out.clauses.emplace(ch, *subsuming);
        continue;
      }
      if (auto it = done.find(premises); it != done.end()) {
        out.clauses.emplace(ch, it->second);
        continue;
      }
      int running = pos_id;
      for (int j = 1; j <= d_; ++j) {
        const int next = tb_.infer(running, premises[j], d_ * p + j);
        if (running != pos_id) tb_.erase(running);
        running = next;
      }
      done.emplace(premises, running);
      out.clauses.emplace(ch, running);
    }
    return out;
  }

  Materialized inflate_clauses(const Materialized& from, const BlobSubconfig& target) {
    Materialized out = start(target);
    for (const Choice& ch : all_choices(out.whites.size(), d_)) {
      out.clauses.emplace(ch, from.clauses.at(restrict_choice(out.whites, ch, from.whites)));
    }
    return out;
  }

  void add(Materialized m) {
    for (int id : distinct_ids(m)) ++refs_[id];
    live_.emplace(next_sub_++, std::move(m));
  }

  void drop(int sub_id) {
    for (int id : distinct_ids(live_.at(sub_id))) {
      if (--refs_[id] == 0) {
        refs_.erase(id);
        tb_.erase(id);
      }
    }
    live_.erase(sub_id);
  }

  static std::set<int> distinct_ids(const Materialized& m) {
    std::set<int> ids;
    for (const auto& [ch, id] : m.clauses) ids.insert(id);
    return ids;
  }

  const Dag& g_;
  int d_;
  TraceBuilder tb_;
  std::map<int, Materialized> live_;
  std::map<int, int> refs_;
  int next_sub_ = 0;
};

void check_degree(int degree) {
  if (degree < 1) throw std::invalid_argument("degree must be >= 1");
}

SimulationReport make_report(const Dag& g, int degree, int time, int cost,
                             const ResolutionTrace& trace) {
  SimulationReport r;
  r.pebbling_time = time;
  r.pebbling_cost = cost;
  r.refutation = check_refutation(pebbling_contradiction(g, degree), trace);
  r.space_ratio = cost ? static_cast<double>(r.refutation.clause_space) / cost : 0.0;
  r.length_ratio = time ? static_cast<double>(r.refutation.length) / time : 0.0;
  return r;
}

}  // namespace

ResolutionTrace compile_pebbling(const Dag& g, int degree, const std::vector<Move>& moves) {
  check_degree(degree);
  for (const Move& m : moves) {
    if (m.kind == MoveKind::place_white || m.kind == MoveKind::remove_white) {
      throw std::invalid_argument("only black pebblings can be compiled");
    }
  }
  validate_pebbling(g, moves, Game::black);
  return BlackCompiler(g, degree).run(moves);
}

ResolutionTrace compile_blob_pebbling(const Dag& g, int degree, const std::vector<BlobMove>& moves,
                                      const BlobGameOptions& options) {
  check_degree(degree);
  validate_blob_pebbling(g, moves, options);
  return BlobCompiler(g, degree).run(moves);
}

SimulationReport metrics_vs_cost(const Dag& g, int degree, const std::vector<Move>& moves) {
  const ResolutionTrace trace = compile_pebbling(g, degree, moves);
  const PebblingTrace peb = validate_pebbling(g, moves, Game::black);
  return make_report(g, degree, peb.time, peb.space, trace);
}

SimulationReport metrics_vs_cost(const Dag& g, int degree, const std::vector<BlobMove>& moves,
                                 const BlobGameOptions& options) {
  const ResolutionTrace trace = compile_blob_pebbling(g, degree, moves, options);
  const BlobPebblingReport rep = validate_blob_pebbling(g, moves, options);
  const int time = static_cast<int>(std::count_if(
      moves.begin(), moves.end(), [](const auto& m) { return m.kind != BlobMove::Kind::erase; }));
  return make_report(g, degree, time, rep.max_cost, trace);
}

ImplicationOracle::ImplicationOracle(int num_vars, const std::vector<Clause>& clauses)
    : num_vars_(num_vars) {
  if (num_vars < 0 || num_vars > max_vars) {
    throw SizeBoundExceeded("implication oracle handles at most " + std::to_string(max_vars) +
                            " variables, got " + std::to_string(num_vars));
  }
  struct Masks {
    std::uint32_t pos = 0;
    std::uint32_t neg = 0;
  };
  std::vector<Masks> masks;
  for (const Clause& c : clauses) {
    Masks m;
    for (Literal l : c) {
      const int var = std::abs(l);
      if (var < 1 || var > num_vars) {
        throw std::invalid_argument("literal " + std::to_string(l) + " out of range");
      }
      (l > 0 ? m.pos : m.neg) |= 1u << (var - 1);
    }
    masks.push_back(m);
  }
  const std::uint64_t total = std::uint64_t{1} << num_vars;
  is_model_.assign((total + 63) / 64, 0);
  for (std::uint64_t a = 0; a < total; ++a) {
    const auto x = static_cast<std::uint32_t>(a);
    const bool sat = std::all_of(masks.begin(), masks.end(), [x](const Masks& m) {
      return (x & m.pos) != 0 || (~x & m.neg) != 0;
    });
    if (sat) is_model_[a / 64] |= std::uint64_t{1} << (a % 64);
  }
}

bool ImplicationOracle::satisfiable() const {
  return std::any_of(is_model_.begin(), is_model_.end(), [](std::uint64_t w) { return w != 0; });
}

bool ImplicationOracle::implies(const Clause& c) const {
  std::uint32_t pos = 0;
  std::uint32_t neg = 0;
  for (Literal l : c) {
    const int var = std::abs(l);
    if (var < 1 || var > num_vars_) return false;
    (l > 0 ? pos : neg) |= 1u << (var - 1);
  }
  if (pos & neg) return true;
  // A model falsifying c has every positive variable false and every
  // negated variable true.
  for (std::size_t w = 0; w < is_model_.size(); ++w) {
    for (std::uint64_t bits = is_model_[w]; bits; bits &= bits - 1) {
      const auto a = static_cast<std::uint32_t>(w * 64 + std::countr_zero(bits));
      if ((a & pos) == 0 && (a & neg) == neg) return false;
    }
  }
  return true;
}

std::vector<std::uint32_t> ImplicationOracle::models() const {
  std::vector<std::uint32_t> out;
  for (std::size_t w = 0; w < is_model_.size(); ++w) {
    for (std::uint64_t bits = is_model_[w]; bits; bits &= bits - 1) {
      out.push_back(static_cast<std::uint32_t>(w * 64 + std::countr_zero(bits)));
    }
  }
  return out;
}

BlobConfig induce_configuration(const Dag& g, int degree, const std::vector<Clause>& live) {
  check_degree(degree);
  const int n = g.size();
  if (n > 12) {
    throw SizeBoundExceeded("induced configurations handle at most 12 vertices, got " +
                            std::to_string(n));
  }
  const ImplicationOracle oracle(degree * n, live);

  // Vertex v is true in a model when some copy x_{v,i} is.
  std::set<std::uint32_t> truth;
  for (std::uint32_t a : oracle.models()) {
    std::uint32_t t = 0;
    for (Vertex v = 0; v < n; ++v) {
      const std::uint32_t copies = ((1u << degree) - 1) << (degree * v);
      if (a & copies) t |= 1u << v;
    }
    truth.insert(t);
  }
  const std::vector<std::uint32_t> patterns(truth.begin(), truth.end());
  // Every clause of [B]<W> is implied iff each model making all of W true
  // makes some vertex of B true.
  auto implied = [&](std::uint32_t blob, std::uint32_t whites) {
    return std::all_of(patterns.begin(), patterns.end(),
                       [&](std::uint32_t t) { return (t & whites) != whites || (t & blob) != 0; });
  };

  BlobConfig out;
  const std::uint32_t all = (1u << n) - 1;
  for (std::uint32_t whites = 0; whites <= all; ++whites) {
    if (implied(0, whites)) continue;  // no nonempty blob can be precise
    const std::uint32_t rest = all & ~whites;
    for (std::uint32_t blob = rest; blob; blob = (blob - 1) & rest) {
      if (!implied(blob, whites)) continue;
      bool precise = true;
      for (std::uint32_t m = blob; m && precise; m &= m - 1) {
        precise = !implied(blob & ~(m & -m), whites);
      }
      for (std::uint32_t m = whites; m && precise; m &= m - 1) {
        precise = !implied(blob, whites & ~(m & -m));
      }
      if (!precise) continue;
      BlobSubconfig s;
      for (Vertex v = 0; v < n; ++v) {
        if (blob >> v & 1u) s.blob.insert(v);
        if (whites >> v & 1u) s.whites.insert(v);
      }
      out.subconfigs.insert(std::move(s));
    }
  }
  return out;
}

std::vector<BlobConfig> induced_sequence(const Dag& g, int degree, const ResolutionTrace& trace) {
  check_degree(degree);
  const std::set<Vertex> targets(g.targets().begin(), g.targets().end());
  auto is_target_axiom = [&](const Clause& c) {
    return c.size() == 1 && c[0] < 0 && targets.count((-c[0] - 1) / degree) > 0;
  };
  std::map<int, Clause> live;
  int next_id = 1;
  std::vector<BlobConfig> out;
  std::vector<Clause> last_input;
  for (const TraceEvent& e : trace.events) {
    if (e.kind == TraceEvent::Kind::erase) {
      live.erase(e.left);
    } else {
      if (e.clause.empty()) break;
      live.emplace(next_id++, e.clause);
    }
    std::vector<Clause> input;
    for (const auto& [id, c] : live) {
      if (!is_target_axiom(c)) input.push_back(normalize(c));
    }
    std::sort(input.begin(), input.end());
    if (!out.empty() && input == last_input) {
      out.push_back(out.back());
    } else {
      out.push_back(induce_configuration(g, degree, input));
    }
    last_input = std::move(input);
  }
  return out;
}

namespace {

bool weakens(const BlobSubconfig& from, const BlobSubconfig& to) {
  return std::includes(to.blob.begin(), to.blob.end(), from.blob.begin(), from.blob.end()) &&
         std::includes(to.whites.begin(), to.whites.end(), from.whites.begin(), from.whites.end());
}

// Everything reachable from `seed` by merges, up to `cap` elements.
std::set<BlobSubconfig> merge_closure(std::set<BlobSubconfig> seed, std::size_t cap, bool& capped) {
  std::vector<BlobSubconfig> frontier(seed.begin(), seed.end());
  capped = false;
  while (!frontier.empty()) {
    std::vector<BlobSubconfig> fresh;
    const std::vector<BlobSubconfig> known(seed.begin(), seed.end());
    for (const auto& a : frontier) {
      for (const auto& b : known) {
        for (const auto* pos : {&a, &b}) {
          const auto* neg = pos == &a ? &b : &a;
          for (Vertex p : pos->blob) {
            if (!neg->whites.count(p)) continue;
            try {
              BlobSubconfig m = merge(*pos, *neg, p);
              if (seed.insert(m).second) fresh.push_back(std::move(m));
            } catch (const BadMerge&) {
            }
            if (seed.size() >= cap) {
              capped = true;
              return seed;
            }
          }
        }
      }
    }
    frontier = std::move(fresh);
  }
  return seed;
}

}  // namespace

SequenceCheck check_induced_sequence(const Dag& g, const std::vector<BlobConfig>& sequence,
                                     std::size_t merge_cap) {
  SequenceCheck result;
  std::set<BlobSubconfig> intros;
  for (Vertex v = 0; v < g.size(); ++v) intros.insert(introduce(g, v));
  BlobConfig prev;
  for (std::size_t i = 0; i < sequence.size(); ++i) {
    const BlobConfig& cur = sequence[i];
    std::optional<std::set<BlobSubconfig>> closure;
    bool capped = false;
    for (const auto& s : cur.subconfigs) {
      if (prev.contains(s)) continue;
      if (!closure) {
        std::set<BlobSubconfig> seed = intros;
        seed.insert(prev.subconfigs.begin(), prev.subconfigs.end());
        closure = merge_closure(std::move(seed), merge_cap, capped);
      }
      const bool ok = std::any_of(closure->begin(), closure->end(),
                                  [&](const BlobSubconfig& x) { return weakens(x, s); });
      if (!ok) {
        result.legal = false;
        result.failed_step = i;
        result.reason = to_string(s) + " is not derivable from the previous configuration" +
                        std::string(capped ? " (merge closure capped)" : "");
        return result;
      }
    }
    prev = cur;
  }
  for (Vertex t : g.targets()) {
    if (!prev.contains(BlobSubconfig{{t}, {}})) {
      result.legal = false;
      if (!sequence.empty()) result.failed_step = sequence.size() - 1;
      result.reason = "final configuration lacks [" + std::to_string(t) + "]<>";
      return result;
    }
  }
  return result;
}

std::string induced_json(const std::vector<BlobConfig>& sequence) {
  nlohmann::ordered_json out = nlohmann::ordered_json::array();
  for (const auto& cfg : sequence) {
    nlohmann::ordered_json step = nlohmann::ordered_json::array();
    for (const auto& s : cfg.subconfigs) {
      step.push_back({{"blob", std::vector<Vertex>(s.blob.begin(), s.blob.end())},
                      {"whites", std::vector<Vertex>(s.whites.begin(), s.whites.end())}});
    }
    out.push_back(std::move(step));
  }
  return out.dump();
}

}  // namespace pebbling
