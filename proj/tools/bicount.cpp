// bicount: exact (p,q)-biclique counting from the command line.
//
// Exit codes: 0 ok, 2 bad arguments, 3 unreadable graph input, 4 resource cap hit.

#include <algorithm>
#include <chrono>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <numeric>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "bicount/cost_estimator.hpp"
#include "bicount/counting_modes.hpp"
#include "bicount/errors.hpp"
#include "bicount/graph_io.hpp"
#include "bicount/pivot_engine.hpp"

namespace {

using bicount::BigCount;
using json = nlohmann::ordered_json;
using Clock = std::chrono::steady_clock;

constexpr int kExitArgument = 2;
constexpr int kExitParse = 3;
constexpr int kExitResource = 4;

struct Common {
  std::string input;
  std::string format = "plain";
  bool plain = false;
  bool json_out = false;
};

struct CountArgs {
  int p = 0;
  int q = 0;
  std::string strategy = "estimator";
  bool strategy_given = false;
  unsigned threads = 1;
  std::string index_path;
};

double ms_since(Clock::time_point start) {
  return std::chrono::duration<double, std::milli>(Clock::now() - start).count();
}

std::size_t max_depth_from_env() {
  const char* raw = std::getenv("BICLIQUE_MAX_DEPTH");
  if (raw == nullptr || *raw == '\0') return bicount::kDefaultMaxDepth;
  char* end = nullptr;
  const unsigned long long value = std::strtoull(raw, &end, 10);
  if (*end != '\0' || value == 0 || raw[0] == '-') {
    throw bicount::ArgumentError(std::string("BICLIQUE_MAX_DEPTH must be a positive integer, got '") + raw + "'");
  }
  return static_cast<std::size_t>(value);
}

json fraction(const BigCount& num, const BigCount& den) {
  json j;
  j["numerator"] = bicount::to_decimal(num);
  j["denominator"] = bicount::to_decimal(den);
  if (den == 0) {
    j["decimal"] = nullptr;
  } else {
    // Six decimal places, computed exactly then rounded down.
    const BigCount scaled = num * 1000000 / den;
    j["decimal"] = scaled.convert_to<double>() / 1e6;
  }
  return j;
}

json graph_json(const bicount::LoadedGraph& loaded) {
  const bicount::GraphStats s = bicount::graph_stats(loaded.graph);
  json j;
  j["u_count"] = s.u_count;
  j["v_count"] = s.v_count;
  j["edge_count"] = s.edge_count;
  j["duplicates_dropped"] = loaded.duplicates_dropped;
  j["max_degree_u"] = s.max_degree_u;
  j["max_degree_v"] = s.max_degree_v;
  j["avg_degree_u"] = fraction(s.avg_degree_u_num, s.avg_degree_u_den);
  j["avg_degree_v"] = fraction(s.avg_degree_v_num, s.avg_degree_v_den);
  return j;
}

json metrics_json(const bicount::SearchMetrics& m, bool with_fraction) {
  json j;
  j["npc_calls"] = m.npc_calls;
  j["leaves_no_edge"] = m.leaves_no_edge;
  j["leaves_hold_limit"] = m.leaves_hold_limit;
  j["size_bound_prunes"] = m.size_bound_prunes;
  j["single_candidate_closures"] = m.single_candidate_closures;
  j["node_split_roots"] = m.node_split_roots;
  j["edge_split_roots"] = m.edge_split_roots;
  if (with_fraction) {
    j["bicliques_counted_combinatorially"] = bicount::to_decimal(m.bicliques_counted_combinatorially);
    j["bicliques_counted_at_hold_limit"] = bicount::to_decimal(m.bicliques_counted_at_hold_limit);
    j["combinatorial_fraction"] = fraction(m.bicliques_counted_combinatorially, m.total());
  }
  return j;
}

json report_head(const std::string& command, const std::vector<std::string>& argv, const Common& common,
                 const bicount::LoadedGraph& loaded, double load_ms) {
  json j;
  j["command"] = command;
  j["argv"] = argv;
  j["input"] = common.input;
  j["format"] = common.format;
  j["graph"] = graph_json(loaded);
  j["load_ms"] = load_ms;
  return j;
}

bicount::LoadedGraph load(const Common& common, double& load_ms) {
  const auto start = Clock::now();
  auto loaded = bicount::load_graph_file(common.input, bicount::parse_input_format(common.format));
  load_ms = ms_since(start);
  return loaded;
}

void check_pq(int p, int q) {
  if (p < 1 || q < 1) throw bicount::ArgumentError("--p and --q must be >= 1");
}

// Resolves the strategy and, for estimator-index, loads or builds the index.
struct Plan {
  bicount::CountOptions options;
  std::optional<bicount::CostIndex> index;
  std::optional<double> index_build_ms;
};

Plan make_plan(const CountArgs& args, const bicount::BipartiteGraph& g, int x, int y) {
  Plan plan;
  if (args.threads < 1) throw bicount::ArgumentError("--threads must be >= 1");
  plan.options.threads = args.threads;
  plan.options.max_depth = max_depth_from_env();
  plan.options.strategy = bicount::parse_strategy(args.strategy);
  if (!args.index_path.empty()) {
    if (args.strategy_given && plan.options.strategy != bicount::SplitStrategy::kEstimatorIndex) {
      throw bicount::ArgumentError("--index only applies to --strategy estimator-index");
    }
    plan.options.strategy = bicount::SplitStrategy::kEstimatorIndex;
    std::ifstream in(args.index_path);
    if (!in) throw bicount::ArgumentError("cannot open index file " + args.index_path);
    std::stringstream buffer;
    buffer << in.rdbuf();
    plan.index = bicount::parse_cost_index(buffer.str());
  } else if (plan.options.strategy == bicount::SplitStrategy::kEstimatorIndex) {
    plan.index = bicount::build_cost_index(g, x, y, args.threads);
    plan.index_build_ms = plan.index->build_ms;
  }
  if (plan.index) plan.options.index = &*plan.index;
  return plan;
}

void add_plan(json& j, const CountArgs& args, const Plan& plan) {
  j["strategy"] = bicount::strategy_name(plan.options.strategy);
  j["threads"] = args.threads;
  if (!args.index_path.empty()) j["index"] = args.index_path;
  if (plan.index_build_ms) j["index_build_ms"] = *plan.index_build_ms;
}

void emit(const json& j) { std::cout << j.dump(2) << '\n'; }

int cmd_count(const std::vector<std::string>& argv, const Common& common, const CountArgs& args) {
  check_pq(args.p, args.q);
  double load_ms = 0;
  const auto loaded = load(common, load_ms);
  const Plan plan = make_plan(args, loaded.graph, std::min(args.p, args.q), std::min(args.p, args.q));
  const auto start = Clock::now();
  const auto result = bicount::top_level_count(loaded.graph, args.p, args.q, plan.options);
  const double wall_ms = ms_since(start);

  if (common.plain) {
    std::cout << bicount::to_decimal(result.count) << '\n';
    return 0;
  }
  json j = report_head("count", argv, common, loaded, load_ms);
  j["parameters"] = {{"p", args.p}, {"q", args.q}};
  add_plan(j, args, plan);
  j["count"] = bicount::to_decimal(result.count);
  j["metrics"] = metrics_json(result.metrics, true);
  j["wall_ms"] = wall_ms;
  emit(j);
  return 0;
}

// Indices of the k largest entries, ties by id.
std::vector<std::size_t> top_k(const std::vector<BigCount>& values, std::optional<std::size_t> k) {
  std::vector<std::size_t> order(values.size());
  std::iota(order.begin(), order.end(), std::size_t{0});
  if (!k) return order;
  std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) { return values[a] > values[b]; });
  order.resize(std::min(*k, order.size()));
  return order;
}

int cmd_local(const std::vector<std::string>& argv, const Common& common, const CountArgs& args,
              std::optional<std::size_t> top) {
  check_pq(args.p, args.q);
  double load_ms = 0;
  const auto loaded = load(common, load_ms);
  const Plan plan = make_plan(args, loaded.graph, std::min(args.p, args.q), std::min(args.p, args.q));
  const auto start = Clock::now();
  const auto result = bicount::local_count(loaded.graph, args.p, args.q, plan.options);
  const double wall_ms = ms_since(start);

  BigCount sum_u = 0;
  BigCount sum_v = 0;
  for (const auto& c : result.counts.u) sum_u += c;
  for (const auto& c : result.counts.v) sum_v += c;
  const bool identities_hold = sum_u == args.p * result.total && sum_v == args.q * result.total;
  const auto u_order = top_k(result.counts.u, top);
  const auto v_order = top_k(result.counts.v, top);

  if (common.plain) {
    for (std::size_t i : u_order) std::cout << "u " << loaded.u_labels[i] << ' ' << result.counts.u[i] << '\n';
    for (std::size_t i : v_order) std::cout << "v " << loaded.v_labels[i] << ' ' << result.counts.v[i] << '\n';
    std::cout << "# sum_u=" << sum_u << " p*total=" << args.p * result.total << " sum_v=" << sum_v
              << " q*total=" << args.q * result.total << (identities_hold ? " ok" : " MISMATCH") << '\n';
    return identities_hold ? 0 : 1;
  }
  json j = report_head("local", argv, common, loaded, load_ms);
  j["parameters"] = {{"p", args.p}, {"q", args.q}};
  if (top) j["parameters"]["top"] = *top;
  add_plan(j, args, plan);
  j["count"] = bicount::to_decimal(result.total);
  auto table = [](const std::vector<std::size_t>& order, const std::vector<std::uint64_t>& labels,
                  const std::vector<BigCount>& counts) {
    json rows = json::array();
    for (std::size_t i : order) rows.push_back({{"id", labels[i]}, {"count", bicount::to_decimal(counts[i])}});
    return rows;
  };
  j["local_u"] = table(u_order, loaded.u_labels, result.counts.u);
  j["local_v"] = table(v_order, loaded.v_labels, result.counts.v);
  j["self_check"] = {{"sum_u", bicount::to_decimal(sum_u)},
                     {"p_times_total", bicount::to_decimal(args.p * result.total)},
                     {"sum_v", bicount::to_decimal(sum_v)},
                     {"q_times_total", bicount::to_decimal(args.q * result.total)},
                     {"ok", identities_hold}};
  j["metrics"] = metrics_json(result.metrics, false);
  j["wall_ms"] = wall_ms;
  emit(j);
  return identities_hold ? 0 : 1;
}

int cmd_range(const std::vector<std::string>& argv, const Common& common, const CountArgs& args,
              const bicount::RangeBounds& bounds) {
  if (bounds.p_min < 1 || bounds.q_min < 1 || bounds.p_min > bounds.p_max || bounds.q_min > bounds.q_max) {
    throw bicount::ArgumentError("range bounds need 1 <= p-min <= p-max and 1 <= q-min <= q-max");
  }
  double load_ms = 0;
  const auto loaded = load(common, load_ms);
  const int xy = std::min(bounds.p_min, bounds.q_min);
  const Plan plan = make_plan(args, loaded.graph, xy, xy);
  const auto start = Clock::now();
  const auto result = bicount::range_count(loaded.graph, bounds, plan.options);
  const double wall_ms = ms_since(start);

  if (common.plain) {
    for (int p = bounds.p_min; p <= bounds.p_max; ++p) {
      for (int q = bounds.q_min; q <= bounds.q_max; ++q) {
        std::cout << (q == bounds.q_min ? "" : " ") << result.matrix.at(p, q);
      }
      std::cout << '\n';
    }
    return 0;
  }
  json j = report_head("range", argv, common, loaded, load_ms);
  j["parameters"] = {
      {"p_min", bounds.p_min}, {"p_max", bounds.p_max}, {"q_min", bounds.q_min}, {"q_max", bounds.q_max}};
  add_plan(j, args, plan);
  json rows = json::array();
  for (int p = bounds.p_min; p <= bounds.p_max; ++p) {
    json row = json::array();
    for (int q = bounds.q_min; q <= bounds.q_max; ++q) row.push_back(bicount::to_decimal(result.matrix.at(p, q)));
    rows.push_back(row);
  }
  j["matrix"] = rows;
  j["metrics"] = metrics_json(result.metrics, false);
  j["wall_ms"] = wall_ms;
  emit(j);
  return 0;
}

int cmd_index(const std::vector<std::string>& argv, const Common& common, int x, int y, const std::string& out,
              unsigned threads) {
  if (x < 1 || y < 1) throw bicount::ArgumentError("--x and --y must be >= 1");
  if (threads < 1) throw bicount::ArgumentError("--threads must be >= 1");
  double load_ms = 0;
  const auto loaded = load(common, load_ms);
  const auto index = bicount::build_cost_index(loaded.graph, x, y, threads);
  const std::string text = bicount::serialize_cost_index(index);
  if (out == "-") {
    std::cout << text;
    return 0;
  }
  std::ofstream file(out);
  if (!file || !(file << text)) throw bicount::ArgumentError("cannot write index file " + out);
  const auto edge_split = static_cast<std::size_t>(std::count(index.edge_split.begin(), index.edge_split.end(), true));
  if (common.plain) {
    std::cout << index.edge_split.size() << '\n';
    return 0;
  }
  json j = report_head("index", argv, common, loaded, load_ms);
  j["parameters"] = {{"x", x}, {"y", y}};
  j["out"] = out;
  j["entries"] = index.edge_split.size();
  j["edge_split_nodes"] = edge_split;
  j["node_split_nodes"] = index.edge_split.size() - edge_split;
  j["index_build_ms"] = index.build_ms;
  emit(j);
  return 0;
}

int cmd_stats(const std::vector<std::string>& argv, const Common& common) {
  double load_ms = 0;
  const auto loaded = load(common, load_ms);
  if (common.plain) {
    const auto s = bicount::graph_stats(loaded.graph);
    std::cout << s.u_count << ' ' << s.v_count << ' ' << s.edge_count << '\n';
    return 0;
  }
  emit(report_head("stats", argv, common, loaded, load_ms));
  return 0;
}

int cmd_reduce(const std::vector<std::string>& argv, const Common& common, int p, int q, const std::string& out) {
  check_pq(p, q);
  double load_ms = 0;
  const auto loaded = load(common, load_ms);
  const auto start = Clock::now();
  const auto reduced = bicount::pq_core_reduce(loaded.graph, p, q);
  const double wall_ms = ms_since(start);

  std::vector<std::uint64_t> u_labels(reduced.u_original.size());
  std::vector<std::uint64_t> v_labels(reduced.v_original.size());
  for (std::size_t i = 0; i < u_labels.size(); ++i) u_labels[i] = loaded.u_labels[reduced.u_original[i]];
  for (std::size_t i = 0; i < v_labels.size(); ++i) v_labels[i] = loaded.v_labels[reduced.v_original[i]];
  if (out == "-") {
    bicount::write_edge_list(std::cout, reduced.graph, u_labels, v_labels);
    return 0;
  }
  std::ofstream file(out);
  if (!file) throw bicount::ArgumentError("cannot write " + out);
  bicount::write_edge_list(file, reduced.graph, u_labels, v_labels);
  if (!file) throw bicount::ArgumentError("cannot write " + out);
  if (common.plain) {
    std::cout << reduced.graph.edge_count() << '\n';
    return 0;
  }
  json j = report_head("reduce", argv, common, loaded, load_ms);
  j["parameters"] = {{"p", p}, {"q", q}};
  j["out"] = out;
  const auto s = bicount::graph_stats(reduced.graph);
  j["reduced"] = {{"u_count", s.u_count}, {"v_count", s.v_count}, {"edge_count", s.edge_count}};
  j["wall_ms"] = wall_ms;
  emit(j);
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  std::vector<std::string> args_echo(argv, argv + argc);
  CLI::App app{"Exact (p,q)-biclique counting in bipartite graphs"};
  app.require_subcommand(1);

  Common common;
  CountArgs count_args;
  std::size_t top = 0;
  bicount::RangeBounds bounds;
  int x = 0;
  int y = 0;
  std::string out;

  auto add_common = [&](CLI::App* sub) {
    sub->add_option("--input", common.input, "Edge list path, '-' for stdin")->required();
    sub->add_option("--format", common.format, "plain or konect")->capture_default_str();
    auto* plain = sub->add_flag("--plain", common.plain, "Bare output for scripts");
    auto* js = sub->add_flag("--json", common.json_out, "JSON report (default)");
    plain->excludes(js);
  };
  auto add_strategy = [&](CLI::App* sub) {
    sub->add_option("--strategy", count_args.strategy, "node-split, edge-split, estimator or estimator-index")
        ->capture_default_str()
        ->each([&](const std::string&) { count_args.strategy_given = true; });
    sub->add_option("--threads", count_args.threads, "Worker threads")->capture_default_str();
    sub->add_option("--index", count_args.index_path, "Cost index file from the index command");
  };

  auto* count = app.add_subcommand("count", "Count (p,q)-bicliques");
  add_common(count);
  count->add_option("--p", count_args.p, "U-side size")->required();
  count->add_option("--q", count_args.q, "V-side size")->required();
  add_strategy(count);

  auto* local = app.add_subcommand("local", "Per-node (p,q)-biclique counts");
  add_common(local);
  local->add_option("--p", count_args.p, "U-side size")->required();
  local->add_option("--q", count_args.q, "V-side size")->required();
  auto* top_opt = local->add_option("--top", top, "Only the K largest per side");
  add_strategy(local);

  auto* range = app.add_subcommand("range", "Counts for every (p,q) in a rectangle");
  add_common(range);
  range->add_option("--p-min", bounds.p_min)->required();
  range->add_option("--p-max", bounds.p_max)->required();
  range->add_option("--q-min", bounds.q_min)->required();
  range->add_option("--q-max", bounds.q_max)->required();
  add_strategy(range);

  auto* index = app.add_subcommand("index", "Precompute split decisions");
  add_common(index);
  index->add_option("--x", x, "Smallest p the index is meant for")->required();
  index->add_option("--y", y, "Smallest q the index is meant for")->required();
  index->add_option("--out", out, "Output path, '-' for stdout")->required();
  index->add_option("--threads", count_args.threads)->capture_default_str();

  auto* stats = app.add_subcommand("stats", "Graph statistics");
  add_common(stats);

  auto* reduce = app.add_subcommand("reduce", "Write the (p,q)-core");
  add_common(reduce);
  reduce->add_option("--p", count_args.p)->required();
  reduce->add_option("--q", count_args.q)->required();
  reduce->add_option("--out", out, "Output path, '-' for stdout")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitArgument;
  }

  try {
    if (count->parsed()) return cmd_count(args_echo, common, count_args);
    if (local->parsed()) {
      return cmd_local(args_echo, common, count_args,
                       top_opt->count() > 0 ? std::optional<std::size_t>(top) : std::nullopt);
    }
    if (range->parsed()) return cmd_range(args_echo, common, count_args, bounds);
    if (index->parsed()) return cmd_index(args_echo, common, x, y, out, count_args.threads);
    if (stats->parsed()) return cmd_stats(args_echo, common);
    if (reduce->parsed()) return cmd_reduce(args_echo, common, count_args.p, count_args.q, out);
  } catch (const bicount::ArgumentError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitArgument;
  } catch (const bicount::ParseError& e) {
    std::cerr << "parse error: " << e.what() << '\n';
    return kExitParse;
  } catch (const bicount::ResourceError& e) {
    std::cerr << "resource limit: " << e.what() << '\n';
    return kExitResource;
  } catch (const std::bad_alloc&) {
    std::cerr << "resource limit: out of memory\n";
    return kExitResource;
  }
  return kExitArgument;
}
