#include "ta/cli.hpp"

#include <spdlog/cfg/env.h>
#include <spdlog/sinks/stdout_color_sinks.h>
#include <spdlog/spdlog.h>

#include <CLI11.hpp>
#include <chrono>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <functional>
#include <json.hpp>
#include <ostream>
#include <sstream>

#include "ta/errors.hpp"
#include "ta/report.hpp"
#include "ta/synthetic.hpp"
#include "ta/text.hpp"

namespace ta::cli {
namespace {

using Clock = std::chrono::steady_clock;
using nlohmann::ordered_json;

double seconds_since(Clock::time_point t0) { return std::chrono::duration<double>(Clock::now() - t0).count(); }

void check_range(const char* name, const std::optional<double>& v, double lo, double hi, const std::string& algo) {
  if (!v || (*v >= lo && *v <= hi)) return;
  throw UsageError("--" + std::string(name) + "=" + text::format_double(*v) + " is outside [" +
                   text::format_double(lo) + ", " + text::format_double(hi) + "] for " + algo);
}

Penalization parse_penalization(const std::string& s) {
  if (s == "forward_looking") return Penalization::forward_looking;
  if (s == "full_path") return Penalization::full_path;
  if (s == "none") return Penalization::none;
  throw UsageError("unknown penalization '" + s + "'");
}

Selection parse_selection(const std::string& s) {
  if (s == "score") return Selection::score;
  if (s == "random") return Selection::random;
  throw UsageError("unknown selection '" + s + "'");
}

Generator parse_generator(const std::string& s) {
  for (const auto g : {Generator::pp, Generator::gr, Generator::pr, Generator::kd, Generator::pla, Generator::kmd})
    if (to_string(g) == s) return g;
  throw UsageError("unknown algorithm '" + s + "'");
}

std::ofstream open_out(const std::filesystem::path& path) {
  if (path.has_parent_path()) std::filesystem::create_directories(path.parent_path());
  std::ofstream f(path);
  if (!f) throw ValidationError("cannot write " + path.string());
  return f;
}

void write_file(const std::filesystem::path& path, const std::function<void(std::ostream&)>& body) {
  auto f = open_out(path);
  body(f);
  if (!f) throw ValidationError("failed writing " + path.string());
}

std::string routes_text(const AssignmentResult& r) {
  std::ostringstream s;
  write_routes(s, r);
  return s.str();
}

ordered_json config_json(const AssignmentResult& r) {
  ordered_json j = ordered_json::object();
  for (const auto& [k, v] : r.config) j[k] = v;
  return j;
}

void ensure_logger() {
  static const bool once = [] {
    auto logger = spdlog::stderr_color_mt("metis-ta");
    spdlog::set_default_logger(logger);
    spdlog::set_level(spdlog::level::warn);
    spdlog::cfg::load_env_levels();
    return true;
  }();
  (void)once;
}

void add_algo_options(CLI::App* sub, AlgoParams& a) {
  sub->add_option("--p", a.p, "penalty factor (metis, pp)");
  sub->add_option("--s", a.s, "slowdown factor (metis)");
  sub->add_option("--k", a.k, "alternatives per trip");
  sub->add_option("--epsilon", a.epsilon, "near-shortest tolerance (metis, kmd)");
  sub->add_option("--delta", a.delta, "dissimilarity threshold (gr, pr)");
  sub->add_option("--alpha", a.alpha, "BPR alpha (ita)");
  sub->add_option("--beta", a.beta, "BPR beta (ita)");
  sub->add_option("--splits", a.splits, "demand fractions per increment (ita)")->delimiter(',');
  sub->add_option("--seed", a.seed, "random seed")->capture_default_str();
  sub->add_option("--selection", a.selection, "metis route choice")
      ->check(CLI::IsMember({"score", "random"}))
      ->capture_default_str();
  sub->add_option("--penalization", a.penalization, "metis edge penalization")
      ->check(CLI::IsMember({"forward_looking", "full_path", "none"}))
      ->capture_default_str();
  sub->add_option("--cell", a.cell, "tile size in m")->check(CLI::PositiveNumber)->capture_default_str();
}

struct Inputs {
  std::string network;
  std::string demand;
};

}  // namespace

std::vector<std::string> validate(const AlgoParams& a) {
  const auto& algo = a.algo;
  if (std::find(kAlgorithms.begin(), kAlgorithms.end(), algo) == kAlgorithms.end())
    throw UsageError("unknown algorithm '" + algo + "'");

  std::vector<std::string> used;
  if (algo == "metis") {
    used = {"p", "s", "k", "epsilon"};
    check_range("p", a.p, 0.01, 0.1, algo);
    check_range("s", a.s, 1.5, 2.25, algo);
    check_range("epsilon", a.epsilon, 0.01, 0.3, algo);
    parse_selection(a.selection);
    parse_penalization(a.penalization);
  } else if (algo == "ita") {
    used = {"alpha", "beta", "splits"};
    if (a.alpha && *a.alpha < 0.0) throw UsageError("--alpha must be >= 0");
    if (a.beta && *a.beta < 0.0) throw UsageError("--beta must be >= 0");
    if (!a.splits.empty()) {
      double sum = 0.0;
      for (const auto f : a.splits) {
        if (!(f > 0.0 && f <= 1.0)) throw UsageError("--splits entries must be in (0, 1]");
        sum += f;
      }
      if (std::abs(sum - 1.0) > 1e-6) throw UsageError("--splits must sum to 1");
    }
  } else if (algo == "pp") {
    used = {"p", "k"};
    check_range("p", a.p, 0.1, 0.5, algo);
  } else if (algo == "gr" || algo == "pr") {
    used = {"delta", "k"};
    check_range("delta", a.delta, 0.2, 0.5, algo);
  } else if (algo == "kmd") {
    used = {"epsilon", "k"};
    check_range("epsilon", a.epsilon, 0.01, 0.3, algo);
  } else if (algo == "kd" || algo == "pla") {
    used = {"k"};
  }
  if (a.k && *a.k < 1) throw UsageError("--k must be >= 1");

  const std::vector<std::pair<std::string, bool>> given = {
      {"p", a.p.has_value()},
      {"s", a.s.has_value()},
      {"k", a.k.has_value()},
      {"epsilon", a.epsilon.has_value()},
      {"delta", a.delta.has_value()},
      {"alpha", a.alpha.has_value()},
      {"beta", a.beta.has_value()},
      {"splits", !a.splits.empty()},
  };
  std::vector<std::string> ignored;
  for (const auto& [name, set] : given)
    if (set && std::find(used.begin(), used.end(), name) == used.end()) ignored.push_back(name);
  return ignored;
}

AlgoParams resolve(const AlgoParams& a) {
  validate(a);
  AlgoParams r;
  r.algo = a.algo;
  r.seed = a.seed;
  if (a.algo == "metis") {
    const MetisOptions d;
    r.p = a.p.value_or(d.p);
    r.s = a.s.value_or(d.s);
    r.k = a.k.value_or(d.k);
    r.epsilon = a.epsilon.value_or(d.kmd.epsilon);
    r.selection = a.selection;
    r.penalization = a.penalization;
    r.cell = a.cell;
  } else if (a.algo == "ita") {
    const ItaOptions d;
    r.splits = a.splits.empty() ? d.splits : a.splits;
    r.alpha = a.alpha.value_or(d.alpha);
    r.beta = a.beta.value_or(d.beta);
  } else if (a.algo != "aon") {
    const AlternativeOptions d;
    r.k = a.k.value_or(d.k);
    if (a.algo == "pp") r.p = a.p.value_or(d.p);
    if (a.algo == "gr" || a.algo == "pr") r.delta = a.delta.value_or(d.delta);
    if (a.algo == "kmd") r.epsilon = a.epsilon.value_or(d.kmd.epsilon);
  }
  return r;
}

std::string config_snapshot(const AlgoParams& params, const std::string& network, const std::string& demand) {
  const auto r = resolve(params);
  const auto quote = [](const std::string& v) { return ordered_json(v).dump(); };
  std::ostringstream s;
  s << "[assign]\n"
    << "network=" << quote(network) << '\n'
    << "demand=" << quote(demand) << '\n'
    << "algo=" << quote(r.algo) << '\n';
  const auto num = [&](const char* key, const std::optional<double>& v) {
    if (v) s << key << '=' << text::format_double(*v) << '\n';
  };
  num("p", r.p);
  num("s", r.s);
  if (r.k) s << "k=" << *r.k << '\n';
  num("epsilon", r.epsilon);
  num("delta", r.delta);
  num("alpha", r.alpha);
  num("beta", r.beta);
  if (!r.splits.empty()) {
    s << "splits=[";
    for (std::size_t i = 0; i < r.splits.size(); ++i) s << (i ? "," : "") << text::format_double(r.splits[i]);
    s << "]\n";
  }
  s << "seed=" << r.seed << '\n';
  if (r.algo == "metis")
    s << "selection=" << quote(r.selection) << '\n'
      << "penalization=" << quote(r.penalization) << '\n'
      << "cell=" << text::format_double(r.cell) << '\n';
  return s.str();
}

AssignmentResult run_algorithm(const RoadNetwork& net, const MobilityDemand& demand, const AlgoParams& params) {
  const auto a = resolve(params);
  if (a.algo == "metis") {
    MetisOptions o;
    o.p = *a.p;
    o.s = *a.s;
    o.k = *a.k;
    o.kmd.epsilon = *a.epsilon;
    o.selection = parse_selection(a.selection);
    o.penalization = parse_penalization(a.penalization);
    o.seed = a.seed;
    const TileGrid grid(net, a.cell);
    auto r = metis_assign(net, demand, grid, o);
    r.config.emplace_back("cell", text::format_double(a.cell));
    return r;
  }
  if (a.algo == "aon") return aon_assign(net, demand);
  if (a.algo == "ita") {
    ItaOptions o;
    o.splits = a.splits;
    o.alpha = *a.alpha;
    o.beta = *a.beta;
    return ita_assign(net, demand, o);
  }
  AlternativeOptions o;
  o.generator = parse_generator(a.algo);
  o.k = *a.k;
  o.p = a.p.value_or(o.p);
  o.delta = a.delta.value_or(o.delta);
  o.kmd.epsilon = a.epsilon.value_or(o.kmd.epsilon);
  o.seed = a.seed;
  return alternatives_assign(net, demand, o);
}

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  std::vector<const char*> argv;
  argv.reserve(args.size());
  for (const auto& a : args) argv.push_back(a.c_str());
  return run(static_cast<int>(argv.size()), argv.data(), out, err);
}

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  ensure_logger();

  CLI::App app{"Traffic assignment engine: METIS and one-shot baselines, demand generation and route metrics."};
  app.name("metis-ta");
  app.require_subcommand(1);
  app.fallthrough(false);
  std::function<void()> action;

  // One [section] per subcommand; flags given on the command line win.
  app.set_config("--config", "", "INI/TOML file with option values, one [section] per subcommand");
  const auto with_config = [](CLI::App* sub) { return sub->fallthrough(); };

  // gen-grid
  GridSpec grid_spec;
  std::string grid_out;
  auto* gen_grid = with_config(app.add_subcommand("gen-grid", "Write a synthetic Manhattan grid network"));
  gen_grid->add_option("--cols", grid_spec.cols)->check(CLI::PositiveNumber)->capture_default_str();
  gen_grid->add_option("--rows", grid_spec.rows)->check(CLI::PositiveNumber)->capture_default_str();
  gen_grid->add_option("--spacing", grid_spec.spacing, "block length in m")->capture_default_str();
  gen_grid->add_option("--arterial-every", grid_spec.arterial_every)->capture_default_str();
  gen_grid->add_option("--seed", grid_spec.seed)->capture_default_str();
  gen_grid->add_option("--out", grid_out, "network file")->required();
  gen_grid->callback([&] {
    action = [&] {
      const auto net = make_grid_network(grid_spec);
      write_file(grid_out, [&](std::ostream& f) { write_network(f, net); });
      out << "nodes=" << net.node_count() << " edges=" << net.edge_count() << " out=" << grid_out << '\n';
    };
  });

  // gen-od
  ClusterSpec cluster;
  std::string od_network;
  std::string od_out;
  auto* gen_od = with_config(app.add_subcommand("gen-od", "Write synthetic clustered OD records for a network"));
  gen_od->add_option("--network", od_network)->required();
  gen_od->add_option("--records", cluster.records)->capture_default_str();
  gen_od->add_option("--hotspots", cluster.hotspots)->check(CLI::PositiveNumber)->capture_default_str();
  gen_od->add_option("--hotspot-share", cluster.hotspot_share)->check(CLI::Range(0.0, 1.0))->capture_default_str();
  gen_od->add_option("--radius", cluster.radius, "m")->check(CLI::NonNegativeNumber)->capture_default_str();
  gen_od->add_option("--seed", cluster.seed)->capture_default_str();
  gen_od->add_option("--out", od_out, "OD records file")->required();
  gen_od->callback([&] {
    action = [&] {
      const auto net = load_network_file(od_network);
      const auto recs = make_clustered_od_records(net, cluster);
      write_file(od_out, [&](std::ostream& f) { write_od_records(f, recs); });
      out << "records=" << recs.size() << " seed=" << cluster.seed << " out=" << od_out << '\n';
    };
  });

  // gen-demand
  std::string gd_network;
  std::string gd_od;
  std::string gd_out;
  std::size_t gd_trips = 0;
  double gd_start = 0.0;
  double gd_end = 3600.0;
  double gd_cell = 1000.0;
  std::uint64_t gd_seed = 0;
  bool gd_allow_out = false;
  auto* gen_demand = with_config(app.add_subcommand("gen-demand", "Sample trips from OD records"));
  gen_demand->add_option("--network", gd_network)->required();
  gen_demand->add_option("--od", gd_od, "OD records file")->required();
  gen_demand->add_option("--trips", gd_trips, "number of trips")->required();
  gen_demand->add_option("--window-start", gd_start, "s")->capture_default_str();
  gen_demand->add_option("--window-end", gd_end, "s")->capture_default_str();
  gen_demand->add_option("--cell", gd_cell, "tile size in m")->check(CLI::PositiveNumber)->capture_default_str();
  gen_demand->add_option("--seed", gd_seed)->capture_default_str();
  gen_demand->add_flag("--allow-out-of-grid", gd_allow_out, "snap OD points outside the grid to border tiles");
  gen_demand->add_option("--out", gd_out, "demand file")->required();
  gen_demand->callback([&] {
    action = [&] {
      if (gd_trips == 0) throw UsageError("--trips must be >= 1");
      if (!(gd_end > gd_start)) throw UsageError("--window-end must exceed --window-start");
      const auto net = load_network_file(gd_network);
      const auto records = load_od_records_file(gd_od);
      const TileGrid grid(net, gd_cell);
      const auto tally = build_od_matrix(records, grid);
      if (tally.clamped_points > 0) {
        if (!gd_allow_out)
          throw ValidationError(std::to_string(tally.clamped_points) +
                                " OD points fall outside the tile grid (use --allow-out-of-grid to snap them)");
        spdlog::warn("{} OD points snapped to border tiles", tally.clamped_points);
      }
      const auto feas = check_feasibility(tally.matrix, net, grid);
      if (feas.infeasible_cells > 0)
        spdlog::warn("{} infeasible OD cells holding {} records", feas.infeasible_cells, feas.infeasible_records);
      SamplingOptions opts;
      opts.trips = gd_trips;
      opts.window = {gd_start, gd_end};
      opts.seed = gd_seed;
      MobilityDemand demand;
      try {
        demand = sample_demand(tally.matrix, net, grid, opts);
      } catch (const ValidationError& e) {
        throw ValidationError(std::string(e.what()) + "; " + std::to_string(feas.infeasible_cells) +
                              " infeasible OD cells holding " + std::to_string(feas.infeasible_records) + " records");
      }
      write_file(gd_out, [&](std::ostream& f) { write_demand(f, demand); });
      out << "trips=" << demand.trips.size() << " window=" << text::format_double(gd_start) << ','
          << text::format_double(gd_end) << " seed=" << gd_seed << " out=" << gd_out << '\n';
    };
  });

  // assign
  Inputs as_in;
  AlgoParams as_params;
  std::string as_out;
  auto* assign = with_config(app.add_subcommand("assign", "Assign a route to every trip"));
  assign->add_option("--network", as_in.network)->required();
  assign->add_option("--demand", as_in.demand)->required();
  assign->add_option("--algo", as_params.algo)->required()->check(CLI::IsMember(kAlgorithms));
  add_algo_options(assign, as_params);
  assign->add_option("--out", as_out, "output directory")->required();
  assign->callback([&] {
    action = [&] {
      for (const auto& name : validate(as_params)) spdlog::warn("--{} is ignored by {}", name, as_params.algo);
      const auto net = load_network_file(as_in.network);
      const auto demand = load_demand_file(as_in.demand, net);
      const auto t0 = Clock::now();
      const auto result = run_algorithm(net, demand, as_params);
      const double wall = seconds_since(t0);

      const std::filesystem::path dir(as_out);
      std::filesystem::create_directories(dir);
      write_file(dir / "routes.csv", [&](std::ostream& f) { write_routes(f, result); });
      write_file(dir / "failed.csv", [&](std::ostream& f) { write_failed(f, result); });
      write_file(dir / "run_config.ini",
                 [&](std::ostream& f) { f << config_snapshot(as_params, as_in.network, as_in.demand); });
      ordered_json t;
      t["algorithm"] = result.algorithm;
      t["trips"] = demand.trips.size();
      t["assigned"] = result.assignments.size();
      t["failed"] = result.failed.size();
      t["wall_clock_s"] = wall;
      t["stages_s"] = {{"init", result.timings.init_s},
                       {"penalize", result.timings.penalize_s},
                       {"search", result.timings.search_s},
                       {"select", result.timings.select_s},
                       {"total", result.timings.total_s}};
      t["trips_per_second"] = wall > 0.0 ? static_cast<double>(demand.trips.size()) / wall : 0.0;
      t["config"] = config_json(result);
      write_file(dir / "timings.json", [&](std::ostream& f) { f << t.dump(2) << '\n'; });
      out << result.algorithm << ": assigned=" << result.assignments.size() << " failed=" << result.failed.size()
          << " wall_s=" << text::format_double(wall) << " out=" << as_out << '\n';
    };
  });

  // metrics
  std::string me_network;
  std::string me_routes;
  std::string me_out;
  std::string me_emission;
  MetricsOptions me_opts;
  auto* metrics = with_config(app.add_subcommand("metrics", "Report coverage, redundancy and emission proxy"));
  metrics->add_option("--network", me_network)->required();
  metrics->add_option("--routes", me_routes, "routes file written by assign")->required();
  metrics->add_option("--window-t", me_opts.t, "redundancy window length in s")
      ->check(CLI::PositiveNumber)
      ->capture_default_str();
  metrics->add_option("--sigma", me_opts.sigma, "redundancy window shift in s")
      ->check(CLI::PositiveNumber)
      ->capture_default_str();
  metrics->add_option("--emission", me_emission, "emission coefficients c0,...,c5");
  metrics->add_option("--profile-step", me_opts.profile_step, "speed profile step in s")
      ->check(CLI::PositiveNumber)
      ->capture_default_str();
  metrics->add_option("--out", me_out, "directory for the report and plot data");
  metrics->callback([&] {
    action = [&] {
      if (!me_emission.empty()) me_opts.emission = parse_emission_coefficients(me_emission);
      const auto net = load_network_file(me_network);
      const auto set = read_routes_file(me_routes, net);
      const auto report = compute_metrics(set.result, net, me_opts, set.failed_trips);
      const auto json = metrics_json(report);
      out << json;
      if (me_out.empty()) return;
      const std::filesystem::path dir(me_out);
      std::filesystem::create_directories(dir);
      write_file(dir / "metrics.json", [&](std::ostream& f) { f << json; });
      write_file(dir / "edge_usage.csv", [&](std::ostream& f) { write_edge_usage(f, set.result, net); });
      write_file(dir / "redundancy_scatter.csv",
                 [&](std::ostream& f) { write_redundancy_scatter(f, set.result, net, me_opts); });
    };
  });

  // bench
  Inputs be_in;
  AlgoParams be_params;
  std::vector<std::string> be_algos;
  int be_trials = 3;
  std::string be_out;
  auto* bench = with_config(app.add_subcommand("bench", "Time algorithms over repeated trials"));
  bench->add_option("--network", be_in.network)->required();
  bench->add_option("--demand", be_in.demand)->required();
  bench->add_option("--algo", be_algos, "comma-separated algorithms")
      ->required()
      ->delimiter(',')
      ->check(CLI::IsMember(kAlgorithms));
  add_algo_options(bench, be_params);
  bench->add_option("--trials", be_trials)->check(CLI::PositiveNumber)->capture_default_str();
  bench->add_option("--out", be_out, "timing report file");
  bench->callback([&] {
    action = [&] {
      for (const auto& algo : be_algos) {
        auto p = be_params;
        p.algo = algo;
        for (const auto& name : validate(p)) spdlog::warn("--{} is ignored by {}", name, algo);
      }
      const auto net = load_network_file(be_in.network);
      const auto demand = load_demand_file(be_in.demand, net);
      const auto trips = static_cast<double>(demand.trips.size());
      ordered_json report;
      report["trips"] = demand.trips.size();
      report["trials"] = be_trials;
      report["results"] = ordered_json::array();
      for (const auto& algo : be_algos) {
        auto p = be_params;
        p.algo = algo;
        std::vector<double> times;
        std::string first;
        bool identical = true;
        ordered_json config;
        for (int i = 0; i < be_trials; ++i) {
          const auto t0 = Clock::now();
          const auto result = run_algorithm(net, demand, p);
          times.push_back(seconds_since(t0));
          const auto text = routes_text(result);
          if (i == 0) {
            first = text;
            config = config_json(result);
          } else if (text != first) {
            identical = false;
          }
          spdlog::info("{} trial {}: {:.3f} s", algo, i + 1, times.back());
        }
        double mean = 0.0;
        for (const auto t : times) mean += t;
        mean /= static_cast<double>(times.size());
        double var = 0.0;
        for (const auto t : times) var += (t - mean) * (t - mean);
        const double stddev = times.size() > 1 ? std::sqrt(var / static_cast<double>(times.size() - 1)) : 0.0;
        report["results"].push_back({{"algorithm", algo},
                                     {"wall_s", times},
                                     {"mean_s", mean},
                                     {"stddev_s", stddev},
                                     {"trips_per_second", mean > 0.0 ? trips / mean : 0.0},
                                     {"identical_outputs", identical},
                                     {"config", config}});
      }
      const auto json = report.dump(2) + "\n";
      out << json;
      if (!be_out.empty()) write_file(be_out, [&](std::ostream& f) { f << json; });
    };
  });

  // kroad
  Inputs kr_in;
  double kr_cell = 1000.0;
  std::string kr_out;
  auto* kroad = with_config(app.add_subcommand("kroad", "Estimate per-edge major driver area counts"));
  kroad->add_option("--network", kr_in.network)->required();
  kroad->add_option("--demand", kr_in.demand)->required();
  kroad->add_option("--cell", kr_cell, "tile size in m")->check(CLI::PositiveNumber)->capture_default_str();
  kroad->add_option("--out", kr_out, "usage file")->required();
  kroad->callback([&] {
    action = [&] {
      const auto net = load_network_file(kr_in.network);
      const auto demand = load_demand_file(kr_in.demand, net);
      const auto usage = estimate_kroad(net, demand, TileGrid(net, kr_cell));
      write_file(kr_out, [&](std::ostream& f) { write_usage(f, usage); });
      out << "edges=" << net.edge_count() << " skipped_trips=" << usage.skipped_trips << " out=" << kr_out << '\n';
    };
  });

  // correlate
  std::string co_scatter;
  std::string co_x = "red";
  std::string co_y = "emission_proxy";
  auto* correlate = with_config(app.add_subcommand("correlate", "Pearson correlation of two scatter columns"));
  correlate->add_option("--scatter", co_scatter, "CSV with a header row")->required();
  correlate->add_option("--x", co_x)->capture_default_str();
  correlate->add_option("--y", co_y)->capture_default_str();
  correlate->callback([&] {
    action = [&] {
      std::ifstream in(co_scatter);
      if (!in) throw ValidationError("cannot open " + co_scatter);
      const auto pts = read_scatter(in, co_x, co_y);
      const auto c = correlation_report(pts);
      ordered_json j;
      j["x"] = co_x;
      j["y"] = co_y;
      j["n"] = c.n;
      j["r"] = c.r;
      j["slope"] = c.slope;
      j["intercept"] = c.intercept;
      out << j.dump(2) << '\n';
    };
  });

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e, out, err) == 0 ? kExitOk : kExitUsage;
  }

  try {
    if (action) action();
    return kExitOk;
  } catch (const UsageError& e) {
    err << "usage error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return kExitData;
  }
}

}  // namespace ta::cli
