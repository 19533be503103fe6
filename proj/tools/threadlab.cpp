// threadlab: generate, solve, verify and render turn-cost threading instances.
//
// Exit codes: 0 success, 1 error (or invalid threading for verify), 2 when
// perfect-deg3 proves that no perfect threading exists.

#include <atomic>
#include <chrono>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

#include <CLI11.hpp>
#include <spdlog/sinks/stdout_color_sinks.h>
#include <spdlog/spdlog.h>

#include "threadlab/threadlab.hpp"

namespace fs = std::filesystem;
using namespace threadlab;

namespace {

constexpr int kExitError = 1;
constexpr int kExitNoPerfect = 2;

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error("cannot open " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void write_text(const std::string& path, const std::string& text) {
  if (path.empty() || path == "-") {
    std::cout << text;
    return;
  }
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error("cannot write " + path);
  out << text;
}

std::string dump(const json& doc) { return doc.dump(2) + "\n"; }

// foo.json -> foo.meta.json; anything else gets ".meta.json" appended.
std::string meta_path(const std::string& path) {
  const std::string ext = ".json";
  if (path.size() > ext.size() && path.compare(path.size() - ext.size(), ext.size(), ext) == 0)
    return path.substr(0, path.size() - ext.size()) + ".meta.json";
  return path + ".meta.json";
}

std::optional<json> load_meta(const std::string& instance_path, const std::string& explicit_meta) {
  const std::string path = explicit_meta.empty() ? meta_path(instance_path) : explicit_meta;
  if (!fs::exists(path)) {
    if (!explicit_meta.empty()) throw Error("cannot open " + explicit_meta);
    return std::nullopt;
  }
  return json::parse(read_file(path));
}

json labels_json(const Instance& inst, const GadgetLabels& labels) {
  json out = json::object();
  for (const auto& [name, e] : labels) out[name] = inst.edge_id(e);
  return out;
}

void setup_logging() {
  auto logger = spdlog::stderr_color_mt("threadlab");
  spdlog::set_default_logger(logger);
  spdlog::set_pattern("[%l] %v");
  spdlog::set_level(spdlog::level::warn);
  if (const char* env = std::getenv("THREADLAB_LOG")) spdlog::set_level(spdlog::level::from_str(env));
}

// ---------------------------------------------------------------------------
// gen

struct GenArgs {
  std::string output;
  int width = 0;
  int height = 0;
  std::string source;
  int leaves = 2;
  RandomInstanceOptions random;
};

void emit_generated(const GenArgs& a, const Instance& inst, json meta) {
  write_text(a.output, dump(to_json(inst)));
  if (!a.output.empty() && a.output != "-") write_text(meta_path(a.output), dump(meta));
  spdlog::info("generated {} vertices, {} edges", inst.vertex_count(), inst.edge_count());
}

int gen_grid(const GenArgs& a) {
  const Instance g = make_grid(a.width, a.height);
  emit_generated(a, g, {{"kind", "grid"}, {"width", a.width}, {"height", a.height}});
  return 0;
}

int gen_hc(const GenArgs& a) {
  const HcGraph g = parse_hc_graph(read_file(a.source));
  const HcReduction red = hc_to_threading(g);
  emit_generated(a, red.instance,
                 {{"kind", "hc"}, {"budget", red.budget}, {"graph_vertices", g.vertices},
                  {"labels", labels_json(red.instance, red.labels)}});
  return 0;
}

int gen_sat(const GenArgs& a) {
  const Formula1in3 f = parse_formula(read_file(a.source));
  const SatReduction red = sat_to_instance(f);
  emit_generated(a, red.instance,
                 {{"kind", "sat"}, {"variables", f.variables}, {"clauses", f.clauses},
                  {"labels", labels_json(red.instance, red.labels)}});
  return 0;
}

int gen_lowerbound(const GenArgs& a) {
  const LowerBoundFamily fam = gen_lower_bound_family(a.leaves);
  emit_generated(a, fam.instance,
                 {{"kind", "lowerbound"}, {"leaves", a.leaves}, {"labels", labels_json(fam.instance, fam.labels)}});
  return 0;
}

int gen_random(const GenArgs& a) {
  const Instance inst = random_instance(a.random);
  const auto& r = a.random;
  emit_generated(a, inst,
                 {{"kind", "random"}, {"seed", r.seed}, {"vertices", r.vertices}, {"extra_edges", r.extra_edges},
                  {"max_degree", r.max_degree}, {"cost_min", r.cost_min}, {"cost_max", r.cost_max}});
  return 0;
}

// ---------------------------------------------------------------------------
// solve

struct SolveArgs {
  std::vector<std::string> instances;
  std::string strategy = "double-deg3";
  std::string output;
  std::string meta;
  std::string junction_mode = "exact";
  int exact_degree_cap = 16;
  int multiplicity_cap = 2;
  int jobs = 1;
  bool dump_matching = false;
};

struct SolveOutcome {
  int code = 0;
  std::string summary;
  std::string threading_json;
  std::string error;
};

JunctionMode parse_junction_mode(const std::string& s) {
  if (s == "exact") return JunctionMode::Exact;
  if (s == "christofides") return JunctionMode::Christofides;
  if (s == "heuristic") return JunctionMode::Heuristic;
  throw Error("unknown junction mode '" + s + "'");
}

std::pair<int, int> grid_shape(const json& meta) {
  if (meta.value("kind", "") != "grid") throw PreconditionError("instance metadata does not describe a grid");
  return {meta.at("width").get<int>(), meta.at("height").get<int>()};
}

SolveOutcome solve_one(const SolveArgs& a, const std::string& path) {
  SolveOutcome out;
  try {
    const Instance inst = load_instance(read_file(path));
    const auto start = std::chrono::steady_clock::now();
    std::optional<SolveResult> r;
    if (a.strategy == "perfect-deg3") {
      r = solve_perfect_deg3(inst);
    } else if (a.strategy == "double-deg3") {
      r = solve_double_deg3(inst);
    } else if (a.strategy == "exactly-double") {
      r = solve_exactly_double(inst, parse_junction_mode(a.junction_mode), a.exact_degree_cap);
    } else if (a.strategy == "grid") {
      const auto meta = load_meta(path, a.meta);
      if (!meta) throw PreconditionError("grid strategy needs the metadata written by 'gen grid'");
      const auto [w, h] = grid_shape(*meta);
      if (to_json(inst) != to_json(make_grid(w, h))) throw PreconditionError("instance differs from the generated grid");
      r = solve_grid(w, h);
    } else if (a.strategy == "approx-2r") {
      r = solve_approx_2r(inst);
    } else if (a.strategy == "oracle") {
      OracleOptions opt;
      opt.multiplicity_cap = a.multiplicity_cap;
      r = oracle_optimal(inst, opt);
      if (!r) throw Error("oracle found no threading within multiplicity cap " + std::to_string(a.multiplicity_cap));
    } else {
      throw Error("unknown strategy '" + a.strategy + "'");
    }
    const auto ms = std::chrono::duration_cast<std::chrono::milliseconds>(std::chrono::steady_clock::now() - start).count();
    std::ostringstream line;
    if (!r) {
      line << "perfect=none lower_bound=" << perfect_lower_bound(inst) << " runtime_ms=" << ms;
      out.code = kExitNoPerfect;
      out.summary = line.str();
      return out;
    }
    line << "cost=" << r->cost << " optimal=" << optimality_label(*r) << " lower_bound=";
    if (r->lower_bound)
      line << *r->lower_bound;
    else
      line << "none";
    line << " runtime_ms=" << ms;
    if (a.dump_matching) {
      line << " matching=";
      for (std::size_t i = 0; i < r->certificate_edges.size(); ++i)
        line << (i ? "," : "") << inst.edge_id(r->certificate_edges[i]);
    }
    out.summary = line.str();
    out.threading_json = dump(to_json(inst, r->threading));
    spdlog::debug("{}: {}", path, r->notes);
  } catch (const std::exception& e) {
    out.code = kExitError;
    out.error = e.what();
  }
  return out;
}

int cmd_solve(const SolveArgs& a) {
  const std::size_t n = a.instances.size();
  std::vector<SolveOutcome> results(n);
  std::atomic<std::size_t> next{0};
  auto worker = [&] {
    for (std::size_t i = next++; i < n; i = next++) results[i] = solve_one(a, a.instances[i]);
  };
  const int jobs = std::max(1, std::min<int>(a.jobs, static_cast<int>(n)));
  std::vector<std::thread> pool;
  for (int j = 1; j < jobs; ++j) pool.emplace_back(worker);
  worker();
  for (auto& t : pool) t.join();

  const bool batch = n > 1;
  if (batch && !a.output.empty()) fs::create_directories(a.output);
  int code = 0;
  for (std::size_t i = 0; i < n; ++i) {
    const auto& r = results[i];
    const std::string prefix = batch ? "instance=" + a.instances[i] + " " : "";
    if (r.code == kExitError) {
      std::cerr << prefix << "error: " << r.error << "\n";
      code = kExitError;
      continue;
    }
    std::cout << prefix << r.summary << "\n";
    if (r.code == kExitNoPerfect && code == 0) code = kExitNoPerfect;
    if (!r.threading_json.empty() && !a.output.empty()) {
      const std::string target =
          batch ? (fs::path(a.output) / (fs::path(a.instances[i]).stem().string() + ".threading.json")).string()
                : a.output;
      write_text(target, r.threading_json);
    }
  }
  return code;
}

// ---------------------------------------------------------------------------
// verify, cost, oracle, export

int cmd_verify(const std::string& inst_path, const std::string& walk_path) {
  const Instance inst = load_instance(read_file(inst_path));
  const Walk w = load_threading(inst, read_file(walk_path));
  const ViolationReport report = verify_threading(inst, w);
  if (report.ok()) {
    std::cout << "valid cost=" << turn_cost(inst, w) << "\n";
    return 0;
  }
  std::cout << "invalid violations=" << report.violations.size() << "\n";
  for (const Violation& v : report.violations) std::cout << "  " << v.describe(inst) << "\n";
  return kExitError;
}

int cmd_cost(const std::string& inst_path, const std::string& walk_path) {
  const Instance inst = load_instance(read_file(inst_path));
  const Walk w = load_threading(inst, read_file(walk_path));
  std::cout << turn_cost(inst, w) << "\n";
  return 0;
}

struct OracleArgs {
  std::string instance;
  std::string mode = "any";
  bool walk_dfs = false;
  int multiplicity_cap = 2;
  bool allow_large = false;
  std::string output;
};

int cmd_oracle(const OracleArgs& a) {
  const Instance inst = load_instance(read_file(a.instance));
  std::optional<SolveResult> r;
  const auto start = std::chrono::steady_clock::now();
  if (a.walk_dfs) {
    if (a.mode != "any") throw Error("--walk-dfs searches all threadings; --mode must be 'any'");
    WalkDfsOptions opt;
    opt.multiplicity_cap = a.multiplicity_cap;
    opt.allow_large = a.allow_large;
    r = oracle_walk_dfs(inst, opt);
  } else {
    OracleOptions opt;
    opt.multiplicity_cap = a.multiplicity_cap;
    opt.allow_large = a.allow_large;
    if (a.mode == "any")
      opt.junction_class = JunctionClass::Any;
    else if (a.mode == "tree")
      opt.junction_class = JunctionClass::Tree;
    else if (a.mode == "mst")
      opt.junction_class = JunctionClass::MinimumTree;
    else
      throw Error("unknown oracle mode '" + a.mode + "'");
    r = oracle_optimal(inst, opt);
  }
  const auto ms = std::chrono::duration_cast<std::chrono::milliseconds>(std::chrono::steady_clock::now() - start).count();
  if (!r) {
    std::cout << "none runtime_ms=" << ms << "\n";
    return kExitNoPerfect;
  }
  std::cout << "cost=" << r->cost << " optimal=" << optimality_label(*r) << " runtime_ms=" << ms << "\n";
  if (!a.output.empty()) write_text(a.output, dump(to_json(inst, r->threading)));
  return 0;
}

struct ExportArgs {
  std::string instance;
  std::string threading;
  std::string format = "dot";
  std::string meta;
  std::string output;
};

int cmd_export(const ExportArgs& a) {
  const Instance inst = load_instance(read_file(a.instance));
  std::optional<Walk> w;
  if (!a.threading.empty()) w = load_threading(inst, read_file(a.threading));
  const Walk* wp = w ? &*w : nullptr;
  if (a.format == "dot") {
    write_text(a.output, to_dot(inst, wp));
  } else if (a.format == "svg") {
    const auto meta = load_meta(a.instance, a.meta);
    if (!meta) throw PreconditionError("svg export needs a grid instance with metadata from 'gen grid'");
    const auto [width, height] = grid_shape(*meta);
    write_text(a.output, grid_svg(inst, width, height, wp));
  } else {
    throw Error("unknown format '" + a.format + "'");
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  setup_logging();
  CLI::App app{"Minimum-turn threadings: generate, solve, verify, export"};
  app.require_subcommand(1);

  GenArgs gen;
  auto* gen_cmd = app.add_subcommand("gen", "Generate an instance (JSON) and its metadata");
  gen_cmd->require_subcommand(1);
  gen_cmd->add_option("-o,--output", gen.output, "Instance file; metadata goes to <name>.meta.json")->expected(1);
  auto* g_grid = gen_cmd->add_subcommand("grid", "Rectangular grid, straight turns free");
  g_grid->add_option("width", gen.width)->required()->check(CLI::Range(2, 1000));
  g_grid->add_option("height", gen.height)->required()->check(CLI::Range(2, 1000));
  auto* g_hc = gen_cmd->add_subcommand("hc", "Hamiltonian-cycle star instance from an edge list or JSON graph");
  g_hc->add_option("graph", gen.source)->required()->check(CLI::ExistingFile);
  auto* g_sat = gen_cmd->add_subcommand("sat", "1-in-3 SAT instance from a formula file");
  g_sat->add_option("formula", gen.source)->required()->check(CLI::ExistingFile);
  auto* g_lb = gen_cmd->add_subcommand("lowerbound", "Tree-of-triangles family");
  g_lb->add_option("--leaves", gen.leaves, "Leaf triangles")->check(CLI::Range(1, 1000));
  auto* g_rand = gen_cmd->add_subcommand("random", "Random Hamiltonian cycle plus chords");
  g_rand->add_option("--seed", gen.random.seed);
  g_rand->add_option("--vertices", gen.random.vertices)->check(CLI::Range(2, 100000));
  g_rand->add_option("--extra-edges", gen.random.extra_edges)->check(CLI::NonNegativeNumber);
  g_rand->add_option("--max-degree", gen.random.max_degree)->check(CLI::Range(2, 1000));
  g_rand->add_option("--cost-min", gen.random.cost_min)->check(CLI::NonNegativeNumber);
  g_rand->add_option("--cost-max", gen.random.cost_max)->check(CLI::NonNegativeNumber);
  g_rand->add_flag("!--multigraph", gen.random.simple, "Allow parallel chords");
  for (auto* sub : {g_grid, g_hc, g_sat, g_lb, g_rand}) sub->fallthrough();

  SolveArgs solve;
  auto* solve_cmd = app.add_subcommand("solve", "Solve one or more instances");
  solve_cmd->add_option("instances", solve.instances)->required()->check(CLI::ExistingFile);
  solve_cmd->add_option("-s,--strategy", solve.strategy)
      ->check(CLI::IsMember({"perfect-deg3", "double-deg3", "exactly-double", "grid", "approx-2r", "oracle"}));
  solve_cmd->add_option("-o,--output", solve.output, "Threading file, or a directory when several instances are given");
  solve_cmd->add_option("--meta", solve.meta, "Metadata file (default: <instance>.meta.json)");
  solve_cmd->add_option("--junction-mode", solve.junction_mode)->check(CLI::IsMember({"exact", "christofides", "heuristic"}));
  solve_cmd->add_option("--exact-degree-cap", solve.exact_degree_cap)->check(CLI::Range(2, 20));
  solve_cmd->add_option("--multiplicity-cap", solve.multiplicity_cap)->check(CLI::Range(1, 15));
  solve_cmd->add_option("-j,--jobs", solve.jobs)->check(CLI::Range(1, 256));
  solve_cmd->add_flag("--dump-matching", solve.dump_matching, "Print the matched edge ids (perfect-deg3, double-deg3)");

  std::string inst_path, walk_path;
  auto* verify_cmd = app.add_subcommand("verify", "Check that a walk is a threading");
  verify_cmd->add_option("instance", inst_path)->required()->check(CLI::ExistingFile);
  verify_cmd->add_option("threading", walk_path)->required()->check(CLI::ExistingFile);
  auto* cost_cmd = app.add_subcommand("cost", "Turn cost of a closed walk");
  cost_cmd->add_option("instance", inst_path)->required()->check(CLI::ExistingFile);
  cost_cmd->add_option("threading", walk_path)->required()->check(CLI::ExistingFile);

  OracleArgs oracle;
  auto* oracle_cmd = app.add_subcommand("oracle", "Exhaustive search on small instances");
  oracle_cmd->add_option("instance", oracle.instance)->required()->check(CLI::ExistingFile);
  oracle_cmd->add_option("--mode", oracle.mode, "Junction class: any, tree or mst")->check(CLI::IsMember({"any", "tree", "mst"}));
  oracle_cmd->add_flag("--walk-dfs", oracle.walk_dfs, "Enumerate walks directly instead of multiplicity vectors");
  oracle_cmd->add_option("--multiplicity-cap", oracle.multiplicity_cap)->check(CLI::Range(1, 15));
  oracle_cmd->add_flag("--allow-large", oracle.allow_large, "Lift the instance size guard");
  oracle_cmd->add_option("-o,--output", oracle.output);

  ExportArgs ex;
  auto* export_cmd = app.add_subcommand("export", "Render an instance as DOT or a grid threading as SVG");
  export_cmd->add_option("instance", ex.instance)->required()->check(CLI::ExistingFile);
  export_cmd->add_option("threading", ex.threading)->check(CLI::ExistingFile);
  export_cmd->add_option("-f,--format", ex.format)->check(CLI::IsMember({"dot", "svg"}));
  export_cmd->add_option("--meta", ex.meta);
  export_cmd->add_option("-o,--output", ex.output);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : kExitError;
  }

  try {
    if (*g_grid) return gen_grid(gen);
    if (*g_hc) return gen_hc(gen);
    if (*g_sat) return gen_sat(gen);
    if (*g_lb) return gen_lowerbound(gen);
    if (*g_rand) return gen_random(gen);
    if (*solve_cmd) return cmd_solve(solve);
    if (*verify_cmd) return cmd_verify(inst_path, walk_path);
    if (*cost_cmd) return cmd_cost(inst_path, walk_path);
    if (*oracle_cmd) return cmd_oracle(oracle);
    if (*export_cmd) return cmd_export(ex);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitError;
  }
  return kExitError;
}
