#include <chrono>
#include <cstdio>
#include <ctime>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <openssl/evp.h>

#include "rigid/algebra/cayley_menger.hpp"
#include "rigid/bounds/gluing.hpp"
#include "rigid/graph/catalog.hpp"
#include "rigid/graph/henneberg.hpp"
#include "rigid/io/json_io.hpp"
#include "rigid/sampler/curve.hpp"
#include "rigid/sampler/heuristics.hpp"
#include "rigid/sampler/search.hpp"
#include "rigid/solver/monodromy.hpp"
#include "rigid/solver/parallel.hpp"

using namespace rigid;

namespace {

constexpr const char* kVersion = "1.0.0";
constexpr int kExitOk = 0, kExitInput = 2, kExitIncomplete = 3;

class UsageError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

std::string sha256_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) return "";
  EVP_MD_CTX* ctx = EVP_MD_CTX_new();
  EVP_DigestInit_ex(ctx, EVP_sha256(), nullptr);
  char buf[1 << 16];
  while (in) {
    in.read(buf, sizeof buf);
    if (in.gcount() > 0) EVP_DigestUpdate(ctx, buf, static_cast<std::size_t>(in.gcount()));
  }
  unsigned char md[EVP_MAX_MD_SIZE];
  unsigned int len = 0;
  EVP_DigestFinal_ex(ctx, md, &len);
  EVP_MD_CTX_free(ctx);
  std::string hex;
  char h[3];
  for (unsigned int i = 0; i < len; ++i) {
    std::snprintf(h, sizeof h, "%02x", md[i]);
    hex += h;
  }
  return hex;
}

std::string utc_now() {
  const std::time_t t = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
  std::tm tm{};
  gmtime_r(&t, &tm);
  char buf[32];
  std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tm);
  return buf;
}

struct Manifest {
  std::string command;
  std::vector<std::string> arguments;
  std::uint64_t seed = 1;
  std::string started = utc_now();
  std::vector<std::string> inputs, outputs;

  void input(const std::string& path) { inputs.push_back(path); }
  void output(const std::string& path) { outputs.push_back(path); }

  void write(const std::string& path, int exit_code) const {
    Json j;
    j["command"] = command;
    j["arguments"] = arguments;
    j["seed"] = seed;
    j["tool_version"] = kVersion;
    j["started"] = started;
    j["finished"] = utc_now();
    j["exit_code"] = exit_code;
    auto digests = [](const std::vector<std::string>& paths) {
      Json a = Json::array();
      for (const auto& p : paths) a.push_back({{"path", p}, {"sha256", sha256_file(p)}});
      return a;
    };
    j["inputs"] = digests(inputs);
    j["outputs"] = digests(outputs);
    write_text_file(path, dump17(j, 2) + "\n");
  }
};

struct Context {
  Manifest manifest;
  std::uint64_t seed = 1;
  int threads = 0;
  std::string manifest_path;
};

void emit(const Json& j) { std::cout << dump17(j, 2) << std::endl; }

void write_output(Context& ctx, const std::string& path, const std::string& text) {
  write_text_file(path, text);
  ctx.manifest.output(path);
}

// A graph JSON file (bare or wrapped in {"graph": ...}) or a catalog name.
struct GraphInput {
  RigidGraph graph;
  const CatalogEntry* entry = nullptr;
};

GraphInput load_graph(Context& ctx, const std::string& spec) {
  GraphInput in;
  if (std::filesystem::exists(spec)) {
    const Json j = read_json_file(spec);
    in.graph = graph_from_json(j.contains("graph") && j["graph"].is_object() ? j["graph"] : j);
    ctx.manifest.input(spec);
    for (const auto& e : catalog())
      if (e.graph == in.graph) in.entry = &e;
  } else {
    in.entry = &catalog_entry(spec);
    in.graph = in.entry->graph;
  }
  return in;
}

// A lengths JSON file or the label of a published set of the catalog entry.
LengthAssignment load_lengths(Context& ctx, const GraphInput& g, const std::string& spec) {
  if (std::filesystem::exists(spec)) {
    ctx.manifest.input(spec);
    return lengths_from_json(read_json_file(spec));
  }
  if (!g.entry) throw UsageError("lengths '" + spec + "' is neither a file nor a published label");
  return g.entry->lengths(spec).lengths;
}

Geometry resolve_geometry(const std::string& flag, const LengthAssignment& l) {
  return flag.empty() ? l.geometry() : geometry_from_string(flag);
}

std::optional<int> known_count(const GraphInput& g, Geometry geo, int flag) {
  if (flag > 0) return flag;
  if (g.entry) return g.entry->complex_count(geo);
  return std::nullopt;
}

Json counts_of_evidence(const CompletenessEvidence& e) {
  return {{"kind", std::string(to_string(e.kind))}, {"loops", e.loops}, {"failed_paths", e.failed_paths}};
}

// ---------------------------------------------------------------- catalog

int cmd_catalog(Context&, const std::string& name) {
  if (name.empty()) {
    Json list = Json::array();
    for (const auto& e : catalog()) {
      Json item{{"name", e.graph.name()}, {"geometry", std::string(to_string(e.graph.geometry()))},
                {"n", e.graph.vertex_count()}};
      if (e.known_complex) item["complex"] = *e.known_complex;
      if (e.known_sphere_complex) item["sphere_complex"] = *e.known_sphere_complex;
      Json labels = Json::array();
      for (const auto& p : e.published) labels.push_back(p.label);
      item["lengths"] = labels;
      list.push_back(item);
    }
    emit(list);
    return kExitOk;
  }
  const CatalogEntry& e = catalog_entry(name);
  Json j;
  j["graph"] = graph_to_json(e.graph);
  if (e.known_complex) j["known_complex"] = *e.known_complex;
  if (e.known_real) j["known_real"] = *e.known_real;
  if (e.known_sphere_complex) j["known_sphere_complex"] = *e.known_sphere_complex;
  Json sets = Json::array();
  for (const auto& p : e.published) {
    Json s = lengths_to_json(e.graph.name(), p.lengths);
    s["label"] = p.label;
    s["realized"] = p.realized;
    sets.push_back(s);
  }
  j["lengths"] = sets;
  if (!e.note.empty()) j["note"] = e.note;
  emit(j);
  return kExitOk;
}

// ---------------------------------------------------------------- solve

struct SolveArgs {
  std::string graph, lengths, geometry, formulation = "sphere", out;
  double tau_im = kTauIm;
  int known = 0;
};

int cmd_solve(Context& ctx, const SolveArgs& a) {
  const GraphInput gi = load_graph(ctx, a.graph);
  const LengthAssignment lengths = load_lengths(ctx, gi, a.lengths);
  const Geometry geo = resolve_geometry(a.geometry, lengths);
  const RigidGraph g = gi.graph.with_geometry(geo);
  if (lengths.geometry() != geo) throw UsageError("lengths are for " + std::string(to_string(lengths.geometry())));
  lengths.validate_for(g);
  const Formulation form = formulation_from_string(a.formulation);

  std::shared_ptr<PolynomialSystem> sys;
  if (form == Formulation::Sphere) {
    sys = std::make_shared<PolynomialSystem>(build_sphere_system(g, lengths));
  } else {
    const int d = count_dimension(geo);
    CMSubsystem sub;
    if (gi.entry && !gi.entry->cm_variables.empty() && geo == gi.entry->graph.geometry())
      sub = cm_subsystem_for(g, gi.entry->cm_variables, ctx.seed);
    else {
      auto subs = find_cm_square_subsystems(g, d, ctx.seed);
      if (subs.empty()) throw SystemError("no square Cayley-Menger subsystem");
      sub = subs.front();
    }
    sys = std::make_shared<PolynomialSystem>(build_cm_system(sub, lengths));
  }
  const int per = sys->embeddings_per_solution;
  MonodromyOptions mo;
  mo.seed = ctx.seed;
  mo.tracker.tau_im = a.tau_im;
  if (auto k = known_count(gi, geo, a.known)) {
    if (*k % per != 0) throw UsageError("known count is not a multiple of the mirror factor");
    mo.known_count = *k / per;
  }
  const SolutionSet generic = monodromy_solve(sys, mo);
  HomotopyOptions ho;
  ho.seed = ctx.seed;
  ho.tracker.tau_im = a.tau_im;
  SolutionSet target = parameter_homotopy(generic, lengths, ho);
  const RealCount rc = count_real(target, a.tau_im);
  const SideConditionTally tally = side_condition_tally(target, rc.real_indices);

  Json j;
  j["graph"] = g.name();
  j["geometry"] = std::string(to_string(geo));
  j["formulation"] = std::string(to_string(form));
  j["variables"] = sys->size();
  j["complex"] = target.size() * per;
  j["real"] = rc.real * per;
  j["real_filtered"] = tally.satisfied * per;
  j["real_near"] = tally.near * per;
  j["real_violated"] = tally.violated * per;
  j["generic"] = counts_of_evidence(generic.evidence);
  j["target"] = counts_of_evidence(target.evidence);
  if (!a.out.empty()) {
    Json s;
    s["graph"] = graph_to_json(g);
    s["lengths"] = lengths_to_json(g.name(), lengths);
    s["variables"] = sys->variables;
    Json sols = Json::array();
    for (const auto& x : target.solutions) sols.push_back(solution_to_json(x));
    s["solutions"] = sols;
    Json bad = Json::array();
    for (const auto& x : target.singular) bad.push_back(solution_to_json(x));
    s["singular"] = bad;
    s["counts"] = j;
    write_output(ctx, a.out, dump17(s, 1) + "\n");
    j["solutions_file"] = a.out;
  }
  emit(j);
  const bool complete = generic.evidence.complete() && target.evidence.complete();
  if (!complete) std::cerr << "incomplete numerical evidence; counts are lower bounds\n";
  return complete ? kExitOk : kExitIncomplete;
}

// ---------------------------------------------------------------- maximize

struct MaximizeArgs {
  std::string graph, start = "random", method = "tree", out, trace, subgraphs, glue_graph, glue_lengths, glue_map;
  int target = 0, starts = 1, steps = 200, grid = 20, max_iterations = 50, known = 0;
  bool relax = false;
};

std::vector<CouplerSubgraph> parse_subgraphs(const std::string& s) {
  std::vector<CouplerSubgraph> out;
  std::stringstream ss(s);
  std::string item;
  while (std::getline(ss, item, ';'))
    if (!item.empty()) out.push_back(coupler_from_string(item));
  return out;
}

std::vector<int> parse_ints(const std::string& s) {
  std::vector<int> out;
  std::stringstream ss(s);
  std::string item;
  while (std::getline(ss, item, ',')) {
    try {
      out.push_back(std::stoi(item));
    } catch (const std::exception&) {
      throw UsageError("bad integer list '" + s + "'");
    }
  }
  return out;
}

int cmd_maximize(Context& ctx, const MaximizeArgs& a) {
  const GraphInput gi = load_graph(ctx, a.graph);
  const RigidGraph& g = gi.graph;
  const Geometry geo = g.geometry();
  const std::optional<int> complex = known_count(gi, geo, a.known);
  if (complex && a.target > *complex)
    throw UsageError("target " + std::to_string(a.target) + " exceeds the complex count " + std::to_string(*complex));
  if ((a.method == "tree" || a.method == "linear") && geo != Geometry::Space)
    throw UsageError("coupler-curve search is defined in space; use --method walk");
  if (a.method != "tree" && a.method != "linear" && a.method != "walk")
    throw UsageError("unknown method '" + a.method + "'");

  std::vector<LengthAssignment> starts;
  const bool from_lengths = std::filesystem::exists(a.start) || (gi.entry && [&] {
                              for (const auto& p : gi.entry->published)
                                if (p.label == a.start) return true;
                              return false;
                            }());
  if (from_lengths) {
    starts.push_back(load_lengths(ctx, gi, a.start));
  } else {
    const StartStrategy strategy = start_strategy_from_string(a.start);
    std::optional<GlueSource> glue;
    if (strategy == StartStrategy::GluePerturb) {
      if (a.glue_graph.empty() || a.glue_lengths.empty() || a.glue_map.empty())
        throw UsageError("glue-perturb needs --glue-graph, --glue-lengths and --glue-map");
      const GraphInput src = load_graph(ctx, a.glue_graph);
      glue = GlueSource{src.graph, load_lengths(ctx, src, a.glue_lengths), parse_ints(a.glue_map)};
    }
    starts = heuristic_starts(g, strategy, a.starts, ctx.seed, glue);
  }

  auto sys = std::make_shared<PolynomialSystem>(build_sphere_system(g));
  MonodromyOptions mo;
  mo.seed = ctx.seed;
  mo.known_count = complex;
  const SolutionSet generic = monodromy_solve(sys, mo);
  if (!generic.evidence.complete()) {
    std::cerr << "generic solution set incomplete\n";
    return kExitIncomplete;
  }

  SearchConfig cfg;
  cfg.grid_phi = cfg.grid_theta = a.grid;
  cfg.seed = ctx.seed;
  cfg.max_iterations = a.max_iterations;
  cfg.relax_degree_four = a.relax;
  if (a.target > 0) cfg.target = a.target;
  cfg.subgraphs = parse_subgraphs(a.subgraphs);
  for (const auto& sg : cfg.subgraphs) validate_coupler(g, sg);

  std::ostringstream trace;
  LengthAssignment best = starts.front();
  int best_count = -1, tried = 0, expansions = 0;
  bool reached = false;
  for (std::size_t k = 0; k < starts.size() && !reached; ++k) {
    ++tried;
    int count = 0;
    LengthAssignment found;
    if (a.method == "walk") {
      const WalkResult w = stochastic_walk(generic, starts[k], a.steps, ctx.seed + k);
      count = w.score.real;
      found = w.best;
      for (std::size_t i = 0; i < w.history.size(); ++i)
        trace << dump17(Json{{"start", k}, {"step", i}, {"count", w.history[i]}}) << '\n';
    } else {
      const SearchResult r = a.method == "tree" ? tree_search(generic, starts[k], cfg)
                                                : linear_search(generic, starts[k],
                                                                cfg.subgraphs.empty()
                                                                    ? find_coupler_subgraphs(g, a.relax)
                                                                    : cfg.subgraphs,
                                                                cfg);
      count = r.best_count;
      found = r.best;
      expansions += r.expansions;
      std::ostringstream one;
      write_trace_jsonl(one, r.trace);
      std::istringstream lines(one.str());
      for (std::string line; std::getline(lines, line);) {
        Json e = Json::parse(line);
        e["start"] = k;
        trace << dump17(e) << '\n';
      }
    }
    if (count > best_count) {
      best_count = count;
      best = found;
    }
    reached = a.target > 0 && best_count >= a.target;
  }

  if (!a.out.empty()) write_output(ctx, a.out, dump17(lengths_to_json(g.name(), best), 1) + "\n");
  if (!a.trace.empty()) write_output(ctx, a.trace, trace.str());
  Json j{{"graph", g.name()},       {"method", a.method}, {"best_count", best_count},
         {"starts_tried", tried},   {"expansions", expansions}};
  if (a.target > 0) {
    j["target"] = a.target;
    j["reached_target"] = reached;
  }
  j["lengths"] = lengths_to_json(g.name(), best)["lengths"];
  emit(j);
  if (a.target > 0 && !reached) {
    std::cerr << "target not reached\n";
    return kExitIncomplete;
  }
  return kExitOk;
}

// ---------------------------------------------------------------- curve

struct CurveArgs {
  std::string graph, lengths, subgraph, out;
  int steps = 20000, seeds = 8;
};

int cmd_curve(Context& ctx, const CurveArgs& a) {
  const GraphInput gi = load_graph(ctx, a.graph);
  const LengthAssignment lengths = load_lengths(ctx, gi, a.lengths);
  const CouplerSubgraph sg = coupler_from_string(a.subgraph);
  validate_coupler(gi.graph, sg);
  CurveOptions o;
  o.seeds = a.seeds;
  o.seed = ctx.seed;
  o.known_count = known_count(gi, gi.graph.geometry(), 0);
  const CouplerCurve curve = trace_coupler_curve(gi.graph, lengths, sg, a.steps, o);
  std::ostringstream csv;
  write_curve_csv(csv, curve);
  if (!a.out.empty()) write_output(ctx, a.out, csv.str());
  else std::cout << csv.str();
  int points = 0, closed = 0, truncated = 0;
  for (const auto& c : curve.components) {
    points += static_cast<int>(c.points.size());
    closed += c.closed;
    truncated += c.truncated;
  }
  const Json j{{"graph", gi.graph.name()},
               {"subgraph", to_string(sg)},
               {"components", curve.components.size()},
               {"points", points},
               {"closed", closed},
               {"truncated", truncated},
               {"intersections", curve_intersections(curve, lengths).size()}};
  if (!a.out.empty()) emit(j);
  else std::cerr << dump17(j) << '\n';
  return kExitOk;
}

// ---------------------------------------------------------------- bounds

struct BoundsArgs {
  std::string preset;
  int nG = 0, nH = 0, n = 0;
  std::string rG, rH;
};

Json big_to_json(const BigInt& v) {
  if (v <= BigInt(std::numeric_limits<std::int64_t>::max())) return v.convert_to<std::int64_t>();
  return v.str();
}

int cmd_bounds(Context&, const BoundsArgs& a) {
  GluingSpec s;
  if (!a.preset.empty()) s = gluing_preset(a.preset);
  if (a.nG) s.nG = a.nG;
  if (a.nH) s.nH = a.nH;
  if (!a.rG.empty()) s.rG = BigInt(a.rG);
  if (!a.rH.empty()) s.rH = BigInt(a.rH);
  if (a.n) s.n = a.n;
  else if (a.preset.empty()) s.n = s.nG;
  const GluedBound b = glued_lower_bound(s);
  Json j{{"nG", s.nG}, {"nH", s.nH}, {"rG", big_to_json(s.rG)}, {"rH", big_to_json(s.rH)}, {"n", s.n}};
  j["bound"] = big_to_json(b.value);
  j["exact"] = b.exact.str();
  j["floored"] = b.floored;
  j["base"] = asymptotic_base(s);
  emit(j);
  return kExitOk;
}

// ---------------------------------------------------------------- enumerate

int cmd_enumerate(Context& ctx, int n, int dim, bool classify, const std::string& out) {
  const auto graphs = enumerate_minimally_rigid(n, dim);
  int h1 = 0, h2 = 0;
  Json list = Json::array();
  for (const auto& e : graphs) {
    (e.last_move == LastMove::H1 ? h1 : h2)++;
    Json item = graph_to_json(e.graph);
    item["label"] = e.label;
    if (classify) item["last_move"] = std::string(to_string(e.last_move));
    list.push_back(item);
  }
  Json j{{"n", n}, {"dim", dim}, {"total", graphs.size()}};
  if (classify) {
    j["h1_last"] = h1;
    j["h2_last"] = h2;
  }
  if (!out.empty()) write_output(ctx, out, dump17(list, 1) + "\n");
  else j["graphs"] = list;
  emit(j);
  return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Real embeddings of minimally rigid graphs"};
  app.require_subcommand(1);
  app.set_version_flag("--version", kVersion);
  Context ctx;
  app.add_option("--seed", ctx.seed, "random seed")->capture_default_str();
  app.add_option("--threads", ctx.threads, "worker threads (default: RIGID_EMBED_THREADS or all cores)");
  app.add_option("--manifest", ctx.manifest_path, "manifest path (default: <first output>.manifest.json)");

  std::string catalog_name;
  auto* c_catalog = app.add_subcommand("catalog", "list catalog entries or dump one");
  c_catalog->add_option("name", catalog_name);

  SolveArgs sa;
  auto* c_solve = app.add_subcommand("solve", "count complex and real embeddings");
  c_solve->add_option("graph", sa.graph, "graph JSON file or catalog name")->required();
  c_solve->add_option("lengths", sa.lengths, "lengths JSON file or published label")->required();
  c_solve->add_option("--geometry", sa.geometry, "plane, space or sphere (default: from lengths)");
  c_solve->add_option("--formulation", sa.formulation, "sphere or cm")->capture_default_str();
  c_solve->add_option("--tau-im", sa.tau_im, "imaginary-part threshold")->capture_default_str();
  c_solve->add_option("--known-count", sa.known, "complex embedding count, if known");
  c_solve->add_option("--out", sa.out, "solutions JSON");

  MaximizeArgs ma;
  auto* c_max = app.add_subcommand("maximize", "search for lengths with many real embeddings");
  c_max->add_option("graph", ma.graph, "graph JSON file or catalog name")->required();
  c_max->add_option("--start", ma.start,
                    "strategy (random, near-unit, degenerate-perturb, glue-perturb, forward-induced), "
                    "lengths file or published label")
      ->capture_default_str();
  c_max->add_option("--starts", ma.starts, "number of generated starts")->capture_default_str();
  c_max->add_option("--method", ma.method, "tree, linear or walk")->capture_default_str();
  c_max->add_option("--target", ma.target, "stop at this many real embeddings");
  c_max->add_option("--steps", ma.steps, "walk steps")->capture_default_str();
  c_max->add_option("--grid", ma.grid, "coarse samples per angle")->capture_default_str();
  c_max->add_option("--max-iterations", ma.max_iterations, "node expansions or sampling runs per start")
      ->capture_default_str();
  c_max->add_option("--subgraphs", ma.subgraphs, "e.g. \"(5,6,1,7,4);(4,3,1,7,5)\"");
  c_max->add_flag("--relax-degree", ma.relax, "allow deg(u) > 4");
  c_max->add_option("--known-count", ma.known, "complex embedding count, if known");
  c_max->add_option("--glue-graph", ma.glue_graph, "glue-perturb source graph");
  c_max->add_option("--glue-lengths", ma.glue_lengths, "glue-perturb source lengths");
  c_max->add_option("--glue-map", ma.glue_map, "image of each vertex, e.g. 1,2,3,4,5,6,7,7");
  c_max->add_option("--out", ma.out, "best lengths JSON");
  c_max->add_option("--trace", ma.trace, "search trace, JSON lines");

  CurveArgs ca;
  auto* c_curve = app.add_subcommand("curve", "trace a coupler curve");
  c_curve->add_option("graph", ca.graph, "graph JSON file or catalog name")->required();
  c_curve->add_option("lengths", ca.lengths, "lengths JSON file or published label")->required();
  c_curve->add_option("--subgraph", ca.subgraph, "u,v,w,p,c")->required();
  c_curve->add_option("--steps", ca.steps, "continuation steps per direction")->capture_default_str();
  c_curve->add_option("--seeds", ca.seeds, "lengths l_uc used for seeds")->capture_default_str();
  c_curve->add_option("--out", ca.out, "CSV output (default: stdout)");

  BoundsArgs ba;
  auto* c_bounds = app.add_subcommand("bounds", "gluing lower bound and asymptotic base");
  c_bounds->add_option("--preset", ba.preset, "L880, L24S, G160 or G48");
  c_bounds->add_option("--nG", ba.nG);
  c_bounds->add_option("--nH", ba.nH);
  c_bounds->add_option("--rG", ba.rG);
  c_bounds->add_option("--rH", ba.rH);
  c_bounds->add_option("--n", ba.n, "vertices of the glued graph");

  int en = 0, edim = 2;
  bool eclassify = false;
  std::string eout;
  auto* c_enum = app.add_subcommand("enumerate", "minimally rigid graphs up to isomorphism");
  c_enum->add_option("--n", en)->required();
  c_enum->add_option("--dim", edim)->capture_default_str();
  c_enum->add_flag("--classify", eclassify, "tag H1-last / H2-last");
  c_enum->add_option("--out", eout, "graph list JSON");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForVersion& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitInput;
  }

  CLI::App* sub = app.get_subcommands().front();
  ctx.manifest.command = sub->get_name();
  ctx.manifest.arguments.assign(argv + 1, argv + argc);
  ctx.manifest.seed = ctx.seed;
  if (ctx.threads > 0) set_thread_count(ctx.threads);

  int code = kExitOk;
  try {
    if (sub == c_catalog) code = cmd_catalog(ctx, catalog_name);
    else if (sub == c_solve) code = cmd_solve(ctx, sa);
    else if (sub == c_max) code = cmd_maximize(ctx, ma);
    else if (sub == c_curve) code = cmd_curve(ctx, ca);
    else if (sub == c_bounds) code = cmd_bounds(ctx, ba);
    else if (sub == c_enum) code = cmd_enumerate(ctx, en, edim, eclassify, eout);
  } catch (const std::invalid_argument& e) {  // GraphError, InputError, BoundsError, UsageError
    std::cerr << "error: " << e.what() << '\n';
    code = kExitInput;
  } catch (const SamplerError& e) {
    std::cerr << "error: " << e.what() << '\n';
    code = kExitInput;
  } catch (const SystemError& e) {
    std::cerr << "error: " << e.what() << '\n';
    code = kExitInput;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    code = kExitIncomplete;
  }

  std::string path = ctx.manifest_path;
  if (path.empty())
    path = ctx.manifest.outputs.empty() ? "rigid_embed." + ctx.manifest.command + ".manifest.json"
                                        : ctx.manifest.outputs.front() + ".manifest.json";
  try {
    ctx.manifest.write(path, code);
  } catch (const std::exception& e) {
    std::cerr << "error: cannot write manifest: " << e.what() << '\n';
  }
  return code;
}
