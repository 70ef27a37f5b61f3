// Command-line frontend: instance generation, boundary extraction (with the
// coordinate oracle when coordinates exist), batch verification, collapse
// traces, and SVG figures.
//
// Exit codes: 0 success, 1 property failure, 2 usage or input error.

#include <CLI11.hpp>
#include <json.hpp>

#include <cstdint>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "dcshape/collapse.hpp"
#include "dcshape/complexes.hpp"
#include "dcshape/generator.hpp"
#include "dcshape/local_alpha.hpp"
#include "dcshape/point_io.hpp"
#include "dcshape/svg.hpp"

namespace fs = std::filesystem;
using nlohmann::json;
using namespace dcshape;

namespace {

struct RunConfig {
  std::uint64_t seed = 1;
  int n = 60;
  std::optional<double> r;
  std::vector<double> q;
  double epsilon = kDefaultEpsilon;
  std::string points_file;
  std::string edges_file;
  int batch = 1;
  std::string out_dir = ".";
  bool inject_degeneracy = false;
  bool inject_fault = false;
};

void write_file(const fs::path& path, const std::string& content) {
  if (path.has_parent_path()) fs::create_directories(path.parent_path());
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error("cannot open for writing: " + path.string());
  out << content;
  if (!out) throw Error("write failed: " + path.string());
}

json edges_json(const std::set<Edge>& edges) {
  json arr = json::array();
  for (const Edge& e : edges) arr.push_back({e.first, e.second});
  return arr;
}

json vertices_json(const std::set<int>& vs) {
  json arr = json::array();
  for (int v : vs) arr.push_back(v);
  return arr;
}

json decisions_json(const LocalShape& shape) {
  json arr = json::array();
  for (const auto& [e, dec] : shape.decisions) {
    json item;
    item["edge"] = {e.first, e.second};
    item["verdict"] = to_string(dec.verdict);
    item["reason"] = to_string(dec.reason);
    item["evidence"] = dec.evidence;
    if (dec.near_degenerate) item["near_degenerate"] = true;
    arr.push_back(std::move(item));
  }
  return arr;
}

json complex_sizes_json(const Complex2& k) {
  return json{{"vertices", k.vertices.size()},
              {"edges", k.edges.size()},
              {"triangles", k.triangles.size()}};
}

struct EdgeSetDiff {
  std::set<Edge> only_left, only_right;
  bool empty() const { return only_left.empty() && only_right.empty(); }
};

EdgeSetDiff diff_edges(const std::set<Edge>& left, const std::set<Edge>& right) {
  EdgeSetDiff d;
  std::set_difference(left.begin(), left.end(), right.begin(), right.end(),
                      std::inserter(d.only_left, d.only_left.end()));
  std::set_difference(right.begin(), right.end(), left.begin(), left.end(),
                      std::inserter(d.only_right, d.only_right.end()));
  return d;
}

PointSet instance_points(const RunConfig& cfg, std::vector<std::string>* gen_log) {
  if (!cfg.points_file.empty()) {
    std::ifstream in(cfg.points_file);
    if (!in) throw Error("cannot open points file: " + cfg.points_file);
    return read_points(in, cfg.epsilon);
  }
  GenConfig gen;
  gen.seed = cfg.seed;
  gen.n = cfg.n;
  gen.epsilon = cfg.epsilon;
  gen.inject_degeneracy = cfg.inject_degeneracy;
  GenResult res = generate_points(gen);
  if (gen_log != nullptr) *gen_log = res.log;
  return std::move(res.points);
}

int cmd_generate(const RunConfig& cfg) {
  GenConfig gen;
  gen.seed = cfg.seed;
  gen.n = cfg.n;
  gen.epsilon = cfg.epsilon;
  gen.inject_degeneracy = cfg.inject_degeneracy;
  const GenResult res = generate_points(gen);
  std::ostringstream text;
  write_points(text, res.points);
  write_file(fs::path(cfg.out_dir) / "points.txt", text.str());
  for (const std::string& line : res.log) std::cout << line << "\n";
  std::cout << "wrote " << res.points.size() << " points to "
            << (fs::path(cfg.out_dir) / "points.txt").string() << "\n";
  return 0;
}

int cmd_shape(const RunConfig& cfg) {
  json out;
  out["epsilon"] = cfg.epsilon;

  if (!cfg.edges_file.empty()) {
    std::ifstream in(cfg.edges_file);
    if (!in) throw Error("cannot open edge file: " + cfg.edges_file);
    const DistanceGraph g = read_edge_list(in, cfg.epsilon);
    const double r = g.range();
    const double q = cfg.q.empty() ? r : cfg.q.front();
    if (q > r) {
      std::cerr << "error: --q must not exceed the range from the edge file (" << r << ")\n";
      return 2;
    }
    const LocalShape shape = alpha_shape_local(g, q);
    const auto [sim_shape, stats] = simulate_distributed(g, q);
    out["mode"] = "edges";
    out["n"] = g.order();
    out["r"] = r;
    out["q"] = q;
    out["boundary_edges"] = edges_json(shape.boundary_edges);
    out["boundary_vertices"] = vertices_json(shape.boundary_vertices);
    out["decisions"] = decisions_json(shape);
    out["near_degenerate"] = shape.near_degenerate;
    out["sim"] = {{"rounds", stats.rounds},
                  {"messages", stats.messages},
                  {"matches_local", sim_shape.boundary_edges == shape.boundary_edges}};
    out["oracle"] = nullptr;  // no coordinates, no oracle
    out["svg"] = nullptr;     // no coordinates, nothing to draw
    write_file(fs::path(cfg.out_dir) / "shape.json", out.dump(2) + "\n");
    return 0;
  }

  if (cfg.points_file.empty()) {
    std::cerr << "error: shape needs --points or --edges\n";
    return 2;
  }
  if (!cfg.r.has_value() && cfg.q.empty()) {
    std::cerr << "error: shape needs --r or --q with --points\n";
    return 2;
  }
  const PointSet ps = instance_points(cfg, nullptr);
  const double r = cfg.r.has_value() ? *cfg.r : cfg.q.front();
  const double q = cfg.q.empty() ? r : cfg.q.front();
  if (q > r) {
    std::cerr << "error: --q must not exceed --r\n";
    return 2;
  }

  NearDegeneracy nd;
  const DistanceGraph g = build_graph(ps, r, &nd);
  const LocalShape shape = alpha_shape_local(g, q);
  const auto [sim_shape, stats] = simulate_distributed(g, q);
  const Complex2 alpha = alpha_complex(ps, q, &nd);
  const Complex2 alpha_boundary = boundary_shape(alpha);
  const Complex2 dc = delaunay_cech(ps, q, &nd);
  const Complex2 dc_boundary = boundary_shape(dc);
  const EdgeSetDiff diff = diff_edges(shape.boundary_edges, alpha_boundary.edges);

  out["mode"] = "points";
  out["n"] = static_cast<int>(ps.size());
  out["r"] = r;
  out["q"] = q;
  out["boundary_edges"] = edges_json(shape.boundary_edges);
  out["boundary_vertices"] = vertices_json(shape.boundary_vertices);
  out["decisions"] = decisions_json(shape);
  out["near_degenerate"] = shape.near_degenerate || nd.flagged();
  out["sim"] = {{"rounds", stats.rounds},
                {"messages", stats.messages},
                {"matches_local", sim_shape.boundary_edges == shape.boundary_edges}};
  out["oracle"] = {{"boundary_edges", edges_json(alpha_boundary.edges)},
                   {"alpha", complex_sizes_json(alpha)},
                   {"delaunay_cech", complex_sizes_json(dc)},
                   {"diff",
                    {{"local_only", edges_json(diff.only_left)},
                     {"oracle_only", edges_json(diff.only_right)}}},
                   {"agrees", diff.empty()}};

  std::set<Edge> context_edges;
  for (const auto& [e, dec] : shape.decisions) context_edges.insert(e);
  SvgLayers layers;
  layers.graph_edges = &context_edges;
  layers.dc_edges = &dc_boundary.edges;
  layers.alpha_edges = &shape.boundary_edges;
  layers.marked_vertices = &shape.boundary_vertices;
  const std::string svg = render_svg(ps, q, layers);
  write_file(fs::path(cfg.out_dir) / "shape.svg", svg);
  out["svg"] = "shape.svg";
  write_file(fs::path(cfg.out_dir) / "shape.json", out.dump(2) + "\n");

  if (!diff.empty()) {
    std::cerr << "boundary mismatch: " << diff.only_left.size() << " local-only, "
              << diff.only_right.size() << " oracle-only edges\n";
    return 1;
  }
  return 0;
}

int cmd_verify(const RunConfig& cfg) {
  if (!cfg.r.has_value()) {
    std::cerr << "error: verify needs --r\n";
    return 2;
  }
  const double r = *cfg.r;
  std::vector<double> qs = cfg.q;
  if (qs.empty()) qs = {r, 0.8 * r, 0.5 * r};
  for (double q : qs) {
    if (!(q > 0.0) || q > r) {
      std::cerr << "error: each q must be in (0, r]\n";
      return 2;
    }
  }

  json results = json::array();
  int failed = 0, skipped = 0, passed = 0;
  bool wrote_figure = false;
  for (int b = 0; b < cfg.batch; ++b) {
    const std::uint64_t seed = cfg.seed + static_cast<std::uint64_t>(b);
    GenConfig gen;
    gen.seed = seed;
    gen.n = cfg.n;
    gen.epsilon = cfg.epsilon;
    const PointSet ps = generate_points(gen).points;

    for (double q : qs) {
      NearDegeneracy nd;
      VerifyReport report = verify_equivalence(ps, q);

      const DistanceGraph g = build_graph(ps, r, &nd);
      const LocalShape local = alpha_shape_local(g, q);
      Complex2 oracle = boundary_shape(alpha_complex(ps, q, &nd));
      if (cfg.inject_fault && !oracle.edges.empty()) {
        oracle.edges.erase(oracle.edges.begin());  // deliberate oracle corruption
      }
      const EdgeSetDiff diff = diff_edges(local.boundary_edges, oracle.edges);
      {
        std::ostringstream detail;
        if (!diff.empty()) {
          detail << "local-only:";
          for (const Edge& e : diff.only_left) detail << " (" << e.first << "," << e.second << ")";
          detail << " oracle-only:";
          for (const Edge& e : diff.only_right) detail << " (" << e.first << "," << e.second << ")";
        }
        report.checks.push_back({"local_matches_oracle", diff.empty(), detail.str()});
      }
      {
        const auto [sim_shape, stats] = simulate_distributed(g, q);
        const bool same = sim_shape.boundary_edges == local.boundary_edges &&
                          sim_shape.boundary_vertices == local.boundary_vertices;
        std::ostringstream detail;
        detail << stats.messages << " messages, " << stats.rounds << " rounds";
        report.checks.push_back({"distributed_matches_local", same, detail.str()});
      }

      const bool near_degenerate =
          report.near_degenerate || nd.flagged() || local.near_degenerate;
      const bool all_pass = report.all_pass();

      json checks = json::array();
      for (const CheckResult& c : report.checks) {
        json item{{"name", c.name}, {"pass", c.pass}};
        if (!c.detail.empty()) item["detail"] = c.detail;
        checks.push_back(std::move(item));
      }
      results.push_back({{"seed", seed},
                         {"q", q},
                         {"skipped", near_degenerate},
                         {"pass", all_pass},
                         {"betti_alpha", {report.betti_alpha.b0, report.betti_alpha.b1}},
                         {"betti_delaunay_cech", {report.betti_dc.b0, report.betti_dc.b1}},
                         {"pairing_size", report.pairing_size},
                         {"trace_length", report.trace_length},
                         {"checks", std::move(checks)}});
      if (near_degenerate) {
        ++skipped;
      } else if (all_pass) {
        ++passed;
      } else {
        ++failed;
      }

      if (!wrote_figure || (!all_pass && !near_degenerate)) {
        const Complex2 dcb = boundary_shape(delaunay_cech(ps, q));
        SvgLayers layers;
        layers.dc_edges = &dcb.edges;
        layers.alpha_edges = &local.boundary_edges;
        layers.marked_vertices = &local.boundary_vertices;
        std::ostringstream name;
        name << "figure_seed" << seed << ".svg";
        write_file(fs::path(cfg.out_dir) / name.str(), render_svg(ps, q, layers));
        wrote_figure = true;
      }
    }
  }

  json out;
  out["config"] = {{"seed", cfg.seed}, {"batch", cfg.batch},     {"n", cfg.n},
                   {"r", r},           {"q", qs},                {"epsilon", cfg.epsilon},
                   {"inject_fault", cfg.inject_fault}};
  out["results"] = std::move(results);
  out["summary"] = {{"instances", cfg.batch * static_cast<int>(qs.size())},
                    {"passed", passed},
                    {"failed", failed},
                    {"skipped", skipped}};
  out["all_pass"] = failed == 0;
  write_file(fs::path(cfg.out_dir) / "report.json", out.dump(2) + "\n");
  std::cout << "verify: " << passed << " passed, " << failed << " failed, " << skipped
            << " skipped\n";
  return failed == 0 ? 0 : 1;
}

int cmd_collapse(const RunConfig& cfg) {
  if (cfg.q.empty()) {
    std::cerr << "error: collapse needs --q\n";
    return 2;
  }
  const double q = cfg.q.front();
  const PointSet ps = instance_points(cfg, nullptr);

  NearDegeneracy nd;
  const CollapseTrace trace = collapse_to_alpha(ps, q, &nd);
  const Complex2 alpha = alpha_complex(ps, q);
  const bool reached = trace.end == alpha;
  const BettiPair b_start = betti(trace.start);
  const BettiPair b_end = betti(trace.end);

  write_file(fs::path(cfg.out_dir) / "collapse.txt", trace_to_text(trace));
  json out;
  out["q"] = q;
  out["n"] = static_cast<int>(ps.size());
  out["steps"] = trace.steps.size();
  out["start"] = complex_sizes_json(trace.start);
  out["end"] = complex_sizes_json(trace.end);
  out["end_equals_alpha"] = reached;
  out["betti_start"] = {b_start.b0, b_start.b1};
  out["betti_end"] = {b_end.b0, b_end.b1};
  out["near_degenerate"] = nd.flagged();
  write_file(fs::path(cfg.out_dir) / "collapse.json", out.dump(2) + "\n");
  std::cout << "collapse: " << trace.steps.size() << " steps, betti (" << b_start.b0 << ", "
            << b_start.b1 << ") -> (" << b_end.b0 << ", " << b_end.b1 << ")\n";
  return reached ? 0 : 1;
}

int cmd_render(const RunConfig& cfg) {
  if (cfg.q.empty()) {
    std::cerr << "error: render needs --q\n";
    return 2;
  }
  const double q = cfg.q.front();
  const PointSet ps = instance_points(cfg, nullptr);

  const Complex2 alpha = alpha_complex(ps, q);
  const Complex2 dc = delaunay_cech(ps, q);
  const Complex2 alpha_boundary = boundary_shape(alpha);
  const Complex2 dc_boundary = boundary_shape(dc);
  const DistanceGraph gq = build_graph(ps, q);
  const std::vector<Edge> gq_edges = gq.edges();
  const std::set<Edge> context(gq_edges.begin(), gq_edges.end());

  SvgLayers layers;
  layers.graph_edges = &context;
  layers.dc_triangles = &dc.triangles;
  layers.dc_edges = &dc_boundary.edges;
  layers.alpha_edges = &alpha_boundary.edges;
  layers.marked_vertices = &alpha_boundary.vertices;
  write_file(fs::path(cfg.out_dir) / "figure.svg", render_svg(ps, q, layers));
  std::cout << "wrote " << (fs::path(cfg.out_dir) / "figure.svg").string() << "\n";
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"local alpha-shape boundaries and collapse checks for unit-disk instances"};
  app.require_subcommand(1);
  RunConfig cfg;

  const auto add_common = [&cfg](CLI::App* sub) {
    sub->add_option("--seed", cfg.seed, "random seed");
    sub->add_option("--n", cfg.n, "number of points");
    sub->add_option("--epsilon", cfg.epsilon, "degeneracy margin");
    sub->add_option("--out", cfg.out_dir, "output directory");
  };

  CLI::App* gen = app.add_subcommand("generate", "draw a degeneracy-free instance");
  add_common(gen);
  gen->add_flag("--inject-degeneracy", cfg.inject_degeneracy,
                "start from a cocircular quadruple to exercise the repair path");

  CLI::App* shape = app.add_subcommand("shape", "extract the boundary at scale q");
  add_common(shape);
  shape->add_option("--points", cfg.points_file, "point file (n, then x y lines)");
  shape->add_option("--edges", cfg.edges_file, "edge file (n r, then i j dist lines)");
  shape->add_option("--r", cfg.r, "communication range");
  shape->add_option("--q", cfg.q, "shape scale (default r)");

  CLI::App* verify = app.add_subcommand("verify", "batch equivalence audit over seeds");
  add_common(verify);
  verify->add_option("--batch", cfg.batch, "number of consecutive seeds");
  verify->add_option("--r", cfg.r, "communication range");
  verify->add_option("--q", cfg.q, "shape scales (repeatable; default r, 0.8r, 0.5r)");
  verify->add_flag("--inject-fault", cfg.inject_fault,
                   "corrupt the oracle to prove the harness catches divergence");

  CLI::App* collapse = app.add_subcommand("collapse", "collapse trace down to the alpha complex");
  add_common(collapse);
  collapse->add_option("--points", cfg.points_file, "point file");
  collapse->add_option("--q", cfg.q, "shape scale");

  CLI::App* render = app.add_subcommand("render", "figure with disks and both shape overlays");
  add_common(render);
  render->add_option("--points", cfg.points_file, "point file");
  render->add_option("--q", cfg.q, "shape scale");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 2;
  }

  try {
    if (gen->parsed()) return cmd_generate(cfg);
    if (shape->parsed()) return cmd_shape(cfg);
    if (verify->parsed()) return cmd_verify(cfg);
    if (collapse->parsed()) return cmd_collapse(cfg);
    if (render->parsed()) return cmd_render(cfg);
  } catch (const PairingViolation& e) {
    std::cerr << "property failure: " << e.what() << "\n";
    return 1;
  } catch (const StuckCollapse& e) {
    std::cerr << "property failure: " << e.what() << "\n";
    return 1;
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
  return 2;
}
