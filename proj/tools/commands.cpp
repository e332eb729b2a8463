#include "commands.hpp"

#include <openssl/evp.h>
#include <sys/resource.h>

#include <chrono>
#include <cmath>
#include <fstream>
#include <numbers>
#include <ostream>
#include <sstream>

#include <json.hpp>

#include "hyperperc/boundary.hpp"
#include "hyperperc/percolation.hpp"
#include "hyperperc/tiling_io.hpp"
#include "hyperperc/version.hpp"
#include "svg.hpp"

namespace hyperperc::cli {

namespace fs = std::filesystem;
using Json = nlohmann::ordered_json;

int exit_code(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::Io: return 4;
    case ErrorKind::EstimatorDegenerate:
    case ErrorKind::MappingNotFound:
    case ErrorKind::UnstableClassification: return 3;
    default: return 2;
  }
}

std::string sha256_file(const fs::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorKind::Io, "cannot read " + path.string());
  EVP_MD_CTX* ctx = EVP_MD_CTX_new();
  EVP_DigestInit_ex(ctx, EVP_sha256(), nullptr);
  char buf[1 << 16];
  while (in.read(buf, sizeof buf) || in.gcount() > 0) EVP_DigestUpdate(ctx, buf, static_cast<std::size_t>(in.gcount()));
  unsigned char md[EVP_MAX_MD_SIZE];
  unsigned int len = 0;
  EVP_DigestFinal_ex(ctx, md, &len);
  EVP_MD_CTX_free(ctx);
  static const char* hex = "0123456789abcdef";
  std::string out;
  for (unsigned int i = 0; i < len; ++i) {
    out += hex[md[i] >> 4];
    out += hex[md[i] & 15];
  }
  return out;
}

namespace {

class Run {
 public:
  Run(const ExperimentConfig& config, std::string command)
      : config_(config), command_(std::move(command)), start_(std::chrono::steady_clock::now()) {
    config_.validate();
    std::error_code ec;
    fs::create_directories(config_.out, ec);
    if (ec) throw Error(ErrorKind::Io, "cannot create " + config_.out.string() + ": " + ec.message());
  }

  fs::path path(const std::string& name) const { return config_.out / name; }

  void write(const std::string& name, const std::string& content) {
    fs::path p = path(name);
    std::ofstream out(p, std::ios::binary);
    out << content;
    out.close();
    if (!out) throw Error(ErrorKind::Io, "cannot write " + p.string());
    files_.push_back(p);
  }

  void write_json(const std::string& name, const Json& j) { write(name, j.dump(2) + "\n"); }

  /// Writes the manifest and returns every path written.
  std::vector<fs::path> finish() {
    Json m;
    m["version"] = kVersion;
    m["command"] = command_;
    m["config"] = config_echo(config_);
    Json files = Json::array();
    for (const auto& p : files_) {
      files.push_back({{"path", p.filename().string()}, {"sha256", sha256_file(p)}, {"bytes", fs::file_size(p)}});
    }
    m["files"] = files;
    m["wall_seconds"] = std::chrono::duration<double>(std::chrono::steady_clock::now() - start_).count();
    rusage ru{};
    getrusage(RUSAGE_SELF, &ru);
    m["peak_rss_kb"] = ru.ru_maxrss;
    std::vector<fs::path> out = files_;
    write_json("manifest_" + command_ + ".json", m);
    out.push_back(files_.back());
    return out;
  }

  static Json config_echo(const ExperimentConfig& c) {
    // Everything except the output directory, which never affects results.
    Json j;
    j["symbol"] = {c.symbol.p, c.symbol.q};
    j["radius"] = c.radius;
    j["radii"] = c.radii;
    j["pmin"] = c.pmin;
    j["pmax"] = c.pmax;
    j["steps"] = c.steps;
    j["seeds"] = c.seeds;
    j["seed_base"] = c.seed_base;
    j["tau"] = c.tau;
    j["sigma"] = c.sigma;
    j["max_vertices"] = c.max_vertices;
    j["boundary_p"] = c.boundary_auto ? Json("auto") : Json(c.boundary_p);
    j["estimates"] = c.estimates ? Json(c.estimates->string()) : Json(nullptr);
    j["boundary_radius"] = c.effective_boundary_radius();
    j["chain_radii"] = c.chain_radii;
    j["graph"] = c.graph ? Json(c.graph->string()) : Json(nullptr);
    j["render_p"] = c.render_p ? Json(*c.render_p) : Json(nullptr);
    j["render_seed"] = c.render_seed;
    j["render_arcs"] = c.render_arcs;
    j["prng"] = "splitmix64(mix(seed) + (edge+1)*0x9e3779b97f4a7c15), open iff mark < p";
    return j;
  }

  const ExperimentConfig& config() const { return config_; }

 private:
  ExperimentConfig config_;
  std::string command_;
  std::chrono::steady_clock::time_point start_;
  std::vector<fs::path> files_;
};

std::string symbol_tag(SchlafliSymbol s) { return std::to_string(s.p) + "_" + std::to_string(s.q); }

Json estimate_json(const ThresholdEstimate& est) {
  Json j;
  j["value"] = est.value;
  j["uncertainty"] = est.uncertainty;
  j["method"] = est.method;
  Json cs = Json::array();
  for (const auto& c : est.crossings) {
    cs.push_back({{"radius", c.radius}, {"value", c.value}, {"standard_error", c.standard_error}});
  }
  j["crossings"] = cs;
  if (!est.half_crossings.empty()) {
    Json hs = Json::array();
    for (const auto& h : est.half_crossings) hs.push_back(h ? Json(*h) : Json(nullptr));
    j["root_to_boundary_half_crossings"] = hs;
  }
  if (!est.mean_giants.empty()) j["mean_giants"] = est.mean_giants;
  return j;
}

}  // namespace

std::vector<fs::path> cmd_tiling_gen(const ExperimentConfig& config, std::ostream& log) {
  Run run(config, "tiling_gen");
  TilingGraph g = generate_tiling(config.symbol, config.radius, {config.max_vertices});
  const std::string base = "tiling_" + symbol_tag(config.symbol) + "_R" + std::to_string(config.radius);
  std::ostringstream graph_text;
  write_tiling(graph_text, g);
  run.write(base + ".txt", graph_text.str());
  auto layers = g.layer_sizes();
  Json stats;
  stats["version"] = kVersion;
  stats["symbol"] = {config.symbol.p, config.symbol.q};
  stats["radius"] = config.radius;
  stats["vertices"] = g.vertex_count();
  stats["edges"] = g.edge_count();
  stats["faces"] = g.face_count();
  stats["layer_sizes"] = layers;
  stats["fingerprint"] = g.fingerprint();
  run.write_json(base + ".json", stats);
  log << "vertices=" << g.vertex_count() << " edges=" << g.edge_count() << " faces=" << g.face_count() << " layers=";
  for (std::size_t i = 0; i < layers.size(); ++i) log << (i ? "," : "") << layers[i];
  log << '\n';
  return run.finish();
}

std::vector<fs::path> cmd_sweep(const ExperimentConfig& config, std::ostream& log) {
  Run run(config, "sweep");
  if (config.radii.empty()) throw Error(ErrorKind::InvalidSweepSpec, "no radii given");
  std::vector<int> radii = config.radii;
  std::sort(radii.begin(), radii.end());
  radii.erase(std::unique(radii.begin(), radii.end()), radii.end());

  SweepSpec spec;
  spec.p_grid = config.p_grid();
  spec.seeds = config.seed_list();
  spec.tau = config.tau;

  std::vector<SweepResult> results;
  Json per_radius = Json::array();
  for (int r : radii) {
    TilingGraph g = generate_tiling(config.symbol, r, {config.max_vertices});
    SweepResult res = sweep(g, spec);
    std::string csv = "p,seed,largest,second,giants,root_to_boundary,pairs_connected,unique_giant\n";
    for (std::size_t s = 0; s < res.seeds.size(); ++s) {
      for (std::size_t k = 0; k < res.p_grid.size(); ++k) {
        const SweepPoint& pt = res.traces[s][k];
        csv += format_real(res.p_grid[k]) + "," + std::to_string(res.seeds[s]) + "," + std::to_string(pt.largest) + "," +
               std::to_string(pt.second) + "," + std::to_string(pt.giants) + "," + (pt.root_to_boundary ? "1" : "0") +
               "," + std::to_string(pt.pairs_connected) + "," + (pt.unique_giant ? "1" : "0") + "\n";
      }
    }
    run.write("sweep_R" + std::to_string(r) + ".csv", csv);
    Json j;
    j["radius"] = r;
    j["vertices"] = res.vertex_count;
    j["edges"] = res.edge_count;
    j["outer_vertices"] = res.outer_count;
    j["fingerprint"] = res.graph_fingerprint;
    j["tau"] = res.tau;
    j["anchors"] = res.anchors.size();
    j["p_grid"] = res.p_grid;
    j["mean_largest"] = res.mean([](const SweepPoint& p) { return static_cast<double>(p.largest); });
    j["mean_second"] = res.mean([](const SweepPoint& p) { return static_cast<double>(p.second); });
    j["mean_giants"] = res.mean([](const SweepPoint& p) { return static_cast<double>(p.giants); });
    j["root_to_boundary"] = res.mean([](const SweepPoint& p) { return p.root_to_boundary ? 1.0 : 0.0; });
    const double pairs = static_cast<double>(std::max<std::size_t>(1, res.anchor_pairs()));
    j["pairs_connected_fraction"] = res.mean([&](const SweepPoint& p) { return static_cast<double>(p.pairs_connected) / pairs; });
    j["unique_giant"] = res.mean([](const SweepPoint& p) { return p.unique_giant ? 1.0 : 0.0; });
    per_radius.push_back(j);
    log << "sweep radius " << r << ": " << res.vertex_count << " vertices, " << res.seeds.size() << " seeds, tau "
        << res.tau << '\n';
    results.push_back(std::move(res));
  }

  Json out;
  out["version"] = kVersion;
  out["config"] = Run::config_echo(config);
  out["radii"] = per_radius;
  Json estimates;
  for (auto [name, fn] : {std::pair{"p_c", &estimate_pc}, std::pair{"p_u", &estimate_pu}}) {
    try {
      estimates[name] = estimate_json(fn(results));
    } catch (const Error& e) {
      estimates[name] = nullptr;
      estimates[std::string(name) + "_error"] = e.what();
    }
  }
  out["estimates"] = estimates;
  run.write_json("sweep.json", out);
  if (!estimates["p_c"].is_null() && !estimates["p_u"].is_null()) {
    log << "p_c = " << estimates["p_c"]["value"].get<double>() << " +- "
        << estimates["p_c"]["uncertainty"].get<double>() << ", p_u = " << estimates["p_u"]["value"].get<double>()
        << " +- " << estimates["p_u"]["uncertainty"].get<double>() << '\n';
  }
  return run.finish();
}

double middle_phase_p(const fs::path& sweep_json) {
  std::ifstream in(sweep_json);
  if (!in) throw Error(ErrorKind::MissingEstimates, "no prior sweep estimates at " + sweep_json.string());
  Json j;
  try {
    j = Json::parse(in);
  } catch (const std::exception& e) {
    throw Error(ErrorKind::MissingEstimates, "unreadable sweep estimates " + sweep_json.string());
  }
  const Json* est = j.contains("estimates") ? &j["estimates"] : nullptr;
  auto value_of = [&](const char* key) {
    if (est == nullptr || !est->contains(key) || (*est)[key].is_null() || !(*est)[key].contains("value")) {
      throw Error(ErrorKind::MissingEstimates, std::string(key) + " missing from " + sweep_json.string());
    }
    return (*est)[key]["value"].get<double>();
  };
  double pc = value_of("p_c");
  double pu = value_of("p_u");
  return (pc + pu) / 2;
}

std::vector<fs::path> cmd_boundary(const ExperimentConfig& config, std::ostream& log) {
  Run run(config, "boundary");
  std::vector<double> ps = config.boundary_p;
  Json source;
  if (config.boundary_auto) {
    fs::path est = config.estimates.value_or(config.out / "sweep.json");
    ps = {middle_phase_p(est)};
    source = "auto";
  } else {
    source = "config";
  }
  if (ps.empty()) throw Error(ErrorKind::InvalidInput, "no boundary p values given");

  const int patch_radius = config.effective_boundary_radius();
  TilingGraph g = generate_tiling(config.symbol, patch_radius, {config.max_vertices});
  const std::size_t tau = config.tau > 0 ? config.tau : default_tau(g);
  const OuterCircle circle(g);
  const Halfplane half(0.0, std::numbers::pi);
  const auto seeds = config.seed_list();

  std::string csv = "p,seed,cluster,chain,radius,arc_count,angular_diameter\n";
  Json per_p = Json::array();
  for (double p : ps) {
    OnePointStatistic stat;
    stat.p = p;
    stat.radii = config.chain_radii;
    std::vector<double> gaps;
    std::vector<std::size_t> half_counts;
    std::size_t stable = 0;
    for (std::uint64_t seed : seeds) {
      ClusterDecomposition dec = clusters(g, sample(g, p, seed));
      auto chains = giant_chains(dec, g, config.chain_radii, tau, circle);
      std::uint32_t prev_cluster = kNoIndex;
      std::size_t chain_index = 0;
      for (const BoundaryArcEstimate& chain : chains) {
        chain_index = chain.cluster == prev_cluster ? chain_index + 1 : 0;
        prev_cluster = chain.cluster;
        for (std::size_t k = 0; k < chain.arcs.size(); ++k) {
          csv += format_real(p) + "," + std::to_string(seed) + "," + std::to_string(dec.ids[chain.cluster]) + "," +
                 std::to_string(chain_index) + "," + std::to_string(chain.radii[k]) + "," +
                 std::to_string(chain.arcs[k].arc_count) + "," + format_real(chain.arcs[k].angular_diameter) + "\n";
        }
        if (chain.live && chain.arcs.size() >= 2 &&
            chain.arcs.back().arc_count == chain.arcs[chain.arcs.size() - 2].arc_count) {
          ++stable;
        }
      }
      stat.add(chains, giant_candidate_count(dec, tau));
      gaps.push_back(limit_direction_density(dec, g, config.sigma).largest_gap);
      half_counts.push_back(halfplane_cluster_count(dec, g, half, config.sigma));
    }
    stat.finish();

    Json j;
    j["p"] = p;
    j["giant_candidates_mean"] = static_cast<double>(stat.giant_candidates) / static_cast<double>(seeds.size());
    Json radii = Json::array();
    for (std::size_t k = 0; k < stat.radii.size(); ++k) {
      const Quantiles& q = stat.per_radius_quantiles[k];
      radii.push_back({{"radius", stat.radii[k]}, {"count", q.count}, {"median", q.median}, {"p90", q.p90}});
    }
    bool decreasing = stat.live_chains > 0;
    for (std::size_t k = 1; k < stat.per_radius_quantiles.size(); ++k) {
      decreasing = decreasing && stat.per_radius_quantiles[k].median < stat.per_radius_quantiles[k - 1].median;
    }
    j["one_point"] = {{"per_radius", radii},
                      {"terminal_median", stat.terminal.median},
                      {"terminal_p90", stat.terminal.p90},
                      {"live_chains", stat.live_chains},
                      {"dead_chains", stat.dead_chains},
                      {"monotonicity_violations", stat.monotonicity_violations},
                      {"medians_decreasing", decreasing},
                      {"arc_count_stable_fraction",
                       stat.live_chains > 0 ? static_cast<double>(stable) / static_cast<double>(stat.live_chains) : 0.0}};
    std::vector<double> sorted_gaps = gaps;
    j["limit_directions"] = {{"sigma", config.sigma},
                             {"largest_gap_median", quantiles(sorted_gaps).median},
                             {"largest_gap_per_seed", gaps}};
    double mean_half = 0;
    for (auto c : half_counts) mean_half += static_cast<double>(c);
    j["halfplane"] = {{"from", 0.0},
                      {"to", std::numbers::pi},
                      {"sigma", config.sigma},
                      {"mean_count", mean_half / static_cast<double>(seeds.size())},
                      {"count_per_seed", half_counts}};
    per_p.push_back(j);
    log << "boundary p=" << p << ": " << stat.giant_candidates << " giant candidates, " << stat.live_chains
        << " live chains, terminal median " << stat.terminal.median << '\n';
  }
  run.write("boundary.csv", csv);
  Json out;
  out["version"] = kVersion;
  out["config"] = Run::config_echo(config);
  out["p_source"] = source;
  out["patch"] = {{"radius", patch_radius},
                  {"vertices", g.vertex_count()},
                  {"edges", g.edge_count()},
                  {"outer_vertices", g.outer_vertices().size()},
                  {"tau", tau}};
  out["results"] = per_p;
  run.write_json("boundary.json", out);
  return run.finish();
}

std::vector<fs::path> cmd_render(const ExperimentConfig& config, std::ostream& log) {
  Run run(config, "render");
  TilingGraph g = config.graph ? load_tiling(*config.graph)
                               : generate_tiling(config.symbol, config.radius, {config.max_vertices});
  RenderInput in;
  in.graph = &g;
  PercolationSample s;
  ClusterDecomposition dec;
  std::vector<ArcCover> arcs;
  if (config.render_p) {
    s = sample(g, *config.render_p, config.render_seed);
    dec = clusters(g, s);
    in.sample = &s;
    in.clusters = &dec;
    if (config.render_arcs && g.radius() > 0) {
      std::vector<int> radii;
      for (int r : config.chain_radii) {
        if (r < g.radius()) radii.push_back(r);
      }
      if (radii.empty()) radii.push_back(g.radius() - 1);
      const std::size_t tau = config.tau > 0 ? config.tau : default_tau(g);
      for (const auto& chain : giant_chains(dec, g, radii, tau, OuterCircle(g))) {
        if (chain.live) arcs.push_back(chain.arcs.back());
      }
    }
  }
  in.arcs = arcs;
  run.write("render.svg", render_svg(in));
  log << "rendered " << g.vertex_count() << " vertices, " << arcs.size() << " arc marks\n";
  return run.finish();
}

}  // namespace hyperperc::cli
