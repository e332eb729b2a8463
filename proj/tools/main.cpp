#include <iostream>
#include <map>

#include <CLI11.hpp>

#include "commands.hpp"
#include "hyperperc/version.hpp"

using namespace hyperperc;
using namespace hyperperc::cli;

namespace {

struct FlagSet {
  std::string config_file;
  // key -> raw value, applied on top of the config file.
  std::map<std::string, std::string> values;
};

void add_common(CLI::App* app, FlagSet& flags) {
  app->add_option("--config", flags.config_file, "key = value config file");
  struct Flag {
    const char* name;
    const char* key;
    const char* help;
  };
  static const Flag kFlags[] = {
      {"--symbol", "symbol", "Schlafli symbol P,Q"},
      {"--radius", "radius", "patch radius (tiling gen, render)"},
      {"--radii", "radii", "comma-separated patch radii (sweep)"},
      {"--pmin", "pmin", "lowest grid p"},
      {"--pmax", "pmax", "highest grid p"},
      {"--steps", "steps", "number of grid points"},
      {"--seeds", "seeds", "number of seeds"},
      {"--seed-base", "seed_base", "first seed"},
      {"--tau", "tau", "giant-candidate threshold, 0 = default"},
      {"--sigma", "sigma", "cluster size floor"},
      {"--out", "out", "output directory"},
      {"--max-vertices", "max_vertices", "vertex cap of generated patches"},
  };
  for (const Flag& f : kFlags) app->add_option(f.name, flags.values[f.key], f.help);
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Percolation experiments on hyperbolic {p,q} tilings"};
  app.set_version_flag("--version", kVersion);
  app.require_subcommand(1);

  FlagSet gen_flags, sweep_flags, boundary_flags, render_flags;
  auto* tiling = app.add_subcommand("tiling", "tiling patches");
  tiling->require_subcommand(1);
  auto* gen = tiling->add_subcommand("gen", "generate a patch and write it with layer statistics");
  add_common(gen, gen_flags);

  auto* sweep_cmd = app.add_subcommand("sweep", "coupled parameter sweeps and threshold estimates");
  add_common(sweep_cmd, sweep_flags);

  auto* boundary = app.add_subcommand("boundary", "end chains, limit directions and halfplane counts");
  add_common(boundary, boundary_flags);
  boundary->add_option("--p", boundary_flags.values["boundary_p"], "comma-separated p values or 'auto'");
  boundary->add_option("--estimates", boundary_flags.values["estimates"], "sweep JSON for --p auto");
  boundary->add_option("--boundary-radius", boundary_flags.values["boundary_radius"], "patch radius");
  boundary->add_option("--chain-radii", boundary_flags.values["chain_radii"], "comma-separated ascending radii");

  auto* render = app.add_subcommand("render", "SVG of a patch in the Poincare disc");
  add_common(render, render_flags);
  render->add_option("--graph", render_flags.values["graph"], "tiling file to draw");
  render->add_option("--p", render_flags.values["render_p"], "draw a sample at this p");
  render->add_option("--seed", render_flags.values["render_seed"], "sample seed");
  render->add_option("--arcs", render_flags.values["render_arcs"], "mark giant-candidate boundary arcs (true/false)");
  render->add_option("--chain-radii", render_flags.values["chain_radii"], "radii for the arc marks");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  // Flags whose name differs from their config key.
  auto resolve_for = [](CLI::App* cmd, FlagSet& flags) {
    ExperimentConfig config;
    if (!flags.config_file.empty()) config = load_config(flags.config_file, config);
    static const std::map<std::string, std::string> kFlagOf = {
        {"seed_base", "--seed-base"}, {"boundary_p", "--p"},   {"render_p", "--p"},
        {"render_seed", "--seed"},    {"render_arcs", "--arcs"}, {"boundary_radius", "--boundary-radius"},
        {"chain_radii", "--chain-radii"}, {"max_vertices", "--max-vertices"}};
    for (const auto& [key, value] : flags.values) {
      auto it = kFlagOf.find(key);
      std::string flag = it != kFlagOf.end() ? it->second : "--" + key;
      if (cmd->count(flag) > 0) apply_setting(config, key, value);
    }
    return config;
  };

  try {
    if (gen->parsed()) {
      cmd_tiling_gen(resolve_for(gen, gen_flags), std::cout);
    } else if (sweep_cmd->parsed()) {
      cmd_sweep(resolve_for(sweep_cmd, sweep_flags), std::cout);
    } else if (boundary->parsed()) {
      cmd_boundary(resolve_for(boundary, boundary_flags), std::cout);
    } else if (render->parsed()) {
      cmd_render(resolve_for(render, render_flags), std::cout);
    }
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << '\n';
    return exit_code(e.kind());
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 3;
  }
  return 0;
}
