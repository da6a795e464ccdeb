#include <iostream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "cz/commands.hpp"
#include "cz/errors.hpp"
#include "cz/fixtures.hpp"

namespace {

struct Options {
  std::string surface;
  std::string params;
  std::string profile;
  std::string grid = "128x128";
  std::vector<std::string> tolerances;
  std::string out;
  int expect_index = 0;
};

void add_common(CLI::App& sub, Options& opts) {
  sub.add_option("--surface", opts.surface, "fixture name, or 'rotational' for transform");
  sub.add_option("--params", opts.params, "comma separated surface parameters");
  sub.add_option("--profile", opts.profile, "const:<H0> | linear:<c>,<eps> | sqrt:<c> | table:<path>");
  sub.add_option("--grid", opts.grid, "grid size NUxNV")->capture_default_str();
  sub.add_option("--tol", opts.tolerances, "check tolerance override name=value ('all' for every check)");
  sub.add_option("--out", opts.out, "output directory for report.json and CSV tables");
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Codazzi pair, Hopf differential and special Weingarten surface toolkit"};
  app.require_subcommand(1);
  app.set_version_flag("--version", CZ_VERSION_STRING);
  Options opts;
  std::string fixtures;
  for (const std::string& name : cz::fixture_names()) fixtures += (fixtures.empty() ? "" : ", ") + name;

  CLI::App* verify = app.add_subcommand("verify", "invariant suite on a fixture (" + fixtures + ")");
  CLI::App* transform = app.add_subcommand("transform", "Bryant transform, closure, flat metric and recovery");
  CLI::App* generate = app.add_subcommand("generate", "rotational special Weingarten profile (params r0,theta0,s_max)");
  CLI::App* grove = app.add_subcommand("grove", "Grove decomposition in a II-isothermal chart");
  CLI::App* index = app.add_subcommand("index", "Hopf foliation index around an umbilic pole");
  for (CLI::App* sub : {verify, transform, generate, grove, index}) add_common(*sub, opts);
  CLI::Option* expect = index->add_option("--expect-index", opts.expect_index, "expected foliation index");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e) == 0 ? 0 : 1;
  }

  try {
    cz::RunConfig config;
    config.command = cz::parse_command(app.get_subcommands().front()->get_name());
    config.surface = opts.surface;
    config.params = cz::parse_params(opts.params);
    if (!opts.profile.empty()) config.profile = opts.profile;
    std::tie(config.nu, config.nv) = cz::parse_grid(opts.grid);
    for (const std::string& t : opts.tolerances) config.tolerances.insert(cz::parse_tolerance(t));
    config.out_dir = opts.out;
    if (*expect) config.expect_index = opts.expect_index;
    return cz::run(config, std::cout);
  } catch (const cz::Error& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  }
}
