#include <iostream>

#include <CLI11.hpp>

#include "commands.hpp"

int main(int argc, char** argv) {
  legcorner::cli::Options opt;
  CLI::App app{"Corner singularities of div[mu(|grad u|) grad u] = 0 via the Legendre transform"};
  app.require_subcommand(1, 1);
  app.add_option("--config", opt.config_path, "JSON config file");
  app.add_option("--out", opt.out_dir, "output directory")->capture_default_str();
  app.add_option("--format", opt.format, "csv or json (curves and surfaces)")
      ->check(CLI::IsMember({"csv", "json"}))
      ->capture_default_str();
  app.add_option("--set", opt.sets, "override, e.g. params.m0=0.1 (repeatable)");
  app.add_flag("--seed-free", opt.seed_free, "assert that no randomness is used");
  app.fallthrough();
  for (const char* name : {"series", "surface", "solve", "sweep"}) {
    app.add_subcommand(name)->callback([&opt, name] { opt.command = name; });
  }
  app.get_subcommand("series")->description("tabulate a radial series");
  app.get_subcommand("surface")->description("sample u(x, y) through the hodograph map");
  app.get_subcommand("solve")->description("adapted vs plain finite-volume solve with error report");
  app.get_subcommand("sweep")->description("parallel solves over one config key");
  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : legcorner::cli::kExitConfig;
  }
  return legcorner::cli::run(opt, std::cout, std::cerr);
}
