#include <iostream>
#include <string>

#include <CLI11.hpp>

#include <mdyck/cli.hpp>

int main(int argc, char** argv) {
  CLI::App app{"Markov-Dyck shifts of rotationally homogeneous graphs"};
  app.fallthrough();
  app.require_subcommand(1);
  app.set_config("--config", "",
                 "key=value file mirroring the flags; quote values holding commas");

  mdyck::RunConfig cfg;
  app.add_option("--data", cfg.data, "level counts, e.g. 1,2 (last entry >= 2)");
  app.add_option("--graph", cfg.graph_name, "named graph: fibonacci or dyck:N");
  app.add_option("--n", cfg.n_max, "largest period for census rows");
  app.add_option("--order", cfg.order, "power series truncation order");
  app.add_option("--seed", cfg.seed, "PRNG seed");
  app.add_option("--steps", cfg.steps, "sample length");
  app.add_option("--format", cfg.format, "output format: json, csv, text, dot");
  app.add_option("--budget", cfg.budget, "census work budget (visited prefixes)");

  app.add_subcommand("graph", "build and validate a graph, or export it as dot");
  app.add_subcommand("entropy", "certified entropy with closed-form cross-checks");
  app.add_subcommand("zeta", "zeta function series against the periodic-point census");
  app.add_subcommand("census", "brute-force periodic point counts");
  app.add_subcommand("conjugacy", "encode/decode round trips and resolving checks");
  app.add_subcommand("sample", "maximal-entropy sampling and measure checks");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? 0 : static_cast<int>(mdyck::ExitStatus::input_error);
  }

  cfg.command = app.get_subcommands().front()->get_name();
  return mdyck::run(cfg, std::cout);
}
