// Command-line front end for the semistatic library.

#include <iostream>
#include <string>

#include <CLI11.hpp>

#include "semistatic/cli.hpp"

int main(int argc, char** argv) {
  CLI::App app{"Exact analysis of semistatic trading strategies"};
  app.require_subcommand(1, 1);

  semistatic::cli::RunConfig config;
  struct Entry {
    const char* name;
    const char* help;
    const char* inputs;
  };
  const Entry entries[] = {
      {"decompose", "Positions (h, g) reproducing v on E", "E.json v.json"},
      {"check", "Decide whether v is semistatic on E", "E.json v.json"},
      {"dof", "Degrees of freedom of E (brute force and block count)", "E.json..."},
      {"limits", "Normalised positions along a strategy sequence", "E.json sequence.json"},
      {"mp-build", "Multi-period system matrix with labels", "instance.json..."},
      {"mp-rank", "Exact column rank of the multi-period system", "instance.json..."},
      {"mp-det", "Closed-form single-stock determinant against elimination", "instance.json..."},
      {"mp-recover", "Positions on the cuboid from values V", "instance.json V.json"},
      {"mp-anchor", "Anchors of a full-measure set in a finite product space", "measure.json..."},
      {"oracle", "Brute-force position system of E, solved for v if given", "E.json [v.json]"},
  };
  for (const auto& entry : entries) {
    CLI::App* sub = app.add_subcommand(entry.name, entry.help);
    sub->add_option("inputs", config.inputs, entry.inputs)->required()->check(CLI::ExistingFile);
    sub->add_option("-o,--output", config.output, "Write the report to this file");
    sub->add_flag("--csv", config.csv, "Emit the position table as CSV");
    sub->add_flag("--meta", config.meta, "Add a timestamp to the report");
    sub->add_option("-j,--jobs", config.jobs, "Threads for batches of input files")->check(CLI::PositiveNumber);
    sub->callback([&config, sub] { config.command = sub->get_name(); });
  }

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : semistatic::cli::kExitError;
  }
  return semistatic::cli::run(config, std::cout, std::cerr);
}
