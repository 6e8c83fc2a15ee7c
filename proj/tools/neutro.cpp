// neutro: command-line front end over the neutrosophic choice library.
//
//   neutro <command> <document.json> [--seed N] [--bound N] [--horizon D]
//          [--count K] [--threshold num/den] [--output PATH]

#include <fstream>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>

#include "neutro/cli.hpp"
#include "neutro/error.hpp"

int main(int argc, char** argv) {
  CLI::App app{"Neutrosophic choice functions: partitions, compensation, tree paths, "
               "maximal elements"};
  app.set_version_flag("--version", "neutro 0.1.0");

  std::string command;
  std::string document;
  std::string output;
  std::string threshold;
  neutro::cli::RunOptions opts;

  app.add_option("command", command, "Operation to run")
      ->required()
      ->check(CLI::IsMember(neutro::cli::commands()));
  app.add_option("document", document, "Input document (JSON)")->required();
  app.add_option("--seed", opts.seed, "Seed for generated triplets");
  app.add_option("--bound", opts.bound, "Denominator bound for generated triplets");
  app.add_option("--horizon", opts.horizon, "Override the tree depth horizon")
      ->check(CLI::PositiveNumber);
  app.add_option("--count", opts.count, "Number of paths for enumerate-paths")
      ->check(CLI::PositiveNumber);
  app.add_option("--threshold", threshold, "Threshold p as num/den for classify");
  app.add_option("--output", output, "Write output here instead of stdout");

  CLI11_PARSE(app, argc, argv);

  neutro::cli::RunResult result;
  std::ifstream in(document, std::ios::binary);
  if (!in) {
    result.exit_code = neutro::cli::kExitSchemaError;
    result.output = {{"command", command},
                     {"error", {{"kind", "ParseError"},
                                {"message", "cannot open document"},
                                {"where", document}}}};
  } else {
    std::ostringstream buf;
    buf << in.rdbuf();
    try {
      if (!threshold.empty()) opts.threshold = neutro::Rational::parse(threshold);
      result = neutro::cli::run_text(command, buf.str(), opts);
    } catch (const neutro::Error& e) {
      result.exit_code = neutro::cli::kExitSchemaError;
      result.output = {{"command", command},
                       {"error", {{"kind", std::string(neutro::to_string(e.kind()))},
                                  {"message", e.detail()},
                                  {"where", "--threshold"}}}};
    }
  }

  const std::string text = result.text();
  if (output.empty()) {
    std::cout << text;
  } else {
    std::ofstream out(output, std::ios::binary);
    if (!out) {
      std::cerr << "cannot write " << output << "\n";
      return neutro::cli::kExitSchemaError;
    }
    out << text;
  }
  return result.exit_code;
}
