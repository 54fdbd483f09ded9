#include <iostream>

#include <CLI11.hpp>

#include "berezin/error.hpp"
#include "commands.hpp"

int main(int argc, char** argv) {
  using berezin::cli::RunConfig;
  RunConfig cfg;
  std::string z_text;
  double tol = 0.0;

  CLI::App app{"Berezin transforms on the unit disk: exact and numeric transforms, rank, moments, recovery"};
  app.add_option("command", cfg.command, "transform | rank | moments | recover | decompose | verify")
      ->required()
      ->check(CLI::IsMember({"transform", "rank", "moments", "recover", "decompose", "verify"}));
  app.add_option("--symbol", cfg.symbol_path, "symbol or form JSON file");
  app.add_option("--trunc", cfg.truncation, "series truncation M");
  auto* tol_opt = app.add_option("--tol", tol, "tolerance (command specific default)");
  app.add_option("--radial", cfg.radial, "radial quadrature points");
  app.add_option("--angular", cfg.angular, "angular quadrature points");
  auto* z_opt = app.add_option("--z", z_text, "single evaluation point \"re,im\"");
  app.add_option("--mode", cfg.mode, "exact | numeric | both");
  app.add_option("--output", cfg.output, "output file (default: standard output)");
  app.add_option("--format", cfg.format, "json | csv");
  app.add_option("--seed", cfg.seed, "seed for the verify suite");
  app.add_option("--kmax", cfg.kmax, "largest moment index");
  app.add_option("--rank-bound", cfg.rank_bound, "cap on the pencil rank (0: 2 kmax / 3)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : berezin::cli::kSchema;
  }
  if (*tol_opt) cfg.tol = tol;
  if (*z_opt) {
    try {
      cfg.z = berezin::cli::parse_point(z_text);
    } catch (const berezin::SchemaError& e) {
      std::cerr << e.what() << "\n";
      return berezin::cli::kSchema;
    }
  }
  return berezin::cli::run(cfg, std::cout, std::cerr);
}
