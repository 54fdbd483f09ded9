#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>

#include "berezin/types.hpp"

namespace berezin::cli {

struct RunConfig {
  std::string command;
  std::string symbol_path;
  int truncation = kDefaultTruncation;
  std::optional<double> tol;
  int radial = 64;
  int angular = 256;
  std::optional<Complex> z;
  std::string mode = "exact";   // exact | numeric | both
  std::string output;           // empty: standard output
  std::string format = "json";  // json | csv
  std::uint64_t seed = 7;
  int kmax = 8;
  int rank_bound = 0;
};

enum ExitCode : int { kOk = 0, kFailure = 1, kSchema = 2, kNumeric = 3 };

/// Parses "re,im" (or a lone real number).
Complex parse_point(const std::string& text);

/// Runs one command. Results go to cfg.output or `out`, diagnostics to `err`.
int run(const RunConfig& cfg, std::ostream& out, std::ostream& err);

}  // namespace berezin::cli
