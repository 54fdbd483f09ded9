#include "commands.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <sstream>

#include "berezin/error.hpp"
#include "berezin/io.hpp"
#include "berezin/rank.hpp"
#include "berezin/recovery.hpp"
#include "berezin/transform.hpp"
#include "suite.hpp"

namespace berezin::cli {

namespace {

struct Input {
  Symbol symbol;
  std::optional<Theorem2Form> form;  // set when the file holds a form
};

Input load_input(const std::string& path) {
  if (path.empty()) throw SchemaError("--symbol", "no input file given");
  std::ifstream in(path);
  if (!in) throw SchemaError("--symbol", "cannot open '" + path + "'");
  std::stringstream buf;
  buf << in.rdbuf();
  Json j;
  try {
    j = Json::parse(buf.str());
  } catch (const Json::parse_error& e) {
    throw SchemaError("", std::string("invalid JSON: ") + e.what());
  }
  Input input;
  if (j.is_object() && j.contains("nodes")) {
    input.form = parse_form(j);
    input.symbol = synthesize_symbol(*input.form);
  } else {
    input.symbol = parse_symbol(j);
  }
  return input;
}

void check_config(const RunConfig& cfg) {
  if (cfg.tol && !(*cfg.tol > 0.0)) throw SchemaError("--tol", "tolerance must be positive");
  if (cfg.radial < 8 || cfg.angular < 8) throw SchemaError("--radial/--angular", "rule sizes must be >= 8");
  if (cfg.truncation < 2 || cfg.truncation > kMaxTruncation) throw SchemaError("--trunc", "truncation outside [2, 1024]");
  if (cfg.mode != "exact" && cfg.mode != "numeric" && cfg.mode != "both") throw SchemaError("--mode", "expected exact, numeric or both");
  if (cfg.format != "json" && cfg.format != "csv") throw SchemaError("--format", "expected json or csv");
  if (cfg.kmax < 0 || cfg.kmax > 20) throw SchemaError("--kmax", "moment index outside [0, 20]");
}

QuadratureRule rule_of(const RunConfig& cfg) { return {cfg.radial, cfg.angular, 0.9}; }

/// Default polar sample grid: radii 0, 0.1, ..., 0.9 by 32 angles.
std::vector<Complex> sample_points(const RunConfig& cfg) {
  if (cfg.z) return {*cfg.z};
  std::vector<Complex> pts;
  for (int i = 0; i < 10; ++i)
    for (int j = 0; j < 32; ++j) pts.push_back(std::polar(0.1 * i, 2.0 * M_PI * j / 32.0));
  return pts;
}

/// Truncation at which the exact series is converged to rounding at the samples.
int eval_truncation(const Symbol& s, const std::vector<Complex>& pts, int configured) {
  double r = 0.0;
  for (const auto& z : pts) r = std::max(r, std::abs(z));
  double amax = 0.0;
  for (const auto& atom : s.atoms) amax = std::max(amax, std::abs(atom.center));
  const double rho = std::max(r * std::max(amax, r), 1e-3);
  const int needed = static_cast<int>(std::ceil(std::log(1e-17) / std::log(rho))) + 8;
  return std::clamp(std::max(needed, configured), configured, kMaxTruncation);
}

std::string fmt17(double x) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

std::string samples_csv(const std::vector<Complex>& pts, const std::vector<Complex>& vals) {
  std::string s = "z_re,z_im,value_re,value_im\n";
  for (std::size_t i = 0; i < pts.size(); ++i) {
    s += fmt17(pts[i].real()) + "," + fmt17(pts[i].imag()) + "," + fmt17(vals[i].real()) + "," + fmt17(vals[i].imag()) + "\n";
  }
  return s;
}

Json samples_json(const std::vector<Complex>& pts, const std::vector<Complex>& vals) {
  Json arr = Json::array();
  for (std::size_t i = 0; i < pts.size(); ++i) arr.push_back({{"z", complex_to_json(pts[i])}, {"value", complex_to_json(vals[i])}});
  return arr;
}

struct Result {
  std::string text;
  int code = kOk;
};

Result cmd_transform(const RunConfig& cfg, std::ostream& err) {
  const Input in = load_input(cfg.symbol_path);
  const auto pts = sample_points(cfg);
  const bool want_exact = cfg.mode != "numeric";
  const bool want_numeric = cfg.mode != "exact";
  Result res;

  std::vector<Complex> exact_vals, numeric_vals;
  if (want_exact && (cfg.format == "csv" || cfg.z || want_numeric)) {
    const auto g = berezin_exact_symbol(in.symbol, eval_truncation(in.symbol, pts, cfg.truncation)).grid;
    for (const auto& z : pts) exact_vals.push_back(bidegree_eval(g, z));
  }
  if (want_numeric) {
    const QuadratureRule rule = rule_of(cfg);
    for (const auto& z : pts) numeric_vals.push_back(berezin_numeric(in.symbol, z, rule));
  }

  double deviation = 0.0;
  if (want_exact && want_numeric) {
    for (std::size_t i = 0; i < pts.size(); ++i) deviation = std::max(deviation, std::abs(numeric_vals[i] - exact_vals[i]));
    const double tol = cfg.tol.value_or(1e-6);
    err << "max |numeric - exact| = " << fmt17(deviation) << " (tol " << tol << ")\n";
    if (deviation > tol) res.code = kNumeric;
  }

  if (cfg.format == "csv") {
    res.text = samples_csv(pts, want_numeric ? numeric_vals : exact_vals);
    return res;
  }
  Json j;
  if (want_exact) {
    if (cfg.z || want_numeric) {
      j["exact"] = samples_json(pts, exact_vals);
    } else {
      j["grid"] = grid_to_json(berezin_exact_symbol(in.symbol, cfg.truncation).grid);
    }
  }
  if (want_numeric) j["numeric"] = samples_json(pts, numeric_vals);
  if (want_exact && want_numeric) j["max_deviation"] = deviation;
  res.text = j.dump(2) + "\n";
  return res;
}

Result cmd_rank(const RunConfig& cfg) {
  const Input in = load_input(cfg.symbol_path);
  const auto grid = berezin_exact_symbol(in.symbol, cfg.truncation).grid;
  const RankReport report = numerical_rank(grid, cfg.tol.value_or(1e-8));
  Json j = rank_report_to_json(report);
  if (report.rank == 1) {
    try {
      j["rank_one_structure"] = theoremA_to_json(theoremA_recover(grid, report.tol));
    } catch (const Error& e) {
      j["rank_one_structure"] = nullptr;
      j["rank_one_note"] = e.what();
    }
  }
  return {j.dump(2) + "\n", kOk};
}

Result cmd_moments(const RunConfig& cfg, std::ostream& err) {
  const Input in = load_input(cfg.symbol_path);
  Result res;
  std::optional<MomentMatrix> exact, numeric;
  if (cfg.mode != "numeric") {
    exact = moment_matrix_from_grid(berezin_exact_symbol(in.symbol, std::max(cfg.truncation, cfg.kmax + 1)).grid,
                                    cfg.kmax, cfg.kmax);
  }
  if (cfg.mode != "exact") numeric = moment_matrix(in.symbol, cfg.kmax, cfg.kmax, rule_of(cfg));
  Json j = moment_matrix_to_json(numeric ? *numeric : *exact);
  j["source"] = numeric ? "quadrature" : "exact_grid";
  if (exact && numeric) {
    const double dev = (exact->entries - numeric->entries).cwiseAbs().maxCoeff();
    const double tol = cfg.tol.value_or(1e-6);
    j["max_deviation"] = dev;
    err << "max |quadrature - exact grid| = " << fmt17(dev) << " (tol " << tol << ")\n";
    if (dev > tol) res.code = kNumeric;
  }
  res.text = j.dump(2) + "\n";
  return res;
}

Theorem2Recovery recover_from(const Symbol& s, const RunConfig& cfg, int kmax) {
  const auto grid = berezin_exact_symbol(s, cfg.truncation).grid;
  return recover_theorem2(grid, kmax, cfg.rank_bound);
}

Result cmd_recover(const RunConfig& cfg, std::ostream& err) {
  const Input in = load_input(cfg.symbol_path);
  // The pencil needs more moments than the moments command prints by default.
  const Theorem2Recovery r = recover_from(in.symbol, cfg, std::max(cfg.kmax, 20));
  Json j = serialize_form(r.fit.form);
  j["residual"] = r.fit.residual;
  j["condition"] = r.fit.condition;
  j["estimate"] = node_estimate_to_json(r.estimate);
  Result res{j.dump(2) + "\n", kOk};
  const double tol = cfg.tol.value_or(1e-6);
  if (r.fit.residual > tol) {
    err << "fit residual " << fmt17(r.fit.residual) << " above tol " << tol << "\n";
    res.code = kNumeric;
  }
  return res;
}

Result cmd_decompose(const RunConfig& cfg, std::ostream& err) {
  const Input in = load_input(cfg.symbol_path);
  const Theorem2Form form = in.form ? *in.form : recover_from(in.symbol, cfg, std::max(cfg.kmax, 20)).fit.form;
  const Decomposition d = decompose_theorem3(form, cfg.truncation);
  const double residual = max_abs_diff(decomposition_grid(d, cfg.truncation), theorem2_grid(form, cfg.truncation));
  std::vector<int> ranks;
  for (const auto& piece : d.pieces) ranks.push_back(numerical_rank(berezin_exact_symbol(piece.u, cfg.truncation).grid).rank);
  Json j = decomposition_to_json(d);
  j["piece_ranks"] = ranks;
  j["contract_residual"] = residual;
  Result res{j.dump(2) + "\n", kOk};
  const double tol = cfg.tol.value_or(1e-7);
  const bool ranks_ok = std::all_of(ranks.begin(), ranks.end(), [](int r) { return r == 1; });
  if (residual > tol || !ranks_ok) {
    err << "decomposition contract failed: residual " << fmt17(residual) << (ranks_ok ? "" : ", piece rank != 1") << "\n";
    res.code = kNumeric;
  }
  return res;
}

Result cmd_verify(const RunConfig& cfg) {
  const auto checks = suite::verify_suite(cfg.seed, cfg.tol, rule_of(cfg));
  const bool ok = std::all_of(checks.begin(), checks.end(), [](const suite::Check& c) { return c.passed; });
  return {suite::format_report(cfg.seed, checks), ok ? kOk : kFailure};
}

}  // namespace

Complex parse_point(const std::string& text) {
  const auto comma = text.find(',');
  try {
    std::size_t used = 0;
    if (comma == std::string::npos) {
      const double re = std::stod(text, &used);
      if (used != text.size()) throw std::invalid_argument("trailing text");
      return {re, 0.0};
    }
    const std::string a = text.substr(0, comma), b = text.substr(comma + 1);
    const double re = std::stod(a, &used);
    if (used != a.size()) throw std::invalid_argument("trailing text");
    const double im = std::stod(b, &used);
    if (used != b.size()) throw std::invalid_argument("trailing text");
    return {re, im};
  } catch (const std::exception&) {
    throw SchemaError("--z", "expected \"re,im\", got '" + text + "'");
  }
}

int run(const RunConfig& cfg, std::ostream& out, std::ostream& err) {
  try {
    check_config(cfg);
    Result res;
    if (cfg.command == "transform") res = cmd_transform(cfg, err);
    else if (cfg.command == "rank") res = cmd_rank(cfg);
    else if (cfg.command == "moments") res = cmd_moments(cfg, err);
    else if (cfg.command == "recover") res = cmd_recover(cfg, err);
    else if (cfg.command == "decompose") res = cmd_decompose(cfg, err);
    else if (cfg.command == "verify") res = cmd_verify(cfg);
    else throw SchemaError("command", "unknown command '" + cfg.command + "'");

    if (cfg.output.empty()) {
      out << res.text;
    } else {
      std::ofstream f(cfg.output, std::ios::binary);
      if (!f) throw SchemaError("--output", "cannot write '" + cfg.output + "'");
      f << res.text;
    }
    return res.code;
  } catch (const SchemaError& e) {
    err << e.what() << "\n";
    return kSchema;
  } catch (const Json::exception& e) {
    err << "SchemaError: " << e.what() << "\n";
    return kSchema;
  } catch (const std::exception& e) {
    err << e.what() << "\n";
    return kNumeric;
  }
}

}  // namespace berezin::cli
