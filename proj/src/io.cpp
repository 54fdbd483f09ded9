#include "berezin/io.hpp"

#include "berezin/error.hpp"

namespace berezin {

namespace {

const Json& require(const Json& obj, const char* key, const std::string& path) {
  if (!obj.is_object()) throw SchemaError(path, "expected an object");
  auto it = obj.find(key);
  if (it == obj.end()) throw SchemaError(path.empty() ? key : path + "." + key, "missing field");
  return *it;
}

std::string join(const std::string& path, const char* key) { return path.empty() ? key : path + "." + key; }

std::string index(const std::string& path, std::size_t i) { return path + "[" + std::to_string(i) + "]"; }

AtomKind kind_from_string(const std::string& s, const std::string& path) {
  if (s == "log") return AtomKind::Log;
  if (s == "pole") return AtomKind::Pole;
  if (s == "conjpole") return AtomKind::ConjPole;
  throw SchemaError(path, "unknown atom kind '" + s + "'");
}

void read_harmonic(const Json& j, PowerSeries& K, PowerSeries& L) {
  const Json& h = require(j, "harmonic", "");
  K = series_from_json(require(h, "K", "harmonic"), "harmonic.K");
  L = series_from_json(require(h, "L", "harmonic"), "harmonic.L");
}

Json harmonic_json(const PowerSeries& K, const PowerSeries& L) {
  return Json{{"K", series_to_json(K)}, {"L", series_to_json(L)}};
}

}  // namespace

Complex complex_from_json(const Json& j, const std::string& path) {
  if (!j.is_array() || j.size() != 2) throw SchemaError(path, "expected [re, im]");
  for (std::size_t i = 0; i < 2; ++i)
    if (!j[i].is_number()) throw SchemaError(index(path, i), "expected a number");
  return {j[0].get<double>(), j[1].get<double>()};
}

Json complex_to_json(Complex c) { return Json::array({c.real(), c.imag()}); }

PowerSeries series_from_json(const Json& j, const std::string& path) {
  if (!j.is_array()) throw SchemaError(path, "expected a list of [re, im] pairs");
  if (j.size() > static_cast<std::size_t>(kMaxTruncation) + 1) throw SchemaError(path, "series too long");
  std::vector<Complex> c;
  c.reserve(j.size());
  for (std::size_t i = 0; i < j.size(); ++i) c.push_back(complex_from_json(j[i], index(path, i)));
  return PowerSeries(std::move(c));
}

Json series_to_json(const PowerSeries& s) {
  const auto& c = s.coeffs();
  std::size_t n = c.size();
  while (n > 0 && c[n - 1] == Complex{}) --n;
  Json out = Json::array();
  for (std::size_t i = 0; i < n; ++i) out.push_back(complex_to_json(c[i]));
  return out;
}

Symbol parse_symbol(const Json& j) {
  if (!j.is_object()) throw SchemaError("", "expected an object");
  Symbol s;
  read_harmonic(j, s.holomorphic, s.antiholomorphic);
  const Json& atoms = require(j, "atoms", "");
  if (!atoms.is_array()) throw SchemaError("atoms", "expected a list");
  for (std::size_t i = 0; i < atoms.size(); ++i) {
    const std::string p = index("atoms", i);
    const Json& kind = require(atoms[i], "kind", p);
    if (!kind.is_string()) throw SchemaError(join(p, "kind"), "expected a string");
    Atom a;
    a.kind = kind_from_string(kind.get<std::string>(), join(p, "kind"));
    a.center = complex_from_json(require(atoms[i], "a", p), join(p, "a"));
    a.coeff = complex_from_json(require(atoms[i], "coeff", p), join(p, "coeff"));
    s.atoms.push_back(a);
  }
  return s;
}

Symbol parse_symbol_text(const std::string& text) {
  Json j;
  try {
    j = Json::parse(text);
  } catch (const Json::parse_error& e) {
    throw SchemaError("", std::string("invalid JSON: ") + e.what());
  }
  return parse_symbol(j);
}

Json serialize_symbol(const Symbol& s) {
  Json atoms = Json::array();
  for (const auto& a : s.atoms) {
    atoms.push_back({{"kind", to_string(a.kind)}, {"a", complex_to_json(a.center)}, {"coeff", complex_to_json(a.coeff)}});
  }
  return Json{{"harmonic", harmonic_json(s.holomorphic, s.antiholomorphic)}, {"atoms", atoms}};
}

Theorem2Form parse_form(const Json& j) {
  if (!j.is_object()) throw SchemaError("", "expected an object");
  Theorem2Form f;
  read_harmonic(j, f.holomorphic, f.antiholomorphic);
  const Json& nodes = require(j, "nodes", "");
  if (!nodes.is_array()) throw SchemaError("nodes", "expected a list");
  for (std::size_t i = 0; i < nodes.size(); ++i) {
    const std::string p = index("nodes", i);
    FormNode n;
    n.a = complex_from_json(require(nodes[i], "a", p), join(p, "a"));
    n.D = complex_from_json(require(nodes[i], "D", p), join(p, "D"));
    n.E = complex_from_json(require(nodes[i], "E", p), join(p, "E"));
    n.F = complex_from_json(require(nodes[i], "F", p), join(p, "F"));
    f.nodes.push_back(n);
  }
  return f;
}

Json serialize_form(const Theorem2Form& form) {
  Json nodes = Json::array();
  for (const auto& n : form.nodes) {
    nodes.push_back({{"a", complex_to_json(n.a)},
                     {"D", complex_to_json(n.D)},
                     {"E", complex_to_json(n.E)},
                     {"F", complex_to_json(n.F)}});
  }
  return Json{{"harmonic", harmonic_json(form.holomorphic, form.antiholomorphic)}, {"nodes", nodes}};
}

Json grid_to_json(const BidegreeSeries& grid) {
  Json rows = Json::array();
  for (int m = 0; m <= grid.m_truncation(); ++m) {
    Json row = Json::array();
    for (int n = 0; n <= grid.n_truncation(); ++n) row.push_back(complex_to_json(grid(m, n)));
    rows.push_back(std::move(row));
  }
  return Json{{"m_truncation", grid.m_truncation()}, {"n_truncation", grid.n_truncation()}, {"coeffs", rows}};
}

BidegreeSeries grid_from_json(const Json& j) {
  const Json& rows = require(j, "coeffs", "");
  if (!rows.is_array() || rows.empty()) throw SchemaError("coeffs", "expected a non-empty list of rows");
  const std::size_t cols = rows[0].is_array() ? rows[0].size() : 0;
  if (cols == 0) throw SchemaError("coeffs[0]", "expected a non-empty row");
  Eigen::MatrixXcd c(rows.size(), cols);
  for (std::size_t m = 0; m < rows.size(); ++m) {
    const std::string p = index("coeffs", m);
    if (!rows[m].is_array() || rows[m].size() != cols) throw SchemaError(p, "ragged row");
    for (std::size_t n = 0; n < cols; ++n) c(m, n) = complex_from_json(rows[m][n], index(p, n));
  }
  return BidegreeSeries(std::move(c));
}

Json rank_report_to_json(const RankReport& r) {
  return Json{{"singular_values", r.singular_values}, {"rank", r.rank}, {"tol", r.tol}};
}

Json moment_matrix_to_json(const MomentMatrix& m) {
  Json rows = Json::array();
  for (Eigen::Index k = 0; k < m.entries.rows(); ++k) {
    Json row = Json::array();
    for (Eigen::Index l = 0; l < m.entries.cols(); ++l) row.push_back(complex_to_json(m.entries(k, l)));
    rows.push_back(std::move(row));
  }
  return Json{{"orientation", to_string(m.orientation)}, {"entries", rows}};
}

Json node_estimate_to_json(const NodeEstimate& e) {
  Json nodes = Json::array();
  for (const auto& a : e.nodes) nodes.push_back(complex_to_json(a));
  return Json{{"nodes", nodes}, {"multiplicity", e.multiplicity}, {"residual", e.residual}, {"iterations", e.iterations}};
}

Json rational_to_json(const RationalFunction& r) {
  return Json{{"numerator", series_to_json(r.numerator)},
              {"a", complex_to_json(r.a)},
              {"power", r.power},
              {"pole_order", r.pole_order()}};
}

Json theoremA_to_json(const TheoremAStructure& s) {
  Json p = Json::array(), q = Json::array();
  for (const auto& c : s.p) p.push_back(complex_to_json(c));
  for (const auto& c : s.q) q.push_back(complex_to_json(c));
  return Json{{"a", complex_to_json(s.a)}, {"p", p}, {"q", q}};
}

Json decomposition_to_json(const Decomposition& d) {
  Json pieces = Json::array();
  for (const auto& piece : d.pieces) {
    pieces.push_back({{"u", serialize_symbol(piece.u)}, {"f", rational_to_json(piece.f)}, {"g", rational_to_json(piece.g)}});
  }
  return Json{{"pieces", pieces},
              {"remainder", d.remainder ? serialize_symbol(*d.remainder) : Json(nullptr)},
              {"log", d.log}};
}

}  // namespace berezin
