#pragma once

// JSON serialization of algebras, Spindler data and catalog entries.

#include "conelab/catalog.hpp"

#include <fstream>
#include <sstream>

#include "json.hpp"

namespace conelab {

using json = nlohmann::json;

inline json to_json(const Q& q) { return to_string(q); }

inline json to_json(const Vec& v) {
  json a = json::array();
  for (const auto& x : v) a.push_back(to_string(x));
  return a;
}

inline json to_json(const Mat& m) {
  json a = json::array();
  for (std::size_t i = 0; i < m.rows; ++i) a.push_back(to_json(m.row(i)));
  return a;
}

inline json to_json(const std::vector<Vec>& vs) {
  json a = json::array();
  for (const auto& v : vs) a.push_back(to_json(v));
  return a;
}

inline Q rational_from_json(const json& j) {
  if (j.is_string()) return parse_rational(j.get<std::string>());
  if (j.is_number_integer()) return Q(j.get<long long>());
  if (j.is_number_float()) return parse_rational(j.dump());
  throw ParseError("expected a rational, got " + j.dump());
}

inline Vec vec_from_json(const json& j) {
  if (!j.is_array()) throw ParseError("expected an array");
  Vec v;
  for (const auto& x : j) v.push_back(rational_from_json(x));
  return v;
}

inline Mat mat_from_json(const json& j, std::size_t rows, std::size_t cols) {
  if (!j.is_array() || j.size() != rows) throw ParseError("matrix has wrong row count");
  Mat m(rows, cols);
  for (std::size_t i = 0; i < rows; ++i) {
    Vec r = vec_from_json(j[i]);
    if (r.size() != cols) throw ParseError("matrix has wrong column count");
    for (std::size_t k = 0; k < cols; ++k) m(i, k) = r[k];
  }
  return m;
}

inline json algebra_to_json(const LieAlgebra& g) {
  json j;
  j["dim"] = g.dim();
  j["basis"] = g.names();
  json br = json::array();
  for (const auto& e : g.bracket_entries()) {
    json c = json::object();
    for (const auto& [k, v] : e.coeffs) c[std::to_string(k)] = to_string(v);
    br.push_back({{"i", e.i}, {"j", e.j}, {"coeffs", c}});
  }
  j["brackets"] = br;
  return j;
}

inline LieAlgebra algebra_from_json(const json& j) {
  if (!j.contains("dim") || !j.contains("basis")) throw ParseError("algebra needs dim and basis");
  std::size_t n = j.at("dim").get<std::size_t>();
  auto names = j.at("basis").get<std::vector<std::string>>();
  if (names.size() != n) throw ParseError("basis length differs from dim");
  std::vector<BracketEntry> br;
  if (j.contains("brackets"))
    for (const auto& e : j.at("brackets")) {
      BracketEntry b{e.at("i").get<std::size_t>(), e.at("j").get<std::size_t>(), {}};
      for (const auto& [k, v] : e.at("coeffs").items())
        b.coeffs[static_cast<std::size_t>(std::stoul(k))] = rational_from_json(v);
      br.push_back(std::move(b));
    }
  return LieAlgebra(std::move(names), br);
}

inline json spindler_to_json(const SpindlerAlgebra& g) {
  const SpindlerData& d = g.data;
  json j;
  j["l"] = algebra_to_json(d.l);
  j["dim_V"] = d.dim_V;
  j["dim_z"] = d.dim_z;
  json rho = json::array(), beta = json::array();
  for (const auto& m : d.rho) rho.push_back(to_json(m));
  for (const auto& m : d.beta) beta.push_back(to_json(m));
  j["rho"] = rho;
  j["beta"] = beta;
  j["cartan"] = d.cartan;
  j["v_names"] = d.v_names;
  j["z_names"] = d.z_names;
  if (d.witness) j["witness"] = {{"f", to_json(d.witness->f)}, {"x", to_json(d.witness->x)}};
  return j;
}

inline SpindlerAlgebra spindler_from_json(const json& j) {
  SpindlerData d;
  d.l = algebra_from_json(j.at("l"));
  d.dim_V = j.at("dim_V").get<std::size_t>();
  d.dim_z = j.at("dim_z").get<std::size_t>();
  for (const auto& m : j.at("rho")) d.rho.push_back(mat_from_json(m, d.dim_V, d.dim_V));
  for (const auto& m : j.at("beta")) d.beta.push_back(mat_from_json(m, d.dim_V, d.dim_V));
  if (j.contains("cartan")) d.cartan = j.at("cartan").get<std::vector<std::size_t>>();
  if (j.contains("v_names")) d.v_names = j.at("v_names").get<std::vector<std::string>>();
  if (j.contains("z_names")) d.z_names = j.at("z_names").get<std::vector<std::string>>();
  if (j.contains("witness"))
    d.witness = AdmissibilityWitness{vec_from_json(j.at("witness").at("f")),
                                     vec_from_json(j.at("witness").at("x"))};
  return build(std::move(d));
}

inline const char* ideal_kind_name(IdealKind k) {
  switch (k) {
    case IdealKind::Center: return "center";
    case IdealKind::Compact: return "compact";
    default: return "symplectic";
  }
}

inline json entry_to_json(const CatalogEntry& e) {
  json j;
  j["name"] = e.name;
  j["description"] = e.description;
  if (e.spindler) {
    j["kind"] = "spindler";
    j["spindler"] = spindler_to_json(*e.spindler);
  } else {
    j["kind"] = "lie";
    j["algebra"] = algebra_to_json(e.algebra);
    json ideals = json::array();
    for (const auto& b : e.reductive->blocks) {
      json m = json::array();
      for (const auto& x : b.matrices) m.push_back(to_json(x));
      ideals.push_back({{"kind", ideal_kind_name(b.kind)},
                        {"label", b.label},
                        {"indices", b.indices},
                        {"matrices", m}});
    }
    j["ideals"] = ideals;
  }
  j["cartan_elements"] = to_json(e.cartan.t);
  j["expected_roots"] = e.expected_roots;
  return j;
}

inline CatalogEntry entry_from_json(const json& j) {
  CatalogEntry e;
  e.name = j.value("name", std::string("file"));
  e.description = j.value("description", std::string());
  e.expected_roots = j.value("expected_roots", std::size_t(0));
  if (j.contains("l") || j.value("kind", std::string()) == "spindler") {
    SpindlerAlgebra g = spindler_from_json(j.contains("l") ? j : j.at("spindler"));
    e.algebra = g.algebra;
    e.cartan = spindler_cartan(g);
    e.spindler = std::move(g);
    return e;
  }
  const json& a = j.contains("algebra") ? j.at("algebra") : j;
  e.algebra = algebra_from_json(a);
  ReductiveModel m;
  m.g = e.algebra;
  if (j.contains("ideals"))
    for (const auto& b : j.at("ideals")) {
      IdealBlock blk;
      std::string k = b.at("kind").get<std::string>();
      if (k == "center") blk.kind = IdealKind::Center;
      else if (k == "compact") blk.kind = IdealKind::Compact;
      else if (k == "symplectic") blk.kind = IdealKind::Symplectic;
      else throw UnsupportedSimpleIdeal("unsupported ideal kind: " + k);
      blk.label = b.value("label", k);
      blk.indices = b.at("indices").get<std::vector<std::size_t>>();
      if (b.contains("matrices"))
        for (const auto& mm : b.at("matrices")) {
          std::size_t r = mm.size();
          blk.matrices.push_back(mat_from_json(mm, r, r));
        }
      m.blocks.push_back(std::move(blk));
    }
  e.reductive = std::move(m);
  if (j.contains("cartan_elements"))
    for (const auto& t : j.at("cartan_elements")) e.cartan.t.push_back(vec_from_json(t));
  return e;
}

// "catalog:name", a bare catalog name, or a JSON file path
inline CatalogEntry load_algebra(const std::string& spec) {
  std::string name = spec;
  if (name.rfind("catalog:", 0) == 0) return catalog(name.substr(8));
  const auto& names = catalog_names();
  if (std::find(names.begin(), names.end(), name) != names.end()) return catalog(name);
  std::ifstream in(spec);
  if (!in) throw ParseError("cannot open algebra file: " + spec);
  json j;
  try {
    j = json::parse(in);
  } catch (const json::exception& ex) {
    throw ParseError(std::string("malformed JSON: ") + ex.what());
  }
  try {
    return entry_from_json(j);
  } catch (const json::exception& ex) {
    throw ParseError(std::string("malformed algebra file: ") + ex.what());
  }
}

}  // namespace conelab
