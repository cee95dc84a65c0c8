// conelab command line front end

#include "conelab/conelab.hpp"

#include <chrono>
#include <cstdint>
#include <cstdlib>
#include <iostream>

#include "CLI11.hpp"

using namespace conelab;

namespace {

constexpr int kExitMalformed = 64;
constexpr int kExitNotNilpotent = 3;
constexpr int kExitInternal = 70;

struct Options {
  std::string algebra;
  std::string x;
  std::string what = "co";
  std::optional<std::size_t> budget;
  std::uint64_t seed = 0;
  bool json_out = false;
  std::string name;  // catalog dump target
};

std::uint64_t fnv1a(const std::string& s) {
  std::uint64_t h = 1469598103934665603ull;
  for (unsigned char c : s) {
    h ^= c;
    h *= 1099511628211ull;
  }
  return h;
}

std::string hex64(std::uint64_t v) {
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(v));
  return buf;
}

std::size_t resolve_budget(const Options& o) {
  if (o.budget) return *o.budget;
  if (const char* env = std::getenv("CONELAB_BUDGET")) {
    try {
      return static_cast<std::size_t>(std::stoul(env));
    } catch (const std::exception&) {
      throw ParseError(std::string("CONELAB_BUDGET is not a number: ") + env);
    }
  }
  return kDefaultBudget;
}

// full coordinates, l-only or (z, l) coordinates, or a basis expression
Element parse_x(const CatalogEntry& e, const std::string& s) {
  if (s.empty()) throw ParseError("--x is required");
  if (e.spindler && s.find_first_not_of("0123456789,-/. ") == std::string::npos) {
    const SpindlerAlgebra& g = *e.spindler;
    Vec c;
    std::stringstream ss(s);
    std::string tok;
    while (std::getline(ss, tok, ',')) c.push_back(parse_rational(tok));
    if (c.size() == g.nl() && c.size() != g.dim()) return g.from_l(c);
    if (c.size() == g.nz() + g.nl() && c.size() != g.dim()) {
      Vec z(c.begin(), c.begin() + static_cast<long>(g.nz()));
      Vec l(c.begin() + static_cast<long>(g.nz()), c.end());
      return g.from_z(z) + g.from_l(l);
    }
  }
  return e.algebra.parse_element(s);
}

json cert_json(const Certificate& c) {
  json j;
  j["kind"] = c.kind;
  if (!c.f.empty()) j["f"] = to_json(c.f);
  if (!c.ys.empty()) j["ys"] = to_json(c.ys);
  if (!c.lambda.empty()) j["lambda"] = to_json(c.lambda);
  if (!c.y.empty()) j["y"] = to_json(c.y);
  if (!c.k.empty()) j["k"] = to_json(c.k);
  if (!c.v0.empty()) j["v0"] = to_json(c.v0);
  if (!c.direction.empty()) j["direction"] = to_json(c.direction);
  if (!c.note.empty()) j["note"] = c.note;
  return j;
}

json verdict_json(const PointednessVerdict& v) {
  return {{"verdict", verdict_name(v.value)},
          {"certificate", cert_json(v.cert)},
          {"samples", v.samples},
          {"rounds", v.rounds}};
}

json spectrum_json(const Derivation& d) {
  json a = json::array();
  for (const auto& [ev, m] : d.spectrum) a.push_back({{"eigenvalue", to_string(ev)}, {"multiplicity", m}});
  return a;
}

int verdict_exit(Verdict v) {
  switch (v) {
    case Verdict::Pointed: return 0;
    case Verdict::NotPointed: return 1;
    default: return 2;
  }
}

const SpindlerAlgebra& need_spindler(const CatalogEntry& e, const std::string& cmd) {
  if (!e.spindler) throw ParseError(cmd + " needs an algebra of the form g(l, V, z, beta)");
  return *e.spindler;
}

int cmd_check_pointed(const CatalogEntry& e, const Element& x, const Options& o, std::size_t budget,
                      json& rep, std::string& summary) {
  if (o.what != "co" && o.what != "cx") throw ParseError("--what must be co or cx");
  rep["what"] = o.what;
  Verdict v;
  if (e.spindler) {
    const SpindlerAlgebra& g = *e.spindler;
    if (o.what == "co") {
      CoResult r = co_pointed(g, x, budget);
      v = r.verdict.value;
      rep["result"] = verdict_json(r.verdict);
      rep["reduced"] = r.reduction.reduced;
      if (r.reduction.reduced) rep["reduced_x"] = to_json(r.reduction.result);
    } else {
      CxResult r = cx_pointed(g, x, budget);
      v = r.verdict.value;
      rep["result"] = verdict_json(r.verdict);
      rep["co"] = verdict_json(r.co.verdict);
      rep["x_l_nilpotent"] = r.nilpotent;
      if (r.shift) rep["shift"] = verdict_json(*r.shift);
    }
  } else if (e.reductive) {
    ReductiveReport r = o.what == "co" ? reductive_co(*e.reductive, x) : reductive_cx(*e.reductive, x);
    v = r.verdict.value;
    rep["result"] = verdict_json(r.verdict);
    rep["notes"] = r.notes;
  } else {
    throw ParseError("algebra carries neither Spindler nor reductive data");
  }
  summary = std::string(o.what) + "(x): " + verdict_name(v);
  return verdict_exit(v);
}

int cmd_affine_pair(const CatalogEntry& e, const Element& x, json& rep, std::string& summary) {
  if (!e.spindler) {
    // plain Lie algebra: D = ad(h/2) from a JM triple
    if (!e.algebra.is_ad_nilpotent(x)) throw NotNilpotent("x is not ad-nilpotent");
    Mat D(e.algebra.dim(), e.algebra.dim());
    if (!is_zero(x)) D = e.algebra.ad(jm_triple(e.algebra, x).half_h());
    Derivation d = analyze_derivation(e.algebra, D, half_spectrum());
    AffinePairReport ap = verify_affine_pair(e.algebra, x, D);
    rep["D"] = to_json(D);
    rep["spectrum"] = spectrum_json(d);
    rep["spectrum_in_half_set"] = d.diagonalizable;
    rep["clauses"] = {{"Dx=x", ap.dx_equals_x}, {"nilpotent", ap.nilpotent}, {"leibniz", ap.leibniz}};
    bool ok = ap.ok() && d.diagonalizable;
    summary = std::string("affine pair: ") + (ok ? "verified" : "failed");
    return ok ? 0 : 1;
  }
  const SpindlerAlgebra& g = *e.spindler;
  Reduction red = reduce_to_zl(g, x);
  if (!red.reduced) throw ParseError("x cannot be conjugated into z + l");
  rep["reduced_x"] = to_json(red.result);
  rep["conjugator"] = to_json(red.y);
  BuildD b = build_D(g, red.result);
  AffinePairReport ap = verify_affine_pair(g.algebra, red.result, b.D.map);
  rep["h_s"] = to_json(b.h_s);
  rep["D"] = to_json(b.D.map);
  rep["spectrum"] = spectrum_json(b.D);
  rep["spectrum_in_half_set"] = b.spectrum_ok;
  rep["clauses"] = {{"Dx=x", ap.dx_equals_x}, {"nilpotent", ap.nilpotent}, {"leibniz", ap.leibniz}};
  if (!ap.ok()) rep["residual"] = to_json(ap.residual);
  bool ok = ap.ok() && b.spectrum_ok;
  summary = std::string("affine pair: ") + (ok ? "verified" : "failed");
  return ok ? 0 : 1;
}

int cmd_obstruct(const CatalogEntry& e, const Element& x, json& rep, std::string& summary) {
  const SpindlerAlgebra& g = need_spindler(e, "obstruct");
  RootSystem rs = root_decomposition(g.algebra, e.cartan);
  ObstructionReport r = extension_obstruction(g, rs, x);
  rep["result"] = obstruction_name(r.value);
  rep["cxz_generators"] = to_json(r.cxz.gens);
  json sys = json::array();
  for (const auto& c : r.checks) {
    json roots = json::array();
    for (std::size_t i : r.systems[c.index].positive) roots.push_back(to_json(rs.roots[i].s));
    json s{{"index", c.index}, {"positive", roots}, {"viable", c.viable}};
    if (c.viable) s["functional"] = to_json(c.cert.functional);
    else s["opposite_combination"] = to_json(c.cert.lambda);
    sys.push_back(s);
  }
  rep["adapted_systems"] = sys;
  if (!r.note.empty()) rep["note"] = r.note;
  summary = std::string("extension obstruction: ") + obstruction_name(r.value) + " (" +
            std::to_string(r.checks.size()) + " adapted systems)";
  return r.value == Obstruction::Undecided ? 2 : 0;
}

int cmd_roots(const CatalogEntry& e, json& rep, std::string& summary) {
  RootSystem rs = root_decomposition(e.algebra, e.cartan);
  json roots = json::array();
  for (const auto& r : rs.roots) {
    json j{{"s", to_json(r.s)}, {"kind", kind_name(r.kind)}, {"complex_dim", r.complex_dim()},
           {"cone", to_json(r.cone.gens)}, {"cone_exact", r.cone_exact}};
    if (r.coroot) j["coroot"] = to_json(*r.coroot);
    roots.push_back(j);
  }
  rep["cartan"] = to_json(rs.t);
  rep["roots"] = roots;
  rep["centralizer_dim"] = rs.centralizer_dim;
  summary = std::to_string(rs.roots.size()) + " roots";
  return 0;
}

int cmd_euler(const CatalogEntry& e, const Element& x, json& rep, std::string& summary) {
  const SpindlerAlgebra& g = need_spindler(e, "euler");
  EulerResult r = euler_exists(g, x);
  rep["result"] = tri_name(r.value);
  json at = json::array();
  for (const auto& a : r.attempts) {
    json j{{"label", a.label}, {"h", to_json(a.h)}, {"a", a.a}, {"b", a.b}, {"c", a.c},
           {"vh_brackets_in_pm1", a.vh_brackets_in_pm1}, {"derivation_ok", a.derivation_ok}};
    if (a.c_witness) j["c_witness"] = to_json(*a.c_witness);
    if (a.overlap_witness) j["overlap_witness"] = to_json(*a.overlap_witness);
    at.push_back(j);
  }
  rep["attempts"] = at;
  if (r.D) {
    rep["D"] = to_json(r.D->map);
    rep["spectrum"] = spectrum_json(*r.D);
    rep["graded"] = r.graded_ok;
  }
  if (!r.note.empty()) rep["note"] = r.note;
  summary = std::string("Euler derivation: ") + tri_name(r.value);
  return r.value == Tri::Yes ? 0 : r.value == Tri::No ? 1 : 2;
}

int cmd_jm(const CatalogEntry& e, const Element& x, json& rep, std::string& summary) {
  const LieAlgebra& g = e.spindler ? e.spindler->data.l : e.algebra;
  Element xl = e.spindler && x.size() == e.algebra.dim() ? e.spindler->pl(x) : x;
  if (!g.is_ad_nilpotent(xl)) throw NotNilpotent("x is not ad-nilpotent");
  Sl2Triple t = jm_triple(g, xl);
  rep["h"] = to_json(t.h);
  rep["e"] = to_json(t.e);
  rep["f"] = to_json(t.f);
  rep["relations_hold"] = triple_relations_hold(g, t);
  summary = "sl2-triple found";
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"conelab: invariant cones in Lie algebras"};
  app.require_subcommand(1);
  Options o;
  auto common = [&](CLI::App* s, bool needs_x) {
    s->add_option("algebra,--algebra", o.algebra, "catalog name, catalog:name or JSON file");
    auto* xo = s->add_option("--x", o.x, "element: comma rationals or basis expression");
    if (needs_x) xo->required();
    s->add_option("--budget", o.budget, "sampling budget");
    s->add_option("--seed", o.seed, "seed recorded in the report");
    s->add_flag("--json", o.json_out, "print the JSON report");
  };
  auto* cp = app.add_subcommand("check-pointed", "decide pointedness of co(x) or C_x");
  common(cp, true);
  cp->add_option("--what", o.what, "co or cx");
  auto* ap = app.add_subcommand("affine-pair", "build and verify D with Dx = x");
  common(ap, true);
  auto* ob = app.add_subcommand("obstruct", "no-extension obstruction over adapted systems");
  common(ob, true);
  auto* ro = app.add_subcommand("roots", "root decomposition");
  common(ro, false);
  auto* eu = app.add_subcommand("euler", "search for an Euler derivation with Dx = x");
  eu->alias("euler-test");
  common(eu, true);
  auto* jm = app.add_subcommand("jm-triple", "Jacobson-Morozov triple of a nilpotent element");
  common(jm, true);
  auto* ca = app.add_subcommand("catalog", "built-in algebras");
  ca->require_subcommand(1);
  auto* cl = ca->add_subcommand("list", "list entries");
  auto* cd = ca->add_subcommand("dump", "serialize an entry");
  cd->add_option("name", o.name)->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& ex) {
    return app.exit(ex);
  } catch (const CLI::ParseError& ex) {
    app.exit(ex);
    return kExitMalformed;
  }

  if (cl->parsed()) {
    for (const auto& n : catalog_names()) std::cout << n << "\n";
    return 0;
  }
  try {
    if (cd->parsed()) {
      std::cout << entry_to_json(catalog(o.name)).dump(2) << "\n";
      return 0;
    }
  } catch (const UnknownName& ex) {
    std::cerr << "error: " << ex.what() << "\n";
    return kExitMalformed;
  }

  CLI::App* sub = app.get_subcommands().front();
  std::string cmd = sub->get_name();
  auto t0 = std::chrono::steady_clock::now();
  json rep;
  rep["command"] = cmd;
  std::string summary;
  int code = 0;
  bool failed = false;
  auto fail = [&](int c, const std::string& msg) {
    std::cerr << "error: " << msg << "\n";
    rep["error"] = msg;
    failed = true;
    return c;
  };
  try {
    if (o.algebra.empty()) throw ParseError("no algebra given");
    std::size_t budget = resolve_budget(o);
    CatalogEntry e = load_algebra(o.algebra);
    rep["algebra"] = e.name;
    rep["budget"] = budget;
    rep["seed"] = o.seed;
    std::string digest_src = cmd + "\n" + algebra_to_json(e.algebra).dump() + "\n" + o.x + "\n" + o.what;
    rep["input_digest"] = hex64(fnv1a(digest_src));
    Element x;
    if (cmd != "roots") {
      x = parse_x(e, o.x);
      rep["x"] = to_json(x);
    }
    if (cmd == "check-pointed") code = cmd_check_pointed(e, x, o, budget, rep, summary);
    else if (cmd == "affine-pair") code = cmd_affine_pair(e, x, rep, summary);
    else if (cmd == "obstruct") code = cmd_obstruct(e, x, rep, summary);
    else if (cmd == "roots") code = cmd_roots(e, rep, summary);
    else if (cmd == "euler") code = cmd_euler(e, x, rep, summary);
    else code = cmd_jm(e, x, rep, summary);
  } catch (const NotNilpotent& ex) {
    code = fail(kExitNotNilpotent, ex.what());
  } catch (const NoTriple& ex) {
    code = fail(kExitNotNilpotent, ex.what());
  } catch (const ParseError& ex) {
    code = fail(kExitMalformed, ex.what());
  } catch (const UnknownName& ex) {
    code = fail(kExitMalformed, ex.what());
  } catch (const DimensionMismatch& ex) {
    code = fail(kExitMalformed, ex.what());
  } catch (const InvalidAlgebra& ex) {
    code = fail(kExitMalformed, ex.what());
  } catch (const InvalidAction& ex) {
    code = fail(kExitMalformed, ex.what());
  } catch (const InvalidBeta& ex) {
    code = fail(kExitMalformed, ex.what());
  } catch (const UnsupportedSimpleIdeal& ex) {
    code = fail(kExitMalformed, ex.what());
  } catch (const std::exception& ex) {
    code = fail(kExitInternal, std::string("internal: ") + ex.what());
  }
  auto t1 = std::chrono::steady_clock::now();
  rep["exit_code"] = code;
  rep["timing_ms"] = std::chrono::duration<double, std::milli>(t1 - t0).count();
  if (o.json_out) std::cout << rep.dump(2) << "\n";
  else if (!failed) std::cout << summary << "\n";
  return code;
}
