#include <chrono>
#include <cstdio>
#include <fstream>
#include <iostream>

#include <CLI11.hpp>
#include <json.hpp>

#include "dnov/errors.hpp"
#include "dnov/verify.hpp"

using namespace dnov;
using nlohmann::json;

namespace {

struct GlobalArgs {
  std::string algebra_path;
  std::string algebra2_path;
  std::string delta_text;       // rational or "symbolic"
  std::string delta2_text;
  std::string fixtures;
  bool json_output = false;
  bool no_validate = false;
  std::map<std::string, std::string> param_texts;

  ParamMap overrides() const {
    ParamMap m;
    for (const auto& [k, v] : param_texts) m[k] = Rational::parse(v);
    if (!delta_text.empty() && delta_text != "symbolic")
      m["delta"] = Rational::parse(delta_text);
    return m;
  }
  bool symbolic_delta() const { return delta_text == "symbolic"; }
  std::optional<Rational> delta() const {
    if (delta_text.empty() || delta_text == "symbolic") return std::nullopt;
    return Rational::parse(delta_text);
  }
};

LoadedAlgebra load_input(const GlobalArgs& g, const std::string& path = "") {
  const std::string p = path.empty() ? g.algebra_path : path;
  if (p.empty()) throw Error("Usage", "--algebra is required for this command");
  return load_algebra(fixture_path(p, g.fixtures), g.overrides(), g.symbolic_delta());
}

json vec_to_json(const Vec& v) {
  json out = json::array();
  for (const auto& s : v) out.push_back(s.str());
  return out;
}

json polys_to_json(const std::vector<DeltaPoly>& ps) {
  json out = json::array();
  for (const auto& p : ps) out.push_back(p.str());
  return out;
}

json report_to_json(const CheckReport& r) {
  json j;
  switch (r.verdict) {
    case CheckReport::Verdict::Satisfied: j["verdict"] = "satisfied"; break;
    case CheckReport::Verdict::Violated: j["verdict"] = "violated"; break;
    case CheckReport::Verdict::Conditional: j["verdict"] = "conditional"; break;
  }
  if (!r.identity_name.empty()) j["identity"] = r.identity_name;
  if (r.witness) j["witness"] = *r.witness;
  if (!r.defect.empty()) j["defect"] = vec_to_json(r.defect);
  if (!r.delta_conditions.empty())
    j["delta_conditions"] = polys_to_json(r.delta_conditions);
  return j;
}

std::chrono::steady_clock::time_point g_start = std::chrono::steady_clock::now();

double elapsed_seconds() {
  return std::chrono::duration_cast<std::chrono::duration<double>>(
             std::chrono::steady_clock::now() - g_start)
      .count();
}

void emit(const GlobalArgs& g, const std::string& command, json body, int exit_code) {
  if (g.json_output) {
    json j;
    j["report_version"] = 1;
    j["command"] = command;
    j["result"] = std::move(body);
    j["timings"] = {{"seconds", elapsed_seconds()}};
    std::cout << j.dump(2) << "\n";
  } else {
    std::cout << body.dump(2) << "\n";
  }
  std::exit(exit_code);
}

void write_output(const std::string& out_path, const std::string& text) {
  if (out_path.empty()) {
    std::cout << text << "\n";
  } else {
    std::ofstream f(out_path);
    f << text << "\n";
  }
}

int cmd_check(const GlobalArgs& g, const std::string& identity, int product_select) {
  LoadedAlgebra f = load_input(g);
  if (identity == "gd-tp-combinations") {
    if (!f.is_bialgebra)
      throw Error("MissingProduct", "gd-tp-combinations needs two products");
    if (!g.delta()) throw Error("Usage", "--delta <rational> required");
    const CheckReport r = gd_tp_combination_check(f.bialgebra, *g.delta());
    emit(g, "check", report_to_json(r), r.satisfied() ? 0 : 1);
  }
  IdentityFamily fam = catalog(identity);
  ProductBinding bind = f.binding();
  if (product_select == 2) {
    if (!f.is_bialgebra) throw Error("MissingProduct", "--product 2 needs two products");
    if (fam.uses_p2()) throw Error("Usage", "--product 2 only applies to single-product identities");
    bind = ProductBinding::of(f.bialgebra.productB);
  }
  const CheckReport r = check(fam, bind, f.dim(), g.delta());
  const bool pass = r.satisfied();
  emit(g, "check", report_to_json(r), pass ? 0 : 1);
  return 0;
}

int cmd_deltas(const GlobalArgs& g, const std::string& family) {
  LoadedAlgebra f = load_input(g);
  const IdentityFamily fam = catalog(family);
  const AdmissibleDeltas adm = f.is_bialgebra ? admissible_deltas(fam, f.bialgebra)
                                              : admissible_deltas(fam, f.algebra);
  json j;
  switch (adm.kind) {
    case AdmissibleDeltas::Kind::All: j["admissible"] = "all"; break;
    case AdmissibleDeltas::Kind::Empty: j["admissible"] = "empty"; break;
    case AdmissibleDeltas::Kind::Roots: {
      j["admissible"] = "roots";
      json roots = json::array();
      for (const auto& r : adm.roots) roots.push_back(r.str());
      j["rational_roots"] = roots;
      j["factors"] = polys_to_json(adm.factors);
      j["condition_gcd"] = adm.condition_gcd.str();
      break;
    }
  }
  emit(g, "deltas", j, 0);
  return 0;
}

int cmd_derivations(const GlobalArgs& g) {
  LoadedAlgebra f = load_input(g);
  if (f.is_bialgebra) throw Error("Usage", "derivations works on a single product");
  if (!g.delta()) throw Error("Usage", "--delta <rational> required");
  const DerivationSpace sp = solve_delta_derivations(f.algebra, *g.delta());
  json j;
  j["delta"] = g.delta()->str();
  j["dimension"] = sp.dimension();
  json basis = json::array();
  for (const auto& m : sp.basis) {
    json rows = json::array();
    for (std::size_t i = 0; i < m.dim(); ++i) {
      json row = json::array();
      for (std::size_t k = 0; k < m.dim(); ++k) row.push_back(m.entry(i, k).str());
      rows.push_back(row);
    }
    basis.push_back(rows);
  }
  j["basis"] = basis;
  emit(g, "derivations", j, 0);
  return 0;
}

int cmd_spectrum(const GlobalArgs& g) {
  LoadedAlgebra f = load_input(g);
  if (f.is_bialgebra) throw Error("Usage", "spectrum works on a single product");
  const DerivationSpectrum sp = derivation_delta_spectrum(f.algebra);
  json j;
  j["generic_nullity"] = sp.generic_nullity;
  json entries = json::array();
  for (const auto& e : sp.entries) {
    json je;
    je["factor"] = e.factor.str();
    if (e.root) je["root"] = e.root->str();
    if (e.jump) je["jump"] = *e.jump;
    entries.push_back(je);
  }
  j["entries"] = entries;
  emit(g, "spectrum", j, 0);
  return 0;
}

int cmd_series(const GlobalArgs& g, const std::string& kind) {
  LoadedAlgebra f = load_input(g);
  if (f.is_bialgebra) throw Error("Usage", "series works on a single product");
  const SeriesReport rep = series(f.algebra, series_kind_from_name(kind));
  json j;
  j["kind"] = series_kind_name(rep.kind);
  j["dims"] = rep.dims;
  j["terminated"] = rep.terminated;
  if (rep.index) j["index"] = *rep.index;
  emit(g, "series", j, 0);
  return 0;
}

int cmd_ideals(const GlobalArgs& g, const std::string& gens_text) {
  LoadedAlgebra f = load_input(g);
  if (f.is_bialgebra) throw Error("Usage", "ideals works on a single product");
  const std::size_t n = f.algebra.dim();
  std::vector<Vec> gens;
  std::size_t start = 0;
  while (start < gens_text.size()) {
    std::size_t semi = gens_text.find(';', start);
    const std::string piece = gens_text.substr(
        start, semi == std::string::npos ? std::string::npos : semi - start);
    gens.push_back(parse_vector(piece, n, {}));
    if (semi == std::string::npos) break;
    start = semi + 1;
  }
  const Subspace closure = ideal_closure(f.algebra, Subspace(n, gens));
  json j;
  j["dim"] = closure.dim();
  json basis = json::array();
  for (const auto& v : closure.basis()) basis.push_back(vec_to_json(v));
  j["basis"] = basis;
  emit(g, "ideals", j, 0);
  return 0;
}

int cmd_simple2(const GlobalArgs& g) {
  LoadedAlgebra f = load_input(g);
  const Dim2IdealReport rep = proper_ideal_exists_dim2(f.algebra);
  json j;
  j["proper_ideal_exists"] = rep.exists;
  j["simple_candidate"] = !rep.exists;
  if (rep.witness) j["witness"] = vec_to_json(*rep.witness);
  if (!rep.slope_factors.empty()) j["slope_factors"] = polys_to_json(rep.slope_factors);
  emit(g, "simple2", j, 0);
  return 0;
}

int cmd_fingerprint(const GlobalArgs& g) {
  LoadedAlgebra f = load_input(g);
  if (f.is_bialgebra) throw Error("Usage", "fingerprint works on a single product");
  const Fingerprint fp = invariant_fingerprint(f.algebra);
  json j;
  j["dim_square"] = fp.dim_square;
  j["dim_left_annihilator"] = fp.dim_left_annihilator;
  j["dim_right_annihilator"] = fp.dim_right_annihilator;
  j["commutative"] = fp.commutative;
  j["associative"] = fp.associative;
  json traces = json::array();
  for (const auto& [idx, tr] : fp.idempotent_traces)
    traces.push_back({{"basis_index", idx}, {"trace", tr.str()}});
  j["idempotent_traces"] = traces;
  emit(g, "fingerprint", j, 0);
  return 0;
}

json operad_dim_json(const operad::DimReport& rep) {
  json j;
  j["degree"] = rep.degree;
  j["monomials"] = rep.monomial_count;
  j["rank"] = rep.rank;
  j["dim"] = rep.dim;
  j["exceptional_factors"] = polys_to_json(rep.exceptional_factors);
  return j;
}

int cmd_operad_dim(const GlobalArgs& g, int degree) {
  const auto rep = operad::component_dim(g.delta(), degree);
  emit(g, "operad dim", operad_dim_json(rep), 0);
  return 0;
}

int cmd_operad_koszul(const GlobalArgs& g) {
  if (!g.delta()) throw Error("Usage", "--delta <rational> required");
  const auto rep = operad::koszul_obstruction(*g.delta());
  const auto hd = operad::hilbert_data(*g.delta());
  json j;
  j["delta"] = rep.delta.str();
  j["dims"] = hd.dims;
  json series = json::array();
  for (const auto& c : hd.series) series.push_back(c.str());
  j["series"] = series;
  j["beta"] = rep.beta;
  j["alpha"] = rep.alpha;
  j["coefficient"] = rep.coefficient.str();
  j["nonzero"] = rep.nonzero;
  j["koszul"] = !rep.nonzero;
  emit(g, "operad koszul", j, rep.nonzero ? 0 : 1);
  return 0;
}

int cmd_operad_dual(const GlobalArgs& g) {
  const auto rep = operad::dual_relations_via_lie_admissibility(g.delta());
  static const std::vector<std::string> lvars{"a", "b", "c"};
  static const std::vector<std::string> rvars{"x", "y", "z"};
  json j;
  json rels = json::array();
  for (const auto& [base, vec] : rep.relations) {
    json jr;
    jr["base"] = base.str(lvars);
    std::string expr;
    for (std::size_t col = 0; col < vec.size(); ++col) {
      if (vec[col].is_zero()) continue;
      if (!expr.empty()) expr += " + ";
      expr += "(" + vec[col].str() + ")*" + operad::monomial_at(3, col).str(rvars);
    }
    jr["relation"] = expr;
    rels.push_back(jr);
  }
  j["relations"] = rels;
  j["relation_rank"] = rep.relation_rank;
  j["right_delta_novikov_rank"] = rep.right_novikov_rank;
  j["equal_span"] = rep.equals_right_delta_novikov;
  j["rewrite_rules"] = operad::derived_rewrite_rules();
  emit(g, "operad dual", j, rep.equals_right_delta_novikov ? 0 : 1);
  return 0;
}

int cmd_construct(const GlobalArgs& g, const std::string& sub, const std::string& map_path,
                  const std::string& map2_path, const std::string& vector_text,
                  const std::string& side_text, const std::string& variant_text,
                  const std::string& out_path) {
  const bool validate = !g.no_validate;
  LoadedAlgebra f = load_input(g);
  const std::size_t n = f.dim();
  auto need_delta = [&]() {
    if (!g.delta()) throw Error("Usage", "--delta <rational> required");
    return *g.delta();
  };
  auto load_map_arg = [&](const std::string& p) {
    if (p.empty()) throw Error("Usage", "--map required for this construction");
    return load_linear_map(fixture_path(p, g.fixtures), g.overrides(), false);
  };
  auto vec_arg = [&]() {
    if (vector_text.empty()) throw Error("Usage", "--vector required");
    return parse_vector(vector_text, n, {});
  };

  if (sub == "a-phi") {
    const APhiSide side = side_text == "right" ? APhiSide::Right : APhiSide::Left;
    const Algebra out =
        build_a_phi(f.algebra, load_map_arg(map_path), need_delta(), side, validate);
    write_output(out_path, algebra_to_json(out));
    return 0;
  }
  if (sub == "deform-h") {
    const BiAlgebra out = np_deform_h(f.bialgebra, vec_arg(), need_delta(), validate);
    write_output(out_path, bialgebra_to_json(out));
    return 0;
  }
  if (sub == "scale-q") {
    const BiAlgebra out = np_scale_q(f.bialgebra, vec_arg(), need_delta(), validate);
    write_output(out_path, bialgebra_to_json(out));
    return 0;
  }
  if (sub == "kantor") {
    const Algebra out = kantor_product(f.bialgebra, vec_arg(), need_delta(), validate);
    write_output(out_path, algebra_to_json(out));
    return 0;
  }
  if (sub == "tensor") {
    if (g.algebra2_path.empty()) throw Error("Usage", "--algebra2 required for tensor");
    ParamMap ov2 = g.overrides();
    if (!g.delta2_text.empty()) ov2["delta"] = Rational::parse(g.delta2_text);
    LoadedAlgebra f2 =
        load_algebra(fixture_path(g.algebra2_path, g.fixtures), ov2, false);
    const Rational d1 = need_delta();
    const Rational d2 =
        g.delta2_text.empty() ? d1 : Rational::parse(g.delta2_text);
    const BiAlgebra out = tensor_np(f.bialgebra, d1, f2.bialgebra, d2, validate);
    write_output(out_path, bialgebra_to_json(out));
    return 0;
  }
  if (sub == "poisson2d") {
    const BiAlgebra out =
        poisson_from_two_derivations(f.algebra, load_map_arg(map_path),
                                     load_map_arg(map2_path), need_delta(), validate);
    write_output(out_path, bialgebra_to_json(out));
    return 0;
  }
  if (sub == "commutator-bracket") {
    const BiAlgebra out = np_commutator_bracket(f.bialgebra, need_delta(), validate);
    write_output(out_path, bialgebra_to_json(out));
    return 0;
  }
  if (sub == "rb-product") {
    RBVariant variant = RBVariant::Lie;
    if (variant_text == "assoc-lie") variant = RBVariant::AssocLie;
    else if (variant_text == "assoc-weight1") variant = RBVariant::AssocWeight1;
    else if (variant_text != "lie")
      throw Error("Usage", "--variant must be lie|assoc-lie|assoc-weight1");
    const RBInducedResult res = rb_induced_products(
        f.algebra, load_map_arg(map_path), need_delta(), variant, validate);
    json j;
    j["product"] = json::parse(algebra_to_json(res.product));
    if (res.pre_lie_upgrade) j["pre_lie_upgrade"] = *res.pre_lie_upgrade;
    write_output(out_path, j.dump(2));
    return 0;
  }
  throw Error("Usage", "unknown construct subcommand: " + sub);
}

int cmd_verify_paper(const GlobalArgs& g, const std::string& scope, bool skip_koszul) {
  verify::Options opt;
  opt.fixtures_dir = g.fixtures;
  if (g.delta()) opt.koszul_deltas = {*g.delta()};
  std::vector<int> criteria = verify::criteria_for_scope(scope);
  if (skip_koszul)
    criteria.erase(std::remove(criteria.begin(), criteria.end(), 10), criteria.end());
  bool all_pass = true;
  json results = json::array();
  for (int c : criteria) {
    const verify::CheckResult r = verify::run_criterion(c, opt);
    all_pass = all_pass && r.pass;
    if (g.json_output) {
      results.push_back({{"name", r.name}, {"pass", r.pass}, {"detail", r.detail}});
      results.back()["seconds"] = r.seconds;
    } else {
      char secs[32];
      std::snprintf(secs, sizeof secs, "%.2f", r.seconds);
      std::cout << (r.pass ? "[PASS] " : "[FAIL] ") << r.name << "  (" << secs
                << "s)\n";
      if (!r.pass) std::cout << "       " << r.detail << "\n";
    }
  }
  {
    const verify::CheckResult r = verify::corpus_self_check(opt);
    all_pass = all_pass && r.pass;
    if (g.json_output)
      results.push_back({{"name", r.name}, {"pass", r.pass}, {"detail", r.detail}});
    else
      std::cout << (r.pass ? "[PASS] " : "[FAIL] ") << r.name << "\n";
  }
  if (g.json_output) {
    json j;
    j["report_version"] = 1;
    j["command"] = "verify-paper " + scope;
    j["results"] = results;
    j["timings"] = {{"seconds", elapsed_seconds()}};
    std::cout << j.dump(2) << "\n";
  }
  return all_pass ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Exact workbench for delta-Novikov and delta-Novikov-Poisson algebras"};
  app.require_subcommand(1);

  GlobalArgs g;
  app.add_option("--algebra", g.algebra_path, "algebra file or fixture name");
  app.add_option("--algebra2", g.algebra2_path, "second algebra (tensor)");
  app.add_option("--delta", g.delta_text, "rational delta value, or 'symbolic'");
  app.add_option("--delta2", g.delta2_text, "delta of the second tensor factor");
  app.add_option("--param", g.param_texts, "extra parameter values, e.g. --param alpha 3");
  app.add_option("--fixtures", g.fixtures, "fixture directory");
  app.add_flag("--json", g.json_output, "machine-readable JSON report");
  app.add_flag("--no-validate", g.no_validate, "skip construction hypothesis checks");

  std::string identity, family = "delta-novikov", kind = "derived", gens;
  int product_select = 1, degree = 3;
  std::string construct_sub, map_path, map2_path, vector_text, side = "left",
              variant = "lie", out_path, scope = "all";
  bool skip_koszul = false;

  auto* c_check = app.add_subcommand("check", "check an identity or family");
  c_check->add_option("--identity", identity, "catalog identity name")->required();
  c_check->add_option("--product", product_select, "bind a single-product identity to product 1 or 2");

  auto* c_deltas = app.add_subcommand("deltas", "admissible delta values for a family");
  c_deltas->add_option("--family", family, "identity family (default delta-novikov)");

  app.add_subcommand("derivations", "basis of the delta-derivation space");
  app.add_subcommand("spectrum", "parametric delta-derivation analysis");

  auto* c_series = app.add_subcommand("series", "derived / right-power / lower-central series");
  c_series->add_option("--kind", kind, "derived|right-power|lower-central");

  auto* c_ideals = app.add_subcommand("ideals", "two-sided ideal closure of generators");
  c_ideals->add_option("--gens", gens, "semicolon-separated coordinate vectors")->required();

  app.add_subcommand("simple2", "exact 1-dimensional ideal search (dim 2)");
  app.add_subcommand("fingerprint", "basis-independent invariants");

  auto* c_construct = app.add_subcommand("construct", "run a construction");
  c_construct->add_option("sub", construct_sub,
                          "a-phi|deform-h|scale-q|kantor|tensor|poisson2d|commutator-bracket|rb-product")
      ->required();
  c_construct->add_option("--map", map_path, "linear map file or fixture name");
  c_construct->add_option("--map2", map2_path, "second linear map");
  c_construct->add_option("--vector", vector_text, "coordinate vector, e.g. '1,0,0'");
  c_construct->add_option("--side", side, "left|right (a-phi)");
  c_construct->add_option("--variant", variant, "lie|assoc-lie|assoc-weight1 (rb-product)");
  c_construct->add_option("-o,--output", out_path, "output file (default stdout)");

  auto* c_operad = app.add_subcommand("operad", "free-algebra multilinear components");
  std::string operad_sub;
  bool operad_symbolic = false;
  c_operad->add_option("sub", operad_sub, "dim|koszul|dual")->required();
  c_operad->add_option("--degree", degree, "degree 1..5");
  c_operad->add_flag("--symbolic", operad_symbolic, "run over Q(delta)");

  auto* c_verify = app.add_subcommand("verify-paper", "run the theorem verification battery");
  c_verify->add_option("--scope", scope, "tables|constructions|operad|series|all");
  c_verify->add_flag("--skip-koszul", skip_koszul, "omit the multi-minute degree-5 computation");

  for (auto* sub : app.get_subcommands({})) sub->fallthrough();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? 0 : 2;  // usage errors exit 2; --help exits 0
  }

  try {
    if (c_check->parsed()) return cmd_check(g, identity, product_select);
    if (c_deltas->parsed()) return cmd_deltas(g, family);
    if (app.get_subcommand("derivations")->parsed()) return cmd_derivations(g);
    if (app.get_subcommand("spectrum")->parsed()) return cmd_spectrum(g);
    if (c_series->parsed()) return cmd_series(g, kind);
    if (c_ideals->parsed()) return cmd_ideals(g, gens);
    if (app.get_subcommand("simple2")->parsed()) return cmd_simple2(g);
    if (app.get_subcommand("fingerprint")->parsed()) return cmd_fingerprint(g);
    if (c_construct->parsed())
      return cmd_construct(g, construct_sub, map_path, map2_path, vector_text, side,
                           variant, out_path);
    if (c_operad->parsed()) {
      if (operad_symbolic) g.delta_text = "symbolic";
      if (operad_sub == "dim") return cmd_operad_dim(g, degree);
      if (operad_sub == "koszul") return cmd_operad_koszul(g);
      if (operad_sub == "dual") return cmd_operad_dual(g);
      throw Error("Usage", "operad subcommand must be dim|koszul|dual");
    }
    if (c_verify->parsed()) return cmd_verify_paper(g, scope, skip_koszul);
  } catch (const Error& e) {
    std::cerr << "error [" << e.code() << "]: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
  return 2;
}
