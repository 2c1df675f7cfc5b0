#include "vertexlab/cli.hpp"

#include "vertexlab/compare.hpp"
#include "vertexlab/parse.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <algorithm>
#include <fstream>
#include <iostream>
#include <sstream>

namespace vertexlab {

namespace {

using nlohmann::json;

json conventions(TensorSign sign) {
  return {
      {"rationals", "exact, serialized as \"p/q\""},
      {"epsilon_normalization", "eps(alpha, 0) = eps(0, alpha) = 1"},
      {"bracket", "[u_m, v_n] = sum_j C(m, j) (u_j v)_{m+n-j}, graded commutator with sign (-1)^{p(u) p(v)}"},
      {"tensor_sign", to_string(sign)},
      {"tensor_sign_rule", sign == TensorSign::printed ? "(-1)^{p(u) chi(beta, beta)} on the bosonic part of w"
                                                       : "(-1)^{#odd(u) chi(beta, beta)} on the bosonic part of w"},
      {"grading", "deg e^alpha = 2 - chi(alpha, alpha); b_{-i} adds 2i; f_{-j} adds 2j - 1; the vacuum has degree 2"},
      {"geometric_grading", "homological degree (2i per even u, 2i - 1 per odd u) + 2 - chi(alpha, alpha)"},
      {"graded_field_shift",
       "with sector shift chi(alpha, alpha) instead (vacuum in degree 0), deg u_n w = deg u + deg w - 2n - 2 "
       "whenever chi is symmetric and no odd generators occur; reported as degree_form_shift"},
  };
}

json report_head(const std::string& command, TensorSign sign = TensorSign::printed) {
  return {{"command", command}, {"conventions", conventions(sign)}};
}

json rational_matrix(const std::vector<QVec>& m) {
  json rows = json::array();
  for (const auto& r : m) {
    json row = json::array();
    for (const auto& x : r) row.push_back(to_string(x));
    rows.push_back(row);
  }
  return rows;
}

std::string read_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw SchemaError("cannot open " + path);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

TensorSign parse_sign(const std::string& s) {
  if (s == "printed") return TensorSign::printed;
  if (s == "standard") return TensorSign::standard;
  throw std::invalid_argument("sign must be 'printed' or 'standard'");
}

/// Built-in name, or a JSON file holding a variety.
VarietyModel variety_arg(const std::string& s, bool validate = true) {
  try {
    return builtin(s);
  } catch (const std::invalid_argument&) {
    return load_variety(s, validate);
  }
}

SignTable table_from_json(const json& j, const FGAbelianGroup& group) {
  SignTable t(group);
  for (const auto& e : j.at("entries"))
    t.set(group.canonical(e.at("alpha").get<Coords>()), group.canonical(e.at("beta").get<Coords>()),
          e.at("sign").get<int>());
  return t;
}

json cocycle_report(const CocycleReport& r) {
  json v = json::array();
  for (const auto& x : r.violations) {
    json args = json::array();
    for (const auto& a : x.args) args.push_back(a);
    v.push_back({{"rule", x.rule}, {"args", args}});
  }
  return {{"violations", v}, {"total_violations", r.total_violations}, {"triples_checked", r.triples_checked}};
}

json axiom_json(const AxiomReport& a) {
  json j = {{"axiom", a.axiom}, {"ok", a.ok}, {"comparisons", a.comparisons}};
  j["minimal_n"] = a.minimal_n ? json(*a.minimal_n) : json(nullptr);
  if (!a.ok) j["first_failure"] = a.detail;
  return j;
}

json compare_json(const CompareReport& r) {
  json j = {{"variety", r.variety},
            {"variant", to_string(r.variant)},
            {"window_states", r.window_states},
            {"even_generators", r.even_generators},
            {"odd_generators", r.odd_generators},
            {"generator_checks", r.generator_checks},
            {"closed_form_checks", r.closed_form_checks},
            {"sector_field_checks", r.sector_field_checks},
            {"spanning_checks", r.spanning_checks},
            {"random_pair_checks", r.random_pair_checks},
            {"failures", r.failures},
            {"ok", r.ok()}};
  if (r.first_divergence) {
    const auto& d = *r.first_divergence;
    j["first_divergence"] = {{"check", d.check},        {"u", d.u}, {"w", d.w}, {"n", d.n},
                             {"abstract", d.abstract_value}, {"geometric", d.geometric_value}};
  }
  return j;
}

struct Settings {
  std::string file, lattice, variety, u, w, variant = "cy", sign = "printed", table, kind = "auto", against;
  long long n = 0;
  int window = 2, max_z = 6, depth = 3, samples = 50, nmax = 8, max_mode = 5, sector_window = 1, twists = 5,
      random_pairs = 20;
  std::uint64_t seed = 7;
};

int cmd_validate(const Settings& s, std::ostream& out) {
  std::string kind = s.kind;
  json report = report_head("validate");
  json violations = json::array();
  if (kind == "auto") {
    bool builtin_name = false;
    for (const auto& n : builtin_names()) builtin_name = builtin_name || n == s.file;
    if (builtin_name || s.file.rfind("genus_g(", 0) == 0)
      kind = "variety";
    else
      kind = json::parse(read_file(s.file), nullptr, false).contains("kbasis") ? "variety" : "lattice";
  }
  if (kind == "lattice") {
    for (const auto& v : validate_superlattice(load_lattice(s.file)))
      violations.push_back({{"kind", v.kind}, {"detail", v.detail}});
  } else if (kind == "variety") {
    const VarietyModel m = variety_arg(s.file, false);
    report["name"] = m.name;
    for (const auto& p : validate_variety(m)) violations.push_back({{"kind", "variety"}, {"detail", p}});
  } else {
    throw std::invalid_argument("kind must be auto, lattice or variety");
  }
  report["kind"] = kind;
  report["violations"] = violations;
  report["ok"] = violations.empty();
  out << report.dump(2) << "\n";
  return violations.empty() ? exit_ok : exit_violation;
}

int cmd_cocycle(const Settings& s, std::ostream& out) {
  const SuperLattice lat = load_lattice(s.file);
  json report = report_head("cocycle");
  report["window"] = s.window;
  CocycleReport r;
  if (!s.table.empty()) {
    const SignTable t = table_from_json(json::parse(read_file(s.table)), lat.bplus);
    r = verify_cocycle(t, lat, s.window);
    report["source"] = s.table;
  } else {
    const SignCocycle eps = build_epsilon(lat);
    r = verify_cocycle(eps, lat, s.window);
    report["generator_signs"] = eps.signs();
    json entries = json::array();
    const auto elems = window_elements(lat.bplus, s.window);
    for (const auto& a : elems)
      for (const auto& b : elems) entries.push_back({{"alpha", a}, {"beta", b}, {"sign", eps(a, b)}});
    report["table"] = {{"entries", entries}};
  }
  report.update(cocycle_report(r));
  report["ok"] = r.ok();
  out << report.dump(2) << "\n";
  return r.ok() ? exit_ok : exit_violation;
}

int cmd_euler(const Settings& s, std::ostream& out) {
  const VarietyModel m = variety_arg(s.file, false);
  std::vector<int> all;
  json names = json::array(), parities = json::array();
  for (std::size_t k = 0; k < m.kbasis.size(); ++k) {
    all.push_back(static_cast<int>(k));
    names.push_back(m.kbasis[k].name);
    parities.push_back(m.kbasis[k].parity);
  }
  const auto chi = euler_matrix(m, all), sym = euler_matrix(m, all, true);
  bool integral = true;
  for (const auto& row : chi)
    for (const auto& x : row) integral = integral && x.get_den() == 1;
  json report = report_head("euler");
  report["variety"] = m.name;
  report["names"] = names;
  report["parities"] = parities;
  report["chi"] = rational_matrix(chi);
  report["chi_sym"] = rational_matrix(sym);
  report["integral"] = integral;
  json violations = json::array();
  for (const auto& p : validate_variety(m)) violations.push_back(p);
  report["violations"] = violations;
  report["ok"] = violations.empty();
  out << report.dump(2) << "\n";
  return violations.empty() ? exit_ok : exit_violation;
}

int cmd_mode(const Settings& s, std::ostream& out) {
  const SuperLattice lat = load_lattice(s.lattice);
  const TensorSign sign = parse_sign(s.sign);
  const LatticeVA va(FockSpace(lat), build_epsilon(lat).function(), sign);
  const FockState u = parse_state(va.space(), s.u), w = parse_state(va.space(), s.w);
  const FockState r = va.y_mode(u, s.n, w);
  json report = report_head("mode", sign);
  report["u"] = format_state(va.space(), u);
  report["w"] = format_state(va.space(), w);
  report["n"] = s.n;
  report["result"] = format_state(va.space(), r);
  auto d = degree(va.space(), r);
  auto df = degree(va.space(), r, DegreeShift::form);
  report["degree"] = d ? json(*d) : json(nullptr);
  report["degree_form_shift"] = df ? json(*df) : json(nullptr);
  out << report.dump(2) << "\n";
  return exit_ok;
}

int cmd_geomode(const Settings& s, std::ostream& out) {
  const VarietyModel m = variety_arg(s.variety);
  const Variant variant = parse_variant(s.variant);
  const JoyceVA va(m, variant, variant_epsilon(m, variant).function());
  const HClass u = parse_class(m, s.u), w = parse_class(m, s.w);
  const HClass r = va.mode(u, s.n, w);
  json report = report_head("geomode");
  report["variety"] = m.name;
  report["variant"] = to_string(variant);
  report["u"] = format_class(m, u);
  report["w"] = format_class(m, w);
  report["n"] = s.n;
  report["result"] = format_class(m, r);
  auto d = va.hat_degree(r);
  auto df = va.hat_degree(r, DegreeShift::form);
  report["degree"] = d ? json(*d) : json(nullptr);
  report["degree_form_shift"] = df ? json(*df) : json(nullptr);
  out << report.dump(2) << "\n";
  return exit_ok;
}

int cmd_axioms(const Settings& s, std::ostream& out, std::ostream& err) {
  const SuperLattice lat = load_lattice(s.lattice);
  const TensorSign sign = parse_sign(s.sign);
  const LatticeVA va(FockSpace(lat), build_epsilon(lat).function(), sign);
  AxiomSuiteOptions o;
  o.max_z = s.max_z;
  o.depth = s.depth;
  o.samples = s.samples;
  o.seed = s.seed;
  o.n_max = s.nmax;
  const AxiomSuiteReport r = run_axiom_suite(va, o);
  json report = report_head("axioms", sign);
  report["seed"] = s.seed;
  report["window_states"] = r.window_states;
  json axioms = json::array();
  for (const auto& a : r.axioms) {
    axioms.push_back(axiom_json(a));
    err << a.axiom << ": " << (a.ok ? "ok" : "FAILED") << " (" << a.comparisons << " comparisons)\n";
  }
  report["axioms"] = axioms;
  report["ok"] = r.ok();
  out << report.dump(2) << "\n";
  return r.ok() ? exit_ok : exit_violation;
}

int cmd_compare(const Settings& s, std::ostream& out, std::ostream& err) {
  const VarietyModel m = variety_arg(s.variety);
  const Variant variant = parse_variant(s.variant);
  CompareOptions o;
  o.max_mode = s.max_mode;
  o.depth = s.depth;
  o.sector_window = s.sector_window;
  o.seed = s.seed;
  o.random_pairs = s.random_pairs;
  o.sign = parse_sign(s.sign);
  const CompareReport r = compare_fields(m, variant, variant_epsilon(m, variant).function(), o);
  json report = report_head("compare", o.sign);
  report.update(compare_json(r));
  out << report.dump(2) << "\n";
  err << m.name << " (" << to_string(variant) << "): " << r.window_states << " window states, "
      << r.generator_checks << " generator checks, " << r.spanning_checks << " spanning checks, "
      << r.random_pair_checks << " random-pair checks, " << r.failures << " failures\n";
  return r.ok() ? exit_ok : exit_violation;
}

int cmd_independence(const Settings& s, std::ostream& out, std::ostream& err) {
  const VarietyModel m = variety_arg(s.variety);
  const SuperLattice lat = superlattice_of(m, Variant::cy);
  const SignCocycle eps = build_epsilon(lat);
  json report = report_head("independence");
  report["variety"] = m.name;
  json runs = json::array();
  bool ok = true;
  auto record = [&](const IndependenceReport& r, json entry) {
    entry["checks"] = r.checks;
    entry["failures"] = r.failures;
    entry["refused"] = r.refused;
    if (!r.detail.empty()) entry["detail"] = r.detail;
    entry["ok"] = r.ok();
    ok = ok && r.ok();
    err << (r.refused ? "refused" : (r.ok() ? "ok" : "FAILED")) << ": " << r.checks << " checks\n";
    runs.push_back(entry);
  };
  if (!s.against.empty()) {
    const SignTable t = table_from_json(json::parse(read_file(s.against)), lat.bplus);
    record(epsilon_independence(lat, eps, t.function(), s.window), {{"against", s.against}});
  } else {
    for (int k = 0; k < s.twists; ++k) {
      const std::uint64_t seed = s.seed + static_cast<std::uint64_t>(k);
      const SignMap eta = random_eta(lat.bplus, s.window, seed);
      record(epsilon_independence(lat, eps, eta), {{"eta_seed", seed}});
    }
  }
  report["runs"] = runs;
  report["ok"] = ok;
  out << report.dump(2) << "\n";
  return ok ? exit_ok : exit_violation;
}

} // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Exact lattice and geometric vertex algebra toolkit", "vertexlab"};
  app.require_subcommand(1);
  Settings s;

  auto* validate = app.add_subcommand("validate", "Check a lattice or variety description");
  validate->add_option("file", s.file, "JSON file or built-in variety name")->required();
  validate->add_option("--kind", s.kind, "auto, lattice or variety");

  auto* cocycle = app.add_subcommand("cocycle", "Solve and verify the sign cocycle of a lattice");
  cocycle->add_option("lattice", s.file, "Lattice JSON")->required();
  cocycle->add_option("--window", s.window, "Coordinate window for verification");
  cocycle->add_option("--verify-table", s.table, "Verify this sign table instead");

  auto* euler = app.add_subcommand("euler", "Euler form matrices of a variety");
  euler->add_option("variety", s.file, "JSON file or built-in name")->required();

  auto* mode = app.add_subcommand("mode", "Compute u_n w in the lattice vertex algebra");
  mode->add_option("--lattice", s.lattice)->required();
  mode->add_option("--u", s.u)->required();
  mode->add_option("--w", s.w)->required();
  mode->add_option("-n", s.n)->required();
  mode->add_option("--sign", s.sign, "printed or standard");

  auto* geomode = app.add_subcommand("geomode", "Compute u_n w on the geometric side");
  geomode->add_option("--variety", s.variety)->required();
  geomode->add_option("--variant", s.variant, "cy or general");
  geomode->add_option("--u", s.u)->required();
  geomode->add_option("--w", s.w)->required();
  geomode->add_option("-n", s.n)->required();

  auto* axioms = app.add_subcommand("axioms", "Run the vertex algebra axiom suite");
  axioms->add_option("--lattice", s.lattice)->required();
  axioms->add_option("--max-z", s.max_z);
  axioms->add_option("--depth", s.depth);
  axioms->add_option("--samples", s.samples);
  axioms->add_option("--seed", s.seed);
  axioms->add_option("--nmax", s.nmax);
  axioms->add_option("--sign", s.sign, "printed or standard");

  auto* compare = app.add_subcommand("compare", "Cross-check the geometric and lattice vertex algebras");
  compare->add_option("--variety", s.variety)->required();
  compare->add_option("--variant", s.variant, "cy or general");
  compare->add_option("--max-mode", s.max_mode);
  compare->add_option("--depth", s.depth);
  compare->add_option("--sector-window", s.sector_window);
  compare->add_option("--seed", s.seed);
  compare->add_option("--random-pairs", s.random_pairs);
  compare->add_option("--sign", s.sign, "printed or standard");

  auto* independence = app.add_subcommand("independence", "Check independence of the sign cocycle choice");
  independence->add_option("--variety", s.variety)->required();
  independence->add_option("--twists", s.twists);
  independence->add_option("--seed", s.seed);
  independence->add_option("--window", s.window);
  independence->add_option("--against", s.against, "Sign table to compare with instead of random twists");

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return exit_ok;
  } catch (const CLI::ParseError& e) {
    err << e.what() << "\n";
    return exit_usage;
  }

  try {
    if (validate->parsed()) return cmd_validate(s, out);
    if (cocycle->parsed()) return cmd_cocycle(s, out);
    if (euler->parsed()) return cmd_euler(s, out);
    if (mode->parsed()) return cmd_mode(s, out);
    if (geomode->parsed()) return cmd_geomode(s, out);
    if (axioms->parsed()) return cmd_axioms(s, out, err);
    if (compare->parsed()) return cmd_compare(s, out, err);
    if (independence->parsed()) return cmd_independence(s, out, err);
  } catch (const SyntaxError& e) {
    err << "syntax error at " << e.what() << "\n";
    return exit_usage;
  } catch (const SchemaError& e) {
    err << "schema error: " << e.what() << "\n";
    return exit_usage;
  } catch (const json::exception& e) {
    err << "schema error: " << e.what() << "\n";
    return exit_usage;
  } catch (const ModelInvalid& e) {
    err << "invalid model: " << e.what() << "\n";
    return exit_violation;
  } catch (const TorsionObstruction& e) {
    err << "torsion obstruction: " << e.what() << "\n";
    return exit_violation;
  } catch (const std::invalid_argument& e) {
    err << "usage error: " << e.what() << "\n";
    return exit_usage;
  } catch (const std::out_of_range& e) {
    err << "usage error: " << e.what() << "\n";
    return exit_usage;
  }
  return exit_usage;
}

} // namespace vertexlab
