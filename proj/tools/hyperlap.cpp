// hyperlap: transforms, inversion, solving and the verification suites from the shell.
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>

#include "CLI11.hpp"
#include "json.hpp"

#include "hyperlap/error.hpp"
#include "hyperlap/laplace.hpp"
#include "hyperlap/literal.hpp"
#include "hyperlap/opcalc.hpp"
#include "hyperlap/verify.hpp"

using namespace hyperlap;
using nlohmann::json;

namespace {

enum ExitCode { kOk = 0, kVerifyFail = 1, kConfig = 2, kNumeric = 3, kSolvability = 4 };

int exit_code(const Error& e) {
  switch (e.code()) {
    case Errc::syntax_error:
    case Errc::unknown_identifier:
    case Errc::config_error:
    case Errc::domain_mismatch:
    case Errc::improper_cone:
      return kConfig;
    case Errc::solvability_fail:
    case Errc::empty_hpc:
      return kSolvability;
    default:
      return kNumeric;
  }
}

struct ConfigError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// ------------------------------------------------------------------ options

enum class Kind { text, number, integer, list, flag, object };

struct Spec {
  std::string name;
  Kind kind;
  json fallback;  // null: chosen by the command
  std::string help;
};

struct Command {
  std::string name, help;
  std::vector<Spec> specs;
};

// Flag storage bound into CLI11.
struct Bound {
  CLI::App* app = nullptr;
  std::map<std::string, std::string> scalars;
  std::map<std::string, std::vector<std::string>> lists;
  std::map<std::string, bool> flags;
};

double default_tol() {
  if (const char* env = std::getenv("HYPERLAP_TOL")) {
    char* end = nullptr;
    double v = std::strtod(env, &end);
    if (end == env || *end != '\0' || !(v > 0)) throw ConfigError(std::string("bad HYPERLAP_TOL '") + env + "'");
    return v;
  }
  return 1e-6;
}

json typed(const Spec& s, const std::string& text) {
  try {
    switch (s.kind) {
      case Kind::number: {
        std::size_t used = 0;
        double v = std::stod(text, &used);
        if (used != text.size()) throw std::invalid_argument(text);
        return v;
      }
      case Kind::integer: {
        std::size_t used = 0;
        long v = std::stol(text, &used);
        if (used != text.size()) throw std::invalid_argument(text);
        return v;
      }
      case Kind::object:
        return json::parse(text);
      default:
        return text;
    }
  } catch (const std::exception&) {
    throw ConfigError("--" + s.name + ": cannot read '" + text + "'");
  }
}

void check_type(const Spec& s, json& v) {
  auto bad = [&] { throw ConfigError("config key '" + s.name + "' has the wrong type"); };
  if (v.is_null()) return;
  switch (s.kind) {
    case Kind::text:
      if (!v.is_string()) bad();
      break;
    case Kind::number:
      if (!v.is_number()) bad();
      break;
    case Kind::integer:
      if (!v.is_number_integer()) bad();
      break;
    case Kind::flag:
      if (!v.is_boolean()) bad();
      break;
    case Kind::object:
      if (!v.is_object()) bad();
      break;
    case Kind::list:
      if (!v.is_array()) v = json::array({v});
      for (auto& x : v) {
        if (x.is_number()) x = x.dump();
        if (!x.is_string()) bad();
      }
      break;
  }
}

// Effective configuration: defaults, then the config file, then flags.
json effective(const Command& c, const Bound& b, const std::string& config_path, const CLI::App& root) {
  json out = json::object();
  for (auto& s : c.specs) out[s.name] = s.fallback;
  out["tol"] = default_tol();
  if (!config_path.empty()) {
    std::ifstream in(config_path);
    if (!in) throw ConfigError("cannot open config '" + config_path + "'");
    json file;
    try {
      file = json::parse(in);
    } catch (const json::parse_error& e) {
      throw ConfigError(std::string("config is not JSON: ") + e.what());
    }
    if (!file.is_object()) throw ConfigError("config must be a JSON object");
    if (file.contains("command") && file["command"] != c.name)
      throw ConfigError("config is for command '" + file["command"].get<std::string>() + "'");
    for (auto& [key, value] : file.items()) {
      if (key == "command") continue;
      if (key == "tol") {
        if (!value.is_number() || !(value.get<double>() > 0)) throw ConfigError("config key 'tol' must be positive");
        out["tol"] = value;
        continue;
      }
      auto it = std::find_if(c.specs.begin(), c.specs.end(), [&](const Spec& s) { return s.name == key; });
      if (it == c.specs.end()) throw ConfigError("unknown config key '" + key + "'");
      json v = value;
      check_type(*it, v);
      out[key] = v;
    }
  }
  for (auto& s : c.specs) {
    const CLI::Option* o = b.app->get_option_no_throw(s.kind == Kind::list && c.name == "verify" ? "suites" : "--" + s.name);
    if (!o || o->count() == 0) continue;
    if (s.kind == Kind::flag) out[s.name] = b.flags.at(s.name);
    else if (s.kind == Kind::list) out[s.name] = b.lists.at(s.name);
    else out[s.name] = typed(s, b.scalars.at(s.name));
  }
  if (const CLI::Option* o = root.get_option_no_throw("--tol"); o && o->count() > 0) {
    double t = o->as<double>();
    if (!(t > 0)) throw ConfigError("--tol must be positive");
    out["tol"] = t;
  }
  return out;
}

void write_atomic(const std::string& path, const std::string& text) {
  const std::filesystem::path p(path);
  const std::filesystem::path tmp = p.string() + ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw ConfigError("cannot write '" + path + "'");
    out << text;
    if (!out.flush()) throw ConfigError("cannot write '" + path + "'");
  }
  std::filesystem::rename(tmp, p);
}

struct Output {
  std::string json_path, csv_path;

  void emit(const json& j) const {
    const std::string text = j.dump(2) + "\n";
    if (json_path.empty()) std::cout << text;
    else write_atomic(json_path, text);
  }
  void csv(const std::string& text) const {
    if (!csv_path.empty()) write_atomic(csv_path, text);
  }
};

std::string need(const json& cfg, const std::string& key) {
  if (!cfg[key].is_string() || cfg[key].get<std::string>().empty()) throw ConfigError("missing --" + key);
  return cfg[key].get<std::string>();
}

CVector read_point(const std::string& text) {
  CVector z;
  std::stringstream ss(text);
  std::string part;
  while (std::getline(ss, part, ',')) z.push_back(parse_scalar(part));
  if (z.empty()) throw ConfigError("empty point '" + text + "'");
  return z;
}

json point_json(const CVector& z) {
  json a = json::array();
  for (cplx v : z) a.push_back(cplx_to_json(v));
  return a;
}

Profile profile_from(const json& cfg, const Profile& fallback) {
  Profile p = fallback;
  if (cfg.contains("chain") && cfg["chain"].is_object()) {
    const json& ch = cfg["chain"];
    if (ch.value("kind", "inverse") != "inverse") throw ConfigError("inverse needs a chain of kind 'inverse'");
    const json psi = ch.value("psi", json::object());
    p.c0 = psi.value("c0", p.c0);
    p.c1 = psi.value("c1", p.c1);
    p.p = psi.value("p", p.p);
  }
  if (!cfg["c0"].is_null()) p.c0 = cfg["c0"].get<double>();
  if (!cfg["c1"].is_null()) p.c1 = cfg["c1"].get<double>();
  if (!cfg["p"].is_null()) p.p = cfg["p"].get<double>();
  return p;
}

std::string pairing_csv(const std::vector<TestDensity>& bat, const std::vector<cplx>& v) {
  std::ostringstream os;
  os.precision(17);
  os << "index,density,re,im\n";
  for (std::size_t i = 0; i < v.size(); ++i)
    os << i << ",\"" << bat[i].describe() << "\"," << v[i].real() << "," << v[i].imag() << "\n";
  return os.str();
}

json cplx_list(const std::vector<cplx>& v) {
  json a = json::array();
  for (cplx x : v) a.push_back(cplx_to_json(x));
  return a;
}

AnalyticFunction function_from(const std::string& text, int n) {
  AnalyticFunction f;
  f.f = expr_function(text, n);
  return f;
}

bool is_zero_function(const std::string& text) {
  Expr e = parse(text);
  return is_constant(e) && evaluate(e, {}) == cplx(0.0);
}

// ------------------------------------------------------------------ commands

int cmd_transform(const json& cfg, const Output& out) {
  const Hyperfunction u = parse_literal(need(cfg, "u"));
  ForwardOptions fo;
  fo.eps = cfg["eps"].get<double>();
  fo.kappa = cfg["kappa"].get<double>();
  fo.back = cfg["back"].get<double>();
  fo.tol = cfg["quad_tol"].get<double>();
  if (cfg.contains("chain") && cfg["chain"].is_object()) {
    const json& ch = cfg["chain"];
    if (ch.value("kind", "rayloop") != "rayloop") throw ConfigError("transform needs a chain of kind 'rayloop'");
    fo.eps = ch.value("eps", fo.eps);
    fo.back = ch.value("a", fo.back);
  }
  json values = json::array(), errors = json::array();
  std::ostringstream csv;
  csv.precision(17);
  csv << "index,zeta,re,im\n";
  bool failed = false;
  const auto& zs = cfg["zeta"];
  for (std::size_t i = 0; i < zs.size(); ++i) {
    CVector z = read_point(zs[i].get<std::string>());
    if (static_cast<int>(z.size()) != u.n) throw ConfigError("zeta '" + zs[i].get<std::string>() + "' has the wrong dimension");
    try {
      cplx v = u.terms.empty() ? cplx(0.0) : forward(u, z, fo);
      values.push_back(cplx_to_json(v));
      errors.push_back(nullptr);
      csv << i << ",\"" << zs[i].get<std::string>() << "\"," << v.real() << "," << v.imag() << "\n";
    } catch (const Error& e) {
      values.push_back(nullptr);
      errors.push_back(e.what());
      failed = true;
    }
  }
  json growth = nullptr;
  if (cfg["growth"].get<bool>() && !u.terms.empty()) {
    const std::vector<double> ts = {2, 4, 6, 10, 14, 20, 28, 40};
    auto rep = growth_certificate(transform(u, fo), hpc_fan(u.support, static_cast<int>(cfg["rays"].get<long>())), ts,
                                  0.1);
    growth = {{"pass", rep.pass()},
              {"C", rep.C},
              {"eps", rep.eps},
              {"samples", rep.samples.size()},
              {"violations", rep.violations.size()},
              {"out_of_region", rep.out_of_region}};
  }
  out.emit({{"command", "transform"},
            {"config", cfg},
            {"literal", literal_to_json(u)},
            {"values", values},
            {"errors", errors},
            {"growth", growth}});
  out.csv(csv.str());
  return failed ? kNumeric : kOk;
}

Hyperfunction run_inverse(const json& cfg, const AnalyticFunction& f, int n, const ClosedConicSet& K) {
  if (n == 1) {
    InverseChain base = default_inverse_chain(cfg["smax"].get<double>());
    return inverse(f, K, make_inverse_chain(base.xi0, profile_from(cfg, base.psi)));
  }
  Vector anchor;
  for (auto& a : cfg["anchor"]) anchor.push_back(parse_scalar(a.get<std::string>()).real());
  if (anchor.size() != 2) throw ConfigError("--anchor needs two coordinates");
  return inverse(f, K, make_orthant_chain(anchor, profile_from(cfg, Profile{0.0, 1.0, 0.5})));
}

int cmd_inverse(const json& cfg, const Output& out) {
  const std::string text = need(cfg, "f");
  const int n = static_cast<int>(cfg["n"].get<long>());
  if (n != 1 && n != 2) throw ConfigError("--n must be 1 or 2");
  const ClosedConicSet K = parse_cone(cfg["K"].is_null() ? (n == 1 ? "[0,inf)" : "orthant(0,0)") : need(cfg, "K"));
  if (static_cast<int>(K.dim()) != n) throw ConfigError("cone dimension does not match --n");
  const auto bat = density_battery(n);
  Hyperfunction u = zero_hyperfunction(n);
  json halfspaces = json::array();
  if (!is_zero_function(text)) {
    const AnalyticFunction f = function_from(text, n);
    u = run_inverse(cfg, f, n, K);
    auto fam = support_estimate(f, [K](const Direction& xi) { return support_function(K, xi); },
                                hpc_fan(K, n == 1 ? 1 : 5));
    for (auto& h : fam.entries) halfspaces.push_back({{"unit", h.xi.real_part()}, {"bound", h.bound}});
  }
  const auto v = pairing_batch(u, bat);
  out.emit({{"command", "inverse"},
            {"config", cfg},
            {"literal", literal_to_json(u)},
            {"support", {{"cone", cone_to_json(K)}, {"halfspaces", halfspaces}}},
            {"pairings", cplx_list(v)}});
  out.csv(pairing_csv(bat, v));
  return kOk;
}

int cmd_roundtrip(const json& cfg, const Output& out) {
  const double tol = cfg["tol"].get<double>();
  json result = {{"command", "roundtrip"}, {"config", cfg}};
  double diff = 0.0;
  if (cfg["u"].is_string()) {
    // I L(L u) against u on the pairing battery
    const Hyperfunction u = parse_literal(cfg["u"].get<std::string>());
    if (u.n != 1) throw Error(Errc::unsupported, "the hyperfunction round trip runs in one variable");
    const auto bat = density_battery(1);
    const AnalyticFunction g = transform(u).as_analytic();
    InverseChain base = default_inverse_chain(std::max(cfg["smax"].get<double>(), u.growth_type()));
    const Hyperfunction w = inverse(g, u.support, make_inverse_chain(base.xi0, profile_from(cfg, base.psi)));
    auto a = pairing_batch(u, bat), b = pairing_batch(w, bat);
    for (std::size_t i = 0; i < a.size(); ++i) diff = std::max(diff, std::abs(a[i] - b[i]));
    result["mode"] = "hyperfunction";
    result["pairings"] = cplx_list(b);
  } else {
    // L(I L f) against f at the sample points
    const std::string text = need(cfg, "f");
    const int n = static_cast<int>(cfg["n"].get<long>());
    // forward transforms of two-variable inverse pieces take minutes; orthant checks cover n = 2
    if (n != 1) throw Error(Errc::unsupported, "the function round trip runs in one variable");
    const ClosedConicSet K = parse_cone(cfg["K"].is_null() ? "[0,inf)" : need(cfg, "K"));
    const AnalyticFunction f = function_from(text, n);
    const Hyperfunction u = run_inverse(cfg, f, n, K);
    ForwardOptions fo;
    fo.eps = 0.3;
    fo.kappa = 1.0;
    fo.back = 1.5;
    fo.tol = 1e-9;
    std::vector<CVector> zs;
    if (cfg["zeta"].is_null()) {
      // default samples sit 2.5 or more to the right of the rightmost singularity
      const double s = cfg["smax"].get<double>();
      for (cplx z : {cplx(2.5, 0), cplx(3, 0.5), cplx(3, -0.5), cplx(4, 0)}) zs.push_back({z + s});
    } else {
      for (auto& z : cfg["zeta"]) zs.push_back(read_point(z.get<std::string>()));
    }
    auto v = forward_batch(u, zs, fo);
    json rows = json::array();
    for (std::size_t i = 0; i < zs.size(); ++i) {
      const cplx ref = f(zs[i].data());
      diff = std::max(diff, std::abs(v[i] - ref));
      rows.push_back({{"zeta", point_json(zs[i])}, {"value", cplx_to_json(v[i])}, {"f", cplx_to_json(ref)}});
    }
    result["mode"] = "function";
    result["samples"] = rows;
  }
  result["max_diff"] = diff;
  result["pass"] = diff < tol;
  out.emit(result);
  return diff < tol ? kOk : kNumeric;
}

int cmd_solve(const json& cfg, const Output& out) {
  const Hyperfunction f = parse_literal(need(cfg, "f"));
  const DiffOp P = DiffOp::parse(need(cfg, "P"), f.n);
  const ClosedConicSet K = parse_cone(need(cfg, "K"));
  SolveOptions so;
  so.margin = cfg["margin"].get<double>();
  so.pole_gap = cfg["pole_gap"].get<double>();
  const SolveResult r = solve(P, f, K, so);
  const auto bat = density_battery(1);
  const auto v = pairing_batch(r.u, bat);
  const double tol = cfg["tol"].get<double>();
  out.emit({{"command", "solve"},
            {"config", cfg},
            {"solution", literal_to_json(r.u)},
            {"roots", cplx_list(r.roots)},
            {"chain", {{"kind", "inverse"}, {"xi0", r.chain.xi0}, {"psi", {{"c0", r.chain.psi.c0}, {"c1", r.chain.psi.c1}, {"p", r.chain.psi.p}}}}},
            {"solvability",
             {{"solvable", r.solvability.solvable},
              {"min_abs", r.solvability.min_abs},
              {"slack", r.solvability.slack},
              {"directions", r.solvability.directions}}},
            {"residual", cplx_list(r.residual)},
            {"max_residual", r.max_residual},
            {"pass", r.max_residual < tol},
            {"pairings", cplx_list(v)}});
  out.csv(pairing_csv(bat, v));
  return r.max_residual < tol ? kOk : kNumeric;
}

int cmd_char(const json& cfg, const Output& out) {
  std::vector<std::string> texts;
  for (auto& p : cfg["P"]) texts.push_back(p.get<std::string>());
  if (texts.empty()) throw ConfigError("missing --P");
  int n = static_cast<int>(cfg["n"].get<long>());
  if (n == 0) {
    // infer from the highest Dk index
    n = 1;
    for (auto& t : texts)
      for (std::size_t i = 0; i + 1 < t.size(); ++i)
        if (t[i] == 'D' && std::isdigit(static_cast<unsigned char>(t[i + 1]))) n = std::max(n, t[i + 1] - '0');
  }
  std::vector<DiffOp> gens;
  for (auto& t : texts) gens.push_back(DiffOp::parse(t, n));
  const double tol = cfg["threshold"].is_null() ? -1.0 : cfg["threshold"].get<double>();
  const CharReport cr = char_infinity(gens, cfg["mesh"].get<double>(), tol);
  json flagged = json::array();
  for (auto i : cr.flagged) flagged.push_back({{"direction", point_json(cr.grid.directions[i])}, {"value", cr.value[i]}});
  json result = {{"command", "char"},
                 {"config", cfg},
                 {"grid", cr.grid.directions.size()},
                 {"cover", cr.cover},
                 {"flagged", flagged}};
  int code = kOk;
  if (cfg["K"].is_string()) {
    if (gens.size() != 1) throw ConfigError("the solvability check takes a single operator");
    const auto s = check_solvable(gens[0], parse_cone(cfg["K"].get<std::string>()), cfg["mesh"].get<double>());
    result["solvability"] = {{"solvable", s.solvable}, {"min_abs", s.min_abs}, {"slack", s.slack},
                             {"depth", s.depth}, {"directions", s.directions}, {"worst", point_json(s.worst)}};
  }
  out.emit(result);
  out.csv(cr.csv());
  return code;
}

int cmd_pair(const json& cfg, const Output& out) {
  const Hyperfunction u = parse_literal(need(cfg, "u"));
  const std::string which = cfg["battery"].get<std::string>();
  std::vector<TestDensity> bat;
  if (which == "standard") bat = density_battery(u.n);
  else if (which == "sharp") bat = sharp_density_battery(u.n);
  else throw ConfigError("--battery is 'standard' or 'sharp'");
  const auto v = pairing_batch(u, bat);
  out.emit({{"command", "pair"}, {"config", cfg}, {"literal", literal_to_json(u)}, {"pairings", cplx_list(v)}});
  out.csv(pairing_csv(bat, v));
  return kOk;
}

int cmd_verify(const json& cfg, const Output& out) {
  if (cfg["list"].get<bool>()) {
    for (auto& s : suite_names()) std::cout << s << "\n";
    return kOk;
  }
  std::vector<std::string> names;
  for (auto& s : cfg["suites"]) names.push_back(s.get<std::string>());
  if (names.empty()) names = suite_names();
  for (auto& s : names)
    if (std::find(suite_names().begin(), suite_names().end(), s) == suite_names().end())
      throw ConfigError("unknown suite '" + s + "'");
  json suites = json::array();
  bool all = true;
  std::ostringstream csv;
  csv.precision(6);
  csv << "suite,check,value,limit,pass\n";
  for (auto& s : names) {
    SuiteResult r = run_suite(s);
    all = all && r.pass;
    std::printf("%-12s %s  worst %.3e (limit %.1e)  %.2fs%s\n", r.name.c_str(), r.pass ? "PASS" : "FAIL", r.metric,
                r.threshold, r.seconds, r.error.empty() ? "" : ("  error: " + r.error).c_str());
    std::fflush(stdout);
    json checks = json::array();
    for (auto& c : r.checks) {
      checks.push_back({{"label", c.label}, {"value", c.value}, {"limit", c.limit}, {"pass", c.pass}});
      csv << r.name << ",\"" << c.label << "\"," << c.value << "," << c.limit << "," << (c.pass ? 1 : 0) << "\n";
    }
    suites.push_back({{"name", r.name},
                      {"title", r.title},
                      {"pass", r.pass},
                      {"metric", r.metric},
                      {"threshold", r.threshold},
                      {"seconds", r.seconds},
                      {"time_limit", r.time_limit},
                      {"error", r.error.empty() ? json(nullptr) : json(r.error)},
                      {"checks", checks}});
  }
  if (!out.json_path.empty()) out.emit({{"command", "verify"}, {"config", cfg}, {"pass", all}, {"suites", suites}});
  out.csv(csv.str());
  return all ? kOk : kVerifyFail;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Laplace hyperfunction calculus"};
  app.require_subcommand(1);
  app.fallthrough();
  std::string config_path;
  Output out;
  double tol_flag = 0.0;
  app.add_option("--config", config_path, "JSON config; flags override its values");
  app.add_option("--out", out.json_path, "JSON output path (default: stdout)");
  app.add_option("--csv", out.csv_path, "CSV output path");
  app.add_option("--tol", tol_flag, "acceptance tolerance (default: HYPERLAP_TOL or 1e-6)");

  const json null = nullptr;
  std::vector<Command> commands = {
      {"transform",
       "Laplace transform of a hyperfunction literal at zeta samples",
       {{"u", Kind::text, null, "hyperfunction literal, e.g. delta(1)"},
        {"zeta", Kind::list, json::array({"2"}), "sample points; components separated by commas"},
        {"eps", Kind::number, 0.3, "loop height"},
        {"kappa", Kind::number, 0.0, "tail slope"},
        {"back", Kind::number, -1.0, "overshoot behind the vertex (negative: eps)"},
        {"quad_tol", Kind::number, 1e-11, "quadrature tolerance"},
        {"growth", Kind::flag, true, "run the growth certificate"},
        {"rays", Kind::integer, 5, "growth rays"},
        {"chain", Kind::object, null, "{\"kind\":\"rayloop\",\"a\":...,\"eps\":...}"}}},
      {"inverse",
       "inverse transform of an expression in zeta",
       {{"f", Kind::text, null, "expression in zeta (zeta1, zeta2 for n = 2)"},
        {"n", Kind::integer, 1, "dimension"},
        {"K", Kind::text, null, "support cone, e.g. [0,inf) or orthant(0,0)"},
        {"smax", Kind::number, 0.0, "rightmost singular abscissa"},
        {"c0", Kind::number, null, "profile c0"},
        {"c1", Kind::number, null, "profile c1"},
        {"p", Kind::number, null, "profile exponent"},
        {"anchor", Kind::list, json::array({"0.5", "0.5"}), "orthant chain anchor (n = 2)"},
        {"chain", Kind::object, null, "{\"kind\":\"inverse\",\"xi0\":1,\"psi\":{...}}"}}},
      {"roundtrip",
       "L(I L f) = f at samples, or I L(L u) = u on the pairing battery",
       {{"f", Kind::text, null, "expression in zeta"},
        {"u", Kind::text, null, "hyperfunction literal (takes precedence over f)"},
        {"n", Kind::integer, 1, "dimension"},
        {"K", Kind::text, null, "support cone"},
        {"smax", Kind::number, 0.0, "rightmost singular abscissa"},
        {"c0", Kind::number, null, "profile c0"},
        {"c1", Kind::number, null, "profile c1"},
        {"p", Kind::number, null, "profile exponent"},
        {"anchor", Kind::list, json::array({"0.5", "0.5"}), "orthant chain anchor (n = 2)"},
        {"zeta", Kind::list, null, "sample points (default: 2.5 to 4 right of smax)"},
        {"chain", Kind::object, null, "inverse chain"}}},
      {"solve",
       "solve P(d/dx) u = f in one variable",
       {{"P", Kind::text, null, "operator, e.g. D1 - 1"},
        {"f", Kind::text, json("delta(0)"), "right-hand side literal"},
        {"K", Kind::text, json("[0,inf)"), "support cone"},
        {"margin", Kind::number, 0.5, "chain margin beyond the roots"},
        {"pole_gap", Kind::number, 0.1, "minimum chain distance to a root"}}},
      {"char",
       "characteristic directions at infinity",
       {{"P", Kind::list, json::array(), "generators"},
        {"n", Kind::integer, 0, "dimension (0: from the operator names)"},
        {"mesh", Kind::number, 0.02, "grid mesh"},
        {"threshold", Kind::number, null, "relative threshold (default: Lipschitz slack)"},
        {"K", Kind::text, null, "run check_solvable against this cone"}}},
      {"pair",
       "pairings of a literal with a density battery",
       {{"u", Kind::text, null, "hyperfunction literal"},
        {"battery", Kind::text, json("standard"), "standard or sharp"}}},
      {"verify",
       "acceptance suites",
       {{"suites", Kind::list, json::array(), "suite names (default: all)"},
        {"list", Kind::flag, false, "print suite names"}}},
  };

  std::map<std::string, Bound> bound;
  for (auto& c : commands) {
    Bound& b = bound[c.name];
    b.app = app.add_subcommand(c.name, c.help);
    for (auto& s : c.specs) {
      const std::string flag = "--" + s.name;
      if (s.kind == Kind::flag) {
        b.flags[s.name] = false;
        b.app->add_flag(flag + ",!--no-" + s.name, b.flags[s.name], s.help);
      } else if (s.kind == Kind::list) {
        b.lists[s.name];
        if (c.name == "verify" && s.name == "suites") b.app->add_option("suites", b.lists[s.name], s.help);
        else b.app->add_option(flag, b.lists[s.name], s.help);
      } else {
        b.scalars[s.name];
        b.app->add_option(flag, b.scalars[s.name], s.help);
      }
    }
  }

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kOk : kConfig;
  }

  for (auto& c : commands) {
    const Bound& b = bound.at(c.name);
    if (!b.app->parsed()) continue;
    try {
      const json cfg = effective(c, b, config_path, app);
      if (c.name == "transform") return cmd_transform(cfg, out);
      if (c.name == "inverse") return cmd_inverse(cfg, out);
      if (c.name == "roundtrip") return cmd_roundtrip(cfg, out);
      if (c.name == "solve") return cmd_solve(cfg, out);
      if (c.name == "char") return cmd_char(cfg, out);
      if (c.name == "pair") return cmd_pair(cfg, out);
      return cmd_verify(cfg, out);
    } catch (const ConfigError& e) {
      std::cerr << "hyperlap: " << e.what() << "\n";
      return kConfig;
    } catch (const json::exception& e) {
      std::cerr << "hyperlap: config: " << e.what() << "\n";
      return kConfig;
    } catch (const Error& e) {
      std::cerr << "hyperlap: " << e.what() << "\n";
      return exit_code(e);
    } catch (const std::exception& e) {
      std::cerr << "hyperlap: " << e.what() << "\n";
      return kNumeric;
    }
  }
  return kConfig;
}
