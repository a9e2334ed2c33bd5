#include "holo_cli/scenario_io.hpp"

#include <cmath>
#include <fstream>
#include <set>

#include "holo/error.hpp"

namespace holo::cli {

namespace {

[[noreturn]] void schema(const std::string& what) { throw Error(ErrorCode::SchemaError, what); }

void only_keys(const Json& j, const std::string& where, std::initializer_list<const char*> allowed) {
  if (!j.is_object()) schema(where + " must be an object");
  const std::set<std::string> keys(allowed.begin(), allowed.end());
  for (const auto& [key, value] : j.items()) {
    if (!keys.count(key)) schema("unknown key '" + key + "' in " + where);
  }
}

const Json& required(const Json& j, const char* key, const std::string& where) {
  if (!j.contains(key)) schema("missing key '" + std::string(key) + "' in " + where);
  return j.at(key);
}

double number(const Json& j, const std::string& what) {
  if (!j.is_number()) schema(what + " must be a number");
  const double v = j.get<double>();
  if (!std::isfinite(v)) schema(what + " must be finite");
  return v;
}

std::size_t natural(const Json& j, const std::string& what) {
  if (!j.is_number_unsigned()) schema(what + " must be a nonnegative integer");
  return j.get<std::size_t>();
}

bool boolean(const Json& j, const std::string& what) {
  if (!j.is_boolean()) schema(what + " must be true or false");
  return j.get<bool>();
}

std::string text(const Json& j, const std::string& what) {
  if (!j.is_string()) schema(what + " must be a string");
  return j.get<std::string>();
}

Rational rational(const Json& j, const std::string& what) {
  if (j.is_number_integer()) return Rational(j.get<long>());
  if (!j.is_string()) schema(what + " must be an integer or a string \"p/q\"");
  try {
    return series::parse_rational(j.get<std::string>());
  } catch (const std::exception&) {
    schema(what + " is not a rational: " + j.get<std::string>());
  }
}

Quantity quantity(const Json& j, const std::string& what) {
  if (j.is_number()) return Quantity::direct(number(j, what));
  only_keys(j, what, {"log_of"});
  const Json& arg = required(j, "log_of", what);
  std::vector<Rational> factors;
  if (arg.is_array()) {
    for (const auto& f : arg) factors.push_back(rational(f, what + ".log_of"));
  } else {
    factors.push_back(rational(arg, what + ".log_of"));
  }
  if (factors.empty()) schema(what + ".log_of is empty");
  for (const auto& f : factors) {
    if (f <= 0) schema(what + ".log_of needs positive factors");
  }
  return Quantity::log_of_product(std::move(factors));
}

Json quantity_json(const Quantity& q) {
  if (q.log_of.empty()) return q.value;
  if (q.log_of.size() == 1) return Json{{"log_of", series::to_string(q.log_of.front())}};
  Json arr = Json::array();
  for (const auto& f : q.log_of) arr.push_back(series::to_string(f));
  return Json{{"log_of", arr}};
}

std::array<double, 2> complex_param(const Json& j, const std::string& what) {
  if (j.is_number()) return {number(j, what), 0.0};
  if (j.is_array() && j.size() == 2) return {number(j[0], what), number(j[1], what)};
  schema(what + " must be a number or [re, im]");
}

Json complex_json(const std::array<double, 2>& c) {
  if (c[1] == 0.0) return c[0];
  return Json::array({c[0], c[1]});
}

Tolerance tolerance(const Json& j, const std::string& what) {
  only_keys(j, what, {"value", "tol"});
  return {number(required(j, "value", what), what + ".value"), number(required(j, "tol", what), what + ".tol")};
}

Json tolerance_json(const Tolerance& t) { return Json{{"value", t.value}, {"tol", t.tol}}; }

MapSpec map_spec(const Json& j, const std::string& where) {
  only_keys(j, where, {"kind", "alpha", "beta", "R"});
  MapSpec m;
  m.kind = text(required(j, "kind", where), where + ".kind");
  if (j.contains("alpha")) m.alpha = complex_param(j.at("alpha"), where + ".alpha");
  if (j.contains("beta")) m.beta = complex_param(j.at("beta"), where + ".beta");
  if (j.contains("R")) m.R = number(j.at("R"), where + ".R");
  const bool two_point = m.kind == "phi" || m.kind == "psi";
  if (two_point != (m.alpha && m.beta)) schema(where + ": alpha and beta go with phi and psi only");
  if (!(m.R > 0.0)) schema(where + ".R must be positive");
  build_map(m);
  return m;
}

Json map_json(const MapSpec& m) {
  Json j{{"kind", m.kind}};
  if (m.alpha) j["alpha"] = complex_json(*m.alpha);
  if (m.beta) j["beta"] = complex_json(*m.beta);
  if (m.R != 1.0) j["R"] = m.R;
  return j;
}

PlaceSpec place_spec(const Json& j, const std::string& where) {
  only_keys(j, where,
            {"label", "kind", "map", "source", "published", "log_size", "log_radius", "in_S", "log_rho_inv", "kappa"});
  PlaceSpec p;
  p.label = text(required(j, "label", where), where + ".label");
  const std::string kind = text(required(j, "kind", where), where + ".kind");
  if (kind != "arch" && kind != "nonarch") schema(where + ".kind must be arch or nonarch");
  p.archimedean = kind == "arch";
  if (j.contains("map")) p.map = map_spec(j.at("map"), where + ".map");
  if (j.contains("source")) p.source = text(j.at("source"), where + ".source");
  if (p.source != "quadrature" && p.source != "published" && p.source != "sup_norm") {
    schema(where + ".source must be quadrature, published or sup_norm");
  }
  if (j.contains("published")) p.published = number(j.at("published"), where + ".published");
  if (j.contains("log_size")) p.log_size = quantity(j.at("log_size"), where + ".log_size");
  if (j.contains("log_radius")) p.log_radius = quantity(j.at("log_radius"), where + ".log_radius");
  if (j.contains("in_S")) p.in_S = boolean(j.at("in_S"), where + ".in_S");
  if (j.contains("log_rho_inv")) p.log_rho_inv = quantity(j.at("log_rho_inv"), where + ".log_rho_inv");
  if (j.contains("kappa")) {
    const Json& k = j.at("kappa");
    if (k.is_string()) {
      if (k.get<std::string>() != "solve") schema(where + ".kappa must be a number or \"solve\"");
      p.kappa_mode = KappaMode::Solve;
    } else {
      p.kappa_mode = KappaMode::Fixed;
      p.kappa = number(k, where + ".kappa");
    }
  }
  if (p.archimedean) {
    if (p.log_radius) schema(where + ": log_radius belongs to nonarch places");
    if (p.source == "published" && !p.published) schema(where + ": published source needs 'published'");
    if (p.source != "published" && !p.map) schema(where + ": " + p.source + " source needs a map");
    if (!p.map && !p.log_size) schema(where + ": needs a map or log_size");
  } else {
    if (p.map || p.log_size || p.published || j.contains("source")) schema(where + ": nonarch places take log_radius only");
    if (!p.log_radius) schema(where + ": nonarch place needs log_radius");
  }
  if (p.in_S && !p.log_rho_inv) schema(where + ": in_S needs log_rho_inv");
  if (!p.in_S && (p.log_rho_inv || j.contains("kappa"))) schema(where + ": log_rho_inv and kappa need in_S");
  return p;
}

Json place_json(const PlaceSpec& p) {
  Json j{{"label", p.label}, {"kind", p.archimedean ? "arch" : "nonarch"}};
  if (p.map) j["map"] = map_json(*p.map);
  if (p.archimedean) j["source"] = p.source;
  if (p.published) j["published"] = *p.published;
  if (p.log_size) j["log_size"] = quantity_json(*p.log_size);
  if (p.log_radius) j["log_radius"] = quantity_json(*p.log_radius);
  j["in_S"] = p.in_S;
  if (p.log_rho_inv) j["log_rho_inv"] = quantity_json(*p.log_rho_inv);
  if (p.kappa_mode == KappaMode::Solve) j["kappa"] = "solve";
  if (p.kappa_mode == KappaMode::Fixed) j["kappa"] = p.kappa;
  return j;
}

TauSpec tau_spec(const Json& j) {
  only_keys(j, "tau", {"explicit", "b_matrix", "e", "tau_sharp"});
  TauSpec t;
  if (j.contains("explicit") == j.contains("b_matrix")) schema("tau needs exactly one of explicit and b_matrix");
  if (j.contains("explicit")) t.explicit_value = rational(j.at("explicit"), "tau.explicit");
  if (j.contains("b_matrix")) {
    const Json& b = j.at("b_matrix");
    if (!b.is_array() || b.empty()) schema("tau.b_matrix must be a nonempty array of rows");
    for (const auto& row : b) {
      if (!row.is_array()) schema("tau.b_matrix rows must be arrays");
      std::vector<Rational> r;
      for (const auto& x : row) r.push_back(rational(x, "tau.b_matrix entry"));
      t.b_matrix.push_back(std::move(r));
    }
  }
  if (j.contains("e")) {
    if (!j.at("e").is_array()) schema("tau.e must be an array");
    for (const auto& x : j.at("e")) t.e.push_back(natural(x, "tau.e entry"));
  }
  if (j.contains("tau_sharp")) t.tau_sharp = rational(j.at("tau_sharp"), "tau.tau_sharp");
  return t;
}

Json tau_json(const TauSpec& t) {
  Json j = Json::object();
  if (t.explicit_value) {
    j["explicit"] = series::to_string(*t.explicit_value);
  } else {
    Json rows = Json::array();
    for (const auto& row : t.b_matrix) {
      Json r = Json::array();
      for (const auto& x : row) r.push_back(series::to_string(x));
      rows.push_back(r);
    }
    j["b_matrix"] = rows;
  }
  if (!t.e.empty()) j["e"] = t.e;
  if (t.tau_sharp != 0) j["tau_sharp"] = series::to_string(t.tau_sharp);
  return j;
}

Expectation expectation(const Json& j) {
  only_keys(j, "expect", {"bound", "kappa", "kappa_range", "limit_bound"});
  Expectation e;
  if (j.contains("bound")) e.bound = tolerance(j.at("bound"), "expect.bound");
  if (j.contains("kappa")) e.kappa = tolerance(j.at("kappa"), "expect.kappa");
  if (j.contains("limit_bound")) e.limit_bound = tolerance(j.at("limit_bound"), "expect.limit_bound");
  if (j.contains("kappa_range")) {
    const Json& r = j.at("kappa_range");
    if (!r.is_array() || r.size() != 2) schema("expect.kappa_range must be [low, high]");
    e.kappa_range = {{number(r[0], "expect.kappa_range"), number(r[1], "expect.kappa_range")}};
  }
  return e;
}

Json expectation_json(const Expectation& e) {
  Json j = Json::object();
  if (e.bound) j["bound"] = tolerance_json(*e.bound);
  if (e.kappa) j["kappa"] = tolerance_json(*e.kappa);
  if (e.kappa_range) j["kappa_range"] = Json::array({(*e.kappa_range)[0], (*e.kappa_range)[1]});
  if (e.limit_bound) j["limit_bound"] = tolerance_json(*e.limit_bound);
  return j;
}

confmaps::cd to_complex(const std::array<double, 2>& c) { return {c[0], c[1]}; }

}  // namespace

Quantity Quantity::log_of_product(std::vector<Rational> factors) {
  // Summing logs of numerator and denominator keeps huge fractions in range.
  double v = 0.0;
  for (const auto& f : factors) {
    long e_num = 0, e_den = 0;
    const double n = mpz_get_d_2exp(&e_num, f.get_num_mpz_t());
    const double d = mpz_get_d_2exp(&e_den, f.get_den_mpz_t());
    v += std::log(n) - std::log(d) + static_cast<double>(e_num - e_den) * std::log(2.0);
  }
  return {v, std::move(factors)};
}

confmaps::AnalyticMap build_map(const MapSpec& spec) {
  using confmaps::AnalyticMap;
  std::optional<AnalyticMap> base;
  if (spec.kind == "identity") base = AnalyticMap::identity();
  if (spec.kind == "mobius_circle_x") base = AnalyticMap::mobius_circle_x();
  if (spec.kind == "lune_x") base = AnalyticMap::lune_x();
  if (spec.kind == "phi" || spec.kind == "psi") {
    if (!spec.alpha || !spec.beta) schema(spec.kind + " needs alpha and beta");
    base = spec.kind == "phi" ? AnalyticMap::phi(to_complex(*spec.alpha), to_complex(*spec.beta))
                              : AnalyticMap::psi(to_complex(*spec.alpha), to_complex(*spec.beta));
  }
  if (!base) schema("unknown map kind '" + spec.kind + "'");
  return spec.R == 1.0 ? *base : AnalyticMap::scaled(*base, spec.R);
}

ScenarioFile parse_scenario(const Json& j) {
  only_keys(j, "scenario",
            {"name", "m", "m_nu", "gamma", "tau", "places", "coupling", "quadrature", "target_m", "expect", "notes"});
  ScenarioFile s;
  s.name = text(required(j, "name", "scenario"), "name");
  s.m = natural(required(j, "m", "scenario"), "m");
  if (s.m == 0) schema("m must be positive");
  if (j.contains("m_nu")) {
    if (!j.at("m_nu").is_array()) schema("m_nu must be an array");
    for (const auto& x : j.at("m_nu")) s.m_nu.push_back(natural(x, "m_nu entry"));
  }
  if (j.contains("gamma")) s.gamma = rational(j.at("gamma"), "gamma");
  s.tau = tau_spec(required(j, "tau", "scenario"));
  const Json& places = required(j, "places", "scenario");
  if (!places.is_array()) schema("places must be an array");
  for (std::size_t i = 0; i < places.size(); ++i) {
    s.places.push_back(place_spec(places[i], "places[" + std::to_string(i) + "]"));
  }
  if (j.contains("coupling")) s.coupling = text(j.at("coupling"), "coupling");
  if (s.coupling != "single_exponent" && s.coupling != "simultaneous") {
    schema("coupling must be single_exponent or simultaneous");
  }
  if (j.contains("quadrature")) {
    only_keys(j.at("quadrature"), "quadrature", {"grid_n"});
    s.grid_n = natural(required(j.at("quadrature"), "grid_n", "quadrature"), "quadrature.grid_n");
    if (s.grid_n < 16) schema("quadrature.grid_n must be at least 16");
  }
  if (j.contains("target_m")) s.target_m = natural(j.at("target_m"), "target_m");
  if (j.contains("expect")) s.expect = expectation(j.at("expect"));
  if (j.contains("notes")) {
    const Json& n = j.at("notes");
    if (!n.is_object()) schema("notes must be an object of strings");
    for (const auto& [k, v] : n.items()) s.notes[k] = text(v, "notes." + k);
  }
  try {
    holobound::validate(to_scenario(s));
  } catch (const Error& e) {
    if (e.code() == ErrorCode::SchemaError) throw;
    schema(std::string("invalid scenario: ") + e.what());
  }
  return s;
}

ScenarioFile load_scenario(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) schema("cannot open " + path.string());
  Json j;
  try {
    j = Json::parse(in);
  } catch (const nlohmann::json::exception& e) {
    schema(path.string() + ": " + e.what());
  }
  return parse_scenario(j);
}

Json to_json(const ScenarioFile& s) {
  Json j{{"name", s.name}, {"m", s.m}};
  if (!s.m_nu.empty()) j["m_nu"] = s.m_nu;
  if (s.gamma) j["gamma"] = series::to_string(*s.gamma);
  j["tau"] = tau_json(s.tau);
  Json places = Json::array();
  for (const auto& p : s.places) places.push_back(place_json(p));
  j["places"] = places;
  j["coupling"] = s.coupling;
  j["quadrature"] = Json{{"grid_n", s.grid_n}};
  if (s.target_m) j["target_m"] = *s.target_m;
  if (s.expect) j["expect"] = expectation_json(*s.expect);
  if (!s.notes.empty()) j["notes"] = s.notes;
  return j;
}

Rational scenario_tau(const ScenarioFile& s) {
  if (s.tau.explicit_value) return *s.tau.explicit_value;
  try {
    return series::tau(series::DenominatorType::from_matrix(s.tau.b_matrix, s.tau.e));
  } catch (const Error& e) {
    schema(std::string("tau.b_matrix: ") + e.what());
  }
}

holobound::Scenario to_scenario(const ScenarioFile& f) {
  holobound::Scenario s;
  s.name = f.name;
  s.m = f.m;
  s.m_nu = f.m_nu;
  s.gamma = f.gamma;
  s.tau = scenario_tau(f);
  s.tau_sharp = f.tau.tau_sharp;
  s.coupling = f.coupling == "simultaneous" ? holobound::Coupling::Simultaneous : holobound::Coupling::SingleExponent;
  s.grid_n = f.grid_n;
  for (const auto& p : f.places) {
    if (p.archimedean) {
      holobound::ArchPlace a;
      a.label = p.label;
      if (p.map) a.map = build_map(*p.map);
      a.source = p.source == "published"  ? holobound::NumeratorSource::Published
                 : p.source == "sup_norm" ? holobound::NumeratorSource::SupNorm
                                          : holobound::NumeratorSource::Quadrature;
      a.published_numerator = p.published.value_or(0.0);
      if (p.log_size) a.log_size = p.log_size->value;
      s.arch.push_back(std::move(a));
    } else {
      s.nonarch.push_back({p.label, p.log_radius->value});
    }
    if (p.in_S) {
      std::optional<double> kappa;
      if (p.kappa_mode == KappaMode::Fixed) kappa = p.kappa;
      s.approx.push_back({p.label, p.log_rho_inv->value, kappa});
    }
  }
  return s;
}

}  // namespace holo::cli
