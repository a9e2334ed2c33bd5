#pragma once

#include <array>
#include <cstddef>
#include <filesystem>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "holo/holobound.hpp"
#include "holo/series.hpp"

namespace holo::cli {

using Json = nlohmann::ordered_json;
using series::Rational;

/// A real number given directly or as the log of a product of rationals.
struct Quantity {
  double value = 0.0;
  std::vector<Rational> log_of;  // empty when given directly

  static Quantity direct(double v) { return {v, {}}; }
  static Quantity log_of_product(std::vector<Rational> factors);
  bool operator==(const Quantity&) const = default;
};

struct MapSpec {
  std::string kind;  // identity, mobius_circle_x, lune_x, phi, psi
  std::optional<std::array<double, 2>> alpha;
  std::optional<std::array<double, 2>> beta;
  double R = 1.0;
  bool operator==(const MapSpec&) const = default;
};

enum class KappaMode { Limit, Fixed, Solve };

struct PlaceSpec {
  std::string label;
  bool archimedean = true;
  std::optional<MapSpec> map;
  std::string source = "quadrature";  // quadrature, published, sup_norm
  std::optional<double> published;
  std::optional<Quantity> log_size;
  std::optional<Quantity> log_radius;
  bool in_S = false;
  std::optional<Quantity> log_rho_inv;
  KappaMode kappa_mode = KappaMode::Limit;
  double kappa = 0.0;
  bool operator==(const PlaceSpec&) const = default;
};

struct TauSpec {
  std::optional<Rational> explicit_value;
  std::vector<std::vector<Rational>> b_matrix;  // used when explicit_value is unset
  std::vector<unsigned long> e;
  Rational tau_sharp = 0;
  bool operator==(const TauSpec&) const = default;
};

struct Tolerance {
  double value = 0.0;
  double tol = 0.0;
  bool operator==(const Tolerance&) const = default;
};

/// Regression targets carried by fixture files.
struct Expectation {
  std::optional<Tolerance> bound;
  std::optional<Tolerance> kappa;
  std::optional<std::array<double, 2>> kappa_range;
  std::optional<Tolerance> limit_bound;
  bool operator==(const Expectation&) const = default;
};

struct ScenarioFile {
  std::string name;
  std::size_t m = 1;
  std::vector<std::size_t> m_nu;
  std::optional<Rational> gamma;
  TauSpec tau;
  std::vector<PlaceSpec> places;
  std::string coupling = "single_exponent";  // or simultaneous
  std::size_t grid_n = 4096;
  std::optional<std::size_t> target_m;
  std::optional<Expectation> expect;
  std::map<std::string, std::string> notes;
  bool operator==(const ScenarioFile&) const = default;
};

/// Strict parse: unknown keys, wrong types and missing fields raise SCHEMA_ERROR.
ScenarioFile parse_scenario(const Json& j);
ScenarioFile load_scenario(const std::filesystem::path& path);
Json to_json(const ScenarioFile& s);

Rational scenario_tau(const ScenarioFile& s);
holobound::Scenario to_scenario(const ScenarioFile& s);

/// Map from a kind name and optional parameters; SCHEMA_ERROR on unknown kinds.
confmaps::AnalyticMap build_map(const MapSpec& spec);

}  // namespace holo::cli
