#include <cmath>
#include <cstdio>
#include <fstream>
#include <functional>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>
#include <fmt/format.h>

#include "holo/capacity.hpp"
#include "holo/certificates.hpp"
#include "holo/dioph.hpp"
#include "holo/error.hpp"
#include "holo/holobound.hpp"
#include "holo/padiczeta.hpp"
#include "holo/parallel.hpp"
#include "holo_cli/regressions.hpp"
#include "holo_cli/report.hpp"
#include "holo_cli/scenario_io.hpp"
#include "holo_cli/verify_suite.hpp"

namespace {

using namespace holo;
using holo::cli::fmt6;

constexpr int kOk = 0;
constexpr int kInfeasible = 1;
constexpr int kUsage = 2;
constexpr int kNumerical = 3;

constexpr double kPublishedPiMeasure = 15.086;

int exit_code_for(ErrorCode code) {
  switch (code) {
    case ErrorCode::NoThreshold:
    case ErrorCode::InfeasibleEverywhere:
      return kInfeasible;
    case ErrorCode::SchemaError:
    case ErrorCode::PreconditionViolation:
    case ErrorCode::ShapeError:
    case ErrorCode::NanInput:
    case ErrorCode::DomainError:
      return kUsage;
    default:
      return kNumerical;
  }
}

int print_checks(const std::vector<cli::CheckResult>& checks) {
  bool ok = true;
  for (const auto& c : checks) {
    std::cout << (c.passed ? "PASS " : "FAIL ") << c.name << ": " << c.detail << "\n";
    ok = ok && c.passed;
  }
  return ok ? kOk : kNumerical;
}

std::vector<double> parse_list(const std::string& text) {
  std::vector<double> out;
  std::stringstream in(text);
  std::string item;
  while (std::getline(in, item, ',')) {
    if (item.empty()) continue;
    std::size_t used = 0;
    double v = 0.0;
    try {
      v = std::stod(item, &used);
    } catch (const std::exception&) {
      used = 0;
    }
    if (used != item.size()) throw Error(ErrorCode::SchemaError, "not a number: " + item);
    out.push_back(v);
  }
  return out;
}

std::vector<series::Integer> parse_integers(const std::string& text) {
  std::vector<series::Integer> out;
  std::stringstream in(text);
  std::string item;
  while (std::getline(in, item, ',')) {
    series::Integer v;
    if (item.empty() || v.set_str(item, 10) != 0) throw Error(ErrorCode::SchemaError, "not an integer: " + item);
    out.push_back(v);
  }
  if (out.empty()) throw Error(ErrorCode::SchemaError, "--n needs at least one integer");
  return out;
}

void write_csv(const std::string& path, const std::string& csv) {
  if (path.empty()) return;
  std::ofstream out(path);
  if (!out) throw Error(ErrorCode::SchemaError, "cannot write " + path);
  out << csv;
}

struct BoundArgs {
  std::string file;
  bool json = false;
  std::size_t grid_n = 0;
};

int run_bound(const BoundArgs& a) {
  auto file = cli::load_scenario(a.file);
  if (a.grid_n) file.grid_n = a.grid_n;
  const auto scenario = cli::to_scenario(file);
  const auto report = holobound::evaluate_bound(scenario);
  std::cout << (a.json ? cli::report_json(file, report, std::nullopt).dump(2) + "\n"
                       : cli::report_text(file, report, std::nullopt));
  return report.feasible ? kOk : kInfeasible;
}

int run_kappa(const BoundArgs& a, std::size_t target_m) {
  auto file = cli::load_scenario(a.file);
  if (a.grid_n) file.grid_n = a.grid_n;
  const std::size_t target = target_m ? target_m : file.target_m.value_or(file.m);
  const auto scenario = cli::to_scenario(file);
  const auto assembly = holobound::assemble(scenario);
  const auto report = holobound::evaluate_bound(scenario, assembly);
  const auto t = holobound::kappa_threshold(scenario, assembly, target);
  const cli::ThresholdOutcome outcome{t, target};
  std::cout << (a.json ? cli::report_json(file, report, outcome).dump(2) + "\n"
                       : cli::report_text(file, report, outcome));
  return kOk;
}

struct MapArgs {
  std::string kind = "mobius_circle_x";
  std::vector<double> alpha, beta;
  double R = 1.0;
  std::size_t grid_n = 4096;
};

int run_bc(const MapArgs& a) {
  cli::MapSpec spec;
  spec.kind = a.kind;
  auto complex_of = [](const std::vector<double>& v) -> std::optional<std::array<double, 2>> {
    if (v.empty()) return std::nullopt;
    if (v.size() > 2) throw Error(ErrorCode::SchemaError, "complex parameters take re[,im]");
    return std::array<double, 2>{v[0], v.size() == 2 ? v[1] : 0.0};
  };
  spec.alpha = complex_of(a.alpha);
  spec.beta = complex_of(a.beta);
  spec.R = a.R;
  const auto map = cli::build_map(spec);
  const auto r = capacity::bost_charles_integral(map, a.grid_n);
  std::cout << fmt::format("map: {}\n", map.describe());
  std::cout << fmt::format("bc integral: {}\n", cli::with_error(r.value, r.error_estimate));
  std::cout << fmt::format("levels: {} (n/2), {} (n), grid_n {}{}\n", fmt6(r.coarse), fmt6(r.fine), r.grid_n,
                           r.cusp_path ? ", cusp path" : "");
  std::cout << fmt::format("log conformal size: {}\n", fmt6(std::log(map.conformal_size())));
  return kOk;
}

int run_zeta2(long k, long prec) {
  const auto z = padiczeta::zeta2(k, prec);
  std::cout << fmt::format("zeta_2({}) = {}\n", 1 + 2 * k, z.value.digits());
  std::cout << fmt::format("valuation {}, known mod 2^{}\n", z.value.valuation(), z.value.absolute_precision());
  if (z.exact) std::cout << fmt::format("exact: {}\n", series::to_string(*z.exact));
  if (k > 0) std::cout << fmt::format("route A {} bits, route B {} bits\n", z.route_a_bits, z.route_b_bits);
  return kOk;
}

int run_eisenstein(long k, std::size_t order) {
  const auto e = padiczeta::eisenstein_star(k, order);
  const auto& c = e.expansion.coefficients;
  std::cout << fmt::format("weight {} series, q-expansion to order {}\n", e.expansion.weight, order);
  if (e.rational_constant) {
    std::cout << fmt::format("q^0: {}\n", series::to_string(c[0]));
  } else {
    const auto z = padiczeta::zeta2(k, 32);
    const auto half = z.value / padic::PadicApprox::from_rational(2, 64);
    std::cout << fmt::format("q^0: zeta_2({})/2 = {}\n", 1 + 2 * k, half.digits());
  }
  for (std::size_t n = 1; n < order; ++n) std::cout << fmt::format("q^{}: {}\n", n, series::to_string(c[n]));
  return kOk;
}

int run_dirichlet(const std::string& n_text, unsigned long Q, const std::string& N_text) {
  series::Integer N;
  if (N.set_str(N_text, 10) != 0) throw Error(ErrorCode::SchemaError, "--N must be an integer");
  const auto n = parse_integers(n_text);
  const auto d = dioph::dirichlet_round(n, Q, N);
  std::string p, err;
  for (std::size_t i = 0; i < n.size(); ++i) {
    p += (i ? "," : "") + d.p[i].get_str();
    err += (i ? "," : "") + d.errors[i].get_str();
  }
  const double allowed = d.r.get_d() * std::pow(static_cast<double>(Q), -1.0 / static_cast<double>(n.size()));
  std::cout << fmt::format("q = {}\nr = {}\np = {}\nerrors = {} (allowed {})\n", d.q, d.r.get_str(), p, err,
                           fmt6(allowed));
  return kOk;
}

struct SearchArgs {
  std::string radii;
  unsigned k_max = 0;
  std::size_t grid_n = 1024;
  std::string csv;
};

void apply_grid(dioph::CertificateGrid& g, const SearchArgs& a) {
  if (!a.radii.empty()) g.radii = parse_list(a.radii);
  if (a.k_max) g.k_max = a.k_max;
  g.grid_n = a.grid_n;
}

int run_binomial(const std::string& a_text, unsigned long r, const SearchArgs& args) {
  const auto a = series::parse_rational(a_text);
  auto grid = dioph::default_binomial_grid(r);
  apply_grid(grid, args);
  const auto c = dioph::binomial_certificate(a, r, grid);
  const double shape = std::sqrt(r * std::pow(std::log(static_cast<double>(r)), 3));
  std::cout << fmt::format("root {} of {}\n", r, series::to_string(a));
  std::cout << fmt::format("certified kappa: {} (central {})\n", fmt6(c.kappa_eff), fmt6(c.kappa_central));
  std::cout << fmt::format("at R = {}, k = {}\n", fmt6(c.R_star), c.k_star);
  std::cout << fmt::format("kappa / sqrt(r log^3 r): {}\n", fmt6(c.kappa_eff / shape));
  std::cout << fmt::format("below r: {}\n", c.kappa_eff < static_cast<double>(r) ? "yes" : "no");
  write_csv(args.csv, dioph::sweep_csv(std::to_string(r), c));
  return kOk;
}

int run_pi(const SearchArgs& args) {
  const unsigned k_max = args.k_max ? args.k_max : 40;
  auto grid = dioph::default_pi_grid(k_max);
  apply_grid(grid, args);
  const auto c = dioph::pi_measure_search(k_max, grid);
  std::cout << fmt::format("certified kappa for pi: {} (central {})\n", fmt6(c.kappa_eff), fmt6(c.kappa_central));
  std::cout << fmt::format("at R = {}, k = {}\n", fmt6(c.R_star), c.k_star);
  if (c.feasibility_radius) {
    std::cout << fmt::format("denominator turns positive at R = {} for k = {}\n", fmt6(*c.feasibility_radius),
                             c.k_star);
  }
  const double rel = std::abs(c.kappa_eff - kPublishedPiMeasure) / kPublishedPiMeasure;
  std::cout << fmt::format("published measure {}: {}\n", kPublishedPiMeasure,
                           rel <= 0.1 ? "reproduced within 10%"
                                      : fmt::format("discrepancy, off by {:.0f}%", 100.0 * rel));
  write_csv(args.csv, dioph::sweep_csv("pi", c));
  return kOk;
}

int run_zeta5_scan(long H) {
  const long bits = padiczeta::scan_precision(H);
  const auto found = padiczeta::zeta5_inequality_scan(H);
  std::cout << fmt::format("max height {}, zeta_2(5) to 2^{}\n", H, bits + 8);
  std::cout << fmt::format("exceptions: {}\n", found.size());
  for (const auto& e : found) {
    std::cout << fmt::format("  {}/{}: v_2 distance {} >= {}\n", e.p, e.q, e.distance_valuation, fmt6(e.threshold));
  }
  return kOk;
}

int run_fixtures(const std::string& dir, std::size_t grid_n) {
  auto checks = cli::run_fixture_expectations(dir);
  for (auto& c : cli::run_builtin_regressions(grid_n)) checks.push_back(std::move(c));
  return print_checks(checks);
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Holonomy bounds, 2-adic zeta values and effective Diophantine certificates"};
  app.require_subcommand(1);
  unsigned threads = 0;
  app.add_option("--threads", threads, "Worker threads (default: HOLOBOUND_THREADS or all cores)");

  std::function<int()> action;

  auto* verify = app.add_subcommand("verify", "Exact identity suites");
  verify->callback([&] { action = [] { return print_checks(cli::run_verify_suite()); }; });

  BoundArgs bound_args;
  auto* bound = app.add_subcommand("bound", "Evaluate the holonomy bound of a scenario file");
  bound->add_option("file", bound_args.file, "Scenario JSON")->required();
  bound->add_flag("--json", bound_args.json, "Emit the report as JSON");
  bound->add_option("--grid-n", bound_args.grid_n, "Override the quadrature grid");
  bound->callback([&] { action = [&] { return run_bound(bound_args); }; });

  BoundArgs kappa_args;
  std::size_t target_m = 0;
  auto* kappa = app.add_subcommand("kappa", "Solve for the exponent threshold of a scenario file");
  kappa->add_option("file", kappa_args.file, "Scenario JSON")->required();
  kappa->add_option("--target-m", target_m, "Target m (default: the file's target_m, else m)");
  kappa->add_flag("--json", kappa_args.json, "Emit the report as JSON");
  kappa->add_option("--grid-n", kappa_args.grid_n, "Override the quadrature grid");
  kappa->callback([&] { action = [&] { return run_kappa(kappa_args, target_m); }; });

  MapArgs map_args;
  auto* bc = app.add_subcommand("bc-integral", "Bost-Charles integral of a map");
  bc->add_option("--map", map_args.kind, "identity, mobius_circle_x, lune_x, phi or psi");
  bc->add_option("--alpha", map_args.alpha, "alpha as re[,im]")->delimiter(',');
  bc->add_option("--beta", map_args.beta, "beta as re[,im]")->delimiter(',');
  bc->add_option("--R", map_args.R, "Radius scaling");
  bc->add_option("--grid-n", map_args.grid_n, "Quadrature grid")->check(CLI::Range(16, 1 << 20));
  bc->callback([&] { action = [&] { return run_bc(map_args); }; });

  long zk = 2, prec = 64;
  auto* zeta = app.add_subcommand("zeta2", "2-adic zeta value zeta_2(1 + 2k)");
  zeta->add_option("--k", zk, "k (nonzero)")->required();
  zeta->add_option("--prec", prec, "Absolute precision in bits")->check(CLI::Range(1L, 4096L));
  zeta->callback([&] { action = [&] { return run_zeta2(zk, prec); }; });

  long ek = 2;
  std::size_t order = 10;
  auto* eis = app.add_subcommand("eisenstein", "2-stabilized Eisenstein series");
  eis->add_option("--k", ek, "k (nonzero)")->required();
  eis->add_option("--order", order, "Number of q-coefficients")->check(CLI::Range(2, 100000));
  eis->callback([&] { action = [&] { return run_eisenstein(ek, order); }; });

  std::string n_text, N_text = "1";
  unsigned long Q = 1;
  auto* dir = app.add_subcommand("dirichlet", "Simultaneous Dirichlet rounding");
  dir->add_option("--n", n_text, "Integers a,b,c")->required();
  dir->add_option("--Q", Q, "Dirichlet parameter")->check(CLI::Range(1UL, 1000UL));
  dir->add_option("--N", N_text, "Multiplier");
  dir->callback([&] { action = [&] { return run_dirichlet(n_text, Q, N_text); }; });

  std::string a_text = "2";
  unsigned long root = 17;
  SearchArgs binom_args;
  auto* binom = app.add_subcommand("binomial", "Certified exponent for the r-th root of a");
  binom->add_option("--a", a_text, "Rational a > 0, a != 1");
  binom->add_option("--r", root, "Root order r >= 3")->required();
  binom->add_option("--radii", binom_args.radii, "Comma-separated radii");
  binom->add_option("--k-max", binom_args.k_max, "Largest power k");
  binom->add_option("--grid-n", binom_args.grid_n, "Quadrature grid");
  binom->add_option("--csv", binom_args.csv, "Write the sweep as CSV");
  binom->callback([&] { action = [&] { return run_binomial(a_text, root, binom_args); }; });

  SearchArgs pi_args;
  auto* pi = app.add_subcommand("pi-measure", "Certified irrationality exponent for pi");
  pi->add_option("--radii", pi_args.radii, "Comma-separated radii");
  pi->add_option("--k-max", pi_args.k_max, "Largest power k (default 40)");
  pi->add_option("--grid-n", pi_args.grid_n, "Quadrature grid");
  pi->add_option("--csv", pi_args.csv, "Write the sweep as CSV");
  pi->callback([&] { action = [&] { return run_pi(pi_args); }; });

  long max_height = 100;
  auto* scan = app.add_subcommand("zeta5-scan", "Rationals unusually close to zeta_2(5)");
  scan->add_option("--max-height", max_height, "Largest max(|p|, |q|)")->check(CLI::Range(1L, 1000L));
  scan->callback([&] { action = [&] { return run_zeta5_scan(max_height); }; });

  std::string fixture_dir = "fixtures";
  std::size_t fixture_grid = 4096;
  auto* fixtures = app.add_subcommand("fixtures", "Run every published regression");
  fixtures->add_option("--dir", fixture_dir, "Fixture directory");
  fixtures->add_option("--grid-n", fixture_grid, "Quadrature grid for the built-in checks");
  fixtures->callback([&] { action = [&] { return run_fixtures(fixture_dir, fixture_grid); }; });

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kOk : kUsage;
  }
  try {
    if (threads) set_thread_count(threads);
    return action();
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return exit_code_for(e.code());
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kNumerical;
  }
}
