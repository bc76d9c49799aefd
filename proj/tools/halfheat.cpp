#include <CLI11.hpp>
#include <Eigen/Core>

#include <cmath>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include <nlohmann/json.hpp>

#include "halfheat/acceptance.hpp"
#include "halfheat/catalog.hpp"
#include "halfheat/config.hpp"
#include "halfheat/density.hpp"
#include "halfheat/errors.hpp"
#include "halfheat/heat.hpp"
#include "halfheat/identities.hpp"
#include "halfheat/invariants.hpp"
#include "halfheat/parallel.hpp"
#include "halfheat/surface.hpp"

#ifndef HALFHEAT_VERSION
#define HALFHEAT_VERSION "0.0.0"
#endif

namespace {

using namespace halfheat;
using Cell = std::variant<std::string, double, long long, bool>;

struct Table {
  std::vector<std::string> columns;
  std::vector<std::vector<Cell>> rows;
};

std::string format_double(double x) {
  if (std::isnan(x)) return "nan";
  if (std::isinf(x)) return x > 0 ? "inf" : "-inf";
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

std::string csv_field(const Cell& c) {
  if (const auto* d = std::get_if<double>(&c)) return format_double(*d);
  if (const auto* i = std::get_if<long long>(&c)) return std::to_string(*i);
  if (const auto* b = std::get_if<bool>(&c)) return *b ? "true" : "false";
  const auto& s = std::get<std::string>(c);
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string q = "\"";
  for (char ch : s) q += ch == '"' ? std::string("\"\"") : std::string(1, ch);
  return q + "\"";
}

nlohmann::ordered_json json_cell(const Cell& c) {
  return std::visit([](const auto& v) { return nlohmann::ordered_json(v); }, c);
}

void write_table(std::ostream& out, const Table& t, const RunConfig& cfg, const std::string& command) {
  if (cfg.format == "csv") {
    for (std::size_t i = 0; i < t.columns.size(); ++i) out << (i ? "," : "") << t.columns[i];
    out << '\n';
    for (const auto& row : t.rows) {
      for (std::size_t i = 0; i < row.size(); ++i) out << (i ? "," : "") << csv_field(row[i]);
      out << '\n';
    }
    return;
  }
  nlohmann::ordered_json doc;
  doc["meta"] = {
      {"command", command},
      {"config_hash", cfg.hash()},
      {"version", HALFHEAT_VERSION},
      {"eigen", std::to_string(EIGEN_WORLD_VERSION) + "." + std::to_string(EIGEN_MAJOR_VERSION) + "." +
                    std::to_string(EIGEN_MINOR_VERSION)},
      {"nlohmann_json", std::to_string(NLOHMANN_JSON_VERSION_MAJOR) + "." +
                            std::to_string(NLOHMANN_JSON_VERSION_MINOR) + "." +
                            std::to_string(NLOHMANN_JSON_VERSION_PATCH)},
  };
  auto config = cfg.to_json();
  config.erase("output");
  config.erase("threads");
  doc["meta"]["config"] = config;
  doc["columns"] = t.columns;
  auto rows = nlohmann::ordered_json::array();
  for (const auto& row : t.rows) {
    nlohmann::ordered_json obj = nlohmann::ordered_json::object();
    for (std::size_t i = 0; i < row.size(); ++i) obj[t.columns[i]] = json_cell(row[i]);
    rows.push_back(std::move(obj));
  }
  doc["rows"] = std::move(rows);
  out << doc.dump(2) << '\n';
}

// The table goes to --output or stdout; the summary goes to stdout, or to
// stderr when stdout carries the table.
struct Report {
  Table table;
  std::vector<std::string> summary;
  bool passed = true;
};

std::string fmt(double x) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.3e", x);
  return buf;
}

std::vector<Point> model_points(const NamedSurface& s, const std::vector<std::array<double, 2>>& uv) {
  std::vector<Point> out;
  for (const auto& p : uv) {
    if (!s.chart.domain().contains(p[0], p[1]))
      throw UsageError("point (" + format_double(p[0]) + ", " + format_double(p[1]) + ") lies outside the chart of " +
                       s.name);
    out.push_back(s.chart(p[0], p[1]));
  }
  return out;
}

Report surface_report(const RunConfig& cfg, int threads) {
  const NamedSurface s = make_fixture(cfg.surface, cfg.alpha);
  const auto uv = cfg.sample_points();
  model_points(s, uv);
  struct Row {
    FundamentalData fd;
    double brioschi, scale;
  };
  const auto rows = parallel_map(uv.size(), threads, [&](std::size_t i) {
    const auto [u, v] = uv[i];
    return Row{fundamental_data(s.chart, u, v), brioschi_curvature(s.chart, u, v), residual_scale(s.chart, u, v)};
  });
  Report r;
  r.table.columns = {"surface", "sigma", "u", "v", "K", "eta", "k1", "k2", "K_intrinsic", "gauss_residual"};
  double worst = 0.0;
  for (std::size_t i = 0; i < uv.size(); ++i) {
    const auto& row = rows[i];
    const double res = std::abs(row.fd.K - row.brioschi) / row.scale;
    worst = std::max(worst, res);
    r.table.rows.push_back({s.name, static_cast<long long>(sigma_of(s.curvature)), uv[i][0], uv[i][1], row.fd.K,
                            row.fd.eta, row.fd.k_principal[0], row.fd.k_principal[1], row.brioschi, res});
  }
  r.passed = worst < cfg.tolerance;
  r.summary.push_back(s.name + " (" + curvature_name(s.curvature) + "): " + std::to_string(uv.size()) +
                      " points, max |K - K_intrinsic| / scale = " + fmt(worst));
  return r;
}

Report invariants_report(const RunConfig& cfg, int threads) {
  const NamedSurface s = make_fixture(cfg.surface, cfg.alpha);
  const auto uv = cfg.sample_points();
  model_points(s, uv);
  const auto reports =
      parallel_map(uv.size(), threads, [&](std::size_t i) { return gamma_report(s.chart, uv[i][0], uv[i][1]); });
  Report r;
  r.table.columns = {"surface", "u",          "v",     "gamma0", "gamma2", "gamma4", "gamma4_reduced",
                     "div_residual", "predicted_gamma4", "scale", "gamma4_rel_error", "pass"};
  int failed = 0;
  for (std::size_t i = 0; i < uv.size(); ++i) {
    const auto& g = reports[i];
    const double rel = std::abs(g.gamma4 - g.predicted_gamma4) / std::max(std::abs(g.gamma4), 1e-8);
    const bool ok = (!s.minimal || (std::abs(g.gamma0) < 1e-9 && std::abs(g.gamma2) < 1e-4)) &&
                    (rel < 1e-2 || std::abs(g.gamma4 - g.predicted_gamma4) < 1e-4);
    failed += !ok;
    r.table.rows.push_back({s.name, uv[i][0], uv[i][1], g.gamma0, g.gamma2, g.gamma4, g.gamma4_reduced, g.divergence,
                            g.predicted_gamma4, g.scale, rel, ok});
  }
  r.passed = failed == 0;
  r.summary.push_back(s.name + ": " + std::to_string(uv.size() - failed) + "/" + std::to_string(uv.size()) +
                      " points with gamma4 = 5/16 div(S grad K)");
  return r;
}

Report density_report(const RunConfig& cfg, int threads) {
  const NamedSurface s = make_fixture(cfg.surface, cfg.alpha);
  s.require_domain();
  const auto uv = cfg.sample_points();
  const auto xs = model_points(s, uv);
  const DensityOptions opt{cfg.density_order, DensityMode::refined, cfg.density_tol};
  const auto profiles =
      parallel_map(xs.size(), threads, [&](std::size_t i) { return density_profile(s, xs[i], cfg.r_grid, opt); });
  Report r;
  r.table.columns = {"surface", "u", "v", "r", "density", "order_error", "deviation"};
  double worst = 0.0;
  for (std::size_t i = 0; i < xs.size(); ++i)
    for (std::size_t k = 0; k < cfg.r_grid.size(); ++k) {
      const double d = profiles[i].sigma[k] - 0.5;
      worst = std::max(worst, std::abs(d));
      r.table.rows.push_back({s.name, uv[i][0], uv[i][1], cfg.r_grid[k], profiles[i].sigma[k], profiles[i].err[k], d});
    }
  r.summary.push_back(s.name + ": max |sigma - 1/2| = " + fmt(worst) + " over " + std::to_string(r.table.rows.size()) +
                      " (point, radius) pairs");
  if (s.half_domain) {
    r.passed = worst <= 2e-3;
    r.summary.push_back(std::string("half-density fixture: ") + (r.passed ? "within" : "outside") + " 2e-3 of 1/2");
  } else if (cfg.r_grid.size() >= 3) {
    const ExpansionFit fit = expansion_fit(profiles.front());
    r.summary.push_back(fit.inconclusive ? std::string("leading-order fit at the first point: inconclusive")
                                         : "leading-order fit at the first point: sigma - 1/2 ~ " +
                                               fmt(fit.coefficient) + " r^" + fmt(fit.slope));
  }
  return r;
}

Report heat_report(const RunConfig& cfg, int threads) {
  const NamedSurface s = make_fixture(cfg.surface, cfg.alpha);
  s.require_domain();
  const auto uv = cfg.sample_points();
  const auto xs = model_points(s, uv);
  TemperatureOptions opt;
  opt.density = {cfg.density_order, DensityMode::refined, cfg.heat_density_tol};
  opt.abs_tol = cfg.heat_abs_tol;
  const auto temps = parallel_map(xs.size(), threads, [&](std::size_t i) {
    DensityCache cache(s, xs[i], opt.density);
    std::vector<double> u;
    for (double t : cfg.t_grid) u.push_back(cauchy_temperature(cache, s.curvature, t, opt));
    return u;
  });
  Report r;
  r.table.columns = {"surface", "u", "v", "t", "temperature", "deviation"};
  double worst = 0.0;
  for (std::size_t i = 0; i < xs.size(); ++i)
    for (std::size_t k = 0; k < cfg.t_grid.size(); ++k) {
      const double d = temps[i][k] - 0.5;
      worst = std::max(worst, std::abs(d));
      r.table.rows.push_back({s.name, uv[i][0], uv[i][1], cfg.t_grid[k], temps[i][k], d});
    }
  r.summary.push_back(s.name + ": max |u_C - 1/2| = " + fmt(worst) + " over " + std::to_string(r.table.rows.size()) +
                      " (point, time) pairs");
  if (s.half_domain) r.passed = worst <= 5e-3;
  return r;
}

Report identities_report(const RunConfig& cfg) {
  Report r;
  r.table.columns = {"label", "kind", "monomial", "residual", "status"};
  for (const auto& c : check_main_identity()) {
    r.table.rows.push_back({c.label, std::string("coefficient"),
                            "u^" + std::to_string(c.monomial[0]) + " v^" + std::to_string(c.monomial[1]),
                            c.residual.str(), std::string(c.ok ? "PASS" : "FAIL")});
    r.passed = r.passed && c.ok;
  }
  for (const auto& l : derive_lemma_identities()) {
    r.table.rows.push_back(
        {l.label, std::string("derived"), std::string(""), l.residual.str(), std::string(l.ok ? "PASS" : "FAIL")});
    r.passed = r.passed && l.ok;
  }
  int pass = 0;
  for (const auto& row : r.table.rows) pass += std::get<std::string>(row.back()) == "PASS";
  r.summary.push_back(std::to_string(pass) + "/" + std::to_string(r.table.rows.size()) + " identities PASS");

  const PsiCondition psi = psi_condition();
  r.summary.push_back("psi''(1) - 2 psi'(1) = " + psi.condition.str() + ", vanishing at k^2 = " +
                      psi.computed_locus.str() + " sigma");
  if (psi.locus_discrepancy)
    r.summary.push_back("note: the commonly quoted locus k^2 = " + psi.stated_locus.str() +
                        " sigma does not match the computed " + psi.computed_locus.str() + " sigma");
  const CounterexampleReport ce = counterexample();
  r.summary.push_back("P = 1 + u^2 + v^2: psi = " + ce.psi_value.str() + (ce.psi_constant ? " (constant)" : "") +
                      ", condition " + (ce.condition_vanishes ? "vanishes" : "does not vanish"));
  r.passed = r.passed && ce.psi_constant;
  const CrossValidation cv = cross_validate(100, cfg.seed);
  r.summary.push_back("cross-validation at " + std::to_string(cv.points) + " points: exact " +
                      (cv.exact_zero ? "zero" : "NONZERO") + ", float residual " + fmt(cv.max_float_residual));
  r.passed = r.passed && cv.exact_zero;
  const CaseSolverReport cs = case_solver_check();
  r.summary.push_back("case solver: " + std::to_string(cs.consistent) + "/" + std::to_string(cs.samples) +
                      " consistent, " + std::to_string(cs.forced) + " forced");
  r.passed = r.passed && cs.consistent == cs.samples && cs.forced == cs.samples;
  return r;
}

Report symmetry_report(const RunConfig& cfg) {
  const NamedSurface s = make_fixture(cfg.surface, cfg.alpha);
  if (!s.has_symmetries()) throw UsageError(s.name + " has no flow and swap isometries");
  Report r;
  r.table.columns = {"surface",          "flow_chart_residual",   "swap_chart_residual",  "witness_residual",
                     "side_on_surface",  "isometry_form_defect",  "random_points",        "flow_side_violations",
                     "swap_side_violations", "pass"};
  SymmetryReport rep;
  try {
    rep = symmetry_check(s, 10, 0.7, 1000, static_cast<unsigned>(cfg.seed), 1e-12);
  } catch (const FixtureDefectError& e) {
    r.passed = false;
    r.summary.push_back(e.what());
    return r;
  }
  r.table.rows.push_back({s.name, rep.flow_chart_residual, rep.swap_chart_residual, rep.witness_residual,
                          rep.side_on_surface, rep.isometry_form_defect, static_cast<long long>(rep.random_points),
                          static_cast<long long>(rep.flow_side_violations),
                          static_cast<long long>(rep.swap_side_violations), rep.passed});
  r.passed = rep.passed;
  r.summary.push_back(s.name + ": symmetry identities " + (rep.passed ? "hold" : "FAIL"));
  return r;
}

Report acceptance_report(int threads, const std::vector<int>& only, std::ostream& live) {
  AcceptanceOptions opt;
  opt.only = only;
  opt.threads = threads;
  opt.on_result = [&](const CriterionResult& c) { live << format_result(c) << std::endl; };
  const auto results = run_acceptance(opt);
  Report r;
  r.table.columns = {"id", "name", "passed", "seconds", "detail"};
  int failed = 0;
  for (const auto& c : results) {
    failed += !c.passed;
    r.table.rows.push_back({static_cast<long long>(c.id), c.name, c.passed, c.seconds, c.detail});
  }
  r.passed = failed == 0;
  r.summary.push_back(failed == 0 ? std::string("all criteria passed")
                                  : std::to_string(failed) + " criteria failed");
  return r;
}

// Parses "a,b,c" lists; CLI11 does the splitting, this only checks pairs.
std::array<double, 2> as_pair(const std::vector<double>& v, const char* flag) {
  if (v.size() != 2) throw UsageError(std::string(flag) + " expects two comma-separated numbers");
  return {v[0], v[1]};
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Half-density and boundary heat diagnostics for surfaces in the space forms"};
  app.set_version_flag("--version", HALFHEAT_VERSION);
  app.require_subcommand(1);

  std::string config_path;
  std::optional<std::string> surface, format, output;
  std::optional<double> alpha, tolerance, density_tol;
  std::optional<int> order, jet_order, radial_nodes, threads, u_count, v_count;
  std::optional<std::uint64_t> seed;
  std::vector<double> r_grid, t_grid, u_range, v_range;
  std::vector<std::vector<double>> points;
  std::vector<int> criteria;

  const auto add_common = [&](CLI::App* sub) {
    sub->add_option("--config", config_path, "JSON configuration file; flags override it")->check(CLI::ExistingFile);
    sub->add_option("--surface", surface, "Fixture name");
    sub->add_option("--alpha", alpha, "Fixture parameter");
    sub->add_option("--point", points, "Chart point u,v (repeatable)")->delimiter(',')->expected(2)->allow_extra_args(false);
    sub->add_option("--u-range", u_range, "u range a,b")->delimiter(',');
    sub->add_option("--v-range", v_range, "v range a,b")->delimiter(',');
    sub->add_option("--u-count", u_count, "Grid points in u");
    sub->add_option("--v-count", v_count, "Grid points in v");
    sub->add_option("--r", r_grid, "Radii, comma-separated")->delimiter(',');
    sub->add_option("--t", t_grid, "Times, comma-separated")->delimiter(',');
    sub->add_option("--order", order, "Polar quadrature order of the density");
    sub->add_option("--jet-order", jet_order, "Jet order of the collar expansion");
    sub->add_option("--radial-nodes", radial_nodes, "Radial nodes for ball splits");
    sub->add_option("--density-tol", density_tol, "Azimuth tolerance of the density");
    sub->add_option("--tolerance", tolerance, "Pass threshold for per-point checks");
    sub->add_option("--format", format, "csv or json")->check(CLI::IsMember({"csv", "json"}));
    sub->add_option("--output", output, "Output file (default: standard output)");
    sub->add_option("--threads", threads, "Worker threads (0: HALFHEAT_THREADS or all cores)");
    sub->add_option("--seed", seed, "Seed for random sample points");
  };

  struct Sub {
    const char* name;
    const char* help;
  };
  const Sub subs[] = {
      {"surface-report", "Curvatures of the fixture over the (u, v) grid"},
      {"invariants", "Heat invariants gamma0, gamma2, gamma4 and div(S grad K)"},
      {"density", "Density of geodesic spheres centred on the surface"},
      {"heat", "Boundary temperature of the Cauchy problem"},
      {"verify-identities", "Exact coefficient identities of the polynomial lemma"},
      {"symmetry-check", "Flow and swap isometries of the fixture"},
      {"acceptance", "Run the acceptance suite"},
  };
  for (const auto& s : subs) {
    CLI::App* sub = app.add_subcommand(s.name, s.help);
    add_common(sub);
    if (std::string(s.name) == "acceptance") sub->add_option("criteria", criteria, "Criterion numbers (default: all)");
  }

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  try {
    RunConfig cfg = config_path.empty() ? RunConfig{} : RunConfig::from_file(config_path);
    if (surface) cfg.surface = *surface;
    if (alpha) cfg.alpha = *alpha;
    if (!points.empty()) {
      cfg.points.clear();
      for (const auto& p : points) cfg.points.push_back(as_pair(p, "--point"));
    }
    if (!u_range.empty()) cfg.u_range = as_pair(u_range, "--u-range");
    if (!v_range.empty()) cfg.v_range = as_pair(v_range, "--v-range");
    if (u_count) cfg.u_count = *u_count;
    if (v_count) cfg.v_count = *v_count;
    if (!r_grid.empty()) cfg.r_grid = r_grid;
    if (!t_grid.empty()) cfg.t_grid = t_grid;
    if (order) cfg.density_order = *order;
    if (jet_order) cfg.jet_order = *jet_order;
    if (radial_nodes) cfg.radial_nodes = *radial_nodes;
    if (density_tol) cfg.density_tol = *density_tol;
    if (tolerance) cfg.tolerance = *tolerance;
    if (format) cfg.format = *format;
    if (output) cfg.output = *output;
    if (threads) cfg.threads = *threads;
    if (seed) cfg.seed = *seed;
    cfg.validate();
    const int workers = resolve_threads(cfg.threads);

    std::ofstream file;
    if (!cfg.output.empty()) {
      file.open(cfg.output, std::ios::out | std::ios::trunc);
      if (!file) throw UsageError("cannot write output file " + cfg.output);
    }
    std::ostream& data = cfg.output.empty() ? std::cout : file;
    std::ostream& human = cfg.output.empty() ? std::cerr : std::cout;

    const std::string command = app.get_subcommands().front()->get_name();
    Report rep;
    if (command == "surface-report") rep = surface_report(cfg, workers);
    else if (command == "invariants") rep = invariants_report(cfg, workers);
    else if (command == "density") rep = density_report(cfg, workers);
    else if (command == "heat") rep = heat_report(cfg, workers);
    else if (command == "verify-identities") rep = identities_report(cfg);
    else if (command == "symmetry-check") rep = symmetry_report(cfg);
    else rep = acceptance_report(workers, criteria, human);

    write_table(data, rep.table, cfg, command);
    data.flush();
    if (!data) throw UsageError("failed writing output");
    for (const auto& line : rep.summary) human << line << '\n';
    return rep.passed ? 0 : 1;
  } catch (const UsageError& e) {
    std::cerr << "usage error: " << e.what() << '\n';
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  }
}
