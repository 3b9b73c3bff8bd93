#include <CLI11.hpp>
#include <cstdint>
#include <filesystem>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "scalelab/csv.hpp"
#include "scalelab/exponents.hpp"
#include "scalelab/kato.hpp"
#include "scalelab/matio.hpp"
#include "scalelab/rds.hpp"
#include "scalelab/semigroup.hpp"
#include "svgplot.hpp"

namespace fs = std::filesystem;
using namespace scalelab;

namespace {

struct Options {
  std::string config;
  std::string out = ".";
  std::uint64_t seed = 0;
  int workers = 1;
  bool plot = false;
};

std::string out_path(const Options& opt, const std::string& name) {
  return (fs::path(opt.out) / name).string();
}

std::string short_number(double v) {
  std::ostringstream o;
  o << v;
  return o.str();
}

Rational rational_from(const Json& v, const std::string& path) {
  if (v.is_number_integer()) return Rational(v.get<long long>());
  if (v.is_string()) {
    try {
      return Rational::parse(v.get<std::string>());
    } catch (const RationalError& e) {
      throw ConfigError(path + ": " + e.what());
    }
  }
  throw ConfigError(path + " must be an integer or a \"num/den\" string");
}

Complex complex_from(const Json& v, const std::string& path) {
  if (v.is_number()) return Complex(v.get<double>(), 0.0);
  if (v.is_array() && v.size() == 2 && v[0].is_number() && v[1].is_number())
    return Complex(v[0].get<double>(), v[1].get<double>());
  throw ConfigError(path + " must be a number or an [re, im] pair");
}

HilbertMetric metric_from(const Json& cfg, const std::string& key, Index dim) {
  if (!cfg.contains(key)) return HilbertMetric::euclidean(dim);
  Matrix g = parse_complex_matrix(cfg[key], key);
  if (g.rows() != dim) throw ConfigError(key + " dimension does not match the matrix");
  return HilbertMetric(std::move(g));
}

std::array<Bc, 2> bc_pair_from(const Json& v, const std::string& path) {
  if (!v.is_array() || v.size() != 2)
    throw ConfigError(path + " must be a two-element array of boundary conditions");
  return {parse_bc(v[0].is_string() ? v[0].get<std::string>() : std::string()),
          parse_bc(v[1].is_string() ? v[1].get<std::string>() : std::string())};
}

DomainSpec domain_from(const Json& doc) {
  validate_keys(doc, {"kind", "length", "lx", "ly", "bc", "bc_x", "bc_y"}, "domain");
  std::string kind = require_string(doc, "kind", "domain");
  if (kind == "interval") {
    double length = require_number(doc, "length", "domain");
    if (!doc.contains("bc")) throw ConfigError("missing key \"bc\" in domain");
    std::array<Bc, 2> bc = bc_pair_from(doc["bc"], "domain.bc");
    return DomainSpec::interval(length, bc[0], bc[1]);
  }
  if (kind == "rectangle") {
    double lx = require_number(doc, "lx", "domain");
    double ly = require_number(doc, "ly", "domain");
    if (!doc.contains("bc_x") || !doc.contains("bc_y"))
      throw ConfigError("rectangle domain needs bc_x and bc_y");
    return DomainSpec::rectangle(lx, ly, bc_pair_from(doc["bc_x"], "domain.bc_x"),
                                 bc_pair_from(doc["bc_y"], "domain.bc_y"));
  }
  throw ConfigError("unknown domain kind \"" + kind + "\"");
}

std::vector<double> linear_grid(const Json& doc, const std::string& path) {
  validate_keys(doc, {"min", "max", "count"}, path);
  double lo = require_number(doc, "min", path);
  double hi = require_number(doc, "max", path);
  int count = require_int(doc, "count", path);
  if (count < 1) throw ConfigError(path + ".count must be positive");
  if (count == 1) return {lo};
  std::vector<double> grid(static_cast<std::size_t>(count));
  for (int i = 0; i < count; ++i)
    grid[static_cast<std::size_t>(i)] = lo + (hi - lo) * i / (count - 1);
  return grid;
}

std::string bool_text(bool v) { return v ? "true" : "false"; }

// ---------------------------------------------------------------- exponents

int cmd_exponents(const Json& cfg, const Options& opt) {
  validate_keys(cfg,
                {"d", "p_star", "p", "r", "sigma", "gamma", "cases", "weakev", "overlap",
                 "lip_cases"},
                "config");
  int d = require_int(cfg, "d", "config");
  ExponentQuery q = ExponentQuery::make(
      d, cfg.contains("p_star") ? std::optional<Rational>(rational_from(cfg["p_star"], "p_star"))
                                : std::nullopt);
  if (cfg.contains("gamma")) q.gamma = rational_from(cfg["gamma"], "gamma");
  if (cfg.contains("p")) q.p = rational_from(cfg["p"], "p");
  if (cfg.contains("r")) q.r = rational_from(cfg["r"], "r");
  if (cfg.contains("sigma")) q.sigma = rational_from(cfg["sigma"], "sigma");

  CsvWriter csv(out_path(opt, "exponents.csv"));
  csv.header({"quantity", "case", "value", "note"});
  auto row = [&](const std::string& quantity, const std::string& c, const std::string& value,
                 const std::string& note = "") { csv.mixed_row({quantity, c, value, note}); };

  Rational half(1, 2);
  row("d", "", Rational(d).to_string());
  row("p_star", "", q.p_star.to_string());
  row("gamma", "", q.gamma.to_string());
  if (Rational(0) <= q.gamma && q.gamma <= half) {
    row("q_gamma_low", "", q_gamma_low(q.p_star, q.gamma).to_string());
    row("p_gamma_low", "", p_gamma_low(q.p_star, q.p, q.gamma).to_string());
  }
  if (half <= q.gamma && q.gamma <= Rational(1)) {
    if (!q.p.is_infinite() || q.gamma == half)
      row("q_gamma_high", "", q_gamma_high(q.p_star, q.p, q.gamma).to_string());
    row("p_gamma_high", "", p_gamma_high(q.p_star, q.gamma).to_string());
  }

  if (cfg.contains("cases")) {
    if (!cfg["cases"].is_array()) throw ConfigError("cases must be an array");
    for (const Json& item : cfg["cases"]) {
      std::string name = item.is_string() ? item.get<std::string>() : std::string();
      GrowthCase c;
      if (name == "L2")
        c = GrowthCase::L2;
      else if (name == "L2p")
        c = GrowthCase::L2p;
      else if (name == "W1")
        c = GrowthCase::W1;
      else
        throw ConfigError("unknown growth case \"" + name + "\"");
      GammaBounds gb = gamma_bounds(q, c);
      row("gamma0", name, gb.gamma0.to_string());
      row("gamma1", name, gb.gamma1.to_string());
      row("gamma_lo", name, gb.lo.to_string());
      row("gamma_hi", name, gb.hi.to_string(), "exclusive");
      row("feasible", name, bool_text(gb.feasible));
      for (const std::string& v : gb.violations) row("violation", name, v);
    }
  }

  if (cfg.contains("weakev") && cfg["weakev"].is_boolean() && cfg["weakev"].get<bool>()) {
    WeakevReport w = weakev_thresholds(q);
    row("gamma0_tilde", "", w.gamma0_tilde.to_string());
    if (w.gammap_tilde) row("gammap_tilde", "", w.gammap_tilde->to_string());
    if (w.gammainf_tilde) row("gammainf_tilde", "", w.gammainf_tilde->to_string());
  }

  if (cfg.contains("overlap") && cfg["overlap"].is_boolean() && cfg["overlap"].get<bool>()) {
    OverlapResult o = overlap_check(d, q.r, q.sigma);
    row("overlap", "", bool_text(o.ok));
    if (o.ok) row("overlap_witness", "", o.witness.to_string());
    for (const std::string& v : o.violations) row("violation", "overlap", v);
  }

  if (cfg.contains("lip_cases")) {
    if (!cfg["lip_cases"].is_array()) throw ConfigError("lip_cases must be an array");
    for (const Json& item : cfg["lip_cases"]) {
      std::string name = item.is_string() ? item.get<std::string>() : std::string();
      LipCase c;
      if (name == "LL2")
        c = LipCase::LL2;
      else if (name == "LL2p")
        c = LipCase::LL2p;
      else if (name == "LW1")
        c = LipCase::LW1;
      else
        throw ConfigError("unknown Lipschitz case \"" + name + "\"");
      LipResult lr = lip_admissible(q, c);
      row("p_tilde", name, lr.p_tilde.to_string());
      row("q_gamma", name, lr.q_gamma.to_string());
      row("sigma_bound", name, lr.sigma_bound.to_string(), lr.sigma_strict ? "strict" : "");
      row("admissible", name, bool_text(lr.admissible));
      for (const std::string& v : lr.violations) row("violation", name, v);
    }
  }
  return 0;
}

// ---------------------------------------------------------------- kato-check

Json constants_doc(const KatoConstants& k) {
  return Json{{"c1", k.c1}, {"c2", k.c2}, {"c3", k.c3}};
}

int cmd_kato_check(const Json& cfg, const Options& opt) {
  validate_keys(cfg, {"form", "v_metric", "h_metric", "shifts"}, "config");
  if (!cfg.contains("form")) throw ConfigError("missing key \"form\" in config");
  Matrix coeff = parse_complex_matrix(cfg["form"], "form");
  SesquilinearForm form(coeff, metric_from(cfg, "v_metric", coeff.rows()));
  HilbertMetric h = metric_from(cfg, "h_metric", coeff.rows());

  KatoBatteryReport battery = kato_battery(form, h);
  Json doc{
      {"form", Json{{"accretivity", battery.form_accretivity},
                    {"continuity", battery.form_continuity}}},
      {"norm_equivalence", Json{{"ratio_min", battery.norm_equivalence.ratio_min},
                                {"ratio_max", battery.norm_equivalence.ratio_max},
                                {"c1_factor", battery.norm_equivalence.c1_factor},
                                {"c2_factor", battery.norm_equivalence.c2_factor}}},
      {"sqrt_product", Json{{"constants", constants_doc(battery.sqrt_product.constants)},
                            {"c1_lower_bound", battery.sqrt_product.c1_lower_bound},
                            {"polarization_c2_bound",
                             battery.sqrt_product.polarization_c2_bound}}},
      {"half_scale_note", battery.half_scale_note}};
  Json powers = Json::array();
  for (const ImaginaryPowerItem& item : battery.imaginary_powers)
    powers.push_back(Json{{"s", item.s}, {"norm", item.norm}, {"bound", item.bound}});
  doc["imaginary_powers"] = powers;

  PositiveTypeOperator op = associated_operator(form, h);
  std::vector<double> shifts{0.0};
  if (cfg.contains("shifts")) {
    if (!cfg["shifts"].is_array()) throw ConfigError("shifts must be an array of numbers");
    shifts.clear();
    for (const Json& s : cfg["shifts"]) {
      if (!s.is_number()) throw ConfigError("shifts must be an array of numbers");
      shifts.push_back(s.get<double>());
    }
  }
  Json quasi = Json::array();
  for (double shift : shifts) {
    QuasiSymmetryReport r = quasi_symmetry(op, shift);
    quasi.push_back(Json{{"shift", r.shift},
                         {"alpha_best", r.alpha_best},
                         {"beta", r.beta},
                         {"quasi_symmetric", r.quasi_symmetric},
                         {"relation_deviation", verify_constant_relation(op, shift)}});
  }
  doc["quasi_symmetry"] = quasi;
  write_json_file(out_path(opt, "battery.json"), doc);
  return 0;
}

// ------------------------------------------------------------------ fracpow

int cmd_fracpow(const Json& cfg, const Options& opt) {
  validate_keys(cfg, {"matrix", "metric", "alpha", "check_semigroup", "imaginary"}, "config");
  if (!cfg.contains("matrix")) throw ConfigError("missing key \"matrix\" in config");
  Matrix m = parse_complex_matrix(cfg["matrix"], "matrix");
  PositiveTypeOperator op(m, metric_from(cfg, "metric", m.rows()));
  if (!cfg.contains("alpha")) throw ConfigError("missing key \"alpha\" in config");
  Complex alpha = complex_from(cfg["alpha"], "alpha");

  Matrix power = fractional_power(op, alpha);
  write_json_file(out_path(opt, "power.json"), complex_matrix_doc(power));

  Json report{{"alpha", Json::array({alpha.real(), alpha.imag()})},
              {"decomposition",
               op.decomposition().kind() == SpectralDecomposition::Kind::diagonalizable
                   ? "diagonalizable"
                   : "schur"}};
  Json eigs = Json::array();
  for (Index i = 0; i < op.dim(); ++i) {
    Complex ev = op.decomposition().eigenvalues()(i);
    eigs.push_back(Json::array({ev.real(), ev.imag()}));
  }
  report["eigenvalues"] = eigs;

  if (cfg.contains("check_semigroup")) {
    const Json& cs = cfg["check_semigroup"];
    validate_keys(cs, {"gamma", "delta", "trials"}, "check_semigroup");
    SemigroupCheckReport sg = power_semigroup_check(
        op, require_number(cs, "gamma", "check_semigroup"),
        require_number(cs, "delta", "check_semigroup"),
        require_int(cs, "trials", "check_semigroup"), opt.seed);
    report["semigroup_check"] = Json{{"max_identity_deviation", sg.max_identity_deviation},
                                     {"max_isometry_deviation", sg.max_isometry_deviation},
                                     {"trials", sg.trials}};
  }

  if (cfg.contains("imaginary")) {
    if (!cfg["imaginary"].is_array()) throw ConfigError("imaginary must be an array of numbers");
    Json rows = Json::array();
    for (const Json& sj : cfg["imaginary"]) {
      if (!sj.is_number()) throw ConfigError("imaginary must be an array of numbers");
      double s = sj.get<double>();
      double norm = imaginary_power_norm(op, s, op.metric());
      rows.push_back(
          Json{{"s", s}, {"norm", norm}, {"bound", std::exp(M_PI * std::abs(s) / 2)}});
    }
    report["imaginary"] = rows;
  }
  write_json_file(out_path(opt, "report.json"), report);
  return 0;
}

// ---------------------------------------------------------------- smoothing

int cmd_smoothing(const Json& cfg, const Options& opt) {
  validate_keys(cfg, {"matrix", "metric", "alpha", "t_min", "t_max", "points", "expected",
                      "tolerance"},
                "config");
  if (!cfg.contains("matrix")) throw ConfigError("missing key \"matrix\" in config");
  Matrix m = parse_complex_matrix(cfg["matrix"], "matrix");
  PositiveTypeOperator op(m, metric_from(cfg, "metric", m.rows()));
  double alpha = require_number(cfg, "alpha", "config");
  double t_min = require_number(cfg, "t_min", "config");
  double t_max = require_number(cfg, "t_max", "config");
  int points = require_int(cfg, "points", "config");
  if (!(t_min > 0.0) || !(t_max > t_min)) throw ConfigError("need 0 < t_min < t_max");
  if (points < 2) throw ConfigError("points must be at least 2");

  std::vector<double> grid(static_cast<std::size_t>(points));
  for (int i = 0; i < points; ++i)
    grid[static_cast<std::size_t>(i)] =
        t_min * std::pow(t_max / t_min, static_cast<double>(i) / (points - 1));

  Matrix power = fractional_power(op, Complex(alpha, 0.0));
  CsvWriter csv(out_path(opt, "smoothing.csv"));
  csv.header({"t", "value"});
  std::vector<double> values(grid.size());
  for (std::size_t i = 0; i < grid.size(); ++i) {
    Matrix weighted = power * semigroup_matrix(op, grid[i]);
    values[i] = std::pow(grid[i], alpha) * metric_operator_norm(weighted, op.metric());
    csv.row({grid[i], values[i]});
  }

  SmoothingResult result = smoothing_constant(op, alpha, grid);
  Json doc{{"alpha", alpha}, {"supremum", result.supremum}, {"argmax_t", result.argmax_t}};
  bool missed = false;
  if (cfg.contains("expected")) {
    double expected = require_number(cfg, "expected", "config");
    double tolerance =
        cfg.contains("tolerance") ? require_number(cfg, "tolerance", "config") : 1e-4;
    doc["expected"] = expected;
    doc["tolerance"] = tolerance;
    doc["deviation"] = std::abs(result.supremum - expected);
    missed = std::abs(result.supremum - expected) > tolerance;
  }
  write_json_file(out_path(opt, "smoothing.json"), doc);

  if (opt.plot) {
    svgplot::Series s{"t^a |A^a exp(-tA)|", grid, values};
    svgplot::line_chart(out_path(opt, "smoothing.svg"), "smoothing constant sweep", {s});
  }
  if (missed)
    throw NumericalError("smoothing supremum " + format_double(result.supremum) +
                         " missed the expected value");
  return 0;
}

// --------------------------------------------------------- stability-region

int cmd_stability_region(const Json& cfg, const Options& opt) {
  validate_keys(cfg, {"domain", "modes", "linearization", "d1", "d2", "curve_points"}, "config");
  if (!cfg.contains("domain")) throw ConfigError("missing key \"domain\" in config");
  DomainSpec domain = domain_from(cfg["domain"]);
  int modes = require_int(cfg, "modes", "config");
  if (!cfg.contains("linearization")) throw ConfigError("missing key \"linearization\" in config");
  RealMatrix b = parse_real_matrix(cfg["linearization"], "linearization");
  if (!cfg.contains("d1") || !cfg.contains("d2"))
    throw ConfigError("missing diffusion ranges d1/d2 in config");
  std::vector<double> d1_grid = linear_grid(cfg["d1"], "d1");
  std::vector<double> d2_grid = linear_grid(cfg["d2"], "d2");

  LaplaceEigensystem eigen = laplace_eigenvalues(domain, modes);
  RegionScan scan = region_scan(b, eigen, d1_grid, d2_grid, opt.workers);

  CsvWriter region_csv(out_path(opt, "region.csv"));
  region_csv.header({"d1", "d2", "in_region", "gap"});
  for (const RegionCell& cell : scan.cells)
    region_csv.row({cell.d1, cell.d2, cell.in_region ? 1.0 : 0.0, cell.gap});

  int curve_points = cfg.contains("curve_points") ? require_int(cfg, "curve_points", "config") : 200;
  if (curve_points < 2) throw ConfigError("curve_points must be at least 2");
  std::vector<CurveSample> samples;
  if (scan.region_test_available) {
    std::vector<double> curve_grid(static_cast<std::size_t>(curve_points));
    double lo = d1_grid.front(), hi = d1_grid.back();
    for (int i = 0; i < curve_points; ++i)
      curve_grid[static_cast<std::size_t>(i)] = lo + (hi - lo) * i / (curve_points - 1);
    samples = hyperbola_curves(b, eigen, curve_grid);
  }
  CsvWriter curves_csv(out_path(opt, "curves.csv"));
  curves_csv.header({"k", "d1", "d2"});
  for (const CurveSample& s : samples)
    curves_csv.row({static_cast<double>(s.k), s.d1, s.d2});

  write_json_file(out_path(opt, "summary.json"),
                  Json{{"cells", scan.cells.size()},
                       {"mismatches", scan.mismatches},
                       {"boundary_cells", scan.boundary_cells},
                       {"region_test_available", scan.region_test_available},
                       {"modes", eigen.kappas.size()},
                       {"kappa_max", eigen.kappas.back()}});

  if (opt.plot) {
    std::vector<int> category(scan.cells.size());
    for (std::size_t i = 0; i < scan.cells.size(); ++i)
      category[i] = scan.cells[i].boundary ? 2 : (scan.cells[i].gap > 0.0 ? 1 : 0);
    svgplot::grid_chart(out_path(opt, "region.svg"), "stability region (spectral gap sign)",
                        d1_grid, d2_grid, category);
    std::vector<svgplot::Series> series;
    for (const CurveSample& s : samples) {
      if (series.empty() || series.back().label != "mode " + std::to_string(s.k))
        series.push_back({"mode " + std::to_string(s.k), {}, {}});
      series.back().x.push_back(s.d1);
      series.back().y.push_back(s.d2);
    }
    svgplot::line_chart(out_path(opt, "curves.svg"), "per-mode boundary curves", series);
  }
  return 0;
}

// ----------------------------------------------------------------- simulate

ReactionDiffusionSpec spec_from(const Json& cfg) {
  ReactionDiffusionSpec spec;
  if (!cfg.contains("domain")) throw ConfigError("missing key \"domain\" in config");
  spec.domain = domain_from(cfg["domain"]);
  spec.mode_cutoff = require_int(cfg, "modes", "config");
  if (!cfg.contains("diffusion") || !cfg["diffusion"].is_array())
    throw ConfigError("diffusion must be an array of numbers");
  const Json& dj = cfg["diffusion"];
  spec.diffusion.resize(static_cast<Index>(dj.size()));
  for (std::size_t i = 0; i < dj.size(); ++i) {
    if (!dj[i].is_number()) throw ConfigError("diffusion must be an array of numbers");
    spec.diffusion(static_cast<Index>(i)) = dj[i].get<double>();
  }
  if (!cfg.contains("linearization")) throw ConfigError("missing key \"linearization\" in config");
  spec.linearization = parse_real_matrix(cfg["linearization"], "linearization");

  if (!cfg.contains("reaction")) throw ConfigError("missing key \"reaction\" in config");
  const Json& rj = cfg["reaction"];
  validate_keys(rj, {"kind", "cubic_coeff"}, "reaction");
  std::string kind = require_string(rj, "kind", "reaction");
  RealMatrix b = spec.linearization;
  Index n = b.rows();
  if (kind == "linear") {
    spec.reaction = [b](const Vector& u) -> Vector { return b * u; };
  } else if (kind == "cubic") {
    RealVector coeff = RealVector::Constant(n, -1.0);
    if (rj.contains("cubic_coeff")) {
      if (rj["cubic_coeff"].is_number()) {
        coeff.setConstant(rj["cubic_coeff"].get<double>());
      } else if (rj["cubic_coeff"].is_array() &&
                 static_cast<Index>(rj["cubic_coeff"].size()) == n) {
        for (Index i = 0; i < n; ++i) coeff(i) = rj["cubic_coeff"][static_cast<std::size_t>(i)].get<double>();
      } else {
        throw ConfigError("cubic_coeff must be a number or an array with one entry per component");
      }
    }
    spec.reaction = [b, coeff](const Vector& u) -> Vector {
      return b * u + (coeff.cast<Complex>().array() * u.array().cube()).matrix();
    };
  } else {
    throw ConfigError("unknown reaction kind \"" + kind + "\"");
  }
  return spec;
}

int cmd_simulate(const Json& cfg, const Options& opt) {
  validate_keys(cfg,
                {"domain", "modes", "diffusion", "linearization", "reaction", "u0", "horizon",
                 "step", "tail_fraction"},
                "config");
  ReactionDiffusionSpec spec = spec_from(cfg);
  if (!cfg.contains("u0")) throw ConfigError("missing key \"u0\" in config");
  const Json& u0j = cfg["u0"];
  validate_keys(u0j, {"mode", "component", "amplitude"}, "u0");
  double horizon = require_number(cfg, "horizon", "config");
  double step = require_number(cfg, "step", "config");
  double tail = cfg.contains("tail_fraction") ? require_number(cfg, "tail_fraction", "config") : 0.5;

  AssembledRD rd = galerkin_assemble(spec);
  Vector u0 = mode_unit_state(rd, require_int(u0j, "mode", "u0"),
                              require_int(u0j, "component", "u0"),
                              require_number(u0j, "amplitude", "u0"));
  SimulationReport report = simulate_rd(spec, u0, horizon, step, tail);

  const Trajectory& traj = report.trajectory;
  CsvWriter traj_csv(out_path(opt, "trajectory.csv"));
  std::vector<std::string> header{"t"};
  for (Index i = 0; i < rd.a.dim(); ++i) {
    header.push_back("re(u_" + std::to_string(i + 1) + ")");
    header.push_back("im(u_" + std::to_string(i + 1) + ")");
  }
  for (const auto& [alpha, values] : traj.norms) header.push_back("norm_" + short_number(alpha));
  traj_csv.header(header);
  for (std::size_t k = 0; k < traj.times.size(); ++k) {
    std::vector<double> row{traj.times[k]};
    for (Index i = 0; i < rd.a.dim(); ++i) {
      row.push_back(traj.states[k](i).real());
      row.push_back(traj.states[k](i).imag());
    }
    for (const auto& [alpha, values] : traj.norms) row.push_back(values[k]);
    traj_csv.row(row);
  }

  CsvWriter decay_csv(out_path(opt, "decay.csv"));
  decay_csv.header({"alpha", "rate", "prefactor", "lambda0"});
  decay_csv.row({0.0, report.fit_l2.rate, report.fit_l2.prefactor, report.lambda0});
  decay_csv.row({0.5, report.fit_half.rate, report.fit_half.prefactor, report.lambda0});

  if (opt.plot) {
    std::vector<svgplot::Series> series;
    for (const auto& [alpha, values] : traj.norms)
      series.push_back({"norm_" + short_number(alpha), traj.times, values});
    svgplot::line_chart(out_path(opt, "trajectory.svg"), "scale-norm decay", series);
  }
  return 0;
}

// ---------------------------------------------------------------- decay-fit

int cmd_decay_fit(const Json& cfg, const Options& opt) {
  validate_keys(cfg, {"trajectory", "alpha", "tail_fraction"}, "config");
  std::string path = require_string(cfg, "trajectory", "config");
  double alpha = require_number(cfg, "alpha", "config");
  double tail = cfg.contains("tail_fraction") ? require_number(cfg, "tail_fraction", "config") : 0.5;

  CsvTable table = CsvTable::read(path);
  int t_col = table.column_index("t");
  int n_col = table.column_index("norm_" + short_number(alpha));
  Trajectory traj;
  std::vector<double> norm_values;
  for (const std::vector<double>& row : table.rows) {
    traj.times.push_back(row[static_cast<std::size_t>(t_col)]);
    norm_values.push_back(row[static_cast<std::size_t>(n_col)]);
  }
  traj.norms[alpha] = norm_values;

  DecayFit fit = decay_fit(traj, alpha, tail);
  CsvWriter csv(out_path(opt, "decay.csv"));
  csv.header({"alpha", "rate", "prefactor", "lambda0"});
  csv.mixed_row({short_number(alpha), format_double(fit.rate), format_double(fit.prefactor), ""});
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"numerical laboratory for form calculus, fractional scales, and"
               " reaction-diffusion stability"};
  app.require_subcommand(1);
  Options opt;

  auto add_common = [&opt](CLI::App* sub) {
    sub->add_option("--config", opt.config, "configuration file (JSON)")->required();
    sub->add_option("--out", opt.out, "output directory (default: current)");
    sub->add_option("--seed", opt.seed, "seed for randomized sweeps (default 0)");
    sub->add_option("--workers", opt.workers, "worker threads for grid scans (default 1)");
    sub->add_flag("--plot", opt.plot, "render SVG plots from the written CSV files");
    return sub;
  };

  CLI::App* exponents = add_common(
      app.add_subcommand("exponents", "exact admissibility exponents as a CSV table"));
  CLI::App* kato = add_common(app.add_subcommand(
      "kato-check", "scalar-product battery for a sesquilinear form (battery.json)"));
  CLI::App* fracpow = add_common(
      app.add_subcommand("fracpow", "fractional power of a positive-type matrix"));
  CLI::App* smoothing = add_common(app.add_subcommand(
      "smoothing", "sup of t^alpha |A^alpha exp(-tA)| over a time grid"));
  CLI::App* region = add_common(app.add_subcommand(
      "stability-region", "diffusion-plane stability region: grid scan plus boundary curves"));
  CLI::App* simulate = add_common(app.add_subcommand(
      "simulate", "mild-solution run for a reaction-diffusion system with decay fits"));
  CLI::App* decayfit = add_common(
      app.add_subcommand("decay-fit", "least-squares decay rate from a trajectory CSV"));

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  try {
    Json cfg = load_json_file(opt.config);
    fs::create_directories(opt.out);
    if (exponents->parsed()) return cmd_exponents(cfg, opt);
    if (kato->parsed()) return cmd_kato_check(cfg, opt);
    if (fracpow->parsed()) return cmd_fracpow(cfg, opt);
    if (smoothing->parsed()) return cmd_smoothing(cfg, opt);
    if (region->parsed()) return cmd_stability_region(cfg, opt);
    if (simulate->parsed()) return cmd_simulate(cfg, opt);
    if (decayfit->parsed()) return cmd_decay_fit(cfg, opt);
    std::cerr << "no subcommand selected\n";
    return 2;
  } catch (const ConfigError& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return 2;
  } catch (const RationalError& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "numerical failure: " << e.what() << "\n";
    return 1;
  }
}
