#include "schwinger/cli.hpp"

#include <cmath>
#include <fstream>
#include <memory>
#include <optional>
#include <ostream>
#include <random>
#include <sstream>

#include "CLI11.hpp"
#include "json.hpp"
#include "schwinger/continuum.hpp"
#include "schwinger/error.hpp"
#include "schwinger/io.hpp"
#include "schwinger/propagator.hpp"

namespace schwinger {

namespace {

using nlohmann::json;

struct RunConfig {
  std::string groupoid;
  std::string measure;
  std::string lagrangian = "zero";
  std::string dfs;
  std::string grid = "0,1,4";
  std::string geometry;
  std::string mode;
  std::string method = "auto";
  double mass = 1.0;
  std::optional<double> hbar;
  std::string out;
  std::string format = "csv";
  std::uint64_t seed = 20240611;
  std::size_t threads = 1;
  std::string check;
  std::optional<std::size_t> at;
  std::string oracle;
  std::size_t N = 64;
  std::optional<double> T;
  double x0 = 0.0;
  std::vector<double> x1;
  double L = 8.0;
  std::size_t M = 400;
  std::size_t sites = 256;
  double circumference = 2.0 * M_PI;
  int nmax = 10;
  std::size_t burn_in = 8;
  std::size_t n_min = 1;
  std::size_t n_max = 256;
  std::optional<double> tol;
  std::size_t samples = 100;
  std::size_t limit = 0;
};

TimeGrid parse_grid(const std::string& spec) {
  std::vector<std::string> parts;
  std::stringstream ss(spec);
  std::string item;
  while (std::getline(ss, item, ',')) parts.push_back(item);
  if (parts.size() != 3) throw Error(ErrorKind::parse, "--grid expects t0,t1,N");
  try {
    const double t0 = std::stod(parts[0]), t1 = std::stod(parts[1]);
    const long n = std::stol(parts[2]);
    if (n < 0) throw Error(ErrorKind::parse, "--grid N must be non-negative");
    return TimeGrid::uniform(t0, t1, static_cast<std::size_t>(n));
  } catch (const std::logic_error&) {
    throw Error(ErrorKind::parse, "--grid expects numbers: t0,t1,N");
  }
}

ObjectId object_arg(double v, const FiniteGroupoid& g, const char* name) {
  if (v < 0 || v != std::floor(v) || v >= static_cast<double>(g.object_count()))
    throw Error(ErrorKind::parse, std::string(name) + " must be an object id below " + std::to_string(g.object_count()));
  return ObjectId(static_cast<std::size_t>(v));
}

// Splits "name:arg" into name and optional arg.
std::pair<std::string, std::string> split_spec(const std::string& s) {
  const auto c = s.find(':');
  if (c == std::string::npos) return {s, ""};
  return {s.substr(0, c), s.substr(c + 1)};
}

double slice_dt(const TimeGrid& grid) {
  if (grid.intervals() == 0) throw Error(ErrorKind::grid, "the energy q-Lagrangian needs at least one interval");
  const double dt = grid[1] - grid[0];
  for (std::size_t k = 2; k < grid.size(); ++k)
    if (std::abs((grid[k] - grid[k - 1]) - dt) > 1e-12 * dt)
      throw Error(ErrorKind::grid, "the energy q-Lagrangian needs a uniform grid");
  return dt;
}

QLagrangian resolve_lagrangian(const RunConfig& cfg, const FiniteGroupoid& g, const TimeGrid& grid) {
  const auto [name, arg] = split_spec(cfg.lagrangian);
  if (name == "zero") return zero_q_lagrangian(g);
  if (name == "random") return random_q_lagrangian(g, arg.empty() ? cfg.seed : std::stoull(arg));
  if (name == "energy") {
    const auto [kind, param] = split_spec(arg);
    const std::size_t n = g.object_count();
    if (g.morphism_count() != n * n)
      throw Error(ErrorKind::parse, "energy q-Lagrangians need a pair groupoid");
    LatticeGeometry geo = LatticeGeometry::line(n, 1.0);
    if (kind == "line")
      geo = LatticeGeometry::line(n, param.empty() ? 1.0 : std::stod(param));
    else if (kind == "circle")
      geo = LatticeGeometry::circle(n, param.empty() ? 2.0 * M_PI : std::stod(param));
    else
      throw Error(ErrorKind::parse, "unknown energy geometry '" + kind + "'");
    QLagrangian l = energy_q_lagrangian(geo, slice_dt(grid), cfg.mass);
    l.symmetric = check_symmetry(l, g);
    return l;
  }
  return io::parse_q_lagrangian_csv(io::read_file(cfg.lagrangian), g);
}

GroupoidMeasure resolve_measure(const RunConfig& cfg, const FiniteGroupoid& g) {
  if (cfg.measure.empty()) return counting_measure(g);
  return io::parse_measure_csv(io::read_file(cfg.measure), g);
}

DFSSpec resolve_spec(const RunConfig& cfg, const FiniteGroupoid& g, const GroupoidMeasure& m) {
  DFSSpec spec = cfg.dfs.empty() ? DFSSpec::uniform(g.object_count(), m.object_weights)
                                 : io::parse_dfs_spec_json(io::read_file(cfg.dfs), g.object_count(), m.object_weights);
  if (cfg.hbar) spec.hbar = *cfg.hbar;
  if (cfg.mode == "real") spec.mode = PhaseMode::real;
  else if (cfg.mode == "euclidean") spec.mode = PhaseMode::euclidean;
  else if (!cfg.mode.empty()) throw Error(ErrorKind::parse, "--mode must be real or euclidean");
  return spec;
}

FiniteGroupoid require_groupoid(const RunConfig& cfg) {
  if (cfg.groupoid.empty()) throw Error(ErrorKind::parse, "--groupoid is required");
  return io::load_groupoid(cfg.groupoid);
}

// Where results go: the --out file, or the caller's stream.
class Sink {
 public:
  Sink(const std::string& path, std::ostream& fallback) {
    if (!path.empty()) {
      file_ = std::make_unique<std::ofstream>(path, std::ios::binary);
      if (!*file_) throw Error(ErrorKind::io, "cannot write " + path);
    }
    stream_ = file_ ? file_.get() : &fallback;
  }
  std::ostream& operator*() { return *stream_; }

 private:
  std::unique_ptr<std::ofstream> file_;
  std::ostream* stream_;
};

int cmd_validate(const RunConfig& cfg, std::ostream& out) {
  const FiniteGroupoid g = require_groupoid(cfg);
  const ValidationReport report = validate_axioms(g);
  Sink sink(cfg.out, out);
  if (cfg.format == "json") {
    json v = json::array();
    for (const auto& x : report.violations)
      v.push_back({{"axiom", std::string(to_string(x.axiom))}, {"witnesses", x.witnesses}, {"message", x.message}});
    *sink << json{{"objects", g.object_count()}, {"morphisms", g.morphism_count()}, {"ok", report.ok()},
                  {"violations", v}}
                 .dump(1)
          << '\n';
  } else {
    *sink << "axiom,witnesses,message\n";
    for (const auto& x : report.violations) {
      std::string w;
      for (std::size_t i = 0; i < x.witnesses.size(); ++i) w += (i ? " " : "") + std::to_string(x.witnesses[i]);
      *sink << to_string(x.axiom) << ',' << w << ",\"" << x.message << "\"\n";
    }
    *sink << "# objects=" << g.object_count() << " morphisms=" << g.morphism_count()
          << " violations=" << report.violations.size() << '\n';
  }
  return report.ok() ? kExitOk : kExitCheck;
}

int cmd_state_check(const RunConfig& cfg, std::ostream& out) {
  const FiniteGroupoid g = require_groupoid(cfg);
  const GroupoidMeasure m = resolve_measure(cfg, g);
  const TimeGrid grid = parse_grid(cfg.grid);
  const QLagrangian l = resolve_lagrangian(cfg, g, grid);
  const DFSSpec spec = resolve_spec(cfg, g, m);
  const double tol = cfg.tol.value_or(1e-10);

  // Throws symmetry / normalization errors, reported with exit status 3.
  const DFSFunction dfs = dfs_function(l, spec, g, grid, m.object_weights);

  const HistorySet set = build_history_set(g, grid);
  const PositivityCertificate hist_cert = history_positivity(dfs, set, tol);

  // Configuration-level DFS form with the slice-0 density and zero phase.
  const DfsForm form{spec.density.front(), std::vector<double>(g.morphism_count(), 0.0)};
  const PositiveTypeCandidate phi = form.candidate(g);
  const PositivityCertificate g_cert = is_positive_type(phi, m, g, tol);

  std::mt19937_64 rng(cfg.seed);
  std::normal_distribution<double> normal;
  double residual = 0.0;
  for (std::size_t s = 0; s < cfg.samples; ++s) {
    AlgebraElement f(g.morphism_count());
    for (std::size_t a = 0; a < f.size(); ++a) f[a] = Complex(normal(rng), normal(rng));
    const Complex lhs = state_value(phi, convolve(involute(f, m, g), f, m, g), m, g);
    const double rhs = l2_objects_norm_sq(vector_phi_f(form, f, m, g), m);
    residual = std::max(residual, std::abs(lhs - rhs) / std::max(1.0, std::abs(lhs)));
  }
  double norm_dev = 0.0;
  for (const auto& row : classical_restriction(dfs)) {
    double s = 0.0;
    for (std::size_t x = 0; x < row.size(); ++x) s += m.object_weights[x] * row[x];
    norm_dev = std::max(norm_dev, std::abs(s - 1.0));
  }

  const bool ok = hist_cert.verdict == Verdict::positive && g_cert.verdict == Verdict::positive && residual <= 1e-12;
  Sink sink(cfg.out, out);
  const auto verdict = [](const PositivityCertificate& c) {
    return c.verdict == Verdict::positive ? "positive" : "indefinite";
  };
  if (cfg.format == "json") {
    *sink << json{{"normalization_deviation", norm_dev},
                  {"symmetric", true},
                  {"history_count", set.histories.size()},
                  {"history_min_eigenvalue", hist_cert.min_eigenvalue},
                  {"history_form_dim", hist_cert.form_matrix_dim},
                  {"history_verdict", verdict(hist_cert)},
                  {"groupoid_min_eigenvalue", g_cert.min_eigenvalue},
                  {"groupoid_form_dim", g_cert.form_matrix_dim},
                  {"groupoid_verdict", verdict(g_cert)},
                  {"identity_residual", residual},
                  {"ok", ok}}
                 .dump(1)
          << '\n';
  } else {
    *sink << "check,value,status\n"
          << "normalization_deviation," << io::format_double(norm_dev) << ",ok\n"
          << "symmetry,0,ok\n"
          << "history_count," << set.histories.size() << ",ok\n"
          << "history_min_eigenvalue," << io::format_double(hist_cert.min_eigenvalue) << ',' << verdict(hist_cert) << '\n'
          << "groupoid_min_eigenvalue," << io::format_double(g_cert.min_eigenvalue) << ',' << verdict(g_cert) << '\n'
          << "identity_residual," << io::format_double(residual) << ',' << (residual <= 1e-12 ? "ok" : "fail") << '\n';
  }
  return ok ? kExitOk : kExitCheck;
}

int cmd_histories(const RunConfig& cfg, std::ostream& out) {
  const FiniteGroupoid g = require_groupoid(cfg);
  const TimeGrid grid = parse_grid(cfg.grid);
  const ObjectId x0 = object_arg(cfg.x0, g, "--x0");
  const ObjectId x1 = object_arg(cfg.x1.empty() ? 0.0 : cfg.x1.front(), g, "--x1");
  HistoryStream stream(g, grid, x0, x1);
  Sink sink(cfg.out, out);
  std::size_t count = 0;
  json all = json::array();
  if (cfg.format != "json") *sink << "history,k,time,kpath_morphism_id\n";
  while (auto w = stream.next()) {
    if (cfg.limit != 0 && count == cfg.limit) break;
    if (cfg.format == "json") {
      std::vector<std::uint32_t> kp;
      for (auto a : w->kpath) kp.push_back(a.value);
      all.push_back({{"times", grid.times()}, {"kpath", kp}});
    } else {
      for (std::size_t k = 0; k < w->kpath.size(); ++k)
        *sink << count << ',' << k << ',' << io::format_double(grid[k]) << ',' << w->kpath[k].value << '\n';
    }
    ++count;
  }
  if (cfg.format == "json")
    *sink << json{{"count", count}, {"histories", all}}.dump(1) << '\n';
  else
    *sink << "# count=" << count << '\n';
  return kExitOk;
}

int propagate_finite(const RunConfig& cfg, std::ostream& out) {
  const FiniteGroupoid g = require_groupoid(cfg);
  const GroupoidMeasure m = resolve_measure(cfg, g);
  const TimeGrid grid = parse_grid(cfg.grid);
  const QLagrangian l = resolve_lagrangian(cfg, g, grid);
  const DFSSpec spec = resolve_spec(cfg, g, m);
  if (!check_symmetry(l, g)) {
    const auto bad = asymmetric_pairs(l, g);
    throw Error(ErrorKind::symmetry, "q-Lagrangian is not symmetric on (" + std::to_string(bad[0].first.value) + "," +
                                         std::to_string(bad[0].second.value) + ")");
  }
  check_dfs_spec(spec, g.object_count(), grid, m.object_weights);
  if (grid.intervals() == 0) throw Error(ErrorKind::grid, "propagation needs at least one interval");

  PathSumOptions opts;
  opts.threads = cfg.threads;
  const PropagatorTable table = propagator_table(g, grid, l, spec, m, opts);
  const double tol = cfg.tol.value_or(1e-12);

  std::vector<std::pair<std::string, double>> checks;
  bool ok = true;
  if (cfg.check == "reproducing") {
    const std::size_t n = grid.intervals();
    if (n < 2) throw Error(ErrorKind::grid, "the reproducing check needs at least two intervals");
    std::vector<std::size_t> js;
    if (cfg.at) js.push_back(*cfg.at);
    else
      for (std::size_t j = 1; j < n; ++j) js.push_back(j);
    for (std::size_t j : js) {
      const double r = reproducing_check(g, grid, l, spec, m, j).relative();
      checks.emplace_back("reproducing_residual_at_" + std::to_string(j), r);
      ok = ok && r <= tol;
    }
  } else if (!cfg.check.empty()) {
    throw Error(ErrorKind::parse, "--check supports only 'reproducing'");
  }
  if (cfg.oracle == "transfer-matrix") {
    const double d = transfer_matrix_deviation(table, g, grid, l, spec, m);
    checks.emplace_back("transfer_matrix_deviation", d);
    ok = ok && d <= tol;
  } else if (!cfg.oracle.empty()) {
    throw Error(ErrorKind::parse, "--oracle supports only 'transfer-matrix'");
  }

  Sink sink(cfg.out, out);
  if (cfg.format == "json") {
    std::ostringstream ss;
    io::write_propagator_json(ss, table);
    json doc = json::parse(ss.str());
    for (const auto& [k, v] : checks) doc["checks"][k] = v;
    *sink << doc.dump(1) << '\n';
  } else {
    io::write_propagator_csv(*sink, table);
    for (const auto& [k, v] : checks) *sink << "# " << k << '=' << io::format_double(v) << '\n';
  }
  return ok ? kExitOk : kExitCheck;
}

SliceConfig slice_config(const RunConfig& cfg, double default_T) {
  SliceConfig s;
  s.N = cfg.N;
  s.T = cfg.T.value_or(default_T);
  s.mass = cfg.mass;
  s.hbar = cfg.hbar.value_or(1.0);
  s.mode = cfg.mode == "real" ? PhaseMode::real : PhaseMode::euclidean;
  if (!cfg.mode.empty() && cfg.mode != "real" && cfg.mode != "euclidean")
    throw Error(ErrorKind::parse, "--mode must be real or euclidean");
  s.L = cfg.L;
  s.M = cfg.M;
  check_slice_config(s);
  return s;
}

LineMethod line_method(const RunConfig& cfg, const SliceConfig& s) {
  if (cfg.method == "recursion") return LineMethod::recursion;
  if (cfg.method == "quadrature") return LineMethod::quadrature;
  if (cfg.method != "auto") throw Error(ErrorKind::parse, "--method must be auto, recursion or quadrature");
  return s.mode == PhaseMode::euclidean ? LineMethod::quadrature : LineMethod::recursion;
}

int propagate_continuum(const RunConfig& cfg, std::ostream& out, std::ostream& err) {
  const bool circle = cfg.geometry == "circle";
  if (!circle && cfg.geometry != "line") throw Error(ErrorKind::parse, "--geometry must be line or circle");
  const SliceConfig s = slice_config(cfg, circle ? 0.5 : 1.0);
  std::vector<double> targets = cfg.x1;
  if (targets.empty()) {
    if (circle) targets = {0.0, M_PI / 4, M_PI / 2, M_PI};
    else targets = {0.0, 0.5, 1.0, 1.5, 2.0};
  }
  double tol = 1e-2;
  LineMethod method = LineMethod::quadrature;
  if (!circle) {
    method = line_method(cfg, s);
    tol = method == LineMethod::quadrature ? 1e-3 : 1e-9;
  }
  tol = cfg.tol.value_or(tol);

  struct Row {
    double x1;
    Complex value, reference;
    double rel;
  };
  std::vector<Row> rows;
  std::vector<std::string> warnings;
  for (double x1 : targets) {
    Complex v, ref;
    if (circle) {
      const auto r = circle_propagator(s, cfg.circumference, cfg.sites, cfg.x0, x1);
      v = r.value;
      ref = image_sum(s.mass, s.hbar, s.T, cfg.circumference, x1 - cfg.x0, cfg.nmax);
      warnings.insert(warnings.end(), r.warnings.begin(), r.warnings.end());
    } else {
      const PhaseMode ref_mode = method == LineMethod::quadrature ? PhaseMode::euclidean : s.mode;
      ref = free_kernel(s.mass, s.hbar, s.T, x1 - cfg.x0, ref_mode);
      if (method == LineMethod::recursion) {
        v = sliced_line_recursion(s, cfg.x0, x1);
      } else {
        const auto r = sliced_line_quadrature(s, cfg.x0, x1);
        v = r.value;
        warnings.insert(warnings.end(), r.warnings.begin(), r.warnings.end());
      }
    }
    rows.push_back({x1, v, ref, std::abs(v - ref) / std::abs(ref)});
  }
  bool ok = true;
  for (const auto& r : rows) ok = ok && r.rel <= tol;
  for (const auto& w : warnings) err << "warning: " << w << '\n';

  Sink sink(cfg.out, out);
  if (cfg.format == "json") {
    json arr = json::array();
    for (const auto& r : rows)
      arr.push_back({{"x0", cfg.x0}, {"t0", 0.0}, {"x1", r.x1}, {"t1", s.T}, {"re", r.value.real()},
                     {"im", r.value.imag()}, {"abs", std::abs(r.value)}, {"phase", std::arg(r.value)},
                     {"reference_re", r.reference.real()}, {"reference_im", r.reference.imag()}, {"rel_error", r.rel}});
    *sink << json{{"entries", arr}, {"warnings", warnings}}.dump(1) << '\n';
  } else {
    *sink << "x0,t0,x1,t1,re,im,abs,phase,reference_re,reference_im,rel_error\n";
    for (const auto& r : rows) {
      *sink << io::format_double(cfg.x0) << ",0," << io::format_double(r.x1) << ',' << io::format_double(s.T) << ','
            << io::format_double(r.value.real()) << ',' << io::format_double(r.value.imag()) << ','
            << io::format_double(std::abs(r.value)) << ',' << io::format_double(std::arg(r.value)) << ','
            << io::format_double(r.reference.real()) << ',' << io::format_double(r.reference.imag()) << ','
            << io::format_double(r.rel) << '\n';
    }
    for (const auto& w : warnings) *sink << "# warning: " << w << '\n';
  }
  return ok ? kExitOk : kExitCheck;
}

int cmd_propagate(const RunConfig& cfg, std::ostream& out, std::ostream& err) {
  if (!cfg.geometry.empty()) return propagate_continuum(cfg, out, err);
  return propagate_finite(cfg, out);
}

int cmd_converge(const RunConfig& cfg, std::ostream& out, std::ostream& err) {
  const bool circle = cfg.geometry == "circle";
  if (!circle && cfg.geometry != "line") throw Error(ErrorKind::parse, "--geometry must be line or circle");
  SliceConfig s = slice_config(cfg, circle ? 0.5 : 1.0);
  const auto schedule = doubling_schedule(cfg.n_min, cfg.n_max);
  const double x1 = cfg.x1.empty() ? (circle ? M_PI : 1.0) : cfg.x1.front();
  const ConvergenceTable table =
      circle ? converge_circle(s, cfg.circumference, cfg.sites, cfg.x0, x1, schedule, cfg.nmax)
             : converge_line(s, cfg.x0, x1, schedule, line_method(cfg, s));
  const double floor = cfg.tol.value_or(1e-12);
  const bool ok = is_monotone(table, cfg.burn_in, floor);
  for (const auto& w : table.warnings) err << "warning: " << w << '\n';
  Sink sink(cfg.out, out);
  if (cfg.format == "json") {
    io::write_convergence_json(*sink, table);
  } else {
    io::write_convergence_csv(*sink, table);
    *sink << "# burn_in=" << cfg.burn_in << " floor=" << io::format_double(floor)
          << " monotone=" << (ok ? "true" : "false") << '\n';
    for (const auto& w : table.warnings) *sink << "# warning: " << w << '\n';
  }
  if (!ok) err << "convergence is not monotone beyond N=" << cfg.burn_in << '\n';
  return ok ? kExitOk : kExitCheck;
}

int exit_for(ErrorKind k) {
  switch (k) {
    case ErrorKind::symmetry:
    case ErrorKind::normalization:
    case ErrorKind::non_quasi_invariant:
    case ErrorKind::unsupported_form:
      return kExitCheck;
    default:
      return kExitInput;
  }
}

}  // namespace

int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  RunConfig cfg;
  CLI::App app{"Finite groupoid kinematics, DFS states and sum-over-histories propagators", "schwinger"};
  app.require_subcommand(1);

  const auto add_output = [&](CLI::App* sub) {
    sub->add_option("--out", cfg.out, "Output file (default: stdout)");
    sub->add_option("--format", cfg.format, "Output format")->check(CLI::IsMember({"csv", "json"}));
  };
  const auto add_finite = [&](CLI::App* sub) {
    sub->add_option("--groupoid", cfg.groupoid, "Builtin spec (pair:n, cyclic:k, pair_x_cyclic:n,k) or JSON file");
    sub->add_option("--measure", cfg.measure, "Measure CSV");
    sub->add_option("--lagrangian", cfg.lagrangian, "zero | random[:seed] | energy:line[:h] | energy:circle[:Lc] | CSV file");
    sub->add_option("--dfs", cfg.dfs, "DFS config JSON");
    sub->add_option("--grid", cfg.grid, "t0,t1,N");
    sub->add_option("--seed", cfg.seed, "Seed for random q-Lagrangians and sampled checks");
  };
  const auto add_physics = [&](CLI::App* sub) {
    sub->add_option("--mode", cfg.mode, "real | euclidean");
    sub->add_option("--mass", cfg.mass, "Particle mass");
    sub->add_option("--hbar", cfg.hbar, "Action unit");
    sub->add_option("--tol", cfg.tol, "Check tolerance");
  };
  const auto add_continuum = [&](CLI::App* sub) {
    sub->add_option("--geometry", cfg.geometry, "line | circle");
    sub->add_option("--method", cfg.method, "auto | recursion | quadrature (line)");
    sub->add_option("--N", cfg.N, "Slice count");
    sub->add_option("--T", cfg.T, "Total time");
    sub->add_option("--L", cfg.L, "Quadrature half-width");
    sub->add_option("--M", cfg.M, "Quadrature nodes");
    sub->add_option("--sites", cfg.sites, "Circle lattice sites");
    sub->add_option("--circumference", cfg.circumference, "Circle circumference");
    sub->add_option("--nmax", cfg.nmax, "Image-sum winding cutoff");
  };
  const auto add_endpoints = [&](CLI::App* sub) {
    sub->add_option("--x0", cfg.x0, "Initial point (object id for finite groupoids)");
    sub->add_option("--x1", cfg.x1, "Final point(s)");
  };

  auto* validate = app.add_subcommand("validate", "Check the groupoid axioms");
  validate->add_option("--groupoid", cfg.groupoid, "Builtin spec or JSON file")->required();
  add_output(validate);

  auto* state = app.add_subcommand("state", "State functionals");
  state->require_subcommand(1);
  auto* state_check = state->add_subcommand("check", "Normalization, symmetry, positivity and GNS identity");
  add_finite(state_check);
  add_physics(state_check);
  add_output(state_check);
  state_check->add_option("--samples", cfg.samples, "Random elements for the identity check");

  auto* histories = app.add_subcommand("histories", "Enumerate histories between two objects");
  add_finite(histories);
  add_endpoints(histories);
  add_output(histories);
  histories->add_option("--limit", cfg.limit, "Stop after this many histories (0: all)");

  auto* propagate = app.add_subcommand("propagate", "Propagator tables and oracle checks");
  add_finite(propagate);
  add_physics(propagate);
  add_continuum(propagate);
  add_endpoints(propagate);
  add_output(propagate);
  propagate->add_option("--threads", cfg.threads, "Worker threads for the partitioned path sum");
  propagate->add_option("--check", cfg.check, "reproducing");
  propagate->add_option("--at", cfg.at, "Interior slice for --check reproducing");
  propagate->add_option("--oracle", cfg.oracle, "transfer-matrix");

  auto* converge = app.add_subcommand("converge", "Error against the closed form over a doubling schedule");
  add_physics(converge);
  add_continuum(converge);
  add_endpoints(converge);
  add_output(converge);
  converge->add_option("--nmin", cfg.n_min, "First slice count");
  converge->add_option("--nmax-slices", cfg.n_max, "Last slice count");
  converge->add_option("--burn-in", cfg.burn_in, "Monotonicity is required from this N on");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kExitOk : kExitInput;
  }

  try {
    if (*validate) return cmd_validate(cfg, out);
    if (*state_check) return cmd_state_check(cfg, out);
    if (*histories) return cmd_histories(cfg, out);
    if (*propagate) return cmd_propagate(cfg, out, err);
    if (*converge) return cmd_converge(cfg, out, err);
  } catch (const Error& e) {
    err << "error (" << to_string(e.kind()) << "): " << e.what() << '\n';
    return exit_for(e.kind());
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return kExitInput;
  }
  return kExitInput;
}

}  // namespace schwinger
