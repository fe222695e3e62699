#include "schwinger/continuum.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>

#include "schwinger/error.hpp"
#include "schwinger/kernels.hpp"

namespace schwinger {

namespace {

std::string fmt(const char* pattern, double a, double b = 0.0) {
  char buf[160];
  std::snprintf(buf, sizeof buf, pattern, a, b);
  return buf;
}

}  // namespace

void check_slice_config(const SliceConfig& cfg) {
  if (cfg.N < 1) throw Error(ErrorKind::range, "slice count must be at least 1");
  if (!(cfg.T > 0.0) || !(cfg.mass > 0.0) || !(cfg.hbar > 0.0))
    throw Error(ErrorKind::range, "T, mass and hbar must be positive");
  if (!(cfg.L > 0.0) || cfg.M < 2) throw Error(ErrorKind::range, "quadrature needs L > 0 and M >= 2");
}

Complex slice_normalization(double mass, double hbar, double t, PhaseMode mode) {
  const double base = mass / (2.0 * M_PI * hbar * t);
  if (mode == PhaseMode::euclidean) return {std::sqrt(base), 0.0};
  return std::sqrt(Complex(base, 0.0) / Complex(0.0, 1.0));
}

Complex free_kernel(double mass, double hbar, double t, double dx, PhaseMode mode) {
  const double q = mass * dx * dx / (2.0 * hbar * t);
  const Complex norm = slice_normalization(mass, hbar, t, mode);
  if (mode == PhaseMode::euclidean) return norm * std::exp(-q);
  return norm * std::polar(1.0, q);
}

Complex sliced_line_recursion(const SliceConfig& cfg, double x0, double x1) {
  check_slice_config(cfg);
  const double dt = cfg.dt();
  // One slice is N exp(-b d^2).
  const Complex b = cfg.mode == PhaseMode::euclidean ? Complex(cfg.mass / (2.0 * cfg.hbar * dt), 0.0)
                                                     : Complex(0.0, -cfg.mass / (2.0 * cfg.hbar * dt));
  const Complex norm = slice_normalization(cfg.mass, cfg.hbar, dt, cfg.mode);
  Complex a = b;
  Complex c = norm;
  for (std::size_t k = 1; k < cfg.N; ++k) {
    c *= norm * std::sqrt(M_PI / (a + b));
    a = a * b / (a + b);
  }
  const double d = x1 - x0;
  return c * std::exp(-a * d * d);
}

ContinuumResult sliced_line_quadrature(const SliceConfig& cfg, double x0, double x1, double leak_tol) {
  check_slice_config(cfg);
  if (cfg.mode != PhaseMode::euclidean)
    throw Error(ErrorKind::range, "quadrature is only available in euclidean mode");
  ContinuumResult out;
  const double dt = cfg.dt();
  const auto kern = [&](double dx) { return free_kernel(cfg.mass, cfg.hbar, dt, dx, PhaseMode::euclidean).real(); };

  const double sigma = std::sqrt(cfg.hbar * cfg.T / cfg.mass);
  const double margin = cfg.L - std::max(std::abs(x0), std::abs(x1));
  const double leak = margin > 0.0 ? 0.5 * std::erfc(margin / (std::sqrt(2.0) * sigma)) : 1.0;
  if (leak > leak_tol) out.warnings.push_back(fmt("domain warning: estimated mass leakage %.3g beyond L = %.6g", leak, cfg.L));

  if (cfg.N == 1) {
    out.value = kern(x1 - x0);
    return out;
  }
  const std::size_t m = cfg.M;
  const double h = 2.0 * cfg.L / static_cast<double>(m - 1);
  std::vector<double> x(m), w(m, h);
  for (std::size_t i = 0; i < m; ++i) x[i] = -cfg.L + static_cast<double>(i) * h;
  w.front() = w.back() = 0.5 * h;

  std::vector<double> v(m), next(m), step(m * m);
  for (std::size_t i = 0; i < m; ++i) v[i] = kern(x[i] - x0);
  for (std::size_t r = 0; r < m; ++r)
    for (std::size_t c = 0; c < m; ++c) step[r * m + c] = kern(x[r] - x[c]) * w[c];
  for (std::size_t k = 2; k < cfg.N; ++k) {
    kernels::matvec(step, m, m, v, next);
    v.swap(next);
  }
  std::vector<double> last(m);
  for (std::size_t i = 0; i < m; ++i) last[i] = kern(x1 - x[i]) * w[i];
  out.value = kernels::dot(last, v);
  return out;
}

double image_sum(double mass, double hbar, double T, double circumference, double dtheta, int n_max) {
  std::vector<double> terms;
  terms.reserve(static_cast<std::size_t>(2 * n_max + 1));
  for (int n = -n_max; n <= n_max; ++n)
    terms.push_back(free_kernel(mass, hbar, T, dtheta + n * circumference, PhaseMode::euclidean).real());
  return kernels::scalar::compensated_sum(terms);
}

ContinuumResult circle_propagator(const SliceConfig& cfg, double circumference, std::size_t n_sites, double theta0,
                                  double theta1) {
  check_slice_config(cfg);
  if (cfg.mode != PhaseMode::euclidean)
    throw Error(ErrorKind::geometry, "the circle lattice propagator is evaluated in euclidean mode only");
  const LatticeGeometry geo = LatticeGeometry::circle(n_sites, circumference);
  ContinuumResult out;
  const double h = geo.spacing();
  const double dt = cfg.dt();
  const double diffusion = std::sqrt(cfg.hbar * dt / cfg.mass);
  if (h / diffusion > 1.0)
    out.warnings.push_back(fmt("resolution warning: spacing %.3g exceeds diffusion length %.3g", h, diffusion));

  const auto snap = [&](double theta) {
    const double wrapped = theta - circumference * std::floor(theta / circumference);
    const auto i = static_cast<std::size_t>(std::llround(wrapped / h)) % n_sites;
    if (std::abs(wrapped - static_cast<double>(i) * h) > 1e-9 * circumference &&
        std::abs(wrapped - circumference) > 1e-9 * circumference)
      out.warnings.push_back(fmt("angle %.17g is off the lattice, snapped to %.17g", theta, static_cast<double>(i) * h));
    return i;
  };
  const std::size_t i0 = snap(theta0), i1 = snap(theta1);

  const QLagrangian l = energy_q_lagrangian(geo, dt, cfg.mass);
  const double norm = slice_normalization(cfg.mass, cfg.hbar, dt, PhaseMode::euclidean).real();
  std::vector<double> kernel(n_sites * n_sites);
  for (std::size_t k = 0; k < kernel.size(); ++k) kernel[k] = norm * std::exp(-l.values[k] / cfg.hbar);

  // v = K[:, i0], then v <- K (h v) for the remaining slices.
  std::vector<double> v(n_sites), next(n_sites);
  for (std::size_t y = 0; y < n_sites; ++y) v[y] = kernel[y * n_sites + i0];
  for (std::size_t k = 1; k < cfg.N; ++k) {
    for (auto& e : v) e *= h;
    kernels::matvec(kernel, n_sites, n_sites, v, next);
    v.swap(next);
  }
  out.value = v[i1];
  return out;
}

std::vector<std::size_t> doubling_schedule(std::size_t n_min, std::size_t n_max) {
  if (n_min == 0 || n_max < n_min) throw Error(ErrorKind::range, "schedule needs 1 <= n_min <= n_max");
  std::vector<std::size_t> out;
  for (std::size_t n = n_min; n <= n_max; n *= 2) out.push_back(n);
  return out;
}

namespace {

double rel_error(Complex v, Complex ref) {
  const double a = std::abs(ref);
  return a > 0.0 ? std::abs(v - ref) / a : std::abs(v - ref);
}

void merge_warnings(std::vector<std::string>& into, const std::vector<std::string>& from) {
  for (const auto& w : from)
    if (std::find(into.begin(), into.end(), w) == into.end()) into.push_back(w);
}

}  // namespace

ConvergenceTable converge_line(SliceConfig cfg, double x0, double x1, const std::vector<std::size_t>& schedule,
                               LineMethod method) {
  ConvergenceTable table;
  const PhaseMode ref_mode = method == LineMethod::quadrature ? PhaseMode::euclidean : cfg.mode;
  const Complex ref = free_kernel(cfg.mass, cfg.hbar, cfg.T, x1 - x0, ref_mode);
  for (std::size_t n : schedule) {
    cfg.N = n;
    Complex v;
    if (method == LineMethod::recursion) {
      v = sliced_line_recursion(cfg, x0, x1);
    } else {
      const auto r = sliced_line_quadrature(cfg, x0, x1);
      v = r.value;
      merge_warnings(table.warnings, r.warnings);
    }
    table.rows.push_back({n, cfg.dt(), v, ref, rel_error(v, ref)});
  }
  return table;
}

ConvergenceTable converge_circle(SliceConfig cfg, double circumference, std::size_t n_sites, double theta0,
                                 double theta1, const std::vector<std::size_t>& schedule, int n_max) {
  ConvergenceTable table;
  const Complex ref(image_sum(cfg.mass, cfg.hbar, cfg.T, circumference, theta1 - theta0, n_max), 0.0);
  for (std::size_t n : schedule) {
    cfg.N = n;
    const auto r = circle_propagator(cfg, circumference, n_sites, theta0, theta1);
    merge_warnings(table.warnings, r.warnings);
    table.rows.push_back({n, cfg.dt(), r.value, ref, rel_error(r.value, ref)});
  }
  return table;
}

bool is_monotone(const ConvergenceTable& table, std::size_t burn_in, double floor) {
  bool have_prev = false;
  double prev = 0.0;
  for (const auto& row : table.rows) {
    if (row.N < burn_in) continue;
    const double e = std::max(row.rel_error, floor);
    if (have_prev && e > prev) return false;
    prev = e;
    have_prev = true;
  }
  return true;
}

}  // namespace schwinger
