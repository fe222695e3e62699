#pragma once

#include <string>
#include <vector>

#include "schwinger/lagrangian.hpp"

namespace schwinger {

struct SliceConfig {
  std::size_t N = 1;
  double T = 1.0;
  double mass = 1.0;
  double hbar = 1.0;
  PhaseMode mode = PhaseMode::euclidean;
  double L = 8.0;       // quadrature half-width
  std::size_t M = 400;  // quadrature nodes

  double dt() const { return T / static_cast<double>(N); }
};

// Throws ErrorKind::range unless N >= 1, T > 0, mass, hbar > 0, L > 0, M >= 2.
void check_slice_config(const SliceConfig& cfg);

// (m / (2 pi i hbar t))^{1/2} in real mode, (m / (2 pi hbar t))^{1/2} in euclidean mode; principal branch.
Complex slice_normalization(double mass, double hbar, double t, PhaseMode mode);

// Closed-form free kernel over time t for displacement dx.
Complex free_kernel(double mass, double hbar, double t, double dx, PhaseMode mode);

struct ContinuumResult {
  Complex value;
  std::vector<std::string> warnings;
};

// N-fold sliced integral evaluated by the exact Gaussian recursion.
Complex sliced_line_recursion(const SliceConfig& cfg, double x0, double x1);

// Euclidean only: trapezoidal quadrature on [-L, L] with M nodes. Warns when
// the Gaussian mass outside the domain exceeds leak_tol.
ContinuumResult sliced_line_quadrature(const SliceConfig& cfg, double x0, double x1, double leak_tol = 1e-6);

// sum_{|n| <= n_max} K_line(dtheta + n Lc, T) (euclidean).
double image_sum(double mass, double hbar, double T, double circumference, double dtheta, int n_max = 10);

// Euclidean lattice path sum on n_sites equally spaced points of a circle with
// the arc-distance energy q-Lagrangian and interior weight Lc / n_sites. The
// angles are snapped to the nearest site. Warns when the spacing exceeds the
// per-slice diffusion length or an angle is off-lattice.
ContinuumResult circle_propagator(const SliceConfig& cfg, double circumference, std::size_t n_sites, double theta0,
                                  double theta1);

struct ConvergenceRow {
  std::size_t N = 0;
  double dt = 0.0;
  Complex value;
  Complex reference;
  double rel_error = 0.0;
};

struct ConvergenceTable {
  std::vector<ConvergenceRow> rows;
  std::vector<std::string> warnings;
};

enum class LineMethod { recursion, quadrature };

// Doubling schedule n_min, 2 n_min, ..., <= n_max.
std::vector<std::size_t> doubling_schedule(std::size_t n_min, std::size_t n_max);

ConvergenceTable converge_line(SliceConfig cfg, double x0, double x1, const std::vector<std::size_t>& schedule,
                               LineMethod method);
ConvergenceTable converge_circle(SliceConfig cfg, double circumference, std::size_t n_sites, double theta0,
                                 double theta1, const std::vector<std::size_t>& schedule, int n_max = 10);

// Errors below floor are treated as equal to it; beyond burn_in the clamped
// errors must not increase.
bool is_monotone(const ConvergenceTable& table, std::size_t burn_in, double floor = 1e-12);

}  // namespace schwinger
