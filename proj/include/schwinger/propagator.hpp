#pragma once

#include <optional>
#include <vector>

#include <Eigen/Dense>

#include "schwinger/histories.hpp"
#include "schwinger/lagrangian.hpp"
#include "schwinger/measure.hpp"

namespace schwinger {

// Per-history weight: the product over links of slice_factor * nu^{t(a)}(a),
// times nu_Omega at every interior grid point.
struct PathSumOptions {
  Complex slice_factor{1.0, 0.0};
  // Split the stream by the grid-1 object and combine the partial sums in
  // object order. Implied by threads > 1.
  bool partitioned = false;
  std::size_t threads = 1;
};

// exp(i s / hbar) or exp(-s / hbar)
Complex step_phase(double s, const DFSSpec& spec);

// Sum over the histories from (x0, t_0) to (x1, t_N) of weight * phase,
// without the density factors. Terms are accumulated with compensation in
// enumeration order (within each partition when partitioned).
Complex stripped_path_sum(const FiniteGroupoid& g, const TimeGrid& grid, const QLagrangian& l, const DFSSpec& spec,
                          const GroupoidMeasure& m, ObjectId x0, ObjectId x1, const PathSumOptions& opts = {});

// sqrt(p(x1, t_N) p(x0, t_0)) times the stripped path sum. Returns 0 when no
// history connects the endpoints.
Complex finite_propagator(const FiniteGroupoid& g, const TimeGrid& grid, const QLagrangian& l, const DFSSpec& spec,
                          const GroupoidMeasure& m, ObjectId x0, ObjectId x1, const PathSumOptions& opts = {});
Complex finite_propagator(const FiniteGroupoid& g, const TimeGrid& grid, const QLagrangian& l, const DFSSpec& spec,
                          ObjectId x0, ObjectId x1, const PathSumOptions& opts = {});

// K[y,x] = sum over a: x -> y of slice_factor * nu^y(a) * phase(l(a)), with
// interior object weights D = diag(nu_Omega). power(N) = K (D K)^{N-1}, which
// is K^N under the counting measure.
struct TransferMatrix {
  Eigen::MatrixXcd kernel;
  Eigen::VectorXd object_weights;

  Eigen::MatrixXcd power(std::size_t n) const;
};

TransferMatrix transfer_matrix(const FiniteGroupoid& g, const QLagrangian& l, const DFSSpec& spec,
                               const GroupoidMeasure& m, Complex slice_factor = {1.0, 0.0});
TransferMatrix transfer_matrix(const FiniteGroupoid& g, const QLagrangian& l, const DFSSpec& spec);

struct PropagatorEntry {
  ObjectId x0;
  double t0 = 0.0;
  ObjectId x1;
  double t1 = 0.0;
  Complex amplitude;
};

struct PropagatorTable {
  std::vector<PropagatorEntry> entries;
};

// All endpoint pairs over the full grid, x0-major.
PropagatorTable propagator_table(const FiniteGroupoid& g, const TimeGrid& grid, const QLagrangian& l,
                                 const DFSSpec& spec, const GroupoidMeasure& m, const PathSumOptions& opts = {});

// max |table - density * power(N)| / max |density * power(N)|
double transfer_matrix_deviation(const PropagatorTable& table, const FiniteGroupoid& g, const TimeGrid& grid,
                                 const QLagrangian& l, const DFSSpec& spec, const GroupoidMeasure& m,
                                 Complex slice_factor = {1.0, 0.0});

struct ReproducingResidual {
  double absolute = 0.0;  // max over (a,b) of the stripped defect
  double scale = 1.0;     // max(1, max |phi_ba|)
  double relative() const { return absolute / scale; }
};

// Splits every amplitude at grid index j (0 < j < N):
// phi_ba - sum_c nu_Omega(c) phi_bc phi_ca / p(c, t_j), written without the
// division as sqrt(p_b p_a) |A_ba - sum_c nu_Omega(c) A_bc A_ca| on the
// stripped path sums A. Throws ErrorKind::range for j outside (0, N).
ReproducingResidual reproducing_check(const FiniteGroupoid& g, const TimeGrid& grid, const QLagrangian& l,
                                      const DFSSpec& spec, const GroupoidMeasure& m, std::size_t j,
                                      Complex slice_factor = {1.0, 0.0});

// Base sites x_0..x_{N-1} and velocities xi_k = displacement(x_k, x_{k+1}) / dt_k.
struct DiscreteAPath {
  std::vector<std::size_t> base;
  std::vector<double> velocity;
};

// The groupoid must be the pair groupoid of the geometry's sites (throws
// ErrorKind::geometry otherwise).
DiscreteAPath history_to_apath(const DiscreteHistory& w, const LatticeGeometry& geometry, const FiniteGroupoid& g);
DiscreteHistory apath_to_history(const DiscreteAPath& a, const LatticeGeometry& geometry, const TimeGrid& grid,
                                 const FiniteGroupoid& g);

// Path sum in velocity variables: per slice the action is mass xi^2 dt / 2
// and the weights are those of finite_propagator on the pair groupoid of the
// geometry with measure m (unit Jacobian).
Complex velocity_form_propagator(const LatticeGeometry& geometry, const TimeGrid& grid, const DFSSpec& spec,
                                 double mass, const GroupoidMeasure& m, std::size_t x0, std::size_t x1,
                                 Complex slice_factor = {1.0, 0.0});

}  // namespace schwinger
