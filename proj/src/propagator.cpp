#include "schwinger/propagator.hpp"

#include <algorithm>
#include <thread>

#include "schwinger/error.hpp"
#include "schwinger/kernels.hpp"

namespace schwinger {

Complex step_phase(double s, const DFSSpec& spec) {
  if (spec.mode == PhaseMode::real) return std::polar(1.0, s / spec.hbar);
  return {std::exp(-s / spec.hbar), 0.0};
}

namespace {

struct PathTerm {
  const FiniteGroupoid& g;
  const TimeGrid& grid;
  const QLagrangian& l;
  const DFSSpec& spec;
  const GroupoidMeasure& m;
  Complex slice_factor;

  Complex operator()(const std::vector<MorphismId>& links) const {
    Complex weight(1.0, 0.0);
    double s = 0.0;
    for (std::size_t k = 0; k < links.size(); ++k) {
      weight *= slice_factor * m.fiber_weight(links[k]);
      if (k + 1 < links.size()) weight *= m.object_weight(g.target(links[k]));
      s += l(links[k]);
    }
    if (spec.convention == ActionConvention::anchored) s = action(from_links(grid, links, g), l, g, spec.convention);
    return weight * step_phase(s, spec);
  }
};

Complex sum_stream(HistoryStream stream, const PathTerm& term) {
  CompensatedSum<Complex> acc;
  std::vector<MorphismId> links;
  while (stream.next_links(links)) acc.add(term(links));
  return acc.value();
}

void check_path_inputs(const FiniteGroupoid& g, const QLagrangian& l, const GroupoidMeasure& m) {
  if (l.values.size() != g.morphism_count()) throw Error(ErrorKind::shape, "q-Lagrangian size does not match K");
  check_measure(m, g);
}

}  // namespace

Complex stripped_path_sum(const FiniteGroupoid& g, const TimeGrid& grid, const QLagrangian& l, const DFSSpec& spec,
                          const GroupoidMeasure& m, ObjectId x0, ObjectId x1, const PathSumOptions& opts) {
  check_path_inputs(g, l, m);
  const PathTerm term{g, grid, l, spec, m, opts.slice_factor};
  const bool split = (opts.partitioned || opts.threads > 1) && grid.intervals() >= 2;
  if (!split) return sum_stream(HistoryStream(g, grid, x0, x1), term);

  const std::size_t parts = g.object_count();
  std::vector<Complex> partial(parts);
  const std::size_t workers = std::max<std::size_t>(1, std::min(opts.threads, parts));
  const auto run = [&](std::size_t worker) {
    for (std::size_t c = worker; c < parts; c += workers)
      partial[c] = sum_stream(HistoryStream(g, grid, x0, x1, ObjectId(c)), term);
  };
  if (workers == 1) {
    run(0);
  } else {
    std::vector<std::jthread> pool;
    pool.reserve(workers);
    for (std::size_t w = 0; w < workers; ++w) pool.emplace_back(run, w);
  }
  CompensatedSum<Complex> acc;
  for (const auto& v : partial) acc.add(v);
  return acc.value();
}

Complex finite_propagator(const FiniteGroupoid& g, const TimeGrid& grid, const QLagrangian& l, const DFSSpec& spec,
                          const GroupoidMeasure& m, ObjectId x0, ObjectId x1, const PathSumOptions& opts) {
  const std::size_t n = grid.intervals();
  const double amp = std::sqrt(spec.p(x1, n) * spec.p(x0, 0));
  return amp * stripped_path_sum(g, grid, l, spec, m, x0, x1, opts);
}

Complex finite_propagator(const FiniteGroupoid& g, const TimeGrid& grid, const QLagrangian& l, const DFSSpec& spec,
                          ObjectId x0, ObjectId x1, const PathSumOptions& opts) {
  return finite_propagator(g, grid, l, spec, counting_measure(g), x0, x1, opts);
}

Eigen::MatrixXcd TransferMatrix::power(std::size_t n) const {
  if (n == 0) return Eigen::MatrixXcd::Identity(kernel.rows(), kernel.cols());
  Eigen::MatrixXcd out = kernel;
  const Eigen::MatrixXcd dk = object_weights.cast<Complex>().asDiagonal() * kernel;
  for (std::size_t k = 1; k < n; ++k) out = out * dk;
  return out;
}

TransferMatrix transfer_matrix(const FiniteGroupoid& g, const QLagrangian& l, const DFSSpec& spec,
                               const GroupoidMeasure& m, Complex slice_factor) {
  check_path_inputs(g, l, m);
  const auto n = static_cast<Eigen::Index>(g.object_count());
  TransferMatrix t{Eigen::MatrixXcd::Zero(n, n), Eigen::VectorXd(n)};
  for (Eigen::Index x = 0; x < n; ++x) t.object_weights(x) = m.object_weights[static_cast<std::size_t>(x)];
  for (std::size_t a = 0; a < g.morphism_count(); ++a) {
    const MorphismId id(a);
    t.kernel(g.target(id).value, g.source(id).value) += slice_factor * m.fiber_weight(id) * step_phase(l(id), spec);
  }
  return t;
}

TransferMatrix transfer_matrix(const FiniteGroupoid& g, const QLagrangian& l, const DFSSpec& spec) {
  return transfer_matrix(g, l, spec, counting_measure(g));
}

PropagatorTable propagator_table(const FiniteGroupoid& g, const TimeGrid& grid, const QLagrangian& l,
                                 const DFSSpec& spec, const GroupoidMeasure& m, const PathSumOptions& opts) {
  PropagatorTable table;
  for (std::size_t x0 = 0; x0 < g.object_count(); ++x0) {
    for (std::size_t x1 = 0; x1 < g.object_count(); ++x1) {
      table.entries.push_back({ObjectId(x0), grid.front(), ObjectId(x1), grid.back(),
                               finite_propagator(g, grid, l, spec, m, ObjectId(x0), ObjectId(x1), opts)});
    }
  }
  return table;
}

double transfer_matrix_deviation(const PropagatorTable& table, const FiniteGroupoid& g, const TimeGrid& grid,
                                 const QLagrangian& l, const DFSSpec& spec, const GroupoidMeasure& m,
                                 Complex slice_factor) {
  const std::size_t n = grid.intervals();
  const Eigen::MatrixXcd p = transfer_matrix(g, l, spec, m, slice_factor).power(n);
  double diff = 0.0, scale = 0.0;
  for (const auto& e : table.entries) {
    const Complex ref = std::sqrt(spec.p(e.x1, n) * spec.p(e.x0, 0)) * p(e.x1.value, e.x0.value);
    diff = std::max(diff, std::abs(e.amplitude - ref));
    scale = std::max(scale, std::abs(ref));
  }
  return scale > 0.0 ? diff / scale : diff;
}

ReproducingResidual reproducing_check(const FiniteGroupoid& g, const TimeGrid& grid, const QLagrangian& l,
                                      const DFSSpec& spec, const GroupoidMeasure& m, std::size_t j,
                                      Complex slice_factor) {
  const std::size_t n = grid.intervals();
  if (j == 0 || j >= n) throw Error(ErrorKind::range, "split index must lie strictly inside the grid");
  const std::size_t k = g.object_count();
  const PathSumOptions opts{slice_factor, false, 1};
  const TimeGrid early = grid.slice(0, j), late = grid.slice(j, n);
  std::vector<Complex> a_full(k * k), a_early(k * k), a_late(k * k);
  for (std::size_t a = 0; a < k; ++a) {
    for (std::size_t b = 0; b < k; ++b) {
      a_full[b * k + a] = stripped_path_sum(g, grid, l, spec, m, ObjectId(a), ObjectId(b), opts);
      a_early[b * k + a] = stripped_path_sum(g, early, l, spec, m, ObjectId(a), ObjectId(b), opts);
      a_late[b * k + a] = stripped_path_sum(g, late, l, spec, m, ObjectId(a), ObjectId(b), opts);
    }
  }
  ReproducingResidual r;
  for (std::size_t a = 0; a < k; ++a) {
    for (std::size_t b = 0; b < k; ++b) {
      CompensatedSum<Complex> split;
      for (std::size_t c = 0; c < k; ++c) split.add(m.object_weights[c] * a_late[b * k + c] * a_early[c * k + a]);
      const double amp = std::sqrt(spec.p(ObjectId(b), n) * spec.p(ObjectId(a), 0));
      r.absolute = std::max(r.absolute, amp * std::abs(a_full[b * k + a] - split.value()));
      r.scale = std::max(r.scale, amp * std::abs(a_full[b * k + a]));
    }
  }
  return r;
}

namespace {

void check_lattice_groupoid(const LatticeGeometry& geometry, const FiniteGroupoid& g) {
  const std::size_t n = geometry.sites();
  if (g.object_count() != n || g.morphism_count() != n * n)
    throw Error(ErrorKind::geometry, "groupoid is not the pair groupoid of the lattice");
}

}  // namespace

DiscreteAPath history_to_apath(const DiscreteHistory& w, const LatticeGeometry& geometry, const FiniteGroupoid& g) {
  check_lattice_groupoid(geometry, g);
  if (w.orientation != Orientation::future) throw Error(ErrorKind::orientation, "A-paths are future oriented");
  DiscreteAPath a;
  const std::size_t n = w.grid.intervals();
  for (std::size_t k = 0; k < n; ++k) {
    const std::size_t x = w.object_at(g, k).value, y = w.object_at(g, k + 1).value;
    a.base.push_back(x);
    a.velocity.push_back(geometry.displacement(x, y) / (w.grid[k + 1] - w.grid[k]));
  }
  if (n == 0) a.base.push_back(w.object_at(g, 0).value);
  return a;
}

DiscreteHistory apath_to_history(const DiscreteAPath& a, const LatticeGeometry& geometry, const TimeGrid& grid,
                                 const FiniteGroupoid& g) {
  check_lattice_groupoid(geometry, g);
  const std::size_t n = grid.intervals();
  if (a.velocity.size() != n || a.base.size() != std::max<std::size_t>(n, 1))
    throw Error(ErrorKind::shape, "A-path does not match the grid");
  std::vector<MorphismId> links;
  std::size_t x = a.base.front();
  for (std::size_t k = 0; k < n; ++k) {
    if (a.base[k] != x) throw Error(ErrorKind::consistency, "A-path base points are not anchor compatible");
    const std::size_t y = geometry.step(x, a.velocity[k] * (grid[k + 1] - grid[k]));
    links.push_back(g.hom(ObjectId(x), ObjectId(y)).front());
    x = y;
  }
  return from_links(grid, links, g, ObjectId(a.base.front()));
}

Complex velocity_form_propagator(const LatticeGeometry& geometry, const TimeGrid& grid, const DFSSpec& spec,
                                 double mass, const GroupoidMeasure& m, std::size_t x0, std::size_t x1,
                                 Complex slice_factor) {
  const std::size_t n = geometry.sites();
  const std::size_t slices = grid.intervals();
  if (slices == 0) throw Error(ErrorKind::grid, "propagator needs at least one interval");
  if (x0 >= n || x1 >= n) throw Error(ErrorKind::range, "endpoint site out of range");
  if (m.object_weights.size() != n || m.fiber_weights.size() != n * n)
    throw Error(ErrorKind::shape, "measure does not match the lattice pair groupoid");

  // Admissible lattice velocities from a site, ascending.
  const auto velocities = [&](std::size_t x, double dt) {
    std::vector<double> v;
    for (std::size_t y = 0; y < n; ++y) v.push_back(geometry.displacement(x, y) / dt);
    std::sort(v.begin(), v.end());
    return v;
  };

  CompensatedSum<Complex> acc;
  const auto recurse = [&](auto&& self, std::size_t k, std::size_t x, Complex weight, double s) -> void {
    const double dt = grid[k + 1] - grid[k];
    if (k + 1 == slices) {
      const double xi = geometry.displacement(x, x1) / dt;
      const Complex w = weight * slice_factor * m.fiber_weights[x1 * n + x];
      acc.add(w * step_phase(s + 0.5 * mass * xi * xi * dt, spec));
      return;
    }
    for (double xi : velocities(x, dt)) {
      const std::size_t y = geometry.step(x, xi * dt);
      const Complex w = weight * slice_factor * m.fiber_weights[y * n + x] * m.object_weights[y];
      self(self, k + 1, y, w, s + 0.5 * mass * xi * xi * dt);
    }
  };
  recurse(recurse, 0, x0, Complex(1.0, 0.0), 0.0);
  const double amp = std::sqrt(spec.p(ObjectId(x1), slices) * spec.p(ObjectId(x0), 0));
  return amp * acc.value();
}

}  // namespace schwinger
