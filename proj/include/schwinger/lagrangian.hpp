#pragma once

#include <cmath>
#include <cstdint>
#include <utility>
#include <vector>

#include <Eigen/Dense>

#include "schwinger/histories.hpp"
#include "schwinger/measure.hpp"
#include "schwinger/states.hpp"

namespace schwinger {

// Real function on morphisms. For lattice geometries the values are indexed
// like the pair groupoid, (y,x) -> y * n + x, even when no groupoid object is
// materialised.
struct QLagrangian {
  std::vector<double> values;
  bool symmetric = false;

  double operator()(MorphismId a) const { return values[a.value]; }
};

// Sets the symmetric flag from the values.
QLagrangian make_q_lagrangian(std::vector<double> values, const FiniteGroupoid& g);
QLagrangian zero_q_lagrangian(const FiniteGroupoid& g);
// Uniform in [-scale, scale], symmetrised.
QLagrangian random_q_lagrangian(const FiniteGroupoid& g, std::uint64_t seed, double scale = 1.0);

bool check_symmetry(const QLagrangian& l, const FiniteGroupoid& g);
// Pairs (a, a^{-1}) with a < a^{-1} and l(a) != l(a^{-1}).
std::vector<std::pair<MorphismId, MorphismId>> asymmetric_pairs(const QLagrangian& l, const FiniteGroupoid& g);

enum class ActionConvention { anchored, incremental };
enum class PhaseMode { real, euclidean };

// incremental: sum of l over the links; anchored: sum of l(w(k, 0)) (t_k - t_{k-1}).
// Past histories carry the opposite sign.
double action(const DiscreteHistory& w, const QLagrangian& l, const FiniteGroupoid& g,
              ActionConvention convention = ActionConvention::incremental);
double word_action(const HistoryWord& word, const QLagrangian& l, const FiniteGroupoid& g,
                   ActionConvention convention = ActionConvention::incremental);

// Finite configuration space used by the continuum-to-lattice studies.
class LatticeGeometry {
 public:
  enum class Kind { line, circle };

  static LatticeGeometry line(std::size_t sites, double spacing, double origin = 0.0);
  static LatticeGeometry circle(std::size_t sites, double circumference);

  Kind kind() const { return kind_; }
  std::size_t sites() const { return sites_; }
  double spacing() const { return spacing_; }
  double circumference() const { return circumference_; }

  double position(std::size_t i) const;
  // Shortest signed displacement from site i to site j; for the circle it
  // lies in (-L/2, L/2].
  double displacement(std::size_t i, std::size_t j) const;
  double distance(std::size_t i, std::size_t j) const { return std::abs(displacement(i, j)); }
  // Lattice site reached from i by displacement d (exact multiples of the spacing).
  std::size_t step(std::size_t i, double d) const;
  Eigen::MatrixXd metric() const;

 private:
  Kind kind_ = Kind::line;
  std::size_t sites_ = 0;
  double spacing_ = 1.0;
  double origin_ = 0.0;
  double circumference_ = 0.0;
};

// l((y,x)) = mass d(x,y)^2 / (2 slice_dt). Throws ErrorKind::metric when the
// metric is not symmetric with zero diagonal.
QLagrangian energy_q_lagrangian(const Eigen::MatrixXd& metric, double slice_dt, double mass);
QLagrangian energy_q_lagrangian(const LatticeGeometry& geometry, double slice_dt, double mass);

struct DFSSpec {
  // density[k][x]: one row per grid time, or a single row shared by all times.
  std::vector<std::vector<double>> density;
  double hbar = 1.0;
  ActionConvention convention = ActionConvention::incremental;
  PhaseMode mode = PhaseMode::real;

  double p(ObjectId x, std::size_t k) const { return density.size() == 1 ? density[0][x.value] : density[k][x.value]; }
  static DFSSpec uniform(std::size_t n_objects, const std::vector<double>& object_weights = {});
};

// Throws ErrorKind::normalization unless every slice satisfies
// sum_x nu_Omega(x) p(x,t) = 1 within tol, ErrorKind::range on hbar <= 0 or a
// negative density, and ErrorKind::shape on size mismatch.
void check_dfs_spec(const DFSSpec& spec, std::size_t n_objects, const TimeGrid& grid,
                    const std::vector<double>& object_weights, double tol = 1e-12);

// phi(w) = sqrt(p(s(w)) p(t(w))) exp(i S(w) / hbar), or exp(-S(w) / hbar) in
// euclidean mode. Holds a reference to the groupoid, which must outlive it.
class DFSFunction {
 public:
  DFSFunction(QLagrangian l, DFSSpec spec, const FiniteGroupoid& g, TimeGrid grid);

  Complex operator()(const DiscreteHistory& w) const;
  Complex operator()(const HistoryWord& word) const;
  // Value on the reduced word of the given segments; equal to evaluating
  // reduce_word but avoids materialising the segments when possible.
  Complex on_segments(const std::vector<DiscreteHistory>& segments) const;

  double p(const HistoryPoint& pt) const;
  Complex phase_factor(double s) const;

  const QLagrangian& lagrangian() const { return l_; }
  const DFSSpec& spec() const { return spec_; }
  const TimeGrid& grid() const { return grid_; }
  const FiniteGroupoid& groupoid() const { return *g_; }

 private:
  QLagrangian l_;
  DFSSpec spec_;
  const FiniteGroupoid* g_;
  TimeGrid grid_;
};

// Throws ErrorKind::symmetry for an asymmetric l (offending pairs listed) and
// the check_dfs_spec errors.
DFSFunction dfs_function(const QLagrangian& l, const DFSSpec& spec, const FiniteGroupoid& g, const TimeGrid& grid,
                         const std::vector<double>& object_weights = {});

// p(x, t_k) via the trivial histories; result[k][x].
std::vector<std::vector<double>> classical_restriction(const DFSFunction& dfs);

// All oriented histories over a grid: units at every grid point, and every
// future history on every sub-interval together with its inverse. blocks
// groups history indices by target point; within a block, the positive-type
// form only couples histories with a common target.
struct HistorySet {
  std::vector<DiscreteHistory> histories;
  std::vector<std::vector<std::size_t>> blocks;
};

// Throws ErrorKind::range when more than max_histories would be produced.
HistorySet build_history_set(const FiniteGroupoid& g, const TimeGrid& grid, std::size_t max_histories = 10000);

// Form blocks M[b][d] = phi(b^{-1} o d) under the counting measure.
std::vector<Eigen::MatrixXcd> history_form_blocks(const DFSFunction& dfs, const HistorySet& set);

PositivityCertificate history_positivity(const DFSFunction& dfs, const HistorySet& set, double tol = 1e-10);

}  // namespace schwinger
