// Acceptance run: one PASS/FAIL line per criterion, non-zero exit on any failure.
#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <numbers>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "oracles.hpp"
#include "schwinger/continuum.hpp"
#include "schwinger/propagator.hpp"
#include "schwinger/states.hpp"

namespace schwinger {
namespace {

constexpr double kPi = std::numbers::pi;

struct Outcome {
  bool pass = true;
  std::string detail;
};

class Tracker {
 public:
  void check(bool ok, const std::string& what) {
    if (!ok && failures_.size() < 3) failures_.push_back(what);
    if (!ok) pass_ = false;
  }
  void note(const std::string& s) { notes_ += (notes_.empty() ? "" : "; ") + s; }
  Outcome done() const {
    Outcome o{pass_, notes_};
    for (const auto& f : failures_) o.detail += "; failed: " + f;
    return o;
  }

 private:
  bool pass_ = true;
  std::string notes_;
  std::vector<std::string> failures_;
};

std::string sci(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.2e", v);
  return buf;
}

DFSSpec uniform_spec(std::size_t n, PhaseMode mode, double hbar, const std::vector<double>& weights = {}) {
  auto spec = DFSSpec::uniform(n, weights);
  spec.mode = mode;
  spec.hbar = hbar;
  return spec;
}

DFSSpec random_spec(std::size_t n, std::size_t times, std::mt19937_64& rng, const std::vector<double>& weights = {}) {
  std::uniform_real_distribution<double> u(0.1, 1.0);
  DFSSpec spec;
  spec.hbar = 0.7;
  spec.density.assign(times, std::vector<double>(n));
  for (auto& row : spec.density) {
    double z = 0.0;
    for (std::size_t x = 0; x < n; ++x) z += (weights.empty() ? 1.0 : weights[x]) * (row[x] = u(rng));
    for (auto& p : row) p /= z;
  }
  return spec;
}

DfsForm random_form(const FiniteGroupoid& g, const GroupoidMeasure& m, std::mt19937_64& rng, std::size_t cyclic) {
  std::uniform_real_distribution<double> u(0.1, 1.0), pot(-3.0, 3.0);
  std::vector<double> density(g.object_count()), potential(g.object_count());
  double z = 0.0;
  for (std::size_t x = 0; x < density.size(); ++x) {
    density[x] = u(rng);
    z += m.object_weights[x] * density[x];
    potential[x] = pot(rng);
  }
  for (auto& p : density) p /= z;
  std::vector<double> character;
  if (cyclic > 1) {
    std::uniform_int_distribution<std::size_t> pick(0, cyclic - 1);
    const double q = 2.0 * kPi * static_cast<double>(pick(rng)) / static_cast<double>(cyclic);
    character.resize(g.morphism_count());
    for (std::size_t a = 0; a < character.size(); ++a) character[a] = q * static_cast<double>(a % cyclic);
  }
  return dfs_form_from_potential(g, std::move(density), potential, character);
}

DiscreteHistory random_history(const FiniteGroupoid& g, const TimeGrid& grid, std::mt19937_64& rng,
                               std::optional<ObjectId> start = {}) {
  return from_links(grid, oracle::random_links(g, grid.intervals(), rng, start), g, start);
}

// Finite instances shared by the path-sum criteria.
struct FiniteInstance {
  std::string name;
  FiniteGroupoid g;
  std::size_t max_n;
};

std::vector<FiniteInstance> finite_instances() {
  std::vector<FiniteInstance> out;
  for (std::size_t m = 2; m <= 6; ++m) out.push_back({"pair:" + std::to_string(m), pair_groupoid(m), 6});
  for (const auto& name : {"pair_x_cyclic:2,2", "pair_x_cyclic:2,3", "pair_x_cyclic:3,2", "pair_x_cyclic:3,3"})
    out.push_back({name, builtin_groupoid(name), 5});
  return out;
}

// 1. Groupoid axioms on builtins, and detection of single-entry mutations.
Outcome axioms() {
  Tracker t;
  std::size_t checked = 0;
  for (std::size_t n = 1; n <= 8; ++n, ++checked) t.check(validate_axioms(pair_groupoid(n)).ok(), "pair:" + std::to_string(n));
  for (std::size_t k = 1; k <= 8; ++k, ++checked)
    t.check(validate_axioms(cyclic_groupoid(k)).ok(), "cyclic:" + std::to_string(k));
  for (std::size_t n = 1; n <= 4; ++n)
    for (std::size_t k = 1; k <= 4; ++k, ++checked)
      t.check(validate_axioms(product_with_group(n, cyclic_groupoid(k))).ok(),
              "pair_x_cyclic:" + std::to_string(n) + "," + std::to_string(k));
  const std::vector<FiniteGroupoid> bases{pair_groupoid(3), pair_groupoid(4), cyclic_groupoid(5),
                                          product_with_group(2, cyclic_groupoid(3))};
  std::mt19937_64 rng(1001);
  std::size_t detected = 0;
  constexpr std::size_t kMutations = 200;
  for (std::size_t i = 0; i < kMutations; ++i) {
    auto tables = bases[i % bases.size()].tables();
    oracle::mutate_once(tables, rng);
    if (!validate_axioms(FiniteGroupoid::from_tables(std::move(tables))).ok()) ++detected;
  }
  t.check(detected == kMutations, "mutations detected " + std::to_string(detected));
  t.note(std::to_string(checked) + " builtins valid, " + std::to_string(detected) + "/" + std::to_string(kMutations) +
         " mutations detected");
  return t.done();
}

// 2. Star-algebra laws on groupoids with at most 50 morphisms.
Outcome star_algebra() {
  Tracker t;
  std::mt19937_64 rng(1002);
  double assoc = 0.0, star = 0.0, hom = 0.0, adj = 0.0;
  std::size_t instances = 0;
  for (int round = 0; instances < 50 || round < 2; ++round) {
    for (const auto& name : oracle::small_builtins()) {
      const auto g = builtin_groupoid(name);
      if (g.morphism_count() > 50) continue;
      const auto n = g.morphism_count();
      for (const auto& m : {counting_measure(g), oracle::random_haar_measure(g, rng)}) {
        const auto a = oracle::random_element(n, rng), b = oracle::random_element(n, rng),
                   c = oracle::random_element(n, rng);
        assoc = std::max(assoc, convolve(convolve(a, b, m, g), c, m, g)
                                    .max_abs_diff(convolve(a, convolve(b, c, m, g), m, g)));
        star = std::max(star, involute(convolve(a, b, m, g), m, g)
                                  .max_abs_diff(convolve(involute(b, m, g), involute(a, m, g), m, g)));
        const Eigen::MatrixXcd la = left_regular(a, m, g), lb = left_regular(b, m, g);
        hom = std::max(hom, oracle::max_abs(left_regular(convolve(a, b, m, g), m, g) - la * lb));
        adj = std::max(adj, oracle::max_abs(left_regular(involute(a, m, g), m, g) - weighted_adjoint(la, m, g)));
        ++instances;
      }
    }
  }
  t.check(assoc <= 1e-12, "associativity " + sci(assoc));
  t.check(star <= 1e-12, "involution " + sci(star));
  t.check(hom <= 1e-12, "homomorphism " + sci(hom));
  t.check(adj <= 1e-12, "adjoint " + sci(adj));
  t.note(std::to_string(instances) + " instances per law; max errors assoc " + sci(assoc) + ", star " + sci(star) +
         ", hom " + sci(hom) + ", adjoint " + sci(adj));
  return t.done();
}

// 3. DFS reality, factorizability, positivity on history sets, and the identity.
Outcome dfs_properties() {
  Tracker t;
  std::mt19937_64 rng(1003);
  double reality = 0.0, factor = 0.0;
  for (const auto& name : {"pair:3", "pair:4", "pair_x_cyclic:2,3"}) {
    const auto g = builtin_groupoid(name);
    const auto grid = TimeGrid::uniform(0.0, 1.0, 5);
    const auto spec = random_spec(g.object_count(), grid.size(), rng);
    const auto dfs = dfs_function(random_q_lagrangian(g, 31, 2.0), spec, g, grid);
    std::uniform_int_distribution<std::size_t> cut(1, 4);
    for (int i = 0; i < 100; ++i) {
      const auto w = random_history(g, grid, rng);
      reality = std::max(reality, std::abs(std::conj(dfs(invert_history(w, g))) - dfs(w)));
      const std::size_t j = cut(rng);
      const auto first = restrict_indices(w, 0, j, g), second = restrict_indices(w, j, 5, g);
      const Complex lhs = dfs(second) * dfs(first);
      factor = std::max(factor, std::abs(lhs - dfs.p(first.target(g)) * dfs(w)));
    }
  }
  t.check(reality <= 1e-12, "reality " + sci(reality));
  t.check(factor <= 1e-12, "factorizability " + sci(factor));

  double min_eig = 0.0;
  std::size_t largest = 0;
  struct SetCase {
    const char* name;
    std::size_t intervals;
  };
  for (const auto& c : {SetCase{"pair:3", 6}, SetCase{"pair_x_cyclic:2,2", 4}, SetCase{"cyclic:3", 5}, SetCase{"pair:4", 3}}) {
    const auto g = builtin_groupoid(c.name);
    const auto grid = TimeGrid::uniform(0.0, 1.0, c.intervals);
    const auto set = build_history_set(g, grid);
    largest = std::max(largest, set.histories.size());
    const auto spec = random_spec(g.object_count(), grid.size(), rng);
    const auto cert = history_positivity(dfs_function(random_q_lagrangian(g, 37, 3.0), spec, g, grid), set);
    t.check(cert.verdict == Verdict::positive, std::string("positivity on ") + c.name);
    min_eig = std::min(min_eig, cert.min_eigenvalue);
  }
  t.check(min_eig >= -1e-10, "min eigenvalue " + sci(min_eig));

  double identity = 0.0;
  int draws = 0;
  for (const auto& [name, k] : std::vector<std::pair<std::string, std::size_t>>{
           {"pair:3", 0}, {"pair:5", 0}, {"cyclic:4", 4}, {"pair_x_cyclic:2,3", 3}}) {
    const auto g = builtin_groupoid(name);
    const auto m = counting_measure(g);
    const auto form = random_form(g, m, rng, k);
    t.check(is_positive_type(form.candidate(g), m, g).verdict == Verdict::positive, "groupoid form on " + name);
    for (int i = 0; i < 25; ++i, ++draws) {
      const auto f = oracle::random_element(g.morphism_count(), rng);
      const Complex lhs = state_value(form.candidate(g), convolve(involute(f, m, g), f, m, g), m, g);
      identity = std::max(identity, std::abs(lhs - l2_objects_norm_sq(vector_phi_f(form, f, m, g), m)));
    }
  }
  t.check(identity <= 1e-12, "identity " + sci(identity));
  t.note("reality " + sci(reality) + ", factorizability " + sci(factor) + ", min eigenvalue " + sci(min_eig) +
         " (largest set " + std::to_string(largest) + " histories), identity " + sci(identity) + " over " +
         std::to_string(draws) + " f");
  return t.done();
}

// 4. GNS homomorphism on the phi_f span and the cyclicity rank.
Outcome gns() {
  Tracker t;
  std::mt19937_64 rng(1004);
  double hom = 0.0, rep = 0.0;
  int draws = 0;
  for (const auto& [name, k] : std::vector<std::pair<std::string, std::size_t>>{
           {"pair:3", 0}, {"pair:4", 0}, {"cyclic:5", 5}, {"pair_x_cyclic:2,3", 3}}) {
    const auto g = builtin_groupoid(name);
    const auto n = g.morphism_count();
    for (const auto& m : {counting_measure(g), oracle::random_haar_measure(g, rng)}) {
      const auto form = random_form(g, m, rng, k);
      for (int i = 0; i < 50; ++i, ++draws) {
        const auto a = oracle::random_element(n, rng), b = oracle::random_element(n, rng),
                   f = oracle::random_element(n, rng);
        const Eigen::VectorXcd v = vector_phi_f(form, f, m, g);
        const Eigen::VectorXcd lhs = gns_matrix(form, convolve(a, b, m, g), m, g) * v;
        const Eigen::VectorXcd rhs = gns_matrix(form, a, m, g) * (gns_matrix(form, b, m, g) * v);
        hom = std::max(hom, (lhs - rhs).cwiseAbs().maxCoeff());
        rep = std::max(rep, (gns_matrix(form, a, m, g) * v - vector_phi_f(form, convolve(a, f, m, g), m, g))
                                .cwiseAbs()
                                .maxCoeff());
      }
    }
    const auto m = counting_measure(g);
    const auto form = random_form(g, m, rng, k);
    const auto omega = cyclic_vector(form, m, g);
    Eigen::MatrixXcd orbit(static_cast<Eigen::Index>(g.object_count()), static_cast<Eigen::Index>(n));
    for (std::size_t c = 0; c < n; ++c)
      orbit.col(static_cast<Eigen::Index>(c)) = gns_matrix(form, AlgebraElement::delta(n, MorphismId(c)), m, g) * omega;
    t.check(numerical_rank(orbit) == g.object_count(), "cyclic rank on " + name);
  }
  t.check(hom <= 1e-12, "homomorphism " + sci(hom));
  t.check(rep <= 1e-12, "representation " + sci(rep));
  t.note(std::to_string(draws) + " draws; homomorphism " + sci(hom) + ", pi(a) phi_f = phi_(a*f) " + sci(rep) +
         "; cyclic rank = |objects| on 4 groupoids");
  return t.done();
}

// 5. Path sum equals the transfer-matrix power.
Outcome transfer_identity() {
  Tracker t;
  std::mt19937_64 rng(1005);
  double worst = 0.0;
  std::size_t cases = 0;
  for (const auto& inst : finite_instances()) {
    const auto& g = inst.g;
    const auto l = random_q_lagrangian(g, 51, 2.0);
    for (const bool haar : {false, true}) {
      const auto m = haar ? oracle::random_haar_measure(g, rng) : counting_measure(g);
      const auto spec = uniform_spec(g.object_count(), PhaseMode::real, 0.8, m.object_weights);
      for (std::size_t n = 1; n <= inst.max_n; ++n, ++cases) {
        const auto grid = TimeGrid::uniform(0.0, 1.0, n);
        const double dev = transfer_matrix_deviation(propagator_table(g, grid, l, spec, m), g, grid, l, spec, m);
        worst = std::max(worst, dev);
        t.check(dev <= 1e-12, inst.name + " N=" + std::to_string(n) + " " + sci(dev));
      }
    }
  }
  t.note(std::to_string(cases) + " (groupoid, measure, N) cases; max relative deviation " + sci(worst));
  return t.done();
}

// 6. Reproducing residual at every interior slice.
Outcome reproducing() {
  Tracker t;
  std::mt19937_64 rng(1006);
  double worst = 0.0;
  std::size_t splits = 0;
  for (const auto& inst : finite_instances()) {
    const auto& g = inst.g;
    const auto l = random_q_lagrangian(g, 53, 2.0);
    for (auto mode : {PhaseMode::real, PhaseMode::euclidean}) {
      const auto m = oracle::random_haar_measure(g, rng);
      const auto spec = uniform_spec(g.object_count(), mode, 0.8, m.object_weights);
      for (std::size_t n = 2; n <= inst.max_n; ++n) {
        const auto grid = TimeGrid::uniform(0.0, 1.0, n);
        for (std::size_t j = 1; j < n; ++j, ++splits) {
          const double r = reproducing_check(g, grid, l, spec, m, j).relative();
          worst = std::max(worst, r);
          t.check(r <= 1e-12, inst.name + " N=" + std::to_string(n) + " j=" + std::to_string(j) + " " + sci(r));
        }
      }
    }
  }
  t.note(std::to_string(splits) + " splits; max residual " + sci(worst));
  return t.done();
}

// 7. Action laws and the anchored counterexample.
Outcome action_laws() {
  Tracker t;
  std::mt19937_64 rng(1007);
  int additive = 0, negated = 0;
  for (const auto& name : {"pair:4", "pair_x_cyclic:2,3"}) {
    const auto g = builtin_groupoid(name);
    const auto exact = oracle::dyadic_q_lagrangian(g, rng);
    const auto l = random_q_lagrangian(g, 55);
    for (int i = 0; i < 50; ++i) {
      const auto w1 = random_history(g, TimeGrid({0.0, 0.3, 0.5}), rng);
      const auto w2 = random_history(g, TimeGrid({0.5, 0.6, 0.8, 1.0}), rng, w1.target(g).object);
      if (action(compose_histories(w2, w1, g), exact, g) == action(w2, exact, g) + action(w1, exact, g)) ++additive;
      for (auto conv : {ActionConvention::incremental, ActionConvention::anchored}) {
        const auto w = random_history(g, TimeGrid::uniform(0.0, 1.0, 1 + static_cast<std::size_t>(i % 5)), rng);
        if (action(invert_history(w, g), l, g, conv) == -action(w, l, g, conv)) ++negated;
      }
    }
  }
  t.check(additive == 100, "additivity " + std::to_string(additive) + "/100");
  t.check(negated == 200, "inverse " + std::to_string(negated) + "/200");

  // l(y,x) = (y-x)^2 on three points; w1 = 0 -> 1, w2 = 1 -> 2 -> 1 on unit slices.
  const auto g = pair_groupoid(3);
  std::vector<double> v(9);
  for (std::size_t y = 0; y < 3; ++y)
    for (std::size_t x = 0; x < 3; ++x) v[y * 3 + x] = (double(y) - double(x)) * (double(y) - double(x));
  const auto sq = make_q_lagrangian(v, g);
  const auto w1 = from_links(TimeGrid({0.0, 1.0}), {MorphismId(1 * 3 + 0)}, g);
  const auto w2 = from_links(TimeGrid({1.0, 2.0, 3.0}), {MorphismId(2 * 3 + 1), MorphismId(1 * 3 + 2)}, g);
  const auto w = compose_histories(w2, w1, g);
  const auto anch = ActionConvention::anchored;
  const double a1 = action(w1, sq, g, anch), a2 = action(w2, sq, g, anch), a = action(w, sq, g, anch);
  t.check(a1 == 1.0 && a2 == 1.0 && a == 6.0, "anchored values");
  t.check(action(w, sq, g) == action(w1, sq, g) + action(w2, sq, g), "incremental counterexample");
  t.note("additivity exact " + std::to_string(additive) + "/100, inverse exact " + std::to_string(negated) +
         "/200; anchored S(w2 o w1) = " + std::to_string(a).substr(0, 3) + " vs S(w2) + S(w1) = " +
         std::to_string(a1 + a2).substr(0, 3) + ", incremental 3 = 2 + 1");
  return t.done();
}

// 8. Real-phase Gaussian recursion against the exact kernel.
Outcome real_line() {
  Tracker t;
  double worst = 0.0;
  for (std::size_t n = 1; n <= 64; n *= 2) {
    for (double mass : {1.0, 1.5}) {
      for (double dx : {0.0, 0.4, 1.3, -2.0}) {
        SliceConfig cfg{n, 0.8, mass, 0.9, PhaseMode::real};
        const Complex exact = free_kernel(mass, 0.9, 0.8, dx, PhaseMode::real);
        const double r = std::abs(sliced_line_recursion(cfg, 0.25, 0.25 + dx) - exact) / std::abs(exact);
        worst = std::max(worst, r);
        t.check(r <= 1e-9, "N=" + std::to_string(n) + " " + sci(r));
      }
    }
  }
  t.note("N = 1..64 doubling, max relative error " + sci(worst));
  return t.done();
}

// 9. Euclidean quadrature against the heat kernel, and sweep monotonicity.
Outcome euclidean_line() {
  Tracker t;
  SliceConfig cfg;
  cfg.N = 64;
  double worst = 0.0;
  for (int i = -8; i <= 8; ++i) {
    const double dx = 0.25 * i;
    const auto r = sliced_line_quadrature(cfg, 0.0, dx);
    const double heat = std::exp(-dx * dx / 2.0) / std::sqrt(2.0 * kPi);
    const double e = std::abs(r.value - heat) / heat;
    worst = std::max(worst, e);
    t.check(e <= 1e-3, "dx=" + std::to_string(dx) + " " + sci(e));
  }
  const auto table = converge_line(cfg, 0.0, 1.0, doubling_schedule(1, 256), LineMethod::quadrature);
  const bool mono = is_monotone(table, 8);
  t.check(mono, "sweep not monotone beyond N=8");
  t.note("max relative error " + sci(worst) + " for |dx| <= 2; sweep N=1..256 monotone beyond 8: " +
         (mono ? "yes" : "no") + " (final error " + sci(table.rows.back().rel_error) + ")");
  return t.done();
}

// 10. Circle lattice path sum against the image sum.
Outcome circle() {
  Tracker t;
  SliceConfig cfg;
  cfg.N = 64;
  cfg.T = 0.5;
  const double lc = 2.0 * kPi;
  const std::size_t sites = 256;
  double worst = 0.0;
  for (std::size_t step = 0; step <= sites / 2; step += 16) {
    const double dtheta = lc * static_cast<double>(step) / static_cast<double>(sites);
    const auto r = circle_propagator(cfg, lc, sites, 0.0, dtheta);
    const double ref = image_sum(1.0, 1.0, cfg.T, lc, dtheta);
    const double e = std::abs(r.value.real() - ref) / ref;
    worst = std::max(worst, e);
    t.check(e <= 1e-2 && r.warnings.empty(), "dtheta=" + std::to_string(dtheta) + " " + sci(e));
  }
  t.note("256 sites, N=64, dtheta in [0, pi]: max relative error " + sci(worst));
  return t.done();
}

// 11. Velocity form equals position form.
Outcome velocity_form() {
  Tracker t;
  std::mt19937_64 rng(1011);
  std::uniform_real_distribution<double> u(0.3, 2.0);
  double worst = 0.0;
  for (int i = 0; i < 50; ++i) {
    const bool on_circle = i % 2 == 1;
    const std::size_t sites = 3 + static_cast<std::size_t>(i % 4);
    const auto geo = on_circle ? LatticeGeometry::circle(sites, 3.0 * u(rng)) : LatticeGeometry::line(sites, u(rng));
    const auto grid = TimeGrid::uniform(0.0, u(rng), 2 + static_cast<std::size_t>(i % 3));
    const double mass = u(rng);
    const auto g = pair_groupoid(sites);
    const auto m = i % 3 == 0 ? counting_measure(g) : oracle::random_haar_measure(g, rng);
    const auto spec = uniform_spec(sites, i % 4 < 2 ? PhaseMode::real : PhaseMode::euclidean, u(rng), m.object_weights);
    const auto l = energy_q_lagrangian(geo, grid[1] - grid[0], mass);
    const std::size_t x0 = static_cast<std::size_t>(i) % sites, x1 = (x0 + 2) % sites;
    const Complex pos = finite_propagator(g, grid, l, spec, m, ObjectId(x0), ObjectId(x1));
    const Complex vel = velocity_form_propagator(geo, grid, spec, mass, m, x0, x1);
    const double e = std::abs(pos - vel);
    worst = std::max(worst, e);
    t.check(e <= 1e-12, "instance " + std::to_string(i) + " " + sci(e));
  }
  t.note("50 instances, max abs difference " + sci(worst));
  return t.done();
}

struct Criterion {
  const char* id;
  const char* title;
  double budget_s;
  Outcome (*run)();
};

}  // namespace
}  // namespace schwinger

int main() {
  using namespace schwinger;
  const Criterion criteria[] = {
      {"AC1", "groupoid axioms", 5, axioms},
      {"AC2", "star-algebra laws", 10, star_algebra},
      {"AC3", "DFS properties", 30, dfs_properties},
      {"AC4", "GNS representation", 10, gns},
      {"AC5", "path sum vs transfer matrix", 10, transfer_identity},
      {"AC6", "reproducing kernel", 10, reproducing},
      {"AC7", "action laws", 5, action_laws},
      {"AC8", "real-phase line recursion", 5, real_line},
      {"AC9", "euclidean line quadrature", 60, euclidean_line},
      {"AC10", "circle vs image sum", 120, circle},
      {"AC11", "velocity form", 10, velocity_form},
  };
  int failed = 0;
  for (const auto& c : criteria) {
    const auto start = std::chrono::steady_clock::now();
    Outcome o;
    try {
      o = c.run();
    } catch (const std::exception& e) {
      o = {false, std::string("exception: ") + e.what()};
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    if (secs > c.budget_s) {
      o.pass = false;
      o.detail += "; over time budget";
    }
    std::printf("%s %s %s: %s [%.2f s / %.0f s]\n", c.id, o.pass ? "PASS" : "FAIL", c.title, o.detail.c_str(), secs,
                c.budget_s);
    std::fflush(stdout);
    if (!o.pass) ++failed;
  }
  std::printf("%d of %zu criteria passed\n", static_cast<int>(std::size(criteria)) - failed, std::size(criteria));
  return failed == 0 ? 0 : 1;
}
