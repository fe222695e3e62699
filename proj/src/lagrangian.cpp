#include "schwinger/lagrangian.hpp"

#include <algorithm>
#include <map>
#include <random>

#include "schwinger/error.hpp"

namespace schwinger {

bool check_symmetry(const QLagrangian& l, const FiniteGroupoid& g) { return asymmetric_pairs(l, g).empty(); }

std::vector<std::pair<MorphismId, MorphismId>> asymmetric_pairs(const QLagrangian& l, const FiniteGroupoid& g) {
  if (l.values.size() != g.morphism_count()) throw Error(ErrorKind::shape, "q-Lagrangian size does not match K");
  std::vector<std::pair<MorphismId, MorphismId>> out;
  for (std::size_t a = 0; a < g.morphism_count(); ++a) {
    const MorphismId inv = g.inverse(MorphismId(a));
    if (a < inv.value && l.values[a] != l.values[inv.value]) out.emplace_back(MorphismId(a), inv);
  }
  return out;
}

QLagrangian make_q_lagrangian(std::vector<double> values, const FiniteGroupoid& g) {
  QLagrangian l{std::move(values), false};
  l.symmetric = check_symmetry(l, g);
  return l;
}

QLagrangian zero_q_lagrangian(const FiniteGroupoid& g) {
  return {std::vector<double>(g.morphism_count(), 0.0), true};
}

QLagrangian random_q_lagrangian(const FiniteGroupoid& g, std::uint64_t seed, double scale) {
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> dist(-scale, scale);
  std::vector<double> v(g.morphism_count());
  for (auto& x : v) x = dist(rng);
  for (std::size_t a = 0; a < v.size(); ++a) {
    const auto inv = g.inverse(MorphismId(a)).value;
    if (inv < a) v[a] = v[inv];
  }
  return make_q_lagrangian(std::move(v), g);
}

double action(const DiscreteHistory& w, const QLagrangian& l, const FiniteGroupoid& g, ActionConvention convention) {
  double s = 0.0;
  for (std::size_t k = 1; k < w.kpath.size(); ++k) {
    if (convention == ActionConvention::incremental)
      s += l(traversed_link(w, k, g));
    else
      s += l(w.orientation == Orientation::future ? accumulated(w, k, 0, g) : accumulated(w, 0, k, g)) *
           (w.grid[k] - w.grid[k - 1]);
  }
  return w.orientation == Orientation::future ? s : -s;
}

double word_action(const HistoryWord& word, const QLagrangian& l, const FiniteGroupoid& g,
                   ActionConvention convention) {
  double s = 0.0;
  for (const auto& seg : word.segments) s += action(seg, l, g, convention);
  return s;
}

LatticeGeometry LatticeGeometry::line(std::size_t sites, double spacing, double origin) {
  if (sites == 0 || !(spacing > 0.0)) throw Error(ErrorKind::geometry, "line lattice needs sites > 0 and spacing > 0");
  LatticeGeometry g;
  g.kind_ = Kind::line;
  g.sites_ = sites;
  g.spacing_ = spacing;
  g.origin_ = origin;
  return g;
}

LatticeGeometry LatticeGeometry::circle(std::size_t sites, double circumference) {
  if (sites == 0 || !(circumference > 0.0))
    throw Error(ErrorKind::geometry, "circle lattice needs sites > 0 and circumference > 0");
  LatticeGeometry g;
  g.kind_ = Kind::circle;
  g.sites_ = sites;
  g.spacing_ = circumference / static_cast<double>(sites);
  g.circumference_ = circumference;
  return g;
}

double LatticeGeometry::position(std::size_t i) const { return origin_ + static_cast<double>(i) * spacing_; }

double LatticeGeometry::displacement(std::size_t i, std::size_t j) const {
  auto steps = static_cast<long long>(j) - static_cast<long long>(i);
  if (kind_ == Kind::circle) {
    const auto n = static_cast<long long>(sites_);
    steps = ((steps % n) + n) % n;
    if (2 * steps > n) steps -= n;
  }
  return static_cast<double>(steps) * spacing_;
}

std::size_t LatticeGeometry::step(std::size_t i, double d) const {
  const auto steps = static_cast<long long>(std::llround(d / spacing_));
  auto j = static_cast<long long>(i) + steps;
  const auto n = static_cast<long long>(sites_);
  if (kind_ == Kind::circle) {
    j = ((j % n) + n) % n;
  } else if (j < 0 || j >= n) {
    throw Error(ErrorKind::geometry, "step leaves the line lattice");
  }
  return static_cast<std::size_t>(j);
}

Eigen::MatrixXd LatticeGeometry::metric() const {
  const auto n = static_cast<Eigen::Index>(sites_);
  Eigen::MatrixXd d(n, n);
  for (Eigen::Index i = 0; i < n; ++i)
    for (Eigen::Index j = 0; j < n; ++j)
      d(i, j) = distance(static_cast<std::size_t>(i), static_cast<std::size_t>(j));
  return d;
}

QLagrangian energy_q_lagrangian(const Eigen::MatrixXd& metric, double slice_dt, double mass) {
  if (metric.rows() != metric.cols()) throw Error(ErrorKind::metric, "metric must be square");
  if (!(slice_dt > 0.0) || !(mass > 0.0)) throw Error(ErrorKind::range, "slice_dt and mass must be positive");
  const auto n = static_cast<std::size_t>(metric.rows());
  for (Eigen::Index i = 0; i < metric.rows(); ++i) {
    if (metric(i, i) != 0.0) throw Error(ErrorKind::metric, "metric has a non-zero diagonal entry");
    for (Eigen::Index j = 0; j < i; ++j) {
      const double a = metric(i, j), b = metric(j, i);
      if (!(a >= 0.0) || std::abs(a - b) > 1e-12 * std::max(1.0, std::abs(a)))
        throw Error(ErrorKind::metric, "metric is not symmetric at (" + std::to_string(i) + "," +
                                           std::to_string(j) + ")");
    }
  }
  QLagrangian l{std::vector<double>(n * n), true};
  for (std::size_t y = 0; y < n; ++y) {
    for (std::size_t x = 0; x < n; ++x) {
      const double d = metric(static_cast<Eigen::Index>(std::max(x, y)), static_cast<Eigen::Index>(std::min(x, y)));
      l.values[y * n + x] = mass * d * d / (2.0 * slice_dt);
    }
  }
  return l;
}

QLagrangian energy_q_lagrangian(const LatticeGeometry& geometry, double slice_dt, double mass) {
  return energy_q_lagrangian(geometry.metric(), slice_dt, mass);
}

DFSSpec DFSSpec::uniform(std::size_t n_objects, const std::vector<double>& object_weights) {
  double total = static_cast<double>(n_objects);
  if (!object_weights.empty()) {
    total = 0.0;
    for (double w : object_weights) total += w;
  }
  return {{std::vector<double>(n_objects, 1.0 / total)}, 1.0, ActionConvention::incremental, PhaseMode::real};
}

void check_dfs_spec(const DFSSpec& spec, std::size_t n_objects, const TimeGrid& grid,
                    const std::vector<double>& object_weights, double tol) {
  if (!(spec.hbar > 0.0) || !std::isfinite(spec.hbar)) throw Error(ErrorKind::range, "hbar must be positive");
  if (spec.density.size() != 1 && spec.density.size() != grid.size())
    throw Error(ErrorKind::shape, "density needs one row or one row per grid time");
  if (!object_weights.empty() && object_weights.size() != n_objects)
    throw Error(ErrorKind::shape, "object weights do not match the object count");
  for (std::size_t k = 0; k < spec.density.size(); ++k) {
    const auto& row = spec.density[k];
    if (row.size() != n_objects) throw Error(ErrorKind::shape, "density row " + std::to_string(k) + " has wrong size");
    double s = 0.0;
    for (std::size_t x = 0; x < n_objects; ++x) {
      if (!(row[x] >= 0.0) || !std::isfinite(row[x]))
        throw Error(ErrorKind::range, "density must be non-negative and finite");
      s += (object_weights.empty() ? 1.0 : object_weights[x]) * row[x];
    }
    if (std::abs(s - 1.0) > tol) {
      throw Error(ErrorKind::normalization,
                  "density row " + std::to_string(k) + " integrates to " + std::to_string(s) + ", not 1");
    }
  }
}

DFSFunction::DFSFunction(QLagrangian l, DFSSpec spec, const FiniteGroupoid& g, TimeGrid grid)
    : l_(std::move(l)), spec_(std::move(spec)), g_(&g), grid_(std::move(grid)) {}

double DFSFunction::p(const HistoryPoint& pt) const { return spec_.p(pt.object, grid_.index_of(pt.time)); }

Complex DFSFunction::phase_factor(double s) const {
  if (spec_.mode == PhaseMode::real) return std::polar(1.0, s / spec_.hbar);
  return {std::exp(-s / spec_.hbar), 0.0};
}

Complex DFSFunction::operator()(const DiscreteHistory& w) const {
  return std::sqrt(p(w.source(*g_)) * p(w.target(*g_))) * phase_factor(action(w, l_, *g_, spec_.convention));
}

Complex DFSFunction::operator()(const HistoryWord& word) const {
  const double amp = std::sqrt(p(word.source()) * p(word.target(*g_)));
  return amp * phase_factor(word_action(word, l_, *g_, spec_.convention));
}

Complex DFSFunction::on_segments(const std::vector<DiscreteHistory>& segments) const {
  if (spec_.convention != ActionConvention::incremental) return (*this)(reduce_word(segments, *g_));
  // Incremental actions are sums over edges, so the regrouping step of the
  // reduction does not change them.
  double s = 0.0;
  for (const auto& e : reduce_edges(segments, *g_)) s += e.orientation == Orientation::future ? l_(e.morphism) : -l_(e.morphism);
  const double amp = std::sqrt(p(segments.front().source(*g_)) * p(segments.back().target(*g_)));
  return amp * phase_factor(s);
}

DFSFunction dfs_function(const QLagrangian& l, const DFSSpec& spec, const FiniteGroupoid& g, const TimeGrid& grid,
                         const std::vector<double>& object_weights) {
  const auto bad = asymmetric_pairs(l, g);
  if (!bad.empty()) {
    std::string msg = "q-Lagrangian is not symmetric on";
    for (std::size_t i = 0; i < std::min<std::size_t>(bad.size(), 8); ++i)
      msg += " (" + std::to_string(bad[i].first.value) + "," + std::to_string(bad[i].second.value) + ")";
    if (bad.size() > 8) msg += " ...";
    throw Error(ErrorKind::symmetry, msg);
  }
  check_dfs_spec(spec, g.object_count(), grid, object_weights);
  QLagrangian copy = l;
  copy.symmetric = true;
  return DFSFunction(std::move(copy), spec, g, grid);
}

std::vector<std::vector<double>> classical_restriction(const DFSFunction& dfs) {
  const auto& g = dfs.groupoid();
  std::vector<std::vector<double>> out(dfs.grid().size(), std::vector<double>(g.object_count()));
  for (std::size_t k = 0; k < dfs.grid().size(); ++k)
    for (std::size_t x = 0; x < g.object_count(); ++x)
      out[k][x] = dfs(trivial_history(g, ObjectId(x), dfs.grid()[k])).real();
  return out;
}

HistorySet build_history_set(const FiniteGroupoid& g, const TimeGrid& grid, std::size_t max_histories) {
  const std::size_t n = g.object_count();
  std::size_t total = n * grid.size();
  for (std::size_t a = 0; a < grid.size(); ++a)
    for (std::size_t b = a + 1; b < grid.size(); ++b)
      for (std::size_t x0 = 0; x0 < n; ++x0)
        for (std::size_t x1 = 0; x1 < n; ++x1)
          total += 2 * count_histories(g, grid.slice(a, b), ObjectId(x0), ObjectId(x1));
  if (total > max_histories) {
    throw Error(ErrorKind::range, "history set would hold " + std::to_string(total) + " histories (limit " +
                                      std::to_string(max_histories) + ")");
  }
  HistorySet set;
  set.histories.reserve(total);
  for (std::size_t k = 0; k < grid.size(); ++k)
    for (std::size_t x = 0; x < n; ++x) set.histories.push_back(trivial_history(g, ObjectId(x), grid[k]));
  for (std::size_t a = 0; a < grid.size(); ++a) {
    for (std::size_t b = a + 1; b < grid.size(); ++b) {
      const TimeGrid sub = grid.slice(a, b);
      for (std::size_t x0 = 0; x0 < n; ++x0) {
        for (std::size_t x1 = 0; x1 < n; ++x1) {
          HistoryStream stream(g, sub, ObjectId(x0), ObjectId(x1));
          while (auto w = stream.next()) {
            set.histories.push_back(invert_history(*w, g));
            set.histories.push_back(std::move(*w));
          }
        }
      }
    }
  }
  std::map<std::pair<std::size_t, std::uint32_t>, std::size_t> block_of;
  for (std::size_t i = 0; i < set.histories.size(); ++i) {
    const HistoryPoint t = set.histories[i].target(g);
    const auto key = std::make_pair(grid.index_of(t.time), t.object.value);
    auto [it, inserted] = block_of.emplace(key, set.blocks.size());
    if (inserted) set.blocks.emplace_back();
    set.blocks[it->second].push_back(i);
  }
  return set;
}

namespace {

// phi(b^{-1} o d) for histories with a common target, reducing the edge
// sequence edges(d) ++ edges(b^{-1}) with a stack.
struct EdgeCache {
  std::vector<WordEdge> forward;   // edges of d
  std::vector<WordEdge> backward;  // edges of d^{-1}
  double p_source = 0.0;
};

}  // namespace

std::vector<Eigen::MatrixXcd> history_form_blocks(const DFSFunction& dfs, const HistorySet& set) {
  const auto& g = dfs.groupoid();
  const auto& l = dfs.lagrangian();
  const bool incremental = dfs.spec().convention == ActionConvention::incremental;
  std::vector<Eigen::MatrixXcd> blocks;
  blocks.reserve(set.blocks.size());
  std::vector<WordEdge> stack;
  for (const auto& block : set.blocks) {
    const auto m = static_cast<Eigen::Index>(block.size());
    std::vector<EdgeCache> cache(block.size());
    std::vector<DiscreteHistory> inverses(block.size());
    for (std::size_t i = 0; i < block.size(); ++i) {
      const auto& w = set.histories[block[i]];
      inverses[i] = invert_history(w, g);
      cache[i].forward = word_edges({w}, g);
      cache[i].backward = word_edges({inverses[i]}, g);
      cache[i].p_source = dfs.p(w.source(g));
    }
    Eigen::MatrixXcd form(m, m);
    for (std::size_t i = 0; i < block.size(); ++i) {
      for (std::size_t j = 0; j < block.size(); ++j) {
        Complex value;
        if (incremental) {
          stack.clear();
          const auto push = [&](const WordEdge& e) {
            if (!stack.empty()) {
              const auto& top = stack.back();
              if (top.orientation != e.orientation && top.t_from == e.t_to && top.t_to == e.t_from &&
                  g.inverse(top.morphism) == e.morphism) {
                stack.pop_back();
                return;
              }
            }
            stack.push_back(e);
          };
          for (const auto& e : cache[j].forward) push(e);
          for (const auto& e : cache[i].backward) push(e);
          double s = 0.0;
          for (const auto& e : stack) s += e.orientation == Orientation::future ? l(e.morphism) : -l(e.morphism);
          value = std::sqrt(cache[j].p_source * cache[i].p_source) * dfs.phase_factor(s);
        } else {
          value = dfs.on_segments({set.histories[block[j]], inverses[i]});
        }
        form(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) = value;
      }
    }
    blocks.push_back(std::move(form));
  }
  return blocks;
}

PositivityCertificate history_positivity(const DFSFunction& dfs, const HistorySet& set, double tol) {
  return certify_blocks(history_form_blocks(dfs, set), tol);
}

}  // namespace schwinger
