#include "schwinger/histories.hpp"

#include <algorithm>
#include <cmath>

#include "schwinger/error.hpp"

namespace schwinger {

TimeGrid::TimeGrid(std::vector<double> times) : times_(std::move(times)) {
  if (times_.empty()) throw Error(ErrorKind::grid, "a time grid needs at least one time");
  for (std::size_t k = 0; k < times_.size(); ++k) {
    if (!std::isfinite(times_[k])) throw Error(ErrorKind::grid, "grid times must be finite");
    if (k > 0 && !(times_[k] > times_[k - 1])) throw Error(ErrorKind::grid, "grid times must strictly increase");
  }
}

TimeGrid TimeGrid::uniform(double t0, double t1, std::size_t intervals) {
  if (intervals == 0) return TimeGrid({t0});
  if (!(t1 > t0)) throw Error(ErrorKind::grid, "uniform grid needs t1 > t0");
  std::vector<double> t(intervals + 1);
  for (std::size_t k = 0; k <= intervals; ++k)
    t[k] = t0 + (t1 - t0) * static_cast<double>(k) / static_cast<double>(intervals);
  t.back() = t1;
  return TimeGrid(std::move(t));
}

std::size_t TimeGrid::index_of(double t) const {
  const auto it = std::lower_bound(times_.begin(), times_.end(), t);
  if (it == times_.end() || *it != t) throw Error(ErrorKind::grid, "time " + std::to_string(t) + " is not on the grid");
  return static_cast<std::size_t>(it - times_.begin());
}

bool TimeGrid::contains(double t) const { return std::binary_search(times_.begin(), times_.end(), t); }

TimeGrid TimeGrid::slice(std::size_t first, std::size_t last) const {
  if (first > last || last >= times_.size()) throw Error(ErrorKind::grid, "grid slice out of range");
  return TimeGrid(std::vector<double>(times_.begin() + static_cast<std::ptrdiff_t>(first),
                                      times_.begin() + static_cast<std::ptrdiff_t>(last) + 1));
}

ObjectId DiscreteHistory::object_at(const FiniteGroupoid& g, std::size_t k) const {
  return orientation == Orientation::future ? g.target(kpath[k]) : g.source(kpath[k]);
}

HistoryPoint DiscreteHistory::source(const FiniteGroupoid& g) const {
  if (orientation == Orientation::future) return {object_at(g, 0), grid.front()};
  return {object_at(g, grid.intervals()), grid.back()};
}

HistoryPoint DiscreteHistory::target(const FiniteGroupoid& g) const {
  if (orientation == Orientation::future) return {object_at(g, grid.intervals()), grid.back()};
  return {object_at(g, 0), grid.front()};
}

DiscreteHistory trivial_history(const FiniteGroupoid& g, ObjectId x, double t) {
  if (x.value >= g.object_count()) throw Error(ErrorKind::range, "object out of range");
  return {TimeGrid({t}), {g.unit(x)}, Orientation::future};
}

DiscreteHistory from_links(const TimeGrid& grid, const std::vector<MorphismId>& links, const FiniteGroupoid& g,
                           std::optional<ObjectId> start) {
  if (links.size() != grid.intervals()) {
    throw Error(ErrorKind::consistency, "expected " + std::to_string(grid.intervals()) + " links, got " +
                                            std::to_string(links.size()));
  }
  for (MorphismId a : links)
    if (a.value >= g.morphism_count()) throw Error(ErrorKind::range, "link morphism out of range");
  ObjectId x0;
  if (!links.empty()) {
    x0 = g.source(links.front());
    if (start && *start != x0) throw Error(ErrorKind::consistency, "first link does not leave the start object");
  } else if (start) {
    x0 = *start;
    if (x0.value >= g.object_count()) throw Error(ErrorKind::range, "object out of range");
  } else {
    throw Error(ErrorKind::consistency, "a trivial history needs an explicit start object");
  }
  DiscreteHistory w{grid, {g.unit(x0)}, Orientation::future};
  w.kpath.reserve(grid.size());
  for (std::size_t k = 0; k < links.size(); ++k) {
    if (k > 0 && g.source(links[k]) != g.target(links[k - 1])) {
      throw Error(ErrorKind::consistency, "link " + std::to_string(k + 1) + " does not start where link " +
                                              std::to_string(k) + " ends");
    }
    w.kpath.push_back(g.compose(links[k], w.kpath.back()));
  }
  return w;
}

MorphismId accumulated(const DiscreteHistory& w, std::size_t l, std::size_t k, const FiniteGroupoid& g) {
  if (l >= w.kpath.size() || k >= w.kpath.size()) throw Error(ErrorKind::range, "grid index out of range");
  if (w.orientation == Orientation::future) return g.compose(w.kpath[l], g.inverse(w.kpath[k]));
  return g.compose(g.inverse(w.kpath[l]), w.kpath[k]);
}

MorphismId traversed_link(const DiscreteHistory& w, std::size_t k, const FiniteGroupoid& g) {
  return w.orientation == Orientation::future ? accumulated(w, k, k - 1, g) : accumulated(w, k - 1, k, g);
}

std::vector<MorphismId> links_of(const DiscreteHistory& w, const FiniteGroupoid& g) {
  std::vector<MorphismId> out;
  out.reserve(w.grid.intervals());
  for (std::size_t k = 1; k < w.kpath.size(); ++k) out.push_back(traversed_link(w, k, g));
  return out;
}

DiscreteHistory invert_history(const DiscreteHistory& w, const FiniteGroupoid& g) {
  DiscreteHistory out{w.grid, w.kpath, flipped(w.orientation)};
  for (auto& a : out.kpath) a = g.inverse(a);
  if (w.trivial()) out.orientation = Orientation::future;
  return out;
}

namespace {

DiscreteHistory compose_future(const DiscreteHistory& w2, const DiscreteHistory& w1, const FiniteGroupoid& g) {
  std::vector<double> times = w1.grid.times();
  times.insert(times.end(), w2.grid.times().begin() + 1, w2.grid.times().end());
  DiscreteHistory out{TimeGrid(std::move(times)), w1.kpath, Orientation::future};
  const MorphismId join = w1.kpath.back();
  for (std::size_t k = 1; k < w2.kpath.size(); ++k) out.kpath.push_back(g.compose(w2.kpath[k], join));
  return out;
}

}  // namespace

DiscreteHistory compose_histories(const DiscreteHistory& w2, const DiscreteHistory& w1, const FiniteGroupoid& g) {
  if (w1.target(g) != w2.source(g)) throw Error(ErrorKind::composition, "t(w1) != s(w2)");
  if (w1.trivial()) return w2;
  if (w2.trivial()) return w1;
  if (w1.orientation != w2.orientation) {
    throw Error(ErrorKind::orientation, "histories of opposite orientation compose only as words");
  }
  if (w1.orientation == Orientation::future) return compose_future(w2, w1, g);
  // (w2 o w1)^{-1} = w1^{-1} o w2^{-1}, both future.
  return invert_history(compose_future(invert_history(w1, g), invert_history(w2, g), g), g);
}

std::vector<MorphismId> change_reference(const DiscreteHistory& w, double tau, const FiniteGroupoid& g) {
  const std::size_t j = w.grid.index_of(tau);
  std::vector<MorphismId> out(w.kpath.size());
  for (std::size_t k = 0; k < w.kpath.size(); ++k) out[k] = accumulated(w, k, j, g);
  return out;
}

DiscreteHistory restrict_indices(const DiscreteHistory& w, std::size_t first, std::size_t last,
                                 const FiniteGroupoid& g) {
  DiscreteHistory out{w.grid.slice(first, last), {}, w.orientation};
  out.kpath.reserve(last - first + 1);
  for (std::size_t k = first; k <= last; ++k)
    out.kpath.push_back(w.orientation == Orientation::future ? accumulated(w, k, first, g) : accumulated(w, first, k, g));
  if (out.trivial()) {
    out.orientation = Orientation::future;
    out.kpath[0] = g.unit(w.object_at(g, first));
  }
  return out;
}

DiscreteHistory restrict_history(const DiscreteHistory& w, double t_begin, double t_end, const FiniteGroupoid& g) {
  return restrict_indices(w, w.grid.index_of(t_begin), w.grid.index_of(t_end), g);
}

HistoryStream::HistoryStream(const FiniteGroupoid& g, TimeGrid grid, ObjectId x0, ObjectId x1,
                             std::optional<ObjectId> first_interior)
    : g_(&g), grid_(std::move(grid)), x0_(x0), x1_(x1), first_(first_interior) {
  if (x0.value >= g.object_count() || x1.value >= g.object_count())
    throw Error(ErrorKind::range, "endpoint object out of range");
  if (grid_.intervals() == 0) throw Error(ErrorKind::grid, "enumeration needs at least one interval");
  if (first_ && grid_.intervals() < 2) throw Error(ErrorKind::grid, "partitioning needs at least two intervals");
  if (first_ && first_->value >= g.object_count()) throw Error(ErrorKind::range, "partition object out of range");
  const std::size_t n = grid_.intervals();
  objects_.assign(n + 1, 0);
  objects_.front() = x0.value;
  objects_.back() = x1.value;
  if (first_) objects_[1] = first_->value;
  digits_.assign(n, 0);
}

bool HistoryStream::advance_objects() {
  const std::size_t n = grid_.intervals();
  const std::size_t lowest = first_ ? 2 : 1;
  for (std::size_t k = n; k-- > lowest;) {
    if (++objects_[k] < g_->object_count()) return true;
    objects_[k] = 0;
  }
  return false;
}

bool HistoryStream::load_links() {
  for (std::size_t k = 1; k < objects_.size(); ++k)
    if (g_->hom(ObjectId(objects_[k - 1]), ObjectId(objects_[k])).empty()) return false;
  std::fill(digits_.begin(), digits_.end(), 0);
  return true;
}

bool HistoryStream::advance_links() {
  for (std::size_t k = digits_.size(); k-- > 0;) {
    const auto h = g_->hom(ObjectId(objects_[k]), ObjectId(objects_[k + 1]));
    if (++digits_[k] < h.size()) return true;
    digits_[k] = 0;
  }
  return false;
}

bool HistoryStream::next_links(std::vector<MorphismId>& links) {
  if (done_) return false;
  bool ok;
  if (!started_) {
    started_ = true;
    ok = load_links();
  } else {
    ok = advance_links();
  }
  while (!ok) {
    if (!advance_objects()) {
      done_ = true;
      return false;
    }
    ok = load_links();
  }
  links.resize(digits_.size());
  for (std::size_t k = 0; k < digits_.size(); ++k)
    links[k] = g_->hom(ObjectId(objects_[k]), ObjectId(objects_[k + 1]))[digits_[k]];
  return true;
}

std::optional<DiscreteHistory> HistoryStream::next() {
  std::vector<MorphismId> links;
  if (!next_links(links)) return std::nullopt;
  return from_links(grid_, links, *g_);
}

std::vector<DiscreteHistory> enumerate_histories(const FiniteGroupoid& g, const TimeGrid& grid, ObjectId x0,
                                                 ObjectId x1) {
  std::vector<DiscreteHistory> out;
  HistoryStream stream(g, grid, x0, x1);
  while (auto w = stream.next()) out.push_back(std::move(*w));
  return out;
}

std::size_t count_histories(const FiniteGroupoid& g, const TimeGrid& grid, ObjectId x0, ObjectId x1) {
  // ways[y] = number of link tuples reaching y after k steps
  const std::size_t n = g.object_count();
  std::vector<std::size_t> ways(n, 0), next(n);
  ways[x0.value] = 1;
  for (std::size_t k = 0; k < grid.intervals(); ++k) {
    std::fill(next.begin(), next.end(), 0);
    for (std::size_t x = 0; x < n; ++x)
      if (ways[x] != 0)
        for (std::size_t y = 0; y < n; ++y) next[y] += ways[x] * g.hom(ObjectId(x), ObjectId(y)).size();
    ways.swap(next);
  }
  return ways[x1.value];
}

HistoryPoint HistoryWord::target(const FiniteGroupoid& g) const {
  return segments.empty() ? base : segments.back().target(g);
}

std::vector<WordEdge> word_edges(const std::vector<DiscreteHistory>& segments, const FiniteGroupoid& g) {
  std::vector<WordEdge> edges;
  for (std::size_t i = 0; i < segments.size(); ++i) {
    const auto& w = segments[i];
    if (i > 0 && segments[i - 1].target(g) != w.source(g)) {
      throw Error(ErrorKind::word, "segment " + std::to_string(i) + " does not start where segment " +
                                       std::to_string(i - 1) + " ends");
    }
    const std::size_t n = w.grid.intervals();
    if (w.orientation == Orientation::future) {
      for (std::size_t k = 1; k <= n; ++k)
        edges.push_back({w.grid[k - 1], w.grid[k], accumulated(w, k, k - 1, g), Orientation::future});
    } else {
      for (std::size_t k = n; k >= 1; --k)
        edges.push_back({w.grid[k], w.grid[k - 1], traversed_link(w, k, g), Orientation::past});
    }
  }
  return edges;
}

namespace {

DiscreteHistory segment_from_run(std::span<const WordEdge> run, const FiniteGroupoid& g) {
  if (run.front().orientation == Orientation::future) {
    std::vector<double> times{run.front().t_from};
    std::vector<MorphismId> links;
    for (const auto& e : run) {
      times.push_back(e.t_to);
      links.push_back(e.morphism);
    }
    return from_links(TimeGrid(std::move(times)), links, g);
  }
  // Retrace the run forward in time, then invert.
  std::vector<double> times{run.back().t_to};
  std::vector<MorphismId> links;
  for (std::size_t i = run.size(); i-- > 0;) {
    times.push_back(run[i].t_from);
    links.push_back(g.inverse(run[i].morphism));
  }
  return invert_history(from_links(TimeGrid(std::move(times)), links, g), g);
}

}  // namespace

std::vector<WordEdge> reduce_edges(const std::vector<DiscreteHistory>& segments, const FiniteGroupoid& g) {
  if (segments.empty()) throw Error(ErrorKind::word, "a word needs at least one segment");
  const std::vector<WordEdge> edges = word_edges(segments, g);
  std::vector<WordEdge> stack;
  stack.reserve(edges.size());
  for (const auto& e : edges) {
    if (!stack.empty()) {
      const auto& top = stack.back();
      if (top.orientation != e.orientation && top.t_from == e.t_to && top.t_to == e.t_from &&
          g.inverse(top.morphism) == e.morphism) {
        stack.pop_back();
        continue;
      }
    }
    stack.push_back(e);
  }
  return stack;
}

HistoryWord reduce_word(const std::vector<DiscreteHistory>& segments, const FiniteGroupoid& g) {
  const std::vector<WordEdge> stack = reduce_edges(segments, g);
  HistoryWord word{segments.front().source(g), {}};
  std::size_t begin = 0;
  for (std::size_t i = 1; i <= stack.size(); ++i) {
    if (i == stack.size() || stack[i].orientation != stack[begin].orientation) {
      word.segments.push_back(segment_from_run(std::span(stack).subspan(begin, i - begin), g));
      begin = i;
    }
  }
  return word;
}

HistoryWord word_compose(const DiscreteHistory& w2, const DiscreteHistory& w1, const FiniteGroupoid& g) {
  return reduce_word({w1, w2}, g);
}

}  // namespace schwinger
