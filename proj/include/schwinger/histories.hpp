#pragma once

#include <optional>
#include <vector>

#include "schwinger/groupoid.hpp"

namespace schwinger {

// Strictly increasing times t_0 < ... < t_N.
class TimeGrid {
 public:
  TimeGrid() = default;
  explicit TimeGrid(std::vector<double> times);
  static TimeGrid uniform(double t0, double t1, std::size_t intervals);

  std::size_t intervals() const { return times_.size() - 1; }
  std::size_t size() const { return times_.size(); }
  double operator[](std::size_t k) const { return times_[k]; }
  double front() const { return times_.front(); }
  double back() const { return times_.back(); }
  const std::vector<double>& times() const { return times_; }

  // Position of t on the grid; throws ErrorKind::grid when absent.
  std::size_t index_of(double t) const;
  bool contains(double t) const;
  TimeGrid slice(std::size_t first, std::size_t last) const;

  friend bool operator==(const TimeGrid&, const TimeGrid&) = default;

 private:
  std::vector<double> times_;
};

enum class Orientation { future, past };

inline Orientation flipped(Orientation o) { return o == Orientation::future ? Orientation::past : Orientation::future; }

struct HistoryPoint {
  ObjectId object;
  double time = 0.0;
  friend bool operator==(const HistoryPoint&, const HistoryPoint&) = default;
};

// A grid history in K-path form.
//
// Future: kpath[k] = w_{t0}(t_k), all with source x0, kpath[0] the unit at x0.
// Past: stored as the inverse of a future K-path, kpath[k] = w_{t0}(t_k)^{-1};
// the history then runs from (x_N, t_N) back to (x_0, t_0).
struct DiscreteHistory {
  TimeGrid grid;
  std::vector<MorphismId> kpath;
  Orientation orientation = Orientation::future;

  bool trivial() const { return grid.intervals() == 0; }
  std::size_t interval_count() const { return grid.intervals(); }
  // Counts the normalising unit link as well.
  std::size_t link_count() const { return grid.size(); }

  // Object visited at grid index k.
  ObjectId object_at(const FiniteGroupoid& g, std::size_t k) const;
  HistoryPoint source(const FiniteGroupoid& g) const;
  HistoryPoint target(const FiniteGroupoid& g) const;

  friend bool operator==(const DiscreteHistory&, const DiscreteHistory&) = default;
};

DiscreteHistory trivial_history(const FiniteGroupoid& g, ObjectId x, double t);

// Future history with the given consecutive links; links.size() == grid.intervals().
DiscreteHistory from_links(const TimeGrid& grid, const std::vector<MorphismId>& links, const FiniteGroupoid& g,
                           std::optional<ObjectId> start = {});

// alpha_k = w(k, k-1), k = 1..N
std::vector<MorphismId> links_of(const DiscreteHistory& w, const FiniteGroupoid& g);

// w(l, k): the transition from the grid-k state to the grid-l state.
MorphismId accumulated(const DiscreteHistory& w, std::size_t l, std::size_t k, const FiniteGroupoid& g);

// The link crossed on interval k (1..N): w(k, k-1) for future histories,
// w(k-1, k) for past ones.
MorphismId traversed_link(const DiscreteHistory& w, std::size_t k, const FiniteGroupoid& g);

// w2 o w1, both of the same orientation (a trivial history composes with
// either). Throws ErrorKind::composition on endpoint mismatch and
// ErrorKind::orientation on mixed orientations (use word_compose).
DiscreteHistory compose_histories(const DiscreteHistory& w2, const DiscreteHistory& w1, const FiniteGroupoid& g);

DiscreteHistory invert_history(const DiscreteHistory& w, const FiniteGroupoid& g);

// w_tau(t_k) for every grid index k.
std::vector<MorphismId> change_reference(const DiscreteHistory& w, double tau, const FiniteGroupoid& g);

DiscreteHistory restrict_history(const DiscreteHistory& w, double t_begin, double t_end, const FiniteGroupoid& g);
DiscreteHistory restrict_indices(const DiscreteHistory& w, std::size_t first, std::size_t last,
                                 const FiniteGroupoid& g);

// Deterministic enumeration of the future histories from (x0, t_0) to
// (x1, t_N): lexicographic in the interior objects, then in the link indices
// within each hom set; the last position varies fastest. With first_interior
// set, only histories whose grid-1 object equals it are produced, which gives
// a partition of the stream (N >= 2).
class HistoryStream {
 public:
  HistoryStream(const FiniteGroupoid& g, TimeGrid grid, ObjectId x0, ObjectId x1,
                std::optional<ObjectId> first_interior = {});

  // Writes the next link tuple; false when exhausted.
  bool next_links(std::vector<MorphismId>& links);
  std::optional<DiscreteHistory> next();

 private:
  bool advance_objects();
  bool load_links();
  bool advance_links();

  const FiniteGroupoid* g_;
  TimeGrid grid_;
  ObjectId x0_, x1_;
  std::optional<ObjectId> first_;
  std::vector<std::uint32_t> objects_;  // x_0 .. x_N
  std::vector<std::size_t> digits_;     // index into hom(x_{k-1}, x_k), k = 1..N
  bool started_ = false;
  bool done_ = false;
};

std::vector<DiscreteHistory> enumerate_histories(const FiniteGroupoid& g, const TimeGrid& grid, ObjectId x0,
                                                 ObjectId x1);

// Number of histories the stream yields, computed from hom-set sizes.
std::size_t count_histories(const FiniteGroupoid& g, const TimeGrid& grid, ObjectId x0, ObjectId x1);

// A composable chain of segments, applied in order: segments[0] first.
struct HistoryWord {
  HistoryPoint base;  // source of the word (also its target when empty)
  std::vector<DiscreteHistory> segments;

  bool empty() const { return segments.empty(); }
  HistoryPoint source() const { return base; }
  HistoryPoint target(const FiniteGroupoid& g) const;

  friend bool operator==(const HistoryWord&, const HistoryWord&) = default;
};

// One grid step of a word: a link traversed forward (future) or backward
// (past) in time.
struct WordEdge {
  double t_from = 0.0;
  double t_to = 0.0;
  MorphismId morphism;  // from the t_from state to the t_to state
  Orientation orientation = Orientation::future;
  friend bool operator==(const WordEdge&, const WordEdge&) = default;
};

std::vector<WordEdge> word_edges(const std::vector<DiscreteHistory>& segments, const FiniteGroupoid& g);

// Edges left after cancelling adjacent retracing steps.
std::vector<WordEdge> reduce_edges(const std::vector<DiscreteHistory>& segments, const FiniteGroupoid& g);

// Free reduction: adjacent steps that retrace each other are cancelled until
// none remain, then maximal same-orientation runs are merged into single
// segments. The result does not depend on the cancellation order. Throws
// ErrorKind::word when consecutive endpoints disagree.
HistoryWord reduce_word(const std::vector<DiscreteHistory>& segments, const FiniteGroupoid& g);

// Reduced word for w2 o w1 in either orientation.
HistoryWord word_compose(const DiscreteHistory& w2, const DiscreteHistory& w1, const FiniteGroupoid& g);

}  // namespace schwinger
