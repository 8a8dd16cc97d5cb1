#ifndef MARICER_INTERVALS_HPP
#define MARICER_INTERVALS_HPP

#include <cstdint>
#include <limits>
#include <span>
#include <vector>

namespace maricer {

/// Time-points are integer epoch seconds; durations are in seconds.
using TimePoint = std::int64_t;
using Duration = std::int64_t;

/// Sentinel marking an unbounded interval end (fluent still holding).
inline constexpr TimePoint kOpenEnd = std::numeric_limits<TimePoint>::max();

/// Half-open interval [start, end). `end == kOpenEnd` means the interval has
/// not been closed yet; such an interval may only appear as the last element
/// of an IntervalList.
struct Interval {
  TimePoint start = 0;
  TimePoint end = kOpenEnd;

  bool is_open() const { return end == kOpenEnd; }
  bool contains(TimePoint t) const { return t >= start && t < end; }
  /// Length in seconds; open intervals report kOpenEnd.
  Duration length() const { return is_open() ? kOpenEnd : end - start; }

  friend bool operator==(const Interval&, const Interval&) = default;
};

/// An ordered list of disjoint, non-adjacent (maximal) half-open intervals.
///
/// Invariants: for consecutive items a, b it holds that a.end < b.start, and
/// every item satisfies start < end. Construction goes through append(),
/// which coalesces overlapping or adjacent intervals so maximality is
/// preserved by design.
class IntervalList {
 public:
  IntervalList() = default;
  IntervalList(std::initializer_list<Interval> items) {
    for (const Interval& iv : items) append(iv);
  }

  /// Adds an interval whose start is >= the start of the last item.
  /// Coalesces with the last item when they touch or overlap.
  void append(Interval iv);
  void append(TimePoint start, TimePoint end) { append(Interval{start, end}); }

  bool contains(TimePoint t) const;

  bool empty() const { return items_.empty(); }
  std::size_t size() const { return items_.size(); }
  const Interval& operator[](std::size_t i) const { return items_[i]; }
  const Interval& front() const { return items_.front(); }
  const Interval& back() const { return items_.back(); }
  Interval& back_mutable() { return items_.back(); }

  auto begin() const { return items_.begin(); }
  auto end() const { return items_.end(); }

  const std::vector<Interval>& items() const { return items_; }

  /// Sum of the lengths of the bounded items; open items are skipped.
  Duration bounded_length() const;

  friend bool operator==(const IntervalList&, const IntervalList&) = default;

 private:
  std::vector<Interval> items_;
};

/// Maximal intervals over which at least one input list holds.
IntervalList union_all(std::span<const IntervalList> lists);

/// Maximal intervals over which every input list holds. The input sequence
/// must be non-empty; an empty sequence is a caller bug.
IntervalList intersect_all(std::span<const IntervalList> lists);

/// Maximal intervals over which `base` holds and no subtrahend does.
IntervalList relative_complement_all(const IntervalList& base,
                                     std::span<const IntervalList> subtrahends);

/// Keeps the items strictly longer than `min_duration`. Open-ended items are
/// always kept: their final duration is unknown, so they cannot be excluded.
IntervalList intervals_longer_than(const IntervalList& list,
                                   Duration min_duration);

/// Pairwise helpers used by the *_all constructs.
IntervalList intersect(const IntervalList& a, const IntervalList& b);
IntervalList subtract(const IntervalList& base, const IntervalList& sub);

}  // namespace maricer

#endif  // MARICER_INTERVALS_HPP
