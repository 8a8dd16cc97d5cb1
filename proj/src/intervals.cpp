#include "maricer/intervals.hpp"

#include <algorithm>
#include <stdexcept>

namespace maricer {

void IntervalList::append(Interval iv) {
  if (iv.start >= iv.end) throw std::invalid_argument("empty or inverted interval");
  if (!items_.empty()) {
    Interval& last = items_.back();
    if (iv.start < last.start) throw std::invalid_argument("append out of order");
    if (last.is_open()) return;  // open tail already covers everything after it
    if (iv.start <= last.end) {  // overlap or adjacency: one maximal interval
      last.end = std::max(last.end, iv.end);
      return;
    }
  }
  items_.push_back(iv);
}

bool IntervalList::contains(TimePoint t) const {
  // First item with start > t; the candidate is its predecessor.
  auto it = std::upper_bound(items_.begin(), items_.end(), t,
                             [](TimePoint v, const Interval& iv) { return v < iv.start; });
  if (it == items_.begin()) return false;
  return std::prev(it)->contains(t);
}

Duration IntervalList::bounded_length() const {
  Duration total = 0;
  for (const Interval& iv : items_)
    if (!iv.is_open()) total += iv.end - iv.start;
  return total;
}

IntervalList union_all(std::span<const IntervalList> lists) {
  std::vector<Interval> all;
  std::size_t n = 0;
  for (const IntervalList& l : lists) n += l.size();
  all.reserve(n);
  for (const IntervalList& l : lists) all.insert(all.end(), l.begin(), l.end());
  std::sort(all.begin(), all.end(),
            [](const Interval& a, const Interval& b) { return a.start < b.start; });
  IntervalList out;
  for (const Interval& iv : all) out.append(iv);
  return out;
}

IntervalList intersect(const IntervalList& a, const IntervalList& b) {
  IntervalList out;
  std::size_t i = 0, j = 0;
  while (i < a.size() && j < b.size()) {
    TimePoint lo = std::max(a[i].start, b[j].start);
    TimePoint hi = std::min(a[i].end, b[j].end);
    if (lo < hi) out.append(lo, hi);
    if (a[i].end < b[j].end)
      ++i;
    else
      ++j;
  }
  return out;
}

IntervalList intersect_all(std::span<const IntervalList> lists) {
  if (lists.empty()) throw std::invalid_argument("intersect_all over empty sequence");
  IntervalList acc = lists[0];
  for (std::size_t k = 1; k < lists.size() && !acc.empty(); ++k)
    acc = intersect(acc, lists[k]);
  return acc;
}

IntervalList subtract(const IntervalList& base, const IntervalList& sub) {
  IntervalList out;
  std::size_t j = 0;
  for (const Interval& iv : base) {
    TimePoint cur = iv.start;
    while (j < sub.size() && sub[j].end <= cur) ++j;
    std::size_t k = j;
    while (cur < iv.end) {
      if (k >= sub.size() || sub[k].start >= iv.end) {
        out.append(cur, iv.end);
        break;
      }
      if (sub[k].start > cur) out.append(cur, sub[k].start);
      if (sub[k].end >= iv.end) break;
      cur = std::max(cur, sub[k].end);
      ++k;
    }
  }
  return out;
}

IntervalList relative_complement_all(const IntervalList& base,
                                     std::span<const IntervalList> subtrahends) {
  if (subtrahends.empty()) return base;
  return subtract(base, union_all(subtrahends));
}

IntervalList intervals_longer_than(const IntervalList& list, Duration min_duration) {
  if (min_duration < 0) throw std::invalid_argument("negative duration threshold");
  IntervalList out;
  for (const Interval& iv : list)
    if (iv.is_open() || iv.end - iv.start > min_duration) out.append(iv);
  return out;
}

}  // namespace maricer
