#ifndef MARICER_ENGINE_HPP
#define MARICER_ENGINE_HPP

#include <functional>
#include <map>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "maricer/intervals.hpp"

namespace maricer {

/// Entity/argument tuple of an event or fluent instance (vessel ids, area
/// ids, area types ...). Relational instances carry canonically ordered ids.
using Args = std::vector<std::string>;

/// A fluent instance plus the value whose intervals are being referred to.
struct FluentId {
  std::string name;
  Args args;
  std::string value = "true";

  std::string key() const;
  friend bool operator==(const FluentId&, const FluentId&) = default;
  friend auto operator<=>(const FluentId&, const FluentId&) = default;
};

/// An instantaneous input occurrence: critical events, spatial transitions
/// and velocity samples all arrive in this shape. `vals` carries the numeric
/// payload (for velocity: speed kn, course over ground deg, true heading deg).
struct InputEvent {
  std::string name;
  Args args;
  TimePoint t = 0;
  std::vector<double> vals;
};

/// Output unit: the maximal intervals of one fluent instance/value.
struct FluentAssertion {
  FluentId fluent;
  IntervalList intervals;
};

// ---------------------------------------------------------------------------
// Interval construction from initiation/termination points.
// ---------------------------------------------------------------------------

/// One initiation or termination point produced by the rules of a simple
/// fluent. `value` indexes the fluent's declared value list; a termination
/// with any_value set closes whichever value currently holds.
struct FluentPoint {
  TimePoint t = 0;
  bool is_initiation = false;
  int value = 0;
  bool any_value = false;
};

/// Boundary state of one fluent instance: it holds `value` since `start`,
/// with the latest initiation at `last_init` (drives the deadline clock).
struct CarriedState {
  int value = 0;
  TimePoint start = 0;
  TimePoint last_init = 0;
};

struct SweepResult {
  std::vector<IntervalList> per_value;
  std::optional<CarriedState> carried_at_boundary;
};

/// Turns a point stream into maximal intervals under the Event Calculus
/// effect convention: an initiation at T makes the value hold from T+1, a
/// termination at T ends it at T+1 (the value still holds at T itself).
/// When both fire at the same time-point, the termination closes the previous
/// interval and the initiation opens a new one at T+1; for the same value the
/// two coalesce, so holding simply continues. Duplicate initiations inside a
/// held interval are absorbed and reset the deadline clock. A deadline D
/// terminates the value at last_init + D when no point intervened. Whatever
/// still holds at `query_time` is reported open-ended.
///
/// `carried_in` seeds the sweep with the instance state at the window start;
/// `next_boundary` asks for the state snapshot to carry into the next window.
SweepResult sweep_points(std::vector<FluentPoint> points, int num_values,
                         std::optional<Duration> deadline,
                         const std::optional<CarriedState>& carried_in,
                         TimePoint query_time, TimePoint next_boundary);

// ---------------------------------------------------------------------------
// Rule API
// ---------------------------------------------------------------------------

/// What fires a rule: an input event by name, or the built-in start/end
/// events derived from another fluent's computed intervals.
struct Trigger {
  enum class Kind { event, fluent_start, fluent_end };
  Kind kind = Kind::event;
  std::string source;

  static Trigger on_event(std::string name) { return {Kind::event, std::move(name)}; }
  static Trigger on_start(std::string fluent) { return {Kind::fluent_start, std::move(fluent)}; }
  static Trigger on_end(std::string fluent) { return {Kind::fluent_end, std::move(fluent)}; }
};

/// A trigger firing, as seen by a rule body. For event triggers, args/vals
/// come from the event; for start/end triggers, args is the fluent instance
/// tuple and `value` its value symbol.
struct Occurrence {
  TimePoint t = 0;
  const Args* args = nullptr;
  std::span<const double> vals;
  std::string_view value;
};

class Engine;

/// Read access for rule bodies: same-epoch queries of already-evaluated
/// (lower-stratum) fluents.
class EpochContext {
 public:
  bool holds_at(const FluentId& fluent, TimePoint t) const;

 private:
  friend class Engine;
  explicit EpochContext(Engine& e) : engine_(e) {}
  Engine& engine_;
};

/// Collects the initiation/termination points a rule derives.
class PointSink {
 public:
  void initiate(Args args, std::string_view value, TimePoint t);
  void terminate(Args args, std::string_view value, TimePoint t);
  void terminate_all(Args args, TimePoint t);

 private:
  friend class Engine;
  struct State;
  PointSink(State& s, bool initiation_rule);
  State& state_;
  bool initiation_rule_;
};

using RuleFn = std::function<void(const Occurrence&, EpochContext&, PointSink&)>;

struct PointRule {
  Trigger trigger;
  RuleFn fn;
};

struct SimpleFluentDecl {
  std::string name;
  std::vector<std::string> values{"true"};
  std::optional<Duration> deadline;
  std::vector<PointRule> initiations;
  std::vector<PointRule> terminations;
  /// Fluents this one's rule bodies query through holds_at. Trigger sources
  /// are picked up automatically; list here only the holds_at references.
  std::vector<std::string> reads;
};

/// Composition tree of a statically determined fluent. Leaves refer to the
/// intervals of other fluents; interior nodes apply the interval constructs.
class SdExpr {
 public:
  enum class Op { leaf, unite, intersect, complement, longer_than };

  static SdExpr leaf(std::string fluent, Args args, std::string value = "true");
  static SdExpr unite(std::vector<SdExpr> children);
  static SdExpr intersect(std::vector<SdExpr> children);
  /// children[0] is the base; the rest are subtrahends.
  static SdExpr complement(SdExpr base, std::vector<SdExpr> subtrahends);
  static SdExpr longer_than(SdExpr child, Duration min_duration);

  Op op = Op::leaf;
  FluentId ref;                   // leaf only
  std::vector<SdExpr> children;   // interior nodes
  Duration min_duration = 0;      // longer_than only
};

struct SdFluentDecl {
  std::string name;
  std::string value = "true";
  /// Instance enumeration: the union of the instance tuples of these fluents.
  std::vector<std::string> drivers;
  /// Atemporal guard over the instance tuple; nullptr means always true.
  std::function<bool(const Args&)> guard;
  /// Builds the composition tree for one instance tuple.
  std::function<SdExpr(const Args&)> body;
  /// Every fluent the body may reference, for the dependency graph.
  std::vector<std::string> reads;
};

// ---------------------------------------------------------------------------
// Engine
// ---------------------------------------------------------------------------

struct WindowConfig {
  Duration size = 0;        // window span omega, seconds
  Duration slide = 0;       // advance step, seconds; size >= slide > 0
  TimePoint start_query_time = 0;
};

struct AssertAck {
  std::size_t accepted = 0;
  std::size_t late = 0;  // t at or before the forgetting boundary
};

struct WindowResult {
  TimePoint query_time = 0;
  std::vector<FluentAssertion> assertions;  // outputs, non-empty, sorted
  std::size_t input_events = 0;             // events inside the evaluated window
};

/// Run-time Event Calculus evaluator over a sliding window.
///
/// Declaration phase: declare events and fluents, mark outputs, finalize()
/// (cycle check over the dependency graph). Streaming phase: assert_events /
/// assert_fluent, then evaluate_window() per epoch. All fluents are computed
/// bottom-up along the dependency graph for the span (qt - size, qt]; fluents
/// still holding at the previous window's boundary persist across the slide
/// with their original start. evaluate_window advances the query time by
/// `slide` and forgets events at or before the new window start.
///
/// Late events inside the window (asserted after queries at the current query
/// time) invalidate only the memoized results of instances sharing an entity
/// with the new events; clean instances are not recomputed. This relies on
/// every fluent instance naming all entities it depends on in its args, which
/// holds for all declared maritime patterns.
///
/// Concurrency: single logical mutator; emitted values are immutable copies.
class Engine {
 public:
  explicit Engine(WindowConfig cfg);
  ~Engine();
  Engine(const Engine&) = delete;
  Engine& operator=(const Engine&) = delete;

  // --- declaration phase -------------------------------------------------
  void declare_event(std::string name, std::size_t arity);
  void declare_input_fluent(std::string name, std::vector<std::string> values = {"true"});
  void declare_simple(SimpleFluentDecl decl);
  void declare_sd(SdFluentDecl decl);
  void mark_output(const std::string& fluent_name);
  /// Validates declarations and the dependency DAG; throws on cycles.
  void finalize();

  // --- streaming phase ----------------------------------------------------
  AssertAck assert_events(std::span<const InputEvent> batch);
  /// Replaces the stored intervals of one input-fluent instance. Intervals
  /// wholly at or before the forgetting boundary are dropped.
  void assert_fluent(const FluentId& fluent, const IntervalList& intervals);

  /// Maximal intervals of the fluent at the current query time.
  IntervalList holds_for(const FluentId& fluent);
  bool holds_at(const FluentId& fluent, TimePoint t);
  /// Built-in start/end events of the fluent's current intervals: one start
  /// per left endpoint, one end per bounded right endpoint.
  std::vector<InputEvent> start_end_events(const FluentId& fluent);

  /// Evaluates every declared fluent for the current window, returns the
  /// non-empty assertions of output fluents, then slides and forgets.
  WindowResult evaluate_window();

  TimePoint query_time() const;
  TimePoint forget_boundary() const;
  Duration window_size() const;
  Duration window_slide() const;
  /// Events currently buffered with t inside (forget_boundary, query_time].
  std::size_t window_event_count() const;

 private:
  friend class EpochContext;
  friend class PointSink;
  struct Impl;
  std::unique_ptr<Impl> impl_;
};

}  // namespace maricer

#endif  // MARICER_ENGINE_HPP
