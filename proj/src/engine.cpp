#include "maricer/engine.hpp"

#include <algorithm>
#include <cassert>
#include <set>
#include <stdexcept>

namespace maricer {

std::string FluentId::key() const {
  std::string k = name;
  k += '(';
  for (std::size_t i = 0; i < args.size(); ++i) {
    if (i) k += ',';
    k += args[i];
  }
  k += ")=";
  k += value;
  return k;
}

// ---------------------------------------------------------------------------
// sweep_points
// ---------------------------------------------------------------------------

SweepResult sweep_points(std::vector<FluentPoint> points, int num_values,
                         std::optional<Duration> deadline,
                         const std::optional<CarriedState>& carried_in,
                         TimePoint query_time, TimePoint next_boundary) {
  std::sort(points.begin(), points.end(), [](const FluentPoint& a, const FluentPoint& b) {
    if (a.t != b.t) return a.t < b.t;
    if (a.is_initiation != b.is_initiation) return !a.is_initiation;  // terminations first
    if (a.any_value != b.any_value) return a.any_value;
    return a.value < b.value;
  });

  SweepResult out;
  out.per_value.resize(static_cast<std::size_t>(num_values));

  int cur = -1;
  TimePoint start = 0;
  TimePoint last_init = 0;
  bool boundary_captured = false;

  auto close = [&](TimePoint end) {
    if (end > start) out.per_value[static_cast<std::size_t>(cur)].append(start, end);
    cur = -1;
  };
  // A deadline expiry at e = last_init + D takes effect at e+1; it fires here
  // only when it happens strictly before `horizon` (a point at e itself is a
  // re-initiation or a simultaneous termination and is handled as a point).
  auto apply_deadline_before = [&](TimePoint horizon) {
    if (cur >= 0 && deadline && last_init + *deadline < horizon) close(last_init + *deadline + 1);
  };
  auto capture_boundary = [&]() {
    if (boundary_captured) return;
    boundary_captured = true;
    if (cur < 0) return;
    // Holds at next_boundary+1 unless the deadline expired at or before it.
    if (deadline && last_init + *deadline <= next_boundary) return;
    out.carried_at_boundary = CarriedState{cur, start, last_init};
  };

  if (carried_in) {
    cur = carried_in->value;
    start = carried_in->start;
    last_init = carried_in->last_init;
  }

  for (const FluentPoint& p : points) {
    if (p.t > next_boundary) capture_boundary();
    apply_deadline_before(p.t);
    if (p.is_initiation) {
      if (cur == p.value) {
        last_init = p.t;  // absorbed into the held interval; deadline resets
      } else {
        if (cur >= 0) close(p.t + 1);
        cur = p.value;
        start = p.t + 1;
        last_init = p.t;
      }
    } else if (cur >= 0 && (p.any_value || p.value == cur)) {
      close(p.t + 1);
    }
  }
  capture_boundary();
  apply_deadline_before(query_time);
  if (cur >= 0) out.per_value[static_cast<std::size_t>(cur)].append(Interval{start, kOpenEnd});
  return out;
}

// ---------------------------------------------------------------------------
// SdExpr builders
// ---------------------------------------------------------------------------

SdExpr SdExpr::leaf(std::string fluent, Args args, std::string value) {
  SdExpr e;
  e.op = Op::leaf;
  e.ref = FluentId{std::move(fluent), std::move(args), std::move(value)};
  return e;
}

SdExpr SdExpr::unite(std::vector<SdExpr> children) {
  SdExpr e;
  e.op = Op::unite;
  e.children = std::move(children);
  return e;
}

SdExpr SdExpr::intersect(std::vector<SdExpr> children) {
  if (children.empty()) throw std::invalid_argument("intersect of no operands");
  SdExpr e;
  e.op = Op::intersect;
  e.children = std::move(children);
  return e;
}

SdExpr SdExpr::complement(SdExpr base, std::vector<SdExpr> subtrahends) {
  SdExpr e;
  e.op = Op::complement;
  e.children.reserve(subtrahends.size() + 1);
  e.children.push_back(std::move(base));
  for (SdExpr& s : subtrahends) e.children.push_back(std::move(s));
  return e;
}

SdExpr SdExpr::longer_than(SdExpr child, Duration min_duration) {
  SdExpr e;
  e.op = Op::longer_than;
  e.children.push_back(std::move(child));
  e.min_duration = min_duration;
  return e;
}

// ---------------------------------------------------------------------------
// Engine internals
// ---------------------------------------------------------------------------

namespace {

enum class FluentKind { simple, sd, input };

struct EventDef {
  std::size_t arity = 0;
  std::vector<InputEvent> occ;
  bool sorted = true;
};

struct FluentDef {
  FluentKind kind = FluentKind::simple;
  std::string name;
  std::vector<std::string> values;
  std::map<std::string, int, std::less<>> value_index;
  bool is_output = false;
  // simple
  std::optional<Duration> deadline;
  std::vector<PointRule> initiations;
  std::vector<PointRule> terminations;
  // sd
  std::vector<std::string> drivers;
  std::function<bool(const Args&)> guard;
  std::function<SdExpr(const Args&)> body;
  // dependency edges (fluent names)
  std::vector<std::string> deps;

  int value_of(std::string_view v) const {
    auto it = value_index.find(v);
    if (it == value_index.end())
      throw std::invalid_argument("fluent " + name + ": unknown value '" + std::string(v) + "'");
    return it->second;
  }
};

struct InstanceResult {
  std::vector<IntervalList> per_value;
};

struct EpochDef {
  bool complete = false;
  bool in_progress = false;
  std::map<Args, InstanceResult> results;
  std::map<Args, std::optional<CarriedState>> staged_carried;
};

}  // namespace

struct PointSink::State {
  const FluentDef* def = nullptr;
  std::map<Args, std::vector<FluentPoint>>* points = nullptr;
};

void PointSink::initiate(Args args, std::string_view value, TimePoint t) {
  if (!initiation_rule_)
    throw std::logic_error("initiate() called from a termination rule of " + state_.def->name);
  (*state_.points)[std::move(args)].push_back(
      FluentPoint{t, true, state_.def->value_of(value), false});
}

void PointSink::terminate(Args args, std::string_view value, TimePoint t) {
  if (initiation_rule_)
    throw std::logic_error("terminate() called from an initiation rule of " + state_.def->name);
  (*state_.points)[std::move(args)].push_back(
      FluentPoint{t, false, state_.def->value_of(value), false});
}

void PointSink::terminate_all(Args args, TimePoint t) {
  if (initiation_rule_)
    throw std::logic_error("terminate_all() called from an initiation rule of " + state_.def->name);
  (*state_.points)[std::move(args)].push_back(FluentPoint{t, false, 0, true});
}

PointSink::PointSink(State& s, bool initiation_rule)
    : state_(s), initiation_rule_(initiation_rule) {}

struct Engine::Impl {
  WindowConfig cfg;
  TimePoint qt = 0;
  bool finalized = false;
  Engine* self = nullptr;

  std::map<std::string, EventDef, std::less<>> events;
  std::vector<FluentDef> defs;
  std::map<std::string, int, std::less<>> def_index;

  // per def index
  std::map<int, std::map<Args, std::vector<IntervalList>>> input_store;
  std::map<int, std::map<Args, CarriedState>> carried;

  std::vector<EpochDef> epoch;

  TimePoint boundary() const { return qt - cfg.size; }
  TimePoint next_boundary() const { return qt + cfg.slide - cfg.size; }

  int def_of(std::string_view name) const {
    auto it = def_index.find(name);
    if (it == def_index.end())
      throw std::invalid_argument("unknown fluent: " + std::string(name));
    return it->second;
  }

  void require_not_finalized() const {
    if (finalized) throw std::logic_error("declaration after finalize()");
  }
  void require_finalized() const {
    if (!finalized) throw std::logic_error("engine not finalized");
  }

  void add_def(FluentDef def) {
    require_not_finalized();
    if (def_index.count(def.name) || events.count(def.name))
      throw std::invalid_argument("duplicate declaration: " + def.name);
    for (std::size_t i = 0; i < def.values.size(); ++i)
      def.value_index[def.values[i]] = static_cast<int>(i);
    def_index[def.name] = static_cast<int>(defs.size());
    defs.push_back(std::move(def));
  }

  // --- dependency graph ----------------------------------------------------

  void check_cycles() const {
    enum { white, grey, black };
    std::vector<int> color(defs.size(), white);
    std::function<void(int)> visit = [&](int d) {
      color[static_cast<std::size_t>(d)] = grey;
      for (const std::string& dep : defs[static_cast<std::size_t>(d)].deps) {
        auto it = def_index.find(dep);
        if (it == def_index.end())
          throw std::invalid_argument("fluent " + defs[static_cast<std::size_t>(d)].name +
                                      " depends on undeclared fluent " + dep);
        int g = it->second;
        if (color[static_cast<std::size_t>(g)] == grey)
          throw std::invalid_argument("fluent dependency cycle involving " +
                                      defs[static_cast<std::size_t>(g)].name);
        if (color[static_cast<std::size_t>(g)] == white) visit(g);
      }
      color[static_cast<std::size_t>(d)] = black;
    };
    for (std::size_t d = 0; d < defs.size(); ++d)
      if (color[d] == white) visit(static_cast<int>(d));
  }

  void validate_triggers() const {
    for (const FluentDef& def : defs) {
      auto check = [&](const std::vector<PointRule>& rules) {
        for (const PointRule& r : rules) {
          if (r.trigger.kind == Trigger::Kind::event) {
            if (!events.count(r.trigger.source))
              throw std::invalid_argument("fluent " + def.name + " triggered by undeclared event " +
                                          r.trigger.source);
          } else if (!def_index.count(r.trigger.source)) {
            throw std::invalid_argument("fluent " + def.name +
                                        " triggered by undeclared fluent " + r.trigger.source);
          }
        }
      };
      check(def.initiations);
      check(def.terminations);
    }
  }

  // --- epoch evaluation ----------------------------------------------------

  EpochDef& ensure(int d) {
    EpochDef& ep = epoch[static_cast<std::size_t>(d)];
    if (ep.complete) return ep;
    FluentDef& def = defs[static_cast<std::size_t>(d)];
    if (ep.in_progress)
      throw std::logic_error("fluent dependency cycle at runtime: " + def.name);
    ep.in_progress = true;
    switch (def.kind) {
      case FluentKind::input:
        compute_input(d);
        break;
      case FluentKind::simple:
        compute_simple(d);
        break;
      case FluentKind::sd:
        compute_sd(d);
        break;
    }
    ep.in_progress = false;
    ep.complete = true;
    return ep;
  }

  void compute_input(int d) {
    EpochDef& ep = epoch[static_cast<std::size_t>(d)];
    auto sit = input_store.find(d);
    if (sit == input_store.end()) return;
    for (const auto& [args, lists] : sit->second) {
      if (ep.results.count(args)) continue;
      ep.results[args] = InstanceResult{lists};
    }
  }

  void run_rules(int d, const std::vector<PointRule>& rules, bool is_init,
                 std::map<Args, std::vector<FluentPoint>>& points) {
    FluentDef& def = defs[static_cast<std::size_t>(d)];
    PointSink::State st{&def, &points};
    EpochContext ctx(*self);
    const TimePoint lo = boundary();
    for (const PointRule& rule : rules) {
      PointSink sink(st, is_init);
      if (rule.trigger.kind == Trigger::Kind::event) {
        EventDef& ed = events.at(rule.trigger.source);
        if (!ed.sorted) {
          std::stable_sort(ed.occ.begin(), ed.occ.end(),
                           [](const InputEvent& a, const InputEvent& b) { return a.t < b.t; });
          ed.sorted = true;
        }
        for (const InputEvent& e : ed.occ) {
          if (e.t <= lo) continue;
          if (e.t > qt) break;
          Occurrence occ{e.t, &e.args, e.vals, {}};
          rule.fn(occ, ctx, sink);
        }
      } else {
        int g = def_of(rule.trigger.source);
        EpochDef& gep = ensure(g);
        const FluentDef& gdef = defs[static_cast<std::size_t>(g)];
        const bool want_start = rule.trigger.kind == Trigger::Kind::fluent_start;
        for (const auto& [gargs, res] : gep.results) {
          for (std::size_t vi = 0; vi < res.per_value.size(); ++vi) {
            for (const Interval& iv : res.per_value[vi]) {
              TimePoint t;
              if (want_start) {
                t = iv.start;
              } else {
                if (iv.is_open()) continue;  // open intervals emit no end
                t = iv.end;
              }
              if (t <= lo || t > qt) continue;
              Occurrence occ{t, &gargs, {}, gdef.values[vi]};
              rule.fn(occ, ctx, sink);
            }
          }
        }
      }
    }
  }

  void compute_simple(int d) {
    FluentDef& def = defs[static_cast<std::size_t>(d)];
    EpochDef& ep = epoch[static_cast<std::size_t>(d)];
    std::map<Args, std::vector<FluentPoint>> points;
    run_rules(d, def.initiations, true, points);
    run_rules(d, def.terminations, false, points);
    if (auto cit = carried.find(d); cit != carried.end())
      for (const auto& [args, state] : cit->second) points.try_emplace(args);
    const int nvals = static_cast<int>(def.values.size());
    for (auto& [args, pts] : points) {
      if (ep.results.count(args)) continue;  // clean memoized instance
      std::optional<CarriedState> cin;
      if (auto cit = carried.find(d); cit != carried.end())
        if (auto it = cit->second.find(args); it != cit->second.end()) cin = it->second;
      SweepResult r =
          sweep_points(std::move(pts), nvals, def.deadline, cin, qt, next_boundary());
      ep.staged_carried[args] = r.carried_at_boundary;
      ep.results[args] = InstanceResult{std::move(r.per_value)};
    }
  }

  IntervalList eval_expr(const SdExpr& e) {
    switch (e.op) {
      case SdExpr::Op::leaf: {
        int g = def_of(e.ref.name);
        const FluentDef& gdef = defs[static_cast<std::size_t>(g)];
        int vi = gdef.value_of(e.ref.value);
        EpochDef& gep = ensure(g);
        auto it = gep.results.find(e.ref.args);
        if (it == gep.results.end()) return {};
        return it->second.per_value[static_cast<std::size_t>(vi)];
      }
      case SdExpr::Op::unite: {
        std::vector<IntervalList> ls;
        ls.reserve(e.children.size());
        for (const SdExpr& c : e.children) ls.push_back(eval_expr(c));
        return union_all(ls);
      }
      case SdExpr::Op::intersect: {
        std::vector<IntervalList> ls;
        ls.reserve(e.children.size());
        for (const SdExpr& c : e.children) ls.push_back(eval_expr(c));
        return intersect_all(ls);
      }
      case SdExpr::Op::complement: {
        IntervalList base = eval_expr(e.children[0]);
        std::vector<IntervalList> subs;
        subs.reserve(e.children.size() - 1);
        for (std::size_t i = 1; i < e.children.size(); ++i) subs.push_back(eval_expr(e.children[i]));
        return relative_complement_all(base, subs);
      }
      case SdExpr::Op::longer_than:
        return intervals_longer_than(eval_expr(e.children[0]), e.min_duration);
    }
    return {};
  }

  void compute_sd(int d) {
    FluentDef& def = defs[static_cast<std::size_t>(d)];
    EpochDef& ep = epoch[static_cast<std::size_t>(d)];
    std::set<Args> instances;
    for (const std::string& driver : def.drivers) {
      int g = def_of(driver);
      EpochDef& gep = ensure(g);
      for (const auto& [args, res] : gep.results) instances.insert(args);
    }
    for (const Args& args : instances) {
      if (ep.results.count(args)) continue;
      if (def.guard && !def.guard(args)) continue;
      IntervalList r = eval_expr(def.body(args));
      ep.results[args] = InstanceResult{{std::move(r)}};
    }
  }

  void invalidate(const std::set<std::string>& dirty) {
    if (dirty.empty()) return;
    auto touches = [&](const Args& args) {
      for (const std::string& a : args)
        if (dirty.count(a)) return true;
      return false;
    };
    for (EpochDef& ep : epoch) {
      if (!ep.complete && ep.results.empty()) continue;
      ep.complete = false;
      std::erase_if(ep.results, [&](const auto& kv) { return touches(kv.first); });
      std::erase_if(ep.staged_carried, [&](const auto& kv) { return touches(kv.first); });
    }
  }

  void advance() {
    // Commit per-instance boundary state recorded during the epoch sweeps.
    for (std::size_t d = 0; d < defs.size(); ++d) {
      if (defs[d].kind != FluentKind::simple) continue;
      for (const auto& [args, state] : epoch[d].staged_carried) {
        if (state)
          carried[static_cast<int>(d)][args] = *state;
        else if (auto cit = carried.find(static_cast<int>(d)); cit != carried.end())
          cit->second.erase(args);
      }
    }
    qt += cfg.slide;
    const TimePoint lo = boundary();
    for (auto& [name, ed] : events) {
      std::erase_if(ed.occ, [&](const InputEvent& e) { return e.t <= lo; });
    }
    for (auto& [d, store] : input_store) {
      for (auto& [args, lists] : store) {
        for (IntervalList& list : lists) {
          IntervalList kept;
          for (const Interval& iv : list)
            if (iv.is_open() || iv.end > lo) kept.append(iv);
          list = std::move(kept);
        }
      }
    }
    for (EpochDef& ep : epoch) ep = EpochDef{};
  }
};

// ---------------------------------------------------------------------------
// Engine public surface
// ---------------------------------------------------------------------------

Engine::Engine(WindowConfig cfg) : impl_(std::make_unique<Impl>()) {
  if (cfg.slide <= 0 || cfg.size < cfg.slide)
    throw std::invalid_argument("window requires size >= slide > 0");
  impl_->cfg = cfg;
  impl_->qt = cfg.start_query_time;
  impl_->self = this;
}

Engine::~Engine() = default;

void Engine::declare_event(std::string name, std::size_t arity) {
  impl_->require_not_finalized();
  if (impl_->events.count(name) || impl_->def_index.count(name))
    throw std::invalid_argument("duplicate declaration: " + name);
  impl_->events[std::move(name)] = EventDef{arity, {}, true};
}

void Engine::declare_input_fluent(std::string name, std::vector<std::string> values) {
  FluentDef def;
  def.kind = FluentKind::input;
  def.name = std::move(name);
  def.values = std::move(values);
  impl_->add_def(std::move(def));
}

void Engine::declare_simple(SimpleFluentDecl decl) {
  if (decl.initiations.empty())
    throw std::invalid_argument("simple fluent " + decl.name + " needs an initiation rule");
  if (decl.deadline && *decl.deadline <= 0)
    throw std::invalid_argument("fluent deadline must be positive");
  FluentDef def;
  def.kind = FluentKind::simple;
  def.name = decl.name;
  def.values = std::move(decl.values);
  def.deadline = decl.deadline;
  def.initiations = std::move(decl.initiations);
  def.terminations = std::move(decl.terminations);
  def.deps = std::move(decl.reads);
  for (const auto& rules : {std::cref(def.initiations), std::cref(def.terminations)})
    for (const PointRule& r : rules.get())
      if (r.trigger.kind != Trigger::Kind::event) def.deps.push_back(r.trigger.source);
  impl_->add_def(std::move(def));
}

void Engine::declare_sd(SdFluentDecl decl) {
  if (!decl.body) throw std::invalid_argument("sd fluent " + decl.name + " needs a body");
  FluentDef def;
  def.kind = FluentKind::sd;
  def.name = decl.name;
  def.values = {decl.value};
  def.drivers = decl.drivers;
  def.guard = std::move(decl.guard);
  def.body = std::move(decl.body);
  def.deps = std::move(decl.reads);
  for (const std::string& drv : def.drivers) def.deps.push_back(drv);
  impl_->add_def(std::move(def));
}

void Engine::mark_output(const std::string& fluent_name) {
  impl_->defs[static_cast<std::size_t>(impl_->def_of(fluent_name))].is_output = true;
}

void Engine::finalize() {
  impl_->require_not_finalized();
  impl_->validate_triggers();
  impl_->check_cycles();
  impl_->epoch.assign(impl_->defs.size(), EpochDef{});
  impl_->finalized = true;
}

AssertAck Engine::assert_events(std::span<const InputEvent> batch) {
  impl_->require_finalized();
  AssertAck ack;
  std::set<std::string> dirty;
  const TimePoint lo = impl_->boundary();
  for (const InputEvent& e : batch) {
    auto it = impl_->events.find(e.name);
    if (it == impl_->events.end()) throw std::invalid_argument("undeclared event: " + e.name);
    if (e.args.size() != it->second.arity)
      throw std::invalid_argument("event " + e.name + ": arity mismatch");
    if (e.t <= lo) {
      ++ack.late;
      continue;
    }
    it->second.occ.push_back(e);
    it->second.sorted = false;
    ++ack.accepted;
    for (const std::string& a : e.args) dirty.insert(a);
  }
  impl_->invalidate(dirty);
  return ack;
}

void Engine::assert_fluent(const FluentId& fluent, const IntervalList& intervals) {
  impl_->require_finalized();
  int d = impl_->def_of(fluent.name);
  FluentDef& def = impl_->defs[static_cast<std::size_t>(d)];
  if (def.kind != FluentKind::input)
    throw std::invalid_argument(fluent.name + " is not an input fluent");
  int vi = def.value_of(fluent.value);
  auto& lists = impl_->input_store[d][fluent.args];
  lists.resize(def.values.size());
  IntervalList kept;
  const TimePoint lo = impl_->boundary();
  for (const Interval& iv : intervals)
    if (iv.is_open() || iv.end > lo) kept.append(iv);
  lists[static_cast<std::size_t>(vi)] = std::move(kept);
  impl_->invalidate(std::set<std::string>(fluent.args.begin(), fluent.args.end()));
}

IntervalList Engine::holds_for(const FluentId& fluent) {
  impl_->require_finalized();
  int d = impl_->def_of(fluent.name);
  const FluentDef& def = impl_->defs[static_cast<std::size_t>(d)];
  int vi = def.value_of(fluent.value);
  EpochDef& ep = impl_->ensure(d);
  auto it = ep.results.find(fluent.args);
  if (it == ep.results.end()) return {};
  return it->second.per_value[static_cast<std::size_t>(vi)];
}

bool Engine::holds_at(const FluentId& fluent, TimePoint t) {
  return holds_for(fluent).contains(t);
}

std::vector<InputEvent> Engine::start_end_events(const FluentId& fluent) {
  IntervalList list = holds_for(fluent);
  std::vector<InputEvent> out;
  for (const Interval& iv : list) {
    out.push_back(InputEvent{"start", {fluent.key()}, iv.start, {}});
    if (!iv.is_open()) out.push_back(InputEvent{"end", {fluent.key()}, iv.end, {}});
  }
  std::sort(out.begin(), out.end(),
            [](const InputEvent& a, const InputEvent& b) { return a.t < b.t; });
  return out;
}

WindowResult Engine::evaluate_window() {
  impl_->require_finalized();
  WindowResult res;
  res.query_time = impl_->qt;
  res.input_events = window_event_count();
  for (std::size_t d = 0; d < impl_->defs.size(); ++d) impl_->ensure(static_cast<int>(d));
  for (std::size_t d = 0; d < impl_->defs.size(); ++d) {
    const FluentDef& def = impl_->defs[d];
    if (!def.is_output) continue;
    for (const auto& [args, r] : impl_->epoch[d].results) {
      for (std::size_t vi = 0; vi < r.per_value.size(); ++vi) {
        if (r.per_value[vi].empty()) continue;
        res.assertions.push_back(
            FluentAssertion{FluentId{def.name, args, def.values[vi]}, r.per_value[vi]});
      }
    }
  }
  std::sort(res.assertions.begin(), res.assertions.end(),
            [](const FluentAssertion& a, const FluentAssertion& b) { return a.fluent < b.fluent; });
  impl_->advance();
  return res;
}

TimePoint Engine::query_time() const { return impl_->qt; }
TimePoint Engine::forget_boundary() const { return impl_->boundary(); }
Duration Engine::window_size() const { return impl_->cfg.size; }
Duration Engine::window_slide() const { return impl_->cfg.slide; }

std::size_t Engine::window_event_count() const {
  std::size_t n = 0;
  const TimePoint lo = impl_->boundary();
  for (const auto& [name, ed] : impl_->events)
    for (const InputEvent& e : ed.occ)
      if (e.t > lo && e.t <= impl_->qt) ++n;
  return n;
}

bool EpochContext::holds_at(const FluentId& fluent, TimePoint t) const {
  return engine_.holds_at(fluent, t);
}

}  // namespace maricer
