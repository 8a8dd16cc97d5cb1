#include "maricer/engine.hpp"

#include <map>
#include <random>
#include <set>

#include "doctest.h"

using namespace maricer;

namespace {

// Direct per-time-point simulation of the effect semantics: an event at tau
// changes the state that holds at tau+1. Initiation wins over a simultaneous
// termination (the termination closes the previous interval, the initiation
// opens the next one, and the two coalesce). A deadline D acts as a
// termination at last_init + D.
std::vector<bool> tick_oracle(const std::multiset<TimePoint>& inits,
                              const std::multiset<TimePoint>& terms,
                              std::optional<Duration> deadline, TimePoint qt) {
  std::vector<bool> holds(static_cast<std::size_t>(qt) + 1, false);
  bool holding = false;
  TimePoint last_init = 0;
  for (TimePoint tau = 0; tau < qt; ++tau) {
    bool init = inits.count(tau) > 0;
    bool term = terms.count(tau) > 0;
    bool expiry = holding && deadline && last_init + *deadline == tau;
    if (init) {
      holding = true;
      last_init = tau;
    } else if (holding && (term || expiry)) {
      holding = false;
    }
    holds[static_cast<std::size_t>(tau) + 1] = holding;
  }
  return holds;
}

std::vector<FluentPoint> to_points(const std::multiset<TimePoint>& inits,
                                   const std::multiset<TimePoint>& terms) {
  std::vector<FluentPoint> pts;
  for (TimePoint t : inits) pts.push_back({t, true, 0, false});
  for (TimePoint t : terms) pts.push_back({t, false, 0, false});
  return pts;
}

// A one-entity boolean fluent driven by "on"/"off" events, for engine tests.
void declare_lamp(Engine& e, std::optional<Duration> deadline = std::nullopt) {
  e.declare_event("on", 1);
  e.declare_event("off", 1);
  SimpleFluentDecl lamp;
  lamp.name = "lamp";
  lamp.deadline = deadline;
  lamp.initiations.push_back({Trigger::on_event("on"),
                              [](const Occurrence& o, EpochContext&, PointSink& s) {
                                s.initiate({(*o.args)[0]}, "true", o.t);
                              }});
  lamp.terminations.push_back({Trigger::on_event("off"),
                               [](const Occurrence& o, EpochContext&, PointSink& s) {
                                 s.terminate_all({(*o.args)[0]}, o.t);
                               }});
  e.declare_simple(std::move(lamp));
  e.mark_output("lamp");
}

InputEvent ev(std::string name, std::string entity, TimePoint t) {
  return InputEvent{std::move(name), {std::move(entity)}, t, {}};
}

// Aggregation used to compare sliding-window output with a batch run: closed
// intervals from every window plus the open tails of the final window only.
std::map<FluentId, IntervalList> aggregate(const std::vector<WindowResult>& windows) {
  std::map<FluentId, std::vector<Interval>> raw;
  for (std::size_t w = 0; w < windows.size(); ++w) {
    bool last = w + 1 == windows.size();
    for (const FluentAssertion& a : windows[w].assertions)
      for (const Interval& iv : a.intervals)
        if (!iv.is_open() || last) raw[a.fluent].push_back(iv);
  }
  std::map<FluentId, IntervalList> out;
  for (auto& [id, ivs] : raw) {
    std::sort(ivs.begin(), ivs.end(),
              [](const Interval& a, const Interval& b) { return a.start < b.start; });
    IntervalList l;
    for (const Interval& iv : ivs) l.append(iv);
    if (!l.empty()) out[id] = std::move(l);
  }
  return out;
}

}  // namespace

TEST_CASE("sweep: single initiation/termination pair") {
  SweepResult r = sweep_points(to_points({10}, {20}), 1, std::nullopt, std::nullopt, 100, 100);
  CHECK(r.per_value[0] == IntervalList{{11, 21}});
}

TEST_CASE("sweep: duplicate initiation absorbed") {
  SweepResult r = sweep_points(to_points({10, 15}, {20}), 1, std::nullopt, std::nullopt, 100, 100);
  CHECK(r.per_value[0] == IntervalList{{11, 21}});
}

TEST_CASE("sweep: deadline closes without termination") {
  SweepResult r = sweep_points(to_points({0}, {}), 1, Duration{600}, std::nullopt, 1000, 1000);
  CHECK(r.per_value[0] == IntervalList{{1, 601}});
}

TEST_CASE("sweep: re-initiation resets the deadline clock") {
  SweepResult r = sweep_points(to_points({0, 300}, {}), 1, Duration{600}, std::nullopt, 2000, 2000);
  CHECK(r.per_value[0] == IntervalList{{1, 901}});
  // exactly at the deadline keeps it alive
  r = sweep_points(to_points({0, 600}, {}), 1, Duration{600}, std::nullopt, 2000, 2000);
  CHECK(r.per_value[0] == IntervalList{{1, 1201}});
}

TEST_CASE("sweep: still holding at query time stays open") {
  SweepResult r = sweep_points(to_points({10}, {}), 1, std::nullopt, std::nullopt, 50, 50);
  CHECK(r.per_value[0] == IntervalList{{11, kOpenEnd}});
  // deadline not yet reached at query time
  r = sweep_points(to_points({10}, {}), 1, Duration{600}, std::nullopt, 300, 300);
  CHECK(r.per_value[0] == IntervalList{{11, kOpenEnd}});
}

TEST_CASE("sweep: simultaneous termination and initiation keeps holding") {
  std::vector<FluentPoint> pts{{10, true, 0, false}, {40, false, 0, false}, {40, true, 0, false},
                               {80, false, 0, false}};
  SweepResult r = sweep_points(pts, 1, std::nullopt, std::nullopt, 100, 100);
  CHECK(r.per_value[0] == IntervalList{{11, 81}});
}

TEST_CASE("sweep: value switch terminates the previous value") {
  // value 0 initiated at 10, value 1 initiated at 30, all terminated at 50
  std::vector<FluentPoint> pts{
      {10, true, 0, false}, {30, true, 1, false}, {50, false, 0, true}, {50, false, 1, true}};
  SweepResult r = sweep_points(pts, 2, std::nullopt, std::nullopt, 100, 100);
  CHECK(r.per_value[0] == IntervalList{{11, 31}});
  CHECK(r.per_value[1] == IntervalList{{31, 51}});
}

TEST_CASE("sweep agrees with tick oracle on random scenarios") {
  std::mt19937_64 rng(7);
  std::uniform_int_distribution<TimePoint> pick(0, 255);
  std::uniform_int_distribution<int> count(0, 12);
  std::uniform_int_distribution<int> dl_pick(0, 3);
  for (int iter = 0; iter < 2000; ++iter) {
    std::multiset<TimePoint> inits, terms;
    for (int i = count(rng); i > 0; --i) inits.insert(pick(rng));
    for (int i = count(rng); i > 0; --i) terms.insert(pick(rng));
    std::optional<Duration> deadline;
    int d = dl_pick(rng);
    if (d > 0) deadline = d * 20;
    const TimePoint qt = 256;
    SweepResult r = sweep_points(to_points(inits, terms), 1, deadline, std::nullopt, qt, qt);
    std::vector<bool> expect = tick_oracle(inits, terms, deadline, qt);
    for (TimePoint t = 0; t <= qt; ++t)
      REQUIRE(r.per_value[0].contains(t) == expect[static_cast<std::size_t>(t)]);
  }
}

TEST_CASE("engine: holds_for, holds_at and start_end_events") {
  Engine e(WindowConfig{1000, 1000, 1000});
  declare_lamp(e);
  e.finalize();
  std::vector<InputEvent> batch{ev("on", "v1", 10), ev("off", "v1", 20), ev("on", "v1", 500)};
  AssertAck ack = e.assert_events(batch);
  CHECK(ack.accepted == 3);
  CHECK(ack.late == 0);

  FluentId lamp{"lamp", {"v1"}, "true"};
  CHECK(e.holds_for(lamp) == IntervalList{{11, 21}, {501, kOpenEnd}});
  CHECK_FALSE(e.holds_at(lamp, 5));
  CHECK(e.holds_at(lamp, 11));
  CHECK(e.holds_at(lamp, 20));
  CHECK_FALSE(e.holds_at(lamp, 21));
  CHECK(e.holds_at(lamp, 999));

  auto edges = e.start_end_events(lamp);
  REQUIRE(edges.size() == 3);  // open interval emits no end
  CHECK(edges[0].name == "start");
  CHECK(edges[0].t == 11);
  CHECK(edges[1].name == "end");
  CHECK(edges[1].t == 21);
  CHECK(edges[2].name == "start");
  CHECK(edges[2].t == 501);

  CHECK(e.holds_for(FluentId{"lamp", {"nobody"}, "true"}).empty());
  CHECK_THROWS_AS(e.holds_for(FluentId{"nosuch", {"v1"}, "true"}), std::invalid_argument);
  CHECK_THROWS_AS(e.holds_for(FluentId{"lamp", {"v1"}, "banana"}), std::invalid_argument);
}

TEST_CASE("engine: late events are rejected and counted") {
  Engine e(WindowConfig{100, 50, 200});  // window (100, 200]
  declare_lamp(e);
  e.finalize();
  std::vector<InputEvent> batch{ev("on", "v1", 100), ev("on", "v2", 150)};
  AssertAck ack = e.assert_events(batch);
  CHECK(ack.late == 1);
  CHECK(ack.accepted == 1);
  CHECK(e.holds_for(FluentId{"lamp", {"v1"}, "true"}).empty());
  CHECK(e.holds_for(FluentId{"lamp", {"v2"}, "true"}) == IntervalList{{151, kOpenEnd}});
}

TEST_CASE("engine: empty batch and empty window") {
  Engine e(WindowConfig{100, 100, 100});
  declare_lamp(e);
  e.finalize();
  CHECK(e.assert_events({}).accepted == 0);
  WindowResult r = e.evaluate_window();
  CHECK(r.assertions.empty());
  CHECK(r.input_events == 0);
  CHECK(e.query_time() == 200);
}

TEST_CASE("engine: fluent persists across the slide with its original start") {
  Engine e(WindowConfig{100, 100, 100});
  declare_lamp(e);
  e.finalize();
  e.assert_events(std::vector<InputEvent>{ev("on", "v1", 50)});
  WindowResult w1 = e.evaluate_window();
  REQUIRE(w1.assertions.size() == 1);
  CHECK(w1.assertions[0].intervals == IntervalList{{51, kOpenEnd}});

  e.assert_events(std::vector<InputEvent>{ev("off", "v1", 150)});
  WindowResult w2 = e.evaluate_window();
  REQUIRE(w2.assertions.size() == 1);
  // start carried from the previous window, termination applied in this one
  CHECK(w2.assertions[0].intervals == IntervalList{{51, 151}});
}

TEST_CASE("engine: deadline fires across the slide") {
  Engine e(WindowConfig{100, 100, 100});
  declare_lamp(e, Duration{120});
  e.finalize();
  e.assert_events(std::vector<InputEvent>{ev("on", "v1", 50)});
  WindowResult w1 = e.evaluate_window();
  CHECK(w1.assertions[0].intervals == IntervalList{{51, kOpenEnd}});
  WindowResult w2 = e.evaluate_window();  // no new events; expiry at 170
  REQUIRE(w2.assertions.size() == 1);
  CHECK(w2.assertions[0].intervals == IntervalList{{51, 171}});
  WindowResult w3 = e.evaluate_window();  // fully forgotten
  CHECK(w3.assertions.empty());
}

TEST_CASE("engine: sliding windows equal batch on random streams") {
  std::mt19937_64 rng(20160131);
  for (int iter = 0; iter < 40; ++iter) {
    const TimePoint horizon = 1000;
    std::uniform_int_distribution<TimePoint> pick(1, horizon);
    std::uniform_int_distribution<int> count(0, 30);
    std::uniform_int_distribution<int> entity(1, 3);
    std::vector<InputEvent> events;
    for (int i = count(rng); i > 0; --i)
      events.push_back(ev("on", "v" + std::to_string(entity(rng)), pick(rng)));
    for (int i = count(rng); i > 0; --i)
      events.push_back(ev("off", "v" + std::to_string(entity(rng)), pick(rng)));
    std::sort(events.begin(), events.end(),
              [](const InputEvent& a, const InputEvent& b) { return a.t < b.t; });

    std::optional<Duration> deadline;
    if (iter % 3 == 1) deadline = 90;

    const Duration slide = 150;
    for (Duration size : {Duration{150}, Duration{300}}) {
      // windows end at k*slide until the horizon is covered
      TimePoint final_qt = 0;
      std::vector<WindowResult> windows;
      Engine w(WindowConfig{size, slide, slide});
      declare_lamp(w, deadline);
      w.finalize();
      std::size_t fed = 0;
      while (true) {
        TimePoint qt = w.query_time();
        std::vector<InputEvent> batch;
        while (fed < events.size() && events[fed].t <= qt) batch.push_back(events[fed++]);
        AssertAck ack = w.assert_events(batch);
        REQUIRE(ack.late == 0);
        windows.push_back(w.evaluate_window());
        final_qt = qt;
        if (qt >= horizon) break;
      }

      Engine b(WindowConfig{final_qt, final_qt, final_qt});
      declare_lamp(b, deadline);
      b.finalize();
      b.assert_events(events);
      std::vector<WindowResult> batch_windows{b.evaluate_window()};

      auto lhs = aggregate(windows);
      auto rhs = aggregate(batch_windows);
      REQUIRE(lhs == rhs);
    }
  }
}

TEST_CASE("engine: deadline property on random streams") {
  std::mt19937_64 rng(99);
  std::uniform_int_distribution<TimePoint> pick(1, 900);
  const Duration D = 75;
  for (int iter = 0; iter < 200; ++iter) {
    std::multiset<TimePoint> inits, terms;
    for (int i = 0; i < 15; ++i) inits.insert(pick(rng));
    for (int i = 0; i < 5; ++i) terms.insert(pick(rng));
    SweepResult r = sweep_points(to_points(inits, terms), 1, D, std::nullopt, 1000, 1000);
    for (const Interval& iv : r.per_value[0]) {
      if (iv.is_open()) continue;
      if (iv.end - iv.start > D) {
        // must contain a re-initiation strictly inside
        bool reinit = false;
        for (TimePoint t : inits)
          if (t >= iv.start && t < iv.end - 1) reinit = true;
        CHECK(reinit);
      }
    }
  }
}

TEST_CASE("engine: multi-valued fluent switches values deterministically") {
  Engine e(WindowConfig{1000, 1000, 1000});
  e.declare_event("mode", 1);  // args: entity; vals[0]: 0 -> A, 1 -> B, 2 -> off
  SimpleFluentDecl f;
  f.name = "state";
  f.values = {"a", "b"};
  f.initiations.push_back({Trigger::on_event("mode"),
                           [](const Occurrence& o, EpochContext&, PointSink& s) {
                             if (o.vals[0] == 0) s.initiate({(*o.args)[0]}, "a", o.t);
                             if (o.vals[0] == 1) s.initiate({(*o.args)[0]}, "b", o.t);
                           }});
  f.terminations.push_back({Trigger::on_event("mode"),
                            [](const Occurrence& o, EpochContext&, PointSink& s) {
                              if (o.vals[0] == 2) s.terminate_all({(*o.args)[0]}, o.t);
                            }});
  e.declare_simple(std::move(f));
  e.mark_output("state");
  e.finalize();

  std::vector<InputEvent> batch{
      {"mode", {"v"}, 10, {0}}, {"mode", {"v"}, 30, {1}}, {"mode", {"v"}, 60, {2}}};
  e.assert_events(batch);
  CHECK(e.holds_for(FluentId{"state", {"v"}, "a"}) == IntervalList{{11, 31}});
  CHECK(e.holds_for(FluentId{"state", {"v"}, "b"}) == IntervalList{{31, 61}});
}

TEST_CASE("engine: statically determined fluents compose dependencies") {
  Engine e(WindowConfig{1000, 1000, 1000});
  declare_lamp(e);
  e.declare_event("hum_on", 1);
  e.declare_event("hum_off", 1);
  SimpleFluentDecl hum;
  hum.name = "hum";
  hum.initiations.push_back({Trigger::on_event("hum_on"),
                             [](const Occurrence& o, EpochContext&, PointSink& s) {
                               s.initiate({(*o.args)[0]}, "true", o.t);
                             }});
  hum.terminations.push_back({Trigger::on_event("hum_off"),
                              [](const Occurrence& o, EpochContext&, PointSink& s) {
                                s.terminate_all({(*o.args)[0]}, o.t);
                              }});
  e.declare_simple(std::move(hum));

  SdFluentDecl both;
  both.name = "both";
  both.drivers = {"lamp"};
  both.reads = {"lamp", "hum"};
  both.body = [](const Args& a) {
    return SdExpr::longer_than(
        SdExpr::intersect({SdExpr::leaf("lamp", a), SdExpr::leaf("hum", a)}), 10);
  };
  e.declare_sd(std::move(both));
  e.mark_output("both");
  e.finalize();

  std::vector<InputEvent> batch{ev("on", "v", 10),      ev("hum_on", "v", 20),
                                ev("hum_off", "v", 40), ev("hum_on", "v", 50),
                                ev("hum_off", "v", 55), ev("off", "v", 100)};
  e.assert_events(batch);
  // intersection pieces: [21,41) len 20 kept, [51,56) len 5 dropped
  CHECK(e.holds_for(FluentId{"both", {"v"}, "true"}) == IntervalList{{21, 41}});
}

TEST_CASE("engine: start/end of one fluent can drive another") {
  Engine e(WindowConfig{1000, 1000, 1000});
  declare_lamp(e);
  SimpleFluentDecl echo;  // holds from each lamp start until the lamp ends
  echo.name = "echo";
  echo.initiations.push_back({Trigger::on_start("lamp"),
                              [](const Occurrence& o, EpochContext&, PointSink& s) {
                                s.initiate(*o.args, "true", o.t);
                              }});
  echo.terminations.push_back({Trigger::on_end("lamp"),
                               [](const Occurrence& o, EpochContext&, PointSink& s) {
                                 s.terminate_all(*o.args, o.t);
                               }});
  e.declare_simple(std::move(echo));
  e.finalize();
  e.assert_events(std::vector<InputEvent>{ev("on", "v", 10), ev("off", "v", 20)});
  // lamp [11,21): echo initiated at 11, terminated at 21
  CHECK(e.holds_for(FluentId{"echo", {"v"}, "true"}) == IntervalList{{12, 22}});
}

TEST_CASE("engine: rules can query lower fluents with holds_at") {
  Engine e(WindowConfig{1000, 1000, 1000});
  declare_lamp(e);
  e.declare_event("knock", 1);
  SimpleFluentDecl seen;  // initiated by a knock only while the lamp is on
  seen.name = "seen";
  seen.reads = {"lamp"};
  seen.initiations.push_back(
      {Trigger::on_event("knock"), [](const Occurrence& o, EpochContext& ctx, PointSink& s) {
         if (ctx.holds_at(FluentId{"lamp", {(*o.args)[0]}, "true"}, o.t))
           s.initiate(*o.args, "true", o.t);
       }});
  e.declare_simple(std::move(seen));
  e.finalize();
  e.assert_events(std::vector<InputEvent>{ev("knock", "v", 5), ev("on", "v", 10),
                                          ev("knock", "v", 15), ev("off", "v", 20)});
  CHECK(e.holds_for(FluentId{"seen", {"v"}, "true"}) == IntervalList{{16, kOpenEnd}});
}

TEST_CASE("engine: dependency cycles are rejected at finalize") {
  Engine e(WindowConfig{100, 100, 100});
  e.declare_event("x", 1);
  SimpleFluentDecl a;
  a.name = "a";
  a.reads = {"b"};
  a.initiations.push_back({Trigger::on_event("x"), [](const Occurrence& o, EpochContext&,
                                                      PointSink& s) {
                             s.initiate(*o.args, "true", o.t);
                           }});
  e.declare_simple(std::move(a));
  SdFluentDecl b;
  b.name = "b";
  b.drivers = {"a"};
  b.reads = {"a"};
  b.body = [](const Args& args) { return SdExpr::leaf("a", args); };
  e.declare_sd(std::move(b));
  CHECK_THROWS_AS(e.finalize(), std::invalid_argument);
}

TEST_CASE("engine: assertion order within a batch does not matter") {
  std::vector<InputEvent> events{ev("on", "v", 10), ev("off", "v", 30), ev("on", "v", 30),
                                 ev("on", "w", 12), ev("off", "w", 40)};
  std::vector<IntervalList> results;
  std::vector<std::vector<std::size_t>> orders{{0, 1, 2, 3, 4}, {4, 3, 2, 1, 0}, {2, 0, 4, 1, 3}};
  for (const auto& order : orders) {
    Engine e(WindowConfig{1000, 1000, 1000});
    declare_lamp(e);
    e.finalize();
    for (std::size_t i : order) e.assert_events(std::span(&events[i], 1));
    results.push_back(e.holds_for(FluentId{"lamp", {"v"}, "true"}));
    CHECK(e.holds_for(FluentId{"lamp", {"w"}, "true"}) == IntervalList{{13, 41}});
  }
  CHECK(results[0] == results[1]);
  CHECK(results[0] == results[2]);
  // simultaneous off+on keeps the fluent alive through t=30
  CHECK(results[0] == IntervalList{{11, kOpenEnd}});
}

TEST_CASE("engine: late in-window events update already queried results") {
  Engine e(WindowConfig{1000, 1000, 1000});
  declare_lamp(e);
  e.finalize();
  e.assert_events(std::vector<InputEvent>{ev("on", "v", 100)});
  CHECK(e.holds_for(FluentId{"lamp", {"v"}, "true"}) == IntervalList{{101, kOpenEnd}});
  // arrives later but still inside the window
  e.assert_events(std::vector<InputEvent>{ev("off", "v", 50), ev("off", "v", 500)});
  CHECK(e.holds_for(FluentId{"lamp", {"v"}, "true"}) == IntervalList{{101, 501}});
}

TEST_CASE("engine: input fluents are served and clipped") {
  Engine e(WindowConfig{100, 100, 100});
  e.declare_input_fluent("near", {"true"});
  SdFluentDecl mirror;
  mirror.name = "mirror";
  mirror.drivers = {"near"};
  mirror.reads = {"near"};
  mirror.body = [](const Args& a) { return SdExpr::leaf("near", a); };
  e.declare_sd(std::move(mirror));
  e.mark_output("mirror");
  e.finalize();

  FluentId id{"near", {"a", "b"}, "true"};
  e.assert_fluent(id, IntervalList{{10, 50}, {80, kOpenEnd}});
  CHECK(e.holds_for(FluentId{"mirror", {"a", "b"}, "true"}) ==
        IntervalList{{10, 50}, {80, kOpenEnd}});
  e.evaluate_window();  // advance to 200; boundary 100: [10,50) forgotten
  CHECK(e.holds_for(id) == IntervalList{{80, kOpenEnd}});
}
