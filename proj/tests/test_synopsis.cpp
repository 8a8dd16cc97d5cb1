#include "maricer/synopsis.hpp"

#include <map>
#include <stdexcept>
#include <random>
#include <set>

#include "doctest.h"

using namespace maricer;
using namespace maricer::synopsis;

namespace {

AisMessage msg(const std::string& mmsi, TimePoint t, double speed, double heading = 90,
               double cog = 90) {
  AisMessage m;
  m.mmsi = mmsi;
  m.t = t;
  m.lon = -4.5;
  m.lat = 47.7;
  m.speed_kn = speed;
  m.cog_deg = cog;
  m.heading_deg = heading;
  return m;
}

std::vector<CriticalEvent> events_of(const SynopsisResult& r, CriticalKind kind) {
  std::vector<CriticalEvent> out;
  for (const CriticalEvent& e : r.events)
    if (e.kind == kind) out.push_back(e);
  return out;
}

}  // namespace

TEST_CASE("smooth cruise yields no critical events") {
  std::vector<AisMessage> stream;
  for (TimePoint t = 0; t <= 3600; t += 60) stream.push_back(msg("v", t, 10.0));
  SynopsisResult r = label_stream(stream, SynopsisConfig{});
  CHECK(r.events.empty());
  CHECK(r.retained.empty());
  CHECK(compression_ratio(stream.size(), r.retained.size()) == 1.0);
}

TEST_CASE("a long silence produces a gap pair") {
  std::vector<AisMessage> stream{msg("v", 0, 10.0), msg("v", 3600, 10.0)};
  SynopsisResult r = label_stream(stream, SynopsisConfig{});
  REQUIRE(r.events.size() == 2);
  CHECK(r.events[0].kind == CriticalKind::gap_start);
  CHECK(r.events[0].t == 0);            // timestamped at the last pre-gap report
  CHECK(r.events[0].detected_at == 3600);
  CHECK(r.events[1].kind == CriticalKind::gap_end);
  CHECK(r.events[1].t == 3600);
  REQUIRE(r.retained.size() == 2);  // the pre-gap report becomes critical too

  // exactly at the threshold is not a gap
  std::vector<AisMessage> tight{msg("v", 0, 10.0), msg("v", 1800, 10.0)};
  CHECK(label_stream(tight, SynopsisConfig{}).events.empty());
}

TEST_CASE("speed band crossings emit paired stop/slow events") {
  std::vector<AisMessage> stream{
      msg("v", 0, 10.0),   // none
      msg("v", 60, 3.0),   // slow_motion_start (plus change_in_speed_start)
      msg("v", 120, 0.3),  // slow_motion_end + stop_start
      msg("v", 180, 0.3),  msg("v", 240, 7.0),  // stop_end
      msg("v", 300, 7.0),
  };
  SynopsisResult r = label_stream(stream, SynopsisConfig{});
  auto slow_start = events_of(r, CriticalKind::slow_motion_start);
  auto slow_end = events_of(r, CriticalKind::slow_motion_end);
  auto stop_start = events_of(r, CriticalKind::stop_start);
  auto stop_end = events_of(r, CriticalKind::stop_end);
  REQUIRE(slow_start.size() == 1);
  CHECK(slow_start[0].t == 60);
  REQUIRE(slow_end.size() == 1);
  CHECK(slow_end[0].t == 120);
  REQUIRE(stop_start.size() == 1);
  CHECK(stop_start[0].t == 120);
  REQUIRE(stop_end.size() == 1);
  CHECK(stop_end[0].t == 240);
}

TEST_CASE("first report inside a band opens it") {
  std::vector<AisMessage> stream{msg("v", 0, 0.2), msg("v", 60, 0.2)};
  SynopsisResult r = label_stream(stream, SynopsisConfig{});
  REQUIRE(r.events.size() == 1);
  CHECK(r.events[0].kind == CriticalKind::stop_start);
  CHECK(r.events[0].t == 0);
}

TEST_CASE("change-in-speed needs two stable deltas to end") {
  std::vector<AisMessage> stream{
      msg("v", 0, 8.0),    msg("v", 60, 12.0),   // |12-8|/8 = 0.5: start
      msg("v", 120, 12.2),                       // stable 1
      msg("v", 180, 16.0),                       // unstable again: reset
      msg("v", 240, 16.1), msg("v", 300, 16.2),  // stable 1, 2: end
      msg("v", 360, 16.2),
  };
  SynopsisResult r = label_stream(stream, SynopsisConfig{});
  auto starts = events_of(r, CriticalKind::change_in_speed_start);
  auto ends = events_of(r, CriticalKind::change_in_speed_end);
  REQUIRE(starts.size() == 1);
  CHECK(starts[0].t == 60);
  REQUIRE(ends.size() == 1);
  CHECK(ends[0].t == 300);
}

TEST_CASE("speed sequence crossing the trawl band marks the crossing reports") {
  // 8.76 -> in band from the first report; 13.82 at t=3 leaves it; 8.5 at t=7
  // re-enters; 13.0 at t=13 leaves again (shape of a two-piece trawl episode)
  std::vector<double> speeds{8.76, 8.8, 8.9, 13.82, 14.0, 14.0, 14.0,
                             8.5,  8.5, 8.6, 8.6,  8.6,  8.6,  13.0};
  std::vector<AisMessage> stream;
  for (std::size_t i = 0; i < speeds.size(); ++i)
    stream.push_back(msg("v", static_cast<TimePoint>(i), speeds[i]));
  SynopsisResult r = label_stream(stream, SynopsisConfig{});
  std::set<TimePoint> retained_t;
  for (std::size_t i : r.retained) retained_t.insert(stream[i].t);
  // the band-crossing reports are all retained as critical
  CHECK(retained_t.count(3));
  CHECK(retained_t.count(7));
  CHECK(retained_t.count(13));
}

TEST_CASE("heading change uses minimal angular difference and CoG fallback") {
  SynopsisConfig cfg;
  SUBCASE("wrap-around") {
    std::vector<AisMessage> stream{msg("v", 0, 10, 350, 350), msg("v", 60, 10, 10, 10)};
    SynopsisResult r = label_stream(stream, cfg);  // diff(350,10) = 20 > 15
    REQUIRE(r.events.size() == 1);
    CHECK(r.events[0].kind == CriticalKind::change_in_heading);
  }
  SUBCASE("small change is not critical") {
    std::vector<AisMessage> stream{msg("v", 0, 10, 90, 90), msg("v", 60, 10, 100, 100)};
    CHECK(label_stream(stream, cfg).events.empty());
  }
  SUBCASE("unavailable true heading falls back to course over ground") {
    std::vector<AisMessage> stream{msg("v", 0, 10, 511, 90), msg("v", 60, 10, 511, 140)};
    SynopsisResult r = label_stream(stream, cfg);
    REQUIRE(r.events.size() == 1);
    CHECK(r.events[0].kind == CriticalKind::change_in_heading);
    CHECK(r.events[0].t == 60);
  }
}

TEST_CASE("out-of-order reports are dropped and counted") {
  std::vector<AisMessage> stream{msg("v", 120, 10.0), msg("v", 60, 0.2), msg("v", 120, 10.0),
                                 msg("v", 180, 10.0)};
  SynopsisResult r = label_stream(stream, SynopsisConfig{});
  CHECK(r.dropped_out_of_order == 2);  // the regression and the duplicate
  CHECK(r.events.empty());
  CHECK(r.accepted == std::vector<bool>{true, false, false, true});
}

TEST_CASE("compression_ratio arithmetic and errors") {
  CHECK(compression_ratio(100, 25) == doctest::Approx(0.75));
  CHECK(compression_ratio(100, 100) == 0.0);
  CHECK_THROWS_AS(compression_ratio(0, 0), std::invalid_argument);
  CHECK_THROWS_AS(compression_ratio(10, 11), std::invalid_argument);
}

TEST_CASE("event kinds alternate per vessel and events map onto retained reports") {
  std::mt19937_64 rng(31);
  std::uniform_real_distribution<double> jump(-3.0, 3.0);
  std::uniform_int_distribution<int> gap_roll(0, 40);
  std::vector<AisMessage> stream;
  for (int v = 0; v < 3; ++v) {
    std::string mmsi = "v" + std::to_string(v);
    double speed = 6.0, heading = 90.0;
    TimePoint t = 0;
    for (int i = 0; i < 400; ++i) {
      speed = std::max(0.0, speed + jump(rng));
      heading = std::fmod(heading + jump(rng) * 8 + 360.0, 360.0);
      t += gap_roll(rng) == 0 ? 2400 : 60;
      stream.push_back(msg(mmsi, t, speed, heading, heading));
    }
  }
  std::sort(stream.begin(), stream.end(),
            [](const AisMessage& a, const AisMessage& b) { return a.t < b.t; });
  SynopsisResult r = label_stream(stream, SynopsisConfig{});

  // strict alternation of every start/end pair per vessel
  std::map<std::string, std::map<CriticalKind, int>> state;
  auto check_pair = [&](const CriticalEvent& e, CriticalKind start, CriticalKind end) {
    if (e.kind != start && e.kind != end) return;
    int& s = state[e.vessel][start];
    if (e.kind == start) {
      REQUIRE(s == 0);
      s = 1;
    } else {
      REQUIRE(s == 1);
      s = 0;
    }
  };
  for (const CriticalEvent& e : r.events) {
    check_pair(e, CriticalKind::gap_start, CriticalKind::gap_end);
    check_pair(e, CriticalKind::stop_start, CriticalKind::stop_end);
    check_pair(e, CriticalKind::slow_motion_start, CriticalKind::slow_motion_end);
    check_pair(e, CriticalKind::change_in_speed_start, CriticalKind::change_in_speed_end);
  }

  // every event maps to a retained report and vice versa
  std::set<std::pair<std::string, TimePoint>> event_keys, retained_keys;
  for (const CriticalEvent& e : r.events) event_keys.insert({e.vessel, e.t});
  for (std::size_t i : r.retained) retained_keys.insert({stream[i].mmsi, stream[i].t});
  REQUIRE(event_keys == retained_keys);

  // band consistency: between stop_start and stop_end every retained report
  // of that vessel is below the stop ceiling
  std::map<std::string, IntervalList> stop_spans;
  std::map<std::string, TimePoint> open_stop;
  for (const CriticalEvent& e : r.events) {
    if (e.kind == CriticalKind::stop_start) open_stop[e.vessel] = e.t;
    if (e.kind == CriticalKind::stop_end) {
      stop_spans[e.vessel].append(open_stop[e.vessel], e.t);
      open_stop.erase(e.vessel);
    }
  }
  for (std::size_t i : r.retained) {
    const AisMessage& m = stream[i];
    auto it = stop_spans.find(m.mmsi);
    if (it == stop_spans.end()) continue;
    for (const Interval& span : it->second)
      if (m.t > span.start && m.t < span.end) REQUIRE(m.speed_kn < 0.5);
  }
}
