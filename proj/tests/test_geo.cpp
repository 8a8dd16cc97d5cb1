#include "maricer/geo.hpp"

#include <boost/multiprecision/cpp_int.hpp>
#include <cmath>
#include <fstream>
#include <random>
#include <set>

#include "doctest.h"

using namespace maricer;
using namespace maricer::geo;

namespace {

using Rational = boost::multiprecision::cpp_rational;

// Independent containment oracle: exact-rational ray casting (horizontal ray
// towards +x, half-open vertex rule), with an exact boundary test.
bool oracle_point_in_area(const GeoPoint& p, const Area& area) {
  Rational px(p.lon), py(p.lat);
  bool inside = false;
  for (const auto& ring : area.rings) {
    for (std::size_t i = 0; i + 1 < ring.size(); ++i) {
      Rational ax(ring[i].lon), ay(ring[i].lat);
      Rational bx(ring[i + 1].lon), by(ring[i + 1].lat);
      Rational cross = (bx - ax) * (py - ay) - (by - ay) * (px - ax);
      if (cross == 0 && px >= std::min(ax, bx) && px <= std::max(ax, bx) &&
          py >= std::min(ay, by) && py <= std::max(ay, by))
        return true;  // on the boundary
      bool crosses = (ay <= py && by > py) || (by <= py && ay > py);
      if (crosses) {
        Rational x = ax + (py - ay) / (by - ay) * (bx - ax);
        if (x > px) inside = !inside;
      }
    }
  }
  return inside;
}

Area make_area(std::string id, AreaType type, std::vector<std::vector<GeoPoint>> rings) {
  Area a;
  a.id = std::move(id);
  a.type = type;
  a.rings = std::move(rings);
  a.compute_bbox();
  return a;
}

// Concave test polygon (star-ish outline) plus a square hole.
Area concave_test_area() {
  std::vector<GeoPoint> outer{{0, 0}, {4, 1}, {8, 0}, {7, 4}, {8, 8},
                              {4, 6}, {0, 8}, {1, 4}, {0, 0}};
  std::vector<GeoPoint> hole{{3, 3}, {5, 3}, {5, 4.5}, {3, 4.5}, {3, 3}};
  return make_area("concave", AreaType::fishing, {outer, hole});
}

// Alternate-formula distance oracle: spherical law of cosines.
double law_of_cosines_m(const GeoPoint& a, const GeoPoint& b) {
  constexpr double R = 6371000.0;
  constexpr double d2r = M_PI / 180.0;
  double phi1 = a.lat * d2r, phi2 = b.lat * d2r;
  double c = std::sin(phi1) * std::sin(phi2) +
             std::cos(phi1) * std::cos(phi2) * std::cos((b.lon - a.lon) * d2r);
  return R * std::acos(std::clamp(c, -1.0, 1.0));
}

}  // namespace

TEST_CASE("point_in_area: convex quad basics") {
  Area quad = make_area("q", AreaType::natura, {{{0, 0}, {10, 0}, {10, 10}, {0, 10}, {0, 0}}});
  CHECK(point_in_area(GeoPoint{5, 5}, quad));         // centroid
  CHECK_FALSE(point_in_area(GeoPoint{11, 5}, quad));  // outside the bbox
  CHECK(point_in_area(GeoPoint{0, 5}, quad));         // boundary counts as inside
  CHECK(point_in_area(GeoPoint{10, 10}, quad));       // vertex
  CHECK(point_in_area(GeoPoint{5, 0}, quad));         // bottom edge
}

TEST_CASE("point_in_area: holes are outside, hole boundary is inside") {
  Area a = concave_test_area();
  CHECK_FALSE(point_in_area(GeoPoint{4, 3.7}, a));  // inside the hole
  CHECK(point_in_area(GeoPoint{3, 3.7}, a));        // on the hole boundary
  CHECK(point_in_area(GeoPoint{2, 2}, a));
  CHECK_FALSE(point_in_area(GeoPoint{0.2, 7.9}, a));  // concave notch
}

TEST_CASE("point_in_area matches the exact ray-casting oracle") {
  Area a = concave_test_area();
  std::mt19937_64 rng(101);
  std::uniform_real_distribution<double> coord(-1.0, 9.0);
  for (int i = 0; i < 10000; ++i) {
    GeoPoint p{coord(rng), coord(rng)};
    REQUIRE(point_in_area(p, a) == oracle_point_in_area(p, a));
  }
}

TEST_CASE("haversine basics") {
  GeoPoint brest{-4.49, 48.39};
  CHECK(haversine_m(brest, brest) == 0.0);
  GeoPoint antipode{180.0 - 4.49, -48.39};
  CHECK(std::abs(haversine_m(brest, antipode) - M_PI * 6371000.0) < 1.0);
  GeoPoint other{-4.2, 48.1};
  CHECK(haversine_m(brest, other) == haversine_m(other, brest));
  CHECK(haversine_m(brest, other) > 0.0);
}

TEST_CASE("haversine matches the law-of-cosines oracle under 100 km") {
  std::mt19937_64 rng(77);
  std::uniform_real_distribution<double> dlon(-1.0, 1.0), dlat(-0.5, 0.5);
  GeoPoint base{-4.5, 48.0};
  for (int i = 0; i < 100; ++i) {
    GeoPoint p{base.lon + dlon(rng), base.lat + dlat(rng)};
    GeoPoint q{base.lon + dlon(rng), base.lat + dlat(rng)};
    double d = haversine_m(p, q);
    if (d >= 100000.0) continue;
    REQUIRE(std::abs(d - law_of_cosines_m(p, q)) < 0.5);
  }
}

TEST_CASE("angle_diff wraps around") {
  CHECK(angle_diff_deg(350, 10) == doctest::Approx(20));
  CHECK(angle_diff_deg(10, 350) == doctest::Approx(20));
  CHECK(angle_diff_deg(90, 90) == 0);
  CHECK(angle_diff_deg(0, 180) == doctest::Approx(180));
}

TEST_CASE("derive_area_events: transitions and first-fix containment") {
  auto reg = AreaRegistry::from_areas(
      {make_area("A", AreaType::fishing, {{{0, 0}, {10, 0}, {10, 10}, {0, 10}, {0, 0}}})});
  SUBCASE("never inside") {
    std::vector<PositionFix> fixes{{"v", {20, 20}, 0}, {"v", {21, 20}, 60}};
    CHECK(derive_area_events(fixes, reg).empty());
  }
  SUBCASE("out-in-in-out") {
    std::vector<PositionFix> fixes{
        {"v", {-1, 5}, 0}, {"v", {5, 5}, 60}, {"v", {6, 5}, 120}, {"v", {11, 5}, 180}};
    auto events = derive_area_events(fixes, reg);
    REQUIRE(events.size() == 2);
    CHECK(events[0].name == "entersArea");
    CHECK(events[0].t == 60);
    CHECK(events[0].args == Args{"v", "A"});
    CHECK(events[1].name == "leavesArea");
    CHECK(events[1].t == 180);
  }
  SUBCASE("first fix already inside emits entersArea") {
    std::vector<PositionFix> fixes{{"v", {5, 5}, 0}};
    auto events = derive_area_events(fixes, reg);
    REQUIRE(events.size() == 1);
    CHECK(events[0].name == "entersArea");
    CHECK(events[0].t == 0);
  }
}

TEST_CASE("derive_area_events matches containment-diff oracle on overlapping areas") {
  auto reg = AreaRegistry::from_areas(
      {make_area("A", AreaType::fishing, {{{0, 0}, {6, 0}, {6, 6}, {0, 6}, {0, 0}}}),
       make_area("B", AreaType::natura, {{{3, 3}, {9, 3}, {9, 9}, {3, 9}, {3, 3}}}),
       make_area("C", AreaType::anchorage, {{{5, 0}, {12, 0}, {12, 5}, {5, 5}, {5, 0}}})});
  std::mt19937_64 rng(5);
  std::uniform_real_distribution<double> coord(-2.0, 13.0);
  std::vector<PositionFix> fixes;
  for (int i = 0; i < 400; ++i)
    fixes.push_back(PositionFix{"v", GeoPoint{coord(rng), coord(rng)}, i * 60});
  auto events = derive_area_events(fixes, reg);

  // oracle: per-point containment sets diffed across consecutive fixes
  std::vector<InputEvent> expect;
  std::set<std::string> inside;
  for (const PositionFix& f : fixes) {
    for (const Area& a : reg.areas()) {
      bool now = oracle_point_in_area(f.pos, a);
      bool was = inside.count(a.id) > 0;
      if (now && !was) {
        inside.insert(a.id);
        expect.push_back(InputEvent{"entersArea", {f.vessel, a.id}, f.t, {}});
      } else if (!now && was) {
        inside.erase(a.id);
        expect.push_back(InputEvent{"leavesArea", {f.vessel, a.id}, f.t, {}});
      }
    }
  }
  REQUIRE(events.size() == expect.size());
  for (std::size_t i = 0; i < events.size(); ++i) {
    CHECK(events[i].name == expect[i].name);
    CHECK(events[i].args == expect[i].args);
    CHECK(events[i].t == expect[i].t);
  }
}

TEST_CASE("area registry: geojson load and validation") {
  const char* path = "/tmp/maricer_test_areas.geojson";
  {
    std::ofstream out(path);
    out << R"({"type":"FeatureCollection","features":[
      {"type":"Feature","properties":{"area_id":"F1","area_type":"fishing"},
       "geometry":{"type":"Polygon","coordinates":[[[-5,47.9],[-4.8,47.9],[-4.8,48.1],[-5,48.1],[-5,47.9]]]}}]})";
  }
  auto reg = AreaRegistry::load_geojson(path);
  REQUIRE(reg.areas().size() == 1);
  CHECK(reg.find("F1") != nullptr);
  CHECK(reg.type_map().at("F1") == "fishing");
  CHECK(point_in_area(GeoPoint{-4.9, 48.0}, reg.areas()[0]));

  {
    std::ofstream out(path);
    out << R"({"type":"FeatureCollection","features":[
      {"type":"Feature","properties":{"area_id":"BAD","area_type":"fishing"},
       "geometry":{"type":"Polygon","coordinates":[[[-5,47.9],[-4.8,47.9],[-5,47.9]]]}}]})";
  }
  CHECK_THROWS_WITH_AS(AreaRegistry::load_geojson(path), doctest::Contains("BAD"),
                       std::runtime_error);
}

TEST_CASE("proximity: simple meet, exit and staleness") {
  ProximityTracker tracker(ProximityConfig{100.0, 1800});
  // two vessels 50 m apart for 10 minutes
  for (TimePoint t = 0; t <= 600; t += 60) {
    tracker.update("a", GeoPoint{-4.5, 47.70}, t);
    tracker.update("b", GeoPoint{-4.5, 47.70 + 0.000449}, t);
  }
  auto snap = tracker.snapshot();
  REQUIRE(snap.size() == 1);
  auto key = std::make_pair(std::string("a"), std::string("b"));
  REQUIRE(snap.count(key));
  CHECK(snap[key] == IntervalList{{0, kOpenEnd}});

  // b sails away: the pair closes at the refuting observation
  tracker.update("b", GeoPoint{-4.5, 47.71}, 660);
  snap = tracker.snapshot();
  CHECK(snap[key] == IntervalList{{0, 660}});

  // back together, then a goes silent; staleness ends the pair at b's next fix
  tracker.update("b", GeoPoint{-4.5, 47.70 + 0.000449}, 720);
  tracker.update("a", GeoPoint{-4.5, 47.70}, 780);
  tracker.update("b", GeoPoint{-4.5, 47.70 + 0.000449}, 800);
  tracker.update("b", GeoPoint{-4.5, 47.70 + 0.000449}, 3000);  // a's fix now 2220 s old
  snap = tracker.snapshot();
  CHECK(snap[key] == IntervalList{{0, 660}, {720, 3000}});
}

TEST_CASE("proximity: vessels never close produce nothing") {
  ProximityTracker tracker(ProximityConfig{100.0, 1800});
  for (TimePoint t = 0; t <= 600; t += 60) {
    tracker.update("a", GeoPoint{-4.5, 47.70}, t);
    tracker.update("b", GeoPoint{-4.5, 47.75}, t);
  }
  CHECK(tracker.snapshot().empty());
}

TEST_CASE("proximity: canonical pair ordering is by vessel id") {
  ProximityTracker tracker(ProximityConfig{100.0, 1800});
  for (TimePoint t = 0; t <= 300; t += 60) {
    tracker.update("z", GeoPoint{-4.5, 47.70}, t);  // "z" observed first
    tracker.update("a", GeoPoint{-4.5, 47.70 + 0.000449}, t);
  }
  auto snap = tracker.snapshot();
  REQUIRE(snap.size() == 1);
  CHECK(snap.begin()->first == std::make_pair(std::string("a"), std::string("z")));
}

TEST_CASE("proximity matches pairwise-distance oracle on random walks") {
  std::mt19937_64 rng(2020);
  std::uniform_real_distribution<double> jump(-0.0006, 0.0006);
  const int kVessels = 5;
  const Duration stale = 1800;
  std::vector<GeoPoint> pos(kVessels, GeoPoint{-4.5, 47.70});
  for (int v = 1; v < kVessels; ++v) pos[static_cast<std::size_t>(v)].lat += 0.0002 * v;

  ProximityTracker tracker(ProximityConfig{100.0, stale});
  struct Obs {
    int vessel;
    GeoPoint p;
    TimePoint t;
  };
  std::vector<Obs> observations;
  for (TimePoint t = 0; t <= 6000; t += 60) {
    for (int v = 0; v < kVessels; ++v) {
      auto& p = pos[static_cast<std::size_t>(v)];
      p.lat += jump(rng);
      p.lon += jump(rng);
      observations.push_back({v, p, t});
      tracker.update("v" + std::to_string(v), p, t);
    }
  }

  // oracle: replay observations; after each, the observed vessel's pair
  // states follow from latest positions, freshness and exact distance
  std::map<std::pair<int, int>, IntervalList> expect;
  std::map<std::pair<int, int>, TimePoint> open;
  std::vector<GeoPoint> last(kVessels);
  std::vector<TimePoint> last_t(kVessels, -1);
  for (const Obs& o : observations) {
    last[static_cast<std::size_t>(o.vessel)] = o.p;
    last_t[static_cast<std::size_t>(o.vessel)] = o.t;
    for (int u = 0; u < kVessels; ++u) {
      if (u == o.vessel) continue;
      auto key = std::minmax(u, o.vessel);
      bool close = last_t[static_cast<std::size_t>(u)] >= 0 &&
                   o.t - last_t[static_cast<std::size_t>(u)] <= stale &&
                   haversine_m(o.p, last[static_cast<std::size_t>(u)]) < 100.0;
      bool was = open.count(key) > 0;
      if (close && !was) {
        open[key] = o.t;
      } else if (!close && was) {
        if (open[key] < o.t) expect[key].append(open[key], o.t);
        open.erase(key);
      }
    }
  }
  for (auto& [key, start] : open) expect[key].append(Interval{start, kOpenEnd});

  auto snap = tracker.snapshot();
  std::map<std::pair<std::string, std::string>, IntervalList> expect_named;
  for (auto& [key, list] : expect)
    expect_named[{"v" + std::to_string(key.first), "v" + std::to_string(key.second)}] = list;
  REQUIRE(snap == expect_named);
}
