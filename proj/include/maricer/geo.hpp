#ifndef MARICER_GEO_HPP
#define MARICER_GEO_HPP

#include <map>
#include <optional>
#include <set>
#include <span>
#include <string>
#include <unordered_map>
#include <vector>

#include "maricer/engine.hpp"
#include "maricer/intervals.hpp"

namespace maricer::geo {

struct GeoPoint {
  double lon = 0;  // degrees WGS84, [-180, 180]
  double lat = 0;  // degrees WGS84, [-90, 90]
};

enum class AreaType { fishing, natura, anchorage, nearPorts, nearCoast };

const char* to_string(AreaType t);
std::optional<AreaType> parse_area_type(std::string_view s);

/// Polygon with optional holes. Rings are closed (first vertex repeated at
/// the end) and carry at least 4 vertices each.
struct Area {
  std::string id;
  AreaType type = AreaType::fishing;
  std::vector<std::vector<GeoPoint>> rings;  // rings[0] outer, rest holes
  double min_lon = 0, min_lat = 0, max_lon = 0, max_lat = 0;

  void compute_bbox();
};

/// Loaded from a GeoJSON FeatureCollection whose features carry `area_id`
/// and `area_type` properties. Invalid geometry aborts the load with the
/// offending feature id.
class AreaRegistry {
 public:
  static AreaRegistry load_geojson(const std::string& path);
  static AreaRegistry from_areas(std::vector<Area> areas);

  const std::vector<Area>& areas() const { return areas_; }
  const Area* find(std::string_view id) const;
  /// area id -> type name, as the patterns' atemporal context expects.
  std::map<std::string, std::string> type_map() const;

 private:
  std::vector<Area> areas_;
  std::map<std::string, std::size_t, std::less<>> by_id_;
};

/// Even-odd containment; points on any ring boundary count as inside.
bool point_in_area(const GeoPoint& p, const Area& a);

/// Great-circle distance in meters on a sphere of radius 6371000 m.
double haversine_m(const GeoPoint& a, const GeoPoint& b);

/// Minimal angular difference of two headings in degrees, in [0, 180].
double angle_diff_deg(double a, double b);

struct PositionFix {
  std::string vessel;
  GeoPoint pos;
  TimePoint t = 0;
};

/// entersArea/leavesArea events from per-vessel containment transitions.
/// Fixes must be time-ordered per vessel; the first fix inside an area also
/// emits entersArea.
std::vector<InputEvent> derive_area_events(std::span<const PositionFix> fixes,
                                           const AreaRegistry& registry);

struct ProximityConfig {
  double threshold_m = 100.0;
  Duration stale_s = 1800;  // positions older than this cannot witness proximity
};

/// Tracks the durative proximity relation between vessel pairs from
/// last-known positions. Pairs become proximate at the first observation
/// where both positions are fresh and closer than the threshold, and stop at
/// the first observation of either member where that no longer holds;
/// interval endpoints therefore snap to observation time-points. A uniform
/// lon/lat grid prunes the candidate pairs before exact distances.
class ProximityTracker {
 public:
  explicit ProximityTracker(ProximityConfig cfg);

  void update(const std::string& vessel, const GeoPoint& pos, TimePoint t);

  /// Per canonically ordered pair: closed intervals plus, when the pair is
  /// still proximate at the last observation, an open tail.
  std::map<std::pair<std::string, std::string>, IntervalList> snapshot() const;

 private:
  int intern(const std::string& vessel);
  long long cell_key(int clat, int clon) const;
  bool close_now(int a, int b, TimePoint now) const;

  ProximityConfig cfg_;
  double cell_deg_;
  std::map<std::string, int> ids_;
  std::vector<std::string> names_;
  struct VesselState {
    GeoPoint pos;
    TimePoint t = 0;
    bool has = false;
    int clat = 0, clon = 0;
  };
  std::vector<VesselState> state_;
  std::unordered_map<long long, std::vector<int>> grid_;
  std::vector<std::set<int>> partners_;                 // currently-close partners
  std::map<std::pair<int, int>, TimePoint> open_;       // pair -> interval start
  std::map<std::pair<int, int>, IntervalList> closed_;  // finished intervals
};

}  // namespace maricer::geo

#endif  // MARICER_GEO_HPP
