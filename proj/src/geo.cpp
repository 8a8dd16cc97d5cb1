#include "maricer/geo.hpp"

#include <cmath>
#include <fstream>
#include <stdexcept>

#include "json.hpp"

namespace maricer::geo {

namespace {
constexpr double kEarthRadiusM = 6371000.0;
constexpr double kDegToRad = M_PI / 180.0;
constexpr double kMetersPerDegLat = 111320.0;
}  // namespace

const char* to_string(AreaType t) {
  switch (t) {
    case AreaType::fishing: return "fishing";
    case AreaType::natura: return "natura";
    case AreaType::anchorage: return "anchorage";
    case AreaType::nearPorts: return "nearPorts";
    case AreaType::nearCoast: return "nearCoast";
  }
  return "?";
}

std::optional<AreaType> parse_area_type(std::string_view s) {
  if (s == "fishing") return AreaType::fishing;
  if (s == "natura") return AreaType::natura;
  if (s == "anchorage") return AreaType::anchorage;
  if (s == "nearPorts") return AreaType::nearPorts;
  if (s == "nearCoast") return AreaType::nearCoast;
  return std::nullopt;
}

void Area::compute_bbox() {
  min_lon = min_lat = 1e9;
  max_lon = max_lat = -1e9;
  for (const auto& ring : rings) {
    for (const GeoPoint& p : ring) {
      min_lon = std::min(min_lon, p.lon);
      max_lon = std::max(max_lon, p.lon);
      min_lat = std::min(min_lat, p.lat);
      max_lat = std::max(max_lat, p.lat);
    }
  }
}

static void validate_area(const Area& a) {
  if (a.rings.empty()) throw std::runtime_error("area " + a.id + ": no rings");
  for (const auto& ring : a.rings) {
    if (ring.size() < 4) throw std::runtime_error("area " + a.id + ": ring with < 4 vertices");
    if (ring.front().lon != ring.back().lon || ring.front().lat != ring.back().lat)
      throw std::runtime_error("area " + a.id + ": ring not closed");
    for (const GeoPoint& p : ring) {
      if (!std::isfinite(p.lon) || !std::isfinite(p.lat) || p.lon < -180 || p.lon > 180 ||
          p.lat < -90 || p.lat > 90)
        throw std::runtime_error("area " + a.id + ": vertex out of range");
    }
  }
}

AreaRegistry AreaRegistry::from_areas(std::vector<Area> areas) {
  AreaRegistry reg;
  for (Area& a : areas) {
    validate_area(a);
    a.compute_bbox();
    if (reg.by_id_.count(a.id)) throw std::runtime_error("duplicate area id " + a.id);
    reg.by_id_[a.id] = reg.areas_.size();
    reg.areas_.push_back(std::move(a));
  }
  return reg;
}

AreaRegistry AreaRegistry::load_geojson(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open area registry: " + path);
  nlohmann::json doc;
  try {
    in >> doc;
  } catch (const nlohmann::json::exception& e) {
    throw std::runtime_error("invalid GeoJSON in " + path + ": " + e.what());
  }
  if (doc.value("type", "") != "FeatureCollection")
    throw std::runtime_error(path + ": expected a FeatureCollection");
  std::vector<Area> areas;
  for (const auto& feature : doc.at("features")) {
    Area a;
    const auto& props = feature.at("properties");
    a.id = props.value("area_id", "");
    if (a.id.empty()) throw std::runtime_error(path + ": feature without area_id");
    auto type = parse_area_type(props.value("area_type", ""));
    if (!type)
      throw std::runtime_error("area " + a.id + ": unknown area_type '" +
                               props.value("area_type", "") + "'");
    a.type = *type;
    const auto& geom = feature.at("geometry");
    if (geom.value("type", "") != "Polygon")
      throw std::runtime_error("area " + a.id + ": geometry must be a Polygon");
    for (const auto& ring : geom.at("coordinates")) {
      std::vector<GeoPoint> r;
      for (const auto& coord : ring) {
        if (!coord.is_array() || coord.size() < 2)
          throw std::runtime_error("area " + a.id + ": malformed coordinate");
        r.push_back(GeoPoint{coord[0].get<double>(), coord[1].get<double>()});
      }
      a.rings.push_back(std::move(r));
    }
    areas.push_back(std::move(a));
  }
  return from_areas(std::move(areas));
}

const Area* AreaRegistry::find(std::string_view id) const {
  auto it = by_id_.find(id);
  return it == by_id_.end() ? nullptr : &areas_[it->second];
}

std::map<std::string, std::string> AreaRegistry::type_map() const {
  std::map<std::string, std::string> out;
  for (const Area& a : areas_) out[a.id] = to_string(a.type);
  return out;
}

namespace {

bool on_segment(const GeoPoint& p, const GeoPoint& a, const GeoPoint& b) {
  double cross = (b.lon - a.lon) * (p.lat - a.lat) - (b.lat - a.lat) * (p.lon - a.lon);
  if (cross != 0.0) return false;
  return p.lon >= std::min(a.lon, b.lon) && p.lon <= std::max(a.lon, b.lon) &&
         p.lat >= std::min(a.lat, b.lat) && p.lat <= std::max(a.lat, b.lat);
}

}  // namespace

bool point_in_area(const GeoPoint& p, const Area& a) {
  if (p.lon < a.min_lon || p.lon > a.max_lon || p.lat < a.min_lat || p.lat > a.max_lat)
    return false;
  bool inside = false;
  for (const auto& ring : a.rings) {
    for (std::size_t i = 0; i + 1 < ring.size(); ++i) {
      const GeoPoint& u = ring[i];
      const GeoPoint& v = ring[i + 1];
      if (on_segment(p, u, v)) return true;  // boundary counts as inside
      if ((u.lat > p.lat) != (v.lat > p.lat)) {
        double xint = u.lon + (p.lat - u.lat) * (v.lon - u.lon) / (v.lat - u.lat);
        if (p.lon < xint) inside = !inside;
      }
    }
  }
  return inside;
}

double haversine_m(const GeoPoint& a, const GeoPoint& b) {
  double phi1 = a.lat * kDegToRad, phi2 = b.lat * kDegToRad;
  double dphi = (b.lat - a.lat) * kDegToRad;
  double dlam = (b.lon - a.lon) * kDegToRad;
  double s = std::sin(dphi / 2), c = std::sin(dlam / 2);
  double h = s * s + std::cos(phi1) * std::cos(phi2) * c * c;
  return 2.0 * kEarthRadiusM * std::asin(std::min(1.0, std::sqrt(h)));
}

double angle_diff_deg(double a, double b) {
  double d = std::fmod(std::fabs(a - b), 360.0);
  return d > 180.0 ? 360.0 - d : d;
}

std::vector<InputEvent> derive_area_events(std::span<const PositionFix> fixes,
                                           const AreaRegistry& registry) {
  std::vector<InputEvent> out;
  std::map<std::string, std::set<std::size_t>> inside;
  for (const PositionFix& fix : fixes) {
    std::set<std::size_t>& cur = inside[fix.vessel];
    for (std::size_t i = 0; i < registry.areas().size(); ++i) {
      const Area& a = registry.areas()[i];
      bool now = point_in_area(fix.pos, a);
      bool was = cur.count(i) > 0;
      if (now == was) continue;
      if (now) {
        cur.insert(i);
        out.push_back(InputEvent{"entersArea", {fix.vessel, a.id}, fix.t, {}});
      } else {
        cur.erase(i);
        out.push_back(InputEvent{"leavesArea", {fix.vessel, a.id}, fix.t, {}});
      }
    }
  }
  return out;
}

// ---------------------------------------------------------------------------
// ProximityTracker
// ---------------------------------------------------------------------------

ProximityTracker::ProximityTracker(ProximityConfig cfg) : cfg_(cfg) {
  if (cfg_.threshold_m <= 0) throw std::invalid_argument("proximity threshold must be > 0");
  cell_deg_ = cfg_.threshold_m / kMetersPerDegLat;
}

int ProximityTracker::intern(const std::string& vessel) {
  auto it = ids_.find(vessel);
  if (it != ids_.end()) return it->second;
  int id = static_cast<int>(names_.size());
  ids_[vessel] = id;
  names_.push_back(vessel);
  state_.emplace_back();
  partners_.emplace_back();
  return id;
}

long long ProximityTracker::cell_key(int clat, int clon) const {
  return (static_cast<long long>(clat) << 32) ^ static_cast<unsigned int>(clon);
}

bool ProximityTracker::close_now(int a, int b, TimePoint now) const {
  const VesselState& sa = state_[static_cast<std::size_t>(a)];
  const VesselState& sb = state_[static_cast<std::size_t>(b)];
  if (!sa.has || !sb.has) return false;
  if (now - sa.t > cfg_.stale_s || now - sb.t > cfg_.stale_s) return false;
  return haversine_m(sa.pos, sb.pos) < cfg_.threshold_m;
}

void ProximityTracker::update(const std::string& vessel, const GeoPoint& pos, TimePoint t) {
  int v = intern(vessel);
  VesselState& sv = state_[static_cast<std::size_t>(v)];
  if (sv.has) {
    auto& cell = grid_[cell_key(sv.clat, sv.clon)];
    std::erase(cell, v);
  }
  sv.pos = pos;
  sv.t = t;
  sv.has = true;
  sv.clat = static_cast<int>(std::floor(pos.lat / cell_deg_));
  sv.clon = static_cast<int>(std::floor(pos.lon / cell_deg_));
  grid_[cell_key(sv.clat, sv.clon)].push_back(v);

  // Existing pairs first: the move or a stale partner may end them.
  std::vector<int> drop;
  for (int u : partners_[static_cast<std::size_t>(v)])
    if (!close_now(v, u, t)) drop.push_back(u);
  for (int u : drop) {
    partners_[static_cast<std::size_t>(v)].erase(u);
    partners_[static_cast<std::size_t>(u)].erase(v);
    std::pair<int, int> key{std::min(v, u), std::max(v, u)};
    auto it = open_.find(key);
    if (it->second < t) closed_[key].append(it->second, t);
    open_.erase(it);
  }

  // Candidate scan around the new cell; lon cells shrink with latitude.
  double coslat = std::cos(pos.lat * kDegToRad);
  int lon_radius = coslat < 0.1 ? 12 : static_cast<int>(std::ceil(1.0 / coslat)) + 1;
  for (int dlat = -1; dlat <= 1; ++dlat) {
    for (int dlon = -lon_radius; dlon <= lon_radius; ++dlon) {
      auto it = grid_.find(cell_key(sv.clat + dlat, sv.clon + dlon));
      if (it == grid_.end()) continue;
      for (int u : it->second) {
        if (u == v || partners_[static_cast<std::size_t>(v)].count(u)) continue;
        if (!close_now(v, u, t)) continue;
        partners_[static_cast<std::size_t>(v)].insert(u);
        partners_[static_cast<std::size_t>(u)].insert(v);
        open_[{std::min(v, u), std::max(v, u)}] = t;
      }
    }
  }
}

std::map<std::pair<std::string, std::string>, IntervalList> ProximityTracker::snapshot() const {
  std::map<std::pair<std::string, std::string>, IntervalList> out;
  auto canonical = [&](const std::pair<int, int>& key) {
    std::string a = names_[static_cast<std::size_t>(key.first)];
    std::string b = names_[static_cast<std::size_t>(key.second)];
    if (b < a) std::swap(a, b);
    return std::make_pair(a, b);
  };
  for (const auto& [key, list] : closed_) out[canonical(key)] = list;
  for (const auto& [key, start] : open_) out[canonical(key)].append(Interval{start, kOpenEnd});
  return out;
}

}  // namespace maricer::geo
