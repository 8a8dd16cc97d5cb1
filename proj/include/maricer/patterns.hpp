#ifndef MARICER_PATTERNS_HPP
#define MARICER_PATTERNS_HPP

#include <map>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "maricer/engine.hpp"

namespace maricer::patterns {

enum class VesselType { fishing, sar, tug, pilot, cargo, tanker, other };

const char* to_string(VesselType t);
VesselType parse_vessel_type(std::string_view s);  // unknown names map to other

struct VesselInfo {
  VesselType type = VesselType::other;
  std::optional<double> service_min_kn;
  std::optional<double> service_max_kn;
};

/// Static per-vessel facts: type and service speed band.
/// CSV columns: mmsi,type,service_min,service_max (service fields optional).
class VesselRegistry {
 public:
  static VesselRegistry load_csv(const std::string& path);
  void add(const std::string& mmsi, VesselInfo info);
  VesselInfo info(const std::string& mmsi) const;  // unknown vessels are `other`

 private:
  std::map<std::string, VesselInfo> vessels_;
};

/// Numeric thresholds of the pattern library. All tunable through the flat
/// key=value threshold file; the listed values are the defaults.
struct Thresholds {
  Duration gap_s = 1800;
  double stop_max_kn = 0.5;
  double slow_max_kn = 5.0;
  double speed_change_ratio = 0.25;
  double heading_change_deg = 15.0;

  double v_hs_kn = 5.0;           // high speed near coast limit
  Duration v_aorm_s = 1800;       // anchored/moored minimum duration
  double v_ad_deg = 30.0;         // drift angle
  Duration v_trawl_deadline_s = 600;
  Duration v_trawl_s = 3600;
  Duration v_tug_s = 600;
  Duration v_pil_s = 600;
  Duration v_rv_s = 600;
  Duration v_ltr_s = 1800;
  Duration v_sar_deadline_s = 1800;
  Duration v_sar_s = 3600;

  double proximity_m = 100.0;
  Duration proximity_stale_s = 1800;
  double tugging_speed_min_kn = 1.2;
  double tugging_speed_max_kn = 15.0;
  double trawling_speed_min_kn = 1.0;
  double trawling_speed_max_kn = 9.0;
  double sar_speed_min_kn = 2.7;
  double default_service_min_kn = 9.0;
  double default_service_max_kn = 15.0;

  double near_coast_m = 300.0;  // buffer widths used when materializing areas
  double near_ports_m = 3000.0;

  static Thresholds from_kv(const std::map<std::string, std::string>& kv);
  std::map<std::string, std::string> to_kv() const;
};

/// Atemporal context shared by all rule closures.
struct MaritimeContext {
  VesselRegistry vessels;
  std::map<std::string, std::string> area_types;  // area id -> type name
  Thresholds thr;

  VesselType type_of(const std::string& mmsi) const { return vessels.info(mmsi).type; }
  bool is_type(const std::string& mmsi, VesselType t) const { return type_of(mmsi) == t; }
  std::pair<double, double> service_band(const std::string& mmsi) const;
};

/// The five known area type names, in declaration order.
const std::vector<std::string>& area_type_names();

/// Names of the nine composite output activities.
const std::vector<std::string>& output_activities();

/// Declares the input schema (velocity, critical and spatial events, the
/// proximity input fluent), all building-block fluents and the nine output
/// activities on the engine, then finalizes it.
void declare_maritime_patterns(Engine& engine, std::shared_ptr<const MaritimeContext> ctx);

}  // namespace maricer::patterns

#endif  // MARICER_PATTERNS_HPP
