#include "maricer/patterns.hpp"

#include <fstream>
#include <limits>
#include <sstream>
#include <stdexcept>

#include "maricer/geo.hpp"

namespace maricer::patterns {

const char* to_string(VesselType t) {
  switch (t) {
    case VesselType::fishing: return "fishing";
    case VesselType::sar: return "sar";
    case VesselType::tug: return "tug";
    case VesselType::pilot: return "pilot";
    case VesselType::cargo: return "cargo";
    case VesselType::tanker: return "tanker";
    case VesselType::other: return "other";
  }
  return "other";
}

VesselType parse_vessel_type(std::string_view s) {
  if (s == "fishing") return VesselType::fishing;
  if (s == "sar") return VesselType::sar;
  if (s == "tug") return VesselType::tug;
  if (s == "pilot") return VesselType::pilot;
  if (s == "cargo") return VesselType::cargo;
  if (s == "tanker") return VesselType::tanker;
  return VesselType::other;
}

void VesselRegistry::add(const std::string& mmsi, VesselInfo info) {
  if (info.service_min_kn && info.service_max_kn && !(*info.service_min_kn < *info.service_max_kn))
    throw std::invalid_argument("vessel " + mmsi + ": service_min must be below service_max");
  vessels_[mmsi] = std::move(info);
}

VesselInfo VesselRegistry::info(const std::string& mmsi) const {
  auto it = vessels_.find(mmsi);
  return it == vessels_.end() ? VesselInfo{} : it->second;
}

VesselRegistry VesselRegistry::load_csv(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open vessel registry: " + path);
  VesselRegistry reg;
  std::string line;
  bool first = true;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    if (first && line.rfind("mmsi", 0) == 0) {
      first = false;
      continue;
    }
    first = false;
    std::stringstream ss(line);
    std::string mmsi, type, smin, smax;
    std::getline(ss, mmsi, ',');
    std::getline(ss, type, ',');
    std::getline(ss, smin, ',');
    std::getline(ss, smax, ',');
    VesselInfo info;
    info.type = parse_vessel_type(type);
    if (!smin.empty()) info.service_min_kn = std::stod(smin);
    if (!smax.empty()) info.service_max_kn = std::stod(smax);
    reg.add(mmsi, info);
  }
  return reg;
}

namespace {

template <typename T>
void read_kv(const std::map<std::string, std::string>& kv, const std::string& key, T& out) {
  auto it = kv.find(key);
  if (it == kv.end()) return;
  if constexpr (std::is_same_v<T, Duration>)
    out = static_cast<Duration>(std::stoll(it->second));
  else
    out = std::stod(it->second);
}

}  // namespace

Thresholds Thresholds::from_kv(const std::map<std::string, std::string>& kv) {
  Thresholds t;
  read_kv(kv, "gap_s", t.gap_s);
  read_kv(kv, "stop_max_kn", t.stop_max_kn);
  read_kv(kv, "slow_max_kn", t.slow_max_kn);
  read_kv(kv, "speed_change_ratio", t.speed_change_ratio);
  read_kv(kv, "heading_change_deg", t.heading_change_deg);
  read_kv(kv, "v_hs_kn", t.v_hs_kn);
  read_kv(kv, "v_aorm_s", t.v_aorm_s);
  read_kv(kv, "v_ad_deg", t.v_ad_deg);
  read_kv(kv, "v_trawl_deadline_s", t.v_trawl_deadline_s);
  read_kv(kv, "v_trawl_s", t.v_trawl_s);
  read_kv(kv, "v_tug_s", t.v_tug_s);
  read_kv(kv, "v_pil_s", t.v_pil_s);
  read_kv(kv, "v_rv_s", t.v_rv_s);
  read_kv(kv, "v_ltr_s", t.v_ltr_s);
  read_kv(kv, "v_sar_deadline_s", t.v_sar_deadline_s);
  read_kv(kv, "v_sar_s", t.v_sar_s);
  read_kv(kv, "proximity_m", t.proximity_m);
  read_kv(kv, "proximity_stale_s", t.proximity_stale_s);
  read_kv(kv, "tugging_speed_min_kn", t.tugging_speed_min_kn);
  read_kv(kv, "tugging_speed_max_kn", t.tugging_speed_max_kn);
  read_kv(kv, "trawling_speed_min_kn", t.trawling_speed_min_kn);
  read_kv(kv, "trawling_speed_max_kn", t.trawling_speed_max_kn);
  read_kv(kv, "sar_speed_min_kn", t.sar_speed_min_kn);
  read_kv(kv, "default_service_min_kn", t.default_service_min_kn);
  read_kv(kv, "default_service_max_kn", t.default_service_max_kn);
  read_kv(kv, "near_coast_m", t.near_coast_m);
  read_kv(kv, "near_ports_m", t.near_ports_m);
  return t;
}

std::map<std::string, std::string> Thresholds::to_kv() const {
  auto num = [](double v) {
    std::ostringstream os;
    os << v;
    return os.str();
  };
  std::map<std::string, std::string> kv;
  kv["gap_s"] = std::to_string(gap_s);
  kv["stop_max_kn"] = num(stop_max_kn);
  kv["slow_max_kn"] = num(slow_max_kn);
  kv["speed_change_ratio"] = num(speed_change_ratio);
  kv["heading_change_deg"] = num(heading_change_deg);
  kv["v_hs_kn"] = num(v_hs_kn);
  kv["v_aorm_s"] = std::to_string(v_aorm_s);
  kv["v_ad_deg"] = num(v_ad_deg);
  kv["v_trawl_deadline_s"] = std::to_string(v_trawl_deadline_s);
  kv["v_trawl_s"] = std::to_string(v_trawl_s);
  kv["v_tug_s"] = std::to_string(v_tug_s);
  kv["v_pil_s"] = std::to_string(v_pil_s);
  kv["v_rv_s"] = std::to_string(v_rv_s);
  kv["v_ltr_s"] = std::to_string(v_ltr_s);
  kv["v_sar_deadline_s"] = std::to_string(v_sar_deadline_s);
  kv["v_sar_s"] = std::to_string(v_sar_s);
  kv["proximity_m"] = num(proximity_m);
  kv["proximity_stale_s"] = std::to_string(proximity_stale_s);
  kv["tugging_speed_min_kn"] = num(tugging_speed_min_kn);
  kv["tugging_speed_max_kn"] = num(tugging_speed_max_kn);
  kv["trawling_speed_min_kn"] = num(trawling_speed_min_kn);
  kv["trawling_speed_max_kn"] = num(trawling_speed_max_kn);
  kv["sar_speed_min_kn"] = num(sar_speed_min_kn);
  kv["default_service_min_kn"] = num(default_service_min_kn);
  kv["default_service_max_kn"] = num(default_service_max_kn);
  kv["near_coast_m"] = num(near_coast_m);
  kv["near_ports_m"] = num(near_ports_m);
  return kv;
}

std::pair<double, double> MaritimeContext::service_band(const std::string& mmsi) const {
  VesselInfo info = vessels.info(mmsi);
  return {info.service_min_kn.value_or(thr.default_service_min_kn),
          info.service_max_kn.value_or(thr.default_service_max_kn)};
}

const std::vector<std::string>& area_type_names() {
  static const std::vector<std::string> names{"fishing", "natura", "anchorage", "nearPorts",
                                              "nearCoast"};
  return names;
}

const std::vector<std::string>& output_activities() {
  static const std::vector<std::string> names{
      "highSpeedNC", "anchoredOrMoored", "drifting",  "trawling", "tugging",
      "pilotBoarding", "rendezVous",       "loitering", "sar"};
  return names;
}

// ---------------------------------------------------------------------------
// Pattern declarations
// ---------------------------------------------------------------------------

namespace {

using Ctx = std::shared_ptr<const MaritimeContext>;

const std::string& vessel_of(const Occurrence& o) { return (*o.args)[0]; }

FluentId within(const std::string& v, const std::string& type) {
  return FluentId{"withinArea", {v, type}, "true"};
}

void declare_events(Engine& e) {
  e.declare_event("velocity", 1);  // vals: speed kn, cog deg, true heading deg
  e.declare_event("gap_start", 1);
  e.declare_event("gap_end", 1);
  e.declare_event("stop_start", 1);
  e.declare_event("stop_end", 1);
  e.declare_event("slow_motion_start", 1);
  e.declare_event("slow_motion_end", 1);
  e.declare_event("change_in_speed_start", 1);
  e.declare_event("change_in_speed_end", 1);
  e.declare_event("change_in_heading", 1);
  e.declare_event("entersArea", 2);
  e.declare_event("leavesArea", 2);
  e.declare_input_fluent("proximity", {"true"});
}

void declare_within_area(Engine& e, const Ctx& ctx) {
  SimpleFluentDecl f;
  f.name = "withinArea";
  f.initiations.push_back(
      {Trigger::on_event("entersArea"), [ctx](const Occurrence& o, EpochContext&, PointSink& s) {
         auto it = ctx->area_types.find((*o.args)[1]);
         if (it != ctx->area_types.end()) s.initiate({vessel_of(o), it->second}, "true", o.t);
       }});
  f.terminations.push_back(
      {Trigger::on_event("leavesArea"), [ctx](const Occurrence& o, EpochContext&, PointSink& s) {
         auto it = ctx->area_types.find((*o.args)[1]);
         if (it != ctx->area_types.end()) s.terminate({vessel_of(o), it->second}, "true", o.t);
       }});
  // No location assumption once the vessel goes silent.
  f.terminations.push_back(
      {Trigger::on_event("gap_start"), [](const Occurrence& o, EpochContext&, PointSink& s) {
         for (const std::string& type : area_type_names())
           s.terminate({vessel_of(o), type}, "true", o.t);
       }});
  e.declare_simple(std::move(f));
}

// gap and stopped share the shape: the value is fixed by port containment at
// the starting event.
void declare_port_split_fluent(Engine& e, std::string name, std::string start_event,
                               std::string end_event) {
  SimpleFluentDecl f;
  f.name = std::move(name);
  f.values = {"nearPorts", "farFromPorts"};
  f.reads = {"withinArea"};
  f.initiations.push_back({Trigger::on_event(std::move(start_event)),
                           [](const Occurrence& o, EpochContext& ctx, PointSink& s) {
                             const std::string& v = vessel_of(o);
                             bool near = ctx.holds_at(within(v, "nearPorts"), o.t);
                             s.initiate({v}, near ? "nearPorts" : "farFromPorts", o.t);
                           }});
  f.terminations.push_back({Trigger::on_event(std::move(end_event)),
                            [](const Occurrence& o, EpochContext&, PointSink& s) {
                              s.terminate_all({vessel_of(o)}, o.t);
                            }});
  e.declare_simple(std::move(f));
}

void declare_event_pair_fluent(Engine& e, std::string name, std::string start_event,
                               std::string end_event) {
  SimpleFluentDecl f;
  f.name = std::move(name);
  f.initiations.push_back({Trigger::on_event(std::move(start_event)),
                           [](const Occurrence& o, EpochContext&, PointSink& s) {
                             s.initiate({vessel_of(o)}, "true", o.t);
                           }});
  f.terminations.push_back({Trigger::on_event(std::move(end_event)),
                            [](const Occurrence& o, EpochContext&, PointSink& s) {
                              s.terminate_all({vessel_of(o)}, o.t);
                            }});
  e.declare_simple(std::move(f));
}

void declare_moving_speed(Engine& e, const Ctx& ctx) {
  SimpleFluentDecl f;
  f.name = "movingSpeed";
  f.values = {"below", "normal", "above"};
  f.initiations.push_back(
      {Trigger::on_event("velocity"), [ctx](const Occurrence& o, EpochContext&, PointSink& s) {
         double speed = o.vals[0];
         if (speed < ctx->thr.stop_max_kn) return;
         auto [lo, hi] = ctx->service_band(vessel_of(o));
         const char* band = speed >= hi ? "above" : (speed >= lo ? "normal" : "below");
         s.initiate({vessel_of(o)}, band, o.t);
       }});
  f.terminations.push_back(
      {Trigger::on_event("velocity"), [ctx](const Occurrence& o, EpochContext&, PointSink& s) {
         if (o.vals[0] < ctx->thr.stop_max_kn) s.terminate_all({vessel_of(o)}, o.t);
       }});
  e.declare_simple(std::move(f));
}

// Speed band fluent over velocity samples: holds while the sampled speed is
// inside [lo, hi). An unmet type requirement suppresses the fluent entirely.
void declare_speed_band(Engine& e, const Ctx& ctx, std::string name, double lo, double hi,
                        std::optional<VesselType> only_type) {
  SimpleFluentDecl f;
  f.name = std::move(name);
  f.initiations.push_back(
      {Trigger::on_event("velocity"),
       [ctx, lo, hi, only_type](const Occurrence& o, EpochContext&, PointSink& s) {
         if (only_type && !ctx->is_type(vessel_of(o), *only_type)) return;
         if (o.vals[0] >= lo && o.vals[0] < hi) s.initiate({vessel_of(o)}, "true", o.t);
       }});
  f.terminations.push_back(
      {Trigger::on_event("velocity"),
       [ctx, lo, hi, only_type](const Occurrence& o, EpochContext&, PointSink& s) {
         if (only_type && !ctx->is_type(vessel_of(o), *only_type)) return;
         if (o.vals[0] < lo || o.vals[0] >= hi) s.terminate({vessel_of(o)}, "true", o.t);
       }});
  e.declare_simple(std::move(f));
}

void declare_under_way(Engine& e) {
  SdFluentDecl f;
  f.name = "underWay";
  f.drivers = {"movingSpeed"};
  f.reads = {"movingSpeed"};
  f.body = [](const Args& a) {
    return SdExpr::unite({SdExpr::leaf("movingSpeed", a, "below"),
                          SdExpr::leaf("movingSpeed", a, "normal"),
                          SdExpr::leaf("movingSpeed", a, "above")});
  };
  e.declare_sd(std::move(f));
}

void declare_high_speed_nc(Engine& e, const Ctx& ctx) {
  SimpleFluentDecl f;
  f.name = "highSpeedNC";
  f.reads = {"withinArea"};
  f.initiations.push_back(
      {Trigger::on_event("velocity"), [ctx](const Occurrence& o, EpochContext& ec, PointSink& s) {
         const std::string& v = vessel_of(o);
         if (o.vals[0] > ctx->thr.v_hs_kn && ec.holds_at(within(v, "nearCoast"), o.t))
           s.initiate({v}, "true", o.t);
       }});
  f.terminations.push_back(
      {Trigger::on_event("velocity"), [ctx](const Occurrence& o, EpochContext&, PointSink& s) {
         if (o.vals[0] <= ctx->thr.v_hs_kn) s.terminate({vessel_of(o)}, "true", o.t);
       }});
  f.terminations.push_back(
      {Trigger::on_end("withinArea"), [](const Occurrence& o, EpochContext&, PointSink& s) {
         if ((*o.args)[1] == "nearCoast") s.terminate({vessel_of(o)}, "true", o.t);
       }});
  e.declare_simple(std::move(f));
}

void declare_drifting(Engine& e, const Ctx& ctx) {
  SimpleFluentDecl f;
  f.name = "drifting";
  f.reads = {"underWay"};
  f.initiations.push_back(
      {Trigger::on_event("velocity"), [ctx](const Occurrence& o, EpochContext& ec, PointSink& s) {
         if (o.vals[2] == 511.0) return;  // true heading unavailable
         const std::string& v = vessel_of(o);
         if (geo::angle_diff_deg(o.vals[1], o.vals[2]) > ctx->thr.v_ad_deg &&
             ec.holds_at(FluentId{"underWay", {v}, "true"}, o.t))
           s.initiate({v}, "true", o.t);
       }});
  f.terminations.push_back(
      {Trigger::on_event("velocity"), [ctx](const Occurrence& o, EpochContext&, PointSink& s) {
         if (o.vals[2] == 511.0) return;
         if (geo::angle_diff_deg(o.vals[1], o.vals[2]) <= ctx->thr.v_ad_deg)
           s.terminate({vessel_of(o)}, "true", o.t);
       }});
  f.terminations.push_back(
      {Trigger::on_end("underWay"), [](const Occurrence& o, EpochContext&, PointSink& s) {
         s.terminate({vessel_of(o)}, "true", o.t);
       }});
  e.declare_simple(std::move(f));
}

void declare_trawling_movement(Engine& e, const Ctx& ctx) {
  SimpleFluentDecl f;
  f.name = "trawlingMovement";
  f.deadline = ctx->thr.v_trawl_deadline_s;
  f.reads = {"withinArea"};
  f.initiations.push_back(
      {Trigger::on_event("change_in_heading"),
       [ctx](const Occurrence& o, EpochContext& ec, PointSink& s) {
         const std::string& v = vessel_of(o);
         if (ctx->is_type(v, VesselType::fishing) && ec.holds_at(within(v, "fishing"), o.t))
           s.initiate({v}, "true", o.t);
       }});
  f.terminations.push_back(
      {Trigger::on_end("withinArea"), [](const Occurrence& o, EpochContext&, PointSink& s) {
         if ((*o.args)[1] == "fishing") s.terminate({vessel_of(o)}, "true", o.t);
       }});
  e.declare_simple(std::move(f));
}

void declare_sar_movement(Engine& e, const Ctx& ctx) {
  SimpleFluentDecl f;
  f.name = "sarMovement";
  f.deadline = ctx->thr.v_sar_deadline_s;
  f.initiations.push_back(
      {Trigger::on_event("change_in_heading"),
       [ctx](const Occurrence& o, EpochContext&, PointSink& s) {
         if (ctx->is_type(vessel_of(o), VesselType::sar)) s.initiate({vessel_of(o)}, "true", o.t);
       }});
  f.initiations.push_back(
      {Trigger::on_start("changingSpeed"), [ctx](const Occurrence& o, EpochContext&, PointSink& s) {
         if (ctx->is_type(vessel_of(o), VesselType::sar)) s.initiate({vessel_of(o)}, "true", o.t);
       }});
  e.declare_simple(std::move(f));
}

SdExpr low_or_stopped_far(const std::string& v) {
  return SdExpr::unite({SdExpr::leaf("lowSpeed", {v}),
                        SdExpr::leaf("stopped", {v}, "farFromPorts")});
}

void declare_composites(Engine& e, const Ctx& ctx) {
  const Thresholds& thr = ctx->thr;

  SdFluentDecl aorm;
  aorm.name = "anchoredOrMoored";
  aorm.drivers = {"stopped"};
  aorm.reads = {"stopped", "withinArea"};
  aorm.body = [v_aorm = thr.v_aorm_s](const Args& a) {
    const std::string& v = a[0];
    return SdExpr::longer_than(
        SdExpr::unite({SdExpr::intersect({SdExpr::leaf("stopped", {v}, "farFromPorts"),
                                          SdExpr::leaf("withinArea", {v, "anchorage"})}),
                       SdExpr::leaf("stopped", {v}, "nearPorts")}),
        v_aorm);
  };
  e.declare_sd(std::move(aorm));

  SdFluentDecl trawling;
  trawling.name = "trawling";
  trawling.drivers = {"trawlingMovement"};
  trawling.reads = {"trawlingMovement", "trawlingSpeed"};
  trawling.body = [v_trawl = thr.v_trawl_s](const Args& a) {
    return SdExpr::longer_than(SdExpr::intersect({SdExpr::leaf("trawlingMovement", a),
                                                  SdExpr::leaf("trawlingSpeed", a)}),
                               v_trawl);
  };
  e.declare_sd(std::move(trawling));

  auto one_is = [ctx](const Args& a, VesselType t) {
    return ctx->is_type(a[0], t) || ctx->is_type(a[1], t);
  };

  SdFluentDecl tugging;
  tugging.name = "tugging";
  tugging.drivers = {"proximity"};
  tugging.reads = {"proximity", "tuggingSpeed"};
  tugging.guard = [one_is](const Args& a) {
    return one_is(a, VesselType::tug) && !one_is(a, VesselType::pilot);
  };
  tugging.body = [v_tug = thr.v_tug_s](const Args& a) {
    return SdExpr::longer_than(
        SdExpr::intersect({SdExpr::leaf("proximity", a), SdExpr::leaf("tuggingSpeed", {a[0]}),
                           SdExpr::leaf("tuggingSpeed", {a[1]})}),
        v_tug);
  };
  e.declare_sd(std::move(tugging));

  SdFluentDecl pilot;
  pilot.name = "pilotBoarding";
  pilot.drivers = {"proximity"};
  pilot.reads = {"proximity", "lowSpeed", "stopped", "withinArea"};
  pilot.guard = [one_is](const Args& a) {
    return one_is(a, VesselType::pilot) && !one_is(a, VesselType::tug);
  };
  pilot.body = [v_pil = thr.v_pil_s](const Args& a) {
    return SdExpr::longer_than(
        SdExpr::complement(
            SdExpr::intersect({low_or_stopped_far(a[0]), low_or_stopped_far(a[1]),
                               SdExpr::leaf("proximity", a)}),
            {SdExpr::leaf("withinArea", {a[0], "nearCoast"}),
             SdExpr::leaf("withinArea", {a[1], "nearCoast"})}),
        v_pil);
  };
  e.declare_sd(std::move(pilot));

  // Like pilot boarding, but additionally away from ports and with neither a
  // tug nor a pilot involved.
  SdFluentDecl rendezvous;
  rendezvous.name = "rendezVous";
  rendezvous.drivers = {"proximity"};
  rendezvous.reads = {"proximity", "lowSpeed", "stopped", "withinArea"};
  rendezvous.guard = [one_is](const Args& a) {
    return !one_is(a, VesselType::tug) && !one_is(a, VesselType::pilot);
  };
  rendezvous.body = [v_rv = thr.v_rv_s](const Args& a) {
    return SdExpr::longer_than(
        SdExpr::complement(
            SdExpr::intersect({low_or_stopped_far(a[0]), low_or_stopped_far(a[1]),
                               SdExpr::leaf("proximity", a)}),
            {SdExpr::leaf("withinArea", {a[0], "nearPorts"}),
             SdExpr::leaf("withinArea", {a[1], "nearPorts"}),
             SdExpr::leaf("withinArea", {a[0], "nearCoast"}),
             SdExpr::leaf("withinArea", {a[1], "nearCoast"})}),
        v_rv);
  };
  e.declare_sd(std::move(rendezvous));

  SdFluentDecl loitering;
  loitering.name = "loitering";
  loitering.drivers = {"stopped", "lowSpeed"};
  loitering.reads = {"stopped", "lowSpeed", "anchoredOrMoored", "withinArea"};
  loitering.body = [v_ltr = thr.v_ltr_s](const Args& a) {
    const std::string& v = a[0];
    return SdExpr::longer_than(
        SdExpr::complement(low_or_stopped_far(v),
                           {SdExpr::leaf("anchoredOrMoored", {v}),
                            SdExpr::leaf("withinArea", {v, "nearCoast"})}),
        v_ltr);
  };
  e.declare_sd(std::move(loitering));

  SdFluentDecl sar;
  sar.name = "sar";
  sar.drivers = {"sarMovement"};
  sar.reads = {"sarMovement", "sarSpeed"};
  sar.body = [v_sar = thr.v_sar_s](const Args& a) {
    return SdExpr::longer_than(
        SdExpr::intersect({SdExpr::leaf("sarSpeed", a), SdExpr::leaf("sarMovement", a)}), v_sar);
  };
  e.declare_sd(std::move(sar));
}

}  // namespace

void declare_maritime_patterns(Engine& e, std::shared_ptr<const MaritimeContext> ctx) {
  const Thresholds& thr = ctx->thr;
  declare_events(e);
  declare_within_area(e, ctx);
  declare_port_split_fluent(e, "gap", "gap_start", "gap_end");
  declare_port_split_fluent(e, "stopped", "stop_start", "stop_end");
  declare_event_pair_fluent(e, "lowSpeed", "slow_motion_start", "slow_motion_end");
  declare_event_pair_fluent(e, "changingSpeed", "change_in_speed_start", "change_in_speed_end");
  declare_moving_speed(e, ctx);
  declare_speed_band(e, ctx, "tuggingSpeed", thr.tugging_speed_min_kn, thr.tugging_speed_max_kn,
                     std::nullopt);
  declare_speed_band(e, ctx, "trawlingSpeed", thr.trawling_speed_min_kn,
                     thr.trawling_speed_max_kn, VesselType::fishing);
  declare_speed_band(e, ctx, "sarSpeed", thr.sar_speed_min_kn,
                     std::numeric_limits<double>::infinity(), VesselType::sar);
  declare_under_way(e);
  declare_high_speed_nc(e, ctx);
  declare_drifting(e, ctx);
  declare_trawling_movement(e, ctx);
  declare_sar_movement(e, ctx);
  declare_composites(e, ctx);
  for (const std::string& name : output_activities()) e.mark_output(name);
  e.finalize();
}

}  // namespace maricer::patterns
