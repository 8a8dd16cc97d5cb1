#include "maricer/corpus.hpp"

#include <algorithm>
#include <filesystem>
#include <fstream>
#include <random>
#include <stdexcept>

#include "json.hpp"
#include "maricer/config.hpp"
#include "maricer/csv.hpp"
#include "maricer/patterns.hpp"
#include "maricer/synopsis.hpp"

namespace maricer::corpus {

namespace fs = std::filesystem;
using synopsis::AisMessage;

namespace {

// 50 m / 300 m in degrees of latitude: inside / outside the 100 m proximity
// threshold with a wide margin.
constexpr double kNearDeg = 0.000449;
constexpr double kFarDeg = 0.0027;

struct Builder {
  std::vector<AisMessage> msgs;
  std::vector<std::string> registry_rows;

  void vessel(const std::string& mmsi, const std::string& type, const std::string& smin = "",
              const std::string& smax = "") {
    registry_rows.push_back(mmsi + "," + type + "," + smin + "," + smax);
  }

  void add(const std::string& mmsi, TimePoint t, double lon, double lat, double speed, double cog,
           double heading) {
    AisMessage m;
    m.mmsi = mmsi;
    m.t = kBaseEpoch + t;
    m.lon = lon;
    m.lat = lat;
    m.speed_kn = speed;
    m.cog_deg = cog;
    m.heading_deg = heading;
    m.nav_status = "0";
    m.rate_of_turn = "0";
    msgs.push_back(std::move(m));
  }
};

nlohmann::json rect_feature(const std::string& id, const std::string& type, double lon0,
                            double lon1, double lat0, double lat1) {
  nlohmann::json ring = nlohmann::json::array(
      {{lon0, lat0}, {lon1, lat0}, {lon1, lat1}, {lon0, lat1}, {lon0, lat0}});
  return nlohmann::json{{"type", "Feature"},
                        {"properties", {{"area_id", id}, {"area_type", type}}},
                        {"geometry", {{"type", "Polygon"}, {"coordinates", {ring}}}}};
}

nlohmann::json standard_areas() {
  nlohmann::json features = nlohmann::json::array();
  features.push_back(rect_feature("NC1", "nearCoast", -5.50, -4.50, 48.3973, 48.4030));
  features.push_back(rect_feature("NP1", "nearPorts", -5.3401, -5.2599, 47.7730, 47.8269));
  features.push_back(rect_feature("ANCHZ", "anchorage", -5.11, -5.09, 47.74, 47.76));
  features.push_back(rect_feature("FISH1", "fishing", -5.00, -4.80, 47.90, 48.10));
  features.push_back(rect_feature("NAT1", "natura", -4.90, -4.70, 47.95, 48.15));
  return nlohmann::json{{"type", "FeatureCollection"}, {"features", features}};
}

// --- golden scenario scripts ------------------------------------------------
// Times are seconds relative to kBaseEpoch, one report per minute. Expected
// activity intervals (see tests): anchoredOrMoored 200000001 [661,8461) and
// 200000002 [61,7261); highSpeedNC 200000003 [601,2101); drifting 200000004
// [901,2701); trawling 200000005 [901,8701) and 200000015 [901,7921);
// tugging pair 06|07 [1200,4800); pilotBoarding 08|09 [1800,3000);
// rendezVous 10|11 [2460,5160); loitering 10 and 11 [2401,5221) plus
// 200000012 [1,2701); sar 200000013 [601,7201).

void anchored_in_anchorage(Builder& b) {
  const std::string v = "200000001";
  b.vessel(v, "cargo", "9", "15");
  for (TimePoint t = 0; t <= 9600; t += 60) {
    double lon, lat = 47.75;
    if (t < 600)
      lon = -5.15 + 0.004 * (static_cast<double>(t) / 60.0);  // approach, outside
    else if (t < 9000)
      lon = -5.10;  // inside the anchorage box
    else
      lon = -5.085 + 0.002 * (static_cast<double>(t - 9000) / 60.0);  // departed
    double speed = (t >= 660 && t <= 8400) ? 0.3 : 8.0;
    b.add(v, t, lon, lat, speed, 90, 90);
  }
}

void moored_near_port(Builder& b) {
  const std::string v = "200000002";
  b.vessel(v, "tanker", "8", "14");
  for (TimePoint t = 0; t <= 9000; t += 60) {
    double lon = t < 7500 ? -5.30 : -5.345 - 0.002 * (static_cast<double>(t - 7500) / 60.0);
    double speed = t == 0 ? 0.6 : (t <= 7200 ? 0.3 : 6.0);
    b.add(v, t, lon, 47.80, speed, 270, 270);
  }
}

void speeding_near_coast(Builder& b) {
  const std::string v = "200000003";
  b.vessel(v, "cargo", "9", "15");
  for (TimePoint t = 0; t <= 3000; t += 60) {
    double lat = (t >= 300 && t < 2400) ? 48.3985 : 48.3940;
    double lon = -5.20 + 0.002 * (static_cast<double>(t) / 60.0);
    double speed;
    if (t < 600)
      speed = 3.0;
    else if (t < 2100)
      speed = 7.0;
    else if (t < 2700)
      speed = 4.0;
    else
      speed = 7.0;
    b.add(v, t, lon, lat, speed, 90, 90);
  }
}

void drifting_vessel(Builder& b) {
  const std::string v = "200000004";
  b.vessel(v, "cargo", "9", "15");
  for (TimePoint t = 0; t <= 3600; t += 60) {
    double speed = t < 120 ? 4.0 : 10.0;
    double heading = (t >= 900 && t < 2700) ? 140.0 : 90.0;
    double lon = -4.40 + 0.002 * (static_cast<double>(t) / 60.0);
    b.add(v, t, lon, 47.80, speed, 90, heading);
  }
}

void trawler(Builder& b, const std::string& v, double lat, TimePoint last_turn, bool band_exit) {
  b.vessel(v, "fishing", "4", "9");
  for (TimePoint t = 0; t <= 9600; t += 60) {
    double plat, lon;
    if (t < 600) {
      plat = 48.12;  // north of the fishing area
      lon = -4.95;
    } else if (t < (band_exit ? 9000 : 8700)) {
      plat = lat;
      lon = -4.95 + 0.02 * std::sin(static_cast<double>(t) / 600.0);
    } else {
      plat = lat;
      lon = -5.02;  // west of the fishing area
    }
    // heading flips every five minutes while trawling
    double heading = 70;
    if (t >= 900) {
      TimePoint turns = std::min(t, last_turn) / 300 - 2;  // flips completed since t=900
      heading = (turns % 2 == 1) ? 110 : 70;
    }
    double speed = 5.0;
    if (band_exit && t >= 7740) {
      if (t == 7740)
        speed = 8.0;
      else if (t == 7800)
        speed = 8.4;
      else if (t == 7860)
        speed = 8.8;
      else
        speed = 9.2;  // drifts out of the trawling band without a critical label
    }
    b.add(v, t, lon, plat, speed, heading, heading);
  }
}

void tug_escort(Builder& b) {
  b.vessel("200000006", "tug", "2", "12");
  b.vessel("200000007", "cargo", "9", "15");
  for (TimePoint t = 0; t <= 6000; t += 60) {
    double lon = -4.62 + 0.001 * (static_cast<double>(t) / 60.0);
    double speed = (t >= 1140 && t <= 4740) ? 5.0 : 8.0;
    double dlat = (t >= 1200 && t < 4800) ? kNearDeg : kFarDeg;
    b.add("200000007", t, lon, 47.70, speed, 90, 90);
    b.add("200000006", t, lon, 47.70 + dlat, speed, 90, 90);
  }
}

void pilot_boarding(Builder& b) {
  b.vessel("200000008", "pilot", "3", "20");
  b.vessel("200000009", "tanker", "8", "14");
  for (TimePoint t = 0; t <= 4200; t += 60) {
    bool meeting = t >= 1740 && t <= 3000;
    double pilot_speed = meeting ? 2.0 : 8.0;
    double tanker_speed = meeting ? 0.3 : 8.0;
    double dlat = (t >= 1800 && t < 3000) ? kNearDeg : kFarDeg;
    b.add("200000009", t, -4.50, 47.72, tanker_speed, 0, 0);
    b.add("200000008", t, -4.50, 47.72 + dlat, pilot_speed, 0, 0);
  }
}

void rendez_vous(Builder& b) {
  b.vessel("200000010", "fishing", "4", "9");
  b.vessel("200000011", "fishing", "4", "9");
  for (TimePoint t = 0; t <= 6000; t += 60) {
    bool meeting = t >= 2400 && t <= 5160;
    double speed = meeting ? 0.2 : 6.0;
    double dlat = (t >= 2460 && t < 5160) ? kNearDeg : kFarDeg;
    b.add("200000011", t, -4.55, 47.65, speed, 0, 0);
    b.add("200000010", t, -4.55, 47.65 + dlat, speed, 0, 0);
  }
}

void loiterer(Builder& b) {
  const std::string v = "200000012";
  b.vessel(v, "other");
  for (TimePoint t = 0; t <= 3600; t += 60) {
    double speed = t <= 2640 ? 2.0 : 8.0;
    double lon = -4.70 + 0.0005 * std::sin(static_cast<double>(t) / 300.0);
    b.add(v, t, lon, 47.62, speed, 0, 0);
  }
}

void sar_sweep(Builder& b) {
  const std::string v = "200000013";
  b.vessel(v, "sar", "5", "25");
  for (TimePoint t = 0; t <= 7800; t += 60) {
    double heading = 30;
    if (t >= 600) {
      TimePoint flips = (std::min(t, TimePoint{5400}) - 600) / 480 + 1;
      heading = (flips % 2 == 1) ? 90 : 30;
    }
    double lon = -4.45 + 0.003 * std::sin(static_cast<double>(t) / 700.0);
    b.add(v, t, lon, 47.60, 10.0, heading, heading);
  }
}

void gap_vessel(Builder& b) {
  const std::string v = "200000014";
  b.vessel(v, "cargo", "9", "15");
  auto lat_at = [](TimePoint t) {
    if (t < 600) return 48.175;                    // north of the natura box
    if (t <= 1800) return 48.14 - 0.00001 * static_cast<double>(t - 600);
    if (t < 6000) return 48.17;                    // resumed outside
    if (t < 6600) return 48.14;                    // back inside
    return 48.17;
  };
  for (TimePoint t = 0; t <= 7200; t += 60) {
    if (t > 1800 && t < 5400) continue;  // transmission gap
    b.add(v, t, -4.75, lat_at(t), 8.0, 180, 180);
  }
}

void cruise_fleet(Builder& b) {
  for (int i = 0; i < 20; ++i) {
    std::string v = "2001000" + std::string(i < 9 ? "0" : "") + std::to_string(i + 1);
    b.vessel(v, "cargo", "9", "15");
    double lat = 47.50 + 0.004 * i;
    for (TimePoint t = 0; t <= 14340; t += 60) {
      double heading = t < 7200 ? 90.0 : 110.0;
      double lon = -5.40 + 0.003 * (static_cast<double>(t) / 60.0);
      b.add(v, t, lon, lat, 12.0, heading, heading);
    }
  }
}

void build_golden(Builder& b) {
  anchored_in_anchorage(b);
  moored_near_port(b);
  speeding_near_coast(b);
  drifting_vessel(b);
  trawler(b, "200000005", 48.00, 8100, false);
  tug_escort(b);
  pilot_boarding(b);
  rendez_vous(b);
  loiterer(b);
  sar_sweep(b);
  gap_vessel(b);
  trawler(b, "200000015", 47.965, 7500, true);
  cruise_fleet(b);
}

// --- equivalence profile ----------------------------------------------------
// Randomized activity mix with no communication gaps; used for the
// sliding-window-equals-batch checks and the guard exclusivity sweeps.

void build_equivalence(Builder& b, std::uint64_t seed) {
  std::mt19937_64 rng(seed * 2654435761ULL + 17);
  const TimePoint span = 21600;
  auto uni = [&](TimePoint lo, TimePoint hi) {
    return std::uniform_int_distribution<TimePoint>(lo, hi)(rng);
  };
  auto unid = [&](double lo, double hi) {
    return std::uniform_real_distribution<double>(lo, hi)(rng);
  };
  int id = 0;
  auto next_mmsi = [&] {
    ++id;
    return "3000000" + std::string(id < 10 ? "0" : "") + std::to_string(id);
  };

  // cruisers
  for (int i = 0; i < 8; ++i) {
    std::string v = next_mmsi();
    b.vessel(v, "cargo", "9", "15");
    double lat = 47.50 + 0.006 * i;
    double speed = std::round(unid(8, 14) * 10) / 10;
    TimePoint turn = uni(1200, span - 1200);
    for (TimePoint t = 0; t <= span; t += 60) {
      double heading = t < turn ? 90.0 : 120.0;
      b.add(v, t, -5.40 + 0.0025 * (static_cast<double>(t) / 60.0), lat, speed, heading, heading);
    }
  }

  // stop episodes: in the anchorage, near the port, and in open sea
  struct StopSpot {
    double lon, lat;
    const char* type;
  };
  StopSpot spots[] = {{-5.105, 47.75, "cargo"},
                      {-5.095, 47.75, "tanker"},
                      {-5.30, 47.81, "cargo"},
                      {-4.66, 47.66, "other"}};
  for (const StopSpot& spot : spots) {
    std::string v = next_mmsi();
    b.vessel(v, spot.type);
    TimePoint stop_from = uni(900, 4000);
    TimePoint stop_until = stop_from + uni(2000, 9000);
    for (TimePoint t = 0; t <= span; t += 60) {
      bool stopped = t >= stop_from && t < stop_until;
      double speed = stopped ? 0.2 : 7.5;
      double lon = stopped ? spot.lon : spot.lon + 0.01 + 0.001 * (static_cast<double>(t) / 60.0);
      b.add(v, t, lon, spot.lat, speed, 45, 45);
    }
  }

  // trawlers with randomized turn period and session length
  for (int i = 0; i < 2; ++i) {
    std::string v = next_mmsi();
    b.vessel(v, "fishing", "4", "9");
    TimePoint period = 60 * uni(4, 9);  // 240..540 s, inside the deadline
    TimePoint fish_from = uni(600, 1800);
    TimePoint fish_until = fish_from + uni(4000, 9000);
    double lat = 47.92 + 0.05 * i;
    double speed = std::round(unid(2, 8) * 10) / 10;
    for (TimePoint t = 0; t <= span; t += 60) {
      bool in = t >= fish_from && t < fish_until;
      double lat_now = in ? lat : 48.12;
      double heading = 70;
      if (in && t >= fish_from + period)
        heading = ((t - fish_from) / period) % 2 == 0 ? 70 : 110;
      b.add(v, t, -4.90 - 0.03 - 0.02 * i, lat_now, speed, heading, heading);
    }
  }

  // pair meets: tug escort, pilot boarding, rendez-vous
  struct Meet {
    const char* t1;
    const char* t2;
    double lon, lat;
    double s1, s2;  // speeds during the meet
  };
  Meet meets[] = {{"tug", "cargo", -4.58, 47.70, 5.0, 5.0},
                  {"pilot", "tanker", -4.50, 47.73, 2.0, 0.2},
                  {"fishing", "fishing", -4.54, 47.64, 0.2, 0.2}};
  for (const Meet& m : meets) {
    std::string v1 = next_mmsi();
    std::string v2 = next_mmsi();
    b.vessel(v1, m.t1, m.t1 == std::string("tug") ? "2" : "", m.t1 == std::string("tug") ? "12" : "");
    b.vessel(v2, m.t2);
    TimePoint from = uni(1500, 5000);
    TimePoint until = from + uni(1500, 4000);
    for (TimePoint t = 0; t <= span; t += 60) {
      bool meeting = t >= from && t < until;
      double dlat = meeting ? kNearDeg : kFarDeg;
      double s1 = meeting ? m.s1 : 8.0;
      double s2 = meeting ? m.s2 : 8.0;
      b.add(v1, t, m.lon, m.lat, s1, 10, 10);
      b.add(v2, t, m.lon, m.lat + dlat, s2, 10, 10);
    }
  }

  // sar sweep
  {
    std::string v = next_mmsi();
    b.vessel(v, "sar", "5", "25");
    TimePoint period = 60 * uni(5, 20);
    TimePoint until = uni(5000, 9000);
    double speed = std::round(unid(4, 15) * 10) / 10;
    for (TimePoint t = 0; t <= span; t += 60) {
      double heading = 30;
      if (t >= 600 && t < until) heading = ((t - 600) / period) % 2 == 0 ? 90 : 30;
      b.add(v, t, -4.44, 47.61, speed, heading, heading);
    }
  }

  // loiterer
  {
    std::string v = next_mmsi();
    b.vessel(v, "other");
    TimePoint from = uni(600, 3000);
    TimePoint until = from + uni(2000, 5000);
    for (TimePoint t = 0; t <= span; t += 60) {
      double speed = (t >= from && t < until) ? 1.5 : 7.0;
      b.add(v, t, -4.72, 47.61, speed, 200, 200);
    }
  }
}

// --- bench profile ------------------------------------------------------

void build_bench(Builder& b, int vessels) {
  const char* types[] = {"cargo", "fishing", "tanker", "other", "tug",
                         "cargo", "fishing", "tanker", "other", "pilot"};
  for (int i = 0; i < vessels; ++i) {
    std::string v = "4" + std::to_string(100000000 + i);
    b.vessel(v, types[i % 10]);
    bool buddy = i % 20 == 1;  // sails 50 m from vessel i-1
    int lane = buddy ? i - 1 : i;
    double lat = 46.50 + 0.008 * (lane % 50) + (buddy ? kNearDeg : 0.0);
    double lon0 = -6.40 + 0.01 * (lane / 50);
    double speed = 8.0 + static_cast<double>(i % 7);
    for (TimePoint t = 0; t <= 56400; t += 1200) {
      double heading = ((t / 4800) % 2 == 0) ? 90.0 : 70.0;
      b.add(v, t, lon0 + 0.4 * (static_cast<double>(t) / 56400.0), lat, speed, heading, heading);
    }
  }
}

}  // namespace

void generate(const CorpusSpec& spec, const std::string& out_dir) {
  Builder b;
  if (spec.profile == "golden") {
    build_golden(b);
  } else if (spec.profile == "equivalence") {
    build_equivalence(b, spec.seed);
  } else if (spec.profile == "bench") {
    build_bench(b, spec.vessels);
  } else {
    throw std::runtime_error("unknown corpus profile: " + spec.profile);
  }

  fs::create_directories(out_dir);
  std::stable_sort(b.msgs.begin(), b.msgs.end(), [](const AisMessage& x, const AisMessage& y) {
    return x.t != y.t ? x.t < y.t : x.mmsi < y.mmsi;
  });
  io::write_ais_csv((fs::path(out_dir) / "ais.csv").string(), b.msgs);

  {
    std::ofstream out(fs::path(out_dir) / "areas.geojson");
    out << standard_areas().dump(1) << "\n";
  }
  {
    std::ofstream out(fs::path(out_dir) / "vessels.csv");
    out << "mmsi,type,service_min,service_max\n";
    std::sort(b.registry_rows.begin(), b.registry_rows.end());
    for (const std::string& row : b.registry_rows) out << row << "\n";
  }
  io::write_kv_file((fs::path(out_dir) / "thresholds.conf").string(),
                    patterns::Thresholds{}.to_kv());
  std::map<std::string, std::string> run;
  run["window_size"] = "4h";
  run["window_slide"] = "2h";
  run["mode"] = "enriched";
  run["ais_csv"] = "ais.csv";
  run["areas_geojson"] = "areas.geojson";
  run["vessel_registry"] = "vessels.csv";
  run["thresholds"] = "thresholds.conf";
  run["output_dir"] = "out";
  io::write_kv_file((fs::path(out_dir) / "run.conf").string(), run);
}

}  // namespace maricer::corpus
