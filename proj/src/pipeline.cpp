#include "maricer/pipeline.hpp"

#include <algorithm>
#include <chrono>
#include <fstream>
#include <filesystem>
#include <set>
#include <sstream>

#include "maricer/csv.hpp"
#include "maricer/geo.hpp"
#include "maricer/patterns.hpp"
#include "maricer/synopsis.hpp"

namespace maricer::io {

namespace fs = std::filesystem;

void AssertionAggregator::add_window(const std::vector<FluentAssertion>& assertions,
                                     bool final_window) {
  for (const FluentAssertion& a : assertions) {
    for (const Interval& iv : a.intervals) {
      if (iv.is_open()) {
        if (final_window) final_open_[a.fluent].push_back(iv);
      } else {
        closed_[a.fluent].push_back(iv);
      }
    }
  }
}

std::map<FluentId, IntervalList> AssertionAggregator::result() const {
  std::map<FluentId, std::vector<Interval>> raw = closed_;
  for (const auto& [id, ivs] : final_open_) {
    auto& dst = raw[id];
    dst.insert(dst.end(), ivs.begin(), ivs.end());
  }
  std::map<FluentId, IntervalList> out;
  for (auto& [id, ivs] : raw) {
    std::sort(ivs.begin(), ivs.end(),
              [](const Interval& a, const Interval& b) { return a.start < b.start; });
    IntervalList list;
    for (const Interval& iv : ivs) list.append(iv);
    if (!list.empty()) out[id] = std::move(list);
  }
  return out;
}

namespace {

struct Feed {
  InputEvent event;
  TimePoint detect = 0;  // when the pipeline learns about it
};

InputEvent critical_to_event(const synopsis::CriticalEvent& e) {
  return InputEvent{synopsis::to_string(e.kind), {e.vessel}, e.t, {}};
}

void write_outputs(const RunConfig& cfg, const RunSummary& summary,
                   const synopsis::SynopsisResult& syn,
                   const std::vector<synopsis::AisMessage>& messages) {
  fs::create_directories(cfg.output_dir);
  const TimePoint final_qt =
      summary.windows.empty() ? summary.t_max : summary.windows.back().query_time;

  for (const std::string& activity : patterns::output_activities()) {
    std::vector<ActivityRow> rows;
    auto it = summary.activities.find(activity);
    if (it != summary.activities.end()) {
      for (const auto& [args, list] : it->second) {
        for (const Interval& iv : list) {
          if (iv.is_open() && iv.start > final_qt) continue;  // beyond the report horizon
          ActivityRow r;
          r.activity = activity;
          r.vessels = args;
          r.start = iv.start;
          r.end = iv.is_open() ? final_qt : iv.end;
          r.open = iv.is_open();
          rows.push_back(std::move(r));
        }
      }
    }
    write_activity_csv((fs::path(cfg.output_dir) / (activity + ".csv")).string(), rows);
  }

  write_critical_csv((fs::path(cfg.output_dir) / "critical_events.csv").string(), syn.events);
  std::vector<synopsis::AisMessage> compressed;
  compressed.reserve(syn.retained.size());
  for (std::size_t i : syn.retained) compressed.push_back(messages[i]);
  write_ais_csv((fs::path(cfg.output_dir) / "compressed.csv").string(), compressed);

  {
    std::ofstream out(fs::path(cfg.output_dir) / "timing.csv");
    out << "window,query_time,input_events,wall_ms\n";
    for (std::size_t i = 0; i < summary.windows.size(); ++i) {
      const WindowStats& w = summary.windows[i];
      char buf[128];
      std::snprintf(buf, sizeof buf, "%zu,%lld,%zu,%.3f\n", i + 1,
                    static_cast<long long>(w.query_time), w.input_events, w.wall_ms);
      out << buf;
    }
  }

  std::map<std::string, std::string> meta;
  meta["t_min"] = std::to_string(summary.t_min);
  meta["t_max"] = std::to_string(summary.t_max);
  meta["mode"] = cfg.mode;
  meta["window_size"] = std::to_string(cfg.batch ? 0 : cfg.window_size);
  meta["window_slide"] = std::to_string(cfg.window_slide);
  meta["batch"] = cfg.batch ? "1" : "0";
  meta["messages"] = std::to_string(summary.messages);
  meta["critical_messages"] = std::to_string(summary.critical_messages);
  meta["late_events"] = std::to_string(summary.late_events);
  write_kv_file((fs::path(cfg.output_dir) / "meta.txt").string(), meta);
}

}  // namespace

RunSummary run_pipeline(const RunConfig& cfg) {
  cfg.validate();
  RunSummary summary;

  auto thr = patterns::Thresholds::from_kv(read_kv_file(cfg.thresholds));
  auto registry = geo::AreaRegistry::load_geojson(cfg.areas_geojson);
  auto vessels = patterns::VesselRegistry::load_csv(cfg.vessel_registry);

  AisReadResult ais = read_ais_csv(cfg.ais_csv);
  summary.parse_errors = ais.parse_errors;
  std::stable_sort(ais.messages.begin(), ais.messages.end(),
                   [](const synopsis::AisMessage& a, const synopsis::AisMessage& b) {
                     return a.t != b.t ? a.t < b.t : a.mmsi < b.mmsi;
                   });

  synopsis::SynopsisConfig scfg;
  scfg.gap_s = thr.gap_s;
  scfg.stop_max_kn = thr.stop_max_kn;
  scfg.slow_max_kn = thr.slow_max_kn;
  scfg.speed_change_ratio = thr.speed_change_ratio;
  scfg.heading_change_deg = thr.heading_change_deg;
  synopsis::SynopsisResult syn = synopsis::label_stream(ais.messages, scfg);
  summary.dropped_out_of_order = syn.dropped_out_of_order;
  summary.critical_messages = syn.retained.size();

  std::vector<synopsis::AisMessage> accepted;
  accepted.reserve(ais.messages.size());
  for (std::size_t i = 0; i < ais.messages.size(); ++i)
    if (syn.accepted[i]) accepted.push_back(ais.messages[i]);
  summary.messages = accepted.size();

  std::set<std::string> fleet;
  for (const auto& m : accepted) fleet.insert(m.mmsi);
  summary.vessel_count = fleet.size();

  auto ctx = std::make_shared<patterns::MaritimeContext>();
  ctx->vessels = std::move(vessels);
  ctx->area_types = registry.type_map();
  ctx->thr = thr;

  if (accepted.empty()) {
    if (!cfg.output_dir.empty()) write_outputs(cfg, summary, syn, ais.messages);
    return summary;
  }
  summary.t_min = accepted.front().t;
  summary.t_max = accepted.back().t;

  // Spatial preprocessing runs on the full accepted stream in both modes;
  // compression only thins the velocity samples.
  std::vector<geo::PositionFix> fixes;
  fixes.reserve(accepted.size());
  for (const auto& m : accepted)
    fixes.push_back(geo::PositionFix{m.mmsi, geo::GeoPoint{m.lon, m.lat}, m.t});
  std::vector<InputEvent> area_events = geo::derive_area_events(fixes, registry);

  std::vector<Feed> feeds;
  feeds.reserve(accepted.size() + area_events.size() + syn.events.size());
  const bool critical_mode = cfg.mode == "critical";
  if (critical_mode) {
    for (std::size_t i : syn.retained) {
      const auto& m = ais.messages[i];
      feeds.push_back(
          Feed{InputEvent{"velocity", {m.mmsi}, m.t, {m.speed_kn, m.cog_deg, m.heading_deg}}, m.t});
    }
  } else {
    for (const auto& m : accepted)
      feeds.push_back(
          Feed{InputEvent{"velocity", {m.mmsi}, m.t, {m.speed_kn, m.cog_deg, m.heading_deg}}, m.t});
  }
  for (const auto& e : syn.events) feeds.push_back(Feed{critical_to_event(e), e.detected_at});
  for (const auto& e : area_events) feeds.push_back(Feed{e, e.t});
  std::stable_sort(feeds.begin(), feeds.end(), [](const Feed& a, const Feed& b) {
    if (a.detect != b.detect) return a.detect < b.detect;
    if (a.event.t != b.event.t) return a.event.t < b.event.t;
    if (a.event.name != b.event.name) return a.event.name < b.event.name;
    return a.event.args < b.event.args;
  });

  // Window schedule: query times start0 + k*slide, k = 1..K. Batch mode uses
  // one window ending at the same final query time.
  const TimePoint start0 = summary.t_min - 1;
  const Duration slide = cfg.window_slide;
  const auto span = summary.t_max - start0;
  const std::size_t K = static_cast<std::size_t>((span + slide - 1) / slide);
  Duration eng_size = cfg.window_size, eng_slide = slide;
  std::size_t windows = K;
  if (cfg.batch) {
    eng_size = eng_slide = static_cast<Duration>(K) * slide;
    windows = 1;
  }

  Engine engine(WindowConfig{eng_size, eng_slide, start0 + eng_slide});
  patterns::declare_maritime_patterns(engine, ctx);
  geo::ProximityTracker prox(geo::ProximityConfig{thr.proximity_m, thr.proximity_stale_s});

  AssertionAggregator agg;
  std::size_t fed = 0, fixed = 0;
  for (std::size_t k = 1; k <= windows; ++k) {
    const TimePoint qt = engine.query_time();
    std::vector<InputEvent> batch;
    while (fed < feeds.size() && feeds[fed].detect <= qt) batch.push_back(feeds[fed++].event);
    AssertAck ack = engine.assert_events(batch);
    summary.late_events += ack.late;
    while (fixed < fixes.size() && fixes[fixed].t <= qt) {
      const auto& f = fixes[fixed++];
      prox.update(f.vessel, f.pos, f.t);
    }
    for (const auto& [pair, list] : prox.snapshot())
      engine.assert_fluent(FluentId{"proximity", {pair.first, pair.second}, "true"}, list);

    auto wall0 = std::chrono::steady_clock::now();
    WindowResult wr = engine.evaluate_window();
    auto wall1 = std::chrono::steady_clock::now();
    double ms = std::chrono::duration<double, std::milli>(wall1 - wall0).count();
    summary.windows.push_back(WindowStats{wr.query_time, wr.input_events, ms});
    agg.add_window(wr.assertions, k == windows);
  }

  for (auto& [id, list] : agg.result()) summary.activities[id.name][id.args] = list;

  if (!cfg.output_dir.empty()) write_outputs(cfg, summary, syn, ais.messages);
  return summary;
}

std::vector<BenchRow> benchmark(const RunConfig& base, const std::vector<Duration>& sizes,
                                Duration slide) {
  std::vector<BenchRow> rows;
  for (Duration size : sizes) {
    for (const char* mode : {"enriched", "critical"}) {
      RunConfig cfg = base;
      cfg.window_size = size;
      cfg.window_slide = std::min(slide, size);
      cfg.mode = mode;
      cfg.batch = false;
      cfg.output_dir.clear();
      RunSummary s = run_pipeline(cfg);
      BenchRow row;
      row.window_size = size;
      row.mode = mode;
      row.windows = s.windows.size();
      for (const WindowStats& w : s.windows) {
        row.mean_events += static_cast<double>(w.input_events);
        row.mean_ms += w.wall_ms;
        row.max_ms = std::max(row.max_ms, w.wall_ms);
      }
      if (!s.windows.empty()) {
        row.mean_events /= static_cast<double>(s.windows.size());
        row.mean_ms /= static_cast<double>(s.windows.size());
      }
      rows.push_back(row);
    }
  }
  return rows;
}

std::string format_bench(const std::vector<BenchRow>& rows) {
  std::ostringstream os;
  os << "window_s  mode       windows  mean_events  mean_ms   max_ms\n";
  for (const BenchRow& r : rows) {
    char buf[160];
    std::snprintf(buf, sizeof buf, "%-9lld %-10s %-8zu %-12.1f %-9.3f %.3f\n",
                  static_cast<long long>(r.window_size), r.mode.c_str(), r.windows, r.mean_events,
                  r.mean_ms, r.max_ms);
    os << buf;
  }
  return os.str();
}

}  // namespace maricer::io
