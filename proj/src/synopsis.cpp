#include "maricer/synopsis.hpp"

#include <algorithm>
#include <map>
#include <stdexcept>

#include "maricer/geo.hpp"

namespace maricer::synopsis {

const char* to_string(CriticalKind k) {
  switch (k) {
    case CriticalKind::gap_start: return "gap_start";
    case CriticalKind::gap_end: return "gap_end";
    case CriticalKind::stop_start: return "stop_start";
    case CriticalKind::stop_end: return "stop_end";
    case CriticalKind::slow_motion_start: return "slow_motion_start";
    case CriticalKind::slow_motion_end: return "slow_motion_end";
    case CriticalKind::change_in_speed_start: return "change_in_speed_start";
    case CriticalKind::change_in_speed_end: return "change_in_speed_end";
    case CriticalKind::change_in_heading: return "change_in_heading";
  }
  return "?";
}

namespace {

enum class Band { stop, slow, none };

Band band_of(double speed, const SynopsisConfig& cfg) {
  if (speed < cfg.stop_max_kn) return Band::stop;
  if (speed < cfg.slow_max_kn) return Band::slow;
  return Band::none;
}

double heading_of(const AisMessage& m) {
  return m.heading_deg == kHeadingUnavailable ? m.cog_deg : m.heading_deg;
}

struct VesselTrack {
  bool seen = false;
  TimePoint last_t = 0;
  std::size_t last_index = 0;  // message index of the previous report
  double last_speed = 0;
  double last_heading = 0;
  Band band = Band::none;
  bool changing_speed = false;
  int stable_count = 0;
};

}  // namespace

SynopsisResult label_stream(std::span<const AisMessage> messages, const SynopsisConfig& cfg) {
  if (!(cfg.stop_max_kn > 0 && cfg.stop_max_kn < cfg.slow_max_kn))
    throw std::invalid_argument("synopsis speed bands must satisfy 0 < stop < slow");
  SynopsisResult out;
  out.accepted.assign(messages.size(), true);
  std::map<std::string, VesselTrack> tracks;
  std::vector<bool> critical(messages.size(), false);

  for (std::size_t i = 0; i < messages.size(); ++i) {
    const AisMessage& m = messages[i];
    VesselTrack& tr = tracks[m.mmsi];
    if (tr.seen && m.t <= tr.last_t) {
      ++out.dropped_out_of_order;
      out.accepted[i] = false;
      continue;
    }
    bool is_critical = false;
    auto emit = [&](CriticalKind kind, TimePoint t) {
      out.events.push_back(CriticalEvent{t, kind, m.mmsi, m.t});
      is_critical = true;
    };

    if (!tr.seen) {
      tr.band = band_of(m.speed_kn, cfg);
      if (tr.band == Band::stop) emit(CriticalKind::stop_start, m.t);
      if (tr.band == Band::slow) emit(CriticalKind::slow_motion_start, m.t);
    } else {
      if (m.t - tr.last_t > cfg.gap_s) {
        emit(CriticalKind::gap_start, tr.last_t);
        emit(CriticalKind::gap_end, m.t);
        critical[tr.last_index] = true;  // the pre-gap report becomes critical
      }

      Band nb = band_of(m.speed_kn, cfg);
      if (nb != tr.band) {
        if (tr.band == Band::stop) emit(CriticalKind::stop_end, m.t);
        if (tr.band == Band::slow) emit(CriticalKind::slow_motion_end, m.t);
        if (nb == Band::stop) emit(CriticalKind::stop_start, m.t);
        if (nb == Band::slow) emit(CriticalKind::slow_motion_start, m.t);
        tr.band = nb;
      }

      double ratio = std::abs(m.speed_kn - tr.last_speed) / std::max(tr.last_speed, 1.0);
      if (!tr.changing_speed) {
        if (ratio > cfg.speed_change_ratio) {
          emit(CriticalKind::change_in_speed_start, m.t);
          tr.changing_speed = true;
          tr.stable_count = 0;
        }
      } else {
        if (ratio > cfg.speed_change_ratio) {
          tr.stable_count = 0;
        } else if (++tr.stable_count >= 2) {
          emit(CriticalKind::change_in_speed_end, m.t);
          tr.changing_speed = false;
        }
      }

      if (geo::angle_diff_deg(heading_of(m), tr.last_heading) > cfg.heading_change_deg)
        emit(CriticalKind::change_in_heading, m.t);
    }

    if (is_critical) critical[i] = true;
    tr.seen = true;
    tr.last_t = m.t;
    tr.last_index = i;
    tr.last_speed = m.speed_kn;
    tr.last_heading = heading_of(m);
  }

  for (std::size_t i = 0; i < messages.size(); ++i)
    if (critical[i]) out.retained.push_back(i);
  std::sort(out.events.begin(), out.events.end(),
            [](const CriticalEvent& a, const CriticalEvent& b) {
              if (a.t != b.t) return a.t < b.t;
              if (a.vessel != b.vessel) return a.vessel < b.vessel;
              return static_cast<int>(a.kind) < static_cast<int>(b.kind);
            });
  return out;
}

double compression_ratio(std::size_t raw_count, std::size_t compressed_count) {
  if (raw_count == 0) throw std::invalid_argument("compression ratio of an empty stream");
  if (compressed_count > raw_count)
    throw std::invalid_argument("compressed stream larger than raw stream");
  return 1.0 - static_cast<double>(compressed_count) / static_cast<double>(raw_count);
}

}  // namespace maricer::synopsis
