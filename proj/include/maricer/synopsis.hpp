#ifndef MARICER_SYNOPSIS_HPP
#define MARICER_SYNOPSIS_HPP

#include <span>
#include <string>
#include <vector>

#include "maricer/intervals.hpp"

namespace maricer::synopsis {

/// AIS true heading code for "not available".
inline constexpr double kHeadingUnavailable = 511.0;

/// One decoded AIS position report (Brest dataset column set).
struct AisMessage {
  std::string mmsi;
  TimePoint t = 0;
  double lon = 0;
  double lat = 0;
  double speed_kn = 0;       // speed over ground
  double cog_deg = 0;        // course over ground
  double heading_deg = 511;  // true heading; 511 when unavailable
  std::string nav_status;    // passed through
  std::string rate_of_turn;  // passed through
};

// Ends sort before starts so that back-to-back episodes at the same
// time-point (a gap ending exactly where the next begins) keep each
// start/end pair alternating in the sorted event stream.
enum class CriticalKind {
  gap_end,
  gap_start,
  stop_end,
  stop_start,
  slow_motion_end,
  slow_motion_start,
  change_in_speed_end,
  change_in_speed_start,
  change_in_heading,
};

const char* to_string(CriticalKind k);

/// A critical event attached to a vessel. `t` is the semantic time-point of
/// the event; `detected_at` is the time of the message whose arrival revealed
/// it. The two differ only for gap_start, which is timestamped at the last
/// message before the silence but detected when transmission resumes.
struct CriticalEvent {
  TimePoint t = 0;
  CriticalKind kind = CriticalKind::gap_start;
  std::string vessel;
  TimePoint detected_at = 0;
};

struct SynopsisConfig {
  Duration gap_s = 1800;           // silence longer than this is a gap
  double stop_max_kn = 0.5;        // stopped band [0, stop_max)
  double slow_max_kn = 5.0;        // low speed band [stop_max, slow_max)
  double speed_change_ratio = 0.25;  // relative delta that flags a speed change
  double heading_change_deg = 15.0;  // minimal angular difference that flags a turn
};

struct SynopsisResult {
  std::vector<CriticalEvent> events;     // sorted by (t, vessel, kind)
  std::vector<std::size_t> retained;     // indices of critical messages, stream order
  std::vector<bool> accepted;            // per input index; false for dropped rows
  std::size_t dropped_out_of_order = 0;  // per-vessel duplicates/regressions
};

/// Labels a time-sorted message stream with critical events. The retained
/// (compressed) stream is exactly the set of messages that triggered at
/// least one critical event.
SynopsisResult label_stream(std::span<const AisMessage> messages, const SynopsisConfig& cfg);

/// Fraction of the input discarded by compression: 1 - compressed/raw.
double compression_ratio(std::size_t raw_count, std::size_t compressed_count);

}  // namespace maricer::synopsis

#endif  // MARICER_SYNOPSIS_HPP
