#ifndef MARICER_CSV_HPP
#define MARICER_CSV_HPP

#include <map>
#include <span>
#include <string>
#include <vector>

#include "maricer/engine.hpp"
#include "maricer/synopsis.hpp"

namespace maricer::io {

struct AisReadResult {
  std::vector<synopsis::AisMessage> messages;
  std::size_t parse_errors = 0;  // unparsable rows, counted and skipped
};

/// Brest-compatible column set:
/// sourcemmsi,navigationalstatus,rateofturn,speedoverground,courseoverground,
/// trueheading,lon,lat,t
AisReadResult read_ais_csv(const std::string& path);
void write_ais_csv(const std::string& path, std::span<const synopsis::AisMessage> messages);

/// Critical-event CSV: t,event,vessel,aux (aux = detection time).
void write_critical_csv(const std::string& path,
                        std::span<const synopsis::CriticalEvent> events);

/// One interval of one activity instance. Open intervals are emitted with
/// end = the closing window's query time and open=1.
struct ActivityRow {
  std::string activity;
  std::vector<std::string> vessels;
  TimePoint start = 0;
  TimePoint end = 0;
  bool open = false;
};

/// Activity CSV: activity,vessels,start,end,open with pair instances joined
/// by '|'.
void write_activity_csv(const std::string& path, std::span<const ActivityRow> rows);
std::vector<ActivityRow> read_activity_csv(const std::string& path);

}  // namespace maricer::io

#endif  // MARICER_CSV_HPP
