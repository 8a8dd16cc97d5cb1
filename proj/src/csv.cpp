#include "maricer/csv.hpp"

#include <charconv>
#include <cstdio>
#include <fstream>
#include <sstream>
#include <stdexcept>

namespace maricer::io {

namespace {

std::vector<std::string> split(const std::string& line, char sep) {
  std::vector<std::string> out;
  std::string cur;
  for (char c : line) {
    if (c == sep) {
      out.push_back(cur);
      cur.clear();
    } else if (c != '\r') {
      cur += c;
    }
  }
  out.push_back(cur);
  return out;
}

bool to_double(const std::string& s, double& out) {
  if (s.empty()) return false;
  char* end = nullptr;
  out = std::strtod(s.c_str(), &end);
  return end == s.c_str() + s.size();
}

bool to_time(const std::string& s, TimePoint& out) {
  auto [p, ec] = std::from_chars(s.data(), s.data() + s.size(), out);
  return ec == std::errc{} && p == s.data() + s.size();
}

}  // namespace

AisReadResult read_ais_csv(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open AIS csv: " + path);
  AisReadResult res;
  std::string line;
  bool first = true;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    if (first) {
      first = false;
      if (line.rfind("sourcemmsi", 0) == 0) continue;  // header row
    }
    auto cols = split(line, ',');
    if (cols.size() != 9) {
      ++res.parse_errors;
      continue;
    }
    synopsis::AisMessage m;
    m.mmsi = cols[0];
    m.nav_status = cols[1];
    m.rate_of_turn = cols[2];
    double heading = 511;
    if (m.mmsi.empty() || !to_double(cols[3], m.speed_kn) || !to_double(cols[4], m.cog_deg) ||
        !to_double(cols[5], heading) || !to_double(cols[6], m.lon) || !to_double(cols[7], m.lat) ||
        !to_time(cols[8], m.t)) {
      ++res.parse_errors;
      continue;
    }
    m.heading_deg = heading;
    res.messages.push_back(std::move(m));
  }
  return res;
}

void write_ais_csv(const std::string& path, std::span<const synopsis::AisMessage> messages) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot write AIS csv: " + path);
  out << "sourcemmsi,navigationalstatus,rateofturn,speedoverground,courseoverground,"
         "trueheading,lon,lat,t\n";
  char buf[256];
  for (const synopsis::AisMessage& m : messages) {
    std::snprintf(buf, sizeof buf, "%s,%s,%s,%.2f,%.1f,%.1f,%.6f,%.6f,%lld\n", m.mmsi.c_str(),
                  m.nav_status.c_str(), m.rate_of_turn.c_str(), m.speed_kn, m.cog_deg,
                  m.heading_deg, m.lon, m.lat, static_cast<long long>(m.t));
    out << buf;
  }
}

void write_critical_csv(const std::string& path,
                        std::span<const synopsis::CriticalEvent> events) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot write critical csv: " + path);
  out << "t,event,vessel,aux\n";
  for (const synopsis::CriticalEvent& e : events)
    out << e.t << ',' << synopsis::to_string(e.kind) << ',' << e.vessel << ',' << e.detected_at
        << "\n";
}

void write_activity_csv(const std::string& path, std::span<const ActivityRow> rows) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot write activity csv: " + path);
  out << "activity,vessels,start,end,open\n";
  for (const ActivityRow& r : rows) {
    out << r.activity << ',';
    for (std::size_t i = 0; i < r.vessels.size(); ++i) {
      if (i) out << '|';
      out << r.vessels[i];
    }
    out << ',' << r.start << ',' << r.end << ',' << (r.open ? 1 : 0) << "\n";
  }
}

std::vector<ActivityRow> read_activity_csv(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open activity csv: " + path);
  std::vector<ActivityRow> rows;
  std::string line;
  bool first = true;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    if (first) {
      first = false;
      if (line.rfind("activity,", 0) == 0) continue;
    }
    auto cols = split(line, ',');
    if (cols.size() != 5) throw std::runtime_error(path + ": malformed row: " + line);
    ActivityRow r;
    r.activity = cols[0];
    r.vessels = split(cols[1], '|');
    if (!to_time(cols[2], r.start) || !to_time(cols[3], r.end))
      throw std::runtime_error(path + ": malformed row: " + line);
    r.open = cols[4] == "1";
    rows.push_back(std::move(r));
  }
  return rows;
}

}  // namespace maricer::io
