#ifndef MARICER_CONFIG_HPP
#define MARICER_CONFIG_HPP

#include <map>
#include <stdexcept>
#include <string>

#include "maricer/intervals.hpp"

namespace maricer::io {

/// Malformed or missing configuration; the CLI maps this to exit code 2
/// (data problems map to exit code 3).
struct ConfigError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// Flat `key = value` file, one entry per line, '#' starts a comment.
std::map<std::string, std::string> read_kv_file(const std::string& path);
void write_kv_file(const std::string& path, const std::map<std::string, std::string>& kv);

/// "7200", "7200s", "120m" and "2h" are all accepted.
Duration parse_duration(const std::string& s);

struct RunConfig {
  Duration window_size = 7200;
  Duration window_slide = 7200;
  std::string mode = "enriched";  // enriched | critical
  bool batch = false;             // one window covering the whole stream
  std::string ais_csv;
  std::string areas_geojson;
  std::string vessel_registry;
  std::string thresholds;
  std::string output_dir;

  static RunConfig from_file(const std::string& path);
  void validate() const;
};

}  // namespace maricer::io

#endif  // MARICER_CONFIG_HPP
