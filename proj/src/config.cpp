#include "maricer/config.hpp"

#include <filesystem>
#include <fstream>
#include <stdexcept>

namespace maricer::io {

namespace {

std::string trim(const std::string& s) {
  std::size_t a = s.find_first_not_of(" \t\r");
  if (a == std::string::npos) return "";
  std::size_t b = s.find_last_not_of(" \t\r");
  return s.substr(a, b - a + 1);
}

}  // namespace

std::map<std::string, std::string> read_kv_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open config file: " + path);
  std::map<std::string, std::string> kv;
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
    std::string t = trim(line);
    if (t.empty()) continue;
    auto eq = t.find('=');
    if (eq == std::string::npos)
      throw ConfigError(path + ":" + std::to_string(lineno) + ": expected key = value");
    std::string key = trim(t.substr(0, eq));
    std::string value = trim(t.substr(eq + 1));
    if (key.empty())
      throw ConfigError(path + ":" + std::to_string(lineno) + ": empty key");
    kv[key] = value;
  }
  return kv;
}

void write_kv_file(const std::string& path, const std::map<std::string, std::string>& kv) {
  std::ofstream out(path);
  if (!out) throw ConfigError("cannot write config file: " + path);
  for (const auto& [k, v] : kv) out << k << " = " << v << "\n";
}

Duration parse_duration(const std::string& s) {
  if (s.empty()) throw ConfigError("empty duration");
  char suffix = s.back();
  std::string digits = s;
  Duration mult = 1;
  if (suffix == 's') {
    digits.pop_back();
  } else if (suffix == 'm') {
    digits.pop_back();
    mult = 60;
  } else if (suffix == 'h') {
    digits.pop_back();
    mult = 3600;
  }
  std::size_t used = 0;
  Duration value = 0;
  try {
    value = std::stoll(digits, &used);
  } catch (const std::exception&) {
    throw ConfigError("invalid duration: " + s);
  }
  if (used != digits.size()) throw ConfigError("invalid duration: " + s);
  return value * mult;
}

RunConfig RunConfig::from_file(const std::string& path) {
  auto kv = read_kv_file(path);
  RunConfig cfg;
  auto dir = std::filesystem::path(path).parent_path();
  auto get = [&](const char* key) -> std::string {
    auto it = kv.find(key);
    return it == kv.end() ? std::string{} : it->second;
  };
  auto get_path = [&](const char* key) -> std::string {
    std::string v = get(key);
    if (v.empty()) return v;
    std::filesystem::path p(v);
    return p.is_absolute() ? v : (dir / p).string();  // relative to the config file
  };
  if (!get("window_size").empty()) cfg.window_size = parse_duration(get("window_size"));
  if (!get("window_slide").empty()) cfg.window_slide = parse_duration(get("window_slide"));
  if (!get("mode").empty()) cfg.mode = get("mode");
  if (!get("batch").empty()) cfg.batch = get("batch") == "1" || get("batch") == "true";
  cfg.ais_csv = get_path("ais_csv");
  cfg.areas_geojson = get_path("areas_geojson");
  cfg.vessel_registry = get_path("vessel_registry");
  cfg.thresholds = get_path("thresholds");
  cfg.output_dir = get_path("output_dir");
  cfg.validate();
  return cfg;
}

void RunConfig::validate() const {
  if (window_slide <= 0 || window_size < window_slide)
    throw ConfigError("config: window_size >= window_slide > 0 required");
  if (mode != "enriched" && mode != "critical")
    throw ConfigError("config: mode must be 'enriched' or 'critical'");
  if (ais_csv.empty() || areas_geojson.empty() || vessel_registry.empty() || thresholds.empty())
    throw ConfigError(
        "config: ais_csv, areas_geojson, vessel_registry and thresholds are required");
}

}  // namespace maricer::io
