#include "maricer/evaluate.hpp"

#include <filesystem>
#include <sstream>
#include <stdexcept>

#include "maricer/config.hpp"
#include "maricer/patterns.hpp"

namespace maricer::io {

std::optional<double> ActivityScore::precision() const {
  if (tp + fp == 0) return std::nullopt;
  return static_cast<double>(tp) / static_cast<double>(tp + fp);
}

std::optional<double> ActivityScore::recall() const {
  if (tp + fn == 0) return std::nullopt;
  return static_cast<double>(tp) / static_cast<double>(tp + fn);
}

std::optional<double> ActivityScore::f1() const {
  auto p = precision(), r = recall();
  if (!p || !r || *p + *r == 0.0) return std::nullopt;
  return 2.0 * *p * *r / (*p + *r);
}

namespace {

using InstanceMap = std::map<std::vector<std::string>, IntervalList>;

InstanceMap instances_of(std::span<const ActivityRow> rows) {
  std::map<std::vector<std::string>, std::vector<Interval>> raw;
  for (const ActivityRow& r : rows) {
    if (r.open) continue;  // only closed seconds are scored
    if (r.start < r.end) raw[r.vessels].push_back(Interval{r.start, r.end});
  }
  InstanceMap out;
  for (auto& [key, ivs] : raw) {
    std::sort(ivs.begin(), ivs.end(),
              [](const Interval& a, const Interval& b) { return a.start < b.start; });
    IntervalList list;
    for (const Interval& iv : ivs) list.append(iv);
    out[key] = std::move(list);
  }
  return out;
}

}  // namespace

ActivityScore score_activity(std::span<const ActivityRow> reference,
                             std::span<const ActivityRow> candidate) {
  InstanceMap ref = instances_of(reference);
  InstanceMap cand = instances_of(candidate);
  ActivityScore score;
  for (const auto& [key, ref_list] : ref) {
    auto it = cand.find(key);
    if (it == cand.end()) {
      score.fn += ref_list.bounded_length();
      continue;
    }
    IntervalList common = intersect(ref_list, it->second);
    score.tp += common.bounded_length();
    score.fn += ref_list.bounded_length() - common.bounded_length();
    score.fp += it->second.bounded_length() - common.bounded_length();
  }
  for (const auto& [key, cand_list] : cand)
    if (!ref.count(key)) score.fp += cand_list.bounded_length();
  return score;
}

EvalReport compare_runs(const std::string& reference_dir, const std::string& candidate_dir) {
  namespace fs = std::filesystem;
  auto meta_ref = read_kv_file((fs::path(reference_dir) / "meta.txt").string());
  auto meta_cand = read_kv_file((fs::path(candidate_dir) / "meta.txt").string());
  for (const char* key : {"t_min", "t_max"}) {
    if (meta_ref.at(key) != meta_cand.at(key))
      throw std::runtime_error("compare: runs cover different stream spans (" +
                               std::string(key) + " " + meta_ref.at(key) + " vs " +
                               meta_cand.at(key) + ")");
  }
  EvalReport report;
  for (const std::string& activity : patterns::output_activities()) {
    auto ref = read_activity_csv((fs::path(reference_dir) / (activity + ".csv")).string());
    auto cand = read_activity_csv((fs::path(candidate_dir) / (activity + ".csv")).string());
    ActivityScore s = score_activity(ref, cand);
    report.total.tp += s.tp;
    report.total.fp += s.fp;
    report.total.fn += s.fn;
    report.per_activity[activity] = s;
  }
  return report;
}

std::string format_report(const EvalReport& report) {
  std::ostringstream os;
  auto fmt = [](std::optional<double> v) {
    if (!v) return std::string("n/a");
    char buf[16];
    std::snprintf(buf, sizeof buf, "%.4f", *v);
    return std::string(buf);
  };
  os << "activity            tp(s)      fp(s)      fn(s)      precision recall  f1\n";
  auto line = [&](const std::string& name, const ActivityScore& s) {
    char buf[160];
    std::snprintf(buf, sizeof buf, "%-19s %-10lld %-10lld %-10lld %-9s %-7s %s\n", name.c_str(),
                  static_cast<long long>(s.tp), static_cast<long long>(s.fp),
                  static_cast<long long>(s.fn), fmt(s.precision()).c_str(),
                  fmt(s.recall()).c_str(), fmt(s.f1()).c_str());
    os << buf;
  };
  for (const auto& [name, s] : report.per_activity) line(name, s);
  line("TOTAL", report.total);
  os << "(open intervals at window boundaries are not scored)\n";
  return os.str();
}

}  // namespace maricer::io
