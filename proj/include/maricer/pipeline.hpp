#ifndef MARICER_PIPELINE_HPP
#define MARICER_PIPELINE_HPP

#include <map>
#include <string>
#include <vector>

#include "maricer/config.hpp"
#include "maricer/engine.hpp"

namespace maricer::io {

struct WindowStats {
  TimePoint query_time = 0;
  std::size_t input_events = 0;
  double wall_ms = 0;
};

struct RunSummary {
  std::size_t messages = 0;        // accepted messages
  std::size_t parse_errors = 0;
  std::size_t dropped_out_of_order = 0;
  std::size_t critical_messages = 0;
  std::size_t late_events = 0;
  std::size_t vessel_count = 0;
  TimePoint t_min = 0, t_max = 0;
  std::vector<WindowStats> windows;
  /// Aggregated recognition output: activity -> instance -> intervals. An
  /// open tail means the activity was still in progress at the final window.
  std::map<std::string, std::map<Args, IntervalList>> activities;
};

/// Full run: parse, synopsis, spatial preprocessing, windowed recognition.
/// Writes activity CSVs, synopsis CSVs, timing log and meta file into
/// cfg.output_dir unless it is empty.
RunSummary run_pipeline(const RunConfig& cfg);

/// Sliding-window output aggregation: closed intervals from every window
/// plus the open tails of the final window. Exposed for equivalence tests.
class AssertionAggregator {
 public:
  void add_window(const std::vector<FluentAssertion>& assertions, bool final_window);
  std::map<FluentId, IntervalList> result() const;

 private:
  std::map<FluentId, std::vector<Interval>> closed_;
  std::map<FluentId, std::vector<Interval>> final_open_;
};

struct BenchRow {
  Duration window_size = 0;
  std::string mode;
  std::size_t windows = 0;
  double mean_events = 0;
  double mean_ms = 0;
  double max_ms = 0;
};

/// Runs the pipeline across window sizes in both input modes and reports
/// mean input events and recognition times per window.
std::vector<BenchRow> benchmark(const RunConfig& base, const std::vector<Duration>& sizes,
                                Duration slide);

std::string format_bench(const std::vector<BenchRow>& rows);

}  // namespace maricer::io

#endif  // MARICER_PIPELINE_HPP
