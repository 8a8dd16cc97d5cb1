#ifndef MARICER_EVALUATE_HPP
#define MARICER_EVALUATE_HPP

#include <map>
#include <optional>
#include <string>

#include "maricer/csv.hpp"
#include "maricer/intervals.hpp"

namespace maricer::io {

/// Per-second comparison of one activity between two runs. True positives
/// are the seconds recognized in both; false positives the seconds recognized
/// only in the candidate; false negatives only in the reference. Open
/// (in-progress) rows are not scored.
struct ActivityScore {
  Duration tp = 0;
  Duration fp = 0;
  Duration fn = 0;
  std::optional<double> precision() const;
  std::optional<double> recall() const;
  std::optional<double> f1() const;
};

struct EvalReport {
  std::map<std::string, ActivityScore> per_activity;
  ActivityScore total;
};

/// Scores candidate rows against reference rows for one activity.
ActivityScore score_activity(std::span<const ActivityRow> reference,
                             std::span<const ActivityRow> candidate);

/// Compares two run output directories activity by activity. Both runs must
/// cover the same stream span (checked against their meta files).
EvalReport compare_runs(const std::string& reference_dir, const std::string& candidate_dir);

std::string format_report(const EvalReport& report);

}  // namespace maricer::io

#endif  // MARICER_EVALUATE_HPP
