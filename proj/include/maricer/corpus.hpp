#ifndef MARICER_CORPUS_HPP
#define MARICER_CORPUS_HPP

#include <cstdint>
#include <string>

#include "maricer/intervals.hpp"

namespace maricer::corpus {

/// Epoch base of the generated streams (2015-10-01 00:00:00 UTC).
inline constexpr TimePoint kBaseEpoch = 1443657600;

/// Profiles:
///  - golden:      scripted scenario suite exercising all nine activities
///                 with hand-checkable timings (seed has no effect)
///  - equivalence: randomized activity mix without gaps, for windowing tests
///  - bench:       large smooth fleet for throughput measurements
struct CorpusSpec {
  std::string profile = "golden";
  std::uint64_t seed = 1;
  int vessels = 1120;  // bench profile only
};

/// Writes ais.csv, areas.geojson, vessels.csv, thresholds.conf and run.conf
/// into out_dir.
void generate(const CorpusSpec& spec, const std::string& out_dir);

}  // namespace maricer::corpus

#endif  // MARICER_CORPUS_HPP
