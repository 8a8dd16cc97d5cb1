#include <cstdio>
#include <exception>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "maricer/config.hpp"
#include "maricer/corpus.hpp"
#include "maricer/evaluate.hpp"
#include "maricer/pipeline.hpp"

namespace {

constexpr int kExitOk = 0;
constexpr int kExitConfig = 2;
constexpr int kExitData = 3;

int run_command(const std::string& config_path, const std::string& mode_override,
                const std::string& out_override, bool batch) {
  maricer::io::RunConfig cfg = maricer::io::RunConfig::from_file(config_path);
  if (!mode_override.empty()) cfg.mode = mode_override;
  if (!out_override.empty()) cfg.output_dir = out_override;
  if (batch) cfg.batch = true;
  cfg.validate();
  maricer::io::RunSummary s = maricer::io::run_pipeline(cfg);
  std::printf("messages            %zu (parse errors %zu, out-of-order %zu)\n", s.messages,
              s.parse_errors, s.dropped_out_of_order);
  std::printf("critical messages   %zu\n", s.critical_messages);
  std::printf("vessels             %zu\n", s.vessel_count);
  std::printf("windows             %zu (late events %zu)\n", s.windows.size(), s.late_events);
  double total_ms = 0, max_ms = 0;
  std::size_t mean_events = 0;
  for (const auto& w : s.windows) {
    total_ms += w.wall_ms;
    max_ms = std::max(max_ms, w.wall_ms);
    mean_events += w.input_events;
  }
  if (!s.windows.empty()) {
    std::printf("recognition time    mean %.3f ms, max %.3f ms per window\n",
                total_ms / static_cast<double>(s.windows.size()), max_ms);
    std::printf("input events        mean %.1f per window\n",
                static_cast<double>(mean_events) / static_cast<double>(s.windows.size()));
  }
  std::size_t instances = 0;
  for (const auto& [activity, inst] : s.activities) instances += inst.size();
  std::printf("recognized          %zu activity instances\n", instances);
  if (!cfg.output_dir.empty()) std::printf("outputs written to  %s\n", cfg.output_dir.c_str());
  return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"maricer: composite maritime activity recognition over AIS streams"};
  app.require_subcommand(1);

  std::string config_path, mode_override, out_override;
  bool batch = false;
  auto* run = app.add_subcommand("run", "run the recognition pipeline");
  run->add_option("--config", config_path, "run configuration file")->required();
  run->add_option("--mode", mode_override, "override input mode: enriched|critical");
  run->add_option("--out", out_override, "override output directory");
  run->add_flag("--batch", batch, "single window covering the whole stream");

  std::string ref_dir, cand_dir;
  auto* compare = app.add_subcommand("compare", "score a candidate run against a reference run");
  compare->add_option("--ref", ref_dir, "reference output directory")->required();
  compare->add_option("--cand", cand_dir, "candidate output directory")->required();

  std::string bench_config, windows_csv = "2h,4h,8h,16h", slide_str = "2h";
  auto* bench = app.add_subcommand("bench", "recognition throughput across window sizes");
  bench->add_option("--config", bench_config, "run configuration file")->required();
  bench->add_option("--windows", windows_csv, "comma-separated window sizes (default 2h,4h,8h,16h)");
  bench->add_option("--slide", slide_str, "slide step (default 2h)");

  std::string corpus_out, profile = "golden";
  std::uint64_t seed = 1;
  int vessels = 1120;
  auto* gen = app.add_subcommand("gen-corpus", "generate a synthetic AIS corpus");
  gen->add_option("--out", corpus_out, "output directory")->required();
  gen->add_option("--seed", seed, "random seed (equivalence profile)");
  gen->add_option("--vessels", vessels, "fleet size (bench profile)");
  gen->add_option("--profile", profile, "golden|equivalence|bench");

  CLI11_PARSE(app, argc, argv);

  try {
    if (run->parsed()) return run_command(config_path, mode_override, out_override, batch);
    if (compare->parsed()) {
      maricer::io::EvalReport report = maricer::io::compare_runs(ref_dir, cand_dir);
      std::fputs(maricer::io::format_report(report).c_str(), stdout);
      return kExitOk;
    }
    if (bench->parsed()) {
      maricer::io::RunConfig cfg = maricer::io::RunConfig::from_file(bench_config);
      std::vector<maricer::Duration> sizes;
      std::stringstream ss(windows_csv);
      std::string item;
      while (std::getline(ss, item, ',')) sizes.push_back(maricer::io::parse_duration(item));
      maricer::Duration slide = maricer::io::parse_duration(slide_str);
      auto rows = maricer::io::benchmark(cfg, sizes, slide);
      std::fputs(maricer::io::format_bench(rows).c_str(), stdout);
      return kExitOk;
    }
    if (gen->parsed()) {
      maricer::corpus::CorpusSpec spec;
      spec.profile = profile;
      spec.seed = seed;
      spec.vessels = vessels;
      maricer::corpus::generate(spec, corpus_out);
      std::printf("corpus written to %s\n", corpus_out.c_str());
      return kExitOk;
    }
  } catch (const maricer::io::ConfigError& e) {
    std::fprintf(stderr, "config error: %s\n", e.what());
    return kExitConfig;
  } catch (const std::exception& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return kExitData;
  }
  return kExitOk;
}
