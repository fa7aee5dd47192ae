#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "stancelp/corpus.hpp"
#include "stancelp/indicator.hpp"
#include "stancelp/lp.hpp"

namespace stancelp {

struct RunConfig {
  std::filesystem::path manifest;
  std::optional<std::filesystem::path> labels;
  std::optional<std::filesystem::path> lexicon;
  std::filesystem::path market_csv;
  std::filesystem::path controls_csv;
  std::filesystem::path out_dir = "out";
  std::string ticker;  // defaults to the market CSV file stem

  IndicatorKind kind = IndicatorKind::kSentiment;
  Granularity granularity = Granularity::kFine;
  std::optional<Scenario> scenario;  // nullopt = all
  std::optional<Section> section;    // nullopt = all
  std::string speaker_filter;
  bool zero_fill = false;

  int horizons = 15;
  int reps = 2000;
  double alpha = 0.10;
  std::optional<std::uint64_t> seed;
  unsigned threads = 0;

  // The JSON object as supplied, minus out_dir; echoed into run_summary.json.
  std::string echo_json = "{}";

  // Relative paths resolve against base_dir. Every violation is collected
  // into one kInvalidConfig error whose details name the offending fields.
  static RunConfig FromJson(std::string_view json_text, const std::filesystem::path& base_dir);

  std::string ResolvedTicker() const;
  BootstrapConfig Bootstrap() const;
  AggregateOptions Aggregation() const;
};

namespace pipeline {

inline constexpr std::string_view kStages[] = {"segment",  "label",    "aggregate",
                                               "outcomes", "estimate", "plot"};

bool IsStage(std::string_view name);

// Checks the fields a stage (or "run") needs; throws kInvalidConfig listing
// all missing ones.
void RequireFields(const RunConfig& config, std::string_view stage);

// Runs one stage, reading the previous stage's artifacts from out_dir.
// "run" executes every stage in order. Returns a one-line human summary.
std::string RunStage(const RunConfig& config, std::string_view stage);

// Stage artifact formats shared with external tools.
std::string SerializeSentences(const std::vector<Sentence>& sentences);
std::vector<Sentence> ParseSentences(std::string_view text);
std::string SerializeEvents(const std::vector<corpus::EventInfo>& events);
std::vector<corpus::EventInfo> ParseEvents(std::string_view text);

// Machine-readable error object written to stderr by the CLI.
std::string ErrorJson(std::string_view code, std::string_view message,
                      const std::vector<std::string>& details);

}  // namespace pipeline
}  // namespace stancelp
