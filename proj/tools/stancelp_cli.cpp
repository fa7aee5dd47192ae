// Command-line front end. Talks to the library only through the C API.
#include <CLI11.hpp>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <nlohmann/json.hpp>
#include <optional>
#include <sstream>
#include <string>

#include "stancelp/stancelp.h"

namespace fs = std::filesystem;
using Json = nlohmann::ordered_json;

namespace {

struct Flags {
  std::string config;
  std::optional<std::string> manifest, labels, lexicon, market_csv, controls_csv, out_dir,
      ticker, kind, granularity, scenario, section, speaker_filter;
  std::optional<int> horizons, reps, threads;
  std::optional<double> alpha;
  std::optional<std::uint64_t> seed;
  bool zero_fill = false;
};

void AddFlags(CLI::App* cmd, Flags* f) {
  cmd->add_option("--config", f->config, "Run config JSON; flags override its fields");
  cmd->add_option("--manifest", f->manifest, "Transcript manifest JSON");
  cmd->add_option("--labels", f->labels, "Label file (JSON Lines)");
  cmd->add_option("--lexicon", f->lexicon, "Lexicon JSON for the baseline classifier");
  cmd->add_option("--market-csv", f->market_csv, "Daily prices: date,open,close");
  cmd->add_option("--controls-csv", f->controls_csv,
                  "Controls: date,ffr_shock,fg_shock,ap_shock,shadow_rate");
  cmd->add_option("--out", f->out_dir, "Output directory (default: out)");
  cmd->add_option("--ticker", f->ticker, "Outcome name (default: market CSV stem)");
  cmd->add_option("--kind", f->kind, "sentiment | voice_tone");
  cmd->add_option("--granularity", f->granularity, "fine | coarse");
  cmd->add_option("--scenario", f->scenario, "all | press_conference | hearing");
  cmd->add_option("--section", f->section, "all | opening_remarks | qanda | readout");
  cmd->add_option("--speaker-filter", f->speaker_filter, "Keep speakers containing this text");
  cmd->add_option("--horizons", f->horizons, "Largest horizon H (estimates 0..H)");
  cmd->add_option("--reps", f->reps, "Bootstrap replicates");
  cmd->add_option("--alpha", f->alpha, "1 - confidence level");
  cmd->add_option("--seed", f->seed, "Bootstrap seed");
  cmd->add_option("--threads", f->threads, "Worker threads (0 = all cores)");
  cmd->add_flag("--zero-fill", f->zero_fill, "Score events without polar labels as 0");
}

std::string ReadText(const fs::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot read file '" + path.string() + "'");
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return buffer.str();
}

std::string ErrorJson(const std::string& code, const std::string& message,
                      const std::string& detail) {
  Json doc;
  doc["error"]["code"] = code;
  doc["error"]["message"] = message;
  doc["error"]["details"] = Json::array({detail});
  return doc.dump();
}

int RunCommand(const std::string& stage, const Flags& f) {
  Json config = Json::object();
  std::string base_dir;
  if (!f.config.empty()) {
    try {
      config = Json::parse(ReadText(f.config));
    } catch (const nlohmann::json::parse_error& e) {
      std::cerr << ErrorJson("InvalidConfig", e.what(), f.config) << "\n";
      return 2;
    } catch (const std::exception& e) {
      std::cerr << ErrorJson("IoError", e.what(), f.config) << "\n";
      return 2;
    }
    base_dir = fs::absolute(f.config).parent_path().string();
  }
  // Paths given on the command line are relative to the working directory.
  auto path = [&](const char* key, const std::optional<std::string>& v) {
    if (v) config[key] = fs::absolute(*v).string();
  };
  auto value = [&](const char* key, const auto& v) {
    if (v) config[key] = *v;
  };
  path("manifest", f.manifest);
  path("labels", f.labels);
  path("lexicon", f.lexicon);
  path("market_csv", f.market_csv);
  path("controls_csv", f.controls_csv);
  path("out_dir", f.out_dir);
  value("ticker", f.ticker);
  value("kind", f.kind);
  value("granularity", f.granularity);
  value("scenario", f.scenario);
  value("section", f.section);
  value("speaker_filter", f.speaker_filter);
  value("horizons", f.horizons);
  value("reps", f.reps);
  value("threads", f.threads);
  value("alpha", f.alpha);
  value("seed", f.seed);
  if (f.zero_fill) config["zero_fill"] = true;

  slp_pipeline* pipeline = nullptr;
  if (slp_pipeline_create(config.dump().c_str(), base_dir.c_str(), &pipeline) != SLP_OK) {
    std::cerr << slp_last_error_json() << "\n";
    return 2;
  }
  const slp_status status = slp_pipeline_run_stage(pipeline, stage.c_str());
  if (status != SLP_OK) {
    std::cerr << slp_last_error_json() << "\n";
    slp_pipeline_destroy(pipeline);
    return status == SLP_ERR_INVALID_CONFIG ? 2 : 1;
  }
  std::cout << slp_pipeline_last_report(pipeline) << "\n";
  slp_pipeline_destroy(pipeline);
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Policy-stance indicators and local projection impulse responses"};
  app.set_version_flag("--version", std::string("stancelp ") + slp_version());
  app.require_subcommand(1);

  struct Command {
    const char* name;
    const char* help;
  };
  const Command commands[] = {
      {"segment", "Split manifest transcripts into sentences"},
      {"label", "Attach stance labels from a label file or lexicon"},
      {"aggregate", "Build per-event indicator series"},
      {"outcomes", "Compute horizon outcomes and join controls"},
      {"estimate", "Estimate local projections with bootstrap intervals"},
      {"plot", "Render the impulse response figure and run summary"},
      {"run", "Run every stage in order"},
  };
  Flags flags;
  std::string chosen;
  for (const Command& c : commands) {
    CLI::App* sub = app.add_subcommand(c.name, c.help);
    AddFlags(sub, &flags);
    sub->callback([&chosen, name = std::string(c.name)] { chosen = name; });
  }
  CLI11_PARSE(app, argc, argv);
  return RunCommand(chosen, flags);
}
