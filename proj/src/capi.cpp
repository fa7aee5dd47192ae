#include <exception>
#include <filesystem>
#include <memory>
#include <string>
#include <vector>

#include "stancelp/corpus.hpp"
#include "stancelp/error.hpp"
#include "stancelp/indicator.hpp"
#include "stancelp/ols.hpp"
#include "stancelp/pipeline.hpp"
#include "stancelp/stancelp.h"
#include "stancelp/version.hpp"

struct slp_pipeline {
  stancelp::RunConfig config;
  std::string last_report;
};

struct slp_sentences {
  std::vector<stancelp::Sentence> items;
};

namespace {

thread_local std::string g_last_error;

slp_status Fail(slp_status status, const std::string& code, const std::string& message,
                const std::vector<std::string>& details = {}) {
  g_last_error = stancelp::pipeline::ErrorJson(code, message, details);
  return status;
}

// Runs body, translating exceptions into status codes.
template <typename Body>
slp_status Guard(Body&& body) {
  try {
    g_last_error.clear();
    body();
    return SLP_OK;
  } catch (const stancelp::Error& e) {
    return Fail(static_cast<slp_status>(e.code()), std::string(stancelp::ErrorCodeName(e.code())),
                e.what(), e.details());
  } catch (const std::exception& e) {
    return Fail(SLP_ERR_INTERNAL, "InternalError", e.what());
  } catch (...) {
    return Fail(SLP_ERR_INTERNAL, "InternalError", "unknown exception");
  }
}

slp_status InvalidArgument(const char* what) {
  return Fail(SLP_ERR_INVALID_ARGUMENT, "InvalidArgument", what);
}

}  // namespace

extern "C" {

const char* slp_version(void) { return stancelp::kVersion; }

const char* slp_status_name(slp_status status) {
  if (status == SLP_OK) return "Ok";
  if (status == SLP_ERR_INVALID_ARGUMENT) return "InvalidArgument";
  if (status >= SLP_ERR_IO && status <= SLP_ERR_INTERNAL) {
    return stancelp::ErrorCodeName(static_cast<stancelp::ErrorCode>(status)).data();
  }
  return "Unknown";
}

const char* slp_last_error_json(void) { return g_last_error.c_str(); }

slp_status slp_pipeline_create(const char* config_json, const char* base_dir,
                               slp_pipeline** out) {
  if (config_json == nullptr || out == nullptr) return InvalidArgument("null argument");
  *out = nullptr;
  return Guard([&] {
    auto handle = std::make_unique<slp_pipeline>();
    handle->config = stancelp::RunConfig::FromJson(
        config_json, base_dir ? std::filesystem::path(base_dir) : std::filesystem::path());
    *out = handle.release();
  });
}

void slp_pipeline_destroy(slp_pipeline* pipeline) { delete pipeline; }

slp_status slp_pipeline_run_stage(slp_pipeline* pipeline, const char* stage) {
  if (pipeline == nullptr || stage == nullptr) return InvalidArgument("null argument");
  return Guard([&] {
    pipeline->last_report = stancelp::pipeline::RunStage(pipeline->config, stage);
  });
}

const char* slp_pipeline_last_report(const slp_pipeline* pipeline) {
  return pipeline == nullptr ? "" : pipeline->last_report.c_str();
}

slp_status slp_segment_transcript(const char* text, size_t length, slp_sentences** out) {
  if (text == nullptr || out == nullptr) return InvalidArgument("null argument");
  *out = nullptr;
  return Guard([&] {
    stancelp::DocumentMeta meta;
    meta.event_id = "text";
    const auto doc = stancelp::corpus::ParseTranscript(std::string_view(text, length), meta);
    auto handle = std::make_unique<slp_sentences>();
    handle->items = stancelp::corpus::SegmentSentences(doc);
    *out = handle.release();
  });
}

size_t slp_sentences_count(const slp_sentences* sentences) {
  return sentences == nullptr ? 0 : sentences->items.size();
}

const char* slp_sentences_text(const slp_sentences* sentences, size_t index) {
  if (sentences == nullptr || index >= sentences->items.size()) return nullptr;
  return sentences->items[index].text.c_str();
}

const char* slp_sentences_speaker(const slp_sentences* sentences, size_t index) {
  if (sentences == nullptr || index >= sentences->items.size()) return nullptr;
  return sentences->items[index].speaker.c_str();
}

size_t slp_sentences_turn(const slp_sentences* sentences, size_t index) {
  if (sentences == nullptr || index >= sentences->items.size()) return 0;
  return sentences->items[index].turn_index;
}

void slp_sentences_destroy(slp_sentences* sentences) { delete sentences; }

slp_status slp_polarity_score(uint64_t favorable, uint64_t adverse, int zero_fill,
                              double* score, int* missing) {
  if (score == nullptr || missing == nullptr) return InvalidArgument("null argument");
  return Guard([&] {
    const auto ratio = stancelp::indicator::PolarityRatio(favorable, adverse);
    *missing = (!ratio && !zero_fill) ? 1 : 0;
    *score = ratio ? ratio->ToDouble() : 0.0;
  });
}

slp_status slp_ols_fit(const double* design, size_t rows, size_t cols, const double* y,
                       double* coefficients, double* r_squared) {
  if (design == nullptr || y == nullptr || coefficients == nullptr) {
    return InvalidArgument("null argument");
  }
  return Guard([&] {
    stancelp::Matrix x(rows, cols);
    for (size_t r = 0; r < rows; ++r) {
      for (size_t c = 0; c < cols; ++c) x(r, c) = design[r * cols + c];
    }
    std::vector<std::string> names;
    for (size_t c = 0; c < cols; ++c) names.push_back("column " + std::to_string(c));
    const stancelp::OlsFit fit = stancelp::ols::Fit(x, std::span<const double>(y, rows), names);
    for (size_t c = 0; c < cols; ++c) coefficients[c] = fit.coefficients[c];
    if (r_squared != nullptr) *r_squared = fit.r_squared;
  });
}

}  // extern "C"
