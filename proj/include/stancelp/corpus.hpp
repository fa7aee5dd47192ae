#pragma once

#include <cstddef>
#include <filesystem>
#include <string>
#include <string_view>
#include <vector>

#include "stancelp/date.hpp"

namespace stancelp {

enum class Scenario { kPressConference, kHearing };
enum class Section { kOpeningRemarks, kQandA, kReadout };

std::string_view ToString(Scenario scenario);
std::string_view ToString(Section section);
bool ParseScenario(std::string_view text, Scenario* out);
bool ParseSection(std::string_view text, Section* out);

struct DocumentMeta {
  std::string event_id;
  Date event_date;
  Scenario scenario = Scenario::kPressConference;
  Section section = Section::kOpeningRemarks;
};

struct Turn {
  std::string speaker;  // empty for the anonymous turn
  std::string text;     // continuation lines joined with '\n'
};

struct TranscriptDocument {
  DocumentMeta meta;
  std::vector<Turn> turns;
};

struct Sentence {
  std::string event_id;
  std::size_t turn_index = 0;      // global within the event
  std::size_t sentence_index = 0;  // global within the event
  std::string speaker;
  Section section = Section::kOpeningRemarks;
  std::string text;

  friend bool operator==(const Sentence&, const Sentence&) = default;
};

struct SegmenterConfig {
  // Tokens (including the trailing period) that never end a sentence.
  std::vector<std::string> abbreviations = DefaultAbbreviations();

  static std::vector<std::string> DefaultAbbreviations();
};

namespace corpus {

bool IsValidUtf8(std::string_view text);

// Throws kEncoding on invalid UTF-8 and kEmptyTranscript when there is no
// non-whitespace content. A leading UTF-8 BOM is ignored.
TranscriptDocument ParseTranscript(std::string_view raw, const DocumentMeta& meta);

// Rule-based splitting of one block of text; results are whitespace-normalized.
std::vector<std::string> SplitSentences(std::string_view text,
                                        const SegmenterConfig& config = {});

// Indices start at the given offsets so that several documents of one event
// share a single numbering.
std::vector<Sentence> SegmentSentences(const TranscriptDocument& doc,
                                       const SegmenterConfig& config = {},
                                       std::size_t first_turn_index = 0,
                                       std::size_t first_sentence_index = 0);

struct ManifestEntry {
  std::filesystem::path path;  // resolved against the manifest directory
  DocumentMeta meta;
};

// Manifest JSON: {"<path>": {"event_id": .., "date": .., "scenario": ..,
// "section": ..}, ...}.
std::vector<ManifestEntry> LoadManifest(const std::filesystem::path& manifest_path);

struct EventInfo {
  std::string event_id;
  Date event_date;
  Scenario scenario = Scenario::kPressConference;
  std::size_t sentence_count = 0;
};

struct Corpus {
  std::vector<EventInfo> events;    // sorted by event_id
  std::vector<Sentence> sentences;  // grouped by event, in index order
};

// Reads and segments every manifest document. Documents of one event are
// numbered in section order (opening remarks, Q&A, readout).
Corpus BuildCorpus(const std::vector<ManifestEntry>& entries,
                   const SegmenterConfig& config = {});

}  // namespace corpus
}  // namespace stancelp
