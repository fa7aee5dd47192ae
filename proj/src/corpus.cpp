#include "stancelp/corpus.hpp"

#include <algorithm>
#include <map>
#include <nlohmann/json.hpp>
#include <set>

#include "stancelp/error.hpp"
#include "stancelp/io.hpp"

namespace stancelp {

std::string_view ToString(Scenario scenario) {
  switch (scenario) {
    case Scenario::kPressConference: return "press_conference";
    case Scenario::kHearing: return "hearing";
  }
  return "press_conference";
}

std::string_view ToString(Section section) {
  switch (section) {
    case Section::kOpeningRemarks: return "opening_remarks";
    case Section::kQandA: return "qanda";
    case Section::kReadout: return "readout";
  }
  return "opening_remarks";
}

bool ParseScenario(std::string_view text, Scenario* out) {
  if (text == "press_conference") {
    *out = Scenario::kPressConference;
  } else if (text == "hearing") {
    *out = Scenario::kHearing;
  } else {
    return false;
  }
  return true;
}

bool ParseSection(std::string_view text, Section* out) {
  if (text == "opening_remarks") {
    *out = Section::kOpeningRemarks;
  } else if (text == "qanda") {
    *out = Section::kQandA;
  } else if (text == "readout") {
    *out = Section::kReadout;
  } else {
    return false;
  }
  return true;
}

std::vector<std::string> SegmenterConfig::DefaultAbbreviations() {
  return {"Mr.", "Ms.", "Dr.", "U.S.", "vs.", "etc.", "Inc.", "No."};
}

namespace corpus {

namespace {

bool IsSpace(char c) {
  return c == ' ' || c == '\t' || c == '\n' || c == '\r' || c == '\f' || c == '\v';
}

bool IsTerminator(char c) { return c == '.' || c == '!' || c == '?'; }

bool IsUpper(char c) { return c >= 'A' && c <= 'Z'; }

// Length of a closing quote/bracket at `pos`, or 0.
size_t ClosingMarkAt(std::string_view text, size_t pos) {
  const char c = text[pos];
  if (c == ')' || c == ']' || c == '"' || c == '\'') return 1;
  // U+201D and U+2019
  if (text.substr(pos, 3) == "\xE2\x80\x9D" || text.substr(pos, 3) == "\xE2\x80\x99") {
    return 3;
  }
  return 0;
}

size_t OpeningMarkAt(std::string_view text, size_t pos) {
  const char c = text[pos];
  if (c == '(' || c == '[' || c == '"' || c == '\'') return 1;
  // U+201C and U+2018
  if (text.substr(pos, 3) == "\xE2\x80\x9C" || text.substr(pos, 3) == "\xE2\x80\x98") {
    return 3;
  }
  return 0;
}

std::string NormalizeWhitespace(std::string_view text) {
  std::string out;
  out.reserve(text.size());
  bool pending_space = false;
  for (char c : text) {
    if (IsSpace(c)) {
      pending_space = !out.empty();
      continue;
    }
    if (pending_space) out.push_back(' ');
    pending_space = false;
    out.push_back(c);
  }
  return out;
}

// The whitespace-delimited word ending at `period` (inclusive), without
// leading opening marks.
std::string_view WordEndingAt(std::string_view text, size_t period) {
  size_t begin = period;
  while (begin > 0 && !IsSpace(text[begin - 1])) --begin;
  std::string_view word = text.substr(begin, period + 1 - begin);
  while (!word.empty()) {
    const size_t skip = OpeningMarkAt(word, 0);
    if (skip == 0) break;
    word.remove_prefix(skip);
  }
  return word;
}

// Speaker marker: [A-Z][A-Z .]* followed by ':'. Returns the colon position.
size_t SpeakerMarkerEnd(std::string_view line) {
  if (line.empty() || !IsUpper(line[0])) return std::string_view::npos;
  for (size_t i = 1; i < line.size(); ++i) {
    const char c = line[i];
    if (c == ':') return i;
    if (!(IsUpper(c) || c == ' ' || c == '.')) break;
  }
  return std::string_view::npos;
}

std::string JoinTurnLines(const std::vector<std::string_view>& lines) {
  size_t first = 0;
  size_t last = lines.size();
  while (first < last && io::Trim(lines[first]).empty()) ++first;
  while (last > first && io::Trim(lines[last - 1]).empty()) --last;
  std::string text;
  for (size_t i = first; i < last; ++i) {
    if (i > first) text.push_back('\n');
    text.append(lines[i]);
  }
  return std::string(io::Trim(text));
}

}  // namespace

bool IsValidUtf8(std::string_view text) {
  size_t i = 0;
  const size_t n = text.size();
  while (i < n) {
    const auto c = static_cast<unsigned char>(text[i]);
    if (c < 0x80) {
      ++i;
      continue;
    }
    size_t len = 0;
    uint32_t cp = 0;
    if ((c & 0xE0) == 0xC0) {
      len = 2;
      cp = c & 0x1F;
    } else if ((c & 0xF0) == 0xE0) {
      len = 3;
      cp = c & 0x0F;
    } else if ((c & 0xF8) == 0xF0) {
      len = 4;
      cp = c & 0x07;
    } else {
      return false;
    }
    if (i + len > n) return false;
    for (size_t k = 1; k < len; ++k) {
      const auto cc = static_cast<unsigned char>(text[i + k]);
      if ((cc & 0xC0) != 0x80) return false;
      cp = (cp << 6) | (cc & 0x3F);
    }
    const bool overlong = (len == 2 && cp < 0x80) || (len == 3 && cp < 0x800) ||
                          (len == 4 && cp < 0x10000);
    if (overlong || cp > 0x10FFFF || (cp >= 0xD800 && cp <= 0xDFFF)) return false;
    i += len;
  }
  return true;
}

TranscriptDocument ParseTranscript(std::string_view raw, const DocumentMeta& meta) {
  if (!IsValidUtf8(raw)) {
    throw Error(ErrorCode::kEncoding,
                "transcript for event '" + meta.event_id + "' is not valid UTF-8");
  }
  if (raw.substr(0, 3) == "\xEF\xBB\xBF") raw.remove_prefix(3);
  if (io::Trim(raw).empty()) {
    throw Error(ErrorCode::kEmptyTranscript,
                "transcript for event '" + meta.event_id + "' is empty");
  }

  TranscriptDocument doc{meta, {}};
  std::string speaker;
  std::vector<std::string_view> lines;
  bool open = false;
  auto flush = [&] {
    if (!open) return;
    Turn turn{speaker, JoinTurnLines(lines)};
    // Leading unmarked blank lines do not form a turn.
    if (!turn.speaker.empty() || !turn.text.empty()) doc.turns.push_back(std::move(turn));
    lines.clear();
  };
  for (std::string_view line : io::SplitLines(raw)) {
    const size_t colon = SpeakerMarkerEnd(line);
    if (colon != std::string_view::npos) {
      flush();
      speaker = std::string(io::Trim(line.substr(0, colon)));
      lines.push_back(line.substr(colon + 1));
      open = true;
    } else {
      lines.push_back(line);
      open = true;
    }
  }
  flush();
  return doc;
}

std::vector<std::string> SplitSentences(std::string_view text,
                                        const SegmenterConfig& config) {
  std::vector<std::string> sentences;
  const size_t n = text.size();
  size_t start = 0;
  size_t i = 0;
  auto emit = [&](size_t end) {
    std::string sentence = NormalizeWhitespace(text.substr(start, end - start));
    if (!sentence.empty()) sentences.push_back(std::move(sentence));
    start = end;
  };
  while (i < n) {
    if (!IsTerminator(text[i])) {
      ++i;
      continue;
    }
    size_t run_end = i;
    while (run_end < n && IsTerminator(text[run_end])) ++run_end;
    size_t end = run_end;
    while (end < n) {
      const size_t skip = ClosingMarkAt(text, end);
      if (skip == 0) break;
      end += skip;
    }
    bool boundary = false;
    size_t next = end;
    while (next < n && IsSpace(text[next])) ++next;
    if (next == n) {
      boundary = true;
    } else if (next > end) {
      size_t letter = next;
      while (letter < n) {
        const size_t skip = OpeningMarkAt(text, letter);
        if (skip == 0) break;
        letter += skip;
      }
      boundary = letter < n && IsUpper(text[letter]);
    }
    if (boundary && run_end - i == 1 && text[i] == '.') {
      const std::string_view word = WordEndingAt(text, i);
      for (const std::string& abbreviation : config.abbreviations) {
        if (word == abbreviation) {
          boundary = false;
          break;
        }
      }
    }
    if (boundary) emit(end);
    i = run_end;
  }
  emit(n);
  return sentences;
}

std::vector<Sentence> SegmentSentences(const TranscriptDocument& doc,
                                       const SegmenterConfig& config,
                                       std::size_t first_turn_index,
                                       std::size_t first_sentence_index) {
  std::vector<Sentence> out;
  std::size_t sentence_index = first_sentence_index;
  for (std::size_t t = 0; t < doc.turns.size(); ++t) {
    const Turn& turn = doc.turns[t];
    for (std::string& text : SplitSentences(turn.text, config)) {
      out.push_back(Sentence{doc.meta.event_id, first_turn_index + t, sentence_index++,
                             turn.speaker, doc.meta.section, std::move(text)});
    }
  }
  return out;
}

std::vector<ManifestEntry> LoadManifest(const std::filesystem::path& manifest_path) {
  const std::string raw = io::ReadFile(manifest_path);
  nlohmann::json doc;
  try {
    doc = nlohmann::json::parse(raw);
  } catch (const nlohmann::json::parse_error& e) {
    throw Error(ErrorCode::kParse,
                "manifest '" + manifest_path.string() + "': " + e.what());
  }
  if (!doc.is_object()) {
    throw Error(ErrorCode::kParse, "manifest '" + manifest_path.string() +
                                       "' must be a JSON object keyed by file path");
  }
  const std::filesystem::path base = manifest_path.parent_path();
  std::vector<ManifestEntry> entries;
  std::set<std::pair<std::string, Section>> seen;
  for (const auto& [key, value] : doc.items()) {
    auto fail = [&](const std::string& what) {
      throw Error(ErrorCode::kParse, "manifest entry '" + key + "': " + what);
    };
    if (!value.is_object()) fail("expected an object");
    ManifestEntry entry;
    std::filesystem::path path(key);
    entry.path = path.is_absolute() ? path : base / path;
    auto field = [&](const char* name) -> std::string {
      auto it = value.find(name);
      if (it == value.end() || !it->is_string()) fail(std::string("missing string field '") + name + "'");
      return it->get<std::string>();
    };
    entry.meta.event_id = field("event_id");
    if (entry.meta.event_id.empty()) fail("event_id must be non-empty");
    if (!Date::TryParse(field("date"), &entry.meta.event_date)) fail("invalid date");
    if (!ParseScenario(field("scenario"), &entry.meta.scenario)) fail("unknown scenario");
    if (!ParseSection(field("section"), &entry.meta.section)) fail("unknown section");
    if (!seen.emplace(entry.meta.event_id, entry.meta.section).second) {
      fail("duplicate (event_id, section) pair");
    }
    entries.push_back(std::move(entry));
  }
  return entries;
}

Corpus BuildCorpus(const std::vector<ManifestEntry>& entries, const SegmenterConfig& config) {
  std::map<std::string, std::vector<const ManifestEntry*>> by_event;
  for (const ManifestEntry& entry : entries) by_event[entry.meta.event_id].push_back(&entry);

  Corpus corpus;
  for (auto& [event_id, docs] : by_event) {
    std::sort(docs.begin(), docs.end(), [](const ManifestEntry* a, const ManifestEntry* b) {
      return a->meta.section < b->meta.section;
    });
    const DocumentMeta& first = docs.front()->meta;
    for (const ManifestEntry* doc : docs) {
      if (doc->meta.event_date != first.event_date || doc->meta.scenario != first.scenario) {
        throw Error(ErrorCode::kParse, "manifest documents of event '" + event_id +
                                           "' disagree on date or scenario");
      }
    }
    EventInfo info{event_id, first.event_date, first.scenario, 0};
    std::size_t turn_offset = 0;
    std::size_t sentence_offset = 0;
    for (const ManifestEntry* doc : docs) {
      const TranscriptDocument parsed = ParseTranscript(io::ReadFile(doc->path), doc->meta);
      std::vector<Sentence> sentences =
          SegmentSentences(parsed, config, turn_offset, sentence_offset);
      turn_offset += parsed.turns.size();
      sentence_offset += sentences.size();
      for (Sentence& s : sentences) corpus.sentences.push_back(std::move(s));
    }
    info.sentence_count = sentence_offset;
    corpus.events.push_back(std::move(info));
  }
  return corpus;
}

}  // namespace corpus
}  // namespace stancelp
