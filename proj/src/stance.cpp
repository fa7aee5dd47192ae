#include "stancelp/stance.hpp"

#include <algorithm>
#include <map>
#include <nlohmann/json.hpp>
#include <set>
#include <tuple>

#include "stancelp/io.hpp"

namespace stancelp {

std::string_view ToString(Stance stance) {
  switch (stance) {
    case Stance::kDovish: return "dovish";
    case Stance::kHawkish: return "hawkish";
    case Stance::kNeutral: return "neutral";
  }
  return "neutral";
}

std::string_view ToString(Tone tone) {
  switch (tone) {
    case Tone::kPositive: return "positive";
    case Tone::kNegative: return "negative";
    case Tone::kNeutral: return "neutral";
  }
  return "neutral";
}

bool ParseStance(std::string_view text, Stance* out) {
  if (text == "dovish") {
    *out = Stance::kDovish;
  } else if (text == "hawkish") {
    *out = Stance::kHawkish;
  } else if (text == "neutral") {
    *out = Stance::kNeutral;
  } else {
    return false;
  }
  return true;
}

bool ParseTone(std::string_view text, Tone* out) {
  if (text == "positive") {
    *out = Tone::kPositive;
  } else if (text == "negative") {
    *out = Tone::kNegative;
  } else if (text == "neutral") {
    *out = Tone::kNeutral;
  } else {
    return false;
  }
  return true;
}

namespace {

char Lower(char c) { return (c >= 'A' && c <= 'Z') ? static_cast<char>(c - 'A' + 'a') : c; }

bool IsWordChar(char c) {
  return (c >= 'a' && c <= 'z') || (c >= 'A' && c <= 'Z') || (c >= '0' && c <= '9') ||
         static_cast<unsigned char>(c) >= 0x80;
}

std::string NormalizePhrase(std::string_view phrase) {
  std::string out;
  bool space = false;
  for (char c : phrase) {
    if (c == ' ' || c == '\t' || c == '\n' || c == '\r') {
      space = !out.empty();
      continue;
    }
    if (space) out.push_back(' ');
    space = false;
    out.push_back(Lower(c));
  }
  return out;
}

std::vector<std::string> NormalizeAll(std::vector<std::string> phrases, const char* which) {
  for (std::string& phrase : phrases) {
    phrase = NormalizePhrase(phrase);
    if (phrase.empty()) {
      throw Error(ErrorCode::kInvalidLexicon, std::string("empty phrase in ") + which + " set");
    }
  }
  std::sort(phrases.begin(), phrases.end());
  phrases.erase(std::unique(phrases.begin(), phrases.end()), phrases.end());
  return phrases;
}

}  // namespace

Lexicon::Lexicon(std::vector<std::string> hawkish, std::vector<std::string> dovish)
    : hawkish_(NormalizeAll(std::move(hawkish), "hawkish")),
      dovish_(NormalizeAll(std::move(dovish), "dovish")) {
  std::vector<std::string> both;
  std::set_intersection(hawkish_.begin(), hawkish_.end(), dovish_.begin(), dovish_.end(),
                        std::back_inserter(both));
  if (!both.empty()) {
    throw Error(ErrorCode::kInvalidLexicon,
                "phrase '" + both.front() + "' appears in both hawkish and dovish sets", both);
  }
}

Lexicon Lexicon::Default() {
  // Non-scientific baseline for end-to-end runs without an external model.
  return Lexicon(
      {"raise rates", "raise interest rates", "raising rates", "rate hike", "rate hikes",
       "rate increases", "tighten", "tightening", "tighter policy", "inflation pressures",
       "inflationary pressures", "elevated inflation", "taper", "tapering",
       "reduce the balance sheet", "balance sheet runoff", "restrictive", "higher rates",
       "overheating", "firming"},
      {"cut rates", "cut interest rates", "rate cut", "rate cuts", "lower rates",
       "accommodative", "accommodation", "quantitative easing", "asset purchases",
       "lower bound", "easing", "stimulus", "patient", "support the economy",
       "downside risks", "slack", "subdued inflation", "weak demand", "remain low",
       "maximum employment shortfalls"});
}

Lexicon Lexicon::FromJson(std::string_view json_text) {
  nlohmann::json doc;
  try {
    doc = nlohmann::json::parse(json_text);
  } catch (const nlohmann::json::parse_error& e) {
    throw Error(ErrorCode::kInvalidLexicon, std::string("lexicon is not valid JSON: ") + e.what());
  }
  auto list = [&](const char* key) {
    if (!doc.is_object() || !doc.contains(key) || !doc[key].is_array()) {
      throw Error(ErrorCode::kInvalidLexicon, std::string("lexicon needs an array '") + key + "'");
    }
    std::vector<std::string> out;
    for (const auto& item : doc[key]) {
      if (!item.is_string()) {
        throw Error(ErrorCode::kInvalidLexicon, std::string("non-string phrase in '") + key + "'");
      }
      out.push_back(item.get<std::string>());
    }
    return out;
  };
  return Lexicon(list("hawkish"), list("dovish"));
}

namespace stance {

std::size_t CountPhrase(std::string_view text, std::string_view phrase) {
  if (phrase.empty() || phrase.size() > text.size()) return 0;
  std::size_t hits = 0;
  for (std::size_t pos = 0; pos + phrase.size() <= text.size(); ++pos) {
    if (pos > 0 && IsWordChar(text[pos - 1])) continue;
    const std::size_t end = pos + phrase.size();
    if (end < text.size() && IsWordChar(text[end])) continue;
    bool match = true;
    for (std::size_t k = 0; k < phrase.size(); ++k) {
      const char c = text[pos + k];
      const char want = phrase[k];
      if (want == ' ' ? !(c == ' ' || c == '\t' || c == '\n') : Lower(c) != want) {
        match = false;
        break;
      }
    }
    if (match) ++hits;
  }
  return hits;
}

Stance ClassifyLexicon(std::string_view sentence_text, const Lexicon& lexicon) {
  std::size_t hawkish = 0;
  std::size_t dovish = 0;
  for (const std::string& phrase : lexicon.hawkish()) hawkish += CountPhrase(sentence_text, phrase);
  for (const std::string& phrase : lexicon.dovish()) dovish += CountPhrase(sentence_text, phrase);
  if (hawkish > dovish) return Stance::kHawkish;
  if (dovish > hawkish) return Stance::kDovish;
  return Stance::kNeutral;
}

std::vector<LabelRecord> ParseLabelFile(std::string_view text) {
  std::vector<LabelRecord> records;
  std::size_t line_no = 0;
  for (std::string_view line : io::SplitLines(text)) {
    ++line_no;
    if (io::Trim(line).empty()) continue;
    auto fail = [&](const std::string& what) {
      throw Error(ErrorCode::kParse,
                  "label file line " + std::to_string(line_no) + ": " + what,
                  {"line " + std::to_string(line_no)});
    };
    nlohmann::json doc;
    try {
      doc = nlohmann::json::parse(line);
    } catch (const nlohmann::json::parse_error&) {
      fail("not a JSON object");
    }
    if (!doc.is_object()) fail("not a JSON object");
    LabelRecord record;
    auto id = doc.find("event_id");
    if (id == doc.end() || !id->is_string() || id->get<std::string>().empty()) {
      fail("missing or empty event_id");
    }
    record.event_id = id->get<std::string>();
    auto index = doc.find("sentence_index");
    if (index == doc.end() || !index->is_number_unsigned()) {
      fail("sentence_index must be a non-negative integer");
    }
    record.sentence_index = index->get<std::size_t>();
    auto label = doc.find("stance");
    if (label == doc.end() || !label->is_string() ||
        !ParseStance(label->get<std::string>(), &record.stance)) {
      fail("stance must be one of dovish, hawkish, neutral");
    }
    auto tone = doc.find("tone");
    if (tone != doc.end() && !tone->is_null()) {
      Tone value;
      if (!tone->is_string() || !ParseTone(tone->get<std::string>(), &value)) {
        fail("tone must be one of positive, negative, neutral");
      }
      record.tone = value;
    }
    records.push_back(std::move(record));
  }
  return records;
}

std::string SerializeLabels(std::vector<LabelRecord> records) {
  std::sort(records.begin(), records.end(), [](const LabelRecord& a, const LabelRecord& b) {
    return std::tie(a.event_id, a.sentence_index) < std::tie(b.event_id, b.sentence_index);
  });
  std::string out;
  for (const LabelRecord& record : records) {
    // ordered_json keeps insertion order, which fixes the key order.
    nlohmann::ordered_json line;
    line["event_id"] = record.event_id;
    line["sentence_index"] = record.sentence_index;
    line["stance"] = ToString(record.stance);
    if (record.tone) line["tone"] = ToString(*record.tone);
    out += line.dump();
    out.push_back('\n');
  }
  return out;
}

std::vector<LabelRecord> LabelWithLexicon(const corpus::Corpus& corpus, const Lexicon& lexicon) {
  std::vector<LabelRecord> records;
  records.reserve(corpus.sentences.size());
  for (const Sentence& sentence : corpus.sentences) {
    records.push_back(LabelRecord{sentence.event_id, sentence.sentence_index,
                                  ClassifyLexicon(sentence, lexicon), std::nullopt});
  }
  return records;
}

std::vector<LabeledEvent> JoinLabels(const std::vector<LabelRecord>& records,
                                     const corpus::Corpus& corpus, Warnings* warnings) {
  std::map<std::string, std::size_t> event_slot;
  std::vector<LabeledEvent> events;
  for (const corpus::EventInfo& info : corpus.events) {
    event_slot[info.event_id] = events.size();
    events.push_back(LabeledEvent{info.event_id, info.event_date, info.scenario, {}, 0});
  }
  for (const Sentence& sentence : corpus.sentences) {
    auto it = event_slot.find(sentence.event_id);
    if (it == event_slot.end()) {
      throw Error(ErrorCode::kInternal, "sentence of unknown event '" + sentence.event_id + "'");
    }
    LabeledEvent& event = events[it->second];
    if (sentence.sentence_index != event.sentences.size()) {
      throw Error(ErrorCode::kInternal,
                  "corpus sentences of event '" + sentence.event_id + "' are not contiguous");
    }
    event.sentences.push_back(LabeledSentence{sentence, Stance::kNeutral, std::nullopt, true});
  }

  for (const LabelRecord& record : records) {
    auto it = event_slot.find(record.event_id);
    if (it == event_slot.end()) {
      throw Error(ErrorCode::kDanglingLabel,
                  "label references unknown event_id '" + record.event_id + "'");
    }
    LabeledEvent& event = events[it->second];
    if (record.sentence_index >= event.sentences.size()) {
      throw Error(ErrorCode::kDanglingLabel,
                  "label references sentence_index " + std::to_string(record.sentence_index) +
                      " of event '" + record.event_id + "' which has " +
                      std::to_string(event.sentences.size()) + " sentences");
    }
    LabeledSentence& slot = event.sentences[record.sentence_index];
    if (!slot.defaulted) {
      throw Error(ErrorCode::kDuplicateLabel,
                  "duplicate label for (" + record.event_id + ", " +
                      std::to_string(record.sentence_index) + ")");
    }
    slot.stance = record.stance;
    slot.tone = record.tone;
    slot.defaulted = false;
  }

  for (LabeledEvent& event : events) {
    event.defaulted_count = static_cast<std::size_t>(
        std::count_if(event.sentences.begin(), event.sentences.end(),
                      [](const LabeledSentence& s) { return s.defaulted; }));
    if (event.defaulted_count > 0 && warnings != nullptr) {
      warnings->push_back({"UnlabeledSentences",
                           "event '" + event.event_id + "': " +
                               std::to_string(event.defaulted_count) +
                               " unlabeled sentences defaulted to neutral"});
    }
  }
  return events;
}

std::vector<LabeledEvent> LoadLabels(const std::filesystem::path& path,
                                     const corpus::Corpus& corpus, Warnings* warnings) {
  return JoinLabels(ParseLabelFile(io::ReadFile(path)), corpus, warnings);
}

std::vector<LabelRecord> ToRecords(const std::vector<LabeledEvent>& events) {
  std::vector<LabelRecord> records;
  for (const LabeledEvent& event : events) {
    for (const LabeledSentence& s : event.sentences) {
      if (s.defaulted) continue;
      records.push_back(LabelRecord{event.event_id, s.sentence.sentence_index, s.stance, s.tone});
    }
  }
  return records;
}

}  // namespace stance
}  // namespace stancelp
