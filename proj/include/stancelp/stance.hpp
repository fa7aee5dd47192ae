#pragma once

#include <cstddef>
#include <filesystem>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "stancelp/corpus.hpp"
#include "stancelp/error.hpp"

namespace stancelp {

enum class Stance { kDovish, kHawkish, kNeutral };
enum class Tone { kPositive, kNegative, kNeutral };

std::string_view ToString(Stance stance);
std::string_view ToString(Tone tone);
bool ParseStance(std::string_view text, Stance* out);
bool ParseTone(std::string_view text, Tone* out);

// One line of a label file.
struct LabelRecord {
  std::string event_id;
  std::size_t sentence_index = 0;
  Stance stance = Stance::kNeutral;
  std::optional<Tone> tone;

  friend bool operator==(const LabelRecord&, const LabelRecord&) = default;
};

struct LabeledSentence {
  Sentence sentence;
  Stance stance = Stance::kNeutral;
  std::optional<Tone> tone;
  bool defaulted = false;  // no record in the label file
};

struct LabeledEvent {
  std::string event_id;
  Date event_date;
  Scenario scenario = Scenario::kPressConference;
  std::vector<LabeledSentence> sentences;
  std::size_t defaulted_count = 0;
};

// Phrase lists for the deterministic baseline classifier. Phrases are stored
// lower-cased with single spaces.
class Lexicon {
 public:
  // Throws kInvalidLexicon if a phrase is empty or appears in both sets.
  Lexicon(std::vector<std::string> hawkish, std::vector<std::string> dovish);

  static Lexicon Default();
  // {"hawkish": [str], "dovish": [str]}
  static Lexicon FromJson(std::string_view json_text);

  const std::vector<std::string>& hawkish() const { return hawkish_; }
  const std::vector<std::string>& dovish() const { return dovish_; }

  Lexicon Swapped() const { return Lexicon(dovish_, hawkish_); }

 private:
  std::vector<std::string> hawkish_;
  std::vector<std::string> dovish_;
};

namespace stance {

// Case-insensitive whole-word occurrences of `phrase` (already normalized).
std::size_t CountPhrase(std::string_view text, std::string_view phrase);

Stance ClassifyLexicon(std::string_view sentence_text, const Lexicon& lexicon);
inline Stance ClassifyLexicon(const Sentence& sentence, const Lexicon& lexicon) {
  return ClassifyLexicon(sentence.text, lexicon);
}

// Throws kParse with the 1-based line number on malformed records. Blank
// lines are skipped.
std::vector<LabelRecord> ParseLabelFile(std::string_view text);

// Canonical JSON Lines: sorted by (event_id, sentence_index), fixed key
// order, LF endings.
std::string SerializeLabels(std::vector<LabelRecord> records);

// Records for every sentence of the corpus, classified by the lexicon.
std::vector<LabelRecord> LabelWithLexicon(const corpus::Corpus& corpus,
                                          const Lexicon& lexicon);

// Joins labels onto the corpus. Unlabeled sentences become Neutral and are
// counted per event in a warning. Throws kDanglingLabel / kDuplicateLabel.
std::vector<LabeledEvent> JoinLabels(const std::vector<LabelRecord>& records,
                                     const corpus::Corpus& corpus, Warnings* warnings);

std::vector<LabeledEvent> LoadLabels(const std::filesystem::path& path,
                                     const corpus::Corpus& corpus, Warnings* warnings);

// Inverse of JoinLabels for the explicitly labeled sentences.
std::vector<LabelRecord> ToRecords(const std::vector<LabeledEvent>& events);

}  // namespace stance
}  // namespace stancelp
