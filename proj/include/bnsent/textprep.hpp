#pragma once

#include <cstddef>
#include <string>
#include <string_view>
#include <unordered_set>
#include <vector>

// Bengali review normalization: NFC -> clean -> tokenize -> stopword filter
// -> stem -> rejoin. Every function here is pure.
namespace bnsent::textprep {

using Tokens = std::vector<std::string>;

struct CodepointRange {
  char32_t first;
  char32_t last;  // inclusive
  bool contains(char32_t cp) const { return cp >= first && cp <= last; }
};

// Codepoints are kept when they fall in a keep range and do not belong to an
// enabled strip class; whitespace and stripped codepoints become a single
// space. Zero-width (non-)joiners survive only between two kept codepoints.
struct CleaningRules {
  std::vector<CodepointRange> keep_ranges{{0x0980, 0x09FF}};
  bool strip_punctuation = true;
  bool strip_symbols = true;
  bool strip_emoji = true;
  bool strip_latin = true;
  bool strip_digits = true;
  bool keep_joiners = true;

  bool in_keep_range(char32_t cp) const;
};

// Emoji/pictograph ranges: emoticons, pictographs, transport, dingbats,
// misc symbols, supplemental symbols, flags, variation selectors.
bool is_emoji(char32_t cp);

struct StopwordList {
  std::unordered_set<std::string> words;
  std::string source;

  bool contains(const std::string& w) const { return words.contains(w); }
  // Sorted copy, for persistence.
  std::vector<std::string> sorted() const;
};

// UTF-8 file, one token per line; '#' starts a comment. Entries are
// NFC-normalized and deduplicated.
StopwordList load_stopwords(const std::string& path);
StopwordList make_stopwords(const std::vector<std::string>& words,
                            std::string source = "<inline>");

struct StemRuleSet {
  std::vector<std::string> suffixes;  // descending codepoint length
  std::size_t min_stem_length = 2;    // in codepoints
  std::string source;
};

// Sorts by descending codepoint length (ties: byte order), drops duplicates,
// rejects empty suffixes.
StemRuleSet make_stem_rules(std::vector<std::string> suffixes,
                            std::size_t min_stem_length = 2,
                            std::string source = "<inline>");
StemRuleSet load_suffixes(const std::string& path, std::size_t min_stem_length = 2);

struct PipelineConfig {
  CleaningRules rules;
  StopwordList stopwords;
  StemRuleSet stemmer;
  bool normalize = true;
  bool clean = true;
  bool remove_stopwords = true;
  bool stem = true;
};

// Pipeline with the bundled stopword and suffix files.
PipelineConfig default_pipeline();

std::string normalize_unicode(std::string_view text);
std::string clean(std::string_view text, const CleaningRules& rules = {});
Tokens tokenize(std::string_view text);
Tokens remove_stopwords(const Tokens& tokens, const StopwordList& list);
std::string stem(const std::string& token, const StemRuleSet& rules);
std::string join(const Tokens& tokens);

struct Preprocessed {
  Tokens tokens;
  std::string text;
};

Preprocessed preprocess(std::string_view raw, const PipelineConfig& config);

// True when every codepoint of `cleaned` is a space, a kept codepoint, or a
// joiner flanked by kept codepoints.
bool within_clean_alphabet(std::string_view cleaned, const CleaningRules& rules);

}  // namespace bnsent::textprep
