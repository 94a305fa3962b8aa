#include "bnsent/textprep.hpp"

#include <algorithm>
#include <fstream>
#include <set>

#include "bnsent/error.hpp"
#include "bnsent/unicode.hpp"

namespace bnsent::textprep {

namespace {

enum class Decision { kKeep, kSpace, kJoiner };

Decision decide(char32_t cp, const CleaningRules& rules) {
  using unicode::CharClass;
  const CharClass cls = unicode::classify(cp);
  switch (cls) {
    case CharClass::kSpace:
      return Decision::kSpace;
    case CharClass::kJoiner:
      return Decision::kJoiner;
    case CharClass::kOther:
      return Decision::kSpace;
    default:
      break;
  }
  if (rules.strip_emoji && is_emoji(cp)) return Decision::kSpace;
  if (rules.strip_punctuation && cls == CharClass::kPunctuation) return Decision::kSpace;
  if (rules.strip_symbols && cls == CharClass::kSymbol) return Decision::kSpace;
  if (rules.strip_digits &&
      (cls == CharClass::kDigit || cls == CharClass::kNumberOther)) {
    return Decision::kSpace;
  }
  if (rules.strip_latin && unicode::is_latin_letter(cp)) return Decision::kSpace;
  return rules.in_keep_range(cp) ? Decision::kKeep : Decision::kSpace;
}

bool is_ascii_space(char c) {
  return c == ' ' || c == '\t' || c == '\n' || c == '\r' || c == '\v' || c == '\f';
}

std::vector<std::string> read_word_lines(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error("textprep.open", "cannot open " + path);
  std::vector<std::string> words;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (const auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
    if (line_no == 1 && line.starts_with("\xEF\xBB\xBF")) line.erase(0, 3);
    const auto b = line.find_first_not_of(" \t\r");
    if (b == std::string::npos) continue;
    const auto e = line.find_last_not_of(" \t\r");
    std::string word = line.substr(b, e - b + 1);
    if (!unicode::is_valid_utf8(word)) {
      throw Error("textprep.utf8", path + ": invalid UTF-8 on line " + std::to_string(line_no));
    }
    words.push_back(unicode::to_nfc(word));
  }
  return words;
}

}  // namespace

bool CleaningRules::in_keep_range(char32_t cp) const {
  return std::any_of(keep_ranges.begin(), keep_ranges.end(),
                     [cp](const CodepointRange& r) { return r.contains(cp); });
}

bool is_emoji(char32_t cp) {
  static constexpr CodepointRange kEmoji[] = {
      {0x2190, 0x21FF},    // arrows
      {0x2300, 0x23FF},    // misc technical (watch, hourglass, ...)
      {0x2460, 0x24FF},    // enclosed alphanumerics
      {0x25A0, 0x25FF},    // geometric shapes
      {0x2600, 0x26FF},    // misc symbols
      {0x2700, 0x27BF},    // dingbats
      {0x2B00, 0x2BFF},    // misc symbols and arrows
      {0x3030, 0x3030},
      {0x303D, 0x303D},
      {0x3297, 0x3299},
      {0xFE00, 0xFE0F},    // variation selectors
      {0x1F000, 0x1F02F},  // mahjong
      {0x1F0A0, 0x1F0FF},  // playing cards
      {0x1F100, 0x1F1FF},  // enclosed alphanumeric supplement, flags
      {0x1F200, 0x1F2FF},
      {0x1F300, 0x1F5FF},  // pictographs
      {0x1F600, 0x1F64F},  // emoticons
      {0x1F680, 0x1F6FF},  // transport and map
      {0x1F700, 0x1F77F},
      {0x1F780, 0x1F7FF},  // geometric shapes extended
      {0x1F800, 0x1F8FF},
      {0x1F900, 0x1F9FF},  // supplemental symbols and pictographs
      {0x1FA00, 0x1FA6F},
      {0x1FA70, 0x1FAFF},  // symbols and pictographs extended-A
      {0xE0020, 0xE007F},  // tag characters (flag sequences)
  };
  return std::any_of(std::begin(kEmoji), std::end(kEmoji),
                     [cp](const CodepointRange& r) { return r.contains(cp); });
}

std::vector<std::string> StopwordList::sorted() const {
  std::vector<std::string> out(words.begin(), words.end());
  std::sort(out.begin(), out.end());
  return out;
}

StopwordList make_stopwords(const std::vector<std::string>& words, std::string source) {
  StopwordList list;
  list.source = std::move(source);
  for (const auto& w : words) {
    if (w.empty()) throw Error("textprep.stopword", "empty stopword entry");
    list.words.insert(unicode::to_nfc(w));
  }
  return list;
}

StopwordList load_stopwords(const std::string& path) {
  return make_stopwords(read_word_lines(path), path);
}

StemRuleSet make_stem_rules(std::vector<std::string> suffixes,
                            std::size_t min_stem_length, std::string source) {
  if (min_stem_length == 0) {
    throw Error("textprep.stem", "minimum stem length must be positive");
  }
  std::vector<std::pair<std::size_t, std::string>> keyed;
  std::set<std::string> seen;
  for (auto& s : suffixes) {
    if (s.empty()) throw Error("textprep.suffix", "empty suffix entry");
    std::string nfc = unicode::to_nfc(s);
    if (!seen.insert(nfc).second) continue;
    keyed.emplace_back(unicode::codepoint_count(nfc), std::move(nfc));
  }
  std::sort(keyed.begin(), keyed.end(), [](const auto& a, const auto& b) {
    return a.first != b.first ? a.first > b.first : a.second < b.second;
  });
  StemRuleSet rules;
  rules.min_stem_length = min_stem_length;
  rules.source = std::move(source);
  for (auto& [len, s] : keyed) rules.suffixes.push_back(std::move(s));
  return rules;
}

StemRuleSet load_suffixes(const std::string& path, std::size_t min_stem_length) {
  return make_stem_rules(read_word_lines(path), min_stem_length, path);
}

PipelineConfig default_pipeline() {
  PipelineConfig config;
  config.stopwords = load_stopwords(std::string(BNSENT_DATA_DIR) + "/stopwords_bn.txt");
  config.stemmer = load_suffixes(std::string(BNSENT_DATA_DIR) + "/suffixes_bn.txt");
  return config;
}

std::string normalize_unicode(std::string_view text) { return unicode::to_nfc(text); }

std::string clean(std::string_view text, const CleaningRules& rules) {
  const std::u32string cps = unicode::decode(text);
  std::vector<Decision> decisions(cps.size());
  for (std::size_t i = 0; i < cps.size(); ++i) decisions[i] = decide(cps[i], rules);

  std::string out;
  out.reserve(text.size());
  bool pending_space = false;
  auto emit = [&](char32_t cp) {
    if (pending_space && !out.empty()) out.push_back(' ');
    pending_space = false;
    unicode::append(out, cp);
  };

  for (std::size_t i = 0; i < cps.size();) {
    switch (decisions[i]) {
      case Decision::kKeep:
        emit(cps[i]);
        ++i;
        break;
      case Decision::kSpace:
        pending_space = true;
        ++i;
        break;
      case Decision::kJoiner: {
        std::size_t end = i;
        while (end < cps.size() && decisions[end] == Decision::kJoiner) ++end;
        const bool inside_word = rules.keep_joiners && i > 0 &&
                                 decisions[i - 1] == Decision::kKeep &&
                                 end < cps.size() && decisions[end] == Decision::kKeep;
        if (inside_word) {
          for (std::size_t j = i; j < end; ++j) unicode::append(out, cps[j]);
        }
        i = end;
        break;
      }
    }
  }
  return out;
}

Tokens tokenize(std::string_view text) {
  Tokens tokens;
  std::size_t i = 0;
  while (i < text.size()) {
    while (i < text.size() && is_ascii_space(text[i])) ++i;
    const std::size_t start = i;
    while (i < text.size() && !is_ascii_space(text[i])) ++i;
    if (i > start) tokens.emplace_back(text.substr(start, i - start));
  }
  return tokens;
}

Tokens remove_stopwords(const Tokens& tokens, const StopwordList& list) {
  Tokens out;
  out.reserve(tokens.size());
  for (const auto& t : tokens) {
    if (!list.contains(t)) out.push_back(t);
  }
  return out;
}

std::string stem(const std::string& token, const StemRuleSet& rules) {
  const std::size_t length = unicode::codepoint_count(token);
  for (const auto& suffix : rules.suffixes) {
    if (suffix.size() >= token.size() || !token.ends_with(suffix)) continue;
    const std::size_t suffix_length = unicode::codepoint_count(suffix);
    if (length - suffix_length >= rules.min_stem_length) {
      return token.substr(0, token.size() - suffix.size());
    }
  }
  return token;
}

std::string join(const Tokens& tokens) {
  std::string out;
  for (std::size_t i = 0; i < tokens.size(); ++i) {
    if (i) out.push_back(' ');
    out += tokens[i];
  }
  return out;
}

Preprocessed preprocess(std::string_view raw, const PipelineConfig& config) {
  std::string text = config.normalize ? normalize_unicode(raw) : std::string(raw);
  if (config.clean) text = clean(text, config.rules);
  Tokens tokens = tokenize(text);
  if (config.remove_stopwords) tokens = remove_stopwords(tokens, config.stopwords);
  if (config.stem) {
    for (auto& t : tokens) t = stem(t, config.stemmer);
  }
  Preprocessed result;
  result.text = join(tokens);
  result.tokens = std::move(tokens);
  return result;
}

bool within_clean_alphabet(std::string_view cleaned, const CleaningRules& rules) {
  const std::u32string cps = unicode::decode(cleaned);
  auto kept = [&](std::size_t i) {
    return i < cps.size() && decide(cps[i], rules) == Decision::kKeep;
  };
  for (std::size_t i = 0; i < cps.size(); ++i) {
    const char32_t cp = cps[i];
    if (cp == U' ' || kept(i)) continue;
    if (decide(cp, rules) == Decision::kJoiner) {
      std::size_t end = i;
      while (end < cps.size() && decide(cps[end], rules) == Decision::kJoiner) ++end;
      if (i > 0 && kept(i - 1) && kept(end)) {
        i = end - 1;
        continue;
      }
    }
    return false;
  }
  return true;
}

}  // namespace bnsent::textprep
