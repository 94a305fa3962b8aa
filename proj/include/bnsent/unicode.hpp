#pragma once

#include <cstddef>
#include <string>
#include <string_view>
#include <vector>

// Thin UTF-8 and character-property layer over ICU.
namespace bnsent::unicode {

bool is_valid_utf8(std::string_view text);

// Byte offset of the first invalid sequence, or npos when the text is valid.
std::size_t first_invalid_utf8(std::string_view text);

// Throws Error("utf8.invalid") on malformed input.
std::u32string decode(std::string_view text);

std::string encode(std::u32string_view codepoints);
void append(std::string& out, char32_t cp);

std::size_t codepoint_count(std::string_view text);

// Canonical composition (NFC).
std::string to_nfc(std::string_view text);
bool is_nfc(std::string_view text);

enum class CharClass {
  kLetter,
  kMark,
  kDigit,        // general category Nd
  kNumberOther,  // Nl, No
  kPunctuation,  // P*
  kSymbol,       // S*
  kSpace,        // White_Space property
  kJoiner,       // U+200C ZWNJ, U+200D ZWJ
  kOther,        // controls, format, unassigned, private use
};

CharClass classify(char32_t cp);

bool is_latin_letter(char32_t cp);

}  // namespace bnsent::unicode
