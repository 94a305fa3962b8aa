#pragma once

#include <string>
#include <string_view>
#include <vector>

namespace bnsent::csv {

struct Record {
  std::vector<std::string> fields;
  std::size_t line = 0;  // 1-based physical line where the record starts
};

// RFC 4180 reader: comma separated, double-quote quoting with "" escapes,
// CRLF or LF record terminators, newlines allowed inside quoted fields.
// A trailing newline does not produce an empty record; blank lines are skipped.
std::vector<Record> parse(std::string_view text);

// Quotes the field only when it contains a comma, quote, CR or LF.
std::string escape(std::string_view field);

std::string join_row(const std::vector<std::string>& fields);

}  // namespace bnsent::csv
