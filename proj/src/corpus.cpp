#include "bnsent/corpus.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <map>
#include <sstream>
#include <unordered_map>

#include "bnsent/csv.hpp"
#include "bnsent/error.hpp"
#include "bnsent/random.hpp"
#include "bnsent/unicode.hpp"

namespace bnsent::corpus {

namespace {

std::string_view trim(std::string_view s) {
  constexpr std::string_view kWs = " \t\r\n\v\f";
  const auto b = s.find_first_not_of(kWs);
  if (b == std::string_view::npos) return {};
  const auto e = s.find_last_not_of(kWs);
  return s.substr(b, e - b + 1);
}

std::string join_numbers(const std::vector<std::size_t>& rows) {
  std::string out;
  for (std::size_t i = 0; i < rows.size(); ++i) {
    if (i) out += ", ";
    out += std::to_string(rows[i]);
  }
  return out;
}

std::size_t column_index(const std::vector<std::string>& header,
                         const std::string& name) {
  std::size_t found = header.size();
  for (std::size_t i = 0; i < header.size(); ++i) {
    if (trim(header[i]) != name) continue;
    if (found != header.size()) {
      throw Error("corpus.duplicate_header", "duplicate header column '" + name + "'");
    }
    found = i;
  }
  if (found == header.size()) {
    throw Error("corpus.missing_header", "missing header column '" + name + "'");
  }
  return found;
}

}  // namespace

std::vector<Label> Corpus::labels() const {
  std::vector<Label> out;
  out.reserve(reviews.size());
  for (const auto& r : reviews) out.push_back(r.label);
  return out;
}

Corpus parse_corpus(std::string_view csv_text, const ColumnMapping& columns,
                    std::string source) {
  if (const auto bad = unicode::first_invalid_utf8(csv_text);
      bad != std::string_view::npos) {
    throw Error("corpus.utf8", source + ": undecodable bytes at offset " +
                                   std::to_string(bad));
  }
  // A leading byte-order mark is tolerated.
  if (csv_text.starts_with("\xEF\xBB\xBF")) csv_text.remove_prefix(3);

  const auto records = csv::parse(csv_text);
  if (records.empty()) throw Error("corpus.no_header", source + ": no header row");

  const auto& header = records.front().fields;
  const std::size_t review_col = column_index(header, columns.review);
  const std::size_t label_col = column_index(header, columns.sentiment);
  const std::size_t needed = std::max(review_col, label_col) + 1;

  Corpus corpus;
  corpus.source = std::move(source);
  std::vector<std::size_t> empty_rows, bad_label_rows, short_rows;
  for (std::size_t r = 1; r < records.size(); ++r) {
    const auto& rec = records[r];
    if (rec.fields.size() < needed) {
      short_rows.push_back(rec.line);
      continue;
    }
    const std::string_view label_text = trim(rec.fields[label_col]);
    const std::string& text = rec.fields[review_col];
    bool ok = true;
    if (label_text != "0" && label_text != "1") {
      bad_label_rows.push_back(rec.line);
      ok = false;
    }
    if (trim(text).empty()) {
      empty_rows.push_back(rec.line);
      ok = false;
    }
    if (!ok) continue;
    corpus.reviews.push_back(
        {text, label_text == "1" ? Label::kPositive : Label::kNegative});
  }

  std::string problems;
  if (!short_rows.empty()) problems += "; missing fields on line(s) " + join_numbers(short_rows);
  if (!bad_label_rows.empty()) problems += "; label outside {0,1} on line(s) " + join_numbers(bad_label_rows);
  if (!empty_rows.empty()) problems += "; empty review text on line(s) " + join_numbers(empty_rows);
  if (!problems.empty()) {
    const std::string code = !bad_label_rows.empty() ? "corpus.bad_label"
                             : !empty_rows.empty()   ? "corpus.empty_review"
                                                     : "corpus.short_row";
    throw Error(code, corpus.source + ": rejected rows" + problems);
  }
  if (corpus.reviews.empty()) {
    throw Error("corpus.empty", corpus.source + ": empty corpus (header only)");
  }

  std::unordered_map<std::string_view, std::size_t> first_seen;
  std::map<std::size_t, std::vector<std::size_t>> duplicates;
  for (std::size_t i = 0; i < corpus.reviews.size(); ++i) {
    auto [it, inserted] = first_seen.emplace(corpus.reviews[i].text, i);
    if (!inserted) duplicates[it->second].push_back(i);
  }
  for (const auto& [first, repeats] : duplicates) {
    corpus.warnings.push_back("review " + std::to_string(first) +
                              " duplicated at review index(es) " + join_numbers(repeats));
  }
  return corpus;
}

Corpus load_corpus(const std::string& path, const ColumnMapping& columns) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error("corpus.open", "cannot open corpus file " + path);
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_corpus(buf.str(), columns, path);
}

std::string to_csv(const Corpus& corpus) {
  std::string out = "review,sentiment\n";
  for (const auto& r : corpus.reviews) {
    out += csv::escape(r.text);
    out += ',';
    out += std::to_string(to_int(r.label));
    out += '\n';
  }
  return out;
}

ClassDistribution class_distribution(const std::vector<Label>& labels) {
  ClassDistribution d;
  for (Label l : labels) {
    if (l == Label::kPositive) ++d.positive; else ++d.negative;
  }
  d.total = labels.size();
  return d;
}

ClassDistribution class_distribution(const Corpus& corpus) {
  return class_distribution(corpus.labels());
}

std::size_t train_size(double ratio, std::size_t n) {
  // The epsilon absorbs representation error such as 0.29 * 100 = 28.999...
  return static_cast<std::size_t>(std::floor(ratio * static_cast<double>(n) + 1e-9));
}

DataSplit split(const std::vector<Label>& labels, double ratio,
                std::uint64_t seed, bool stratified) {
  if (!(ratio > 0.0 && ratio < 1.0)) {
    throw Error("split.ratio", "split ratio must lie strictly between 0 and 1");
  }
  if (labels.empty()) throw Error("split.empty", "cannot split an empty corpus");

  const std::size_t n = labels.size();
  const std::size_t n_train = train_size(ratio, n);
  Rng rng(seed);
  DataSplit out;
  out.ratio = ratio;
  out.seed = seed;
  out.stratified = stratified;

  if (!stratified) {
    std::vector<std::size_t> order(n);
    for (std::size_t i = 0; i < n; ++i) order[i] = i;
    rng.shuffle(std::span(order));
    out.train.assign(order.begin(), order.begin() + static_cast<std::ptrdiff_t>(n_train));
    out.test.assign(order.begin() + static_cast<std::ptrdiff_t>(n_train), order.end());
  } else {
    std::vector<std::size_t> by_class[2];
    for (std::size_t i = 0; i < n; ++i) by_class[to_int(labels[i])].push_back(i);
    for (const auto& members : by_class) {
      if (members.empty()) {
        throw Error("split.missing_class",
                    "stratified split needs members of both classes");
      }
    }
    std::size_t quota[2];
    double remainder[2];
    for (int c = 0; c < 2; ++c) {
      const double exact = ratio * static_cast<double>(by_class[c].size());
      quota[c] = train_size(ratio, by_class[c].size());
      remainder[c] = exact - static_cast<double>(quota[c]);
    }
    std::size_t missing = n_train - quota[0] - quota[1];
    while (missing > 0) {
      const int c = remainder[1] > remainder[0] ? 1 : 0;
      ++quota[c];
      remainder[c] = -1.0;
      --missing;
    }
    for (int c = 0; c < 2; ++c) {
      auto& members = by_class[c];
      rng.shuffle(std::span(members));
      out.train.insert(out.train.end(), members.begin(),
                       members.begin() + static_cast<std::ptrdiff_t>(quota[c]));
      out.test.insert(out.test.end(),
                      members.begin() + static_cast<std::ptrdiff_t>(quota[c]),
                      members.end());
    }
  }
  std::sort(out.train.begin(), out.train.end());
  std::sort(out.test.begin(), out.test.end());
  return out;
}

DataSplit split(const Corpus& corpus, double ratio, std::uint64_t seed,
                bool stratified) {
  return split(corpus.labels(), ratio, seed, stratified);
}

}  // namespace bnsent::corpus
