#pragma once

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

namespace bnsent::corpus {

// Binary sentiment polarity: 1 positive, 0 negative.
enum class Label : std::uint8_t { kNegative = 0, kPositive = 1 };

inline int to_int(Label label) { return static_cast<int>(label); }

struct LabeledReview {
  std::string text;
  Label label = Label::kNegative;
};

struct Corpus {
  std::vector<LabeledReview> reviews;
  std::string source;
  // Non-fatal findings from loading, e.g. duplicated review texts.
  std::vector<std::string> warnings;

  std::size_t size() const { return reviews.size(); }
  bool empty() const { return reviews.empty(); }
  std::vector<Label> labels() const;
};

struct ColumnMapping {
  std::string review = "review";
  std::string sentiment = "sentiment";
};

// Parses CSV text. Validation failures are collected per row and raised as a
// single Error listing every offending row number.
Corpus parse_corpus(std::string_view csv_text, const ColumnMapping& columns,
                    std::string source = "<memory>");

Corpus load_corpus(const std::string& path, const ColumnMapping& columns = {});

// Writes `review,sentiment` CSV.
std::string to_csv(const Corpus& corpus);

struct ClassDistribution {
  std::size_t positive = 0;
  std::size_t negative = 0;
  std::size_t total = 0;
};

ClassDistribution class_distribution(const Corpus& corpus);
ClassDistribution class_distribution(const std::vector<Label>& labels);

struct DataSplit {
  std::vector<std::size_t> train;  // ascending corpus indices
  std::vector<std::size_t> test;   // ascending corpus indices
  double ratio = 0.8;
  std::uint64_t seed = 123;
  bool stratified = true;
};

// Number of training rows for `n` items: floor(ratio * n).
std::size_t train_size(double ratio, std::size_t n);

// Seeded shuffle-and-cut partition of corpus indices. With `stratified`, each
// class is shuffled separately and receives floor(ratio * class_size) training
// rows; the remaining row needed to reach floor(ratio * N) goes to the class
// with the larger fractional remainder (ties to the negative class).
DataSplit split(const std::vector<Label>& labels, double ratio,
                std::uint64_t seed, bool stratified = true);
DataSplit split(const Corpus& corpus, double ratio, std::uint64_t seed,
                bool stratified = true);

}  // namespace bnsent::corpus
