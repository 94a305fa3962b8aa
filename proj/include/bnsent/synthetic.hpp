#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "bnsent/corpus.hpp"

// Seeded two-lexicon generator of Bengali-script food reviews. Each review
// draws several polar words from its class lexicon, one common food word
// (some inflected), optional stopword fillers and punctuation/emoji/Latin
// noise that the cleaning stage removes.
namespace bnsent::synthetic {

struct Params {
  std::size_t size = 1500;
  double positive_fraction = 0.5;  // exact count: round(size * fraction)
  double noise = 0.0;              // probability of flipping each label
  std::uint64_t seed = 123;
};

const std::vector<std::string>& positive_lexicon();
const std::vector<std::string>& negative_lexicon();
const std::vector<std::string>& neutral_lexicon();

struct GeneratedCorpus {
  corpus::Corpus corpus;
  // Class each text was generated from (before label noise).
  std::vector<corpus::Label> true_labels;
};

GeneratedCorpus generate(const Params& params);

}  // namespace bnsent::synthetic
