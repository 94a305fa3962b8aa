#include "bnsent/synthetic.hpp"

#include <cmath>
#include <numeric>

#include "bnsent/error.hpp"
#include "bnsent/random.hpp"

namespace bnsent::synthetic {

namespace {

const std::vector<std::string> kFillers = {
    "এবং", "ছিল", "খুব", "একদম", "আমার", "অনেক", "এই", "কিন্তু", "আমি", "তাদের",
};
const std::vector<std::string> kInflections = {"টা", "গুলো", "টি"};
const std::vector<std::string> kNoise = {
    ",,,", "!!!", "......", "😋", "👎", "🍕", "😡", "good", "ok", "১০০", "।", "???", "5/5",
};

const std::string& pick(Rng& rng, const std::vector<std::string>& items) {
  return items[rng.uniform_index(items.size())];
}

std::string make_review(Rng& rng, corpus::Label label) {
  const auto& polar =
      label == corpus::Label::kPositive ? positive_lexicon() : negative_lexicon();
  std::vector<std::string> words;
  const std::size_t n_polar = 4 + rng.uniform_index(3);
  const std::size_t n_neutral = 1;
  const std::size_t n_filler = rng.uniform_index(3);
  for (std::size_t i = 0; i < n_polar; ++i) words.push_back(pick(rng, polar));
  for (std::size_t i = 0; i < n_neutral; ++i) {
    std::string w = pick(rng, neutral_lexicon());
    if (rng.uniform01() < 0.3) w += pick(rng, kInflections);
    words.push_back(std::move(w));
  }
  for (std::size_t i = 0; i < n_filler; ++i) words.push_back(pick(rng, kFillers));
  rng.shuffle(std::span(words));

  std::string text;
  for (std::size_t i = 0; i < words.size(); ++i) {
    if (i) text.push_back(' ');
    text += words[i];
    if (rng.uniform01() < 0.15) {
      if (rng.uniform01() < 0.5) text.push_back(' ');
      text += pick(rng, kNoise);
    }
  }
  return text;
}

}  // namespace

const std::vector<std::string>& positive_lexicon() {
  static const std::vector<std::string> words = {
      "মজাদার", "সুস্বাদু", "চমৎকার", "দারুণ", "অসাধারণ", "তাজা", "ভালো", "সেরা",
      "মুগ্ধ", "প্রিয়", "পরিচ্ছন্ন", "নরম", "সুন্দর", "যত্নশীল", "সন্তুষ্ট", "উপভোগ্য",
      "সুগন্ধি", "মানসম্মত", "অতুলনীয়", "লোভনীয়", "রসালো", "খাঁটি", "আরামদায়ক",
      "প্রশংসনীয়", "চমকপ্রদ", "উৎকৃষ্ট", "আন্তরিক", "নিখুঁত", "সাশ্রয়ী", "তৃপ্তিকর",
  };
  return words;
}

const std::vector<std::string>& negative_lexicon() {
  static const std::vector<std::string> words = {
      "বাজে", "খারাপ", "পচা", "ঠান্ডা", "বাসি", "জঘন্য", "ফালতু", "নোংরা",
      "তিক্ত", "শক্ত", "অখাদ্য", "বিরক্তিকর", "হতাশ", "নষ্ট", "কাঁচা", "পোড়া",
      "দুর্গন্ধ", "অপরিষ্কার", "বিস্বাদ", "নিম্নমানের", "অভদ্র", "ভেজাল", "তেলতেলে",
      "অস্বাস্থ্যকর", "লবণাক্ত", "দেরিতে", "ঝামেলা", "অপ্রতুল", "ব্যর্থ", "বিশ্রী",
  };
  return words;
}

const std::vector<std::string>& neutral_lexicon() {
  static const std::vector<std::string> words = {
      "খাবার", "অর্ডার", "দাম", "স্বাদ", "ডেলিভারি", "মেনু", "সার্ভিস", "পরিমাণ",
  };
  return words;
}

GeneratedCorpus generate(const Params& params) {
  if (params.size == 0) throw Error("synthetic.size", "corpus size must be positive");
  if (!(params.positive_fraction >= 0.0 && params.positive_fraction <= 1.0)) {
    throw Error("synthetic.balance", "positive fraction must lie in [0, 1]");
  }
  if (!(params.noise >= 0.0 && params.noise <= 1.0)) {
    throw Error("synthetic.noise", "noise rate must lie in [0, 1]");
  }
  Rng rng(params.seed);
  const auto positives = static_cast<std::size_t>(
      std::llround(static_cast<double>(params.size) * params.positive_fraction));
  std::vector<corpus::Label> labels(params.size, corpus::Label::kNegative);
  std::fill(labels.begin(), labels.begin() + static_cast<std::ptrdiff_t>(positives),
            corpus::Label::kPositive);
  rng.shuffle(std::span(labels));

  GeneratedCorpus out;
  out.corpus.source = "synthetic(size=" + std::to_string(params.size) +
                      ", seed=" + std::to_string(params.seed) + ")";
  out.true_labels = labels;
  for (const auto label : labels) {
    corpus::LabeledReview review;
    review.text = make_review(rng, label);
    // Always drawn, so the texts do not depend on the noise rate.
    const bool flip = rng.uniform01() < params.noise;
    review.label = flip ? (label == corpus::Label::kPositive ? corpus::Label::kNegative
                                                             : corpus::Label::kPositive)
                        : label;
    out.corpus.reviews.push_back(std::move(review));
  }
  return out;
}

}  // namespace bnsent::synthetic
