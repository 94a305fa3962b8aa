#include <doctest.h>

#include <algorithm>

#include "bnsent/app.hpp"
#include "bnsent/error.hpp"
#include "bnsent/textprep.hpp"
#include "bnsent/unicode.hpp"
#include "test_support.hpp"

using namespace bnsent;
using textprep::Tokens;

namespace {

// Raw and cleaned reviews from the paper's raw-versus-cleaned comparison,
// rendered in Unicode Bengali.
const char* kTableRaw1 =
    "ওয়েটার দের ব্যবহার একদম ফালতু,,,, ইটা তাদের কাছে আশা ছিল না,,, পুরাই জঘন্য "
    "ব্যবহার...... রাবিশ";
const char* kTableClean1 =
    "ওয়েটার দের ব্যবহার একদম ফালতু ইটা তাদের কাছে আশা ছিল না পুরাই জঘন্য ব্যবহার রাবিশ";
const char* kTableRaw2 =
    "অরিজিনাল বারবিকিউ চিকেন  এবং হানি মাস্টার্ড সস !!! খাওয়ার জন্য নিয়েছিলাম স্বাদটা "
    "চমৎকার ছিল এবং পরিবেশও খুব ভালো ছিল";
const char* kTableClean2 =
    "অরিজিনাল বারবিকিউ চিকেন এবং হানি মাস্টার্ড সস খাওয়ার জন্য নিয়েছিলাম স্বাদটা চমৎকার "
    "ছিল এবং পরিবেশও খুব ভালো ছিল";

textprep::PipelineConfig clean_only() {
  textprep::PipelineConfig p;
  p.remove_stopwords = false;
  p.stem = false;
  return p;
}

}  // namespace

TEST_SUITE("textprep") {
  TEST_CASE("NFC composes decomposed Bengali vowel signs") {
    // U+0995 U+09C7 U+09BE composes to U+0995 U+09CB.
    CHECK(textprep::normalize_unicode("কো") == "কো");
    CHECK(textprep::normalize_unicode("ৌ") == "ৌ");
    // Composition exclusions decompose: U+09DF, U+09DC.
    CHECK(textprep::normalize_unicode("য়") == "য়");
    CHECK(textprep::normalize_unicode("ড়") == "ড়");
    CHECK(textprep::normalize_unicode("কফি") == "কফি");
    CHECK(unicode::is_nfc("কফি"));
  }

  TEST_CASE("NFC leaves normalized text byte-identical") {
    const std::string s = unicode::to_nfc(kTableRaw2);
    CHECK(textprep::normalize_unicode(s) == s);
    CHECK(textprep::normalize_unicode("") == "");
  }

  TEST_CASE("cleaning removes punctuation runs from the paper's raw reviews") {
    const auto p = clean_only();
    CHECK(textprep::preprocess(kTableRaw1, p).text == unicode::to_nfc(kTableClean1));
    CHECK(textprep::preprocess(kTableRaw2, p).text == unicode::to_nfc(kTableClean2));
  }

  TEST_CASE("cleaning examples") {
    CHECK(textprep::clean("😋🍕") == "");
    CHECK(textprep::clean("খাবার good ছিল!!") == "খাবার ছিল");
    CHECK(textprep::clean("দাম ১০০ টাকা, 5/5") == "দাম টাকা");
    CHECK(textprep::clean("  ভালো\t\n") == "ভালো");
    CHECK(textprep::clean("₹৳ ভাত") == "ভাত");
  }

  TEST_CASE("joiners survive only inside words") {
    const std::string inner = "র‍য";
    CHECK(textprep::clean(inner) == inner);
    CHECK(textprep::clean("‌ক") == "ক");
    CHECK(textprep::clean("ক‍") == "ক");
    CHECK(textprep::clean("ক‍!খ") == "ক খ");
    textprep::CleaningRules no_joiners;
    no_joiners.keep_joiners = false;
    CHECK(textprep::clean(inner, no_joiners) == "রয");
  }

  TEST_CASE("rule switches") {
    textprep::CleaningRules keep_latin;
    keep_latin.strip_latin = false;
    keep_latin.keep_ranges.push_back({'a', 'z'});
    CHECK(textprep::clean("খাবার good!", keep_latin) == "খাবার good");
    textprep::CleaningRules keep_digits;
    keep_digits.strip_digits = false;
    CHECK(textprep::clean("১০০ টাকা", keep_digits) == "১০০ টাকা");
  }

  TEST_CASE("invalid UTF-8 is rejected") {
    CHECK_THROWS_AS(textprep::clean("\xC3"), Error);
  }

  TEST_CASE("tokenize") {
    CHECK(textprep::tokenize("").empty());
    CHECK(textprep::tokenize("খাবার ভালো ছিল") == Tokens{"খাবার", "ভালো", "ছিল"});
    CHECK(textprep::tokenize(" ভালো ") == Tokens{"ভালো"});
    CHECK(textprep::join({"ক", "খ"}) == "ক খ");
  }

  TEST_CASE("stopword removal") {
    const auto list = textprep::make_stopwords({"ও"});
    CHECK(textprep::remove_stopwords({"খাবার", "ও", "ভালো"}, list) == Tokens{"খাবার", "ভালো"});
    CHECK(textprep::remove_stopwords({"ও", "ও"}, list).empty());
    CHECK(textprep::remove_stopwords({"খাবার", "ও"}, textprep::make_stopwords({})) ==
          Tokens{"খাবার", "ও"});
  }

  TEST_CASE("stopword list is stored in NFC") {
    const auto list = textprep::make_stopwords({"কো"});
    CHECK(list.contains("কো"));
  }

  TEST_CASE("stemming") {
    const auto rules = textprep::make_stem_rules({"টা", "গুলো", "ে"});
    CHECK(textprep::stem("খাবারটা", rules) == "খাবার");
    CHECK(textprep::stem("খাবার", rules) == "খাবার");
    CHECK(textprep::stem("টা", rules) == "টা");
    CHECK(textprep::stem("পিজ্জাগুলো", rules) == "পিজ্জা");
    // Longest suffix first, then the min-stem guard falls back to shorter ones.
    const auto nested = textprep::make_stem_rules({"ের", "র"});
    CHECK(textprep::stem("কাকের", nested) == "কাক");
    CHECK(textprep::stem("কের", nested) == "কে");
    CHECK(rules.suffixes.front() == "গুলো");
  }

  TEST_CASE("stem rules reject empty suffixes") {
    CHECK_THROWS_AS(textprep::make_stem_rules({"টা", ""}), Error);
  }

  TEST_CASE("bundled word lists load") {
    const auto p = textprep::default_pipeline();
    CHECK(p.stopwords.words.size() >= 300);
    CHECK(p.stopwords.contains("এবং"));
    CHECK_FALSE(p.stopwords.contains("না"));
    CHECK_FALSE(p.stopwords.contains("নেই"));
    CHECK(p.stemmer.suffixes.size() >= 20);
    for (const auto& w : p.stopwords.words) CHECK(unicode::is_nfc(w));
  }

  TEST_CASE("full pipeline") {
    const auto p = textprep::default_pipeline();
    const auto r = textprep::preprocess("খাবারটা খুব ভালো ছিল!!! 😋", p);
    CHECK(r.text == textprep::join(r.tokens));
    CHECK(std::find(r.tokens.begin(), r.tokens.end(), "খাবার") != r.tokens.end());
    const auto empty = textprep::preprocess("", p);
    CHECK(empty.tokens.empty());
    CHECK(empty.text.empty());
  }

  TEST_CASE("preprocess without stemming is idempotent") {
    auto p = textprep::default_pipeline();
    p.stem = false;
    for (const char* raw : {kTableRaw1, kTableRaw2, "খাবার good ছিল!!", "এবং এবং"}) {
      const auto once = textprep::preprocess(raw, p);
      const auto twice = textprep::preprocess(once.text, p);
      CHECK(once.text == twice.text);
      CHECK(once.tokens == twice.tokens);
    }
  }

  TEST_CASE("word list files: comments, blanks and missing files") {
    testing::TempDir dir;
    app::write_file(dir.file("s.txt"), "# comment\nও\n\n  এবং  # trailing\n");
    const auto list = textprep::load_stopwords(dir.file("s.txt"));
    CHECK(list.words.size() == 2);
    CHECK(list.contains("এবং"));
    CHECK_THROWS_AS(textprep::load_stopwords(dir.file("none.txt")), Error);
  }
}
