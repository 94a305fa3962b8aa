#include <doctest.h>

#include <algorithm>
#include <numeric>

#include "bnsent/csv.hpp"
#include "bnsent/error.hpp"
#include "bnsent/hashing.hpp"
#include "bnsent/random.hpp"
#include "bnsent/unicode.hpp"

using namespace bnsent;

TEST_SUITE("unicode_csv") {
  TEST_CASE("UTF-8 decode and encode") {
    const std::string s = "ক a 😋";
    const auto cps = unicode::decode(s);
    CHECK(cps == std::u32string{0x0995, ' ', 'a', ' ', 0x1F60B});
    CHECK(unicode::encode(cps) == s);
    CHECK(unicode::codepoint_count(s) == 5);
    CHECK(unicode::is_valid_utf8(s));
    CHECK_FALSE(unicode::is_valid_utf8("\xC0\x80"));
    CHECK(unicode::first_invalid_utf8("ab\xFF") == 2);
    CHECK_THROWS_AS(unicode::decode("\xE0\xA6"), Error);
  }

  TEST_CASE("character classes") {
    using unicode::CharClass;
    CHECK(unicode::classify(0x0995) == CharClass::kLetter);
    CHECK(unicode::classify(0x09BF) == CharClass::kMark);
    CHECK(unicode::classify(0x09E7) == CharClass::kDigit);
    CHECK(unicode::classify(',') == CharClass::kPunctuation);
    CHECK(unicode::classify(0x0964) == CharClass::kPunctuation);
    CHECK(unicode::classify(0x09F3) == CharClass::kSymbol);
    CHECK(unicode::classify(0x200D) == CharClass::kJoiner);
    CHECK(unicode::classify(0x00A0) == CharClass::kSpace);
    CHECK(unicode::classify(0x0001) == CharClass::kOther);
    CHECK(unicode::is_latin_letter('g'));
    CHECK(unicode::is_latin_letter(0x00E9));
    CHECK_FALSE(unicode::is_latin_letter(0x0995));
  }

  TEST_CASE("CSV parsing") {
    const auto r = csv::parse("a,b\n\"x,1\",\"say \"\"hi\"\"\"\n\n\"multi\nline\",z\r\nlast,\n");
    REQUIRE(r.size() == 4);
    CHECK(r[1].fields == std::vector<std::string>{"x,1", "say \"hi\""});
    CHECK(r[2].fields == std::vector<std::string>{"multi\nline", "z"});
    CHECK(r[2].line == 4);
    CHECK(r[3].line == 6);
    CHECK(r[3].fields == std::vector<std::string>{"last", ""});
    CHECK(csv::escape("plain") == "plain");
    CHECK(csv::escape("a,b") == "\"a,b\"");
    CHECK(csv::join_row({"a", "b\"c"}) == "a,\"b\"\"c\"");
  }

  TEST_CASE("SHA-256") {
    CHECK(sha256_hex("") == "e3b0c44298fc1c149afbf4c8996fb92427ae41e4649b934ca495991b7852b855");
    CHECK(sha256_hex("abc") == "ba7816bf8f01cfea414140de5dae2223b00361a396177a9cb410ff61f20015ad");
  }

  TEST_CASE("random streams") {
    Rng a(1), b(1);
    for (int i = 0; i < 10; ++i) CHECK(a.next_u64() == b.next_u64());
    Rng r(9);
    std::vector<int> hist(7, 0);
    for (int i = 0; i < 7000; ++i) ++hist[r.uniform_index(7)];
    for (int h : hist) CHECK(h > 800);
    for (int i = 0; i < 1000; ++i) {
      const double u = r.uniform01();
      CHECK(u >= 0.0);
      CHECK(u < 1.0);
    }
    std::vector<int> v(20);
    std::iota(v.begin(), v.end(), 0);
    r.shuffle(std::span(v));
    auto sorted = v;
    std::sort(sorted.begin(), sorted.end());
    CHECK(sorted[19] == 19);
    CHECK(derive_seed(1, 0) != derive_seed(1, 1));
    CHECK(derive_seed(1, 0) == derive_seed(1, 0));
  }
}
