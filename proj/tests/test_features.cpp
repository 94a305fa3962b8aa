#include <doctest.h>

#include <cmath>

#include "bnsent/error.hpp"
#include "bnsent/features.hpp"
#include "bnsent/random.hpp"
#include "oracles.hpp"

using namespace bnsent;
using features::SparseEntry;
using features::SparseVector;
using features::Tokens;
using doctest::Approx;

namespace {

std::string error_code(const auto& fn) {
  try {
    fn();
  } catch (const Error& e) {
    return e.code();
  }
  return "";
}

}  // namespace

TEST_SUITE("features") {
  TEST_CASE("n-grams") {
    const Tokens t{"ক", "খ", "গ"};
    CHECK(features::ngrams(t, {1, 1}) == std::vector<std::string>{"ক", "খ", "গ"});
    CHECK(features::ngrams(t, {2, 2}) == std::vector<std::string>{"ক খ", "খ গ"});
    CHECK(features::ngrams({"ক"}, {2, 2}).empty());
    CHECK(features::ngrams(t, {1, 2}).size() == 5);
    CHECK(error_code([&] { features::ngrams(t, {0, 1}); }) == "features.ngram");
    CHECK(error_code([&] { features::ngrams(t, {2, 1}); }) == "features.ngram");
  }

  TEST_CASE("vocabulary from a hand-counted corpus") {
    const std::vector<Tokens> docs{{"a", "b"}, {"b", "c"}};
    const auto v = features::fit_vocabulary(docs);
    REQUIRE(v.size() == 3);
    CHECK(v.terms() == std::vector<std::string>{"a", "b", "c"});
    CHECK(v.document_frequencies() == std::vector<std::uint64_t>{1, 2, 1});
    CHECK(v.num_docs() == 2);
    CHECK(v.index_of("b") == 1);
    CHECK(v.index_of("z") == -1);
    CHECK(v.to_csv() == "term,index,df\na,0,1\nb,1,2\nc,2,1\n");
  }

  TEST_CASE("vocabulary errors and determinism") {
    const std::vector<Tokens> docs{{"a", "b"}, {"b", "c"}};
    CHECK(error_code([&] { features::fit_vocabulary(docs, {}, 3); }) == "features.empty_vocab");
    CHECK(error_code([] { features::fit_vocabulary(std::vector<Tokens>{}); }) == "features.no_docs");
    const auto a = features::fit_vocabulary(docs);
    const auto b = features::fit_vocabulary(docs);
    CHECK(a.terms() == b.terms());
    CHECK(a.fingerprint() == b.fingerprint());
    CHECK(a.fingerprint() != features::fit_vocabulary(docs, {1, 2}).fingerprint());
    const auto min2 = features::fit_vocabulary(docs, {}, 2);
    CHECK(min2.terms() == std::vector<std::string>{"b"});
  }

  TEST_CASE("vocabulary constructor validates") {
    CHECK_THROWS_AS(features::Vocabulary({"b", "a"}, {1, 1}, 2, {}, 1), Error);
    CHECK_THROWS_AS(features::Vocabulary({"a"}, {3}, 2, {}, 1), Error);
    CHECK_THROWS_AS(features::Vocabulary({"a"}, {1, 1}, 2, {}, 1), Error);
  }

  TEST_CASE("count vectors") {
    const auto v = features::fit_vocabulary(std::vector<Tokens>{{"a", "b"}});
    CHECK(features::count_vectorize({}, v).entries.empty());
    const auto x = features::count_vectorize({"b", "b", "a"}, v);
    CHECK(x.entries == std::vector<SparseEntry>{{0, 1.0}, {1, 2.0}});
    CHECK(x.dim == 2);
    CHECK(features::count_vectorize({"z", "y"}, v).entries.empty());
  }

  TEST_CASE("paper-literal TF-IDF by hand") {
    const std::vector<Tokens> docs{{"a", "b"}, {"b"}};
    const auto v = features::fit_vocabulary(docs);
    const auto m = features::tfidf_matrix(docs, v, features::TfidfVariant::kPaperLiteral);
    CHECK(m.rows[0].to_dense() == std::vector<double>{2.0, 1.0});
    CHECK(m.rows[1].to_dense() == std::vector<double>{0.0, 1.0});
    const std::vector<Tokens> uniform{{"a"}, {"a"}, {"a"}};
    const auto u = features::tfidf_matrix(uniform, features::fit_vocabulary(uniform),
                                          features::TfidfVariant::kPaperLiteral);
    for (const auto& row : u.rows) CHECK(row.to_dense() == std::vector<double>{1.0});
  }

  TEST_CASE("smoothed-log rows have unit or zero length") {
    Rng rng(11);
    for (int trial = 0; trial < 50; ++trial) {
      auto docs = testing::random_docs(rng, 8, 12);
      const auto v = features::fit_vocabulary(docs);
      docs.push_back({});
      const auto m = features::tfidf_matrix(docs, v, features::TfidfVariant::kSmoothedLog);
      for (const auto& row : m.rows) {
        const double n = row.squared_norm();
        if (row.entries.empty()) CHECK(n == 0.0);
        else CHECK(n == Approx(1.0).epsilon(1e-12));
      }
    }
  }

  TEST_CASE("featurization matches the brute-force oracle") {
    Rng rng(2024);
    for (int trial = 0; trial < 100; ++trial) {
      const auto docs = testing::random_docs(rng, 8, 12);
      const int hi = 1 + static_cast<int>(rng.uniform_index(2));
      const auto v = features::fit_vocabulary(docs, {1, hi});
      const auto ov = testing::oracle_vocab(docs, 1, hi, 1);
      REQUIRE(v.terms() == ov.terms);
      const auto counts = testing::oracle_counts(docs, ov, 1, hi);
      const auto n = static_cast<double>(docs.size());
      const auto paper = testing::oracle_tfidf_paper(counts, ov, n);
      const auto logv = testing::oracle_tfidf_log(counts, ov, n);
      const auto cm = features::count_matrix(docs, v);
      const auto pm = features::tfidf_matrix(docs, v, features::TfidfVariant::kPaperLiteral);
      const auto lm = features::tfidf_matrix(docs, v, features::TfidfVariant::kSmoothedLog);
      for (std::size_t i = 0; i < docs.size(); ++i) {
        CHECK(cm.rows[i].to_dense() == counts[i]);
        CHECK(testing::max_relative_error(pm.rows[i].to_dense(), paper[i]) <= 1e-12);
        CHECK(testing::max_relative_error(lm.rows[i].to_dense(), logv[i]) <= 1e-12);
      }
    }
  }

  TEST_CASE("sparse vector helpers") {
    const std::vector<double> dense{0.0, 2.0, 0.0, -1.0};
    const auto s = SparseVector::from_dense(dense);
    CHECK(s.entries.size() == 2);
    CHECK(s.to_dense() == dense);
    CHECK(s.squared_norm() == 5.0);
    CHECK(s.dot(std::vector<double>{1, 1, 1, 1}) == 1.0);
    CHECK(features::dot(s, s) == 5.0);
    SparseVector bad{{{2, 1.0}, {1, 1.0}}, 4};
    CHECK_THROWS_AS(bad.check(), Error);
  }

  TEST_CASE("embedding table parsing") {
    const auto t = features::EmbeddingTable::parse("ক 1 0 0\nখ 0 1 0\n");
    CHECK(t.size() == 2);
    CHECK(t.dim() == 3);
    REQUIRE(t.find("খ") != nullptr);
    CHECK(*t.find("খ") == std::vector<double>{0, 1, 0});
    CHECK(t.find("গ") == nullptr);
    try {
      features::EmbeddingTable::parse("ক 1 0 0\nখ 0 1 0 1\n");
      FAIL("expected an error");
    } catch (const Error& e) {
      CHECK(e.code() == "embedding.dimension");
      CHECK(std::string(e.what()).find("line 2") != std::string::npos);
    }
    CHECK(error_code([] { features::EmbeddingTable::parse(""); }) == "embedding.empty");
    CHECK(error_code([] { features::EmbeddingTable::parse("ক 1 x\n"); }) == "embedding.number");
    const auto dup = features::EmbeddingTable::parse("ক 1 0\nক 0 1\n");
    CHECK(dup.size() == 1);
    CHECK(*dup.find("ক") == std::vector<double>{1, 0});
    CHECK(dup.warnings().size() == 1);
  }

  TEST_CASE("document embeddings are token means") {
    const auto t = features::EmbeddingTable::parse("ক 1 0\nখ 0 1\n");
    CHECK(features::embed_document({"ক"}, t) == std::vector<double>{1, 0});
    CHECK(features::embed_document({"ক", "খ"}, t) == std::vector<double>{0.5, 0.5});
    CHECK(features::embed_document({"গ", "ঘ"}, t) == std::vector<double>{0, 0});
    CHECK(features::embed_document({}, t) == std::vector<double>{0, 0});
    const auto m = features::embedding_matrix(std::vector<Tokens>{{"ক"}, {"গ"}}, t);
    CHECK(m.dim == 2);
    CHECK(m.rows[1].entries.empty());
  }
}
