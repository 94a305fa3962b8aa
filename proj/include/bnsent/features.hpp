#pragma once

#include <cstddef>
#include <cstdint>
#include <map>
#include <span>
#include <string>
#include <unordered_map>
#include <vector>

#include "bnsent/textprep.hpp"

namespace bnsent::features {

using textprep::Tokens;

struct SparseEntry {
  std::uint32_t index;
  double value;
  bool operator==(const SparseEntry&) const = default;
};

// Sorted (index, value) pairs; indices strictly increasing and < dim, no
// explicit zeros.
struct SparseVector {
  std::vector<SparseEntry> entries;
  std::size_t dim = 0;

  bool operator==(const SparseVector&) const = default;

  std::vector<double> to_dense() const;
  static SparseVector from_dense(std::span<const double> dense);
  // Validates the invariants above; throws Error("features.sparse").
  void check() const;

  double dot(std::span<const double> dense) const;
  double squared_norm() const;
};

double dot(const SparseVector& a, const SparseVector& b);

struct DocTermMatrix {
  std::vector<SparseVector> rows;
  std::size_t dim = 0;
};

struct NgramRange {
  int lo = 1;
  int hi = 1;
};

// All contiguous n-token windows for n in [lo, hi], joined by single spaces;
// n = lo first, each in document order.
std::vector<std::string> ngrams(const Tokens& tokens, NgramRange range);

// Term -> column map with document frequencies, frozen after fitting. Terms
// are indexed in byte-lexicographic order, so equal inputs yield equal maps.
class Vocabulary {
 public:
  Vocabulary() = default;
  // Rebuilds a vocabulary from persisted parts. `terms` must be strictly
  // ascending and `df` parallel to it.
  Vocabulary(std::vector<std::string> terms, std::vector<std::uint64_t> df,
             std::uint64_t num_docs, NgramRange range, std::uint64_t min_df);

  std::size_t size() const { return terms_.size(); }
  bool empty() const { return terms_.empty(); }
  // -1 when absent.
  std::int64_t index_of(const std::string& term) const;
  const std::string& term(std::size_t index) const { return terms_[index]; }
  std::uint64_t df(std::size_t index) const { return df_[index]; }
  const std::vector<std::string>& terms() const { return terms_; }
  const std::vector<std::uint64_t>& document_frequencies() const { return df_; }
  std::uint64_t num_docs() const { return num_docs_; }
  NgramRange range() const { return range_; }
  std::uint64_t min_df() const { return min_df_; }

  // SHA-256 over the canonical `term,index,df` export plus N, range and
  // min-df. Two vocabularies are interchangeable iff fingerprints match.
  std::string fingerprint() const;
  // CSV with header `term,index,df`.
  std::string to_csv() const;

 private:
  std::vector<std::string> terms_;
  std::vector<std::uint64_t> df_;
  std::unordered_map<std::string, std::uint32_t> index_;
  std::uint64_t num_docs_ = 0;
  NgramRange range_{};
  std::uint64_t min_df_ = 1;
};

Vocabulary fit_vocabulary(std::span<const Tokens> docs, NgramRange range = {},
                          std::uint64_t min_df = 1);

SparseVector count_vectorize(const Tokens& doc, const Vocabulary& vocab);
DocTermMatrix count_matrix(std::span<const Tokens> docs, const Vocabulary& vocab);

enum class TfidfVariant {
  // tf * N / df, raw counts, no log, no normalization.
  kPaperLiteral,
  // tf * (1 + ln((1 + N) / (1 + df))), then per-row L2 normalization.
  kSmoothedLog,
};

std::string to_string(TfidfVariant v);
TfidfVariant tfidf_variant_from_string(const std::string& s);

// Per-term inverse document frequency factor for `variant`.
std::vector<double> idf_weights(const Vocabulary& vocab, TfidfVariant variant);

SparseVector tfidf_vectorize(const Tokens& doc, const Vocabulary& vocab,
                             TfidfVariant variant);
DocTermMatrix tfidf_matrix(std::span<const Tokens> docs, const Vocabulary& vocab,
                           TfidfVariant variant);

class EmbeddingTable {
 public:
  std::size_t dim() const { return dim_; }
  std::size_t size() const { return vectors_.size(); }
  const std::vector<double>* find(const std::string& token) const;
  const std::vector<std::string>& warnings() const { return warnings_; }

  // `token v1 ... vd` per line, d taken from the first line.
  static EmbeddingTable parse(std::string_view text, const std::string& source = "<memory>");
  static EmbeddingTable load(const std::string& path);

 private:
  std::size_t dim_ = 0;
  std::unordered_map<std::string, std::vector<double>> vectors_;
  std::vector<std::string> warnings_;
};

// Mean of the vectors of in-table tokens; zero vector when none are known.
std::vector<double> embed_document(const Tokens& tokens, const EmbeddingTable& table);
DocTermMatrix embedding_matrix(std::span<const Tokens> docs, const EmbeddingTable& table);

}  // namespace bnsent::features
