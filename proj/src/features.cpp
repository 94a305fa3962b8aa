#include "bnsent/features.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <sstream>

#include "bnsent/csv.hpp"
#include "bnsent/error.hpp"
#include "bnsent/hashing.hpp"
#include "bnsent/unicode.hpp"

namespace bnsent::features {

std::vector<double> SparseVector::to_dense() const {
  std::vector<double> out(dim, 0.0);
  for (const auto& e : entries) out[e.index] = e.value;
  return out;
}

SparseVector SparseVector::from_dense(std::span<const double> dense) {
  SparseVector v;
  v.dim = dense.size();
  for (std::size_t i = 0; i < dense.size(); ++i) {
    if (dense[i] != 0.0) v.entries.push_back({static_cast<std::uint32_t>(i), dense[i]});
  }
  return v;
}

void SparseVector::check() const {
  for (std::size_t i = 0; i < entries.size(); ++i) {
    if (entries[i].index >= dim) throw Error("features.sparse", "index out of range");
    if (entries[i].value == 0.0) throw Error("features.sparse", "explicit zero entry");
    if (i > 0 && entries[i - 1].index >= entries[i].index) {
      throw Error("features.sparse", "indices not strictly increasing");
    }
  }
}

double SparseVector::dot(std::span<const double> dense) const {
  double s = 0.0;
  for (const auto& e : entries) s += e.value * dense[e.index];
  return s;
}

double SparseVector::squared_norm() const {
  double s = 0.0;
  for (const auto& e : entries) s += e.value * e.value;
  return s;
}

double dot(const SparseVector& a, const SparseVector& b) {
  double s = 0.0;
  auto ia = a.entries.begin();
  auto ib = b.entries.begin();
  while (ia != a.entries.end() && ib != b.entries.end()) {
    if (ia->index < ib->index) {
      ++ia;
    } else if (ib->index < ia->index) {
      ++ib;
    } else {
      s += ia->value * ib->value;
      ++ia;
      ++ib;
    }
  }
  return s;
}

std::vector<std::string> ngrams(const Tokens& tokens, NgramRange range) {
  if (range.lo < 1 || range.hi < range.lo) {
    throw Error("features.ngram", "n-gram range needs 1 <= lo <= hi");
  }
  std::vector<std::string> out;
  for (int n = range.lo; n <= range.hi; ++n) {
    const auto width = static_cast<std::size_t>(n);
    if (tokens.size() < width) break;
    for (std::size_t i = 0; i + width <= tokens.size(); ++i) {
      std::string gram = tokens[i];
      for (std::size_t j = 1; j < width; ++j) {
        gram.push_back(' ');
        gram += tokens[i + j];
      }
      out.push_back(std::move(gram));
    }
  }
  return out;
}

Vocabulary::Vocabulary(std::vector<std::string> terms, std::vector<std::uint64_t> df,
                       std::uint64_t num_docs, NgramRange range, std::uint64_t min_df)
    : terms_(std::move(terms)),
      df_(std::move(df)),
      num_docs_(num_docs),
      range_(range),
      min_df_(min_df) {
  if (terms_.size() != df_.size()) {
    throw Error("features.vocab", "term and df lists differ in length");
  }
  for (std::size_t i = 0; i < terms_.size(); ++i) {
    if (i > 0 && !(terms_[i - 1] < terms_[i])) {
      throw Error("features.vocab", "vocabulary terms must be strictly ascending");
    }
    if (df_[i] == 0 || df_[i] > num_docs_) {
      throw Error("features.vocab_df", "document frequency out of range for term '" +
                                           terms_[i] + "'");
    }
    index_.emplace(terms_[i], static_cast<std::uint32_t>(i));
  }
}

std::int64_t Vocabulary::index_of(const std::string& term) const {
  const auto it = index_.find(term);
  return it == index_.end() ? -1 : static_cast<std::int64_t>(it->second);
}

std::string Vocabulary::to_csv() const {
  std::string out = "term,index,df\n";
  for (std::size_t i = 0; i < terms_.size(); ++i) {
    out += csv::escape(terms_[i]);
    out += ',' + std::to_string(i) + ',' + std::to_string(df_[i]) + '\n';
  }
  return out;
}

std::string Vocabulary::fingerprint() const {
  std::string canon = "N=" + std::to_string(num_docs_) + ";ngram=" +
                      std::to_string(range_.lo) + "," + std::to_string(range_.hi) +
                      ";min_df=" + std::to_string(min_df_) + "\n";
  canon += to_csv();
  return sha256_hex(canon);
}

Vocabulary fit_vocabulary(std::span<const Tokens> docs, NgramRange range,
                          std::uint64_t min_df) {
  if (docs.empty()) throw Error("features.no_docs", "cannot fit a vocabulary on zero documents");
  std::map<std::string, std::uint64_t> df;
  for (const auto& doc : docs) {
    auto grams = ngrams(doc, range);
    std::sort(grams.begin(), grams.end());
    grams.erase(std::unique(grams.begin(), grams.end()), grams.end());
    for (auto& g : grams) ++df[std::move(g)];
  }
  std::vector<std::string> terms;
  std::vector<std::uint64_t> counts;
  const std::uint64_t threshold = std::max<std::uint64_t>(1, min_df);
  for (auto& [term, count] : df) {
    if (count < threshold) continue;
    terms.push_back(term);
    counts.push_back(count);
  }
  if (terms.empty()) {
    throw Error("features.empty_vocab", "no n-gram reaches the min-df threshold");
  }
  return Vocabulary(std::move(terms), std::move(counts), docs.size(), range, min_df);
}

SparseVector count_vectorize(const Tokens& doc, const Vocabulary& vocab) {
  std::map<std::uint32_t, double> counts;
  for (const auto& g : ngrams(doc, vocab.range())) {
    const auto idx = vocab.index_of(g);
    if (idx >= 0) counts[static_cast<std::uint32_t>(idx)] += 1.0;
  }
  SparseVector v;
  v.dim = vocab.size();
  v.entries.reserve(counts.size());
  for (const auto& [idx, c] : counts) v.entries.push_back({idx, c});
  return v;
}

DocTermMatrix count_matrix(std::span<const Tokens> docs, const Vocabulary& vocab) {
  DocTermMatrix m;
  m.dim = vocab.size();
  m.rows.reserve(docs.size());
  for (const auto& d : docs) m.rows.push_back(count_vectorize(d, vocab));
  return m;
}

std::string to_string(TfidfVariant v) {
  return v == TfidfVariant::kPaperLiteral ? "paper-literal" : "smoothed-log";
}

TfidfVariant tfidf_variant_from_string(const std::string& s) {
  if (s == "paper-literal") return TfidfVariant::kPaperLiteral;
  if (s == "smoothed-log") return TfidfVariant::kSmoothedLog;
  throw Error("features.variant", "unknown TF-IDF variant '" + s + "'");
}

std::vector<double> idf_weights(const Vocabulary& vocab, TfidfVariant variant) {
  const auto n = static_cast<double>(vocab.num_docs());
  std::vector<double> idf(vocab.size());
  for (std::size_t i = 0; i < vocab.size(); ++i) {
    const auto df = static_cast<double>(vocab.df(i));
    if (vocab.df(i) == 0) throw Error("features.vocab_df", "zero document frequency");
    idf[i] = variant == TfidfVariant::kPaperLiteral
                 ? n / df
                 : 1.0 + std::log((1.0 + n) / (1.0 + df));
  }
  return idf;
}

namespace {

SparseVector weight_row(SparseVector counts, const std::vector<double>& idf,
                        TfidfVariant variant) {
  for (auto& e : counts.entries) e.value *= idf[e.index];
  if (variant == TfidfVariant::kSmoothedLog) {
    const double norm = std::sqrt(counts.squared_norm());
    if (norm > 0.0) {
      for (auto& e : counts.entries) e.value /= norm;
    }
  }
  return counts;
}

}  // namespace

SparseVector tfidf_vectorize(const Tokens& doc, const Vocabulary& vocab,
                             TfidfVariant variant) {
  return weight_row(count_vectorize(doc, vocab), idf_weights(vocab, variant), variant);
}

DocTermMatrix tfidf_matrix(std::span<const Tokens> docs, const Vocabulary& vocab,
                           TfidfVariant variant) {
  const auto idf = idf_weights(vocab, variant);
  DocTermMatrix m;
  m.dim = vocab.size();
  m.rows.reserve(docs.size());
  for (const auto& d : docs) m.rows.push_back(weight_row(count_vectorize(d, vocab), idf, variant));
  return m;
}

const std::vector<double>* EmbeddingTable::find(const std::string& token) const {
  const auto it = vectors_.find(token);
  return it == vectors_.end() ? nullptr : &it->second;
}

EmbeddingTable EmbeddingTable::parse(std::string_view text, const std::string& source) {
  EmbeddingTable table;
  std::size_t line_no = 0;
  std::size_t pos = 0;
  while (pos < text.size()) {
    std::size_t end = text.find('\n', pos);
    if (end == std::string_view::npos) end = text.size();
    std::string_view line = text.substr(pos, end - pos);
    pos = end + 1;
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.remove_suffix(1);

    std::vector<std::string_view> fields;
    std::size_t i = 0;
    while (i < line.size()) {
      while (i < line.size() && (line[i] == ' ' || line[i] == '\t')) ++i;
      const std::size_t start = i;
      while (i < line.size() && line[i] != ' ' && line[i] != '\t') ++i;
      if (i > start) fields.push_back(line.substr(start, i - start));
    }
    if (fields.empty()) continue;
    const std::string where = source + " line " + std::to_string(line_no);
    if (fields.size() < 2) throw Error("embedding.format", where + ": no vector components");

    const std::size_t d = fields.size() - 1;
    if (table.dim_ == 0) {
      table.dim_ = d;
    } else if (d != table.dim_) {
      throw Error("embedding.dimension", where + ": expected " + std::to_string(table.dim_) +
                                             " components, found " + std::to_string(d));
    }
    std::vector<double> vec(d);
    for (std::size_t k = 0; k < d; ++k) {
      const auto f = fields[k + 1];
      const auto [ptr, ec] = std::from_chars(f.data(), f.data() + f.size(), vec[k]);
      if (ec != std::errc() || ptr != f.data() + f.size() || !std::isfinite(vec[k])) {
        throw Error("embedding.number", where + ": non-numeric component '" +
                                            std::string(f) + "'");
      }
    }
    std::string token = unicode::to_nfc(fields[0]);
    if (table.vectors_.contains(token)) {
      table.warnings_.push_back(where + ": duplicate token '" + token +
                                "' ignored (first occurrence wins)");
      continue;
    }
    table.vectors_.emplace(std::move(token), std::move(vec));
  }
  if (table.vectors_.empty()) throw Error("embedding.empty", source + ": empty embedding file");
  return table;
}

EmbeddingTable EmbeddingTable::load(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error("embedding.open", "cannot open embedding file " + path);
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse(buf.str(), path);
}

std::vector<double> embed_document(const Tokens& tokens, const EmbeddingTable& table) {
  std::vector<double> mean(table.dim(), 0.0);
  std::size_t found = 0;
  for (const auto& t : tokens) {
    const auto* v = table.find(t);
    if (v == nullptr) continue;
    for (std::size_t k = 0; k < mean.size(); ++k) mean[k] += (*v)[k];
    ++found;
  }
  if (found > 0) {
    for (auto& x : mean) x /= static_cast<double>(found);
  }
  return mean;
}

DocTermMatrix embedding_matrix(std::span<const Tokens> docs, const EmbeddingTable& table) {
  DocTermMatrix m;
  m.dim = table.dim();
  m.rows.reserve(docs.size());
  for (const auto& d : docs) {
    const auto dense = embed_document(d, table);
    m.rows.push_back(SparseVector::from_dense(dense));
  }
  return m;
}

}  // namespace bnsent::features
