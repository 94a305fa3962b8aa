#pragma once

// Brute-force reference implementations used to cross-check the library.
// They favour obviousness over speed and share no code with src/.

#include <algorithm>
#include <cmath>
#include <map>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "bnsent/corpus.hpp"
#include "bnsent/features.hpp"
#include "bnsent/random.hpp"

namespace bnsent::testing {

using Doc = std::vector<std::string>;
using Dense = std::vector<std::vector<double>>;

struct OracleVocab {
  std::vector<std::string> terms;  // sorted
  std::vector<double> df;
};

inline std::vector<std::string> oracle_ngrams(const Doc& doc, int lo, int hi) {
  std::vector<std::string> out;
  for (int n = lo; n <= hi; ++n) {
    for (std::size_t s = 0; s + n <= doc.size(); ++s) {
      std::string g;
      for (int k = 0; k < n; ++k) g += (k ? " " : "") + doc[s + k];
      out.push_back(g);
    }
  }
  return out;
}

inline OracleVocab oracle_vocab(const std::vector<Doc>& docs, int lo, int hi, double min_df) {
  std::set<std::string> all;
  for (const auto& d : docs) {
    for (const auto& g : oracle_ngrams(d, lo, hi)) all.insert(g);
  }
  OracleVocab v;
  for (const auto& t : all) {
    double df = 0;
    for (const auto& d : docs) {
      const auto g = oracle_ngrams(d, lo, hi);
      if (std::find(g.begin(), g.end(), t) != g.end()) df += 1;
    }
    if (df >= min_df) {
      v.terms.push_back(t);
      v.df.push_back(df);
    }
  }
  return v;
}

inline Dense oracle_counts(const std::vector<Doc>& docs, const OracleVocab& v, int lo, int hi) {
  Dense out;
  for (const auto& d : docs) {
    const auto g = oracle_ngrams(d, lo, hi);
    std::vector<double> row;
    for (const auto& t : v.terms) row.push_back(static_cast<double>(std::count(g.begin(), g.end(), t)));
    out.push_back(row);
  }
  return out;
}

// weight = tf * N / df
inline Dense oracle_tfidf_paper(const Dense& counts, const OracleVocab& v, double n_docs) {
  Dense out = counts;
  for (auto& row : out) {
    for (std::size_t j = 0; j < row.size(); ++j) row[j] = row[j] * n_docs / v.df[j];
  }
  return out;
}

// weight = tf * (1 + ln((1 + N) / (1 + df))), rows scaled to unit length
inline Dense oracle_tfidf_log(const Dense& counts, const OracleVocab& v, double n_docs) {
  Dense out = counts;
  for (auto& row : out) {
    double norm = 0;
    for (std::size_t j = 0; j < row.size(); ++j) {
      row[j] = row[j] * (1.0 + std::log((1.0 + n_docs) / (1.0 + v.df[j])));
      norm += row[j] * row[j];
    }
    norm = std::sqrt(norm);
    if (norm > 0) {
      for (auto& x : row) x /= norm;
    }
  }
  return out;
}

// Multinomial naive Bayes parameters straight from the closed form.
struct OracleNB {
  double prior[2];
  std::vector<double> likelihood[2];  // probabilities, not logs
};

inline OracleNB oracle_mnb(const Dense& x, const std::vector<corpus::Label>& y, double alpha) {
  OracleNB nb;
  const std::size_t v = x.empty() ? 0 : x[0].size();
  for (int c = 0; c < 2; ++c) {
    double docs = 0, total = 0;
    std::vector<double> counts(v, 0.0);
    for (std::size_t i = 0; i < x.size(); ++i) {
      if (corpus::to_int(y[i]) != c) continue;
      docs += 1;
      for (std::size_t j = 0; j < v; ++j) {
        counts[j] += x[i][j];
        total += x[i][j];
      }
    }
    nb.prior[c] = docs / static_cast<double>(x.size());
    for (std::size_t j = 0; j < v; ++j) {
      nb.likelihood[c].push_back((counts[j] + alpha) / (total + alpha * static_cast<double>(v)));
    }
  }
  return nb;
}

inline double oracle_cosine_distance(const std::vector<double>& a, const std::vector<double>& b) {
  double ab = 0, aa = 0, bb = 0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    ab += a[i] * b[i];
    aa += a[i] * a[i];
    bb += b[i] * b[i];
  }
  if (aa == 0 || bb == 0) return 1.0;
  return 1.0 - ab / (std::sqrt(aa) * std::sqrt(bb));
}

inline double oracle_euclidean(const std::vector<double>& a, const std::vector<double>& b) {
  double s = 0;
  for (std::size_t i = 0; i < a.size(); ++i) s += (a[i] - b[i]) * (a[i] - b[i]);
  return std::sqrt(s);
}

// Indices of the k nearest points (distance, then index).
inline std::vector<std::size_t> oracle_knn(const Dense& points, const std::vector<double>& q,
                                           std::size_t k, bool cosine) {
  std::vector<std::pair<double, std::size_t>> d;
  for (std::size_t i = 0; i < points.size(); ++i) {
    d.push_back({cosine ? oracle_cosine_distance(points[i], q) : oracle_euclidean(points[i], q), i});
  }
  std::sort(d.begin(), d.end());
  std::vector<std::size_t> out;
  for (std::size_t i = 0; i < k; ++i) out.push_back(d[i].second);
  return out;
}

inline features::DocTermMatrix to_matrix(const Dense& x, std::size_t dim) {
  features::DocTermMatrix m;
  m.dim = dim;
  for (const auto& row : x) m.rows.push_back(features::SparseVector::from_dense(row));
  return m;
}

inline double max_relative_error(const std::vector<double>& a, const std::vector<double>& b) {
  double worst = 0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    const double scale = std::max({std::abs(a[i]), std::abs(b[i]), 1e-12});
    worst = std::max(worst, std::abs(a[i] - b[i]) / scale);
  }
  return worst;
}

// Componentwise error scaled by the largest gradient entry, so that an exact
// zero against finite-difference round-off does not count as a 100% error.
inline double gradient_relative_error(const std::vector<double>& analytic,
                                      const std::vector<double>& numeric) {
  double scale = 1e-12, worst = 0;
  for (std::size_t i = 0; i < analytic.size(); ++i) {
    scale = std::max({scale, std::abs(analytic[i]), std::abs(numeric[i])});
  }
  for (std::size_t i = 0; i < analytic.size(); ++i) {
    worst = std::max(worst, std::abs(analytic[i] - numeric[i]) / scale);
  }
  return worst;
}

// Random small corpus over a fixed alphabet of Bengali-script words.
inline std::vector<Doc> random_docs(Rng& rng, std::size_t max_docs, std::size_t max_terms) {
  static const std::vector<std::string> alphabet = {
      "ক", "খ", "গ", "ঘ", "চ", "ছ", "জ", "ঝ", "ট", "ঠ", "ড", "ঢ",
      "ত", "থ", "দ", "ধ", "ন", "প", "ফ", "ব", "ভ", "ম", "য", "র",
  };
  const std::size_t n_terms = 1 + rng.uniform_index(max_terms);
  const std::size_t n_docs = 1 + rng.uniform_index(max_docs);
  std::vector<Doc> docs(n_docs);
  for (auto& d : docs) {
    const std::size_t len = (&d == &docs.front() ? 1 : 0) + rng.uniform_index(8);
    for (std::size_t i = 0; i < len; ++i) d.push_back(alphabet[rng.uniform_index(n_terms)]);
  }
  return docs;
}

}  // namespace bnsent::testing
