#include "bnsent/app.hpp"

#include <chrono>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <set>
#include <sstream>

#include <fmt/format.h>

#include "bnsent/csv.hpp"
#include "bnsent/error.hpp"
#include "bnsent/eval.hpp"
#include "bnsent/hashing.hpp"
#include "bnsent/persistence.hpp"
#include "bnsent/suite.hpp"
#include "bnsent/unicode.hpp"

namespace bnsent::app {

namespace fs = std::filesystem;

namespace {

constexpr const char* kModelFormat = "bnsent-model/1";
constexpr const char* kManifestFormat = "bnsent-manifest/1";

void log(const std::string& message) { std::cerr << "[bnsent] " << message << '\n'; }

std::string resolve(const std::string& base_dir, const std::string& path) {
  if (path.empty()) return path;
  const fs::path p(path);
  if (p.is_absolute() || base_dir.empty()) return p.lexically_normal().string();
  return (fs::path(base_dir) / p).lexically_normal().string();
}

std::string default_data_file(const char* name) {
  return (fs::path(BNSENT_DATA_DIR) / name).lexically_normal().string();
}

std::string index_hash(const std::vector<std::size_t>& indices) {
  std::string canon;
  for (std::size_t i = 0; i < indices.size(); ++i) {
    if (i) canon.push_back(',');
    canon += std::to_string(indices[i]);
  }
  return sha256_hex(canon);
}

json rules_to_json(const textprep::CleaningRules& r) {
  json ranges = json::array();
  for (const auto& k : r.keep_ranges) {
    ranges.push_back({static_cast<std::uint32_t>(k.first), static_cast<std::uint32_t>(k.last)});
  }
  return {{"keep_ranges", ranges},
          {"strip",
           {{"punctuation", r.strip_punctuation},
            {"symbols", r.strip_symbols},
            {"emoji", r.strip_emoji},
            {"latin", r.strip_latin},
            {"digits", r.strip_digits}}},
          {"keep_joiners", r.keep_joiners}};
}

textprep::CleaningRules rules_from_json(const json& j) {
  textprep::CleaningRules r;
  if (j.contains("keep_ranges")) {
    r.keep_ranges.clear();
    for (const auto& k : j.at("keep_ranges")) {
      const auto lo = k.at(0).get<std::uint32_t>();
      const auto hi = k.at(1).get<std::uint32_t>();
      if (lo > hi || hi > 0x10FFFF) throw Error("config.rules", "invalid keep range");
      r.keep_ranges.push_back({static_cast<char32_t>(lo), static_cast<char32_t>(hi)});
    }
  }
  if (j.contains("strip")) {
    const auto& s = j.at("strip");
    r.strip_punctuation = s.value("punctuation", r.strip_punctuation);
    r.strip_symbols = s.value("symbols", r.strip_symbols);
    r.strip_emoji = s.value("emoji", r.strip_emoji);
    r.strip_latin = s.value("latin", r.strip_latin);
    r.strip_digits = s.value("digits", r.strip_digits);
  }
  r.keep_joiners = j.value("keep_joiners", r.keep_joiners);
  return r;
}

json preprocess_to_json(const textprep::PipelineConfig& p) {
  return {{"normalize", p.normalize},
          {"clean", p.clean},
          {"remove_stopwords", p.remove_stopwords},
          {"stem", p.stem},
          {"rules", rules_to_json(p.rules)},
          {"stopwords", p.stopwords.sorted()},
          {"suffixes", p.stemmer.suffixes},
          {"min_stem_length", p.stemmer.min_stem_length}};
}

textprep::PipelineConfig preprocess_from_json(const json& j) {
  textprep::PipelineConfig p;
  p.normalize = j.at("normalize").get<bool>();
  p.clean = j.at("clean").get<bool>();
  p.remove_stopwords = j.at("remove_stopwords").get<bool>();
  p.stem = j.at("stem").get<bool>();
  p.rules = rules_from_json(j.at("rules"));
  p.stopwords = textprep::make_stopwords(j.at("stopwords").get<std::vector<std::string>>(),
                                         "<model>");
  p.stemmer = textprep::make_stem_rules(j.at("suffixes").get<std::vector<std::string>>(),
                                        j.at("min_stem_length").get<std::size_t>(), "<model>");
  return p;
}

FeatureSetting feature_setting_from_json(const json& j, const std::string& base_dir) {
  FeatureSetting s;
  if (j.is_string()) {
    s.apply_name(j.get<std::string>());
    return s;
  }
  const std::string kind = j.value("kind", std::string("tfidf"));
  if (kind == "count") s.kind = FeatureKind::kCount;
  else if (kind == "tfidf") s.kind = FeatureKind::kTfidf;
  else if (kind == "embedding") s.kind = FeatureKind::kEmbedding;
  else s.apply_name(kind);
  if (j.contains("variant")) {
    s.variant = features::tfidf_variant_from_string(j.at("variant").get<std::string>());
  }
  if (j.contains("ngram")) {
    s.ngram = {j.at("ngram").at(0).get<int>(), j.at("ngram").at(1).get<int>()};
  }
  s.min_df = j.value("min_df", s.min_df);
  if (j.contains("embedding") && !j.at("embedding").is_null()) {
    s.embedding_path = resolve(base_dir, j.at("embedding").get<std::string>());
  }
  return s;
}

}  // namespace

// ---------------------------------------------------------------------------

std::string FeatureSetting::name() const {
  switch (kind) {
    case FeatureKind::kCount:
      return "count";
    case FeatureKind::kEmbedding:
      return "embedding";
    case FeatureKind::kTfidf:
      break;
  }
  return variant == features::TfidfVariant::kPaperLiteral ? "tfidf-paper" : "tfidf-log";
}

void FeatureSetting::apply_name(const std::string& n) {
  if (n == "count") {
    kind = FeatureKind::kCount;
  } else if (n == "tfidf-paper" || n == "tfidf") {
    kind = FeatureKind::kTfidf;
    variant = features::TfidfVariant::kPaperLiteral;
  } else if (n == "tfidf-log") {
    kind = FeatureKind::kTfidf;
    variant = features::TfidfVariant::kSmoothedLog;
  } else if (n == "embedding") {
    kind = FeatureKind::kEmbedding;
  } else {
    throw Error("config.features", "unknown feature setting '" + n + "'");
  }
}

json FeatureSetting::to_json() const {
  json j = {{"name", name()},
            {"ngram", {ngram.lo, ngram.hi}},
            {"min_df", min_df}};
  if (kind == FeatureKind::kTfidf) j["variant"] = features::to_string(variant);
  if (kind == FeatureKind::kEmbedding) j["embedding"] = embedding_path;
  return j;
}

json RunConfig::to_json() const {
  json model_list = json::array();
  for (const auto& m : models) {
    model_list.push_back({{"id", m.id},
                          {"kind", models::to_string(m.spec.kind)},
                          {"hyperparameters", persistence::spec_to_json(m.spec)}});
  }
  return {{"corpus",
           {{"path", corpus_path},
            {"review_column", columns.review},
            {"sentiment_column", columns.sentiment}}},
          {"seed", seed},
          {"split", {{"ratio", ratio}, {"stratified", stratified}}},
          {"preprocess",
           {{"stopwords", preprocess.stopwords_path},
            {"suffixes", preprocess.suffixes_path},
            {"normalize", preprocess.normalize},
            {"clean", preprocess.clean},
            {"remove_stopwords", preprocess.remove_stopwords},
            {"stem", preprocess.stem},
            {"min_stem_length", preprocess.min_stem_length},
            {"rules", rules_to_json(preprocess.rules)}}},
          {"features", features.to_json()},
          {"models", model_list},
          {"output_dir", output_dir}};
}

RunConfig parse_config(const json& j, const std::string& base_dir, const Overrides& overrides) {
  RunConfig cfg;
  try {
    if (j.contains("corpus")) {
      const auto& c = j.at("corpus");
      if (c.is_string()) {
        cfg.corpus_path = resolve(base_dir, c.get<std::string>());
      } else {
        cfg.corpus_path = resolve(base_dir, c.at("path").get<std::string>());
        cfg.columns.review = c.value("review_column", cfg.columns.review);
        cfg.columns.sentiment = c.value("sentiment_column", cfg.columns.sentiment);
      }
    }
    cfg.seed = j.value("seed", cfg.seed);
    if (j.contains("split")) {
      const auto& s = j.at("split");
      cfg.ratio = s.value("ratio", cfg.ratio);
      cfg.stratified = s.value("stratified", cfg.stratified);
    }
    auto& pre = cfg.preprocess;
    pre.stopwords_path = default_data_file("stopwords_bn.txt");
    pre.suffixes_path = default_data_file("suffixes_bn.txt");
    if (j.contains("preprocess")) {
      const auto& p = j.at("preprocess");
      if (p.contains("stopwords")) pre.stopwords_path = resolve(base_dir, p.at("stopwords").get<std::string>());
      if (p.contains("suffixes")) pre.suffixes_path = resolve(base_dir, p.at("suffixes").get<std::string>());
      pre.normalize = p.value("normalize", pre.normalize);
      pre.clean = p.value("clean", pre.clean);
      pre.remove_stopwords = p.value("remove_stopwords", pre.remove_stopwords);
      pre.stem = p.value("stem", pre.stem);
      pre.min_stem_length = p.value("min_stem_length", pre.min_stem_length);
      if (p.contains("rules")) pre.rules = rules_from_json(p.at("rules"));
    }
    if (j.contains("features")) cfg.features = feature_setting_from_json(j.at("features"), base_dir);
    if (j.contains("output_dir")) cfg.output_dir = resolve(base_dir, j.at("output_dir").get<std::string>());

    if (overrides.seed) cfg.seed = *overrides.seed;
    if (overrides.features) cfg.features.apply_name(*overrides.features);
    if (overrides.ngram) cfg.features.ngram = *overrides.ngram;
    if (overrides.output_dir) cfg.output_dir = *overrides.output_dir;
    if (overrides.corpus_path) cfg.corpus_path = *overrides.corpus_path;

    json model_list = j.value("models", json::array({"logreg"}));
    if (overrides.models) {
      model_list = json::array();
      for (const auto& m : *overrides.models) model_list.push_back(m);
    }
    for (const auto& m : model_list) {
      const std::string kind_name = m.is_string() ? m.get<std::string>() : m.at("name").get<std::string>();
      const auto kind = models::model_kind_from_string(kind_name);
      ModelEntry entry;
      entry.id = m.is_object() ? m.value("id", kind_name) : kind_name;
      entry.spec = persistence::spec_from_json(kind, m.is_object() ? m : json::object(), cfg.seed);
      if (overrides.seed) {
        entry.spec.train.seed = entry.spec.tree.seed = entry.spec.forest.seed = *overrides.seed;
      }
      cfg.models.push_back(std::move(entry));
    }
  } catch (const json::exception& e) {
    throw Error("config.parse", std::string("malformed config: ") + e.what());
  }
  return cfg;
}

RunConfig load_config(const std::string& path, const Overrides& overrides) {
  json j;
  try {
    j = json::parse(read_file(path));
  } catch (const json::exception& e) {
    throw Error("config.parse", path + ": " + e.what());
  }
  const auto base = fs::path(path).parent_path().string();
  return parse_config(j, base, overrides);
}

textprep::PipelineConfig build_pipeline(const PreprocessSetting& s) {
  textprep::PipelineConfig p;
  p.rules = s.rules;
  p.normalize = s.normalize;
  p.clean = s.clean;
  p.remove_stopwords = s.remove_stopwords;
  p.stem = s.stem;
  if (s.remove_stopwords) p.stopwords = textprep::load_stopwords(s.stopwords_path);
  if (s.stem) p.stemmer = textprep::load_suffixes(s.suffixes_path, s.min_stem_length);
  else p.stemmer.min_stem_length = s.min_stem_length;
  return p;
}

// ---------------------------------------------------------------------------

FeaturePipeline FeaturePipeline::fit(textprep::PipelineConfig prep, FeatureSetting setting,
                                     std::span<const features::Tokens> train_docs) {
  FeaturePipeline fp;
  fp.prep_ = std::move(prep);
  fp.setting_ = std::move(setting);
  if (fp.setting_.kind == FeatureKind::kEmbedding) {
    if (fp.setting_.embedding_path.empty()) {
      throw Error("config.embedding", "embedding features need an embedding file");
    }
    fp.table_ = features::EmbeddingTable::load(fp.setting_.embedding_path);
    for (const auto& w : fp.table_->warnings()) log(w);
    fp.embedding_sha_ = sha256_file(fp.setting_.embedding_path);
  } else {
    fp.vocab_ = features::fit_vocabulary(train_docs, fp.setting_.ngram, fp.setting_.min_df);
    if (fp.setting_.kind == FeatureKind::kTfidf) {
      fp.idf_ = features::idf_weights(*fp.vocab_, fp.setting_.variant);
    }
  }
  fp.compute_fingerprint();
  return fp;
}

features::Tokens FeaturePipeline::tokens(std::string_view raw) const {
  return textprep::preprocess(raw, prep_).tokens;
}

features::SparseVector FeaturePipeline::transform(const features::Tokens& tokens) const {
  switch (setting_.kind) {
    case FeatureKind::kCount:
      return features::count_vectorize(tokens, *vocab_);
    case FeatureKind::kEmbedding:
      return features::SparseVector::from_dense(features::embed_document(tokens, *table_));
    case FeatureKind::kTfidf:
      break;
  }
  auto v = features::count_vectorize(tokens, *vocab_);
  for (auto& e : v.entries) e.value *= idf_[e.index];
  if (setting_.variant == features::TfidfVariant::kSmoothedLog) {
    const double norm = std::sqrt(v.squared_norm());
    if (norm > 0.0) {
      for (auto& e : v.entries) e.value /= norm;
    }
  }
  return v;
}

features::DocTermMatrix FeaturePipeline::transform_all(
    std::span<const features::Tokens> docs) const {
  features::DocTermMatrix m;
  m.dim = dim();
  m.rows.reserve(docs.size());
  for (const auto& d : docs) m.rows.push_back(transform(d));
  return m;
}

std::size_t FeaturePipeline::dim() const { return vocab_ ? vocab_->size() : table_->dim(); }

json FeaturePipeline::to_json() const {
  json j = {{"preprocess", preprocess_to_json(prep_)}, {"setting", setting_.to_json()}};
  if (vocab_) {
    j["vocabulary"] = {{"terms", vocab_->terms()},
                       {"df", vocab_->document_frequencies()},
                       {"num_docs", vocab_->num_docs()},
                       {"ngram", {vocab_->range().lo, vocab_->range().hi}},
                       {"min_df", vocab_->min_df()}};
  } else {
    j["embedding"] = {{"path", setting_.embedding_path},
                      {"sha256", embedding_sha_},
                      {"dim", table_->dim()}};
  }
  return j;
}

void FeaturePipeline::compute_fingerprint() {
  json canon = {{"preprocess", preprocess_to_json(prep_)}, {"setting", setting_.name()}};
  if (vocab_) {
    canon["vocabulary"] = vocab_->fingerprint();
  } else {
    canon["embedding"] = {{"sha256", embedding_sha_}, {"dim", table_->dim()}};
  }
  fingerprint_ = sha256_hex(canon.dump());
}

FeaturePipeline FeaturePipeline::from_json(const json& j, const std::string& expected) {
  FeaturePipeline fp;
  try {
    fp.prep_ = preprocess_from_json(j.at("preprocess"));
    const auto& s = j.at("setting");
    fp.setting_.apply_name(s.at("name").get<std::string>());
    fp.setting_.ngram = {s.at("ngram").at(0).get<int>(), s.at("ngram").at(1).get<int>()};
    fp.setting_.min_df = s.at("min_df").get<std::uint64_t>();
    if (j.contains("vocabulary")) {
      const auto& v = j.at("vocabulary");
      fp.vocab_.emplace(v.at("terms").get<std::vector<std::string>>(),
                        v.at("df").get<std::vector<std::uint64_t>>(),
                        v.at("num_docs").get<std::uint64_t>(),
                        features::NgramRange{v.at("ngram").at(0).get<int>(),
                                             v.at("ngram").at(1).get<int>()},
                        v.at("min_df").get<std::uint64_t>());
      if (fp.setting_.kind == FeatureKind::kTfidf) {
        fp.idf_ = features::idf_weights(*fp.vocab_, fp.setting_.variant);
      }
    } else {
      const auto& e = j.at("embedding");
      fp.setting_.embedding_path = e.at("path").get<std::string>();
      fp.embedding_sha_ = e.at("sha256").get<std::string>();
      if (sha256_file(fp.setting_.embedding_path) != fp.embedding_sha_) {
        throw Error("model.fingerprint", "embedding file " + fp.setting_.embedding_path +
                                             " changed since training");
      }
      fp.table_ = features::EmbeddingTable::load(fp.setting_.embedding_path);
    }
  } catch (const json::exception& e) {
    throw Error("model.corrupt", std::string("malformed feature pipeline: ") + e.what());
  }
  fp.compute_fingerprint();
  if (!expected.empty() && expected != fp.fingerprint_) {
    throw Error("model.fingerprint",
                "feature fingerprint mismatch: file records " + expected +
                    " but its vocabulary and preprocessing hash to " + fp.fingerprint_);
  }
  return fp;
}

// ---------------------------------------------------------------------------

json artifact_to_json(const ModelArtifact& a) {
  return {{"format", kModelFormat},
          {"id", a.id},
          {"kind", models::to_string(a.model.spec.kind)},
          {"algorithm", models::display_name(a.model.spec.kind)},
          {"hyperparameters", persistence::spec_to_json(a.model.spec)},
          {"dim", a.model.dim},
          {"fingerprint", a.pipeline.fingerprint()},
          {"features", a.pipeline.to_json()},
          {"params", persistence::params_to_json(a.model)}};
}

ModelArtifact artifact_from_json(const json& j) {
  if (j.value("format", std::string()) != kModelFormat) {
    throw Error("model.format", "not a bnsent model file");
  }
  ModelArtifact a;
  try {
    a.id = j.at("id").get<std::string>();
    a.pipeline = FeaturePipeline::from_json(j.at("features"), j.at("fingerprint").get<std::string>());
    a.model = persistence::model_from_json(j, j.at("params"));
  } catch (const json::exception& e) {
    throw Error("model.corrupt", std::string("malformed model file: ") + e.what());
  }
  if (a.model.dim != a.pipeline.dim()) {
    throw Error("model.corrupt", "model dimension differs from its feature pipeline");
  }
  return a;
}

void save_artifact(const std::string& path, const ModelArtifact& artifact) {
  write_file(path, artifact_to_json(artifact).dump(1) + "\n");
}

ModelArtifact load_artifact(const std::string& path) {
  json j;
  try {
    j = json::parse(read_file(path));
  } catch (const json::exception& e) {
    throw Error("model.corrupt", path + ": " + e.what());
  }
  return artifact_from_json(j);
}

// ---------------------------------------------------------------------------

json PreparedData::split_json() const {
  return {{"ratio", split.ratio},
          {"seed", split.seed},
          {"stratified", split.stratified},
          {"n_train", split.train.size()},
          {"n_test", split.test.size()},
          {"train_sha256", index_hash(split.train)},
          {"test_sha256", index_hash(split.test)}};
}

PreparedData prepare(const RunConfig& config) {
  PreparedData d;
  d.corpus = corpus::load_corpus(config.corpus_path, config.columns);
  for (const auto& w : d.corpus.warnings) log("warning: " + w);
  d.corpus_sha256 = sha256_file(config.corpus_path);
  d.split = corpus::split(d.corpus, config.ratio, config.seed, config.stratified);

  const auto prep = build_pipeline(config.preprocess);
  d.tokens.reserve(d.corpus.size());
  for (const auto& r : d.corpus.reviews) d.tokens.push_back(textprep::preprocess(r.text, prep).tokens);

  std::vector<features::Tokens> train_docs, test_docs;
  for (const auto i : d.split.train) {
    train_docs.push_back(d.tokens[i]);
    d.y_train.push_back(d.corpus.reviews[i].label);
  }
  for (const auto i : d.split.test) {
    test_docs.push_back(d.tokens[i]);
    d.y_test.push_back(d.corpus.reviews[i].label);
  }
  d.pipeline = FeaturePipeline::fit(prep, config.features, train_docs);
  d.x_train = d.pipeline.transform_all(train_docs);
  d.x_test = d.pipeline.transform_all(test_docs);
  return d;
}

// ---------------------------------------------------------------------------

json ValidationReport::to_json() const {
  json issues_json = json::array();
  for (const auto& i : issues) issues_json.push_back({{"code", i.code}, {"message", i.message}});
  json j = {{"valid", valid()}, {"issues", issues_json}, {"warnings", warnings}};
  if (distribution) {
    j["distribution"] = {{"positive", distribution->positive},
                         {"negative", distribution->negative},
                         {"total", distribution->total}};
  }
  return j;
}

ValidationReport validate(const RunConfig& config) {
  ValidationReport report;
  auto issue = [&](std::string code, std::string message) {
    report.issues.push_back({std::move(code), std::move(message)});
  };
  auto require_file = [&](const std::string& what, const std::string& path) {
    if (path.empty()) {
      issue("config.missing_path", what + " path is not set");
      return false;
    }
    if (!fs::is_regular_file(path)) {
      issue("config.missing_path", what + " not found: " + path);
      return false;
    }
    return true;
  };

  const bool have_corpus = require_file("corpus", config.corpus_path);
  if (config.preprocess.remove_stopwords) require_file("stopword file", config.preprocess.stopwords_path);
  if (config.preprocess.stem) require_file("suffix file", config.preprocess.suffixes_path);
  if (config.features.kind == FeatureKind::kEmbedding) {
    require_file("embedding file", config.features.embedding_path);
  }
  if (!(config.ratio > 0.0 && config.ratio < 1.0)) {
    issue("config.ratio", "split ratio must lie strictly between 0 and 1");
  }
  if (config.features.ngram.lo < 1 || config.features.ngram.hi < config.features.ngram.lo) {
    issue("config.ngram", "n-gram range needs 1 <= lo <= hi");
  }
  if (config.models.empty()) issue("config.no_models", "model list is empty");
  std::set<std::string> ids;
  for (const auto& m : config.models) {
    if (!ids.insert(m.id).second) issue("config.duplicate_model", "duplicate model id '" + m.id + "'");
    try {
      m.spec.train.validate();
    } catch (const Error& e) {
      issue(e.code(), m.id + ": " + e.what());
    }
  }

  if (have_corpus) {
    try {
      const auto c = corpus::load_corpus(config.corpus_path, config.columns);
      report.warnings = c.warnings;
      report.distribution = corpus::class_distribution(c);
      if (report.distribution->positive == 0 || report.distribution->negative == 0) {
        issue("corpus.single_class", "single-class corpus: both labels are required for training");
      }
    } catch (const Error& e) {
      issue(e.code(), e.what());
    }
  }
  return report;
}

ValidationReport validate_config_file(const std::string& path, const Overrides& overrides) {
  try {
    return validate(load_config(path, overrides));
  } catch (const Error& e) {
    ValidationReport report;
    report.issues.push_back({e.code(), e.what()});
    return report;
  }
}

PreprocessResult run_preprocess(const RunConfig& config, const std::string& out_path) {
  const auto c = corpus::load_corpus(config.corpus_path, config.columns);
  const auto prep = build_pipeline(config.preprocess);
  PreprocessResult result;
  std::string out = "review,sentiment,empty\n";
  for (std::size_t i = 0; i < c.size(); ++i) {
    const auto p = textprep::preprocess(c.reviews[i].text, prep);
    const bool empty = p.text.empty();
    if (empty) result.empty_rows.push_back(i);
    out += csv::join_row({p.text, std::to_string(corpus::to_int(c.reviews[i].label)),
                          empty ? "1" : "0"});
    out += '\n';
  }
  result.rows = c.size();
  write_file(out_path, out);
  return result;
}

std::string split_csv(const RunConfig& config) {
  const auto c = corpus::load_corpus(config.corpus_path, config.columns);
  const auto s = corpus::split(c, config.ratio, config.seed, config.stratified);
  std::vector<const char*> part(c.size(), "train");
  for (const auto i : s.test) part[i] = "test";
  std::string out = "index,sentiment,partition\n";
  for (std::size_t i = 0; i < c.size(); ++i) {
    out += fmt::format("{},{},{}\n", i, corpus::to_int(c.reviews[i].label), part[i]);
  }
  return out;
}

TrainResult run_train(const RunConfig& config) {
  if (config.models.empty()) throw Error("config.no_models", "model list is empty");
  const auto data = prepare(config);
  const fs::path out_dir(config.output_dir);
  fs::create_directories(out_dir / "models");
  if (data.pipeline.vocabulary()) {
    write_file((out_dir / "vocabulary.csv").string(), data.pipeline.vocabulary()->to_csv());
  }

  TrainResult result;
  json model_entries = json::array();
  json timings = json::object();
  for (const auto& entry : config.models) {
    json record = {{"id", entry.id},
                   {"kind", models::to_string(entry.spec.kind)},
                   {"hyperparameters", persistence::spec_to_json(entry.spec)}};
    const auto start = std::chrono::steady_clock::now();
    try {
      ModelArtifact artifact{entry.id, models::train_model(entry.spec, data.x_train, data.y_train),
                             data.pipeline};
      const std::string rel = "models/" + entry.id + ".json";
      save_artifact((out_dir / rel).string(), artifact);
      record["status"] = "ok";
      record["file"] = rel;
      record["sha256"] = sha256_file((out_dir / rel).string());
      ++result.trained;
      log("trained " + entry.id);
    } catch (const Error& e) {
      record["status"] = "error";
      record["error"] = {{"code", e.code()}, {"message", e.what()}};
      result.failures.push_back(entry.id + ": " + e.what());
      log("training " + entry.id + " failed: " + e.what());
    }
    const std::chrono::duration<double> elapsed = std::chrono::steady_clock::now() - start;
    timings[entry.id] = elapsed.count();
    model_entries.push_back(std::move(record));
  }

  const auto dist = corpus::class_distribution(data.corpus);
  result.manifest = {
      {"format", kManifestFormat},
      {"config", config.to_json()},
      {"corpus",
       {{"path", config.corpus_path},
        {"sha256", data.corpus_sha256},
        {"rows", dist.total},
        {"positive", dist.positive},
        {"negative", dist.negative}}},
      {"split", data.split_json()},
      {"features",
       {{"setting", config.features.to_json()},
        {"fingerprint", data.pipeline.fingerprint()},
        {"dim", data.pipeline.dim()}}},
      {"models", model_entries},
  };
  write_file((out_dir / "manifest.json").string(), result.manifest.dump(2) + "\n");
  // Wall-clock times live outside the manifest so that the manifest stays
  // byte-identical across reruns.
  write_file((out_dir / "timings.json").string(), timings.dump(2) + "\n");
  return result;
}

json run_evaluate(const RunConfig& config, const std::string& models_dir,
                  const std::string& report_dir) {
  const fs::path dir(models_dir);
  const fs::path manifest_path = dir / "manifest.json";
  if (!fs::is_regular_file(manifest_path)) {
    throw Error("eval.missing_manifest", "no manifest.json in " + models_dir);
  }
  json manifest;
  try {
    manifest = json::parse(read_file(manifest_path.string()));
  } catch (const json::exception& e) {
    throw Error("eval.manifest", std::string("malformed manifest: ") + e.what());
  }

  const auto data = prepare(config);
  const json split = data.split_json();
  if (manifest.at("split").at("train_sha256") != split.at("train_sha256") ||
      manifest.at("split").at("test_sha256") != split.at("test_sha256")) {
    throw Error("eval.split_mismatch", "the configured split differs from the one used in training");
  }

  std::vector<ModelArtifact> artifacts;
  json failed = json::array();
  for (const auto& m : manifest.at("models")) {
    if (m.at("status") != "ok") {
      failed.push_back({{"model", m.at("id")}, {"error", m.at("error").at("message")}});
      continue;
    }
    const fs::path file = dir / m.at("file").get<std::string>();
    if (!fs::is_regular_file(file)) {
      throw Error("eval.missing_model", "model file missing: " + file.string());
    }
    artifacts.push_back(load_artifact(file.string()));
  }
  if (artifacts.empty()) throw Error("eval.no_models", "no trained models to evaluate");

  std::vector<eval::NamedModel> named;
  for (const auto& a : artifacts) named.push_back({a.id, &a.model, a.pipeline.fingerprint()});
  const json context = {{"features", config.features.to_json()},
                        {"seed", config.seed},
                        {"split", split},
                        {"fingerprint", data.pipeline.fingerprint()},
                        {"corpus_sha256", data.corpus_sha256}};
  const auto report = eval::evaluate_suite(named, data.x_test, data.y_test,
                                           data.pipeline.fingerprint(), context);

  const fs::path out(report_dir);
  fs::create_directories(out);
  json doc = eval::report_json(report);
  if (!failed.empty()) doc["failed"] = failed;
  for (const auto& row : report.rows) {
    write_file((out / ("confusion_" + row.id + ".json")).string(),
               json({{"labels", {0, 1}},
                     {"matrix", {{row.cm.tn, row.cm.fp}, {row.cm.fn, row.cm.tp}}},
                     {"tp", row.cm.tp},
                     {"fp", row.cm.fp},
                     {"tn", row.cm.tn},
                     {"fn", row.cm.fn}})
                       .dump(2) + "\n");
    if (row.roc) write_file((out / ("roc_" + row.id + ".csv")).string(), eval::curve_csv(*row.roc));
    if (row.pr) write_file((out / ("pr_" + row.id + ".csv")).string(), eval::curve_csv(*row.pr));
    std::string preds = "index,sentiment,score,predicted\n";
    for (std::size_t i = 0; i < row.scores.size(); ++i) {
      preds += fmt::format("{},{},{},{}\n", data.split.test[i], corpus::to_int(data.y_test[i]),
                           row.scores[i], corpus::to_int(row.predicted[i]));
    }
    write_file((out / ("predictions_" + row.id + ".csv")).string(), preds);
  }
  write_file((out / "report.json").string(), doc.dump(2) + "\n");
  write_file((out / "report.md").string(), eval::report_markdown(doc));
  return doc;
}

std::vector<Prediction> predict(const ModelArtifact& artifact,
                                const std::vector<std::string>& texts) {
  if (texts.empty()) throw Error("predict.empty", "no input texts");
  std::vector<Prediction> out;
  out.reserve(texts.size());
  for (const auto& t : texts) {
    Prediction p;
    p.tokens = artifact.pipeline.tokens(t);
    const auto x = artifact.pipeline.transform(p.tokens);
    p.degenerate = x.entries.empty();
    p.score = artifact.model.decision_score(x);
    p.label = artifact.model.label_for_score(p.score);
    out.push_back(std::move(p));
  }
  return out;
}

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error("io.open", "cannot open " + path);
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

void write_file(const std::string& path, std::string_view content) {
  const fs::path p(path);
  if (p.has_parent_path()) fs::create_directories(p.parent_path());
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw Error("io.write", "cannot write " + path);
  out.write(content.data(), static_cast<std::streamsize>(content.size()));
  if (!out) throw Error("io.write", "failed writing " + path);
}

}  // namespace bnsent::app
