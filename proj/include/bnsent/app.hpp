#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include <nlohmann/json.hpp>

#include "bnsent/corpus.hpp"
#include "bnsent/features.hpp"
#include "bnsent/models.hpp"
#include "bnsent/textprep.hpp"

// Orchestration behind the command-line tool: run configuration, fitted
// feature pipelines, model artifacts, and the ingest -> preprocess ->
// featurize -> train -> evaluate -> report commands.
namespace bnsent::app {

using nlohmann::json;

enum class FeatureKind { kCount, kTfidf, kEmbedding };

struct FeatureSetting {
  FeatureKind kind = FeatureKind::kTfidf;
  features::TfidfVariant variant = features::TfidfVariant::kPaperLiteral;
  features::NgramRange ngram{1, 1};
  std::uint64_t min_df = 1;
  std::string embedding_path;

  // count | tfidf-paper | tfidf-log | embedding
  std::string name() const;
  json to_json() const;
  // Applies a --features value, keeping n-gram range and min-df.
  void apply_name(const std::string& name);
};

struct PreprocessSetting {
  std::string stopwords_path;
  std::string suffixes_path;
  bool normalize = true;
  bool clean = true;
  bool remove_stopwords = true;
  bool stem = true;
  std::size_t min_stem_length = 2;
  textprep::CleaningRules rules;
};

struct ModelEntry {
  std::string id;  // file stem and report key; defaults to the kind name
  models::ModelSpec spec;
};

struct RunConfig {
  std::string corpus_path;
  corpus::ColumnMapping columns;
  double ratio = 0.8;
  std::uint64_t seed = 123;
  bool stratified = true;
  PreprocessSetting preprocess;
  FeatureSetting features;
  std::vector<ModelEntry> models;
  std::string output_dir = "bnsent-out";

  json to_json() const;
};

// Command-line flags that take precedence over the config file.
struct Overrides {
  std::optional<std::uint64_t> seed;
  std::optional<std::string> features;
  std::optional<features::NgramRange> ngram;
  std::optional<std::vector<std::string>> models;
  std::optional<std::string> output_dir;
  std::optional<std::string> corpus_path;
};

// Relative paths inside the config resolve against the config file's
// directory. Missing sections fall back to defaults: bundled stopword and
// suffix files, unigram paper-literal TF-IDF, 80/20 stratified split, seed
// 123, logistic regression only.
RunConfig parse_config(const json& j, const std::string& base_dir,
                       const Overrides& overrides = {});
RunConfig load_config(const std::string& path, const Overrides& overrides = {});

textprep::PipelineConfig build_pipeline(const PreprocessSetting& setting);

class FeaturePipeline {
 public:
  static FeaturePipeline fit(textprep::PipelineConfig prep, FeatureSetting setting,
                             std::span<const features::Tokens> train_docs);

  features::Tokens tokens(std::string_view raw) const;
  features::SparseVector transform(const features::Tokens& tokens) const;
  features::DocTermMatrix transform_all(std::span<const features::Tokens> docs) const;

  std::size_t dim() const;
  const std::string& fingerprint() const { return fingerprint_; }
  const FeatureSetting& setting() const { return setting_; }
  const textprep::PipelineConfig& preprocessing() const { return prep_; }
  const std::optional<features::Vocabulary>& vocabulary() const { return vocab_; }

  json to_json() const;
  // Rebuilds the pipeline and checks its fingerprint against
  // `expected_fingerprint` when non-empty.
  static FeaturePipeline from_json(const json& j, const std::string& expected_fingerprint = {});

 private:
  void compute_fingerprint();

  textprep::PipelineConfig prep_;
  FeatureSetting setting_;
  std::optional<features::Vocabulary> vocab_;
  std::optional<features::EmbeddingTable> table_;
  std::vector<double> idf_;
  std::string embedding_sha_;
  std::string fingerprint_;
};

struct ModelArtifact {
  std::string id;
  models::TrainedModel model;
  FeaturePipeline pipeline;
};

json artifact_to_json(const ModelArtifact& artifact);
// Refuses (Error "model.fingerprint") when the embedded pipeline does not
// hash to the stored fingerprint.
ModelArtifact artifact_from_json(const json& j);
void save_artifact(const std::string& path, const ModelArtifact& artifact);
ModelArtifact load_artifact(const std::string& path);

// Corpus, split, preprocessed tokens and fitted features for one config.
struct PreparedData {
  corpus::Corpus corpus;
  std::string corpus_sha256;
  corpus::DataSplit split;
  std::vector<features::Tokens> tokens;  // per corpus row
  FeaturePipeline pipeline;
  features::DocTermMatrix x_train;
  std::vector<corpus::Label> y_train;
  features::DocTermMatrix x_test;
  std::vector<corpus::Label> y_test;

  json split_json() const;
};

PreparedData prepare(const RunConfig& config);

struct ValidationIssue {
  std::string code;
  std::string message;
};

struct ValidationReport {
  std::vector<ValidationIssue> issues;
  std::optional<corpus::ClassDistribution> distribution;
  std::vector<std::string> warnings;

  bool valid() const { return issues.empty(); }
  json to_json() const;
};

ValidationReport validate(const RunConfig& config);
ValidationReport validate_config_file(const std::string& path, const Overrides& overrides = {});

struct PreprocessResult {
  std::size_t rows = 0;
  std::vector<std::size_t> empty_rows;  // 0-based corpus indices
};

// Writes `review,sentiment,empty` CSV of preprocessed texts.
PreprocessResult run_preprocess(const RunConfig& config, const std::string& out_path);

// `index,sentiment,partition` CSV.
std::string split_csv(const RunConfig& config);

struct TrainResult {
  json manifest;
  std::size_t trained = 0;
  std::vector<std::string> failures;
};

// Writes models/<id>.json, manifest.json, vocabulary.csv and timings.json
// under config.output_dir. A model whose training fails is recorded in the
// manifest and does not stop the others.
TrainResult run_train(const RunConfig& config);

// Writes report.json, report.md and per-model confusion, ROC, PR and
// prediction files under `report_dir`. Returns the report JSON.
json run_evaluate(const RunConfig& config, const std::string& models_dir,
                  const std::string& report_dir);

struct Prediction {
  corpus::Label label = corpus::Label::kNegative;
  double score = 0.0;
  features::Tokens tokens;
  bool degenerate = false;  // empty feature vector
};

std::vector<Prediction> predict(const ModelArtifact& artifact,
                                const std::vector<std::string>& texts);

std::string read_file(const std::string& path);
void write_file(const std::string& path, std::string_view content);

}  // namespace bnsent::app
