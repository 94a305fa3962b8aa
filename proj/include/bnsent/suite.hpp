#pragma once

#include <optional>
#include <span>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "bnsent/eval.hpp"
#include "bnsent/models.hpp"

// Multi-model comparison on a held-out set, in the shape of a per-model
// accuracy/precision/recall/F1 table.
namespace bnsent::eval {

struct NamedModel {
  std::string id;
  const models::TrainedModel* model = nullptr;
  std::string fingerprint;  // feature pipeline the model was trained with
};

struct SuiteRow {
  std::string id;
  models::ModelKind kind{};
  ConfusionMatrix cm;
  Metrics metrics;
  std::optional<Curve> roc;  // absent when the test labels hold one class
  std::optional<Curve> pr;   // absent when the test labels hold no positive
  std::vector<double> scores;
  std::vector<Label> predicted;
  nlohmann::json hyperparameters;
};

struct SuiteReport {
  std::vector<SuiteRow> rows;  // accuracy descending, ties in input order
  nlohmann::json context;      // feature setting, seed, split, ...
  std::vector<std::string> notes;
};

// Throws Error("eval.fingerprint") if a model's fingerprint differs from
// `feature_fingerprint`.
SuiteReport evaluate_suite(std::span<const NamedModel> models,
                           const models::DocTermMatrix& x_test,
                           std::span<const Label> y_test,
                           const std::string& feature_fingerprint,
                           nlohmann::json context = nlohmann::json::object());

// Note recorded in every report about the RBF-kernel SVC row that is not
// reproduced.
std::string rbf_exclusion_note();

nlohmann::json report_json(const SuiteReport& report);
std::string report_markdown(const nlohmann::json& report);

}  // namespace bnsent::eval
