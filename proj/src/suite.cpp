#include "bnsent/suite.hpp"

#include <algorithm>

#include <fmt/format.h>

#include "bnsent/error.hpp"
#include "bnsent/persistence.hpp"

namespace bnsent::eval {

using nlohmann::json;

std::string rbf_exclusion_note() {
  return "RBF SupportVectorClassification is not reproduced: no kernel width, "
         "regularization strength or solver is available for it.";
}

SuiteReport evaluate_suite(std::span<const NamedModel> named,
                           const models::DocTermMatrix& x_test,
                           std::span<const Label> y_test,
                           const std::string& feature_fingerprint, json context) {
  if (x_test.rows.size() != y_test.size()) {
    throw Error("eval.length", "test rows and labels differ in length");
  }
  SuiteReport report;
  report.context = std::move(context);
  report.notes.push_back(rbf_exclusion_note());
  const auto positives = std::count(y_test.begin(), y_test.end(), Label::kPositive);
  const bool both_classes = positives > 0 && positives < static_cast<std::ptrdiff_t>(y_test.size());

  for (const auto& nm : named) {
    if (nm.fingerprint != feature_fingerprint) {
      throw Error("eval.fingerprint", "model '" + nm.id + "' was trained on features " +
                                          nm.fingerprint + " but evaluation uses " +
                                          feature_fingerprint);
    }
    SuiteRow row;
    row.id = nm.id;
    row.kind = nm.model->spec.kind;
    row.hyperparameters = persistence::spec_to_json(nm.model->spec);
    row.scores.reserve(y_test.size());
    for (const auto& x : x_test.rows) {
      const double s = nm.model->decision_score(x);
      row.scores.push_back(s);
      row.predicted.push_back(nm.model->label_for_score(s));
    }
    row.cm = confusion(y_test, row.predicted);
    row.metrics = metrics(row.cm);
    if (both_classes) row.roc = roc_curve(row.scores, y_test);
    if (positives > 0) row.pr = pr_curve(row.scores, y_test);
    report.rows.push_back(std::move(row));
  }
  if (!both_classes) report.notes.push_back("test labels hold a single class; ROC curves omitted");
  std::stable_sort(report.rows.begin(), report.rows.end(),
                   [](const SuiteRow& a, const SuiteRow& b) {
                     return a.metrics.accuracy > b.metrics.accuracy;
                   });
  return report;
}

json report_json(const SuiteReport& report) {
  json rows = json::array();
  for (const auto& r : report.rows) {
    json row = {
        {"model", r.id},
        {"kind", models::to_string(r.kind)},
        {"algorithm", models::display_name(r.kind)},
        {"accuracy", r.metrics.accuracy},
        {"precision", r.metrics.precision},
        {"recall", r.metrics.recall},
        {"f1", r.metrics.f1},
        {"percent",
         {{"accuracy", percent(r.metrics.accuracy)},
          {"precision", percent(r.metrics.precision)},
          {"recall", percent(r.metrics.recall)},
          {"f1", percent(r.metrics.f1)}}},
        {"degenerate", r.metrics.degenerate},
        {"confusion", {{"tp", r.cm.tp}, {"fp", r.cm.fp}, {"tn", r.cm.tn}, {"fn", r.cm.fn}}},
        {"hyperparameters", r.hyperparameters},
        {"confusion_file", "confusion_" + r.id + ".json"},
        {"predictions_file", "predictions_" + r.id + ".csv"},
    };
    row["roc_auc"] = r.roc ? json(r.roc->area) : json(nullptr);
    row["roc_file"] = r.roc ? json("roc_" + r.id + ".csv") : json(nullptr);
    row["pr_average_precision"] = r.pr ? json(r.pr->area) : json(nullptr);
    row["pr_file"] = r.pr ? json("pr_" + r.id + ".csv") : json(nullptr);
    rows.push_back(std::move(row));
  }
  return {{"format", "bnsent-report/1"},
          {"context", report.context},
          {"rows", rows},
          {"notes", report.notes}};
}

std::string report_markdown(const json& report) {
  std::string out = "# Model evaluation\n\n";
  const auto& ctx = report.value("context", json::object());
  if (ctx.contains("features")) out += fmt::format("Features: `{}`\n", ctx["features"].dump());
  if (ctx.contains("seed")) out += fmt::format("Seed: {}\n", ctx["seed"].dump());
  if (ctx.contains("split")) {
    const auto& s = ctx["split"];
    out += fmt::format("Split: {} train / {} test (ratio {}, stratified {})\n",
                       s.value("n_train", 0), s.value("n_test", 0), s.value("ratio", 0.0),
                       s.value("stratified", true));
  }
  out += "\n| No. | Algorithm | Accuracy | Precision | Recall | F1-Score | ROC AUC |\n";
  out += "|---:|---|---:|---:|---:|---:|---:|\n";
  int no = 1;
  for (const auto& r : report.at("rows")) {
    const auto& p = r.at("percent");
    const std::string auc =
        r.at("roc_auc").is_null() ? "n/a" : fmt::format("{:.4f}", r.at("roc_auc").get<double>());
    out += fmt::format("| {} | {} | {:.2f} | {:.2f} | {:.2f} | {:.2f} | {} |\n", no++,
                       r.at("algorithm").get<std::string>(), p.at("accuracy").get<double>(),
                       p.at("precision").get<double>(), p.at("recall").get<double>(),
                       p.at("f1").get<double>(), auc);
  }
  out += "\n";
  for (const auto& r : report.at("rows")) {
    const auto& c = r.at("confusion");
    out += fmt::format("- {}: TP={} FP={} TN={} FN={}{}\n", r.at("model").get<std::string>(),
                       c.at("tp").get<std::size_t>(), c.at("fp").get<std::size_t>(),
                       c.at("tn").get<std::size_t>(), c.at("fn").get<std::size_t>(),
                       r.at("degenerate").get<bool>() ? " (degenerate ratios reported as 0)" : "");
  }
  if (report.contains("failed")) {
    for (const auto& f : report.at("failed")) {
      out += fmt::format("- {}: not evaluated ({})\n", f.at("model").get<std::string>(),
                         f.at("error").get<std::string>());
    }
  }
  if (report.contains("notes") && !report.at("notes").empty()) {
    out += "\nNotes:\n";
    for (const auto& n : report.at("notes")) out += "- " + n.get<std::string>() + "\n";
  }
  return out;
}

}  // namespace bnsent::eval
