#include "bnsent/eval.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include <fmt/format.h>

#include "bnsent/error.hpp"

namespace bnsent::eval {

namespace {

struct Sweep {
  double threshold;
  std::size_t tp;
  std::size_t fp;
};

// Cumulative (tp, fp) after admitting every example with score >= threshold,
// one entry per distinct score in descending order.
std::vector<Sweep> sweep(std::span<const double> scores, std::span<const Label> y) {
  if (scores.size() != y.size()) {
    throw Error("eval.length", "scores and labels differ in length");
  }
  std::vector<std::size_t> order(scores.size());
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::stable_sort(order.begin(), order.end(),
                   [&](std::size_t a, std::size_t b) { return scores[a] > scores[b]; });
  std::vector<Sweep> out;
  std::size_t tp = 0, fp = 0;
  for (std::size_t i = 0; i < order.size(); ++i) {
    const std::size_t idx = order[i];
    if (std::isnan(scores[idx])) throw Error("eval.nan", "NaN score");
    (y[idx] == Label::kPositive ? tp : fp) += 1;
    const bool last_of_group =
        i + 1 == order.size() || scores[order[i + 1]] != scores[idx];
    if (last_of_group) out.push_back({scores[idx], tp, fp});
  }
  return out;
}

std::pair<std::size_t, std::size_t> class_counts(std::span<const Label> y) {
  const auto p = static_cast<std::size_t>(std::count(y.begin(), y.end(), Label::kPositive));
  return {p, y.size() - p};
}

}  // namespace

ConfusionMatrix confusion(std::span<const Label> y_true, std::span<const Label> y_pred) {
  if (y_true.size() != y_pred.size()) {
    throw Error("eval.length", "truth and prediction lists differ in length");
  }
  if (y_true.empty()) throw Error("eval.empty", "no examples to evaluate");
  ConfusionMatrix cm;
  for (std::size_t i = 0; i < y_true.size(); ++i) {
    const bool actual = y_true[i] == Label::kPositive;
    const bool predicted = y_pred[i] == Label::kPositive;
    if (predicted && actual) ++cm.tp;
    else if (predicted) ++cm.fp;
    else if (actual) ++cm.fn;
    else ++cm.tn;
  }
  return cm;
}

double f1_score(double precision, double recall) {
  const double denom = precision + recall;
  return denom > 0.0 ? 2.0 * precision * recall / denom : 0.0;
}

Metrics metrics(const ConfusionMatrix& cm) {
  if (cm.total() == 0) throw Error("eval.empty", "empty confusion matrix");
  Metrics m;
  auto ratio = [&m](std::size_t num, std::size_t den) {
    if (den == 0) {
      m.degenerate = true;
      return 0.0;
    }
    return static_cast<double>(num) / static_cast<double>(den);
  };
  m.accuracy = ratio(cm.tp + cm.tn, cm.total());
  m.precision = ratio(cm.tp, cm.tp + cm.fp);
  m.recall = ratio(cm.tp, cm.tp + cm.fn);
  if (m.precision + m.recall == 0.0) m.degenerate = true;
  m.f1 = f1_score(m.precision, m.recall);
  return m;
}

double percent(double fraction) {
  // The 1e-9 guards half-way values that binary floating point stores just
  // below the exact decimal (e.g. 0.90855).
  return std::floor(fraction * 10000.0 + 0.5 + 1e-9) / 100.0;
}

Curve roc_curve(std::span<const double> scores, std::span<const Label> y_true) {
  const auto [positives, negatives] = class_counts(y_true);
  if (positives == 0 || negatives == 0) {
    throw Error("eval.single_class", "ROC curve needs both classes in the truth labels");
  }
  Curve curve;
  curve.points.push_back({std::numeric_limits<double>::infinity(), 0.0, 0.0});
  for (const auto& s : sweep(scores, y_true)) {
    curve.points.push_back({s.threshold, static_cast<double>(s.fp) / negatives,
                            static_cast<double>(s.tp) / positives});
  }
  for (std::size_t i = 1; i < curve.points.size(); ++i) {
    const auto& a = curve.points[i - 1];
    const auto& b = curve.points[i];
    curve.area += (b.x - a.x) * (a.y + b.y) / 2.0;
  }
  return curve;
}

double pairwise_auc(std::span<const double> scores, std::span<const Label> y_true) {
  const auto [positives, negatives] = class_counts(y_true);
  if (positives == 0 || negatives == 0) {
    throw Error("eval.single_class", "AUC needs both classes in the truth labels");
  }
  double wins = 0.0;
  for (std::size_t i = 0; i < scores.size(); ++i) {
    if (y_true[i] != Label::kPositive) continue;
    for (std::size_t j = 0; j < scores.size(); ++j) {
      if (y_true[j] == Label::kPositive) continue;
      if (scores[i] > scores[j]) wins += 1.0;
      else if (scores[i] == scores[j]) wins += 0.5;
    }
  }
  return wins / (static_cast<double>(positives) * static_cast<double>(negatives));
}

Curve pr_curve(std::span<const double> scores, std::span<const Label> y_true) {
  const auto positives = class_counts(y_true).first;
  if (positives == 0) throw Error("eval.no_positives", "PR curve needs at least one positive");
  Curve curve;
  double previous_recall = 0.0;
  for (const auto& s : sweep(scores, y_true)) {
    const double recall = static_cast<double>(s.tp) / positives;
    const double precision = static_cast<double>(s.tp) / static_cast<double>(s.tp + s.fp);
    curve.points.push_back({s.threshold, recall, precision});
    curve.area += (recall - previous_recall) * precision;
    previous_recall = recall;
    if (s.tp == positives) break;
  }
  return curve;
}

std::string curve_csv(const Curve& curve) {
  std::string out = "threshold,x,y\n";
  for (const auto& p : curve.points) {
    out += std::isinf(p.threshold) ? std::string(p.threshold > 0 ? "inf" : "-inf")
                                   : fmt::format("{}", p.threshold);
    out += fmt::format(",{},{}\n", p.x, p.y);
  }
  return out;
}

}  // namespace bnsent::eval
