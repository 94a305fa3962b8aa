#pragma once

#include <cstddef>
#include <limits>
#include <span>
#include <string>
#include <vector>

#include "bnsent/corpus.hpp"

namespace bnsent::eval {

using corpus::Label;

struct ConfusionMatrix {
  std::size_t tp = 0;  // predicted positive, actually positive
  std::size_t fp = 0;  // predicted positive, actually negative
  std::size_t tn = 0;  // predicted negative, actually negative
  std::size_t fn = 0;  // predicted negative, actually positive

  std::size_t total() const { return tp + fp + tn + fn; }
  bool operator==(const ConfusionMatrix&) const = default;
};

ConfusionMatrix confusion(std::span<const Label> y_true, std::span<const Label> y_pred);

struct Metrics {
  double accuracy = 0.0;
  double precision = 0.0;
  double recall = 0.0;
  double f1 = 0.0;
  // Set when any ratio had a zero denominator and was reported as 0.
  bool degenerate = false;
};

// Harmonic mean; 0 when both inputs are 0.
double f1_score(double precision, double recall);

Metrics metrics(const ConfusionMatrix& cm);

// Value in [0, 1] as a percentage rounded half-up to two decimals.
double percent(double fraction);

struct CurvePoint {
  double threshold;  // +inf for the ROC origin
  double x;
  double y;
};

struct Curve {
  std::vector<CurvePoint> points;
  double area = 0.0;
};

// ROC: (FPR, TPR) from the origin, one point per distinct score (descending),
// ending at (1, 1). Area by the trapezoidal rule.
Curve roc_curve(std::span<const double> scores, std::span<const Label> y_true);

// Probability that a random positive outscores a random negative, ties 0.5.
double pairwise_auc(std::span<const double> scores, std::span<const Label> y_true);

// PR: (recall, precision) over the same descending threshold sweep, stopping
// at the first threshold that reaches full recall. Area is average precision,
// sum over points of (R_k - R_{k-1}) * P_k with R_0 = 0.
Curve pr_curve(std::span<const double> scores, std::span<const Label> y_true);

// `threshold,x,y` CSV.
std::string curve_csv(const Curve& curve);

}  // namespace bnsent::eval
