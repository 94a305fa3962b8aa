#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <variant>
#include <vector>

#include "bnsent/corpus.hpp"
#include "bnsent/features.hpp"

namespace bnsent::models {

using corpus::Label;
using features::DocTermMatrix;
using features::SparseVector;

enum class Loss { kLogistic, kHinge };
enum class Schedule { kStochastic, kFullBatch };

std::string to_string(Loss loss);
Loss loss_from_string(const std::string& s);

struct TrainConfig {
  double learning_rate = 0.1;
  int epochs = 100;
  double l2 = 1e-4;
  std::uint64_t seed = 123;
  Loss loss = Loss::kHinge;
  Schedule schedule = Schedule::kStochastic;

  // Throws Error("models.config"). A zero learning rate is accepted (it
  // yields an untouched zero model); negative or non-finite values are not.
  void validate() const;
};

// ---------------------------------------------------------------------------
// Linear models: logistic regression, linear SVM, SGD classifier.

struct LinearModel {
  std::vector<double> weights;
  double bias = 0.0;
  Loss loss = Loss::kLogistic;

  // w.x + b
  double score(const SparseVector& x) const;
};

// L2-regularized mean loss over the training set,
//   J(w, b) = 1/n sum_i loss(y_i (w.x_i + b)) + l2/2 |w|^2,  y_i in {-1, +1},
// and its (sub)gradient. The bias is not regularized.
struct ObjectiveValue {
  double value = 0.0;
  std::vector<double> grad_weights;
  double grad_bias = 0.0;
};

ObjectiveValue linear_objective(const DocTermMatrix& x, std::span<const Label> y,
                                std::span<const double> weights, double bias,
                                double l2, Loss loss);

// Numerically stable logistic function.
double sigmoid(double z);

double predict_proba(const LinearModel& model, const SparseVector& x);

// Full-batch gradient descent on the logistic objective for cfg.epochs.
LinearModel train_logreg(const DocTermMatrix& x, std::span<const Label> y,
                         const TrainConfig& cfg);

// Stochastic subgradient descent on the hinge objective, reshuffling the
// samples every epoch from cfg.seed.
LinearModel train_linear_svm(const DocTermMatrix& x, std::span<const Label> y,
                             const TrainConfig& cfg);

// Linear model trained with cfg.loss under cfg.schedule. Full-batch logistic
// is exactly train_logreg; stochastic hinge is exactly train_linear_svm.
LinearModel train_sgd(const DocTermMatrix& x, std::span<const Label> y,
                      const TrainConfig& cfg);

// ---------------------------------------------------------------------------
// Multinomial naive Bayes.

struct NBModel {
  std::array<double, 2> log_prior{};                  // [negative, positive]
  std::array<std::vector<double>, 2> log_likelihood;  // per class, per term
  double alpha = 1.0;

  // log P(1 | x) - log P(0 | x), up to the shared evidence term.
  double score(const SparseVector& x) const;
};

// Feature values must be non-negative (counts or TF-IDF weights).
NBModel train_mnb(const DocTermMatrix& x, std::span<const Label> y, double alpha = 1.0);

// ---------------------------------------------------------------------------
// CART trees and random forests.

struct TreeNode {
  std::int32_t feature = -1;  // -1 marks a leaf
  double threshold = 0.0;     // go left when x[feature] <= threshold
  std::int32_t left = -1;
  std::int32_t right = -1;
  double positive_fraction = 0.0;  // leaf class frequencies: (1 - p, p)
  double weight = 0.0;             // training weight that reached the node
};

struct TreeModel {
  std::vector<TreeNode> nodes;  // nodes[0] is the root
  std::size_t dim = 0;

  double predict_proba(const SparseVector& x) const;
  int depth() const;
  std::size_t leaf_count() const;
};

struct TreeParams {
  std::optional<int> max_depth;  // unlimited when empty
  std::size_t min_samples_split = 2;
  // Features examined per split; 0 means all. When the sampled features
  // admit no valid split, further features are drawn until one does.
  std::size_t max_features = 0;
  std::uint64_t seed = 123;
};

// Gini impurity of a node holding the given class weights.
double gini(double negative_weight, double positive_weight);

// Greedy CART. `sample_weights` (bootstrap multiplicities) defaults to one
// per row. Candidate thresholds are midpoints between consecutive distinct
// observed values (absent sparse entries count as 0), thinned to at most 32
// evenly spaced quantile candidates per feature.
TreeModel train_tree(const DocTermMatrix& x, std::span<const Label> y,
                     const TreeParams& params,
                     std::span<const double> sample_weights = {});

struct ForestParams {
  int n_trees = 100;
  std::optional<int> max_depth;
  std::size_t min_samples_split = 2;
  std::size_t feature_subset = 0;  // 0 -> ceil(sqrt(dim))
  bool bootstrap = true;
  std::uint64_t seed = 123;
};

struct ForestModel {
  std::vector<TreeModel> trees;
  std::vector<std::uint64_t> tree_seeds;
  std::size_t feature_subset = 0;
  bool bootstrap = true;

  // Mean of the trees' leaf positive fractions.
  double predict_proba(const SparseVector& x) const;
};

ForestModel train_forest(const DocTermMatrix& x, std::span<const Label> y,
                         const ForestParams& params);

// ---------------------------------------------------------------------------
// k-nearest neighbours.

enum class DistanceMetric { kCosine, kEuclidean };

std::string to_string(DistanceMetric metric);
DistanceMetric metric_from_string(const std::string& s);

struct KNNModel {
  std::vector<SparseVector> points;
  std::vector<Label> labels;
  std::size_t k = 5;
  DistanceMetric metric = DistanceMetric::kCosine;
  std::size_t dim = 0;
};

// k must be odd and no larger than the number of training rows.
KNNModel train_knn(const DocTermMatrix& x, std::span<const Label> y, std::size_t k = 5,
                   DistanceMetric metric = DistanceMetric::kCosine);

double distance(const SparseVector& a, const SparseVector& b, DistanceMetric metric);

// Indices of the k nearest stored points, nearest first; equal distances are
// ordered by training index.
std::vector<std::size_t> knn_neighbors(const KNNModel& model, const SparseVector& x);

struct KnnPrediction {
  Label label = Label::kNegative;
  double score = 0.0;  // fraction of positive neighbours
};

KnnPrediction knn_predict(const KNNModel& model, const SparseVector& x);

// ---------------------------------------------------------------------------
// Uniform model interface.

enum class ModelKind {
  kLogisticRegression,
  kDecisionTree,
  kRandomForest,
  kMultinomialNB,
  kKNeighbors,
  kLinearSvc,
  kSgd,
};

std::string to_string(ModelKind kind);        // registry name, e.g. "logreg"
std::string display_name(ModelKind kind);     // e.g. "Logistic Regression"
ModelKind model_kind_from_string(const std::string& name);
const std::vector<ModelKind>& all_model_kinds();

// Hyperparameters for every model kind; only the fields relevant to `kind`
// are consulted.
struct ModelSpec {
  ModelKind kind = ModelKind::kLogisticRegression;
  TrainConfig train;  // linear models
  double alpha = 1.0;  // naive Bayes smoothing
  std::size_t k = 5;
  DistanceMetric metric = DistanceMetric::kCosine;
  TreeParams tree;
  ForestParams forest;

  // Defaults per kind (e.g. logistic loss for logreg, hinge for SVC/SGD).
  static ModelSpec defaults(ModelKind kind, std::uint64_t seed = 123);
};

using ModelParams = std::variant<LinearModel, NBModel, TreeModel, ForestModel, KNNModel>;

struct TrainedModel {
  ModelSpec spec;
  ModelParams params;
  std::size_t dim = 0;

  // Higher means more positive. Linear: w.x + b; NB: log-posterior
  // difference; tree/forest/kNN: positive-class probability. An empty
  // vector scores exactly threshold(), so it falls to the negative tie rule.
  double decision_score(const SparseVector& x) const;
  // Scores at or below the threshold predict negative.
  double threshold() const;
  Label predict(const SparseVector& x) const;
  Label label_for_score(double score) const;
};

TrainedModel train_model(const ModelSpec& spec, const DocTermMatrix& x,
                         std::span<const Label> y);

}  // namespace bnsent::models
