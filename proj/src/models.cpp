#include "bnsent/models.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stack>
#include <tuple>

#include "bnsent/error.hpp"
#include "bnsent/random.hpp"

namespace bnsent::models {

namespace {

double sign_of(Label y) { return y == Label::kPositive ? 1.0 : -1.0; }

void check_training_input(const DocTermMatrix& x, std::span<const Label> y,
                          bool require_both_classes = true) {
  if (x.rows.size() != y.size()) {
    throw Error("models.shape", "feature rows and labels differ in length");
  }
  if (y.size() < 2) throw Error("models.too_few", "need at least two training rows");
  if (require_both_classes) {
    const auto positives = std::count(y.begin(), y.end(), Label::kPositive);
    if (positives == 0 || positives == static_cast<std::ptrdiff_t>(y.size())) {
      throw Error("models.single_class", "training labels contain a single class");
    }
  }
  for (const auto& row : x.rows) {
    if (row.dim != x.dim) throw Error("models.dimension", "row dimension mismatch");
    for (const auto& e : row.entries) {
      if (!std::isfinite(e.value)) {
        throw Error("models.non_finite", "non-finite feature value");
      }
    }
  }
}

void check_dimension(const SparseVector& x, std::size_t dim) {
  if (x.dim != dim) {
    throw Error("models.dimension", "input has dimension " + std::to_string(x.dim) +
                                        ", model expects " + std::to_string(dim));
  }
}

void check_finite(const LinearModel& m) {
  const bool ok = std::isfinite(m.bias) &&
                  std::all_of(m.weights.begin(), m.weights.end(),
                              [](double w) { return std::isfinite(w); });
  if (!ok) throw Error("models.diverged", "training produced non-finite parameters");
}

// loss(m) and d loss / d m for margin m = y * score.
std::pair<double, double> margin_loss(double margin, Loss loss) {
  if (loss == Loss::kLogistic) {
    const double value = margin > 0.0 ? std::log1p(std::exp(-margin))
                                      : -margin + std::log1p(std::exp(margin));
    return {value, -sigmoid(-margin)};
  }
  if (margin < 1.0) return {1.0 - margin, -1.0};
  return {0.0, 0.0};
}

LinearModel full_batch(const DocTermMatrix& x, std::span<const Label> y,
                       const TrainConfig& cfg, Loss loss) {
  LinearModel model;
  model.loss = loss;
  model.weights.assign(x.dim, 0.0);
  // The L2 term takes an implicit (proximal) step, which stays stable for
  // any learning_rate * l2.
  const double shrink = 1.0 / (1.0 + cfg.learning_rate * cfg.l2);
  for (int epoch = 0; epoch < cfg.epochs; ++epoch) {
    const auto obj = linear_objective(x, y, model.weights, model.bias, 0.0, loss);
    for (std::size_t j = 0; j < x.dim; ++j) {
      model.weights[j] = (model.weights[j] - cfg.learning_rate * obj.grad_weights[j]) * shrink;
    }
    model.bias -= cfg.learning_rate * obj.grad_bias;
  }
  check_finite(model);
  return model;
}

LinearModel stochastic(const DocTermMatrix& x, std::span<const Label> y,
                       const TrainConfig& cfg, Loss loss) {
  LinearModel model;
  model.loss = loss;
  model.weights.assign(x.dim, 0.0);
  Rng rng(cfg.seed);
  std::vector<std::size_t> order(y.size());
  std::iota(order.begin(), order.end(), std::size_t{0});
  const double shrink = 1.0 / (1.0 + cfg.learning_rate * cfg.l2);
  for (int epoch = 0; epoch < cfg.epochs; ++epoch) {
    rng.shuffle(std::span(order));
    for (const std::size_t i : order) {
      const auto& row = x.rows[i];
      const double yi = sign_of(y[i]);
      const double margin = yi * model.score(row);
      const double slope = yi * margin_loss(margin, loss).second;
      if (slope != 0.0) {
        for (const auto& e : row.entries) {
          model.weights[e.index] -= cfg.learning_rate * slope * e.value;
        }
        model.bias -= cfg.learning_rate * slope;
      }
      if (cfg.l2 != 0.0) {
        for (auto& w : model.weights) w *= shrink;
      }
    }
  }
  check_finite(model);
  return model;
}

}  // namespace

std::string to_string(Loss loss) { return loss == Loss::kLogistic ? "logistic" : "hinge"; }

Loss loss_from_string(const std::string& s) {
  if (s == "logistic" || s == "log") return Loss::kLogistic;
  if (s == "hinge") return Loss::kHinge;
  throw Error("models.config", "unknown loss '" + s + "'");
}

void TrainConfig::validate() const {
  if (!std::isfinite(learning_rate) || learning_rate < 0.0) {
    throw Error("models.config", "learning rate must be finite and non-negative");
  }
  if (epochs < 1) throw Error("models.config", "epochs must be at least 1");
  if (!std::isfinite(l2) || l2 < 0.0) {
    throw Error("models.config", "l2 must be finite and non-negative");
  }
}

double LinearModel::score(const SparseVector& x) const {
  check_dimension(x, weights.size());
  return x.dot(weights) + bias;
}

ObjectiveValue linear_objective(const DocTermMatrix& x, std::span<const Label> y,
                                std::span<const double> weights, double bias,
                                double l2, Loss loss) {
  ObjectiveValue out;
  out.grad_weights.assign(weights.size(), 0.0);
  const auto n = static_cast<double>(y.size());
  for (std::size_t i = 0; i < y.size(); ++i) {
    const auto& row = x.rows[i];
    const double yi = sign_of(y[i]);
    const double margin = yi * (row.dot(weights) + bias);
    const auto [value, dmargin] = margin_loss(margin, loss);
    out.value += value / n;
    const double slope = yi * dmargin / n;
    if (slope == 0.0) continue;
    for (const auto& e : row.entries) out.grad_weights[e.index] += slope * e.value;
    out.grad_bias += slope;
  }
  double sq = 0.0;
  for (std::size_t j = 0; j < weights.size(); ++j) {
    sq += weights[j] * weights[j];
    out.grad_weights[j] += l2 * weights[j];
  }
  out.value += 0.5 * l2 * sq;
  return out;
}

double sigmoid(double z) {
  if (z >= 0.0) return 1.0 / (1.0 + std::exp(-z));
  const double e = std::exp(z);
  return e / (1.0 + e);
}

double predict_proba(const LinearModel& model, const SparseVector& x) {
  return sigmoid(model.score(x));
}

LinearModel train_logreg(const DocTermMatrix& x, std::span<const Label> y,
                         const TrainConfig& cfg) {
  cfg.validate();
  check_training_input(x, y);
  return full_batch(x, y, cfg, Loss::kLogistic);
}

LinearModel train_linear_svm(const DocTermMatrix& x, std::span<const Label> y,
                             const TrainConfig& cfg) {
  cfg.validate();
  check_training_input(x, y);
  return stochastic(x, y, cfg, Loss::kHinge);
}

LinearModel train_sgd(const DocTermMatrix& x, std::span<const Label> y,
                      const TrainConfig& cfg) {
  cfg.validate();
  check_training_input(x, y);
  return cfg.schedule == Schedule::kFullBatch ? full_batch(x, y, cfg, cfg.loss)
                                              : stochastic(x, y, cfg, cfg.loss);
}

// ---------------------------------------------------------------------------

double NBModel::score(const SparseVector& x) const {
  check_dimension(x, log_likelihood[0].size());
  double s = log_prior[1] - log_prior[0];
  for (const auto& e : x.entries) {
    s += e.value * (log_likelihood[1][e.index] - log_likelihood[0][e.index]);
  }
  return s;
}

NBModel train_mnb(const DocTermMatrix& x, std::span<const Label> y, double alpha) {
  if (!(alpha > 0.0) || !std::isfinite(alpha)) {
    throw Error("models.config", "naive Bayes alpha must be positive and finite");
  }
  check_training_input(x, y);
  std::array<std::vector<double>, 2> counts{std::vector<double>(x.dim, 0.0),
                                            std::vector<double>(x.dim, 0.0)};
  std::array<double, 2> docs{0.0, 0.0};
  for (std::size_t i = 0; i < y.size(); ++i) {
    const int c = corpus::to_int(y[i]);
    docs[c] += 1.0;
    for (const auto& e : x.rows[i].entries) {
      if (e.value < 0.0) {
        throw Error("models.negative_feature",
                    "multinomial naive Bayes needs non-negative features");
      }
      counts[c][e.index] += e.value;
    }
  }
  NBModel model;
  model.alpha = alpha;
  const auto v = static_cast<double>(x.dim);
  const double n = docs[0] + docs[1];
  for (int c = 0; c < 2; ++c) {
    const double total = std::accumulate(counts[c].begin(), counts[c].end(), 0.0);
    const double denom = std::log(total + alpha * v);
    model.log_prior[c] = std::log(docs[c] / n);
    model.log_likelihood[c].resize(x.dim);
    for (std::size_t t = 0; t < x.dim; ++t) {
      model.log_likelihood[c][t] = std::log(counts[c][t] + alpha) - denom;
    }
  }
  return model;
}

// ---------------------------------------------------------------------------

double gini(double negative_weight, double positive_weight) {
  const double total = negative_weight + positive_weight;
  if (total <= 0.0) return 0.0;
  const double p = positive_weight / total;
  return 1.0 - p * p - (1.0 - p) * (1.0 - p);
}

namespace {

double feature_value(const SparseVector& x, std::size_t feature) {
  const auto it = std::lower_bound(
      x.entries.begin(), x.entries.end(), feature,
      [](const features::SparseEntry& e, std::size_t f) { return e.index < f; });
  return it != x.entries.end() && it->index == feature ? it->value : 0.0;
}

struct Split {
  double impurity = 0.0;
  std::size_t feature = 0;
  double threshold = 0.0;
};

bool better(const Split& a, const Split& b) {
  return std::tie(a.impurity, a.feature, a.threshold) <
         std::tie(b.impurity, b.feature, b.threshold);
}

constexpr std::size_t kMaxCandidates = 32;

class TreeBuilder {
 public:
  TreeBuilder(const DocTermMatrix& x, std::span<const Label> y,
              std::span<const double> weights, const TreeParams& params)
      : x_(x), y_(y), weights_(weights), params_(params), rng_(params.seed),
        marker_(y.size(), 0.0), columns_(x.dim) {
    for (std::size_t r = 0; r < x.rows.size(); ++r) {
      for (const auto& e : x.rows[r].entries) columns_[e.index].push_back({r, e.value});
    }
    feature_order_.resize(x.dim);
  }

  TreeModel build() {
    TreeModel tree;
    tree.dim = x_.dim;
    std::vector<std::size_t> root;
    for (std::size_t r = 0; r < y_.size(); ++r) {
      if (weights_[r] > 0.0) root.push_back(r);
    }
    struct Pending {
      std::int32_t node;
      std::vector<std::size_t> rows;
      int depth;
    };
    std::stack<Pending> work;
    tree.nodes.emplace_back();
    work.push({0, std::move(root), 0});
    while (!work.empty()) {
      Pending item = std::move(work.top());
      work.pop();
      double pos = 0.0, neg = 0.0;
      for (const auto r : item.rows) {
        (y_[r] == Label::kPositive ? pos : neg) += weights_[r];
      }
      TreeNode& node = tree.nodes[static_cast<std::size_t>(item.node)];
      node.weight = pos + neg;
      node.positive_fraction = node.weight > 0.0 ? pos / node.weight : 0.0;

      const bool depth_limited = params_.max_depth && item.depth >= *params_.max_depth;
      if (pos == 0.0 || neg == 0.0 || depth_limited ||
          node.weight < static_cast<double>(params_.min_samples_split)) {
        continue;
      }
      const auto split = best_split(item.rows, neg, pos);
      if (!split) continue;

      std::vector<std::size_t> left, right;
      for (const auto r : item.rows) {
        (feature_value(x_.rows[r], split->feature) <= split->threshold ? left : right)
            .push_back(r);
      }
      const auto left_id = static_cast<std::int32_t>(tree.nodes.size());
      const auto right_id = left_id + 1;
      {
        TreeNode& parent = tree.nodes[static_cast<std::size_t>(item.node)];
        parent.feature = static_cast<std::int32_t>(split->feature);
        parent.threshold = split->threshold;
        parent.left = left_id;
        parent.right = right_id;
      }
      tree.nodes.emplace_back();
      tree.nodes.emplace_back();
      work.push({right_id, std::move(right), item.depth + 1});
      work.push({left_id, std::move(left), item.depth + 1});
    }
    return tree;
  }

 private:
  struct Group {
    double value;
    double neg;
    double pos;
  };

  std::optional<Split> best_split(const std::vector<std::size_t>& rows, double neg,
                                  double pos) {
    for (const auto r : rows) marker_[r] = weights_[r];
    std::iota(feature_order_.begin(), feature_order_.end(), std::size_t{0});
    const std::size_t wanted =
        params_.max_features == 0 ? x_.dim : std::min(params_.max_features, x_.dim);
    const bool sampled = wanted < x_.dim;

    std::optional<Split> best;
    for (std::size_t examined = 0; examined < x_.dim; ++examined) {
      if (examined >= wanted && best) break;
      std::size_t feature = examined;
      if (sampled) {
        // Partial Fisher-Yates: draw the next feature without replacement.
        const std::size_t j = examined + rng_.uniform_index(x_.dim - examined);
        std::swap(feature_order_[examined], feature_order_[j]);
        feature = feature_order_[examined];
      }
      if (auto s = evaluate_feature(feature, neg, pos); s && (!best || better(*s, *best))) {
        best = s;
      }
    }
    for (const auto r : rows) marker_[r] = 0.0;
    return best;
  }

  std::optional<Split> evaluate_feature(std::size_t feature, double neg, double pos) {
    groups_.clear();
    double nz_neg = 0.0, nz_pos = 0.0;
    for (const auto& [row, value] : columns_[feature]) {
      const double w = marker_[row];
      if (w == 0.0) continue;
      const bool positive = y_[row] == Label::kPositive;
      groups_.push_back({value, positive ? 0.0 : w, positive ? w : 0.0});
      (positive ? nz_pos : nz_neg) += w;
    }
    const double zero_neg = neg - nz_neg;
    const double zero_pos = pos - nz_pos;
    if (zero_neg > 0.0 || zero_pos > 0.0) groups_.push_back({0.0, zero_neg, zero_pos});
    if (groups_.size() < 2) return std::nullopt;

    std::sort(groups_.begin(), groups_.end(),
              [](const Group& a, const Group& b) { return a.value < b.value; });
    std::size_t out = 0;
    for (std::size_t i = 1; i < groups_.size(); ++i) {
      if (groups_[i].value == groups_[out].value) {
        groups_[out].neg += groups_[i].neg;
        groups_[out].pos += groups_[i].pos;
      } else {
        groups_[++out] = groups_[i];
      }
    }
    groups_.resize(out + 1);
    const std::size_t gaps = groups_.size() - 1;
    if (gaps == 0) return std::nullopt;

    // Candidate gap indices: all of them, or kMaxCandidates evenly spaced.
    candidates_.clear();
    if (gaps <= kMaxCandidates) {
      for (std::size_t g = 0; g < gaps; ++g) candidates_.push_back(g);
    } else {
      for (std::size_t k = 0; k < kMaxCandidates; ++k) {
        const auto g = static_cast<std::size_t>(
            (static_cast<double>(k) + 0.5) * static_cast<double>(gaps) /
            static_cast<double>(kMaxCandidates));
        if (candidates_.empty() || candidates_.back() != g) candidates_.push_back(g);
      }
    }

    const double total = neg + pos;
    std::optional<Split> best;
    double left_neg = 0.0, left_pos = 0.0;
    std::size_t consumed = 0;
    for (const std::size_t g : candidates_) {
      while (consumed <= g) {
        left_neg += groups_[consumed].neg;
        left_pos += groups_[consumed].pos;
        ++consumed;
      }
      const double left_w = left_neg + left_pos;
      const double right_neg = neg - left_neg;
      const double right_pos = pos - left_pos;
      const double right_w = right_neg + right_pos;
      const double impurity =
          (left_w * gini(left_neg, left_pos) + right_w * gini(right_neg, right_pos)) / total;
      const double a = groups_[g].value;
      const double b = groups_[g + 1].value;
      double threshold = a + (b - a) / 2.0;
      if (!(threshold < b)) threshold = a;
      Split s{impurity, feature, threshold};
      if (!best || better(s, *best)) best = s;
    }
    return best;
  }

  const DocTermMatrix& x_;
  std::span<const Label> y_;
  std::span<const double> weights_;
  const TreeParams& params_;
  Rng rng_;
  std::vector<double> marker_;
  std::vector<std::vector<std::pair<std::size_t, double>>> columns_;
  std::vector<std::size_t> feature_order_;
  std::vector<Group> groups_;
  std::vector<std::size_t> candidates_;
};

}  // namespace

double TreeModel::predict_proba(const SparseVector& x) const {
  check_dimension(x, dim);
  std::size_t i = 0;
  while (nodes[i].feature >= 0) {
    const auto& n = nodes[i];
    i = static_cast<std::size_t>(
        feature_value(x, static_cast<std::size_t>(n.feature)) <= n.threshold ? n.left
                                                                              : n.right);
  }
  return nodes[i].positive_fraction;
}

int TreeModel::depth() const {
  if (nodes.empty()) return 0;
  int best = 0;
  std::vector<std::pair<std::size_t, int>> stack{{0, 0}};
  while (!stack.empty()) {
    const auto [i, d] = stack.back();
    stack.pop_back();
    best = std::max(best, d);
    if (nodes[i].feature >= 0) {
      stack.push_back({static_cast<std::size_t>(nodes[i].left), d + 1});
      stack.push_back({static_cast<std::size_t>(nodes[i].right), d + 1});
    }
  }
  return best;
}

std::size_t TreeModel::leaf_count() const {
  return static_cast<std::size_t>(std::count_if(
      nodes.begin(), nodes.end(), [](const TreeNode& n) { return n.feature < 0; }));
}

TreeModel train_tree(const DocTermMatrix& x, std::span<const Label> y,
                     const TreeParams& params, std::span<const double> sample_weights) {
  check_training_input(x, y, /*require_both_classes=*/false);
  if (params.max_depth && *params.max_depth < 0) {
    throw Error("models.config", "max depth must be non-negative");
  }
  std::vector<double> unit;
  if (sample_weights.empty()) {
    unit.assign(y.size(), 1.0);
    sample_weights = unit;
  } else if (sample_weights.size() != y.size()) {
    throw Error("models.shape", "sample weights and labels differ in length");
  }
  TreeBuilder builder(x, y, sample_weights, params);
  return builder.build();
}

double ForestModel::predict_proba(const SparseVector& x) const {
  double sum = 0.0;
  for (const auto& t : trees) sum += t.predict_proba(x);
  return sum / static_cast<double>(trees.size());
}

ForestModel train_forest(const DocTermMatrix& x, std::span<const Label> y,
                         const ForestParams& params) {
  if (params.n_trees < 1) throw Error("models.config", "forest needs at least one tree");
  check_training_input(x, y, /*require_both_classes=*/false);
  ForestModel forest;
  forest.bootstrap = params.bootstrap;
  forest.feature_subset =
      params.feature_subset != 0
          ? std::min(params.feature_subset, x.dim)
          : static_cast<std::size_t>(std::ceil(std::sqrt(static_cast<double>(x.dim))));
  const std::size_t n = y.size();
  for (int t = 0; t < params.n_trees; ++t) {
    const std::uint64_t seed = derive_seed(params.seed, static_cast<std::uint64_t>(t));
    Rng rng(seed);
    std::vector<double> weights(n, params.bootstrap ? 0.0 : 1.0);
    if (params.bootstrap) {
      for (std::size_t i = 0; i < n; ++i) weights[rng.uniform_index(n)] += 1.0;
    }
    TreeParams tp;
    tp.max_depth = params.max_depth;
    tp.min_samples_split = params.min_samples_split;
    tp.max_features = forest.feature_subset;
    tp.seed = rng.next_u64();
    forest.trees.push_back(train_tree(x, y, tp, weights));
    forest.tree_seeds.push_back(seed);
  }
  return forest;
}

// ---------------------------------------------------------------------------

std::string to_string(DistanceMetric metric) {
  return metric == DistanceMetric::kCosine ? "cosine" : "euclidean";
}

DistanceMetric metric_from_string(const std::string& s) {
  if (s == "cosine") return DistanceMetric::kCosine;
  if (s == "euclidean") return DistanceMetric::kEuclidean;
  throw Error("models.config", "unknown distance metric '" + s + "'");
}

KNNModel train_knn(const DocTermMatrix& x, std::span<const Label> y, std::size_t k,
                   DistanceMetric metric) {
  check_training_input(x, y, /*require_both_classes=*/false);
  if (k == 0 || k % 2 == 0) throw Error("models.config", "k must be a positive odd integer");
  if (k > y.size()) {
    throw Error("models.k_too_large", "k = " + std::to_string(k) + " exceeds the " +
                                          std::to_string(y.size()) + " training rows");
  }
  KNNModel model;
  model.points = x.rows;
  model.labels.assign(y.begin(), y.end());
  model.k = k;
  model.metric = metric;
  model.dim = x.dim;
  return model;
}

double distance(const SparseVector& a, const SparseVector& b, DistanceMetric metric) {
  const double ab = features::dot(a, b);
  const double aa = a.squared_norm();
  const double bb = b.squared_norm();
  if (metric == DistanceMetric::kEuclidean) return std::sqrt(std::max(0.0, aa + bb - 2.0 * ab));
  if (aa == 0.0 || bb == 0.0) return 1.0;
  return 1.0 - ab / (std::sqrt(aa) * std::sqrt(bb));
}

std::vector<std::size_t> knn_neighbors(const KNNModel& model, const SparseVector& x) {
  check_dimension(x, model.dim);
  if (model.k > model.points.size()) {
    throw Error("models.k_too_large", "k exceeds the number of stored points");
  }
  std::vector<std::pair<double, std::size_t>> d;
  d.reserve(model.points.size());
  for (std::size_t i = 0; i < model.points.size(); ++i) {
    d.emplace_back(distance(x, model.points[i], model.metric), i);
  }
  std::partial_sort(d.begin(), d.begin() + static_cast<std::ptrdiff_t>(model.k), d.end());
  std::vector<std::size_t> out;
  out.reserve(model.k);
  for (std::size_t i = 0; i < model.k; ++i) out.push_back(d[i].second);
  return out;
}

KnnPrediction knn_predict(const KNNModel& model, const SparseVector& x) {
  const auto neighbors = knn_neighbors(model, x);
  std::size_t positives = 0;
  for (const auto i : neighbors) positives += model.labels[i] == Label::kPositive;
  KnnPrediction p;
  p.score = static_cast<double>(positives) / static_cast<double>(neighbors.size());
  p.label = p.score > 0.5 ? Label::kPositive : Label::kNegative;
  return p;
}

// ---------------------------------------------------------------------------

namespace {

struct KindInfo {
  ModelKind kind;
  const char* name;
  const char* display;
};

constexpr KindInfo kKinds[] = {
    {ModelKind::kLogisticRegression, "logreg", "Logistic Regression"},
    {ModelKind::kDecisionTree, "tree", "DecisionTree Classifier"},
    {ModelKind::kRandomForest, "forest", "RandomForest Classifier"},
    {ModelKind::kMultinomialNB, "mnb", "MultinomialNB"},
    {ModelKind::kKNeighbors, "knn", "KNeighbors Classifier"},
    {ModelKind::kLinearSvc, "linear_svc", "Linear SupportVectorClassification"},
    {ModelKind::kSgd, "sgd", "SGD Classifier"},
};

const KindInfo& info(ModelKind kind) {
  for (const auto& k : kKinds) {
    if (k.kind == kind) return k;
  }
  throw Error("models.kind", "unknown model kind");
}

}  // namespace

std::string to_string(ModelKind kind) { return info(kind).name; }
std::string display_name(ModelKind kind) { return info(kind).display; }

ModelKind model_kind_from_string(const std::string& name) {
  for (const auto& k : kKinds) {
    if (name == k.name) return k.kind;
  }
  if (name == "rbf_svc") {
    throw Error("models.unsupported",
                "RBF-kernel SVC is not implemented (no kernel width, regularization or "
                "solver is available to reproduce it)");
  }
  throw Error("models.kind", "unknown model '" + name + "'");
}

const std::vector<ModelKind>& all_model_kinds() {
  static const std::vector<ModelKind> kinds = [] {
    std::vector<ModelKind> v;
    for (const auto& k : kKinds) v.push_back(k.kind);
    return v;
  }();
  return kinds;
}

ModelSpec ModelSpec::defaults(ModelKind kind, std::uint64_t seed) {
  ModelSpec spec;
  spec.kind = kind;
  spec.train.seed = seed;
  spec.tree.seed = seed;
  spec.forest.seed = seed;
  switch (kind) {
    case ModelKind::kLogisticRegression:
      spec.train.loss = Loss::kLogistic;
      spec.train.schedule = Schedule::kFullBatch;
      break;
    case ModelKind::kLinearSvc:
    case ModelKind::kSgd:
      spec.train.loss = Loss::kHinge;
      spec.train.schedule = Schedule::kStochastic;
      break;
    default:
      break;
  }
  return spec;
}

double TrainedModel::decision_score(const SparseVector& x) const {
  check_dimension(x, dim);
  // An input without any feature carries no evidence and scores as a tie.
  if (x.entries.empty()) return threshold();
  return std::visit(
      [&](const auto& m) -> double {
        using T = std::decay_t<decltype(m)>;
        if constexpr (std::is_same_v<T, KNNModel>) {
          return knn_predict(m, x).score;
        } else if constexpr (std::is_same_v<T, LinearModel> || std::is_same_v<T, NBModel>) {
          return m.score(x);
        } else {
          return m.predict_proba(x);
        }
      },
      params);
}

double TrainedModel::threshold() const {
  const bool linear_like = std::holds_alternative<LinearModel>(params) ||
                           std::holds_alternative<NBModel>(params);
  return linear_like ? 0.0 : 0.5;
}

Label TrainedModel::label_for_score(double score) const {
  return score > threshold() ? Label::kPositive : Label::kNegative;
}

Label TrainedModel::predict(const SparseVector& x) const {
  return label_for_score(decision_score(x));
}

TrainedModel train_model(const ModelSpec& spec, const DocTermMatrix& x,
                         std::span<const Label> y) {
  TrainedModel model;
  model.spec = spec;
  model.dim = x.dim;
  switch (spec.kind) {
    case ModelKind::kLogisticRegression:
      model.params = train_logreg(x, y, spec.train);
      break;
    case ModelKind::kLinearSvc:
      model.params = train_linear_svm(x, y, spec.train);
      break;
    case ModelKind::kSgd:
      model.params = train_sgd(x, y, spec.train);
      break;
    case ModelKind::kMultinomialNB:
      model.params = train_mnb(x, y, spec.alpha);
      break;
    case ModelKind::kDecisionTree:
      check_training_input(x, y);
      model.params = train_tree(x, y, spec.tree);
      break;
    case ModelKind::kRandomForest:
      check_training_input(x, y);
      model.params = train_forest(x, y, spec.forest);
      break;
    case ModelKind::kKNeighbors:
      check_training_input(x, y);
      model.params = train_knn(x, y, spec.k, spec.metric);
      break;
  }
  return model;
}

}  // namespace bnsent::models
