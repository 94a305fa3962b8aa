#include "bnsent/persistence.hpp"

#include "bnsent/error.hpp"

namespace bnsent::persistence {

using models::ModelKind;

namespace {

json optional_int(const std::optional<int>& v) { return v ? json(*v) : json(nullptr); }

std::optional<int> read_optional_int(const json& j, const char* key,
                                     std::optional<int> fallback) {
  if (!j.contains(key)) return fallback;
  if (j.at(key).is_null()) return std::nullopt;
  return j.at(key).get<int>();
}

template <typename T>
void read_if(const json& j, const char* key, T& out) {
  if (j.contains(key)) out = j.at(key).get<T>();
}

json tree_to_json(const models::TreeModel& tree) {
  json feature = json::array(), threshold = json::array(), left = json::array(),
       right = json::array(), fraction = json::array(), weight = json::array();
  for (const auto& n : tree.nodes) {
    feature.push_back(n.feature);
    threshold.push_back(n.threshold);
    left.push_back(n.left);
    right.push_back(n.right);
    fraction.push_back(n.positive_fraction);
    weight.push_back(n.weight);
  }
  return {{"dim", tree.dim},       {"feature", feature},         {"threshold", threshold},
          {"left", left},          {"right", right},             {"positive_fraction", fraction},
          {"weight", weight}};
}

models::TreeModel tree_from_json(const json& j) {
  models::TreeModel tree;
  tree.dim = j.at("dim").get<std::size_t>();
  const auto& feature = j.at("feature");
  const std::size_t n = feature.size();
  tree.nodes.resize(n);
  for (std::size_t i = 0; i < n; ++i) {
    auto& node = tree.nodes[i];
    node.feature = feature.at(i).get<std::int32_t>();
    node.threshold = j.at("threshold").at(i).get<double>();
    node.left = j.at("left").at(i).get<std::int32_t>();
    node.right = j.at("right").at(i).get<std::int32_t>();
    node.positive_fraction = j.at("positive_fraction").at(i).get<double>();
    node.weight = j.at("weight").at(i).get<double>();
    const auto limit = static_cast<std::int32_t>(n);
    if (node.feature >= 0 &&
        (node.left <= static_cast<std::int32_t>(i) || node.left >= limit ||
         node.right <= static_cast<std::int32_t>(i) || node.right >= limit ||
         static_cast<std::size_t>(node.feature) >= tree.dim)) {
      throw Error("model.corrupt", "malformed tree node " + std::to_string(i));
    }
  }
  if (n == 0) throw Error("model.corrupt", "tree without nodes");
  return tree;
}

json sparse_to_json(const features::SparseVector& v) {
  json out = json::array();
  for (const auto& e : v.entries) out.push_back(json::array({e.index, e.value}));
  return out;
}

features::SparseVector sparse_from_json(const json& j, std::size_t dim) {
  features::SparseVector v;
  v.dim = dim;
  for (const auto& e : j) v.entries.push_back({e.at(0).get<std::uint32_t>(), e.at(1).get<double>()});
  v.check();
  return v;
}

}  // namespace

json spec_to_json(const models::ModelSpec& spec) {
  switch (spec.kind) {
    case ModelKind::kLogisticRegression:
    case ModelKind::kLinearSvc:
    case ModelKind::kSgd:
      return {{"learning_rate", spec.train.learning_rate},
              {"epochs", spec.train.epochs},
              {"l2", spec.train.l2},
              {"seed", spec.train.seed},
              {"loss", models::to_string(spec.train.loss)},
              {"schedule", spec.train.schedule == models::Schedule::kFullBatch
                               ? "full-batch"
                               : "stochastic"}};
    case ModelKind::kMultinomialNB:
      return {{"alpha", spec.alpha}};
    case ModelKind::kKNeighbors:
      return {{"k", spec.k}, {"metric", models::to_string(spec.metric)}};
    case ModelKind::kDecisionTree:
      return {{"max_depth", optional_int(spec.tree.max_depth)},
              {"min_samples_split", spec.tree.min_samples_split},
              {"max_features", spec.tree.max_features},
              {"seed", spec.tree.seed}};
    case ModelKind::kRandomForest:
      return {{"n_trees", spec.forest.n_trees},
              {"max_depth", optional_int(spec.forest.max_depth)},
              {"min_samples_split", spec.forest.min_samples_split},
              {"feature_subset", spec.forest.feature_subset},
              {"bootstrap", spec.forest.bootstrap},
              {"seed", spec.forest.seed}};
  }
  return json::object();
}

models::ModelSpec spec_from_json(ModelKind kind, const json& j, std::uint64_t seed) {
  auto spec = models::ModelSpec::defaults(kind, seed);
  try {
    read_if(j, "learning_rate", spec.train.learning_rate);
    read_if(j, "epochs", spec.train.epochs);
    read_if(j, "l2", spec.train.l2);
    if (j.contains("seed")) {
      const auto s = j.at("seed").get<std::uint64_t>();
      spec.train.seed = spec.tree.seed = spec.forest.seed = s;
    }
    if (j.contains("loss")) spec.train.loss = models::loss_from_string(j.at("loss").get<std::string>());
    if (j.contains("schedule")) {
      const auto s = j.at("schedule").get<std::string>();
      if (s == "full-batch") spec.train.schedule = models::Schedule::kFullBatch;
      else if (s == "stochastic") spec.train.schedule = models::Schedule::kStochastic;
      else throw Error("config.model", "unknown schedule '" + s + "'");
    }
    read_if(j, "alpha", spec.alpha);
    read_if(j, "k", spec.k);
    if (j.contains("metric")) spec.metric = models::metric_from_string(j.at("metric").get<std::string>());
    spec.tree.max_depth = read_optional_int(j, "max_depth", spec.tree.max_depth);
    spec.forest.max_depth = spec.tree.max_depth;
    if (j.contains("min_samples_split")) {
      spec.tree.min_samples_split = spec.forest.min_samples_split =
          j.at("min_samples_split").get<std::size_t>();
    }
    read_if(j, "max_features", spec.tree.max_features);
    read_if(j, "n_trees", spec.forest.n_trees);
    read_if(j, "feature_subset", spec.forest.feature_subset);
    read_if(j, "bootstrap", spec.forest.bootstrap);
  } catch (const json::exception& e) {
    throw Error("config.model", std::string("bad hyperparameter: ") + e.what());
  }
  return spec;
}

json params_to_json(const models::TrainedModel& model) {
  return std::visit(
      [&](const auto& m) -> json {
        using T = std::decay_t<decltype(m)>;
        if constexpr (std::is_same_v<T, models::LinearModel>) {
          return {{"weights", m.weights}, {"bias", m.bias}, {"loss", models::to_string(m.loss)}};
        } else if constexpr (std::is_same_v<T, models::NBModel>) {
          return {{"alpha", m.alpha},
                  {"log_prior", m.log_prior},
                  {"log_likelihood", {m.log_likelihood[0], m.log_likelihood[1]}}};
        } else if constexpr (std::is_same_v<T, models::TreeModel>) {
          return tree_to_json(m);
        } else if constexpr (std::is_same_v<T, models::ForestModel>) {
          json trees = json::array();
          for (const auto& t : m.trees) trees.push_back(tree_to_json(t));
          return {{"trees", trees},
                  {"tree_seeds", m.tree_seeds},
                  {"feature_subset", m.feature_subset},
                  {"bootstrap", m.bootstrap}};
        } else {
          json points = json::array();
          for (const auto& p : m.points) points.push_back(sparse_to_json(p));
          json labels = json::array();
          for (const auto l : m.labels) labels.push_back(corpus::to_int(l));
          return {{"k", m.k},
                  {"metric", models::to_string(m.metric)},
                  {"dim", m.dim},
                  {"labels", labels},
                  {"points", points}};
        }
      },
      model.params);
}

models::TrainedModel model_from_json(const json& spec_json, const json& params) {
  models::TrainedModel model;
  try {
    const auto kind = models::model_kind_from_string(spec_json.at("kind").get<std::string>());
    model.spec = spec_from_json(kind, spec_json.at("hyperparameters"), 123);
    model.dim = spec_json.at("dim").get<std::size_t>();
    switch (kind) {
      case ModelKind::kLogisticRegression:
      case ModelKind::kLinearSvc:
      case ModelKind::kSgd: {
        models::LinearModel m;
        m.weights = params.at("weights").get<std::vector<double>>();
        m.bias = params.at("bias").get<double>();
        m.loss = models::loss_from_string(params.at("loss").get<std::string>());
        if (m.weights.size() != model.dim) throw Error("model.corrupt", "weight length mismatch");
        model.params = std::move(m);
        break;
      }
      case ModelKind::kMultinomialNB: {
        models::NBModel m;
        m.alpha = params.at("alpha").get<double>();
        m.log_prior = params.at("log_prior").get<std::array<double, 2>>();
        m.log_likelihood[0] = params.at("log_likelihood").at(0).get<std::vector<double>>();
        m.log_likelihood[1] = params.at("log_likelihood").at(1).get<std::vector<double>>();
        if (m.log_likelihood[0].size() != model.dim || m.log_likelihood[1].size() != model.dim) {
          throw Error("model.corrupt", "likelihood length mismatch");
        }
        model.params = std::move(m);
        break;
      }
      case ModelKind::kDecisionTree:
        model.params = tree_from_json(params);
        break;
      case ModelKind::kRandomForest: {
        models::ForestModel m;
        for (const auto& t : params.at("trees")) m.trees.push_back(tree_from_json(t));
        m.tree_seeds = params.at("tree_seeds").get<std::vector<std::uint64_t>>();
        m.feature_subset = params.at("feature_subset").get<std::size_t>();
        m.bootstrap = params.at("bootstrap").get<bool>();
        if (m.trees.empty()) throw Error("model.corrupt", "forest without trees");
        model.params = std::move(m);
        break;
      }
      case ModelKind::kKNeighbors: {
        models::KNNModel m;
        m.k = params.at("k").get<std::size_t>();
        m.metric = models::metric_from_string(params.at("metric").get<std::string>());
        m.dim = params.at("dim").get<std::size_t>();
        for (const auto& l : params.at("labels")) {
          m.labels.push_back(l.get<int>() == 1 ? corpus::Label::kPositive
                                               : corpus::Label::kNegative);
        }
        for (const auto& p : params.at("points")) m.points.push_back(sparse_from_json(p, m.dim));
        if (m.points.size() != m.labels.size() || m.k > m.points.size()) {
          throw Error("model.corrupt", "inconsistent kNN model");
        }
        model.params = std::move(m);
        break;
      }
    }
  } catch (const json::exception& e) {
    throw Error("model.corrupt", std::string("malformed model parameters: ") + e.what());
  }
  return model;
}

}  // namespace bnsent::persistence
