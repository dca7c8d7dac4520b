#include "wxsp/svm.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <numeric>
#include <sstream>

#include <json.hpp>

#include "wxsp/error.hpp"
#include "wxsp/rng.hpp"

namespace wxsp {
namespace {

double dot(std::span<const double> a, std::span<const double> b) {
  double s = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
  return s;
}

void check_examples(std::span<const FeatureVector> examples, std::size_t dim,
                    const char* side) {
  for (const auto& x : examples) {
    if (x.values.size() != dim) {
      throw Error(ErrorCode::kDimensionMismatch,
                  std::string(side) + " example '" + x.image_id + "' has " +
                      std::to_string(x.values.size()) + " values, expected " +
                      std::to_string(dim));
    }
    for (const double v : x.values) {
      if (!std::isfinite(v)) {
        throw Error(ErrorCode::kNonFiniteInput, std::string(side) + " example '" +
                                                    x.image_id + "'");
      }
    }
  }
}

}  // namespace

LinearModel train(std::span<const FeatureVector> positives,
                  std::span<const FeatureVector> negatives, const TrainConfig& cfg,
                  const std::string& category) {
  return train(positives, negatives, cfg, category, nullptr);
}

LinearModel train(std::span<const FeatureVector> positives,
                  std::span<const FeatureVector> negatives, const TrainConfig& cfg,
                  const std::string& category, std::vector<double>* epoch_objectives) {
  if (positives.empty()) throw Error(ErrorCode::kEmptyClass, "no positive examples");
  if (negatives.empty()) throw Error(ErrorCode::kEmptyClass, "no negative examples");
  if (!(cfg.lambda > 0.0) || !std::isfinite(cfg.lambda)) {
    throw Error(ErrorCode::kInvalidArgument, "lambda must be positive");
  }
  if (cfg.epochs < 1) throw Error(ErrorCode::kInvalidArgument, "epochs must be >= 1");

  const std::size_t dim = positives.front().values.size();
  check_examples(positives, dim, "positive");
  check_examples(negatives, dim, "negative");

  const std::size_t n = positives.size() + negatives.size();
  auto example = [&](std::size_t i) -> const FeatureVector& {
    return i < positives.size() ? positives[i] : negatives[i - positives.size()];
  };

  LinearModel model;
  model.category = category;
  model.lambda = cfg.lambda;
  model.weights.assign(dim, 0.0);

  std::vector<std::size_t> order(n);
  double t = 0.0;
  for (int epoch = 1; epoch <= cfg.epochs; ++epoch) {
    std::iota(order.begin(), order.end(), std::size_t{0});
    Rng rng(derive_seed(cfg.seed, "epoch/" + std::to_string(epoch)));
    shuffle(std::span<std::size_t>(order), rng);

    for (const std::size_t i : order) {
      t += 1.0;
      const FeatureVector& x = example(i);
      const double y = i < positives.size() ? 1.0 : -1.0;
      const double eta = 1.0 / (cfg.lambda * t);
      const double margin = y * (dot(model.weights, x.values) + model.bias);
      const double shrink = 1.0 - eta * cfg.lambda;
      for (double& w : model.weights) w *= shrink;
      model.bias *= shrink;
      if (margin < 1.0) {
        for (std::size_t j = 0; j < dim; ++j) model.weights[j] += eta * y * x.values[j];
        model.bias += eta * y;
      }
    }
    if (epoch_objectives) epoch_objectives->push_back(objective(model, positives, negatives));
  }
  model.final_objective = objective(model, positives, negatives);
  return model;
}

double score(const LinearModel& model, std::span<const double> x) {
  if (x.size() != model.weights.size()) {
    throw Error(ErrorCode::kDimensionMismatch,
                "model has " + std::to_string(model.weights.size()) +
                    " weights, input has " + std::to_string(x.size()) + " values");
  }
  return dot(model.weights, x) + model.bias;
}

double score(const LinearModel& model, const FeatureVector& x) {
  return score(model, std::span<const double>(x.values));
}

double objective(const LinearModel& model, std::span<const FeatureVector> positives,
                 std::span<const FeatureVector> negatives) {
  const std::size_t n = positives.size() + negatives.size();
  if (n == 0) throw Error(ErrorCode::kEmptyInput, "objective over no examples");
  double hinge = 0.0;
  for (const auto& x : positives) hinge += std::max(0.0, 1.0 - score(model, x));
  for (const auto& x : negatives) hinge += std::max(0.0, 1.0 + score(model, x));
  const double sq = dot(model.weights, model.weights);
  return 0.5 * model.lambda * sq + hinge / static_cast<double>(n);
}

std::string model_to_json(const LinearModel& model) {
  nlohmann::ordered_json doc;
  doc["category"] = model.category;
  doc["lambda"] = model.lambda;
  doc["bias"] = model.bias;
  doc["final_objective"] = model.final_objective;
  doc["weights"] = model.weights;
  return doc.dump(2) + "\n";
}

LinearModel model_from_json(const std::string& text) {
  try {
    const auto doc = nlohmann::json::parse(text);
    LinearModel model;
    model.category = doc.at("category").get<std::string>();
    model.lambda = doc.at("lambda").get<double>();
    model.bias = doc.at("bias").get<double>();
    model.final_objective = doc.at("final_objective").get<double>();
    model.weights = doc.at("weights").get<std::vector<double>>();
    return model;
  } catch (const nlohmann::json::exception& e) {
    throw Error(ErrorCode::kMalformedRow, std::string("model JSON: ") + e.what());
  }
}

void save_model(const LinearModel& model, const std::filesystem::path& path) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw Error(ErrorCode::kIoFailure, "cannot open " + path.string());
  out << model_to_json(model);
  if (!out) throw Error(ErrorCode::kIoFailure, "write failed for " + path.string());
}

LinearModel load_model(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorCode::kFileNotFound, path.string());
  std::stringstream buf;
  buf << in.rdbuf();
  return model_from_json(buf.str());
}

}  // namespace wxsp
