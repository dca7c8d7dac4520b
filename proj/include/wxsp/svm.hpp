#pragma once

#include <cstdint>
#include <filesystem>
#include <span>
#include <string>
#include <vector>

#include "wxsp/features.hpp"

namespace wxsp {

struct TrainConfig {
  double lambda = 1e-4;
  int epochs = 30;
  std::uint64_t seed = 42;
};

struct LinearModel {
  std::string category;
  std::vector<double> weights;
  double bias = 0.0;
  double lambda = 0.0;
  double final_objective = 0.0;
};

// Binary linear SVM trained by stochastic subgradient descent on
//   (lambda / 2) |w|^2 + (1 / n) sum_i max(0, 1 - y_i (w . x_i + b)).
//
// Examples are indexed positives first, then negatives. Epoch e (1-based)
// visits them in a Fisher-Yates permutation drawn from an mt19937_64 seeded
// with derive_seed(cfg.seed, "epoch/<e>"). At global step t the step size is
// 1 / (lambda t); the margin is measured with the current iterate, (w, b) is
// shrunk by (1 - 1/t), and on a margin violation w += eta y x, b += eta y.
// The bias behaves as a constant-1 feature in the update: left unshrunk, the
// early 1/lambda-sized steps leave it orders of magnitude off. The reported
// objective still excludes it. The final iterate is returned.
//
// Errors: kEmptyClass, kDimensionMismatch, kNonFiniteInput, kInvalidArgument.
LinearModel train(std::span<const FeatureVector> positives,
                  std::span<const FeatureVector> negatives, const TrainConfig& cfg,
                  const std::string& category = "");

// Same, additionally recording the objective at the end of every epoch.
LinearModel train(std::span<const FeatureVector> positives,
                  std::span<const FeatureVector> negatives, const TrainConfig& cfg,
                  const std::string& category, std::vector<double>* epoch_objectives);

// w . x + b. Errors: kDimensionMismatch.
double score(const LinearModel& model, std::span<const double> x);
double score(const LinearModel& model, const FeatureVector& x);

// Regularized hinge objective of `model` with its own lambda.
double objective(const LinearModel& model, std::span<const FeatureVector> positives,
                 std::span<const FeatureVector> negatives);

// JSON: {"category", "lambda", "bias", "final_objective", "weights": [...]}.
std::string model_to_json(const LinearModel& model);
LinearModel model_from_json(const std::string& text);
void save_model(const LinearModel& model, const std::filesystem::path& path);
LinearModel load_model(const std::filesystem::path& path);

}  // namespace wxsp
