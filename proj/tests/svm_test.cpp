#include "wxsp/svm.hpp"

#include <gtest/gtest.h>

#include <cmath>

#include "support/test_util.hpp"
#include "synthetic.hpp"
#include "wxsp/error.hpp"

namespace wxsp {
namespace {

// Frozen oracle: with seed 7 the blobs are linearly separable with a gap of
// about 3.38 along the best sampled direction.
constexpr std::uint64_t kBlobSeed = 7;

double accuracy(const LinearModel& m, const synthetic::Blobs& b) {
  int ok = 0;
  for (const auto& p : b.positives) ok += score(m, p) > 0 ? 1 : 0;
  for (const auto& n : b.negatives) ok += score(m, n) < 0 ? 1 : 0;
  return ok / static_cast<double>(b.positives.size() + b.negatives.size());
}

ErrorCode train_error(std::span<const FeatureVector> pos, std::span<const FeatureVector> neg,
                      const TrainConfig& cfg = {}) {
  try {
    train(pos, neg, cfg);
  } catch (const Error& e) {
    return e.code();
  }
  ADD_FAILURE() << "no error";
  return ErrorCode::kConfig;
}

TEST(Train, SymmetricPair) {
  const std::vector<FeatureVector> pos{{"p", {1.0, 0.0}, false}};
  const std::vector<FeatureVector> neg{{"n", {-1.0, 0.0}, false}};
  const LinearModel m = train(pos, neg, TrainConfig{}, "sunny");
  EXPECT_EQ(m.category, "sunny");
  EXPECT_EQ(m.bias, 0.0);
  EXPECT_GT(m.weights[0], 0.0);
  EXPECT_EQ(m.weights[1], 0.0);
  EXPECT_GT(score(m, pos[0]), 0.0);
  EXPECT_LT(score(m, neg[0]), 0.0);
  EXPECT_EQ(m.lambda, 1e-4);
}

TEST(Train, BlobDatasetIsSeparableOracle) {
  const auto blobs = synthetic::gaussian_blobs(100, kBlobSeed);
  ASSERT_EQ(blobs.positives.size(), 100u);
  EXPECT_GE(synthetic::best_separation_gap(blobs), 2.0);
}

TEST(Train, BlobsReachPerfectAccuracy) {
  const auto blobs = synthetic::gaussian_blobs(100, kBlobSeed);
  std::vector<double> per_epoch;
  const LinearModel m = train(blobs.positives, blobs.negatives, TrainConfig{}, "x", &per_epoch);
  EXPECT_EQ(accuracy(m, blobs), 1.0);
  ASSERT_EQ(per_epoch.size(), 30u);
  EXPECT_LE(per_epoch.back(), per_epoch.front());
  EXPECT_LT(m.final_objective, 1.0);
  EXPECT_EQ(m.final_objective, per_epoch.back());
  EXPECT_EQ(m.final_objective, objective(m, blobs.positives, blobs.negatives));
}

TEST(Train, OtherBlobSeedsAlsoSeparate) {
  for (std::uint64_t seed = 1; seed <= 5; ++seed) {
    const auto blobs = synthetic::gaussian_blobs(100, seed);
    ASSERT_GE(synthetic::best_separation_gap(blobs), 2.0) << seed;
    TrainConfig cfg;
    cfg.seed = seed;
    const LinearModel m = train(blobs.positives, blobs.negatives, cfg);
    EXPECT_EQ(accuracy(m, blobs), 1.0) << seed;
    EXPECT_LT(m.final_objective, 1.0) << seed;
  }
}

TEST(Train, Deterministic) {
  const auto blobs = synthetic::gaussian_blobs(50, 3);
  const LinearModel a = train(blobs.positives, blobs.negatives, TrainConfig{});
  const LinearModel b = train(blobs.positives, blobs.negatives, TrainConfig{});
  EXPECT_EQ(a.weights, b.weights);
  EXPECT_EQ(a.bias, b.bias);
  EXPECT_EQ(a.final_objective, b.final_objective);

  TrainConfig other;
  other.seed = 43;
  const LinearModel c = train(blobs.positives, blobs.negatives, other);
  EXPECT_NE(a.weights, c.weights);
}

TEST(Train, LabelSwapNegatesSymmetricScores) {
  const std::vector<FeatureVector> a{{"a", {1.0, 0.0}, false}};
  const std::vector<FeatureVector> b{{"b", {-1.0, 0.0}, false}};
  const LinearModel m = train(a, b, TrainConfig{});
  const LinearModel swapped = train(b, a, TrainConfig{});
  for (const auto& x : {a[0], b[0]}) {
    EXPECT_EQ(score(swapped, x), -score(m, x));
  }
}

TEST(Train, LabelSwapMirrorsWeightsForAntipodalData) {
  // Swapping classes of point-mirrored data replays the same updates with
  // x -> -x, so w flips sign and b is unchanged.
  const std::vector<FeatureVector> a{{"a", {2.0, 1.0}, false}, {"c", {1.0, 3.0}, false}};
  const std::vector<FeatureVector> b{{"b", {-2.0, -1.0}, false}, {"d", {-1.0, -3.0}, false}};
  const LinearModel m = train(a, b, TrainConfig{});
  const LinearModel swapped = train(b, a, TrainConfig{});
  ASSERT_EQ(m.weights.size(), 2u);
  EXPECT_EQ(swapped.weights[0], -m.weights[0]);
  EXPECT_EQ(swapped.weights[1], -m.weights[1]);
  EXPECT_EQ(swapped.bias, m.bias);
}

TEST(Train, Errors) {
  const std::vector<FeatureVector> pos{{"p", {1.0, 0.0}, false}};
  const std::vector<FeatureVector> neg{{"n", {-1.0, 0.0}, false}};
  const std::vector<FeatureVector> none;
  EXPECT_EQ(train_error(none, neg), ErrorCode::kEmptyClass);
  EXPECT_EQ(train_error(pos, none), ErrorCode::kEmptyClass);
  const std::vector<FeatureVector> short_neg{{"n", {-1.0}, false}};
  EXPECT_EQ(train_error(pos, short_neg), ErrorCode::kDimensionMismatch);
  const std::vector<FeatureVector> nan_neg{{"n", {NAN, 0.0}, false}};
  EXPECT_EQ(train_error(pos, nan_neg), ErrorCode::kNonFiniteInput);
  TrainConfig bad;
  bad.lambda = 0.0;
  EXPECT_EQ(train_error(pos, neg, bad), ErrorCode::kInvalidArgument);
  bad = {};
  bad.epochs = 0;
  EXPECT_EQ(train_error(pos, neg, bad), ErrorCode::kInvalidArgument);
}

TEST(Score, Examples) {
  LinearModel constant{"c", {0.0, 0.0, 0.0}, 0.5, 1e-4, 0.0};
  EXPECT_EQ(score(constant, std::vector<double>{1, -7, 3}), 0.5);
  EXPECT_EQ(score(constant, std::vector<double>{0, 0, 0}), 0.5);
  LinearModel m{"m", {1.0, 2.0}, 0.0, 1e-4, 0.0};
  EXPECT_EQ(score(m, std::vector<double>{3, 4}), 11.0);
  try {
    score(m, std::vector<double>{1, 2, 3});
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::kDimensionMismatch);
  }
}

TEST(Objective, Examples) {
  const std::vector<FeatureVector> pos{{"p", {1.0, 2.0}, false}, {"q", {0.5, 0.5}, false}};
  const std::vector<FeatureVector> neg{{"n", {-3.0, 1.0}, false}};
  const LinearModel zero{"z", {0.0, 0.0}, 0.0, 1e-4, 0.0};
  EXPECT_EQ(objective(zero, pos, neg), 1.0);

  // All margins >= 1: only the regularizer remains.
  const LinearModel sep{"s", {2.0, 0.0}, 1.0, 0.01, 0.0};
  EXPECT_DOUBLE_EQ(objective(sep, pos, neg), 0.5 * 0.01 * 4.0);

  // One example with margin 0.25 contributes 0.75.
  const std::vector<FeatureVector> one{{"o", {0.25}, false}};
  const LinearModel unit{"u", {1.0}, 0.0, 0.0, 0.0};
  EXPECT_EQ(objective(unit, one, {}), 0.75);
}

TEST(ModelJson, RoundTrip) {
  testing::TempDir dir;
  const auto blobs = synthetic::gaussian_blobs(20, 9);
  const LinearModel m = train(blobs.positives, blobs.negatives, TrainConfig{}, "foggy");
  save_model(m, dir / "m.json");
  const LinearModel back = load_model(dir / "m.json");
  EXPECT_EQ(back.category, "foggy");
  EXPECT_EQ(back.weights, m.weights);
  EXPECT_EQ(back.bias, m.bias);
  EXPECT_EQ(back.lambda, m.lambda);
  EXPECT_EQ(back.final_objective, m.final_objective);
  EXPECT_THROW(model_from_json("{\"category\": 1}"), Error);
  EXPECT_THROW(load_model(dir / "absent.json"), Error);
}

}  // namespace
}  // namespace wxsp
