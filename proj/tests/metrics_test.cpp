#include "wxsp/metrics.hpp"

#include <gtest/gtest.h>

#include <algorithm>
#include <cmath>
#include <numeric>
#include <random>

#include "support/ap_oracle.hpp"
#include "wxsp/error.hpp"

namespace wxsp {
namespace {

std::vector<RankedItem> ranking(std::initializer_list<std::pair<double, bool>> scored) {
  std::vector<RankedItem> items;
  for (const auto& [s, pos] : scored) {
    items.push_back({"i" + std::to_string(items.size()), s, pos});
  }
  return items;
}

ErrorCode ap_error(const std::vector<RankedItem>& items) {
  try {
    average_precision(items);
  } catch (const Error& e) {
    return e.code();
  }
  ADD_FAILURE() << "no error";
  return ErrorCode::kConfig;
}

TEST(AveragePrecision, PerfectRanking) {
  EXPECT_EQ(average_precision(ranking({{0.9, true}, {0.8, true}, {0.1, false}, {0.0, false}})),
            1.0);
}

TEST(AveragePrecision, HandExample) {
  const double ap = average_precision(ranking({{0.9, true}, {0.8, false}, {0.7, true}}));
  EXPECT_NEAR(ap, 0.5 * (1.0 + 2.0 / 3.0), 1e-15);
  EXPECT_NEAR(ap, 0.8333333333333333, 1e-15);
}

TEST(AveragePrecision, SinglePositiveLast) {
  for (int n = 2; n <= 12; ++n) {
    std::vector<RankedItem> items;
    for (int i = 0; i < n; ++i) items.push_back({"x", static_cast<double>(n - i), i == n - 1});
    EXPECT_DOUBLE_EQ(average_precision(items), 1.0 / n);
  }
}

TEST(AveragePrecision, TiesKeepInputOrder) {
  // Equal scores: the earlier item ranks first.
  EXPECT_EQ(average_precision(ranking({{0.5, true}, {0.5, false}})), 1.0);
  EXPECT_EQ(average_precision(ranking({{0.5, false}, {0.5, true}})), 0.5);
}

TEST(AveragePrecision, Errors) {
  EXPECT_EQ(ap_error(ranking({{1.0, false}, {0.0, false}})), ErrorCode::kNoPositives);
  EXPECT_EQ(ap_error(ranking({{1.0, true}})), ErrorCode::kNoNegatives);
  EXPECT_EQ(ap_error({}), ErrorCode::kNoPositives);
  EXPECT_EQ(ap_error(ranking({{NAN, true}, {0.0, false}})), ErrorCode::kNonFiniteInput);
}

TEST(AveragePrecision, MatchesStaircaseOracleExhaustively) {
  // Every labeling with both classes, every ordering of distinct scores, and
  // a tie-heavy score pattern, for n up to 6.
  for (int n = 2; n <= 6; ++n) {
    std::vector<int> perm(static_cast<std::size_t>(n));
    for (unsigned mask = 1; mask + 1 < (1u << n); ++mask) {
      std::iota(perm.begin(), perm.end(), 0);
      do {
        std::vector<RankedItem> items;
        std::vector<RankedItem> tied;
        for (int i = 0; i < n; ++i) {
          const bool pos = (mask >> i) & 1u;
          items.push_back({"", static_cast<double>(perm[static_cast<std::size_t>(i)]), pos});
          tied.push_back({"", static_cast<double>(perm[static_cast<std::size_t>(i)] / 2), pos});
        }
        ASSERT_NEAR(average_precision(items), testing::staircase_ap(items), 1e-12);
        ASSERT_NEAR(average_precision(tied), testing::staircase_ap(tied), 1e-12);
      } while (std::next_permutation(perm.begin(), perm.end()));
    }
  }
}

TEST(AveragePrecision, MatchesOracleOnRandomRankings) {
  std::mt19937_64 gen(99);
  std::uniform_real_distribution<double> score(-5.0, 5.0);
  for (int trial = 0; trial < 500; ++trial) {
    std::vector<RankedItem> items(50);
    for (auto& item : items) {
      item.score = trial % 2 ? std::round(score(gen)) : score(gen);
      item.is_positive = (gen() % 3) == 0;
    }
    items[0].is_positive = true;
    items[1].is_positive = false;
    ASSERT_NEAR(average_precision(items), testing::staircase_ap(items), 1e-12);
  }
}

TEST(AveragePrecision, InvariantUnderMonotoneTransforms) {
  std::mt19937_64 gen(4);
  std::normal_distribution<double> score(0.0, 1.0);
  for (int trial = 0; trial < 200; ++trial) {
    std::vector<RankedItem> items(30);
    for (auto& item : items) {
      item.score = score(gen);
      item.is_positive = gen() % 2;
    }
    items[0].is_positive = true;
    items[1].is_positive = false;
    const double ap = average_precision(items);
    auto transformed = items;
    for (auto& item : transformed) item.score = std::exp(3.0 * item.score) + 7.0;
    EXPECT_EQ(average_precision(transformed), ap);
    for (auto& item : transformed) item.score = std::atan(item.score * 0.01);
    EXPECT_EQ(average_precision(transformed), ap);
  }
}

TEST(MeanAveragePrecision, Examples) {
  EXPECT_EQ(mean_average_precision(
                {{"cloudy", 1.0}, {"foggy", 1.0}, {"rainy", 1.0}, {"snowy", 1.0}, {"sunny", 1.0}}),
            1.0);
  EXPECT_DOUBLE_EQ(mean_average_precision({{"a", 0.8}, {"b", 0.6}}), 0.7);
  try {
    mean_average_precision({});
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::kEmptyInput);
  }
  EXPECT_THROW(mean_average_precision({{"a", 1.5}}), Error);
}

TEST(MeanAveragePrecision, WithinPerCategoryBounds) {
  std::mt19937_64 gen(12);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  for (int trial = 0; trial < 300; ++trial) {
    std::map<std::string, double> aps;
    const int k = 1 + trial % 5;
    for (int i = 0; i < k; ++i) aps["c" + std::to_string(i)] = u(gen);
    const double m = mean_average_precision(aps);
    double lo = 1.0, hi = 0.0;
    for (const auto& [c, v] : aps) {
      lo = std::min(lo, v);
      hi = std::max(hi, v);
    }
    EXPECT_GE(m, lo - 1e-15);
    EXPECT_LE(m, hi + 1e-15);
  }
}

}  // namespace
}  // namespace wxsp
