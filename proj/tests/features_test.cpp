#include "wxsp/features.hpp"

#include <gtest/gtest.h>

#include <cmath>
#include <numeric>
#include <random>

#include "synthetic.hpp"
#include "wxsp/error.hpp"
#include "wxsp/rng.hpp"

namespace wxsp {
namespace {

double sum(const std::vector<double>& v) { return std::accumulate(v.begin(), v.end(), 0.0); }

std::size_t color_bin(Rgb c, std::size_t bins) {
  return ((c[0] * bins / 256) * bins + c[1] * bins / 256) * bins + c[2] * bins / 256;
}

TEST(ColorHistogram, UniformRedFillsOneBin) {
  const FeatureVector f = extract_color_histogram(Image(10, 6, Rgb{255, 0, 0}));
  ASSERT_EQ(f.values.size(), 512u);
  // r bin 7, g bin 0, b bin 0.
  EXPECT_EQ(color_bin({255, 0, 0}, 8), 448u);
  for (std::size_t i = 0; i < f.values.size(); ++i) {
    EXPECT_EQ(f.values[i], i == 448 ? 1.0 : 0.0) << i;
  }
  EXPECT_FALSE(f.normalized);
}

TEST(ColorHistogram, HalfRedHalfBlue) {
  Image img(8, 4, Rgb{255, 0, 0});
  for (int y = 0; y < 4; ++y) {
    for (int x = 4; x < 8; ++x) img.set(x, y, {0, 0, 255});
  }
  const FeatureVector f = extract_color_histogram(img);
  EXPECT_EQ(f.values[color_bin({255, 0, 0}, 8)], 0.5);
  EXPECT_EQ(f.values[color_bin({0, 0, 255}, 8)], 0.5);
  EXPECT_EQ(sum(f.values), 1.0);
}

TEST(ColorHistogram, CornerBinsWithTwoBins) {
  Image img(2, 1, Rgb{0, 0, 0});
  img.set(1, 0, {255, 255, 255});
  const FeatureVector f = extract_color_histogram(img, 2);
  ASSERT_EQ(f.values.size(), 8u);
  EXPECT_EQ(f.values, (std::vector<double>{0.5, 0, 0, 0, 0, 0, 0, 0.5}));
}

TEST(ColorHistogram, RejectsSingleBin) {
  EXPECT_THROW(extract_color_histogram(Image(2, 2, Rgb{0, 0, 0}), 1), Error);
}

TEST(ColorHistogram, MassIsOneAndPermutationInvariant) {
  for (std::uint64_t seed = 0; seed < 10; ++seed) {
    const Image img = synthetic::noise_image(23, 17, seed);
    const FeatureVector f = extract_color_histogram(img);
    EXPECT_NEAR(sum(f.values), 1.0, 1e-12);

    std::vector<Rgb> pixels;
    for (int y = 0; y < img.height(); ++y) {
      for (int x = 0; x < img.width(); ++x) pixels.push_back(img.at(x, y));
    }
    Rng rng(seed);
    shuffle(std::span<Rgb>(pixels), rng);
    Image shuffled(23, 17, Rgb{0, 0, 0});
    for (std::size_t i = 0; i < pixels.size(); ++i) {
      shuffled.set(static_cast<int>(i % 23), static_cast<int>(i / 23), pixels[i]);
    }
    EXPECT_EQ(extract_color_histogram(shuffled).values, f.values);
  }
}

TEST(GradientHistogram, UniformImageIsZero) {
  const FeatureVector f = extract_gradient_histogram(Image(32, 24, Rgb{70, 80, 90}));
  ASSERT_EQ(f.values.size(), 144u);
  for (const double v : f.values) EXPECT_EQ(v, 0.0);
}

TEST(GradientHistogram, VerticalStepEdge) {
  // 16x16, black for x < 8 and white for x >= 8. Central differences are
  // nonzero only at x = 7 and x = 8 (gx = 255, gy = 0, orientation 0), which
  // fall in cell columns 7*4/16 = 1 and 8*4/16 = 2.
  Image img(16, 16, Rgb{0, 0, 0});
  for (int y = 0; y < 16; ++y) {
    for (int x = 8; x < 16; ++x) img.set(x, y, {255, 255, 255});
  }
  const FeatureVector f = extract_gradient_histogram(img);
  for (int cy = 0; cy < 4; ++cy) {
    for (int cx = 0; cx < 4; ++cx) {
      for (int b = 0; b < 9; ++b) {
        const double want = (b == 0 && (cx == 1 || cx == 2)) ? 1.0 : 0.0;
        EXPECT_NEAR(f.values[static_cast<std::size_t>((cy * 4 + cx) * 9 + b)], want, 1e-12)
            << "cell " << cx << "," << cy << " bin " << b;
      }
    }
  }
}

TEST(GradientHistogram, HorizontalEdgeUsesMiddleBin) {
  // Gradient along +y gives orientation pi/2, bin floor(0.5 * 9) = 4.
  Image img(16, 16, Rgb{0, 0, 0});
  for (int y = 8; y < 16; ++y) {
    for (int x = 0; x < 16; ++x) img.set(x, y, {200, 200, 200});
  }
  const FeatureVector f = extract_gradient_histogram(img);
  for (int cx = 0; cx < 4; ++cx) {
    for (const int cy : {1, 2}) {
      EXPECT_NEAR(f.values[static_cast<std::size_t>((cy * 4 + cx) * 9 + 4)], 1.0, 1e-12);
    }
  }
}

TEST(GradientHistogram, CellsAreMassNormalized) {
  const FeatureVector f = extract_gradient_histogram(synthetic::noise_image(40, 33, 2));
  for (std::size_t c = 0; c < 16; ++c) {
    const std::vector<double> cell(f.values.begin() + static_cast<long>(c * 9),
                                   f.values.begin() + static_cast<long>(c * 9 + 9));
    EXPECT_NEAR(sum(cell), 1.0, 1e-12);
  }
}

TEST(GradientHistogram, TooSmall) {
  try {
    extract_gradient_histogram(Image(4, 4, Rgb{0, 0, 0}));
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::kImageTooSmall);
  }
  EXPECT_THROW(extract_gradient_histogram(Image(8, 7, Rgb{0, 0, 0})), Error);
  EXPECT_NO_THROW(extract_gradient_histogram(Image(8, 8, Rgb{0, 0, 0})));
}

TEST(L2Normalize, ThreeFour) {
  const FeatureVector f = l2_normalize({"x", {3.0, 4.0}, false});
  EXPECT_EQ(f.image_id, "x");
  EXPECT_NEAR(f.values[0], 0.6, 1e-15);
  EXPECT_NEAR(f.values[1], 0.8, 1e-15);
  EXPECT_TRUE(f.normalized);
}

TEST(L2Normalize, ZeroVectorStaysZero) {
  const FeatureVector f = l2_normalize({"z", {0.0, 0.0, 0.0}, false});
  EXPECT_EQ(f.values, (std::vector<double>{0, 0, 0}));
  EXPECT_FALSE(f.normalized);
}

TEST(L2Normalize, NonFinite) {
  try {
    l2_normalize({"n", {1.0, std::nan("")}, false});
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::kNonFiniteInput);
  }
  EXPECT_THROW(l2_normalize({"i", {INFINITY}, false}), Error);
}

TEST(L2Normalize, UnitNormIdempotentSameDirection) {
  std::mt19937_64 gen(5);
  std::normal_distribution<double> dist(0.0, 3.0);
  for (int trial = 0; trial < 200; ++trial) {
    FeatureVector v{"r", std::vector<double>(1 + trial % 40), false};
    for (double& x : v.values) x = dist(gen);
    const FeatureVector once = l2_normalize(v);
    const FeatureVector twice = l2_normalize(once);
    double norm = 0.0, dot = 0.0, vnorm = 0.0;
    for (std::size_t i = 0; i < v.values.size(); ++i) {
      norm += once.values[i] * once.values[i];
      dot += once.values[i] * v.values[i];
      vnorm += v.values[i] * v.values[i];
      EXPECT_NEAR(twice.values[i], once.values[i], 1e-12);
    }
    EXPECT_NEAR(std::sqrt(norm), 1.0, 1e-12);
    EXPECT_NEAR(dot / std::sqrt(vnorm), 1.0, 1e-9);
  }
}

TEST(FeatureSet, EnforcesDimensionAndUniqueness) {
  FeatureSet set{"h", 2, {}};
  set.add({"a", {1, 2}, false});
  try {
    set.add({"b", {1}, false});
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::kDimensionInconsistency);
  }
  try {
    set.add({"a", {3, 4}, false});
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::kDuplicateId);
  }
  EXPECT_EQ(set.at("a").values, (std::vector<double>{1, 2}));
  EXPECT_THROW(set.at("missing"), Error);
}

TEST(Builtin, Names) {
  EXPECT_TRUE(is_builtin_extractor("color_histogram"));
  EXPECT_TRUE(is_builtin_extractor("gradient_histogram"));
  EXPECT_FALSE(is_builtin_extractor("resnet50"));
  const Image img(16, 16, Rgb{1, 2, 3});
  EXPECT_EQ(extract_builtin("color_histogram", img).values.size(), 512u);
  EXPECT_EQ(extract_builtin("gradient_histogram", img).values.size(), 144u);
  EXPECT_THROW(extract_builtin("vgg16", img), Error);
}

}  // namespace
}  // namespace wxsp
