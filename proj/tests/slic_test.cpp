#include "wxsp/slic.hpp"

#include <gtest/gtest.h>

#include <map>
#include <set>

#include "support/seg_checks.hpp"
#include "synthetic.hpp"
#include "wxsp/error.hpp"

namespace wxsp {
namespace {

Segmentation segment(const Image& img, int k, bool connectivity = true) {
  SlicParams p;
  p.target_count = k;
  p.enforce_connectivity = connectivity;
  return slic_segment(rgb_to_lab(img), p);
}

TEST(Slic, UniformImageSplitsIntoFourBlocks) {
  const Segmentation seg = segment(Image(100, 100, Rgb{90, 140, 60}), 4);
  ASSERT_EQ(seg.segment_count, 4);
  // Up to relabeling: every 50x50 quadrant carries one label, all distinct.
  std::map<int, std::int32_t> quadrant_label;
  for (int y = 0; y < 100; ++y) {
    for (int x = 0; x < 100; ++x) {
      const int q = (y / 50) * 2 + x / 50;
      const auto [it, inserted] = quadrant_label.emplace(q, seg.at(x, y));
      ASSERT_EQ(it->second, seg.at(x, y)) << "pixel " << x << "," << y;
    }
  }
  std::set<std::int32_t> distinct;
  for (const auto& [q, label] : quadrant_label) distinct.insert(label);
  EXPECT_EQ(distinct.size(), 4u);
}

TEST(Slic, RedBlueHalvesGiveTwoSegments) {
  // Hand trace: K=2 on 64x64 gives a 2x1 grid, centers at (16, 32) and
  // (48, 32) inside flat regions (zero gradient, no perturbation). Lab
  // distance red-blue is ~176 while the spatial term is at most
  // (|(64, 32)| / 45.25) * 10 ~ 15.8, so each half joins its own center and
  // the means never move across the edge.
  Image img(64, 64, Rgb{255, 0, 0});
  for (int y = 0; y < 64; ++y) {
    for (int x = 32; x < 64; ++x) img.set(x, y, {0, 0, 255});
  }
  const Segmentation seg = segment(img, 2);
  ASSERT_EQ(seg.segment_count, 2);
  for (int y = 0; y < 64; ++y) {
    for (int x = 0; x < 64; ++x) {
      EXPECT_EQ(seg.at(x, y), seg.at(x < 32 ? 0 : 63, 0)) << x << "," << y;
    }
  }
  EXPECT_NE(seg.at(0, 0), seg.at(63, 0));
}

TEST(Slic, OneTargetPerPixelCompletes) {
  const Image img = synthetic::noise_image(6, 5, 1);
  const Segmentation seg = segment(img, 30);
  EXPECT_EQ(testing::check_partition(seg), "");
  EXPECT_LE(seg.segment_count, 30);
  EXPECT_GE(seg.segment_count, 1);
}

TEST(Slic, SingleSuperpixel) {
  const Segmentation seg = segment(synthetic::noise_image(13, 9, 2), 1);
  EXPECT_EQ(seg.segment_count, 1);
  EXPECT_EQ(testing::check_partition(seg), "");
}

TEST(Slic, RejectsBadParameters) {
  const LabImage lab = rgb_to_lab(Image(4, 4));
  SlicParams p;
  p.target_count = 17;
  try {
    slic_segment(lab, p);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::kTargetCountExceedsPixels);
  }
  p.target_count = 0;
  EXPECT_THROW(slic_segment(lab, p), Error);
  p.target_count = 4;
  p.compactness = 0.0;
  EXPECT_THROW(slic_segment(lab, p), Error);
  p.compactness = 10.0;
  p.max_iterations = 0;
  EXPECT_THROW(slic_segment(lab, p), Error);
}

TEST(Slic, NoiseImagesSatisfyInvariants) {
  for (std::uint64_t seed = 0; seed < 6; ++seed) {
    const Image img = synthetic::noise_image(128, 128, 100 + seed);
    for (const int k : {25, 50, 75, 100}) {
      const Segmentation seg = segment(img, k);
      EXPECT_EQ(testing::check_partition(seg), "") << "seed " << seed << " K " << k;
      EXPECT_EQ(testing::disconnected_segments(seg), 0) << "seed " << seed << " K " << k;
      EXPECT_GE(seg.segment_count, k / 2) << "seed " << seed << " K " << k;
      EXPECT_LE(seg.segment_count, 2 * k) << "seed " << seed << " K " << k;
    }
  }
}

TEST(Slic, NonSquareImages) {
  for (const auto& [w, h] : std::vector<std::pair<int, int>>{{97, 41}, {30, 120}, {1, 50}}) {
    const Image img = synthetic::noise_image(w, h, 9);
    for (const int k : {1, 3, 10, 25}) {
      const Segmentation seg = segment(img, k);
      EXPECT_EQ(testing::check_partition(seg), "") << w << "x" << h << " K " << k;
      EXPECT_EQ(testing::disconnected_segments(seg), 0) << w << "x" << h << " K " << k;
      EXPECT_LE(seg.segment_count, 2 * k) << w << "x" << h << " K " << k;
    }
  }
}

TEST(Slic, WithoutConnectivityLabelsAreCenterIndices) {
  const Segmentation seg = segment(synthetic::noise_image(40, 40, 4), 16, false);
  EXPECT_EQ(testing::check_partition(seg), "");
  EXPECT_LE(seg.segment_count, 16);
}

TEST(Slic, Deterministic) {
  const Image img = synthetic::make_image(Category::kRainy, 80, 60, 12);
  const Segmentation a = segment(img, 50);
  const Segmentation b = segment(img, 50);
  EXPECT_EQ(a.labels, b.labels);
  EXPECT_EQ(a.segment_count, b.segment_count);
}

TEST(Slic, BoundaryCountGrowsWithK) {
  std::map<int, double> mean_boundary;
  constexpr int kSeeds = 20;
  for (int seed = 0; seed < kSeeds; ++seed) {
    const Image img = synthetic::noise_image(64, 64, 500 + static_cast<std::uint64_t>(seed));
    for (const int k : {25, 50, 75, 100}) {
      mean_boundary[k] += static_cast<double>(testing::count_true(boundary_map(segment(img, k)))) / kSeeds;
    }
  }
  EXPECT_LT(mean_boundary[25], mean_boundary[50]);
  EXPECT_LT(mean_boundary[50], mean_boundary[75]);
  EXPECT_LT(mean_boundary[75], mean_boundary[100]);
}

Segmentation make_seg(int w, int h, std::vector<std::int32_t> labels, int count) {
  return Segmentation{w, h, std::move(labels), count};
}

TEST(BoundaryMap, SingleSegmentHasNoBoundary) {
  const auto map = boundary_map(make_seg(5, 3, std::vector<std::int32_t>(15, 0), 1));
  EXPECT_EQ(testing::count_true(map), 0u);
}

TEST(BoundaryMap, VerticalSplitMarksColumnOne) {
  std::vector<std::int32_t> labels(16);
  for (int y = 0; y < 4; ++y) {
    for (int x = 0; x < 4; ++x) labels[static_cast<std::size_t>(y * 4 + x)] = x < 2 ? 0 : 1;
  }
  const auto map = boundary_map(make_seg(4, 4, labels, 2));
  for (int y = 0; y < 4; ++y) {
    for (int x = 0; x < 4; ++x) EXPECT_EQ(map[static_cast<std::size_t>(y * 4 + x)], x == 1);
  }
}

TEST(BoundaryMap, FourDistinctLabels) {
  const auto map = boundary_map(make_seg(2, 2, {0, 1, 2, 3}, 4));
  EXPECT_TRUE(map[0]);   // (0,0)
  EXPECT_TRUE(map[1]);   // (1,0)
  EXPECT_TRUE(map[2]);   // (0,1)
  EXPECT_FALSE(map[3]);  // (1,1)
}

TEST(RenderSegmentation, ColorsFollowLabels) {
  const auto seg = make_seg(2, 1, {0, 1}, 2);
  const Image img = render_segmentation(seg);
  EXPECT_EQ(img.at(0, 0), label_color(0));
  EXPECT_EQ(img.at(1, 0), label_color(1));
  EXPECT_NE(label_color(0), label_color(1));
}

}  // namespace
}  // namespace wxsp
