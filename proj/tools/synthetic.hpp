#pragma once

#include <cstdint>
#include <filesystem>
#include <vector>

#include "wxsp/dataset.hpp"
#include "wxsp/features.hpp"
#include "wxsp/image.hpp"

namespace wxsp::synthetic {

// Procedural stand-in for a weather photo: a background of the category's
// dominant color with per-pixel jitter, plus a few random blobs in other
// colors covering a minority of the frame.
Image make_image(Category category, int width, int height, std::uint64_t seed);

// Dominant color for each category.
Rgb dominant_color(Category category);

// Writes `per_class` PNGs per category under dir/images and dir/manifest.csv.
// Returns the manifest path.
std::filesystem::path write_dataset(const std::filesystem::path& dir, int per_class,
                                    int width, int height, std::uint64_t seed);

// Uniform RGB noise, used by segmentation stress checks.
Image noise_image(int width, int height, std::uint64_t seed);

struct Blobs {
  std::vector<FeatureVector> positives;
  std::vector<FeatureVector> negatives;
};

// Two isotropic 2-D Gaussian clouds (sigma 0.5) around (2, 2) and (-2, -2),
// `per_class` points each, drawn with Box-Muller from mt19937_64.
Blobs gaussian_blobs(int per_class, std::uint64_t seed);

// Largest gap min_pos(u.x) - max_neg(u.x) over unit directions u sampled every
// 2*pi/steps radians. Positive means linearly separable along that u.
double best_separation_gap(const Blobs& blobs, int steps = 36000);

}  // namespace wxsp::synthetic
