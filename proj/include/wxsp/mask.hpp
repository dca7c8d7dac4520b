#pragma once

#include <filesystem>
#include <string>
#include <vector>

#include "wxsp/image.hpp"
#include "wxsp/slic.hpp"

namespace wxsp {

struct OverlaySpec {
  Rgb color = {255, 255, 0};
  int superpixel_count = 0;  // 0 = raw image, no mask
  double compactness = 10.0;
};

// Paints `color` over every boundary pixel of `seg`. Errors: kDimensionMismatch.
Image apply_mask(const Image& img, const Segmentation& seg, Rgb color);

// Raw copy when spec.superpixel_count == 0, otherwise the image with the
// boundaries of a SLIC segmentation at that count painted in spec.color.
Image augment(const Image& img, const OverlaySpec& spec);

// Same as augment() but also reports the realized number of superpixels
// (0 for the raw path).
Image augment(const Image& img, const OverlaySpec& spec, int* realized_count);

// Output name for an augmented copy: "<stem>_sp<K>.png", or for K = 0 the
// original extension, since the raw setting copies the file bytes verbatim.
std::filesystem::path augmented_name(const std::filesystem::path& input, int k);

struct BatchFailure {
  std::filesystem::path input;
  std::string message;
};

struct BatchReport {
  std::vector<std::filesystem::path> written;
  std::vector<BatchFailure> failures;
  std::vector<int> realized_counts;  // one per written file
};

// Augments every input into out_dir, running up to `jobs` images at once.
// Per-file failures are collected, never thrown; out_dir is created if needed.
BatchReport augment_batch(const std::vector<std::filesystem::path>& inputs,
                          const OverlaySpec& spec, const std::filesystem::path& out_dir,
                          int jobs = 1);

}  // namespace wxsp
