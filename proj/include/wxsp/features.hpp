#pragma once

#include <filesystem>
#include <map>
#include <string>
#include <vector>

#include "wxsp/image.hpp"

namespace wxsp {

struct FeatureVector {
  std::string image_id;
  std::vector<double> values;
  bool normalized = false;
};

// Feature vectors of one extractor, keyed (and iterated) by image id.
struct FeatureSet {
  std::string extractor_name;
  std::size_t dimension = 0;
  std::map<std::string, FeatureVector> entries;

  // Errors: kDimensionInconsistency, kDuplicateId.
  void add(FeatureVector v);
  const FeatureVector& at(const std::string& image_id) const;
};

// Joint RGB histogram with bins^3 cells, summing to 1.
// Errors: kInvalidArgument when bins_per_channel < 2.
FeatureVector extract_color_histogram(const Image& img, int bins_per_channel = 8);

// Histogram-of-oriented-gradients style descriptor on Rec.601 luminance:
// central differences (edge pixels replicated), unsigned orientation in
// [0, pi) split into `orientation_bins`, magnitude-weighted votes pooled over a
// grid x grid layout of cells. Each cell histogram sums to 1, or is all zero
// when the cell has no gradient. Errors: kImageTooSmall below 8x8.
FeatureVector extract_gradient_histogram(const Image& img, int orientation_bins = 9,
                                         int grid = 4);

// Errors: kNonFiniteInput.
FeatureVector l2_normalize(const FeatureVector& v);

// Built-in extractors by name: "color_histogram", "gradient_histogram".
bool is_builtin_extractor(const std::string& name);
FeatureVector extract_builtin(const std::string& name, const Image& img);

// WXFEAT interchange format:
//   WXFEAT 1 <extractor_name> <dimension>
//   <image_id>,<v1>,...,<vd>
// Values use shortest round-trip decimal form. Rows are written in id order.
// Errors: kIoFailure, kMalformedHeader, kMalformedRow, kDimensionInconsistency,
// kDuplicateId.
void write_feature_file(const FeatureSet& set, const std::filesystem::path& path);
FeatureSet read_feature_file(const std::filesystem::path& path);

}  // namespace wxsp
