#pragma once

#include <filesystem>
#include <map>
#include <ostream>
#include <string>
#include <vector>

#include "wxsp/dataset.hpp"
#include "wxsp/features.hpp"
#include "wxsp/image.hpp"
#include "wxsp/results.hpp"
#include "wxsp/svm.hpp"

namespace wxsp {

struct PartitionedDataset {
  std::vector<ImageRecord> records;
  std::vector<CategoryPartition> partitions;
};

// A table row. Either a built-in extractor run on the augmented images, or
// externally computed features read from WXFEAT files; "{K}" in the template
// is replaced by the superpixel setting.
struct ExtractorSpec {
  std::string name;
  std::string builtin;
  std::filesystem::path feature_template;

  static ExtractorSpec from_builtin(const std::string& name);
  static ExtractorSpec from_file(const std::string& name, std::filesystem::path tmpl);
  bool is_builtin() const { return !builtin.empty(); }
  std::filesystem::path feature_file(int setting) const;
};

struct ExperimentConfig {
  std::vector<int> settings = {0, 25, 50, 75, 100};
  std::vector<ExtractorSpec> extractors;
  // lambda and epochs apply to every classifier; the per-category solver seed
  // is derive_seed(train.seed, "svm/<category>").
  TrainConfig train;
  Rgb mask_color = {255, 255, 0};
  double compactness = 10.0;
  bool normalize_features = true;
  int jobs = 1;
};

struct CellResult {
  std::string model;
  int setting = 0;
  std::map<std::string, double> category_ap;
  double map = 0.0;
};

struct SegmentationStats {
  int setting = 0;
  int min_count = 0;
  int max_count = 0;
  double mean_count = 0.0;
};

struct ExperimentResult {
  ResultsTable table;
  std::vector<CellResult> cells;
  std::vector<SegmentationStats> segmentation;
};

// Fills one table cell per (extractor, setting): augment, extract, train one
// classifier per category on its training split, rank its test split, AP per
// category, mean over the five categories. Stage failures are rethrown with
// the (extractor, setting, category) that triggered them.
ExperimentResult run_experiment(const PartitionedDataset& dataset,
                                const ExperimentConfig& cfg, std::ostream* log = nullptr);

// Scores a category's test split with `model` and returns its AP.
double evaluate_category(const LinearModel& model, const CategoryPartition& part,
                         const FeatureSet& features);

// Trains the category classifier on its training split.
LinearModel train_category(const CategoryPartition& part, const FeatureSet& features,
                           const TrainConfig& cfg);

// "model,setting,category,ap" rows for the per-category breakdown.
std::string category_ap_csv(const std::vector<CellResult>& cells);

}  // namespace wxsp
