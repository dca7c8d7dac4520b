#pragma once

#include <cstdint>
#include <filesystem>
#include <string>
#include <vector>

#include <json.hpp>

#include "wxsp/experiment.hpp"

namespace wxsp::cli {

// Experiment configuration. JSON keys (all but manifest_path optional):
//   manifest_path       string, relative to the config file
//   output_dir          string, default "results"
//   settings            [int], default [0, 25, 50, 75, 100]
//   extractors          ["color_histogram" | "gradient_histogram" |
//                        {"name": str, "features": "path/with/{K}.wxfeat"}]
//   train               {"lambda": 1e-4, "epochs": 30}
//   seed                uint, default 42
//   mask_color          [r, g, b], default [255, 255, 0]
//   compactness         real, default 10
//   train_fraction      real, default 0.7
//   negative_ratio      real, default 1.0
//   normalize_features  bool, default true
//   validate_files      bool, default true
//   jobs                int, default 1
// Unknown keys are rejected.
struct RunConfig {
  std::filesystem::path manifest_path;
  std::filesystem::path output_dir = "results";
  std::vector<int> settings = {0, 25, 50, 75, 100};
  std::vector<ExtractorSpec> extractors;
  double lambda = 1e-4;
  int epochs = 30;
  std::uint64_t seed = 42;
  Rgb mask_color = {255, 255, 0};
  double compactness = 10.0;
  double train_fraction = 0.7;
  double negative_ratio = 1.0;
  bool normalize_features = true;
  bool validate_files = true;
  int jobs = 1;

  ExperimentConfig experiment() const;
  PartitionOptions partition_options() const;
  // Every field after defaults and path resolution, for the run log.
  nlohmann::ordered_json resolved() const;
};

// Errors: kConfig with the offending key in the message.
RunConfig parse_run_config(const nlohmann::json& doc, const std::filesystem::path& base_dir);
RunConfig load_run_config(const std::filesystem::path& path);

}  // namespace wxsp::cli
