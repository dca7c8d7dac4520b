#pragma once

#include <filesystem>
#include <optional>
#include <ostream>
#include <string>
#include <vector>

#include "wxsp/image.hpp"

namespace wxsp::cli {

// Exit statuses.
inline constexpr int kExitOk = 0;
inline constexpr int kExitFailure = 1;
inline constexpr int kExitUsage = 2;

struct SegmentOptions {
  std::filesystem::path image;
  int k = 0;
  std::filesystem::path out;
  double compactness = 10.0;
  int iterations = 10;
};
int cmd_segment(const SegmentOptions& opts, std::ostream& out, std::ostream& err);

struct AugmentOptions {
  std::filesystem::path manifest;
  int k = 0;
  std::filesystem::path out_dir;
  Rgb color = {255, 255, 0};
  double compactness = 10.0;
  int jobs = 1;
};
int cmd_augment(const AugmentOptions& opts, std::ostream& out, std::ostream& err);

struct ExtractOptions {
  std::filesystem::path manifest;
  std::string extractor = "color_histogram";
  std::filesystem::path out;
  int k = 0;
  Rgb color = {255, 255, 0};
  double compactness = 10.0;
  bool l2 = false;
  int jobs = 1;
};
int cmd_extract(const ExtractOptions& opts, std::ostream& out, std::ostream& err);

struct SplitOptions {
  std::uint64_t seed = 42;
  double train_fraction = 0.7;
  double negative_ratio = 1.0;
};

struct TrainOptions {
  std::filesystem::path manifest;
  std::filesystem::path features;
  std::filesystem::path out_dir;
  std::optional<std::string> category;  // all five when unset
  SplitOptions split;
  double lambda = 1e-4;
  int epochs = 30;
  bool normalize = true;
};
int cmd_train(const TrainOptions& opts, std::ostream& out, std::ostream& err);

struct EvaluateOptions {
  std::filesystem::path manifest;
  std::filesystem::path features;
  std::filesystem::path models;
  SplitOptions split;
  bool normalize = true;
};
int cmd_evaluate(const EvaluateOptions& opts, std::ostream& out, std::ostream& err);

struct ExperimentOverrides {
  std::optional<std::filesystem::path> output_dir;
  std::optional<std::uint64_t> seed;
  std::optional<int> jobs;
  std::optional<std::vector<int>> settings;
};
int cmd_experiment(const std::filesystem::path& config_path,
                   const ExperimentOverrides& overrides, std::ostream& out,
                   std::ostream& err);

// Parses argv and dispatches to a subcommand.
int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace wxsp::cli
