#pragma once

#include <array>
#include <cstdint>
#include <filesystem>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace wxsp {

enum class Category { kCloudy, kFoggy, kRainy, kSnowy, kSunny };

inline constexpr std::array<Category, 5> kAllCategories = {
    Category::kCloudy, Category::kFoggy, Category::kRainy, Category::kSnowy,
    Category::kSunny};

std::string_view category_name(Category c);
std::optional<Category> parse_category(std::string_view name);

// One manifest row. `path` is resolved against the manifest's directory.
struct ImageRecord {
  std::string image_id;
  std::filesystem::path path;
  Category category = Category::kCloudy;
  std::string author;
  std::string license;
  std::string source_url;
};

inline constexpr std::string_view kManifestHeader =
    "image_id,path,category,author,license,source_url";

// Errors: kFileNotFound, kMalformedHeader, kMalformedRow, kDuplicateId,
// kUnknownCategory, and kMissingFile when validate_files is set.
std::vector<ImageRecord> load_manifest(const std::filesystem::path& path,
                                       bool validate_files = false);

// Writes records with paths relative to the manifest's directory when possible.
void write_manifest(const std::vector<ImageRecord>& records,
                    const std::filesystem::path& path);

struct PartitionOptions {
  double train_fraction = 0.7;
  // |neg_train| = round(ratio * |pos_train|), likewise for test.
  double negative_ratio = 1.0;
  std::uint64_t seed = 42;
};

struct CategoryPartition {
  Category category = Category::kCloudy;
  std::vector<std::string> pos_train;
  std::vector<std::string> pos_test;
  std::vector<std::string> neg_train;
  std::vector<std::string> neg_test;
};

// Every image is assigned to train or test exactly once, per category: the
// category's ids are shuffled with derive_seed(seed, "split/<category>") and
// the first floor(fraction * n) go to train. All five binary problems then
// draw from this one assignment, so no id is ever train for one category and
// test for another.
struct GlobalSplit {
  std::map<Category, std::vector<std::string>> train;
  std::map<Category, std::vector<std::string>> test;
};

GlobalSplit global_split(const std::vector<ImageRecord>& records,
                         const PartitionOptions& opts);

// Positives are the category's train/test pools. Negatives come from the
// other four categories' pools of the same side, allocated as evenly as
// possible (remainders to earlier categories in label order, shortfalls
// redistributed), each category's pool shuffled with
// derive_seed(seed, "neg/<category>/<other>/<train|test>").
// Errors: kCategoryMissing, kInsufficientNegatives, kInvalidArgument.
CategoryPartition partition(const std::vector<ImageRecord>& records, Category category,
                            const PartitionOptions& opts);
CategoryPartition partition(const GlobalSplit& split, Category category,
                            const PartitionOptions& opts);
std::vector<CategoryPartition> partition_all(const std::vector<ImageRecord>& records,
                                             const PartitionOptions& opts);

// Audit export: {"seed", "train_fraction", "negative_ratio",
// "categories": {"<name>": {"pos_train": [...], ...}}}.
std::string partitions_to_json(const std::vector<CategoryPartition>& partitions,
                               const PartitionOptions& opts);

}  // namespace wxsp
