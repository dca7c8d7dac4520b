#include "wxsp/dataset.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <set>

#include <json.hpp>

#include "wxsp/csv.hpp"
#include "wxsp/error.hpp"
#include "wxsp/results.hpp"
#include "wxsp/rng.hpp"

namespace wxsp {

std::string_view category_name(Category c) {
  switch (c) {
    case Category::kCloudy: return "cloudy";
    case Category::kFoggy: return "foggy";
    case Category::kRainy: return "rainy";
    case Category::kSnowy: return "snowy";
    case Category::kSunny: return "sunny";
  }
  return "?";
}

std::optional<Category> parse_category(std::string_view name) {
  for (const Category c : kAllCategories) {
    if (category_name(c) == name) return c;
  }
  return std::nullopt;
}

std::vector<ImageRecord> load_manifest(const std::filesystem::path& path,
                                       bool validate_files) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorCode::kFileNotFound, path.string());
  const std::filesystem::path base = path.parent_path();

  std::string line;
  if (!std::getline(in, line)) throw Error(ErrorCode::kMalformedHeader, path.string() + ": empty");
  if (line.size() >= 3 && line.compare(0, 3, "\xEF\xBB\xBF") == 0) line.erase(0, 3);
  if (!line.empty() && line.back() == '\r') line.pop_back();
  if (line != kManifestHeader) {
    throw Error(ErrorCode::kMalformedHeader,
                path.string() + ": expected '" + std::string(kManifestHeader) + "'");
  }

  std::vector<ImageRecord> records;
  std::set<std::string> seen;
  std::size_t line_no = 1;
  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    const std::string where = path.string() + ":" + std::to_string(line_no);
    const auto fields = split_csv_line(line);
    if (!fields || fields->size() != 6) {
      throw Error(ErrorCode::kMalformedRow, where + ": expected 6 fields");
    }
    const auto& f = *fields;
    if (f[0].empty() || f[1].empty()) {
      throw Error(ErrorCode::kMalformedRow, where + ": empty image_id or path");
    }
    const auto category = parse_category(f[2]);
    if (!category) throw Error(ErrorCode::kUnknownCategory, where + ": '" + f[2] + "'");
    if (!seen.insert(f[0]).second) throw Error(ErrorCode::kDuplicateId, where + ": " + f[0]);

    ImageRecord rec;
    rec.image_id = f[0];
    const std::filesystem::path p(f[1]);
    rec.path = p.is_absolute() ? p : base / p;
    rec.category = *category;
    rec.author = f[3];
    rec.license = f[4];
    rec.source_url = f[5];
    if (validate_files && !std::filesystem::is_regular_file(rec.path)) {
      throw Error(ErrorCode::kMissingFile, where + ": " + rec.path.string());
    }
    records.push_back(std::move(rec));
  }
  return records;
}

void write_manifest(const std::vector<ImageRecord>& records,
                    const std::filesystem::path& path) {
  const std::filesystem::path base = path.parent_path();
  std::string text(kManifestHeader);
  text += "\n";
  for (const auto& r : records) {
    std::filesystem::path p = r.path;
    if (!base.empty()) {
      const auto rel = r.path.lexically_relative(base);
      if (!rel.empty() && *rel.begin() != "..") p = rel;
    }
    text += csv_field(r.image_id) + "," + csv_field(p.generic_string()) + "," +
            std::string(category_name(r.category)) + "," + csv_field(r.author) + "," +
            csv_field(r.license) + "," + csv_field(r.source_url) + "\n";
  }
  write_text_file(path, text);
}

namespace {

void check_options(const PartitionOptions& opts) {
  if (!(opts.train_fraction > 0.0 && opts.train_fraction < 1.0)) {
    throw Error(ErrorCode::kInvalidArgument, "train_fraction must lie in (0, 1)");
  }
  if (!(opts.negative_ratio > 0.0) || !std::isfinite(opts.negative_ratio)) {
    throw Error(ErrorCode::kInvalidArgument, "negative_ratio must be positive");
  }
}

std::vector<std::string> shuffled(std::vector<std::string> ids, std::uint64_t seed,
                                  const std::string& tag) {
  Rng rng(derive_seed(seed, tag));
  shuffle(std::span<std::string>(ids), rng);
  return ids;
}

// Spreads `need` over pools of the given capacities as evenly as possible:
// one item per pool with room left, in label order, until satisfied. Earlier
// pools therefore take the remainder, and a small pool's shortfall lands on
// the others.
std::vector<std::size_t> even_allocation(std::size_t need,
                                         const std::vector<std::size_t>& capacity) {
  std::vector<std::size_t> take(capacity.size(), 0);
  bool progress = true;
  while (need > 0 && progress) {
    progress = false;
    for (std::size_t i = 0; i < capacity.size() && need > 0; ++i) {
      if (take[i] < capacity[i]) {
        ++take[i];
        --need;
        progress = true;
      }
    }
  }
  return take;
}

std::vector<std::string> draw_negatives(
    const std::map<Category, std::vector<std::string>>& pools, Category category,
    std::size_t need, const PartitionOptions& opts, const char* side) {
  std::vector<Category> others;
  std::vector<std::size_t> capacity;
  std::size_t available = 0;
  for (const Category c : kAllCategories) {
    if (c == category) continue;
    others.push_back(c);
    const auto it = pools.find(c);
    capacity.push_back(it == pools.end() ? 0 : it->second.size());
    available += capacity.back();
  }
  if (available < need) {
    throw Error(ErrorCode::kInsufficientNegatives,
                std::string(category_name(category)) + " " + side + ": need " +
                    std::to_string(need) + " negatives, only " + std::to_string(available) +
                    " available");
  }
  const auto take = even_allocation(need, capacity);
  std::vector<std::string> out;
  out.reserve(need);
  for (std::size_t i = 0; i < others.size(); ++i) {
    if (take[i] == 0) continue;
    const std::string tag = "neg/" + std::string(category_name(category)) + "/" +
                            std::string(category_name(others[i])) + "/" + side;
    const auto pool = shuffled(pools.at(others[i]), opts.seed, tag);
    out.insert(out.end(), pool.begin(), pool.begin() + static_cast<long>(take[i]));
  }
  return out;
}

std::size_t scaled(std::size_t n, double ratio) {
  return static_cast<std::size_t>(std::llround(static_cast<double>(n) * ratio));
}

}  // namespace

GlobalSplit global_split(const std::vector<ImageRecord>& records,
                         const PartitionOptions& opts) {
  check_options(opts);
  std::map<Category, std::vector<std::string>> by_category;
  for (const auto& r : records) by_category[r.category].push_back(r.image_id);

  GlobalSplit split;
  for (auto& [category, ids] : by_category) {
    const auto order =
        shuffled(std::move(ids), opts.seed, "split/" + std::string(category_name(category)));
    // The epsilon keeps products like 0.7 * 10 from flooring to 6.
    const auto n_train = static_cast<std::size_t>(
        std::floor(opts.train_fraction * static_cast<double>(order.size()) + 1e-9));
    split.train[category].assign(order.begin(), order.begin() + static_cast<long>(n_train));
    split.test[category].assign(order.begin() + static_cast<long>(n_train), order.end());
  }
  return split;
}

CategoryPartition partition(const GlobalSplit& split, Category category,
                            const PartitionOptions& opts) {
  check_options(opts);
  const auto train_it = split.train.find(category);
  const auto test_it = split.test.find(category);
  const std::size_t total = (train_it == split.train.end() ? 0 : train_it->second.size()) +
                            (test_it == split.test.end() ? 0 : test_it->second.size());
  if (total == 0) {
    throw Error(ErrorCode::kCategoryMissing, std::string(category_name(category)));
  }
  for (const Category c : kAllCategories) {
    if (c == category) continue;
    const std::size_t n = (split.train.contains(c) ? split.train.at(c).size() : 0) +
                          (split.test.contains(c) ? split.test.at(c).size() : 0);
    if (n == 0) {
      throw Error(ErrorCode::kInsufficientNegatives,
                  "no images of " + std::string(category_name(c)) +
                      " to serve as negatives for " + std::string(category_name(category)));
    }
  }

  CategoryPartition part;
  part.category = category;
  if (train_it != split.train.end()) part.pos_train = train_it->second;
  if (test_it != split.test.end()) part.pos_test = test_it->second;
  part.neg_train = draw_negatives(split.train, category,
                                  scaled(part.pos_train.size(), opts.negative_ratio), opts,
                                  "train");
  part.neg_test = draw_negatives(split.test, category,
                                 scaled(part.pos_test.size(), opts.negative_ratio), opts,
                                 "test");
  return part;
}

CategoryPartition partition(const std::vector<ImageRecord>& records, Category category,
                            const PartitionOptions& opts) {
  return partition(global_split(records, opts), category, opts);
}

std::vector<CategoryPartition> partition_all(const std::vector<ImageRecord>& records,
                                             const PartitionOptions& opts) {
  const GlobalSplit split = global_split(records, opts);
  std::vector<CategoryPartition> out;
  for (const Category c : kAllCategories) out.push_back(partition(split, c, opts));
  return out;
}

std::string partitions_to_json(const std::vector<CategoryPartition>& partitions,
                               const PartitionOptions& opts) {
  nlohmann::ordered_json doc;
  doc["seed"] = opts.seed;
  doc["train_fraction"] = opts.train_fraction;
  doc["negative_ratio"] = opts.negative_ratio;
  nlohmann::ordered_json cats = nlohmann::ordered_json::object();
  for (const auto& p : partitions) {
    nlohmann::ordered_json entry;
    entry["pos_train"] = p.pos_train;
    entry["pos_test"] = p.pos_test;
    entry["neg_train"] = p.neg_train;
    entry["neg_test"] = p.neg_test;
    cats[std::string(category_name(p.category))] = std::move(entry);
  }
  doc["categories"] = std::move(cats);
  return doc.dump(2) + "\n";
}

}  // namespace wxsp
