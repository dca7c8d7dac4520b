#include "cli/run_config.hpp"

#include <fstream>
#include <set>

#include "wxsp/error.hpp"

namespace wxsp::cli {
namespace {

using nlohmann::json;

[[noreturn]] void config_error(const std::string& message) {
  throw Error(ErrorCode::kConfig, message);
}

template <typename T>
T get_as(const json& doc, const char* key) {
  try {
    return doc.at(key).get<T>();
  } catch (const json::exception&) {
    config_error(std::string("'") + key + "' has the wrong type");
  }
}

std::filesystem::path resolve(const std::filesystem::path& base, const std::string& p) {
  const std::filesystem::path path(p);
  return path.is_absolute() || base.empty() ? path : base / path;
}

}  // namespace

ExperimentConfig RunConfig::experiment() const {
  ExperimentConfig cfg;
  cfg.settings = settings;
  cfg.extractors = extractors;
  cfg.train.lambda = lambda;
  cfg.train.epochs = epochs;
  cfg.train.seed = seed;
  cfg.mask_color = mask_color;
  cfg.compactness = compactness;
  cfg.normalize_features = normalize_features;
  cfg.jobs = jobs;
  return cfg;
}

PartitionOptions RunConfig::partition_options() const {
  return {train_fraction, negative_ratio, seed};
}

nlohmann::ordered_json RunConfig::resolved() const {
  nlohmann::ordered_json doc;
  doc["manifest_path"] = manifest_path.string();
  doc["output_dir"] = output_dir.string();
  doc["settings"] = settings;
  auto ex = nlohmann::ordered_json::array();
  for (const auto& e : extractors) {
    if (e.is_builtin()) {
      ex.push_back(e.builtin);
    } else {
      ex.push_back({{"name", e.name}, {"features", e.feature_template.string()}});
    }
  }
  doc["extractors"] = ex;
  doc["train"] = {{"lambda", lambda}, {"epochs", epochs}};
  doc["seed"] = seed;
  doc["mask_color"] = mask_color;
  doc["compactness"] = compactness;
  doc["train_fraction"] = train_fraction;
  doc["negative_ratio"] = negative_ratio;
  doc["normalize_features"] = normalize_features;
  doc["validate_files"] = validate_files;
  doc["jobs"] = jobs;
  return doc;
}

RunConfig parse_run_config(const json& doc, const std::filesystem::path& base_dir) {
  if (!doc.is_object()) config_error("config must be a JSON object");
  static const std::set<std::string> known = {
      "manifest_path", "output_dir", "settings", "extractors", "train",
      "seed", "mask_color", "compactness", "train_fraction", "negative_ratio",
      "normalize_features", "validate_files", "jobs"};
  for (const auto& [key, value] : doc.items()) {
    if (!known.contains(key)) config_error("unknown key '" + key + "'");
  }

  RunConfig cfg;
  if (!doc.contains("manifest_path")) config_error("missing required key 'manifest_path'");
  cfg.manifest_path = resolve(base_dir, get_as<std::string>(doc, "manifest_path"));
  if (doc.contains("output_dir")) {
    cfg.output_dir = resolve(base_dir, get_as<std::string>(doc, "output_dir"));
  } else {
    cfg.output_dir = resolve(base_dir, "results");
  }

  if (doc.contains("settings")) {
    cfg.settings = get_as<std::vector<int>>(doc, "settings");
    if (cfg.settings.empty()) config_error("'settings' must be non-empty");
    for (const int s : cfg.settings) {
      if (s < 0) config_error("'settings' values must be >= 0");
    }
  }

  if (doc.contains("extractors")) {
    const json& list = doc.at("extractors");
    if (!list.is_array() || list.empty()) config_error("'extractors' must be a non-empty array");
    for (const json& item : list) {
      if (item.is_string()) {
        const auto name = item.get<std::string>();
        if (!is_builtin_extractor(name)) config_error("unknown extractor '" + name + "'");
        cfg.extractors.push_back(ExtractorSpec::from_builtin(name));
      } else if (item.is_object() && item.contains("name") && item.contains("features") &&
                 item.size() == 2 && item.at("name").is_string() &&
                 item.at("features").is_string()) {
        cfg.extractors.push_back(ExtractorSpec::from_file(
            item.at("name").get<std::string>(),
            resolve(base_dir, item.at("features").get<std::string>())));
      } else {
        config_error("each extractor must be a built-in name or {\"name\", \"features\"}");
      }
    }
  } else {
    cfg.extractors.push_back(ExtractorSpec::from_builtin("color_histogram"));
  }

  if (doc.contains("train")) {
    const json& train = doc.at("train");
    if (!train.is_object()) config_error("'train' must be an object");
    for (const auto& [key, value] : train.items()) {
      if (key != "lambda" && key != "epochs") config_error("unknown key 'train." + key + "'");
    }
    if (train.contains("lambda")) cfg.lambda = get_as<double>(train, "lambda");
    if (train.contains("epochs")) cfg.epochs = get_as<int>(train, "epochs");
  }
  if (!(cfg.lambda > 0.0)) config_error("'train.lambda' must be > 0");
  if (cfg.epochs < 1) config_error("'train.epochs' must be >= 1");

  if (doc.contains("seed")) cfg.seed = get_as<std::uint64_t>(doc, "seed");
  if (doc.contains("mask_color")) {
    const auto color = get_as<std::vector<int>>(doc, "mask_color");
    if (color.size() != 3) config_error("'mask_color' must have 3 components");
    for (std::size_t i = 0; i < 3; ++i) {
      if (color[i] < 0 || color[i] > 255) config_error("'mask_color' components must be 0-255");
      cfg.mask_color[i] = static_cast<std::uint8_t>(color[i]);
    }
  }
  if (doc.contains("compactness")) cfg.compactness = get_as<double>(doc, "compactness");
  if (!(cfg.compactness > 0.0)) config_error("'compactness' must be > 0");
  if (doc.contains("train_fraction")) cfg.train_fraction = get_as<double>(doc, "train_fraction");
  if (!(cfg.train_fraction > 0.0 && cfg.train_fraction < 1.0)) {
    config_error("'train_fraction' must lie in (0, 1)");
  }
  if (doc.contains("negative_ratio")) cfg.negative_ratio = get_as<double>(doc, "negative_ratio");
  if (!(cfg.negative_ratio > 0.0)) config_error("'negative_ratio' must be > 0");
  if (doc.contains("normalize_features")) {
    cfg.normalize_features = get_as<bool>(doc, "normalize_features");
  }
  if (doc.contains("validate_files")) cfg.validate_files = get_as<bool>(doc, "validate_files");
  if (doc.contains("jobs")) cfg.jobs = get_as<int>(doc, "jobs");
  if (cfg.jobs < 1) config_error("'jobs' must be >= 1");
  return cfg;
}

RunConfig load_run_config(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorCode::kFileNotFound, path.string());
  json doc;
  try {
    doc = json::parse(in);
  } catch (const json::exception& e) {
    config_error(path.string() + ": " + e.what());
  }
  return parse_run_config(doc, path.parent_path());
}

}  // namespace wxsp::cli
