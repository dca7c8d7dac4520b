#include "wxsp/experiment.hpp"

#include <algorithm>
#include <set>

#include "wxsp/error.hpp"
#include "wxsp/mask.hpp"
#include "wxsp/metrics.hpp"
#include "wxsp/parallel.hpp"
#include "wxsp/rng.hpp"

namespace wxsp {

ExtractorSpec ExtractorSpec::from_builtin(const std::string& name) {
  if (!is_builtin_extractor(name)) {
    throw Error(ErrorCode::kConfig, "unknown built-in extractor '" + name + "'");
  }
  ExtractorSpec spec;
  spec.name = name;
  spec.builtin = name;
  return spec;
}

ExtractorSpec ExtractorSpec::from_file(const std::string& name, std::filesystem::path tmpl) {
  ExtractorSpec spec;
  spec.name = name;
  spec.feature_template = std::move(tmpl);
  return spec;
}

std::filesystem::path ExtractorSpec::feature_file(int setting) const {
  std::string path = feature_template.string();
  const std::string k = std::to_string(setting);
  for (auto pos = path.find("{K}"); pos != std::string::npos; pos = path.find("{K}", pos)) {
    path.replace(pos, 3, k);
    pos += k.size();
  }
  return path;
}

namespace {

std::vector<FeatureVector> gather(const std::vector<std::string>& ids,
                                  const FeatureSet& features) {
  std::vector<FeatureVector> out;
  out.reserve(ids.size());
  for (const auto& id : ids) out.push_back(features.at(id));
  return out;
}

[[noreturn]] void rethrow_with_context(const std::string& context) {
  try {
    throw;
  } catch (const Error& e) {
    throw Error(e.code(), "[" + context + "] " + e.detail());
  } catch (const std::exception& e) {
    throw Error(ErrorCode::kInvalidArgument, "[" + context + "] " + e.what());
  }
}

void validate(const PartitionedDataset& dataset, const ExperimentConfig& cfg) {
  if (cfg.settings.empty()) throw Error(ErrorCode::kConfig, "no superpixel settings");
  for (const int s : cfg.settings) {
    if (s < 0) throw Error(ErrorCode::kConfig, "negative superpixel setting");
  }
  if (std::set<int>(cfg.settings.begin(), cfg.settings.end()).size() != cfg.settings.size()) {
    throw Error(ErrorCode::kConfig, "duplicate superpixel setting");
  }
  if (cfg.extractors.empty()) throw Error(ErrorCode::kConfig, "no extractors");
  std::set<std::string> names;
  for (const auto& e : cfg.extractors) {
    if (e.name.empty() || e.name.find_first_of(",\n") != std::string::npos) {
      throw Error(ErrorCode::kConfig, "extractor names must be non-empty, without commas");
    }
    if (!names.insert(e.name).second) {
      throw Error(ErrorCode::kConfig, "duplicate extractor name '" + e.name + "'");
    }
    if (!e.is_builtin() && cfg.settings.size() > 1 &&
        e.feature_template.string().find("{K}") == std::string::npos) {
      throw Error(ErrorCode::kConfig, "feature file for '" + e.name +
                                          "' needs a {K} placeholder to cover several settings");
    }
  }
  std::set<Category> covered;
  for (const auto& p : dataset.partitions) covered.insert(p.category);
  if (covered.size() != kAllCategories.size() ||
      dataset.partitions.size() != kAllCategories.size()) {
    throw Error(ErrorCode::kCategoryMissing, "dataset must be partitioned for all five categories");
  }
}

}  // namespace

LinearModel train_category(const CategoryPartition& part, const FeatureSet& features,
                           const TrainConfig& cfg) {
  const auto pos = gather(part.pos_train, features);
  const auto neg = gather(part.neg_train, features);
  return train(pos, neg, cfg, std::string(category_name(part.category)));
}

double evaluate_category(const LinearModel& model, const CategoryPartition& part,
                         const FeatureSet& features) {
  std::vector<RankedItem> items;
  items.reserve(part.pos_test.size() + part.neg_test.size());
  for (const auto& id : part.pos_test) items.push_back({id, score(model, features.at(id)), true});
  for (const auto& id : part.neg_test) items.push_back({id, score(model, features.at(id)), false});
  return average_precision(items);
}

ExperimentResult run_experiment(const PartitionedDataset& dataset,
                                const ExperimentConfig& cfg, std::ostream* log) {
  validate(dataset, cfg);
  ExperimentResult result{ResultsTable(cfg.settings), {}, {}};

  std::vector<std::size_t> builtin;
  for (std::size_t e = 0; e < cfg.extractors.size(); ++e) {
    if (cfg.extractors[e].is_builtin()) builtin.push_back(e);
  }

  for (const int setting : cfg.settings) {
    std::vector<FeatureSet> features(cfg.extractors.size());

    if (!builtin.empty()) {
      const std::size_t n = dataset.records.size();
      std::vector<std::vector<FeatureVector>> extracted(
          builtin.size(), std::vector<FeatureVector>(n));
      std::vector<int> realized(n, 0);
      OverlaySpec spec{cfg.mask_color, setting, cfg.compactness};
      parallel_for(n, cfg.jobs, [&](std::size_t i) {
        const auto& rec = dataset.records[i];
        try {
          const Image img = augment(load_image(rec.path), spec, &realized[i]);
          for (std::size_t b = 0; b < builtin.size(); ++b) {
            FeatureVector v = extract_builtin(cfg.extractors[builtin[b]].builtin, img);
            v.image_id = rec.image_id;
            extracted[b][i] = cfg.normalize_features ? l2_normalize(v) : std::move(v);
          }
        } catch (...) {
          rethrow_with_context("setting=" + std::to_string(setting) + ", image=" +
                               rec.image_id);
        }
      });
      for (std::size_t b = 0; b < builtin.size(); ++b) {
        FeatureSet& set = features[builtin[b]];
        set.extractor_name = cfg.extractors[builtin[b]].name;
        set.dimension = n == 0 ? 0 : extracted[b].front().values.size();
        for (auto& v : extracted[b]) set.add(std::move(v));
      }
      if (setting > 0 && n > 0) {
        SegmentationStats stats{setting, *std::min_element(realized.begin(), realized.end()),
                                *std::max_element(realized.begin(), realized.end()), 0.0};
        for (const int r : realized) stats.mean_count += r;
        stats.mean_count /= static_cast<double>(n);
        result.segmentation.push_back(stats);
        if (log) {
          *log << "setting " << setting << ": realized superpixels min=" << stats.min_count
               << " max=" << stats.max_count << " mean=" << stats.mean_count << "\n";
        }
      }
    }

    for (std::size_t e = 0; e < cfg.extractors.size(); ++e) {
      const auto& ex = cfg.extractors[e];
      if (ex.is_builtin()) continue;
      const auto file = ex.feature_file(setting);
      try {
        FeatureSet raw = read_feature_file(file);
        if (!cfg.normalize_features) {
          features[e] = std::move(raw);
          continue;
        }
        FeatureSet& set = features[e];
        set.extractor_name = raw.extractor_name;
        set.dimension = raw.dimension;
        for (auto& [id, v] : raw.entries) set.add(l2_normalize(v));
      } catch (...) {
        rethrow_with_context("extractor=" + ex.name + ", setting=" + std::to_string(setting) +
                             ", file=" + file.string());
      }
      if (log) *log << "setting " << setting << ": " << ex.name << " features from " << file.string() << "\n";
    }

    // One task per (extractor, category).
    const std::size_t n_cat = dataset.partitions.size();
    std::vector<double> ap(cfg.extractors.size() * n_cat, 0.0);
    parallel_for(ap.size(), cfg.jobs, [&](std::size_t task) {
      const std::size_t e = task / n_cat;
      const auto& part = dataset.partitions[task % n_cat];
      const std::string category(category_name(part.category));
      try {
        TrainConfig tc = cfg.train;
        tc.seed = derive_seed(cfg.train.seed, "svm/" + category);
        const LinearModel model = train_category(part, features[e], tc);
        ap[task] = evaluate_category(model, part, features[e]);
      } catch (...) {
        rethrow_with_context("extractor=" + cfg.extractors[e].name +
                             ", setting=" + std::to_string(setting) + ", category=" + category);
      }
    });

    for (std::size_t e = 0; e < cfg.extractors.size(); ++e) {
      CellResult cell;
      cell.model = cfg.extractors[e].name;
      cell.setting = setting;
      for (std::size_t c = 0; c < n_cat; ++c) {
        cell.category_ap[std::string(category_name(dataset.partitions[c].category))] =
            ap[e * n_cat + c];
      }
      cell.map = mean_average_precision(cell.category_ap);
      if (log) {
        *log << "cell " << cell.model << " @ " << setting << " SP: mAP=" << format_double(cell.map);
        for (const auto& [cat, v] : cell.category_ap) *log << " " << cat << "=" << format_double(v);
        *log << "\n";
      }
      result.cells.push_back(std::move(cell));
    }
  }

  // Table rows in extractor order, columns in setting order.
  for (const auto& ex : cfg.extractors) {
    for (const auto& cell : result.cells) {
      if (cell.model == ex.name) result.table.set(cell.model, cell.setting, cell.map);
    }
  }
  return result;
}

std::string category_ap_csv(const std::vector<CellResult>& cells) {
  std::string out = "model,setting,category,ap\n";
  for (const auto& cell : cells) {
    for (const auto& [cat, v] : cell.category_ap) {
      out += cell.model + "," + std::to_string(cell.setting) + "," + cat + "," +
             format_double(v) + "\n";
    }
  }
  return out;
}

}  // namespace wxsp
