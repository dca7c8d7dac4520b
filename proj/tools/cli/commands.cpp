#include "cli/commands.hpp"

#include <CLI11.hpp>

#include <map>
#include <sstream>

#include "cli/run_config.hpp"
#include "wxsp/dataset.hpp"
#include "wxsp/error.hpp"
#include "wxsp/experiment.hpp"
#include "wxsp/features.hpp"
#include "wxsp/mask.hpp"
#include "wxsp/metrics.hpp"
#include "wxsp/parallel.hpp"
#include "wxsp/results.hpp"
#include "wxsp/rng.hpp"
#include "wxsp/slic.hpp"
#include "wxsp/svm.hpp"

namespace wxsp::cli {
namespace {

std::vector<std::filesystem::path> record_paths(const std::vector<ImageRecord>& records) {
  std::vector<std::filesystem::path> paths;
  paths.reserve(records.size());
  for (const auto& r : records) paths.push_back(r.path);
  return paths;
}

FeatureSet load_features(const std::filesystem::path& path, bool normalize) {
  FeatureSet raw = read_feature_file(path);
  if (!normalize) return raw;
  FeatureSet set;
  set.extractor_name = raw.extractor_name;
  set.dimension = raw.dimension;
  for (const auto& [id, v] : raw.entries) set.add(l2_normalize(v));
  return set;
}

PartitionOptions partition_options(const SplitOptions& s) {
  return {s.train_fraction, s.negative_ratio, s.seed};
}

Rgb parse_color(const std::string& text) {
  std::vector<int> parts;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    try {
      std::size_t used = 0;
      const int v = std::stoi(item, &used);
      if (used != item.size()) throw std::invalid_argument(item);
      parts.push_back(v);
    } catch (const std::exception&) {
      throw CLI::ValidationError("--color", "expected r,g,b");
    }
  }
  if (parts.size() != 3) throw CLI::ValidationError("--color", "expected r,g,b");
  Rgb color{};
  for (std::size_t i = 0; i < 3; ++i) {
    if (parts[i] < 0 || parts[i] > 255) {
      throw CLI::ValidationError("--color", "components must be 0-255");
    }
    color[i] = static_cast<std::uint8_t>(parts[i]);
  }
  return color;
}

}  // namespace

int cmd_segment(const SegmentOptions& opts, std::ostream& out, std::ostream& err) {
  if (opts.k < 1) {
    err << "usage error: segment requires K >= 1\n";
    return kExitUsage;
  }
  try {
    const Image img = load_image(opts.image);
    SlicParams params;
    params.target_count = opts.k;
    params.compactness = opts.compactness;
    params.max_iterations = opts.iterations;
    const Segmentation seg = slic_segment(rgb_to_lab(img), params);
    save_image(render_segmentation(seg), opts.out);
    out << "segments: " << seg.segment_count << "\n";
    return kExitOk;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return kExitFailure;
  }
}

int cmd_augment(const AugmentOptions& opts, std::ostream& out, std::ostream& err) {
  if (opts.k < 0) {
    err << "usage error: K must be >= 0\n";
    return kExitUsage;
  }
  try {
    const auto records = load_manifest(opts.manifest);
    OverlaySpec spec{opts.color, opts.k, opts.compactness};
    const BatchReport report = augment_batch(record_paths(records), spec, opts.out_dir, opts.jobs);
    for (const auto& f : report.failures) {
      err << "error: " << f.input.string() << ": " << f.message << "\n";
    }
    out << "wrote " << report.written.size() << " of " << records.size() << " images to "
        << opts.out_dir.string() << "\n";
    return report.failures.empty() ? kExitOk : kExitFailure;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return kExitFailure;
  }
}

int cmd_extract(const ExtractOptions& opts, std::ostream& out, std::ostream& err) {
  try {
    if (!is_builtin_extractor(opts.extractor)) {
      err << "usage error: unknown extractor '" << opts.extractor << "'\n";
      return kExitUsage;
    }
    const auto records = load_manifest(opts.manifest, true);
    const OverlaySpec spec{opts.color, opts.k, opts.compactness};
    std::vector<FeatureVector> vectors(records.size());
    parallel_for(records.size(), opts.jobs, [&](std::size_t i) {
      FeatureVector v = extract_builtin(opts.extractor, augment(load_image(records[i].path), spec));
      v.image_id = records[i].image_id;
      vectors[i] = opts.l2 ? l2_normalize(v) : std::move(v);
    });
    FeatureSet set;
    set.extractor_name = opts.extractor;
    set.dimension = vectors.empty() ? 0 : vectors.front().values.size();
    for (auto& v : vectors) set.add(std::move(v));
    write_feature_file(set, opts.out);
    out << "wrote " << set.entries.size() << " vectors of dimension " << set.dimension
        << " to " << opts.out.string() << "\n";
    return kExitOk;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return kExitFailure;
  }
}

int cmd_train(const TrainOptions& opts, std::ostream& out, std::ostream& err) {
  try {
    std::vector<Category> categories;
    if (opts.category) {
      const auto c = parse_category(*opts.category);
      if (!c) {
        err << "usage error: unknown category '" << *opts.category << "'\n";
        return kExitUsage;
      }
      categories.push_back(*c);
    } else {
      categories.assign(kAllCategories.begin(), kAllCategories.end());
    }
    const auto records = load_manifest(opts.manifest);
    const auto features = load_features(opts.features, opts.normalize);
    const auto popts = partition_options(opts.split);
    const GlobalSplit split = global_split(records, popts);
    std::filesystem::create_directories(opts.out_dir);
    for (const Category c : categories) {
      const std::string name(category_name(c));
      TrainConfig tc{opts.lambda, opts.epochs, derive_seed(opts.split.seed, "svm/" + name)};
      const LinearModel model = train_category(partition(split, c, popts), features, tc);
      const auto path = opts.out_dir / (name + ".json");
      save_model(model, path);
      out << name << ": objective " << format_double(model.final_objective) << " -> "
          << path.string() << "\n";
    }
    return kExitOk;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return kExitFailure;
  }
}

int cmd_evaluate(const EvaluateOptions& opts, std::ostream& out, std::ostream& err) {
  try {
    const auto records = load_manifest(opts.manifest);
    const auto features = load_features(opts.features, opts.normalize);
    const auto popts = partition_options(opts.split);
    const GlobalSplit split = global_split(records, popts);
    std::map<std::string, double> ap;
    for (const Category c : kAllCategories) {
      const std::string name(category_name(c));
      const LinearModel model = load_model(opts.models / (name + ".json"));
      ap[name] = evaluate_category(model, partition(split, c, popts), features);
      out << name << " AP " << format_double(ap[name]) << "\n";
    }
    out << "mAP " << format_double(mean_average_precision(ap)) << "\n";
    return kExitOk;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return kExitFailure;
  }
}

int cmd_experiment(const std::filesystem::path& config_path,
                   const ExperimentOverrides& overrides, std::ostream& out,
                   std::ostream& err) {
  RunConfig cfg;
  try {
    cfg = load_run_config(config_path);
    if (overrides.output_dir) cfg.output_dir = *overrides.output_dir;
    if (overrides.seed) cfg.seed = *overrides.seed;
    if (overrides.jobs) cfg.jobs = *overrides.jobs;
    if (overrides.settings) cfg.settings = *overrides.settings;
    if (cfg.jobs < 1) throw Error(ErrorCode::kConfig, "--jobs must be >= 1");
    if (cfg.settings.empty()) throw Error(ErrorCode::kConfig, "settings must be non-empty");
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return kExitFailure;
  }

  std::ostringstream log;
  log << "config: " << config_path.string() << "\n";
  log << "resolved: " << cfg.resolved().dump() << "\n";
  const auto popts = cfg.partition_options();
  for (const Category c : kAllCategories) {
    const std::string name(category_name(c));
    log << "seed split/" << name << " = " << derive_seed(popts.seed, "split/" + name)
        << ", svm/" << name << " = " << derive_seed(popts.seed, "svm/" + name) << "\n";
  }

  std::error_code ec;
  std::filesystem::create_directories(cfg.output_dir, ec);
  if (ec || !std::filesystem::is_directory(cfg.output_dir)) {
    err << "error: cannot create output directory " << cfg.output_dir.string() << "\n";
    return kExitFailure;
  }
  const auto log_path = cfg.output_dir / "run.log";

  try {
    PartitionedDataset dataset;
    dataset.records = load_manifest(cfg.manifest_path, cfg.validate_files);
    dataset.partitions = partition_all(dataset.records, popts);
    log << "manifest: " << dataset.records.size() << " records\n";
    for (const auto& p : dataset.partitions) {
      log << "partition " << category_name(p.category) << ": pos_train=" << p.pos_train.size()
          << " pos_test=" << p.pos_test.size() << " neg_train=" << p.neg_train.size()
          << " neg_test=" << p.neg_test.size() << "\n";
    }
    write_text_file(cfg.output_dir / "partitions.json",
                    partitions_to_json(dataset.partitions, popts));

    const ExperimentResult result = run_experiment(dataset, cfg.experiment(), &log);
    result.table.write_csv(cfg.output_dir / "results.csv");
    result.table.write_text(cfg.output_dir / "results_table.txt");
    write_text_file(cfg.output_dir / "category_ap.csv", category_ap_csv(result.cells));
    log << "status: ok\n";
    write_text_file(log_path, log.str());
    out << result.table.to_text();
    return kExitOk;
  } catch (const std::exception& e) {
    log << "status: failed: " << e.what() << "\n";
    try {
      write_text_file(log_path, log.str());
    } catch (const std::exception&) {
    }
    err << "error: " << e.what() << "\n";
    return kExitFailure;
  }
}

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Superpixel-mask augmentation and weather classification experiments", "wxsp"};
  app.require_subcommand(1);

  SegmentOptions seg;
  auto* segment = app.add_subcommand("segment", "SLIC-segment one image and write a debug render");
  segment->add_option("image", seg.image, "Input PNG or JPEG")->required();
  segment->add_option("-k,--k", seg.k, "Number of superpixels (>= 1)")->required();
  segment->add_option("-o,--out", seg.out, "Output PNG")->required();
  segment->add_option("--compactness", seg.compactness, "SLIC compactness");
  segment->add_option("--iterations", seg.iterations, "SLIC iterations");

  AugmentOptions aug;
  std::string aug_color = "255,255,0";
  auto* augment_cmd = app.add_subcommand("augment", "Write superpixel-masked copies of a manifest");
  augment_cmd->add_option("-m,--manifest", aug.manifest, "Manifest CSV")->required();
  augment_cmd->add_option("-k,--k", aug.k, "Number of superpixels (0 = raw copy)")->required();
  augment_cmd->add_option("-o,--out", aug.out_dir, "Output directory")->required();
  augment_cmd->add_option("--color", aug_color, "Mask color r,g,b");
  augment_cmd->add_option("--compactness", aug.compactness, "SLIC compactness");
  augment_cmd->add_option("-j,--jobs", aug.jobs, "Parallel images");

  ExtractOptions ext;
  std::string ext_color = "255,255,0";
  auto* extract = app.add_subcommand("extract", "Compute built-in features into a WXFEAT file");
  extract->add_option("-m,--manifest", ext.manifest, "Manifest CSV")->required();
  extract->add_option("-e,--extractor", ext.extractor, "color_histogram | gradient_histogram");
  extract->add_option("-o,--out", ext.out, "Output WXFEAT file")->required();
  extract->add_option("-k,--k", ext.k, "Superpixel mask setting applied first (0 = raw)");
  extract->add_option("--color", ext_color, "Mask color r,g,b");
  extract->add_option("--compactness", ext.compactness, "SLIC compactness");
  extract->add_flag("--l2", ext.l2, "Store L2-normalized vectors");
  extract->add_option("-j,--jobs", ext.jobs, "Parallel images");

  auto add_split = [](CLI::App* cmd, SplitOptions& split) {
    cmd->add_option("--seed", split.seed, "Top-level seed");
    cmd->add_option("--train-fraction", split.train_fraction, "Training share per category");
    cmd->add_option("--negative-ratio", split.negative_ratio, "Negatives per positive");
  };

  TrainOptions tr;
  std::string tr_category;
  bool tr_raw = false;
  auto* train_cmd = app.add_subcommand("train", "Train per-category linear SVMs from a WXFEAT file");
  train_cmd->add_option("-m,--manifest", tr.manifest, "Manifest CSV")->required();
  train_cmd->add_option("-f,--features", tr.features, "WXFEAT file")->required();
  train_cmd->add_option("-o,--out-dir", tr.out_dir, "Directory for <category>.json models")->required();
  train_cmd->add_option("-c,--category", tr_category, "Single category (default: all)");
  train_cmd->add_option("--lambda", tr.lambda, "Regularization weight");
  train_cmd->add_option("--epochs", tr.epochs, "Passes over the training split");
  train_cmd->add_flag("--no-normalize", tr_raw, "Use features without L2 normalization");
  add_split(train_cmd, tr.split);

  EvaluateOptions ev;
  bool ev_raw = false;
  auto* evaluate = app.add_subcommand("evaluate", "AP per category and mAP of trained models");
  evaluate->add_option("-m,--manifest", ev.manifest, "Manifest CSV")->required();
  evaluate->add_option("-f,--features", ev.features, "WXFEAT file")->required();
  evaluate->add_option("--models", ev.models, "Directory of <category>.json models")->required();
  evaluate->add_flag("--no-normalize", ev_raw, "Use features without L2 normalization");
  add_split(evaluate, ev.split);

  std::filesystem::path config_path;
  ExperimentOverrides overrides;
  std::string out_dir_flag;
  std::uint64_t seed_flag = 0;
  int jobs_flag = 0;
  std::vector<int> settings_flag;
  auto* experiment = app.add_subcommand("experiment", "Run the full extractor x setting grid");
  experiment->add_option("-c,--config", config_path, "Run config JSON")->required();
  auto* out_opt = experiment->add_option("-o,--output-dir", out_dir_flag, "Override output_dir");
  auto* seed_opt = experiment->add_option("--seed", seed_flag, "Override seed");
  auto* jobs_opt = experiment->add_option("-j,--jobs", jobs_flag, "Override jobs");
  auto* settings_opt = experiment->add_option("--settings", settings_flag, "Override settings")
                           ->delimiter(',');

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  if (!reversed.empty()) reversed.pop_back();  // program name
  try {
    app.parse(reversed);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kExitOk;
  } catch (const CLI::ParseError& e) {
    err << "usage error: " << e.what() << "\n" << app.help();
    return kExitUsage;
  }

  try {
    if (*segment) return cmd_segment(seg, out, err);
    if (*augment_cmd) {
      aug.color = parse_color(aug_color);
      return cmd_augment(aug, out, err);
    }
    if (*extract) {
      ext.color = parse_color(ext_color);
      return cmd_extract(ext, out, err);
    }
    if (*train_cmd) {
      if (!tr_category.empty()) tr.category = tr_category;
      tr.normalize = !tr_raw;
      return cmd_train(tr, out, err);
    }
    if (*evaluate) {
      ev.normalize = !ev_raw;
      return cmd_evaluate(ev, out, err);
    }
    if (*experiment) {
      if (*out_opt) overrides.output_dir = out_dir_flag;
      if (*seed_opt) overrides.seed = seed_flag;
      if (*jobs_opt) overrides.jobs = jobs_flag;
      if (*settings_opt) overrides.settings = settings_flag;
      return cmd_experiment(config_path, overrides, out, err);
    }
  } catch (const CLI::ValidationError& e) {
    err << "usage error: " << e.what() << "\n";
    return kExitUsage;
  }
  return kExitUsage;
}

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  return run(std::vector<std::string>(argv, argv + argc), out, err);
}

}  // namespace wxsp::cli
