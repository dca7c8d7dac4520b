#include "wxsp/mask.hpp"

#include <system_error>

#include "wxsp/error.hpp"
#include "wxsp/parallel.hpp"

namespace wxsp {

Image apply_mask(const Image& img, const Segmentation& seg, Rgb color) {
  if (img.width() != seg.width || img.height() != seg.height) {
    throw Error(ErrorCode::kDimensionMismatch,
                "image is " + std::to_string(img.width()) + "x" +
                    std::to_string(img.height()) + ", segmentation is " +
                    std::to_string(seg.width) + "x" + std::to_string(seg.height));
  }
  Image out = img;
  const std::vector<bool> boundary = boundary_map(seg);
  for (int y = 0; y < img.height(); ++y) {
    for (int x = 0; x < img.width(); ++x) {
      if (boundary[static_cast<std::size_t>(y) * img.width() + x]) out.set(x, y, color);
    }
  }
  return out;
}

Image augment(const Image& img, const OverlaySpec& spec) {
  return augment(img, spec, nullptr);
}

Image augment(const Image& img, const OverlaySpec& spec, int* realized_count) {
  if (spec.superpixel_count < 0) {
    throw Error(ErrorCode::kInvalidArgument, "superpixel count must be >= 0");
  }
  if (spec.superpixel_count == 0) {
    if (realized_count) *realized_count = 0;
    return img;
  }
  SlicParams params;
  params.target_count = spec.superpixel_count;
  params.compactness = spec.compactness;
  const Segmentation seg = slic_segment(rgb_to_lab(img), params);
  if (realized_count) *realized_count = seg.segment_count;
  return apply_mask(img, seg, spec.color);
}

std::filesystem::path augmented_name(const std::filesystem::path& input, int k) {
  const std::string stem = input.stem().string() + "_sp" + std::to_string(k);
  return k == 0 ? stem + input.extension().string() : stem + ".png";
}

BatchReport augment_batch(const std::vector<std::filesystem::path>& inputs,
                          const OverlaySpec& spec, const std::filesystem::path& out_dir,
                          int jobs) {
  BatchReport report;
  std::error_code ec;
  std::filesystem::create_directories(out_dir, ec);
  if (ec || !std::filesystem::is_directory(out_dir)) {
    for (const auto& input : inputs) {
      report.failures.push_back(
          {input, "cannot create output directory " + out_dir.string()});
    }
    return report;
  }

  struct Outcome {
    std::filesystem::path written;
    int realized = 0;
    std::string error;
  };
  std::vector<Outcome> outcomes(inputs.size());
  parallel_for(inputs.size(), jobs, [&](std::size_t i) {
    const auto& input = inputs[i];
    const auto target = out_dir / augmented_name(input, spec.superpixel_count);
    try {
      if (spec.superpixel_count == 0) {
        // Still decode so that unreadable inputs are reported.
        load_image(input);
        std::error_code copy_ec;
        std::filesystem::copy_file(input, target,
                                   std::filesystem::copy_options::overwrite_existing,
                                   copy_ec);
        if (copy_ec) throw Error(ErrorCode::kIoFailure, target.string() + ": " + copy_ec.message());
      } else {
        save_image(augment(load_image(input), spec, &outcomes[i].realized), target);
      }
      outcomes[i].written = target;
    } catch (const std::exception& e) {
      outcomes[i].error = e.what();
    }
  });

  for (std::size_t i = 0; i < inputs.size(); ++i) {
    if (outcomes[i].error.empty()) {
      report.written.push_back(outcomes[i].written);
      report.realized_counts.push_back(outcomes[i].realized);
    } else {
      report.failures.push_back({inputs[i], outcomes[i].error});
    }
  }
  return report;
}

}  // namespace wxsp
