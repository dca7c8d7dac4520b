#pragma once

#include <cstdint>
#include <filesystem>
#include <vector>

#include "wxsp/image.hpp"

namespace wxsp {

struct SlicParams {
  int target_count = 25;  // K, the requested number of superpixels
  double compactness = 10.0;
  int max_iterations = 10;
  bool enforce_connectivity = true;
};

// Per-pixel superpixel labels in [0, segment_count), row-major.
struct Segmentation {
  int width = 0;
  int height = 0;
  std::vector<std::int32_t> labels;
  int segment_count = 0;

  std::int32_t at(int x, int y) const {
    return labels[static_cast<std::size_t>(y) * width + x];
  }
};

// SLIC superpixels: localized k-means over (L, a, b, x, y) with distance
//   D = sqrt(d_lab^2 + (d_xy / S)^2 * m^2),  S = sqrt(N / K).
//
// Pixels are treated as unit squares, so pixel (x, y) sits at (x + .5, y + .5)
// and initial centers sit at the middle of the cells of a cols x rows grid
// (cols = ceil(sqrt(K * w / h)), rows = ceil(K / cols), first K cells kept in
// row-major order). Each center then moves to the lowest-gradient pixel of its
// 3x3 neighbourhood, staying put on ties. Each iteration every center claims
// the pixels of its 2S x 2S window that it is strictly closer to than any
// lower-index center; pixels outside every window fall back to the nearest
// center overall. With enforce_connectivity, a 4-connected component smaller
// than N / (4K) takes the SLIC label it shares the most border with (ties to
// the lower label) and joins the adjacent components of that label, repeated
// until none is left; each remaining component is one segment, ids compacted
// in scan order.
//
// Errors: kInvalidArgument for a bad parameter, kTargetCountExceedsPixels when
// K > N.
Segmentation slic_segment(const LabImage& lab, const SlicParams& params);

// True where a pixel's label differs from its right or lower neighbour.
std::vector<bool> boundary_map(const Segmentation& seg);

// Deterministic pseudo-color per label, for debug renders.
Rgb label_color(std::int32_t label);
Image render_segmentation(const Segmentation& seg);

}  // namespace wxsp
