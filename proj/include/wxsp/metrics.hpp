#pragma once

#include <map>
#include <span>
#include <string>

namespace wxsp {

struct RankedItem {
  std::string image_id;
  double score = 0.0;
  bool is_positive = false;
};

// Un-interpolated average precision: items are stably sorted by descending
// score (ties keep input order) and precision@k is averaged over the ranks k
// holding a positive. Errors: kNoPositives, kNoNegatives, kNonFiniteInput.
double average_precision(std::span<const RankedItem> items);

// Arithmetic mean of per-category AP. Errors: kEmptyInput, kInvalidArgument
// for a value outside [0, 1].
double mean_average_precision(const std::map<std::string, double>& per_category_ap);

}  // namespace wxsp
