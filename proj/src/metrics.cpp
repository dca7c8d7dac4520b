#include "wxsp/metrics.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <vector>

#include "wxsp/error.hpp"

namespace wxsp {

double average_precision(std::span<const RankedItem> items) {
  std::size_t total_pos = 0;
  for (const auto& item : items) {
    if (!std::isfinite(item.score)) {
      throw Error(ErrorCode::kNonFiniteInput, "score of '" + item.image_id + "'");
    }
    if (item.is_positive) ++total_pos;
  }
  if (total_pos == 0) throw Error(ErrorCode::kNoPositives, "ranking has no positive item");
  if (total_pos == items.size()) {
    throw Error(ErrorCode::kNoNegatives, "ranking has no negative item");
  }

  std::vector<std::size_t> order(items.size());
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
    return items[a].score > items[b].score;
  });

  double sum = 0.0;
  std::size_t hits = 0;
  for (std::size_t rank = 0; rank < order.size(); ++rank) {
    if (!items[order[rank]].is_positive) continue;
    ++hits;
    sum += static_cast<double>(hits) / static_cast<double>(rank + 1);
  }
  return sum / static_cast<double>(total_pos);
}

double mean_average_precision(const std::map<std::string, double>& per_category_ap) {
  if (per_category_ap.empty()) throw Error(ErrorCode::kEmptyInput, "no categories");
  double sum = 0.0;
  for (const auto& [category, ap] : per_category_ap) {
    if (!(ap >= 0.0 && ap <= 1.0)) {
      throw Error(ErrorCode::kInvalidArgument,
                  "AP for " + category + " is outside [0, 1]");
    }
    sum += ap;
  }
  return sum / static_cast<double>(per_category_ap.size());
}

}  // namespace wxsp
