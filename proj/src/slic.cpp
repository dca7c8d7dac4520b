#include "wxsp/slic.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>
#include <numeric>
#include <string>
#include <unordered_map>

#include "wxsp/error.hpp"
#include "wxsp/rng.hpp"

namespace wxsp {
namespace {

struct Center {
  double l, a, b;
  double x, y;  // continuous image-plane coordinates
};

double lab_sq_dist(const Lab& p, const Center& c) {
  const double dl = p.l - c.l;
  const double da = p.a - c.a;
  const double db = p.b - c.b;
  return dl * dl + da * da + db * db;
}

double lab_sq_dist(const Lab& p, const Lab& q) {
  const double dl = p.l - q.l;
  const double da = p.a - q.a;
  const double db = p.b - q.b;
  return dl * dl + da * da + db * db;
}

double gradient(const LabImage& lab, int x, int y) {
  const int x0 = std::max(x - 1, 0);
  const int x1 = std::min(x + 1, lab.width - 1);
  const int y0 = std::max(y - 1, 0);
  const int y1 = std::min(y + 1, lab.height - 1);
  return lab_sq_dist(lab.at(x1, y), lab.at(x0, y)) +
         lab_sq_dist(lab.at(x, y1), lab.at(x, y0));
}

std::vector<Center> initial_centers(const LabImage& lab, int k) {
  const int w = lab.width;
  const int h = lab.height;
  const int cols = std::max(
      1, static_cast<int>(std::ceil(std::sqrt(static_cast<double>(k) * w / h))));
  const int rows = (k + cols - 1) / cols;
  const double step_x = static_cast<double>(w) / cols;
  const double step_y = static_cast<double>(h) / rows;

  std::vector<Center> centers;
  centers.reserve(static_cast<std::size_t>(k));
  for (int j = 0; j < rows && static_cast<int>(centers.size()) < k; ++j) {
    for (int i = 0; i < cols && static_cast<int>(centers.size()) < k; ++i) {
      const double cx = step_x / 2 + i * step_x;
      const double cy = step_y / 2 + j * step_y;
      int px = std::clamp(static_cast<int>(std::floor(cx)), 0, w - 1);
      int py = std::clamp(static_cast<int>(std::floor(cy)), 0, h - 1);

      double best = gradient(lab, px, py);
      int best_x = px;
      int best_y = py;
      for (int dy = -1; dy <= 1; ++dy) {
        for (int dx = -1; dx <= 1; ++dx) {
          const int nx = px + dx;
          const int ny = py + dy;
          if (nx < 0 || ny < 0 || nx >= w || ny >= h) continue;
          const double g = gradient(lab, nx, ny);
          if (g < best) {
            best = g;
            best_x = nx;
            best_y = ny;
          }
        }
      }
      Center c{};
      if (best_x == px && best_y == py) {
        c.x = cx;
        c.y = cy;
      } else {
        c.x = best_x + 0.5;
        c.y = best_y + 0.5;
      }
      const Lab& color = lab.at(best_x, best_y);
      c.l = color.l;
      c.a = color.a;
      c.b = color.b;
      centers.push_back(c);
    }
  }
  return centers;
}

// One assignment pass; afterwards every pixel carries a center index.
void assign(const LabImage& lab, const std::vector<Center>& centers, double s,
            double spatial_weight, std::vector<std::int32_t>& labels,
            std::vector<double>& dist) {
  const int w = lab.width;
  const int h = lab.height;
  std::fill(labels.begin(), labels.end(), -1);
  std::fill(dist.begin(), dist.end(), std::numeric_limits<double>::infinity());

  auto distance = [&](const Center& c, int x, int y) {
    const double dx = x + 0.5 - c.x;
    const double dy = y + 0.5 - c.y;
    return lab_sq_dist(lab.at(x, y), c) + (dx * dx + dy * dy) * spatial_weight;
  };

  for (std::size_t k = 0; k < centers.size(); ++k) {
    const Center& c = centers[k];
    // Pixels whose centers fall inside [c - S, c + S] on both axes.
    const int x_lo = std::max(0, static_cast<int>(std::ceil(c.x - s - 0.5)));
    const int x_hi = std::min(w - 1, static_cast<int>(std::floor(c.x + s - 0.5)));
    const int y_lo = std::max(0, static_cast<int>(std::ceil(c.y - s - 0.5)));
    const int y_hi = std::min(h - 1, static_cast<int>(std::floor(c.y + s - 0.5)));
    for (int y = y_lo; y <= y_hi; ++y) {
      for (int x = x_lo; x <= x_hi; ++x) {
        const std::size_t p = static_cast<std::size_t>(y) * w + x;
        const double d = distance(c, x, y);
        if (d < dist[p]) {
          dist[p] = d;
          labels[p] = static_cast<std::int32_t>(k);
        }
      }
    }
  }

  for (int y = 0; y < h; ++y) {
    for (int x = 0; x < w; ++x) {
      const std::size_t p = static_cast<std::size_t>(y) * w + x;
      if (labels[p] >= 0) continue;
      for (std::size_t k = 0; k < centers.size(); ++k) {
        const double d = distance(centers[k], x, y);
        if (d < dist[p]) {
          dist[p] = d;
          labels[p] = static_cast<std::int32_t>(k);
        }
      }
    }
  }
}

void update_centers(const LabImage& lab, const std::vector<std::int32_t>& labels,
                    std::vector<Center>& centers) {
  struct Sum {
    double l = 0, a = 0, b = 0, x = 0, y = 0;
    std::size_t n = 0;
  };
  std::vector<Sum> sums(centers.size());
  for (int y = 0; y < lab.height; ++y) {
    for (int x = 0; x < lab.width; ++x) {
      const std::size_t p = static_cast<std::size_t>(y) * lab.width + x;
      Sum& s = sums[static_cast<std::size_t>(labels[p])];
      const Lab& c = lab.data[p];
      s.l += c.l;
      s.a += c.a;
      s.b += c.b;
      s.x += x + 0.5;
      s.y += y + 0.5;
      ++s.n;
    }
  }
  for (std::size_t k = 0; k < centers.size(); ++k) {
    const Sum& s = sums[k];
    if (s.n == 0) continue;  // empty cluster keeps its last position
    const double n = static_cast<double>(s.n);
    centers[k] = {s.l / n, s.a / n, s.b / n, s.x / n, s.y / n};
  }
}

// Labels 4-connected components in scan order; returns the component count.
int connected_components(int w, int h, const std::vector<std::int32_t>& labels,
                         std::vector<std::int32_t>& component) {
  component.assign(labels.size(), -1);
  std::vector<std::size_t> stack;
  int count = 0;
  for (std::size_t start = 0; start < labels.size(); ++start) {
    if (component[start] >= 0) continue;
    const std::int32_t label = labels[start];
    component[start] = count;
    stack.push_back(start);
    while (!stack.empty()) {
      const std::size_t p = stack.back();
      stack.pop_back();
      const int x = static_cast<int>(p % static_cast<std::size_t>(w));
      const int y = static_cast<int>(p / static_cast<std::size_t>(w));
      const std::size_t neighbours[4] = {p - 1, p + 1, p - static_cast<std::size_t>(w),
                                         p + static_cast<std::size_t>(w)};
      const bool valid[4] = {x > 0, x + 1 < w, y > 0, y + 1 < h};
      for (int i = 0; i < 4; ++i) {
        if (!valid[i]) continue;
        const std::size_t q = neighbours[i];
        if (component[q] < 0 && labels[q] == label) {
          component[q] = count;
          stack.push_back(q);
        }
      }
    }
    ++count;
  }
  return count;
}

// Small fragments adopt the SLIC label they share the most border with and
// fuse with the neighbouring components carrying that label. Passes repeat
// until every remaining component reaches the size floor (or only one is
// left). Each relabel removes at least one component, so this terminates.
void enforce_connectivity(int w, int h, int k, std::vector<std::int32_t>& labels) {
  std::vector<std::int32_t> component;
  const int n_components = connected_components(w, h, labels, component);
  const double min_size = static_cast<double>(labels.size()) / (4.0 * k);
  const auto nc = static_cast<std::size_t>(n_components);

  std::vector<int> parent(nc);
  std::iota(parent.begin(), parent.end(), 0);
  auto find = [&parent](int i) {
    while (parent[static_cast<std::size_t>(i)] != i) {
      auto& p = parent[static_cast<std::size_t>(i)];
      p = parent[static_cast<std::size_t>(p)];
      i = p;
    }
    return i;
  };

  std::vector<std::size_t> size(nc, 0);
  std::vector<std::int32_t> label(nc, 0);
  std::vector<std::unordered_map<int, std::size_t>> adjacent(nc);
  for (std::size_t p = 0; p < component.size(); ++p) {
    const int c = component[p];
    ++size[static_cast<std::size_t>(c)];
    label[static_cast<std::size_t>(c)] = labels[p];
    const int x = static_cast<int>(p % static_cast<std::size_t>(w));
    const int y = static_cast<int>(p / static_cast<std::size_t>(w));
    if (x + 1 < w && component[p + 1] != c) {
      ++adjacent[static_cast<std::size_t>(c)][component[p + 1]];
      ++adjacent[static_cast<std::size_t>(component[p + 1])][c];
    }
    if (y + 1 < h) {
      const int d = component[p + static_cast<std::size_t>(w)];
      if (d != c) {
        ++adjacent[static_cast<std::size_t>(c)][d];
        ++adjacent[static_cast<std::size_t>(d)][c];
      }
    }
  }

  // The lower id stays the representative; the bigger map is kept.
  auto unite = [&](int a, int b) {
    if (b < a) std::swap(a, b);
    auto& ma = adjacent[static_cast<std::size_t>(a)];
    auto& mb = adjacent[static_cast<std::size_t>(b)];
    if (ma.size() < mb.size()) ma.swap(mb);
    for (const auto& [key, count] : mb) ma[key] += count;
    mb.clear();
    size[static_cast<std::size_t>(a)] += size[static_cast<std::size_t>(b)];
    parent[static_cast<std::size_t>(b)] = a;
    return a;
  };

  std::map<std::int32_t, std::size_t> border_by_label;
  std::vector<int> same_label;
  for (bool changed = true; changed;) {
    changed = false;
    for (int c = 0; c < n_components; ++c) {
      if (find(c) != c) continue;
      if (static_cast<double>(size[static_cast<std::size_t>(c)]) >= min_size) continue;

      border_by_label.clear();
      for (const auto& [key, count] : adjacent[static_cast<std::size_t>(c)]) {
        const int r = find(key);
        if (r != c) border_by_label[label[static_cast<std::size_t>(r)]] += count;
      }
      if (border_by_label.empty()) continue;  // the whole image
      auto best = border_by_label.begin();
      for (auto it = border_by_label.begin(); it != border_by_label.end(); ++it) {
        if (it->second > best->second) best = it;
      }
      const std::int32_t target = best->first;

      same_label.clear();
      for (const auto& [key, count] : adjacent[static_cast<std::size_t>(c)]) {
        const int r = find(key);
        if (r != c && label[static_cast<std::size_t>(r)] == target) same_label.push_back(r);
      }
      std::sort(same_label.begin(), same_label.end());
      same_label.erase(std::unique(same_label.begin(), same_label.end()), same_label.end());
      int root = c;
      for (const int r : same_label) root = unite(root, find(r));
      label[static_cast<std::size_t>(root)] = target;
      changed = true;
    }
  }

  for (std::size_t p = 0; p < labels.size(); ++p) {
    labels[p] = find(component[p]);
  }
}

// Renumbers labels by first appearance in scan order.
int compact_labels(std::vector<std::int32_t>& labels, std::size_t label_bound) {
  std::vector<std::int32_t> remap(label_bound, -1);
  std::int32_t next = 0;
  for (auto& label : labels) {
    auto& m = remap[static_cast<std::size_t>(label)];
    if (m < 0) m = next++;
    label = m;
  }
  return next;
}

}  // namespace

Segmentation slic_segment(const LabImage& lab, const SlicParams& params) {
  if (lab.width < 1 || lab.height < 1 ||
      lab.data.size() != static_cast<std::size_t>(lab.width) * lab.height) {
    throw Error(ErrorCode::kInvalidArgument, "malformed Lab image");
  }
  if (params.target_count < 1) {
    throw Error(ErrorCode::kInvalidArgument, "superpixel count must be >= 1");
  }
  if (!(params.compactness > 0.0) || !std::isfinite(params.compactness)) {
    throw Error(ErrorCode::kInvalidArgument, "compactness must be positive");
  }
  if (params.max_iterations < 1) {
    throw Error(ErrorCode::kInvalidArgument, "max_iterations must be >= 1");
  }
  const std::size_t n = lab.data.size();
  if (static_cast<std::size_t>(params.target_count) > n) {
    throw Error(ErrorCode::kTargetCountExceedsPixels,
                std::to_string(params.target_count) + " superpixels requested for " +
                    std::to_string(n) + " pixels");
  }

  const int k = params.target_count;
  const double s = std::sqrt(static_cast<double>(n) / k);
  const double spatial_weight = params.compactness * params.compactness / (s * s);

  std::vector<Center> centers = initial_centers(lab, k);
  std::vector<std::int32_t> labels(n, -1);
  std::vector<double> dist(n);
  for (int iter = 0; iter < params.max_iterations; ++iter) {
    assign(lab, centers, s, spatial_weight, labels, dist);
    update_centers(lab, labels, centers);
  }

  Segmentation seg{lab.width, lab.height, std::move(labels), 0};
  std::size_t label_bound = centers.size();
  if (params.enforce_connectivity) {
    enforce_connectivity(lab.width, lab.height, k, seg.labels);
    label_bound = n;
  }
  seg.segment_count = compact_labels(seg.labels, label_bound);
  return seg;
}

std::vector<bool> boundary_map(const Segmentation& seg) {
  std::vector<bool> marked(seg.labels.size(), false);
  for (int y = 0; y < seg.height; ++y) {
    for (int x = 0; x < seg.width; ++x) {
      const std::int32_t label = seg.at(x, y);
      const bool right = x + 1 < seg.width && seg.at(x + 1, y) != label;
      const bool down = y + 1 < seg.height && seg.at(x, y + 1) != label;
      marked[static_cast<std::size_t>(y) * seg.width + x] = right || down;
    }
  }
  return marked;
}

Rgb label_color(std::int32_t label) {
  const std::uint64_t h = splitmix64(static_cast<std::uint64_t>(label));
  return {static_cast<std::uint8_t>(h), static_cast<std::uint8_t>(h >> 8),
          static_cast<std::uint8_t>(h >> 16)};
}

Image render_segmentation(const Segmentation& seg) {
  Image out(seg.width, seg.height);
  for (int y = 0; y < seg.height; ++y) {
    for (int x = 0; x < seg.width; ++x) out.set(x, y, label_color(seg.at(x, y)));
  }
  return out;
}

}  // namespace wxsp
