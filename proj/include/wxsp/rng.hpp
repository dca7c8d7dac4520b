#pragma once

#include <cstdint>
#include <random>
#include <span>
#include <string_view>

namespace wxsp {

// All randomness in the pipeline flows through these helpers so that a run is
// reproducible from one top-level seed.
//
// Seeds for sub-stages are derived as splitmix64(seed ^ fnv1a64(tag)), where
// the tag names the stage (and category, epoch, ...), e.g. "svm/rainy".
// Streams are std::mt19937_64 and bounded draws use rejection sampling, so the
// sequence is fully specified and does not depend on the standard library's
// distribution implementations.

std::uint64_t splitmix64(std::uint64_t x);
std::uint64_t fnv1a64(std::string_view text);
std::uint64_t derive_seed(std::uint64_t seed, std::string_view tag);

using Rng = std::mt19937_64;

// Uniform integer in [0, bound); bound must be > 0.
std::uint64_t uniform_below(Rng& rng, std::uint64_t bound);

// Fisher-Yates, drawing j uniformly from [0, i] for i = n-1 down to 1.
template <typename T>
void shuffle(std::span<T> items, Rng& rng) {
  for (std::size_t i = items.size(); i > 1; --i) {
    const auto j = static_cast<std::size_t>(uniform_below(rng, i));
    std::swap(items[i - 1], items[j]);
  }
}

}  // namespace wxsp
