#include "walksparse/sampling.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

#ifdef WALKSPARSE_HAVE_OPENMP
#include <omp.h>
#endif

#include "walksparse/random.hpp"

namespace walksparse {

PrefixSampler::PrefixSampler(std::span<const double> weights) : prefix_(weights.size()) {
  double running = 0.0;
  bool any_positive = false;
  for (std::size_t i = 0; i < weights.size(); ++i) {
    const double w = weights[i];
    if (!(w >= 0.0) || !std::isfinite(w)) {
      throw std::invalid_argument("sampling weight " + std::to_string(i) +
                                  " is negative or not finite");
    }
    running += w;
    prefix_[i] = running;
    if (w > 0.0) {
      any_positive = true;
      last_positive_ = i;
    }
  }
  if (!any_positive) throw std::invalid_argument("sampling weights are all zero");
  const std::size_t buckets = prefix_.size();
  guide_.resize(buckets + 1);
  const double total = prefix_.back();
  std::size_t idx = 0;
  for (std::size_t b = 0; b <= buckets; ++b) {
    const double threshold = static_cast<double>(b) * total / static_cast<double>(buckets);
    while (idx < prefix_.size() && prefix_[idx] <= threshold) ++idx;
    guide_[b] = idx;
  }
}

const std::size_t* PrefixSampler::guide_entry(double unit) const {
  const std::size_t size = prefix_.size();
  auto bucket = static_cast<std::size_t>(unit * static_cast<double>(size));
  if (bucket > size) bucket = size;
  return guide_.data() + bucket;
}

std::size_t PrefixSampler::draw_from(double unit, std::size_t guide) const {
  // Same index as upper_bound over the prefix sums.
  const double target = unit * prefix_.back();
  const std::size_t size = prefix_.size();
  std::size_t idx = guide > 0 ? guide - 1 : 0;
  if (idx > 0 && prefix_[idx - 1] > target) {
    idx = static_cast<std::size_t>(
        std::upper_bound(prefix_.begin(), prefix_.end(), target) - prefix_.begin());
  } else {
    while (idx < size && prefix_[idx] <= target) ++idx;
  }
  return std::min(idx, last_positive_);
}

double PrefixSampler::probability(std::size_t i) const {
  const double lo = i == 0 ? 0.0 : prefix_[i - 1];
  return (prefix_[i] - lo) / prefix_.back();
}

std::vector<std::uint64_t> draw_counts_serial(const PrefixSampler& sampler,
                                              std::uint64_t samples, std::uint64_t seed) {
  std::vector<std::uint64_t> counts(sampler.size(), 0);
  for (std::uint64_t s = 0; s < samples; ++s) {
    auto rng = SplitMix64::substream(seed, Stream::kEdgeSampling, s);
    ++counts[sampler.draw(rng.uniform())];
  }
  return counts;
}

namespace {
int g_thread_limit = 0;
}

void set_thread_limit(int threads) {
  g_thread_limit = std::max(0, threads);
#ifdef WALKSPARSE_HAVE_OPENMP
  if (g_thread_limit > 0) omp_set_num_threads(g_thread_limit);
#endif
}

int thread_limit() { return g_thread_limit; }

std::vector<std::uint64_t> draw_counts(const PrefixSampler& sampler, std::uint64_t samples,
                                       std::uint64_t seed) {
#ifdef WALKSPARSE_HAVE_OPENMP
  const std::size_t m = sampler.size();
  std::vector<std::uint64_t> counts(m, 0);
#pragma omp parallel
  {
    std::vector<std::uint64_t> local(m, 0);
#pragma omp for schedule(static) nowait
    for (std::int64_t s = 0; s < static_cast<std::int64_t>(samples); ++s) {
      auto rng = SplitMix64::substream(seed, Stream::kEdgeSampling, static_cast<std::uint64_t>(s));
      ++local[sampler.draw(rng.uniform())];
    }
#pragma omp critical
    for (std::size_t i = 0; i < m; ++i) counts[i] += local[i];
  }
  return counts;
#else
  return draw_counts_serial(sampler, samples, seed);
#endif
}

}  // namespace walksparse
