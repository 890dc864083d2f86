#pragma once

#include <cstdint>
#include <span>
#include <vector>

namespace walksparse {

/// Draws indices with probability proportional to nonnegative weights by
/// binary search over inclusive prefix sums.
class PrefixSampler {
 public:
  /// Throws std::invalid_argument on a negative or non-finite weight, or
  /// when every weight is zero.
  explicit PrefixSampler(std::span<const double> weights);

  std::size_t size() const { return prefix_.size(); }
  double total() const { return prefix_.empty() ? 0.0 : prefix_.back(); }

  /// Index i with prefix[i-1] <= unit * total < prefix[i]; `unit` in [0, 1).
  std::size_t draw(double unit) const { return draw_from(unit, *guide_entry(unit)); }
  /// draw() in two halves, for callers that prefetch between them: the
  /// guide entry to read, then the search started from its value.
  const std::size_t* guide_entry(double unit) const;
  std::size_t draw_from(double unit, std::size_t guide) const;
  const double* prefix_data() const { return prefix_.data(); }
  /// Exact probability of draw() returning i, read off the prefix sums.
  double probability(std::size_t i) const;

 private:
  std::vector<double> prefix_;
  // guide_[b] = first index whose prefix exceeds b * total / size(); lets
  // draw() start its search next to the answer.
  std::vector<std::size_t> guide_;
  std::size_t last_positive_ = 0;
};

/// Counts of `samples` independent draws. Draw s uses the kEdgeSampling
/// substream at index s, so both kernels return identical counts.
std::vector<std::uint64_t> draw_counts_serial(const PrefixSampler& sampler,
                                              std::uint64_t samples, std::uint64_t seed);
/// OpenMP kernel; falls back to the serial loop when built without OpenMP.
std::vector<std::uint64_t> draw_counts(const PrefixSampler& sampler, std::uint64_t samples,
                                       std::uint64_t seed);

/// Caps the worker count used by the OpenMP kernels (0 keeps the default).
void set_thread_limit(int threads);
int thread_limit();

}  // namespace walksparse
