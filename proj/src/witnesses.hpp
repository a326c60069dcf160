#pragma once

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <limits>
#include <utility>
#include <vector>

#include "polyvol/side_lengths.hpp"

namespace polyvol::detail {

/// Tracks the minimum margin and the subsets that are tight (|m| <= tight) or
/// violated (m < -tight).
template <typename T>
class WitnessCollector {
 public:
  explicit WitnessCollector(T tight) : tight_(tight) {}

  void add(T margin, std::uint32_t subset) {
    if (first_ || margin < min_) {
      min_ = margin;
      first_ = false;
    }
    if (margin < -tight_) {
      violated_.emplace_back(margin, subset);
      if (violated_.size() > kPrune) prune(violated_);
    } else if (margin <= tight_ && tight_subsets_.size() < FeasibilityReport::kMaxWitnesses) {
      tight_subsets_.push_back(subset);
    }
  }

  T min_margin() const { return min_; }

  FeasibilityReport report() {
    FeasibilityReport r;
    if (!violated_.empty()) {
      r.verdict = Verdict::Empty;
      prune(violated_);
      for (const auto& [m, s] : violated_) r.witnesses.push_back(s);
    } else if (!tight_subsets_.empty()) {
      r.verdict = Verdict::Boundary;
      r.witnesses = tight_subsets_;
    } else {
      r.verdict = Verdict::Interior;
    }
    return r;
  }

 private:
  static constexpr std::size_t kPrune = 4096;

  // Keeps the most violated entries, ordered by margin then subset.
  static void prune(std::vector<std::pair<T, std::uint32_t>>& v) {
    const std::size_t keep = std::min(v.size(), FeasibilityReport::kMaxWitnesses);
    std::partial_sort(v.begin(), v.begin() + static_cast<std::ptrdiff_t>(keep), v.end());
    v.resize(keep);
  }

  T tight_;
  T min_{};
  bool first_ = true;
  std::vector<std::pair<T, std::uint32_t>> violated_;
  std::vector<std::uint32_t> tight_subsets_;
};

}  // namespace polyvol::detail
