#pragma once

#include <bit>
#include <cstddef>
#include <cstdint>
#include <span>
#include <stdexcept>
#include <vector>

#include "polyvol/error.hpp"
#include "polyvol/side_lengths.hpp"

namespace polyvol {

inline constexpr std::size_t kMaxSubsetElements = 24;

/// delta = r_I - r_Ibar for one subset I (bit i set when side i is in I).
template <typename T>
struct BasicSignedSum {
  std::uint32_t subset = 0;
  int cardinality = 0;
  T delta{};

  int parity() const { return cardinality & 1; }
};

using SignedSum = BasicSignedSum<double>;

enum class SubsetFamily { All, Odd };

/// Enumerates r_I - r_Ibar over all subsets, or over odd-cardinality subsets,
/// in reflected Gray-code order so each step costs one add/subtract.
///
/// The odd family walks the Gray code over the first n-1 elements and adds the
/// last element whenever the walked subset has even size. Floating-point
/// deltas are recomputed from scratch every kRefreshPeriod steps to bound
/// drift; integer deltas are exact.
template <typename T>
class BasicSignedSumStream {
 public:
  static constexpr std::uint64_t kRefreshPeriod = std::uint64_t{1} << 16;

  BasicSignedSumStream(std::span<const T> values, SubsetFamily family)
      : values_(values.begin(), values.end()), family_(family) {
    if (values_.empty() || values_.size() > kMaxSubsetElements) {
      throw Error(ErrorKind::OutOfRange, "subset enumeration needs 1 <= n <= 24");
    }
    walked_ = family_ == SubsetFamily::All ? values_.size() : values_.size() - 1;
    size_ = std::uint64_t{1} << walked_;
    reset();
  }

  std::uint64_t size() const { return size_; }
  std::size_t n() const { return values_.size(); }

  void reset() {
    step_ = 0;
    mask_ = 0;
    walked_delta_ = T{};
    for (std::size_t i = 0; i < walked_; ++i) walked_delta_ -= values_[i];
  }

  bool next(BasicSignedSum<T>& out) {
    if (step_ == size_) return false;
    if (step_ != 0) {
      const auto bit = static_cast<unsigned>(std::countr_zero(step_));
      mask_ ^= std::uint32_t{1} << bit;
      if ((step_ % kRefreshPeriod) == 0) {
        walked_delta_ = recompute(mask_);
      } else if (mask_ & (std::uint32_t{1} << bit)) {
        walked_delta_ += values_[bit] + values_[bit];
      } else {
        walked_delta_ -= values_[bit] + values_[bit];
      }
    }
    ++step_;
    emit(out);
    return true;
  }

  /// Fills up to out.size() entries; returns how many were written.
  std::size_t next_block(std::span<BasicSignedSum<T>> out) {
    std::size_t written = 0;
    while (written < out.size() && next(out[written])) ++written;
    return written;
  }

 private:
  T recompute(std::uint32_t mask) const {
    T d{};
    for (std::size_t i = 0; i < walked_; ++i) {
      if (mask & (std::uint32_t{1} << i)) {
        d += values_[i];
      } else {
        d -= values_[i];
      }
    }
    return d;
  }

  void emit(BasicSignedSum<T>& out) const {
    const int walked_card = std::popcount(mask_);
    if (family_ == SubsetFamily::All) {
      out = {mask_, walked_card, walked_delta_};
      return;
    }
    const std::uint32_t last = std::uint32_t{1} << walked_;
    if (walked_card % 2 == 0) {
      out = {mask_ | last, walked_card + 1, walked_delta_ + values_[walked_]};
    } else {
      out = {mask_, walked_card, walked_delta_ - values_[walked_]};
    }
  }

  std::vector<T> values_;
  SubsetFamily family_;
  std::size_t walked_ = 0;
  std::uint64_t size_ = 0;
  std::uint64_t step_ = 0;
  std::uint32_t mask_ = 0;
  T walked_delta_{};
};

using SignedSumStream = BasicSignedSumStream<double>;

/// Materialized streams; intended for small n.
std::vector<SignedSum> all_signed_sums(std::span<const double> values);
std::vector<SignedSum> odd_signed_sums(std::span<const double> values);
inline std::vector<SignedSum> all_signed_sums(const SideLengths& r) { return all_signed_sums(r.values()); }
inline std::vector<SignedSum> odd_signed_sums(const SideLengths& r) { return odd_signed_sums(r.values()); }

}  // namespace polyvol
