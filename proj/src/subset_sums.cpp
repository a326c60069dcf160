#include "polyvol/subset_sums.hpp"

namespace polyvol {
namespace {

std::vector<SignedSum> collect(std::span<const double> values, SubsetFamily family) {
  SignedSumStream stream(values, family);
  std::vector<SignedSum> out(stream.size());
  stream.next_block(out);
  return out;
}

}  // namespace

std::vector<SignedSum> all_signed_sums(std::span<const double> values) {
  return collect(values, SubsetFamily::All);
}

std::vector<SignedSum> odd_signed_sums(std::span<const double> values) {
  return collect(values, SubsetFamily::Odd);
}

}  // namespace polyvol
