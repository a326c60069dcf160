#include <atomic>
#include <cstdlib>
#include <string>
#include <string_view>

#include "polyvol/error.hpp"
#include "polyvol/kernels.hpp"

namespace polyvol::kernels {
namespace {

bool cpu_has_avx2() {
#if defined(POLYVOL_WITH_AVX2) && (defined(__x86_64__) || defined(__i386__))
  __builtin_cpu_init();
  return __builtin_cpu_supports("avx2") && __builtin_cpu_supports("fma");
#else
  return false;
#endif
}

Backend initial_backend() {
  if (const char* env = std::getenv("POLYVOL_KERNEL")) {
    const std::string_view name(env);
    if (name == "scalar") return Backend::Scalar;
    if (name == "avx2" && supported(Backend::Avx2)) return Backend::Avx2;
  }
  return supported(Backend::Avx2) ? Backend::Avx2 : Backend::Scalar;
}

std::atomic<Backend>& active() {
  static std::atomic<Backend> backend{initial_backend()};
  return backend;
}

void check_sine_args(std::span<const double> angles, std::uint64_t k_first) {
  if (angles.size() > kMaxAngles) throw Error(ErrorKind::OutOfRange, "too many angles for sine_product_sum");
  if (k_first == 0) throw Error(ErrorKind::Domain, "series index starts at 1");
}

void check_weights(std::size_t deltas, std::size_t weights) {
  if (deltas != weights) throw Error(ErrorKind::Domain, "deltas and weights differ in length");
}

}  // namespace

std::string_view to_string(Backend backend) {
  return backend == Backend::Avx2 ? "avx2" : "scalar";
}

bool supported(Backend backend) {
  if (backend == Backend::Scalar) return true;
  static const bool avx2 = cpu_has_avx2();
  return avx2;
}

Backend active_backend() { return active().load(std::memory_order_relaxed); }

void set_active_backend(Backend backend) {
  if (!supported(backend)) {
    throw Error(ErrorKind::Unsupported, "kernel backend " + std::string(to_string(backend)) + " unavailable");
  }
  active().store(backend, std::memory_order_relaxed);
}

double sine_product_sum(std::span<const double> angles, int exponent, std::uint64_t k_first,
                        std::uint64_t k_last) {
  check_sine_args(angles, k_first);
#ifdef POLYVOL_WITH_AVX2
  if (active_backend() == Backend::Avx2) return avx2::sine_product_sum(angles, exponent, k_first, k_last);
#endif
  return scalar::sine_product_sum(angles, exponent, k_first, k_last);
}

DoubleDouble periodic_polynomial_sum(std::span<const DoubleDouble> deltas, std::span<const double> weights,
                                     std::span<const DoubleDouble> coeffs) {
  check_weights(deltas.size(), weights.size());
#ifdef POLYVOL_WITH_AVX2
  if (active_backend() == Backend::Avx2) return avx2::periodic_polynomial_sum(deltas, weights, coeffs);
#endif
  return scalar::periodic_polynomial_sum(deltas, weights, coeffs);
}

DoubleDouble power_sum(std::span<const DoubleDouble> deltas, std::span<const double> weights, int exponent,
                       bool signed_terms) {
  check_weights(deltas.size(), weights.size());
#ifdef POLYVOL_WITH_AVX2
  if (active_backend() == Backend::Avx2) return avx2::power_sum(deltas, weights, exponent, signed_terms);
#endif
  return scalar::power_sum(deltas, weights, exponent, signed_terms);
}

#ifndef POLYVOL_WITH_AVX2
// Linked so tests can name the symbols on every target; never dispatched to.
namespace avx2 {
double sine_product_sum(std::span<const double> a, int p, std::uint64_t k0, std::uint64_t k1) {
  return scalar::sine_product_sum(a, p, k0, k1);
}
DoubleDouble periodic_polynomial_sum(std::span<const DoubleDouble> d, std::span<const double> w,
                                     std::span<const DoubleDouble> c) {
  return scalar::periodic_polynomial_sum(d, w, c);
}
DoubleDouble power_sum(std::span<const DoubleDouble> d, std::span<const double> w, int p, bool s) {
  return scalar::power_sum(d, w, p, s);
}
}  // namespace avx2
#endif

}  // namespace polyvol::kernels
