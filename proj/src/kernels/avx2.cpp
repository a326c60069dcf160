// Compiled with -mavx2 -mfma; only reached after a runtime CPU check.

#include <immintrin.h>

#include <array>
#include <cmath>

#include "polyvol/compensated.hpp"
#include "polyvol/double_double.hpp"
#include "polyvol/kernels.hpp"

namespace polyvol::kernels::avx2 {
namespace {

// Rotations between exact reseeds of sin/cos; drift stays near 1e-13.
constexpr std::uint64_t kReseedBlocks = 1024;

struct VecSum {
  __m256d sum = _mm256_setzero_pd();
  __m256d comp = _mm256_setzero_pd();

  void add(__m256d x) {
    const __m256d abs_mask = _mm256_castsi256_pd(_mm256_set1_epi64x(0x7fffffffffffffffLL));
    const __m256d t = _mm256_add_pd(sum, x);
    const __m256d sum_big = _mm256_cmp_pd(_mm256_and_pd(sum, abs_mask), _mm256_and_pd(x, abs_mask), _CMP_GE_OQ);
    const __m256d if_sum_big = _mm256_add_pd(_mm256_sub_pd(sum, t), x);
    const __m256d if_x_big = _mm256_add_pd(_mm256_sub_pd(x, t), sum);
    comp = _mm256_add_pd(comp, _mm256_blendv_pd(if_x_big, if_sum_big, sum_big));
    sum = t;
  }

  // Lane order is fixed, so the reduction is deterministic.
  double reduce() const {
    alignas(32) std::array<double, 4> s{};
    alignas(32) std::array<double, 4> c{};
    _mm256_store_pd(s.data(), sum);
    _mm256_store_pd(c.data(), comp);
    CompensatedSum acc;
    for (double v : s) acc += v;
    for (double v : c) acc += v;
    return acc.value();
  }
};

// Four double-double lanes. Each operation matches the scalar one in
// polyvol/double_double.hpp step for step.
struct VecDD {
  __m256d hi;
  __m256d lo;
};

VecDD quick_two_sum(__m256d a, __m256d b) {
  const __m256d s = _mm256_add_pd(a, b);
  return {s, _mm256_sub_pd(b, _mm256_sub_pd(s, a))};
}

VecDD two_sum(__m256d a, __m256d b) {
  const __m256d s = _mm256_add_pd(a, b);
  const __m256d bb = _mm256_sub_pd(s, a);
  return {s, _mm256_add_pd(_mm256_sub_pd(a, _mm256_sub_pd(s, bb)), _mm256_sub_pd(b, bb))};
}

VecDD dd_add(VecDD x, VecDD y) {
  VecDD s = two_sum(x.hi, y.hi);
  const VecDD t = two_sum(x.lo, y.lo);
  s = quick_two_sum(s.hi, _mm256_add_pd(s.lo, t.hi));
  return quick_two_sum(s.hi, _mm256_add_pd(s.lo, t.lo));
}

VecDD dd_mul(VecDD x, VecDD y) {
  const __m256d p = _mm256_mul_pd(x.hi, y.hi);
  const __m256d e = _mm256_fmsub_pd(x.hi, y.hi, p);
  const __m256d cross = _mm256_add_pd(_mm256_mul_pd(x.hi, y.lo), _mm256_mul_pd(x.lo, y.hi));
  return quick_two_sum(p, _mm256_add_pd(e, cross));
}

VecDD dd_pow(VecDD x, int p) {
  VecDD result{_mm256_set1_pd(1.0), _mm256_setzero_pd()};
  while (p > 0) {
    if (p & 1) result = dd_mul(result, x);
    x = dd_mul(x, x);
    p >>= 1;
  }
  return result;
}

VecDD broadcast(DoubleDouble x) { return {_mm256_set1_pd(x.hi), _mm256_set1_pd(x.lo)}; }

VecDD scale(VecDD x, __m256d w) { return {_mm256_mul_pd(x.hi, w), _mm256_mul_pd(x.lo, w)}; }

struct VecDDSum {
  VecDD sum{_mm256_setzero_pd(), _mm256_setzero_pd()};

  void add(VecDD x) { sum = dd_add(sum, x); }

  DoubleDouble reduce() const {
    alignas(32) std::array<double, 4> h{};
    alignas(32) std::array<double, 4> l{};
    _mm256_store_pd(h.data(), sum.hi);
    _mm256_store_pd(l.data(), sum.lo);
    DoubleDouble acc;
    for (int j = 0; j < 4; ++j) acc = dd::add(acc, DoubleDouble(h[j], l[j]));
    return acc;
  }
};

// Loads four entries as lanes (0, 2, 1, 3); weights are permuted to match.
struct DDBlock {
  VecDD delta;
  __m256d weight;
};

DDBlock load_block(const DoubleDouble* d, const double* w) {
  const __m256d a = _mm256_loadu_pd(&d[0].hi);
  const __m256d b = _mm256_loadu_pd(&d[2].hi);
  return {{_mm256_unpacklo_pd(a, b), _mm256_unpackhi_pd(a, b)},
          _mm256_permute4x64_pd(_mm256_loadu_pd(w), _MM_SHUFFLE(3, 1, 2, 0))};
}

// Runs `body` over full blocks of four, then once over a zero-padded tail.
template <typename Body>
void for_each_block(std::span<const DoubleDouble> deltas, std::span<const double> weights, Body&& body) {
  const std::size_t full = deltas.size() / 4 * 4;
  for (std::size_t j = 0; j < full; j += 4) body(load_block(deltas.data() + j, weights.data() + j));
  if (full < deltas.size()) {
    std::array<DoubleDouble, 4> d{};
    std::array<double, 4> w{};
    for (std::size_t j = full; j < deltas.size(); ++j) {
      d[j - full] = deltas[j];
      w[j - full] = weights[j];
    }
    body(load_block(d.data(), w.data()));
  }
}

__m256d ipow(__m256d x, int p) {
  __m256d result = _mm256_set1_pd(1.0);
  while (p > 0) {
    if (p & 1) result = _mm256_mul_pd(result, x);
    x = _mm256_mul_pd(x, x);
    p >>= 1;
  }
  return result;
}

}  // namespace

double sine_product_sum(std::span<const double> angles, int exponent, std::uint64_t k_first,
                        std::uint64_t k_last) {
  if (k_last < k_first) return 0.0;
  const std::size_t m = angles.size();
  // cos/sin of k a_i for the four lanes k, k+1, k+2, k+3.
  __m256d s[kMaxAngles];
  __m256d c[kMaxAngles];
  __m256d step_sin[kMaxAngles];
  __m256d step_cos[kMaxAngles];
  for (std::size_t i = 0; i < m; ++i) {
    step_sin[i] = _mm256_set1_pd(std::sin(4.0 * angles[i]));
    step_cos[i] = _mm256_set1_pd(std::cos(4.0 * angles[i]));
  }

  const std::uint64_t blocks = (k_last - k_first) / 4 + 1;
  const __m256d one = _mm256_set1_pd(1.0);
  const __m256d lane = _mm256_set_pd(3.0, 2.0, 1.0, 0.0);
  VecSum acc;
  std::uint64_t k = k_first;
  for (std::uint64_t b = 0; b < blocks; ++b, k += 4) {
    if (b % kReseedBlocks == 0) {
      for (std::size_t i = 0; i < m; ++i) {
        alignas(32) std::array<double, 4> sv;
        alignas(32) std::array<double, 4> cv;
        for (int j = 0; j < 4; ++j) {
          const double arg = static_cast<double>(k + j) * angles[i];
          sv[j] = std::sin(arg);
          cv[j] = std::cos(arg);
        }
        s[i] = _mm256_load_pd(sv.data());
        c[i] = _mm256_load_pd(cv.data());
      }
    } else {
      for (std::size_t i = 0; i < m; ++i) {
        const __m256d ns = _mm256_fmadd_pd(s[i], step_cos[i], _mm256_mul_pd(c[i], step_sin[i]));
        const __m256d nc = _mm256_fmsub_pd(c[i], step_cos[i], _mm256_mul_pd(s[i], step_sin[i]));
        s[i] = ns;
        c[i] = nc;
      }
    }

    __m256d prod = one;
    for (std::size_t i = 0; i < m; ++i) prod = _mm256_mul_pd(prod, s[i]);
    const __m256d kv = _mm256_add_pd(_mm256_set1_pd(static_cast<double>(k)), lane);
    __m256d term = _mm256_mul_pd(prod, ipow(_mm256_div_pd(one, kv), exponent));
    if (b + 1 == blocks) {
      const __m256d valid = _mm256_cmp_pd(kv, _mm256_set1_pd(static_cast<double>(k_last)), _CMP_LE_OQ);
      term = _mm256_and_pd(term, valid);
    }
    acc.add(term);
  }
  return acc.reduce();
}

DoubleDouble periodic_polynomial_sum(std::span<const DoubleDouble> deltas, std::span<const double> weights,
                                     std::span<const DoubleDouble> coeffs) {
  const std::size_t degree = coeffs.size() - 1;
  const VecDD inv_two_pi = broadcast(dd::kInvTwoPi);
  const __m256d zero = _mm256_setzero_pd();
  const VecDD one{_mm256_set1_pd(1.0), zero};
  VecDDSum acc;

  for_each_block(deltas, weights, [&](const DDBlock& blk) {
    const VecDD u = dd_mul(blk.delta, inv_two_pi);
    VecDD f = dd_add(u, VecDD{_mm256_sub_pd(zero, _mm256_floor_pd(u.hi)), zero});
    const VecDD wrapped = dd_add(f, one);
    const __m256d negative = _mm256_cmp_pd(f.hi, zero, _CMP_LT_OQ);
    f = {_mm256_blendv_pd(f.hi, wrapped.hi, negative), _mm256_blendv_pd(f.lo, wrapped.lo, negative)};

    VecDD p = broadcast(coeffs[degree]);
    for (std::size_t d = degree; d-- > 0;) p = dd_add(dd_mul(p, f), broadcast(coeffs[d]));
    acc.add(scale(p, blk.weight));
  });
  return acc.reduce();
}

DoubleDouble power_sum(std::span<const DoubleDouble> deltas, std::span<const double> weights, int exponent,
                       bool signed_terms) {
  const __m256d zero = _mm256_setzero_pd();
  const __m256d one = _mm256_set1_pd(1.0);
  VecDDSum acc;

  for_each_block(deltas, weights, [&](const DDBlock& blk) {
    const __m256d pos = _mm256_cmp_pd(blk.delta.hi, zero, _CMP_GT_OQ);
    const __m256d neg = _mm256_cmp_pd(blk.delta.hi, zero, _CMP_LT_OQ);
    const __m256d sign = _mm256_sub_pd(_mm256_and_pd(pos, one), _mm256_and_pd(neg, one));
    const VecDD magnitude{_mm256_blendv_pd(blk.delta.hi, _mm256_sub_pd(zero, blk.delta.hi), neg),
                          _mm256_blendv_pd(blk.delta.lo, _mm256_sub_pd(zero, blk.delta.lo), neg)};
    const __m256d g = signed_terms ? _mm256_mul_pd(blk.weight, sign) : blk.weight;
    acc.add(scale(dd_pow(magnitude, exponent), g));
  });
  return acc.reduce();
}

}  // namespace polyvol::kernels::avx2
