#include "hfbord/f2_kernels.hpp"

#include <bit>

#ifdef HFB_NEON
#include <arm_neon.h>
#endif

namespace hfb::kernels {

void xor_scalar(uint64_t* dst, const uint64_t* src, std::size_t n) {
  for (std::size_t i = 0; i < n; ++i) dst[i] ^= src[i];
}

bool dot_scalar(const uint64_t* a, const uint64_t* b, std::size_t n) {
  uint64_t acc = 0;
  for (std::size_t i = 0; i < n; ++i) acc ^= a[i] & b[i];
  return std::popcount(acc) & 1;
}

#ifdef HFB_NEON
void xor_neon(uint64_t* dst, const uint64_t* src, std::size_t n) {
  std::size_t i = 0;
  for (; i + 2 <= n; i += 2) {
    uint64x2_t d = vld1q_u64(dst + i);
    vst1q_u64(dst + i, veorq_u64(d, vld1q_u64(src + i)));
  }
  for (; i < n; ++i) dst[i] ^= src[i];
}

bool dot_neon(const uint64_t* a, const uint64_t* b, std::size_t n) {
  uint64x2_t acc = vdupq_n_u64(0);
  std::size_t i = 0;
  for (; i + 2 <= n; i += 2)
    acc = veorq_u64(acc, vandq_u64(vld1q_u64(a + i), vld1q_u64(b + i)));
  uint64_t r = vgetq_lane_u64(acc, 0) ^ vgetq_lane_u64(acc, 1);
  for (; i < n; ++i) r ^= a[i] & b[i];
  return std::popcount(r) & 1;
}
#endif

namespace {

Table make(Isa isa) {
  switch (isa) {
#ifdef HFB_X86
    case Isa::Avx2: return {Isa::Avx2, xor_avx2, dot_avx2};
#endif
#ifdef HFB_NEON
    case Isa::Neon: return {Isa::Neon, xor_neon, dot_neon};
#endif
    default: return {Isa::Scalar, xor_scalar, dot_scalar};
  }
}

bool supported(Isa isa) {
  switch (isa) {
    case Isa::Scalar: return true;
    case Isa::Avx2:
#ifdef HFB_X86
      return __builtin_cpu_supports("avx2");
#else
      return false;
#endif
    case Isa::Neon:
#ifdef HFB_NEON
      return true;
#else
      return false;
#endif
  }
  return false;
}

Table& current() {
  static Table t = make(detect());
  return t;
}

}  // namespace

Isa detect() {
  if (supported(Isa::Avx2)) return Isa::Avx2;
  if (supported(Isa::Neon)) return Isa::Neon;
  return Isa::Scalar;
}

const Table& active() { return current(); }

bool select(Isa isa) {
  if (!supported(isa)) return false;
  current() = make(isa);
  return true;
}

const char* name(Isa isa) {
  switch (isa) {
    case Isa::Avx2: return "avx2";
    case Isa::Neon: return "neon";
    default: return "scalar";
  }
}

}  // namespace hfb::kernels
