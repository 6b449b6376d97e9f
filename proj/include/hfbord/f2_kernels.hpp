#pragma once
// Word-level kernels behind BitVec; scalar reference plus SIMD variants
// chosen once at runtime.

#include <cstddef>
#include <cstdint>

#if defined(__x86_64__) || defined(_M_X64) || defined(__i386__)
#define HFB_X86 1
#endif
#if defined(__aarch64__) || defined(__ARM_NEON)
#define HFB_NEON 1
#endif

namespace hfb::kernels {

using XorFn = void (*)(uint64_t* dst, const uint64_t* src, std::size_t n);
using DotFn = bool (*)(const uint64_t* a, const uint64_t* b, std::size_t n);

void xor_scalar(uint64_t* dst, const uint64_t* src, std::size_t n);
bool dot_scalar(const uint64_t* a, const uint64_t* b, std::size_t n);

#ifdef HFB_X86
void xor_avx2(uint64_t* dst, const uint64_t* src, std::size_t n);
bool dot_avx2(const uint64_t* a, const uint64_t* b, std::size_t n);
#endif
#ifdef HFB_NEON
void xor_neon(uint64_t* dst, const uint64_t* src, std::size_t n);
bool dot_neon(const uint64_t* a, const uint64_t* b, std::size_t n);
#endif

enum class Isa { Scalar, Avx2, Neon };

struct Table {
  Isa isa;
  XorFn xor_words;
  DotFn dot_words;
};

const Table& active();
Isa detect();
// Forces a variant (tests); returns false when the CPU lacks it.
bool select(Isa isa);
const char* name(Isa isa);

}  // namespace hfb::kernels
